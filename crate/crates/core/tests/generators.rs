mod common;

use common::oct_by_scan;
use oct_core::generators::{
    barabasi_albert, chung_lu, erdos_renyi, lookalike_configs, tunable_oct, GeneratorConfig,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn generators_are_deterministic(n in 2usize..40, p in 0.0f64..1.0, seed in any::<u64>()) {
        prop_assert_eq!(erdos_renyi(n, p, seed).unwrap(), erdos_renyi(n, p, seed).unwrap());
        let n_o = n / 4;
        prop_assert_eq!(tunable_oct(n, p, n_o, 0.5, seed).unwrap(), tunable_oct(n, p, n_o, 0.5, seed).unwrap());
        let c = 1 + n / 10;
        prop_assert_eq!(barabasi_albert(n, c, seed).unwrap(), barabasi_albert(n, c, seed).unwrap());
    }

    #[test]
    fn config_json_round_trip(n in 2usize..30, seed in any::<u64>()) {
        let cfg = GeneratorConfig::TunableOct { n, p: 0.25, n_o: 2, b: 0.5, seed };
        let back: GeneratorConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        prop_assert_eq!(back.generate().unwrap(), cfg.generate().unwrap());
    }
}

#[test]
fn tunable_oct_is_bounded_by_its_planted_set() {
    for seed in 0..40 {
        let n_o = (seed % 4) as usize;
        let g = tunable_oct(14, 0.5, n_o, 0.5, seed).unwrap();
        assert!(oct_by_scan(&g) <= n_o, "seed {seed}");
    }
}

#[test]
fn chung_lu_rejects_negative_weights() {
    assert!(chung_lu(&[1.0, -1.0, 2.0], 0).is_err());
    assert!(erdos_renyi(5, 1.5, 0).is_err());
}

#[test]
fn lookalikes_match_vertex_count() {
    let g = erdos_renyi(30, 0.2, 5).unwrap();
    let configs = lookalike_configs(&g, 4, 7).unwrap();
    assert_eq!(configs.len(), 4);
    for c in configs {
        assert_eq!(c.generate().unwrap().n(), 30, "{}", c.family());
    }
    assert!(lookalike_configs(&g, 31, 7).is_err());
}
