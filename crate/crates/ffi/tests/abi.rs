use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use octffi::*;

fn graph(n: usize, edges: &[(usize, usize)]) -> *mut OctGraph {
    let flat: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { oct_graph_new(n, flat.as_ptr(), edges.len(), &mut g) },
        OctStatus::Ok
    );
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(oct_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn vertices(r: *const OctReport) -> Vec<usize> {
    let k = unsafe { oct_report_size(r) };
    let mut buf = vec![0; k];
    assert_eq!(
        unsafe { oct_report_vertices(r, buf.as_mut_ptr(), k) },
        OctStatus::Ok
    );
    buf
}

#[test]
fn solves_c5_through_every_entry_point() {
    let g = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    unsafe {
        assert_eq!((oct_graph_vertex_count(g), oct_graph_edge_count(g)), (5, 5));
        let mut reports = [ptr::null_mut(); 3];
        assert_eq!(
            oct_solve_heuristic(g, 1, 0.0, 8, &mut reports[0]),
            OctStatus::Ok
        );
        assert_eq!(
            oct_solve_ic(g, 2, 1, 0.0, 0, true, &mut reports[1]),
            OctStatus::Ok
        );
        assert_eq!(oct_solve_vc(g, 1, 0.0, 0, &mut reports[2]), OctStatus::Ok);
        for r in reports {
            let s = vertices(r);
            let mut ok = false;
            assert_eq!(oct_verify(g, s.as_ptr(), s.len(), &mut ok), OctStatus::Ok);
            assert!(ok && s.len() == 1);
            oct_report_free(r);
        }
        let mut opt = 0;
        assert_eq!(oct_oracle(g, 20, &mut opt), OctStatus::Ok);
        assert_eq!(opt, 1);
        oct_graph_free(g);
    }
}

#[test]
fn exact_bounds_meet() {
    let g = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(oct_solve_vc(g, 0, 0.0, 0, &mut r), OctStatus::Ok);
        let (mut lo, mut hi, mut optimal) = (0, 0, false);
        assert_eq!(
            oct_report_bounds(r, &mut lo, &mut hi, &mut optimal),
            OctStatus::Ok
        );
        assert_eq!((lo, hi, optimal), (2, 2, true));
        assert!(oct_report_elapsed(r) >= 0.0);
        assert_eq!(
            oct_report_bounds(r, ptr::null_mut(), ptr::null_mut(), ptr::null_mut()),
            OctStatus::Ok
        );
        oct_report_free(r);
        oct_graph_free(g);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = [0usize, 0];
        assert_eq!(
            oct_graph_new(2, bad.as_ptr(), 1, &mut g),
            OctStatus::InvalidArgument
        );
        assert!(!last_error().is_empty());
        assert_eq!(
            oct_graph_new(2, ptr::null(), 1, &mut g),
            OctStatus::NullPointer
        );
        let text = b"1\nx y\n";
        assert_eq!(
            oct_graph_parse(text.as_ptr(), text.len(), &mut g),
            OctStatus::Parse
        );
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let mut opt = 0;
        assert_eq!(oct_oracle(g, 2, &mut opt), OctStatus::Refused);
        let mut r = ptr::null_mut();
        assert_eq!(oct_solve_vc(g, 0, 0.0, 0, &mut r), OctStatus::Ok);
        assert_eq!(last_error(), "");
        assert_eq!(
            oct_report_vertices(r, ptr::null_mut(), 0),
            OctStatus::InvalidArgument
        );
        assert_eq!(oct_report_size(ptr::null()), 0);
        let mut ok = false;
        let out_of_range = [7usize];
        assert_eq!(
            oct_verify(g, out_of_range.as_ptr(), 1, &mut ok),
            OctStatus::InvalidArgument
        );
        oct_report_free(r);
        oct_graph_free(g);
        oct_graph_free(ptr::null_mut());
    }
}

#[test]
fn parses_and_exports() {
    let text = b"3 3\n0 1\n1 2\n0 2\n";
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            oct_graph_parse(text.as_ptr(), text.len(), &mut g),
            OctStatus::Ok
        );
        let mut lp = ptr::null_mut();
        assert_eq!(oct_export_lp(g, OctForm::Direct, &mut lp), OctStatus::Ok);
        let s = CStr::from_ptr(lp).to_str().unwrap().to_owned();
        assert!(s.contains("Subject To") && s.ends_with("End\n"));
        oct_string_free(lp);
        assert!(!CStr::from_ptr(oct_version()).to_bytes().is_empty());
        oct_graph_free(g);
    }
}

/// Compiles the C smoke program against the generated header and the
/// shared library, when a C compiler is present.
#[test]
fn c_program_links() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let libdir = tmp.parent().unwrap().join(if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    });
    if !libdir.join("liboctffi.so").exists()
        || Command::new("cc").arg("--version").output().is_err()
    {
        eprintln!("skipping: no shared library or C compiler");
        return;
    }
    let exe = tmp.join("oct_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&libdir)
        .arg(format!("-Wl,-rpath,{}", libdir.display()))
        .args(["-loctffi", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2 2 1\n");
}
