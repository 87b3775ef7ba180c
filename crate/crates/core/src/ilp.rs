//! Integer programs for OCT in LP file format, a reference enumerator for
//! small binary programs, and a driver for external MIP solvers.
//!
//! Direct form: per vertex a side `s{v}` and a deletion flag `c{v}`; each
//! edge `uv` gets `s_u + s_v + c_u + c_v >= 1` and `s_u + s_v - c_u - c_v <=
//! 1`. Cover form: `x{v}` per vertex of the doubled graph and `x_u + x_v >=
//! 1` per edge.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{OctError, Result};
use crate::graph::Graph;
use crate::solution::{Deadline, OctSolution, SolverReport, Source, Termination};
use crate::vc::{from_vc_solution, to_vc_instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    /// Side and deletion variables on the original graph.
    Oct,
    /// Cover variables on the doubled graph.
    Vc,
}

impl std::str::FromStr for Form {
    type Err = OctError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oct" => Ok(Form::Oct),
            "vc" => Ok(Form::Vc),
            _ => Err(OctError::InvalidArgument(format!(
                "unknown form {s:?}, expected oct or vc"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Ge,
    Le,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Ge => ">=",
            Sense::Le => "<=",
            Sense::Eq => "=",
        }
    }
}

/// Linear term `coef * var`, the variable given by index.
pub type Term = (i64, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<Term>,
    pub sense: Sense,
    pub rhs: i64,
}

/// A pure binary program: minimize `objective` subject to `constraints`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpModel {
    pub comments: Vec<String>,
    pub variables: Vec<String>,
    pub objective: Vec<Term>,
    pub constraints: Vec<Constraint>,
}

const LINE_WIDTH: usize = 78;

fn write_terms(out: &mut String, lead: &str, terms: &[Term], vars: &[String]) -> usize {
    let mut line = lead.len();
    out.push_str(lead);
    if terms.is_empty() {
        out.push_str(" 0");
        return line + 2;
    }
    for (i, &(coef, v)) in terms.iter().enumerate() {
        let sign = if coef < 0 { "-" } else { "+" };
        let mag = coef.unsigned_abs();
        let body = if mag == 1 {
            vars[v].clone()
        } else {
            format!("{mag} {}", vars[v])
        };
        let piece = if i == 0 && coef >= 0 {
            format!(" {body}")
        } else {
            format!(" {sign} {body}")
        };
        if line + piece.len() > LINE_WIDTH {
            out.push_str("\n   ");
            line = 3;
        }
        out.push_str(&piece);
        line += piece.len();
    }
    line
}

impl IlpModel {
    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// LP format text: comment header, `Minimize`, `Subject To`, `Binary`,
    /// `End`, LF line endings.
    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "\\ {c}");
        }
        out.push_str("Minimize\n");
        write_terms(&mut out, " obj:", &self.objective, &self.variables);
        out.push_str("\nSubject To\n");
        for c in &self.constraints {
            let lead = format!(" {}:", c.name);
            let line = write_terms(&mut out, &lead, &c.terms, &self.variables);
            let tail = format!(" {} {}", c.sense.symbol(), c.rhs);
            if line + tail.len() > LINE_WIDTH {
                out.push_str("\n   ");
            }
            out.push_str(&tail);
            out.push('\n');
        }
        out.push_str("Binary\n");
        let mut line = 0;
        for v in &self.variables {
            if line > 0 && line + v.len() + 1 > LINE_WIDTH {
                out.push('\n');
                line = 0;
            }
            out.push(' ');
            out.push_str(v);
            line += v.len() + 1;
        }
        if line > 0 {
            out.push('\n');
        }
        out.push_str("End\n");
        out
    }

    /// Parses the LP subset written by [`IlpModel::to_lp`]: integer
    /// coefficients, a minimized objective, linear rows and binary
    /// variables. Variables not declared binary are rejected.
    pub fn parse_lp(text: &str) -> Result<IlpModel> {
        #[derive(PartialEq)]
        enum Section {
            Head,
            Objective,
            Rows,
            Binary,
            Done,
        }
        let mut section = Section::Head;
        let mut names: BTreeMap<String, usize> = BTreeMap::new();
        let mut variables: Vec<String> = Vec::new();
        let mut comments = Vec::new();
        let mut objective_tokens: Vec<(usize, String)> = Vec::new();
        let mut row_tokens: Vec<(usize, String)> = Vec::new();
        let mut binaries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if let Some(c) = line.strip_prefix('\\') {
                if section == Section::Head {
                    comments.push(c.trim().to_string());
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            match line.to_ascii_lowercase().as_str() {
                "minimize" | "minimise" | "min" => {
                    section = Section::Objective;
                    continue;
                }
                "maximize" | "maximise" | "max" => {
                    return Err(OctError::parse(line_no, "only minimization is supported"));
                }
                "subject to" | "such that" | "st" | "s.t." => {
                    section = Section::Rows;
                    continue;
                }
                "binary" | "binaries" | "bin" => {
                    section = Section::Binary;
                    continue;
                }
                "end" => {
                    section = Section::Done;
                    continue;
                }
                "bounds" | "general" | "generals" => {
                    return Err(OctError::parse(
                        line_no,
                        format!("section {line:?} is not supported"),
                    ));
                }
                _ => {}
            }
            let tokens = line.split_whitespace().map(|t| (line_no, t.to_string()));
            match section {
                Section::Head => return Err(OctError::parse(line_no, "text before the objective")),
                Section::Objective => objective_tokens.extend(tokens),
                Section::Rows => row_tokens.extend(tokens),
                Section::Binary => binaries.extend(tokens),
                Section::Done => return Err(OctError::parse(line_no, "text after End")),
            }
        }
        if section != Section::Done {
            return Err(OctError::parse(text.lines().count(), "missing End"));
        }
        for (_, b) in &binaries {
            if !names.contains_key(b) {
                names.insert(b.clone(), variables.len());
                variables.push(b.clone());
            }
        }
        let mut intern = |line: usize, name: &str| -> Result<usize> {
            names.get(name).copied().ok_or_else(|| {
                OctError::parse(line, format!("variable {name:?} is not declared binary"))
            })
        };
        let (objective, rest) = parse_expression(&objective_tokens, &mut intern, true)?;
        if let Some((line, t)) = rest.first() {
            return Err(OctError::parse(
                *line,
                format!("unexpected {t:?} in objective"),
            ));
        }
        let mut constraints = Vec::new();
        let mut rest: &[(usize, String)] = &row_tokens;
        while !rest.is_empty() {
            let (name, body) = match rest[0].1.strip_suffix(':') {
                Some(n) => (n.to_string(), &rest[1..]),
                None => (format!("r{}", constraints.len()), rest),
            };
            let (terms, after) = parse_expression(body, &mut intern, false)?;
            let (line, sense_tok) = after
                .first()
                .ok_or_else(|| OctError::parse(rest[0].0, "row without a sense"))?;
            let sense = match sense_tok.as_str() {
                ">=" | "=>" | ">" => Sense::Ge,
                "<=" | "=<" | "<" => Sense::Le,
                "=" => Sense::Eq,
                t => {
                    return Err(OctError::parse(
                        *line,
                        format!("expected a sense, found {t:?}"),
                    ))
                }
            };
            let (line, rhs_tok) = after
                .get(1)
                .ok_or_else(|| OctError::parse(*line, "row without a right-hand side"))?;
            let rhs = rhs_tok.parse::<i64>().map_err(|_| {
                OctError::parse(
                    *line,
                    format!("right-hand side {rhs_tok:?} is not an integer"),
                )
            })?;
            constraints.push(Constraint {
                name,
                terms,
                sense,
                rhs,
            });
            rest = &after[2..];
        }
        Ok(IlpModel {
            comments,
            variables,
            objective,
            constraints,
        })
    }

    /// Objective value of a full assignment.
    pub fn objective_value(&self, x: &[bool]) -> i64 {
        self.objective
            .iter()
            .map(|&(a, v)| if x[v] { a } else { 0 })
            .sum()
    }

    pub fn is_feasible(&self, x: &[bool]) -> bool {
        self.constraints.iter().all(|c| {
            let lhs: i64 = c.terms.iter().map(|&(a, v)| if x[v] { a } else { 0 }).sum();
            match c.sense {
                Sense::Ge => lhs >= c.rhs,
                Sense::Le => lhs <= c.rhs,
                Sense::Eq => lhs == c.rhs,
            }
        })
    }
}

/// Tokens tagged with their source line.
type Tokens<'t> = &'t [(usize, String)];

/// Reads `[sign] [coef] var` terms until a token that cannot start a term.
fn parse_expression<'t>(
    tokens: Tokens<'t>,
    intern: &mut impl FnMut(usize, &str) -> Result<usize>,
    allow_name: bool,
) -> Result<(Vec<Term>, Tokens<'t>)> {
    let mut i = 0;
    if allow_name && tokens.first().is_some_and(|(_, t)| t.ends_with(':')) {
        i = 1;
    }
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut coef: Option<i64> = None;
    let mut pending = false;
    while i < tokens.len() {
        let (line, tok) = &tokens[i];
        let t = tok.as_str();
        if matches!(t, ">=" | "<=" | "=>" | "=<" | "=" | ">" | "<") || t.ends_with(':') {
            break;
        }
        i += 1;
        match t {
            "+" => pending = true,
            "-" => {
                sign = -sign;
                pending = true;
            }
            _ => {
                let (s, body) = match t.strip_prefix('-') {
                    Some(b) => (-1, b),
                    None => (1, t.strip_prefix('+').unwrap_or(t)),
                };
                sign *= s;
                if let Ok(c) = body.parse::<i64>() {
                    if coef.is_some() {
                        return Err(OctError::parse(*line, "two coefficients in a row"));
                    }
                    coef = Some(c);
                    pending = true;
                    continue;
                }
                if body.parse::<f64>().is_ok() {
                    return Err(OctError::parse(
                        *line,
                        format!("non-integer coefficient {body:?}"),
                    ));
                }
                let v = intern(*line, body)?;
                let a = sign * coef.unwrap_or(1);
                if a != 0 {
                    terms.push((a, v));
                }
                sign = 1;
                coef = None;
                pending = false;
            }
        }
    }
    if pending && coef != Some(0) {
        return Err(OctError::parse(
            tokens[i - 1].0,
            "dangling operator or coefficient",
        ));
    }
    Ok((terms, &tokens[i..]))
}

/// Direct formulation on `g`.
pub fn oct_model(g: &Graph) -> IlpModel {
    let n = g.n();
    let variables = (0..n)
        .map(|v| format!("s{v}"))
        .chain((0..n).map(|v| format!("c{v}")))
        .collect();
    let (s, c) = (|v: usize| v, |v: usize| v + n);
    let mut constraints = Vec::with_capacity(2 * g.m());
    for (i, (u, v)) in g.edges().enumerate() {
        constraints.push(Constraint {
            name: format!("e{i}a"),
            terms: vec![(1, s(u)), (1, s(v)), (1, c(u)), (1, c(v))],
            sense: Sense::Ge,
            rhs: 1,
        });
        constraints.push(Constraint {
            name: format!("e{i}b"),
            terms: vec![(1, s(u)), (1, s(v)), (-1, c(u)), (-1, c(v))],
            sense: Sense::Le,
            rhs: 1,
        });
    }
    IlpModel {
        comments: vec![
            format!("odd cycle transversal, direct form, n = {n}, m = {}", g.m()),
            "s<v> = side of v, c<v> = 1 iff v is deleted".into(),
            "recovery: S = { v : c<v> = 1 }".into(),
        ],
        variables,
        objective: (0..n).map(|v| (1, c(v))).collect(),
        constraints,
    }
}

/// Cover formulation on `g` itself.
pub fn vc_model(g: &Graph) -> IlpModel {
    IlpModel {
        comments: vec![
            format!("vertex cover, n = {}, m = {}", g.n(), g.m()),
            "recovery: cover = { v : x<v> = 1 }".into(),
        ],
        variables: g.vertices().map(|v| format!("x{v}")).collect(),
        objective: g.vertices().map(|v| (1, v)).collect(),
        constraints: g
            .edges()
            .enumerate()
            .map(|(i, (u, v))| Constraint {
                name: format!("e{i}"),
                terms: vec![(1, u), (1, v)],
                sense: Sense::Ge,
                rhs: 1,
            })
            .collect(),
    }
}

/// Cover formulation of the doubled graph of `g`, whose optimum is
/// `n + OPT`.
pub fn oct_via_vc_model(g: &Graph) -> IlpModel {
    let inst = to_vc_instance(g);
    let mut model = vc_model(&inst.graph);
    let n = g.n();
    model.comments = vec![
        format!(
            "odd cycle transversal via vertex cover on the doubled graph, n = {n}, m = {}",
            g.m()
        ),
        format!("x<v> and x<v+{n}> are the two copies of v; optimum = {n} + OPT"),
        format!("recovery: S = {{ v < {n} : x<v> = 1 and x<v+{n}> = 1 }}"),
    ];
    model
}

pub fn export_oct_ilp(g: &Graph) -> String {
    oct_model(g).to_lp()
}

/// Cover-form text for `g` as given. Pass a doubled graph to solve OCT.
pub fn export_vc_ilp(g: &Graph) -> String {
    vc_model(g).to_lp()
}

/// Model for `g` in the given form, as used by the OCT pipeline.
pub fn model_for(g: &Graph, form: Form) -> IlpModel {
    match form {
        Form::Oct => oct_model(g),
        Form::Vc => oct_via_vc_model(g),
    }
}

/// Transversal encoded by a 0/1 assignment of [`model_for`]`(g, form)`.
pub fn recover(g: &Graph, form: Form, x: &[bool]) -> Result<Vec<usize>> {
    let n = g.n();
    match form {
        Form::Oct => Ok((0..n).filter(|&v| x[n + v]).collect()),
        Form::Vc => {
            let inst = to_vc_instance(g);
            let cover: Vec<usize> = (0..2 * n).filter(|&v| x[v]).collect();
            from_vc_solution(&inst, &cover)
        }
    }
}

/// Result of a binary program solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySolution {
    pub values: Vec<bool>,
    pub objective: i64,
    pub optimal: bool,
    pub nodes: u64,
}

struct Enumerator<'a> {
    model: &'a IlpModel,
    /// Per variable: (constraint, coefficient) occurrences.
    occurs: Vec<Vec<(usize, i64)>>,
    objective: Vec<i64>,
    lhs: Vec<i64>,
    room_up: Vec<i64>,
    room_down: Vec<i64>,
    x: Vec<bool>,
    obj: i64,
    obj_floor: i64,
    best: Option<(i64, Vec<bool>)>,
    deadline: &'a Deadline,
    node_limit: u64,
    stopped: bool,
    nodes: u64,
}

impl Enumerator<'_> {
    fn row_ok(&self, r: usize) -> bool {
        let c = &self.model.constraints[r];
        let lo = self.lhs[r] - self.room_down[r];
        let hi = self.lhs[r] + self.room_up[r];
        match c.sense {
            Sense::Ge => hi >= c.rhs,
            Sense::Le => lo <= c.rhs,
            Sense::Eq => lo <= c.rhs && c.rhs <= hi,
        }
    }

    fn assign(&mut self, v: usize, value: bool) -> bool {
        let mut ok = true;
        for i in 0..self.occurs[v].len() {
            let (r, a) = self.occurs[v][i];
            if a > 0 {
                self.room_up[r] -= a;
            } else {
                self.room_down[r] += a;
            }
            if value {
                self.lhs[r] += a;
            }
            ok &= self.row_ok(r);
        }
        self.x[v] = value;
        let a = self.objective[v];
        self.obj_floor -= a.min(0);
        if value {
            self.obj += a;
        }
        ok
    }

    fn unassign(&mut self, v: usize, value: bool) {
        for i in 0..self.occurs[v].len() {
            let (r, a) = self.occurs[v][i];
            if a > 0 {
                self.room_up[r] += a;
            } else {
                self.room_down[r] -= a;
            }
            if value {
                self.lhs[r] -= a;
            }
        }
        let a = self.objective[v];
        self.obj_floor += a.min(0);
        if value {
            self.obj -= a;
        }
        self.x[v] = false;
    }

    fn run(&mut self, v: usize) {
        if self.stopped {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit
            || (self.nodes.is_multiple_of(4096) && self.deadline.expired())
        {
            self.stopped = true;
            return;
        }
        if let Some((b, _)) = &self.best {
            if self.obj + self.obj_floor >= *b {
                return;
            }
        }
        if v == self.x.len() {
            self.best = Some((self.obj, self.x.clone()));
            return;
        }
        // cheaper value first
        let order = if self.objective[v] > 0 {
            [false, true]
        } else {
            [true, false]
        };
        for value in order {
            if self.assign(v, value) {
                self.run(v + 1);
            }
            self.unassign(v, value);
        }
    }
}

/// Depth-first enumeration of 0/1 assignments with row-bound and objective
/// pruning. Returns `None` when no feasible assignment was found; on a
/// deadline or node limit, the best assignment so far with `optimal =
/// false`.
pub fn solve_binary(
    model: &IlpModel,
    deadline: &Deadline,
    node_limit: Option<u64>,
) -> Option<BinarySolution> {
    let nv = model.variables.len();
    let mut occurs = vec![Vec::new(); nv];
    let mut room_up = vec![0; model.constraints.len()];
    let mut room_down = vec![0; model.constraints.len()];
    for (r, c) in model.constraints.iter().enumerate() {
        for &(a, v) in &c.terms {
            occurs[v].push((r, a));
            if a > 0 {
                room_up[r] += a;
            } else {
                room_down[r] -= a;
            }
        }
    }
    let mut objective = vec![0; nv];
    for &(a, v) in &model.objective {
        objective[v] += a;
    }
    let obj_floor = objective.iter().map(|&a| a.min(0)).sum();
    let mut e = Enumerator {
        model,
        occurs,
        objective,
        lhs: vec![0; model.constraints.len()],
        room_up,
        room_down,
        x: vec![false; nv],
        obj: 0,
        obj_floor,
        best: None,
        deadline,
        node_limit: node_limit.unwrap_or(u64::MAX),
        stopped: false,
        nodes: 0,
    };
    if (0..model.constraints.len()).all(|r| e.row_ok(r)) {
        e.run(0);
    }
    let (optimal, nodes) = (!e.stopped, e.nodes);
    e.best.map(|(objective, values)| BinarySolution {
        values,
        objective,
        optimal,
        nodes,
    })
}

/// Values parsed from an external solver's solution file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExternalSolution {
    pub values: BTreeMap<String, f64>,
    pub objective: Option<f64>,
    pub optimal: bool,
    pub infeasible: bool,
    /// Solution file contents.
    pub raw: String,
}

/// Reads `name value` or `name=value` lines. Status and objective come from
/// comment lines (`# status optimal`, `# Objective value = 3`) or the
/// leading line used by common solvers (`Optimal - objective value 3`).
/// Lines that start with an integer index (`0 x1 1 0`) are also accepted.
pub fn parse_solution_text(text: &str) -> ExternalSolution {
    let mut out = ExternalSolution::default();
    let mut after_model_status = false;
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let lower = line.to_ascii_lowercase();
        if after_model_status {
            out.optimal |= lower == "optimal";
            out.infeasible |= lower == "infeasible";
            after_model_status = false;
        }
        if lower == "model status" {
            after_model_status = true;
            continue;
        }
        let number_after = |key: &str| -> Option<f64> {
            let at = lower.find(key)? + key.len();
            lower[at..]
                .trim_start_matches([' ', ':', '='])
                .split_whitespace()
                .next()?
                .parse()
                .ok()
        };
        if line.starts_with('#') || lower.contains("objective value") || lower.starts_with("status")
        {
            if let Some(v) = number_after("objective value").or_else(|| number_after("objective")) {
                out.objective = Some(v);
            }
            if lower.contains("optimal")
                && !lower.contains("not optimal")
                && !lower.contains("infeasible")
            {
                out.optimal = true;
            }
            if lower.contains("infeasible") {
                out.infeasible = true;
            }
            continue;
        }
        if let Some((name, value)) = line.split_once('=') {
            let name = name.trim();
            if let (Ok(v), false) = (value.trim().parse(), name.contains(char::is_whitespace)) {
                out.values.insert(name.to_string(), v);
            }
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [name, value] => {
                if let Ok(v) = value.parse::<f64>() {
                    if name.eq_ignore_ascii_case("objective") {
                        out.objective = Some(v);
                    } else {
                        out.values.insert(name.to_string(), v);
                    }
                }
            }
            [index, name, value, ..] if index.parse::<usize>().is_ok() => {
                if let Ok(v) = value.parse::<f64>() {
                    out.values.insert(name.to_string(), v);
                }
            }
            _ => {}
        }
    }
    out
}

/// Runs `cmd_template` with `{input}`, `{output}` and `{timeout}`
/// substituted, waiting at most the timeout plus a grace period. Missing
/// binaries are configuration errors; unusable output is an integration
/// error carrying the raw text.
pub fn invoke_external(
    lp: &str,
    cmd_template: &str,
    timeout: Option<f64>,
) -> Result<(ExternalSolution, bool)> {
    let dir = tempfile::tempdir()?;
    let input = dir.path().join("model.lp");
    let output = dir.path().join("model.sol");
    std::fs::write(&input, lp)?;
    let limit = timeout.unwrap_or(1e9);
    let argv = expand_template(cmd_template, &input, &output, limit)?;
    let mut child = Command::new(&argv[0])
        .args(&argv[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => {
                OctError::Config(format!("solver binary {:?} not found", argv[0]))
            }
            _ => OctError::Io(e),
        })?;
    let start = Instant::now();
    let grace = Duration::from_secs_f64(limit.min(1e6) + 5.0 + limit.min(1e6) * 0.1);
    let mut killed = false;
    loop {
        if child.try_wait()?.is_some() {
            break;
        }
        if start.elapsed() > grace {
            let _ = child.kill();
            killed = true;
            break;
        }
        std::thread::sleep(Duration::from_millis(5));
    }
    let out = child.wait_with_output()?;
    let raw_log = format!(
        "{}{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&output).unwrap_or_default();
    if text.trim().is_empty() {
        if killed {
            return Ok((ExternalSolution::default(), true));
        }
        return Err(OctError::Integration {
            message: format!("solver exited with {} and wrote no solution", out.status),
            raw: raw_log,
        });
    }
    let mut parsed = parse_solution_text(&text);
    parsed.raw = text.clone();
    if parsed.values.is_empty() && !parsed.infeasible {
        return Err(OctError::Integration {
            message: "no variable values in the solution file".into(),
            raw: format!("{text}\n{raw_log}"),
        });
    }
    Ok((parsed, killed))
}

fn expand_template(
    template: &str,
    input: &Path,
    output: &Path,
    timeout: f64,
) -> Result<Vec<String>> {
    if !template.contains("{input}") || !template.contains("{output}") {
        return Err(OctError::Config(
            "command template needs {input} and {output}".into(),
        ));
    }
    let argv: Vec<String> = template
        .split_whitespace()
        .map(|t| {
            t.replace("{input}", &input.to_string_lossy())
                .replace("{output}", &output.to_string_lossy())
                .replace("{timeout}", &format!("{timeout}"))
        })
        .collect();
    if argv.is_empty() {
        return Err(OctError::Config("empty command template".into()));
    }
    Ok(argv)
}

/// Solves OCT through an external MIP solver. Without a parsed incumbent
/// the report falls back to the trivial transversal `V`.
pub fn solve_external(
    g: &Graph,
    form: Form,
    cmd_template: &str,
    timeout: Option<f64>,
) -> Result<SolverReport> {
    let start = Instant::now();
    let model = model_for(g, form);
    let lp = model.to_lp();
    // model construction counts against the budget
    let remaining = timeout.map(|t| (t - start.elapsed().as_secs_f64()).max(1e-3));
    let (parsed, killed) = invoke_external(&lp, cmd_template, remaining)?;
    if parsed.infeasible {
        return Err(OctError::Integration {
            message: "solver reported the model infeasible".into(),
            raw: String::new(),
        });
    }
    let elapsed = || start.elapsed().as_secs_f64();
    if parsed.values.is_empty() {
        log::warn!("no incumbent parsed from the external solver, falling back to V");
        let solution = OctSolution::certified(g, g.vertices().collect(), Source::Ilp);
        return Ok(SolverReport {
            lower: 0,
            upper: g.n(),
            optimal: false,
            solution,
            elapsed: elapsed(),
            seed: 0,
            termination: Termination::Deadline,
            iterations: 0,
        });
    }
    if !model
        .variables
        .iter()
        .any(|v| parsed.values.contains_key(v))
    {
        return Err(OctError::Integration {
            message: "solution names none of the model variables".into(),
            raw: parsed.raw,
        });
    }
    let x: Vec<bool> = model
        .variables
        .iter()
        .map(|v| parsed.values.get(v).is_some_and(|&a| a > 0.5))
        .collect();
    let s = recover(g, form, &x).map_err(|e| OctError::Integration {
        message: format!("solution does not satisfy the model: {e}"),
        raw: String::new(),
    })?;
    let solution = OctSolution::certified(g, s, Source::Ilp);
    if !solution.verified {
        return Err(OctError::Integration {
            message: "recovered set is not a transversal".into(),
            raw: parsed.raw,
        });
    }
    let optimal = parsed.optimal && !killed;
    let size = solution.len();
    Ok(SolverReport {
        lower: if optimal { size } else { 0 },
        upper: size,
        optimal,
        solution,
        elapsed: elapsed(),
        seed: 0,
        termination: if optimal {
            Termination::Completed
        } else {
            Termination::Deadline
        },
        iterations: 0,
    })
}

/// Solves OCT with the built-in enumerator on the chosen form. Without an
/// incumbent before the stop, the report falls back to `V`.
pub fn solve_enumerated(
    g: &Graph,
    form: Form,
    deadline: &Deadline,
    node_limit: Option<u64>,
) -> Result<SolverReport> {
    let start = Instant::now();
    let model = model_for(g, form);
    let sol = solve_binary(&model, deadline, node_limit);
    let (s, optimal, iterations) = match sol {
        Some(sol) => (recover(g, form, &sol.values)?, sol.optimal, sol.nodes),
        None if deadline.expired() || node_limit.is_some() => (g.vertices().collect(), false, 0),
        None => return Err(OctError::Contract("formulation is infeasible".into())),
    };
    let solution = OctSolution::certified(g, s, Source::Ilp);
    let size = solution.len();
    Ok(SolverReport {
        lower: if optimal { size } else { 0 },
        upper: size,
        optimal,
        solution,
        elapsed: start.elapsed().as_secs_f64(),
        seed: 0,
        termination: if optimal {
            Termination::Completed
        } else {
            Termination::Deadline
        },
        iterations,
    })
}

/// Solution file as written by the built-in enumerator.
pub fn format_solution(model: &IlpModel, sol: Option<&BinarySolution>) -> String {
    let mut out = String::new();
    match sol {
        None => out.push_str("# status infeasible\n"),
        Some(s) => {
            let status = if s.optimal { "optimal" } else { "time limit" };
            let _ = writeln!(out, "# status {status}");
            let _ = writeln!(out, "# objective {}", s.objective);
            for (name, &v) in model.variables.iter().zip(&s.values) {
                let _ = writeln!(out, "{name}={}", u8::from(v));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn optimum(model: &IlpModel) -> i64 {
        let sol = solve_binary(model, &Deadline::never(), None).unwrap();
        assert!(sol.optimal && model.is_feasible(&sol.values));
        sol.objective
    }

    /// Plain 2^k scan, independent of the pruned enumerator.
    fn scan(model: &IlpModel) -> i64 {
        let k = model.variables.len();
        (0u32..1 << k)
            .filter_map(|mask| {
                let x: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
                model.is_feasible(&x).then(|| model.objective_value(&x))
            })
            .min()
            .unwrap()
    }

    #[test]
    fn empty_graph_has_no_rows() {
        let m = oct_model(&Graph::empty(3));
        assert!(m.constraints.is_empty());
        assert_eq!(m.objective.len(), 3);
        assert_eq!(optimum(&m), 0);
    }

    #[test]
    fn single_edge() {
        let m = oct_model(&path(2));
        assert_eq!(m.constraints.len(), 2);
        assert_eq!(m.variables, vec!["s0", "s1", "c0", "c1"]);
        assert_eq!(optimum(&m), 0);
        let v = vc_model(&path(2));
        assert_eq!(v.constraints.len(), 1);
        assert_eq!(optimum(&v), 1);
    }

    #[test]
    fn triangle_by_full_scan() {
        let m = oct_model(&complete(3));
        assert_eq!(scan(&m), 1);
        assert_eq!(optimum(&m), 1);
    }

    #[test]
    fn c5_cover() {
        assert_eq!(optimum(&vc_model(&cycle(5))), 3);
    }

    #[test]
    fn lp_text_round_trips() {
        for g in [complete(4), cycle(5), Graph::empty(2), star(30)] {
            for m in [oct_model(&g), vc_model(&g), oct_via_vc_model(&g)] {
                let text = m.to_lp();
                assert!(text.lines().all(|l| l.len() <= LINE_WIDTH + 4), "{text}");
                assert_eq!(IlpModel::parse_lp(&text).unwrap(), m);
            }
        }
    }

    #[test]
    fn lp_text_shape() {
        let text = export_oct_ilp(&path(2));
        assert_eq!(
            text,
            "\\ odd cycle transversal, direct form, n = 2, m = 1\n\
             \\ s<v> = side of v, c<v> = 1 iff v is deleted\n\
             \\ recovery: S = { v : c<v> = 1 }\n\
             Minimize\n obj: c0 + c1\nSubject To\n e0a: s0 + s1 + c0 + c1 >= 1\n e0b: s0 + s1 - c0 - c1 <= 1\n\
             Binary\n s0 s1 c0 c1\nEnd\n"
        );
    }

    #[test]
    fn parser_accepts_foreign_spacing() {
        let m = IlpModel::parse_lp("MINIMIZE\n obj: 2 x + y\nsubject to\n c1: x + -1 y >= 0\n -x - y >= -1\nbinaries\nx y\nend\n").unwrap();
        assert_eq!(m.objective, vec![(2, 0), (1, 1)]);
        assert_eq!(m.constraints[0].terms, vec![(1, 0), (-1, 1)]);
        assert_eq!(m.constraints[1].rhs, -1);
        assert_eq!(optimum(&m), 0);
    }

    #[test]
    fn parser_rejects_garbage() {
        assert!(IlpModel::parse_lp("Minimize\n obj: x\nSubject To\n c: x >= 1\nEnd\n").is_err());
        assert!(IlpModel::parse_lp("Maximize\n obj: x\nEnd\n").is_err());
        assert!(IlpModel::parse_lp("Minimize\n obj: x\nBinary\n x\n").is_err());
        assert!(IlpModel::parse_lp("Minimize\n obj: 1.5 x\nBinary\n x\nEnd\n").is_err());
    }

    #[test]
    fn solution_formats() {
        let a = parse_solution_text("# status optimal\n# objective 2\nc0=1\nc1=0\n");
        assert!(a.optimal && a.objective == Some(2.0) && a.values["c0"] == 1.0);
        let b = parse_solution_text(
            "Optimal - objective value 3.00000000\n      0 x0  1  0\n      1 x1  0  1\n",
        );
        assert!(
            b.optimal && b.objective == Some(3.0) && b.values["x0"] == 1.0 && b.values["x1"] == 0.0
        );
        let c = parse_solution_text("# Objective value = 4\nx0 1\nx1 0.99999\n");
        assert!(!c.optimal && c.objective == Some(4.0) && c.values.len() == 2);
        let d = parse_solution_text("Model status\nOptimal\n\n# Primal solution values\nFeasible\nObjective 1\n# Columns 2\nx0 1\nx1 0\n");
        assert!(d.optimal && d.objective == Some(1.0) && d.values.len() == 2);
        let e = parse_solution_text("Stopped on time - objective value 9\n 0 c0 1 0\n");
        assert!(!e.optimal && e.objective == Some(9.0));
    }

    #[test]
    fn both_routes_recover() {
        let g = complete(4);
        for form in [Form::Oct, Form::Vc] {
            let r = solve_enumerated(&g, form, &Deadline::never(), None).unwrap();
            assert!(r.optimal && r.is_consistent());
            assert_eq!(r.upper, 2);
        }
    }

    #[test]
    fn missing_binary_is_a_config_error() {
        let err = invoke_external(
            "Minimize\n obj: 0\nSubject To\nBinary\nEnd\n",
            "/nonexistent/solver {input} {output}",
            Some(1.0),
        );
        assert!(matches!(err, Err(OctError::Config(_))));
        assert!(matches!(
            invoke_external("", "solver {input}", None),
            Err(OctError::Config(_))
        ));
    }

    #[test]
    fn unparseable_output_is_an_integration_error() {
        let err = solve_external(&cycle(3), Form::Oct, "cp {input} {output}", Some(5.0));
        match err {
            Err(OctError::Integration { raw, .. }) => assert!(raw.contains("Minimize")),
            other => panic!("{other:?}"),
        }
    }
}
