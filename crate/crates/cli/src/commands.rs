use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use evoalg::automorphisms::{automorphism_family, is_automorphism, isomorphism_candidates, isomorphism_test, AlphaDomain};
use evoalg::derivations::{
    derivations_closed_form, derivations_solver, index_set, reconstruct_algebra, DerivationSpec,
    IndexSet,
};
use evoalg::local_maps::{
    is_local_automorphism, is_two_local_derivation_linear, local_automorphism_definitional,
    local_derivation_by_theorem, LocalDerivationChecker, LocalVerdict, Method, Witness,
    DEFAULT_SAMPLES,
};
use evoalg::{EvolutionAlgebra, MatrixQ, Nilindex, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{CheckKind, Cli, Command, DerMethod};
use crate::error::{CliError, CliResult};
use crate::input::{load_algebra, load_map, load_spec, parse_list, Loaded};
use crate::output;

/// Exit status for a computed but negative answer.
pub const REJECTED: i32 = 4;

pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

struct Report {
    name: &'static str,
    args: Value,
    inputs: Vec<(String, String)>,
    seed: Option<u64>,
    results: Value,
    text: String,
    exit: i32,
}

impl Report {
    fn new(name: &'static str, args: Value) -> Self {
        Report {
            name,
            args,
            inputs: Vec::new(),
            seed: None,
            results: Value::Null,
            text: String::new(),
            exit: 0,
        }
    }

    fn input<T>(&mut self, loaded: &Loaded<T>) {
        self.inputs
            .push((loaded.path.display().to_string(), loaded.sha256.clone()));
    }

    fn to_json(&self) -> Value {
        json!({
            "tool": { "name": "evoalg", "version": env!("CARGO_PKG_VERSION") },
            "command": { "name": self.name, "args": self.args },
            "inputs": self.inputs.iter().map(|(p, h)| json!({ "path": p, "sha256": h })).collect::<Vec<_>>(),
            "seed": self.seed,
            "results": self.results,
        })
    }

    fn finish(self, as_json: bool) -> Outcome {
        let stdout = if as_json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text
        };
        Outcome {
            stdout,
            exit: self.exit,
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let report = match &cli.command {
        Command::Analyze { algebra } => analyze(algebra)?,
        Command::Derivations { algebra, method } => derivations(algebra, *method)?,
        Command::Automorphisms { algebra } => automorphisms(algebra)?,
        Command::Isomorphic { first, second } => isomorphic(first, second)?,
        Command::Check { algebra, map, kind } => check(algebra, map, *kind, cli.seed)?,
        Command::Reconstruct {
            spec,
            subdiag,
            output,
        } => return reconstruct(spec, subdiag, output.as_deref(), cli.json),
    };
    Ok(report.finish(cli.json))
}

fn path_arg(p: &Path) -> Value {
    Value::String(p.display().to_string())
}

fn index_set_json(set: &IndexSet) -> Value {
    Value::Array(set.iter().map(|&(i, j)| json!([i, j])).collect())
}

fn index_set_text(set: &IndexSet) -> String {
    let items: Vec<String> = set.iter().map(|(i, j)| format!("({i},{j})")).collect();
    format!("{{{}}}", items.join(", "))
}

fn analyze(path: &Path) -> CliResult<Report> {
    let loaded = load_algebra(path)?;
    let e = &loaded.value;
    let mut r = Report::new("analyze", json!({ "algebra": path_arg(path) }));
    r.input(&loaded);
    let chain = e.power_chain_to_bound();
    let set = index_set(e);
    let eta = if set.is_empty() {
        None
    } else {
        Some(evoalg::automorphisms::eta(&set)?)
    };
    let violation = e.max_form_violation();
    let nil = match chain.verdict {
        Nilindex::Nilpotent(m) => json!({ "verdict": "nilpotent", "index": m }),
        Nilindex::NotNilpotent { cap } => json!({ "verdict": "not_nilpotent", "cap": cap }),
    };
    r.results = json!({
        "n": e.n(),
        "nilindex": nil,
        "chain_dims": chain.dims(),
        "rank": e.rank(),
        "square_dim": e.square_dim(),
        "max_nilindex_form": violation.is_none(),
        "max_form_violation": violation,
        "index_set": index_set_json(&set),
        "eta": eta,
    });
    let mut t = String::new();
    writeln!(t, "n: {}", e.n()).unwrap();
    writeln!(t, "nilindex: {}", chain.verdict).unwrap();
    writeln!(t, "chain dims: {:?}", chain.dims()).unwrap();
    writeln!(t, "rank(A): {}", e.rank()).unwrap();
    writeln!(t, "dim(E^2): {}", e.square_dim()).unwrap();
    match &violation {
        None => writeln!(t, "maximal-nilindex form: yes").unwrap(),
        Some(v) => writeln!(t, "maximal-nilindex form: no ({v})").unwrap(),
    }
    writeln!(t, "I_A: {}", index_set_text(&set)).unwrap();
    match eta {
        Some(eta) => writeln!(t, "eta: {eta}").unwrap(),
        None => writeln!(t, "eta: undefined (I_A empty)").unwrap(),
    }
    r.text = t;
    Ok(r)
}

fn space_text(t: &mut String, label: &str, space: &evoalg::derivations::MatrixSpace) {
    writeln!(t, "{label}: dim {}", space.dim()).unwrap();
    for (k, g) in space.generators().iter().enumerate() {
        writeln!(t, "  generator {}:", k + 1).unwrap();
        writeln!(t, "{}", output::matrix_text(g, "    ")).unwrap();
    }
}

fn derivations(path: &Path, method: DerMethod) -> CliResult<Report> {
    let loaded = load_algebra(path)?;
    let e = &loaded.value;
    let mut r = Report::new(
        "derivations",
        json!({ "algebra": path_arg(path), "method": method.name() }),
    );
    r.input(&loaded);
    let closed = match method {
        DerMethod::Solver => None,
        _ => Some(derivations_closed_form(e)?),
    };
    let solver = match method {
        DerMethod::Closed => None,
        _ => Some(derivations_solver(e)),
    };
    let primary = closed.as_ref().or(solver.as_ref()).expect("one method runs");
    let comparison = match (&closed, &solver) {
        (Some(c), Some(s)) => Some(if c == s { "MATCH" } else { "MISMATCH" }),
        _ => None,
    };
    let spec = DerivationSpec::from_space(primary);
    r.results = json!({
        "dim": primary.dim(),
        "closed_form": closed.as_ref().map(output::space),
        "solver": solver.as_ref().map(output::space),
        "comparison": comparison,
        "spec": spec.as_ref().map(|s| output::vector(&s.d)),
    });
    let mut t = String::new();
    if let Some(c) = &closed {
        space_text(&mut t, "closed form", c);
    }
    if let Some(s) = &solver {
        space_text(&mut t, "solver", s);
    }
    if let Some(s) = &spec {
        writeln!(t, "spec d: {}", output::vector_text(&s.d)).unwrap();
    }
    if let Some(c) = comparison {
        writeln!(t, "{c}").unwrap();
        if c == "MISMATCH" {
            r.exit = REJECTED;
        }
    }
    r.text = t;
    Ok(r)
}

/// `c_0 alpha + c_1 alpha^2 + ...` over the nonzero coefficients.
fn power_poly_text(coeffs: &[Rational]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let power = if k == 0 {
                "alpha".to_string()
            } else {
                format!("alpha^{}", 1u64 << k)
            };
            format!("({c})*{power}")
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn automorphisms(path: &Path) -> CliResult<Report> {
    let loaded = load_algebra(path)?;
    let e = &loaded.value;
    let mut r = Report::new("automorphisms", json!({ "algebra": path_arg(path) }));
    r.input(&loaded);
    let fam = automorphism_family(e)?;
    let n = fam.n();
    let solutions = fam.alpha_solutions_over_q();
    r.results = json!({
        "case": fam.domain().name(),
        "eta": fam.eta(),
        "alpha_solutions": solutions.as_ref().map(|s| output::vector(s)),
        "last_column_coeffs": fam.last_column_coeffs().iter().map(|c| output::vector(c)).collect::<Vec<_>>(),
    });
    let mut t = String::new();
    match fam.domain() {
        AlphaDomain::Free => writeln!(t, "case: free (any nonzero alpha)").unwrap(),
        AlphaDomain::RootOfUnity { eta } => {
            let sols = solutions.as_deref().unwrap_or_default();
            writeln!(
                t,
                "case: root_of_unity (alpha^{eta} = 1), rational alpha in {{{}}}",
                sols.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
            )
            .unwrap()
        }
    }
    for i in 1..=n {
        writeln!(t, "phi_{i}{i} = alpha^{}", 1u64 << (i - 1)).unwrap();
    }
    writeln!(t, "phi_1{n} = beta (free)").unwrap();
    for (r_idx, coeffs) in fam.last_column_coeffs().iter().enumerate() {
        writeln!(t, "phi_{}{n} = {}", r_idx + 2, power_poly_text(coeffs)).unwrap();
    }
    writeln!(t, "all other entries vanish").unwrap();
    r.text = t;
    Ok(r)
}

fn isomorphic(first: &Path, second: &Path) -> CliResult<Report> {
    let a = load_algebra(first)?;
    let b = load_algebra(second)?;
    let mut r = Report::new(
        "isomorphic",
        json!({ "first": path_arg(first), "second": path_arg(second) }),
    );
    r.input(&a);
    r.input(&b);
    let found = isomorphism_test(&a.value, &b.value)?;
    let tried = isomorphism_candidates(&a.value, &b.value)?;
    let label = if found.is_some() { "ISOMORPHIC" } else { "NOT ISOMORPHIC" };
    r.results = json!({
        "isomorphic": found.is_some(),
        "verdict": label,
        "map": found.as_ref().map(output::matrix),
        "scalings_tried": tried.as_ref().map(|t| output::vector(t)),
    });
    let mut t = String::new();
    writeln!(t, "{label}").unwrap();
    if let Some(m) = &found {
        writeln!(t, "map (row i = image of e_i):").unwrap();
        writeln!(t, "{}", output::matrix_text(m, "  ")).unwrap();
    } else {
        r.exit = REJECTED;
        match &tried {
            Some(list) if list.is_empty() => {
                writeln!(t, "no scaling satisfies the structure constraints").unwrap()
            }
            Some(list) => writeln!(t, "every admissible scaling fails: {}", output::vector_text(list)).unwrap(),
            None => writeln!(t, "the scaling t = 1 fails").unwrap(),
        }
    }
    r.text = t;
    Ok(r)
}

fn basis(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// First pair of basis vectors on which `f(xy)` differs from `combine(f x, f y)`.
fn failing_basis_pair(
    e: &EvolutionAlgebra,
    f: &MatrixQ,
    combine: impl Fn(&[Rational], &[Rational], &[Rational], &[Rational]) -> CliResult<Vec<Rational>>,
) -> CliResult<Option<Witness>> {
    let n = e.n();
    for i in 0..n {
        for j in i..n {
            let (x, y) = (basis(n, i), basis(n, j));
            let lhs = f.apply(&e.multiply_coords(&x, &y)?)?;
            let rhs = combine(&x, &y, &f.apply(&x)?, &f.apply(&y)?)?;
            if lhs != rhs {
                return Ok(Some(Witness::Pair(x, y)));
            }
        }
    }
    Ok(None)
}

fn direct_verdict(ok: bool, witness: Option<Witness>) -> LocalVerdict {
    if ok {
        LocalVerdict::accepted(Method::Definitional)
    } else {
        LocalVerdict::rejected(Method::Definitional, witness)
    }
}

fn check(path: &Path, map: &Path, kind: CheckKind, seed: u64) -> CliResult<Report> {
    let loaded = load_algebra(path)?;
    let e = &loaded.value;
    let m = load_map(map, e.n())?;
    let delta = &m.value;
    let mut r = Report::new(
        "check",
        json!({ "algebra": path_arg(path), "map": path_arg(map), "kind": kind.name() }),
    );
    r.input(&loaded);
    r.input(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (result, cross) = match kind {
        CheckKind::Derivation => {
            let ok = derivations_solver(e).contains(delta)?;
            let witness = failing_basis_pair(e, delta, |x, y, dx, dy| {
                let a = e.multiply_coords(dx, y)?;
                let b = e.multiply_coords(x, dy)?;
                Ok(a.iter().zip(&b).map(|(p, q)| p + q).collect())
            })?;
            (direct_verdict(ok, witness), None)
        }
        CheckKind::Automorphism => {
            let ok = is_automorphism(e, delta)?;
            let witness = failing_basis_pair(e, delta, |_, _, fx, fy| Ok(e.multiply_coords(fx, fy)?))?;
            (direct_verdict(ok, witness), None)
        }
        CheckKind::LocalDerivation => {
            r.seed = Some(seed);
            let checker = LocalDerivationChecker::new(e)?;
            let verdict = checker.check(delta, &mut rng)?;
            (verdict, Some(local_derivation_by_theorem(e, delta)?))
        }
        CheckKind::TwoLocal => (is_two_local_derivation_linear(e, delta)?, None),
        CheckKind::LocalAutomorphism => {
            r.seed = Some(seed);
            let theorem = is_local_automorphism(e, delta, &mut rng)?;
            let sampled = local_automorphism_definitional(e, delta, DEFAULT_SAMPLES, &mut rng)?;
            (theorem, Some(sampled))
        }
    };
    if !result.is_accepted() {
        r.exit = REJECTED;
    }
    r.results = json!({
        "kind": kind.name(),
        "result": output::verdict(&result),
        "cross_check": cross.as_ref().map(output::verdict),
    });
    let mut t = String::new();
    writeln!(t, "{}: {}", kind.name(), output::verdict_text(&result)).unwrap();
    if let Some(c) = &cross {
        writeln!(t, "cross-check: {}", output::verdict_text(c)).unwrap();
        if c.verdict != result.verdict {
            writeln!(t, "note: the two routes disagree").unwrap();
        }
    }
    r.text = t;
    Ok(r)
}

fn algebra_file(e: &EvolutionAlgebra) -> Value {
    json!({ "n": e.n(), "matrix": output::matrix(e.structure()) })
}

fn reconstruct(spec: &Path, subdiag: &str, out: Option<&Path>, as_json: bool) -> CliResult<Outcome> {
    let loaded = load_spec(spec)?;
    let sub = parse_list(subdiag)?;
    let e = reconstruct_algebra(&loaded.value, &sub)?;
    let file = algebra_file(&e);
    let body = output::algebra_file_text(e.structure());
    let mut r = Report::new(
        "reconstruct",
        json!({
            "spec": path_arg(spec),
            "subdiag": output::vector(&sub),
            "output": out.map(path_arg),
        }),
    );
    r.input(&loaded);
    r.results = json!({ "algebra": file });
    match out {
        Some(p) => {
            fs::write(p, &body).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            r.text = format!("wrote {}-dimensional algebra to {}\n", e.n(), p.display());
            Ok(r.finish(as_json))
        }
        None if as_json => Ok(r.finish(true)),
        None => Ok(Outcome {
            stdout: body,
            exit: 0,
        }),
    }
}
