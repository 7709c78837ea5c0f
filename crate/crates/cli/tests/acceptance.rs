//! Acceptance criteria 1 to 9, one line per criterion. Runs without the
//! libtest harness so that every line is printed even when one fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use sigmagal::expr::parse_matrix;
use sigmagal::galois::{analyze, jet_functions, relation_lattice, relation_lattice_multiplicative, Combination, GroupReport, Problem, Witness};
use sigmagal::jets::{build_jet_matrix, jet_demo_bessel, LinearSystem, Matrix};
use sigmagal::ratfield::{int, rat, AlphaField, DeltaKind, OperatorSpec, Poly, QRatFunc, RatFunc, SigmaKind, Q};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = sigmagal_cli::run(std::iter::once("sigmagal").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, err) = cli(&full);
    ensure!(code == 0, "{args:?} exited with {code}: {err}");
    serde_json::from_str(&out).map_err(|e| format!("bad JSON from {args:?}: {e}"))
}

/// One generator in the JSON layout, from (variable, order, exponent).
fn gen(entries: &[(usize, usize, i64)]) -> Value {
    Value::Array(entries.iter().map(|&(v, o, e)| json!({"variable": v, "order": o, "exponent": e})).collect())
}

fn expect_field(report: &Value, key: &str, want: Value) -> Check {
    ensure!(report[key] == want, "{key}: got {}, want {want}", report[key]);
    Ok(())
}

fn verify_report(r: &GroupReport) -> Check {
    for c in &r.certificates {
        ensure!(c.verify(&r.op), "certificate for {} does not verify", c.vector);
    }
    ensure!(r.pv_sigma_trdeg == r.sigma_dim.value, "σ-trdeg {} != σ-dim {}", r.pv_sigma_trdeg, r.sigma_dim.value);
    Ok(())
}

fn parse_q(text: &str) -> QRatFunc {
    sigmagal::expr::parse_ratfunc::<Q>(text).unwrap()
}

fn criterion_1() -> Check {
    let r = cli_json(&["analyze-rank1", "--a", "2*x", "--op", "shift", "--delta", "ddx", "--order", "4"])?;
    expect_field(&r["group"], "generators", json!([gen(&[(1, 0, 1), (1, 1, -2), (1, 2, 1)])]))?;
    expect_field(&r, "presentation", json!("g·σ(g)^-2·σ^2(g) = 1"))?;
    expect_field(&r["closure"], "dims", json!([1, 2, 2, 2, 2]))?;
    expect_field(&r, "sigma_dimension", json!({"value": 0, "stabilized": true}))?;
    expect_field(&r, "zariski_dense", json!({"answer": true, "order_bound": 4}))?;
    expect_field(&r, "sigma_reduced", json!({"answer": true, "order_bound": 4}))?;
    verify_report(&analyze(&Problem::Multiplicative(parse_q("2*x")), &OperatorSpec::shift(), 4).map_err(|e| e.to_string())?)
}

fn criterion_2() -> Check {
    let r = cli_json(&["analyze-rank1", "--a", "1/(2*x)", "--op", "shift", "--order", "3"])?;
    expect_field(&r["group"], "generators", json!([gen(&[(1, 0, 2)])]))?;
    expect_field(&r, "presentation", json!("g^2 = 1"))?;
    expect_field(&r["closure"], "degrees", json!([2, 4, 8, 16]))?;
    expect_field(&r["sigma_dimension"], "value", json!(0))?;
    let cert = r["certificates"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["vector"] == gen(&[(1, 0, 2)])))
        .ok_or("no certificate for the order-0 generator")?;
    expect_field(&cert["witness"], "f", json!("x"))?;
    verify_report(&analyze(&Problem::Multiplicative(parse_q("1/(2*x)")), &OperatorSpec::shift(), 3).map_err(|e| e.to_string())?)
}

fn criterion_3() -> Check {
    let r = cli_json(&["analyze-rank1", "--a", "1/2", "--op", "mahler:2", "--delta", "xddx", "--order", "3"])?;
    expect_field(&r["group"], "generators", json!([gen(&[(1, 0, 2)]), gen(&[(1, 1, 1)])]))?;
    expect_field(&r, "presentation", json!("g^2 = 1; σ(g) = 1"))?;
    expect_field(&r["sigma_reduced"], "answer", json!(false))?;
    expect_field(&r["sigma_reduced"], "witness", gen(&[(1, 0, 1)]))?;
    let op = OperatorSpec::mahler(2).map_err(|e| e.to_string())?;
    verify_report(&analyze(&Problem::Multiplicative(parse_q("1/2")), &op, 3).map_err(|e| e.to_string())?)
}

fn criterion_4() -> Check {
    let r = cli_json(&["analyze-rank1", "--a", "1", "--op", "shift", "--order", "2"])?;
    expect_field(&r["group"], "generators", json!([gen(&[(1, 0, 1), (1, 1, -1)])]))?;
    verify_report(&analyze(&Problem::Multiplicative(parse_q("1")), &OperatorSpec::shift(), 2).map_err(|e| e.to_string())?)
}

fn criterion_5() -> Check {
    let op = OperatorSpec::shift();
    let d = 3;
    let full = analyze(&Problem::Additive(parse_q("1/x^2")), &op, d).map_err(|e| e.to_string())?;
    let v = full.group.expand_to_order(d);
    ensure!(v.rank() == d + 1, "1/x^2: relation space has rank {}, want {}", v.rank(), d + 1);
    ensure!(full.closure.dims().iter().all(|&k| k == 0), "1/x^2: group not trivial, dims {:?}", full.closure.dims());
    ensure!(!full.certificates.is_empty(), "1/x^2: no certificates");
    for c in &full.certificates {
        ensure!(matches!(c.witness, Witness::Antiderivative(_)), "1/x^2: certificate is not an antiderivative");
    }
    verify_report(&full)?;

    let none = analyze(&Problem::Additive(parse_q("1/x")), &op, d).map_err(|e| e.to_string())?;
    ensure!(none.group.generators().is_empty(), "1/x: unexpected relations {:?}", none.group.presentation());
    ensure!(none.sigma_dim.value == 1, "1/x: σ-dim {}", none.sigma_dim.value);
    verify_report(&none)?;

    let r = cli_json(&["analyze-additive", "--b", "1/x", "--order", "3"])?;
    expect_field(&r["sigma_dimension"], "value", json!(1))
}

fn linear(p: i64) -> Poly<Q> {
    Poly::new(vec![int(-p), int(1)])
}

/// Σ r_i/(x − p_i) with poles in −3..3 and residues in −4..4.
fn random_rank_one(rng: &mut ChaCha8Rng) -> QRatFunc {
    (0..rng.gen_range(1..=3)).fold(RatFunc::zero(), |acc, _| {
        let (p, r) = (rng.gen_range(-3..=3), rng.gen_range(-4..=4));
        acc.add(&RatFunc::new(Poly::constant(int(r)), linear(p)))
    })
}

fn ball(len: usize, radius: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| (-radius..=radius).map(move |c| [v.clone(), vec![BigInt::from(c)]].concat()))
            .collect();
    }
    out
}

/// Residues r/s with a shared s in 1..3 plus an optional double pole, so
/// that the lattice is a proper sublattice and the rejection side is tested.
fn random_rank_one_rational(rng: &mut ChaCha8Rng) -> QRatFunc {
    let s = rng.gen_range(1..=3);
    let mut a = (0..rng.gen_range(1..=3)).fold(RatFunc::zero(), |acc, _| {
        let (p, r) = (rng.gen_range(-3..=3), rng.gen_range(-4..=4));
        acc.add(&RatFunc::new(Poly::constant(rat(r, s)), linear(p)))
    });
    if rng.gen_bool(0.25) {
        let (p, c) = (rng.gen_range(-3..=3), rng.gen_range(-2..=2));
        a = a.add(&RatFunc::new(Poly::constant(int(c)), linear(p).pow(2)));
    }
    a
}

fn twin_path(a: &QRatFunc, order: usize) -> Result<usize, String> {
    let op = OperatorSpec::shift();
    let rel = relation_lattice_multiplicative(a, &op, order).map_err(|e| e.to_string())?;
    for d in 0..=order {
        let direct = relation_lattice(std::slice::from_ref(a), &op, d).map_err(|e| e.to_string())?;
        ensure!(direct == rel.group.expand_to_order(d), "a = {a}, d = {d}: direct lattice differs from truncation");
    }
    let funcs = jet_functions(std::slice::from_ref(a), &op, order).map_err(|e| e.to_string())?;
    let comb = Combination::new(&funcs);
    let mut rejected = 0;
    for m in ball(order + 1, 2) {
        let inside = rel.lattice.contains(&m);
        ensure!(comb.is_relation(&op, &m) == inside, "a = {a}, m = {m:?}: decider disagrees (in lattice: {inside})");
        rejected += usize::from(!inside);
    }
    Ok(rejected)
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let a = random_rank_one(&mut rng);
        twin_path(&a, rng.gen_range(0..=4))?;
    }
    // integer residues make every lattice full; check rejections separately
    let mut rejected = 0;
    for _ in 0..30 {
        let a = random_rank_one_rational(&mut rng);
        rejected += twin_path(&a, rng.gen_range(0..=4))?;
    }
    ensure!(rejected > 0, "no lattice-external vector was ever tested");
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng) -> Poly<Q> {
    Poly::new((0..rng.gen_range(0..=4)).map(|_| int(rng.gen_range(-5..=5))).collect())
}

fn random_ratfunc(rng: &mut ChaCha8Rng) -> QRatFunc {
    loop {
        let (n, d) = (random_poly(rng), random_poly(rng));
        if !d.is_zero() {
            return RatFunc::new(n, d);
        }
    }
}

fn random_alpha_ratfunc(rng: &mut ChaCha8Rng) -> RatFunc<AlphaField> {
    let mut coeffs = || {
        (0..rng.gen_range(1..=3))
            .map(|_| RatFunc::new(random_poly(rng), Poly::new(vec![int(rng.gen_range(1..=3)), int(1)])))
            .collect::<Vec<AlphaField>>()
    };
    loop {
        let (n, d) = (Poly::new(coeffs()), Poly::new(coeffs()));
        if !d.is_zero() {
            return RatFunc::new(n, d);
        }
    }
}

fn operators() -> Vec<OperatorSpec> {
    vec![
        OperatorSpec::shift(),
        OperatorSpec::new(SigmaKind::Shift { step: rat(-3, 2) }, DeltaKind::Ddx).unwrap(),
        OperatorSpec::q_dilation(int(2)).unwrap(),
        OperatorSpec::q_dilation(rat(-1, 3)).unwrap(),
        OperatorSpec::mahler(2).unwrap(),
        OperatorSpec::mahler(3).unwrap(),
    ]
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for op in operators() {
        for _ in 0..200 {
            let r = random_ratfunc(&mut rng);
            ensure!(op.commutation_check(&r).map_err(|e| e.to_string())?, "{op}: δσ = ℏσδ fails on {r}");
        }
    }
    let param = OperatorSpec::param_shift();
    for _ in 0..200 {
        let r = random_alpha_ratfunc(&mut rng);
        ensure!(param.commutation_check(&r).map_err(|e| e.to_string())?, "{param}: δσ = ℏσδ fails on {r}");
    }
    for op in operators().into_iter().chain([param]) {
        for i in 0..=6u64 {
            for j in 0..=6u64 {
                let lhs = op.hbar_power::<Q>(i + j);
                let rhs = op.hbar_power::<Q>(i).mul(&op.sigma_apply(&op.hbar_power::<Q>(j), i).map_err(|e| e.to_string())?);
                ensure!(lhs == rhs, "{op}: cocycle fails at i = {i}, j = {j}");
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    for d in 0..=3 {
        let jet = jet_demo_bessel(d);
        ensure!(jet.dim() == 2 * (d + 1), "Bessel A_{d} has dimension {}", jet.dim());
        for i in 0..=d {
            let want = parse_matrix::<AlphaField>(&format!("[[0,1],[(alpha+{i})^2/x^2-1,-1/x]]")).map_err(|e| e.to_string())?;
            ensure!(jet.block(i) == &want, "Bessel A_{d}: block {i} is not α ↦ α+{i}");
        }
    }
    let (code, out, err) = cli(&["jet", "--matrix", "[[0,1],[alpha^2/x^2-1,-1/x]]", "--param", "--op", "shift", "--order", "1"]);
    ensure!(code == 0, "jet command exited with {code}: {err}");
    ensure!(out.lines().filter(|l| l.starts_with('[')).count() == 4, "jet command did not print a 4x4 matrix:\n{out}");

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for op in operators() {
        for _ in 0..10 {
            let m: Matrix<Q> = (0..2).map(|_| (0..2).map(|_| random_ratfunc(&mut rng)).collect()).collect();
            let sys = LinearSystem::new(m, op.clone()).map_err(|e| e.to_string())?;
            let top = 3;
            let high = build_jet_matrix(&sys, top).map_err(|e| e.to_string())?;
            for d in 0..top {
                let low = build_jet_matrix(&sys, d).map_err(|e| e.to_string())?;
                ensure!(&high.blocks()[..=d] == low.blocks(), "{op}: order-{d} jet is not a truncation of order {top}");
            }
            for i in 0..=top {
                let hb = op.hbar_power::<Q>(i as u64);
                for (r, row) in sys.matrix().iter().enumerate() {
                    for (c, e) in row.iter().enumerate() {
                        let want = hb.mul(&op.sigma_apply(e, i as u64).map_err(|e| e.to_string())?);
                        ensure!(high.block(i)[r][c] == want, "{op}: block {i} entry ({r},{c}) is not ℏ_i σ^i(A)");
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_9() -> Check {
    let shift = OperatorSpec::shift();
    let mut problems: Vec<(Problem, OperatorSpec, usize)> = vec![
        (Problem::Multiplicative(parse_q("2*x")), shift.clone(), 4),
        (Problem::Multiplicative(parse_q("1/(2*x)")), shift.clone(), 3),
        (Problem::Multiplicative(parse_q("1/2")), OperatorSpec::mahler(2).unwrap(), 3),
        (Problem::Multiplicative(parse_q("1")), shift.clone(), 2),
        (Problem::Additive(parse_q("1/x^2")), shift.clone(), 3),
        (Problem::Additive(parse_q("1/x")), shift.clone(), 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..30 {
        let order = rng.gen_range(0..=4);
        let op = if k % 3 == 2 { OperatorSpec::q_dilation(int(2)).unwrap() } else { shift.clone() };
        let problem = match k % 3 {
            0 => Problem::Multiplicative(random_rank_one(&mut rng)),
            1 => Problem::Diagonal(vec![random_rank_one(&mut rng), random_rank_one(&mut rng)]),
            _ => Problem::Additive(random_ratfunc(&mut rng)),
        };
        problems.push((problem, op, order));
    }
    for (problem, op, order) in &problems {
        let report = analyze(problem, op, *order).map_err(|e| format!("{}: {e}", problem.name()))?;
        verify_report(&report)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("exponential example a = 2x", criterion_1),
        ("benign example a = 1/(2x)", criterion_2),
        ("Mahler example a = 1/2", criterion_3),
        ("sigma-integrability a = 1", criterion_4),
        ("additive cases 1/x^2 and 1/x", criterion_5),
        ("twin-path property, 100 + 30 instances", criterion_6),
        ("commutation and cocycle invariants", criterion_7),
        ("jet structure and Bessel blocks", criterion_8),
        ("sigma-trdeg equals sigma-dim", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS ({name}, {secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}, {secs:.1}s): {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
