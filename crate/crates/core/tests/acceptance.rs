//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qplof::exactla::{lagrange_diagonalize, Matrix};
use qplof::oracle::{
    candidate_enumerate, convex_status_oracle, falsify_by_sampling, fm_feasible, generate_instance,
    lp_status_oracle, InstanceSpec, ScaleLimits, Shape,
};
use qplof::poly::AffineMap;
use qplof::quadform::{align_linear_term, decouple, substitute_into_function};
use qplof::solver::{verify_optimal, verify_ray};
use qplof::{min_qp_lof, Outcome, OrderedField, Polyhedron, QuadraticFunction, RatFunc, Rational, Status};

const DECOMPOSITION_CASES: usize = 300;
const DECOMPOSITION_POINTS: usize = 20;
const DECOMPOSITION_BUDGET: Duration = Duration::from_secs(30);
const TRICHOTOMY_CASES: u64 = 500;
const TRICHOTOMY_BUDGET: Duration = Duration::from_secs(600);
const LP_CASES: u64 = 200;
const CONVEX_CASES: u64 = 200;
const UNBOUNDED_BIASED_CASES: u64 = 50;
const AFFINE_CASES: u64 = 100;
const AFFINE_MAPS: usize = 3;
const STRESS_CASES: u64 = 25;
const STRESS_BUDGET: Duration = Duration::from_secs(120);
const FALSIFY_VERDICTS: usize = 100;
const FALSIFY_TRIALS: usize = 1000;
const CORRUPTED: usize = 20;
const CORRUPTED_REQUIRED: usize = 19;

type Q = Rational;

struct Report {
    failed: usize,
    /// Unbounded verdicts seen anywhere, and how many carried a valid ray.
    rays_seen: usize,
    rays_valid: usize,
}

impl Report {
    fn line(&mut self, id: u32, name: &str, ok: bool, detail: String) {
        println!("[{}] criterion {id:>2} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed += 1;
        }
    }

    fn record_ray<F: OrderedField>(&mut self, p: &Polyhedron<F>, f: &QuadraticFunction<F>, out: &Outcome<F>) {
        if let Outcome::Unbounded(ray) = out {
            self.rays_seen += 1;
            if verify_ray(p, f, ray) {
                self.rays_valid += 1;
            }
        }
    }
}

fn limits() -> ScaleLimits {
    ScaleLimits::default()
}

fn q(v: i64) -> Q {
    Q::from_i64(v)
}

fn instance(n: usize, m: usize, seed: u64, shape: Shape) -> (Polyhedron<Q>, QuadraticFunction<Q>) {
    generate_instance(&InstanceSpec {
        n,
        m,
        bound: 3,
        seed,
        shape,
    })
    .expect("valid spec")
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Matrix<Q> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = q(rng.gen_range(-bound..=bound));
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

fn random_rational(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=4)).expect("nonzero denominator")
}

fn decomposition(report: &mut Report) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xdec0);
    let mut bad = Vec::new();
    for case in 0..DECOMPOSITION_CASES {
        let n = 1 + case % 5;
        let qm = random_symmetric(&mut rng, n, 5);
        let diag = lagrange_diagonalize(&qm).unwrap();
        let back = diag
            .s
            .transpose()
            .mul(&Matrix::diagonal(&diag.lambda))
            .and_then(|t| t.mul(&diag.s))
            .unwrap();
        if back != qm {
            bad.push(format!("case {case}: SᵀΛS ≠ Q"));
            continue;
        }
        let c: Vec<Q> = (0..n).map(|_| q(rng.gen_range(-5..=5))).collect();
        let f = QuadraticFunction::new(qm, c, q(rng.gen_range(-5..=5))).unwrap();
        let form = decouple(&f).unwrap();
        let aligned = align_linear_term(&form).unwrap();
        let annihilated = |lambda: &[Q], u: &[Q]| lambda.iter().zip(u).all(|(l, u)| (l.clone() * u).is_zero());
        if !annihilated(&form.lambda, &form.u) || !annihilated(&aligned.lambda, &aligned.u) {
            bad.push(format!("case {case}: Λu ≠ 0"));
        }
        if aligned.linear_support() > 1 {
            bad.push(format!("case {case}: aligned support {}", aligned.linear_support()));
        }
        for _ in 0..DECOMPOSITION_POINTS {
            let x: Vec<Q> = (0..n).map(|_| random_rational(&mut rng)).collect();
            let fx = f.evaluate(&x).unwrap();
            if form.evaluate(&x).unwrap() != fx || aligned.evaluate(&x).unwrap() != fx {
                bad.push(format!("case {case}: reconstruction differs at {x:?}"));
                break;
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < DECOMPOSITION_BUDGET;
    report.line(
        1,
        "decomposition",
        ok,
        format!("{DECOMPOSITION_CASES} matrices, {} failures, {elapsed:.1?}", bad.len()) + &first(&bad),
    );
}

fn first(v: &[String]) -> String {
    v.first().map(|s| format!(" (first: {s})")).unwrap_or_default()
}

fn trichotomy_shape(i: u64, m: usize) -> Shape {
    match i % 5 {
        2 => Shape::Convex,
        3 => Shape::Lp,
        4 if m >= 2 => Shape::Infeasible,
        _ => Shape::Generic,
    }
}

fn trichotomy_and_values(report: &mut Report) {
    let start = Instant::now();
    let (mut infeasible_mismatch, mut value_mismatch) = (Vec::new(), Vec::new());
    let mut counts = [0usize; 3];
    for i in 0..TRICHOTOMY_CASES {
        let n = 1 + (i % 3) as usize;
        let m = ((i / 3) % 6) as usize;
        let (p, f) = instance(n, m, i, trichotomy_shape(i, m));
        let out = min_qp_lof(&p, &f).unwrap().outcome;
        report.record_ray(&p, &f, &out);
        counts[out.status() as usize] += 1;
        let empty = fm_feasible(&p, &limits()).unwrap().is_none();
        if empty != (out.status() == Status::Infeasible) {
            infeasible_mismatch.push(format!("seed {i}: solver {}, fm empty = {empty}", out.status()));
        }
        if let Outcome::Optimal { value, point } = &out {
            let cands = candidate_enumerate(&p, &f, &limits()).unwrap();
            if cands.min_value() != Some(value) || !verify_optimal(&p, &f, value, point) {
                value_mismatch.push(format!("seed {i}: solver {value}, candidates {:?}", cands.min_value()));
            }
        }
    }
    let elapsed = start.elapsed();
    let in_budget = elapsed < TRICHOTOMY_BUDGET;
    let mix = format!(
        "{} infeasible / {} unbounded / {} optimal",
        counts[Status::Infeasible as usize],
        counts[Status::Unbounded as usize],
        counts[Status::Optimal as usize]
    );
    report.line(
        2,
        "infeasibility agreement",
        infeasible_mismatch.is_empty() && in_budget,
        format!("{TRICHOTOMY_CASES} instances ({mix}), {} mismatches", infeasible_mismatch.len())
            + &first(&infeasible_mismatch),
    );
    report.line(
        3,
        "optimal-value agreement",
        value_mismatch.is_empty() && in_budget,
        format!(
            "{} optimal verdicts, {} mismatches, criteria 2-3 took {elapsed:.1?}",
            counts[Status::Optimal as usize],
            value_mismatch.len()
        ) + &first(&value_mismatch),
    );
}

fn same_verdict(a: &Outcome<Q>, b: &Outcome<Q>) -> bool {
    a.status() == b.status() && a.optimal_value() == b.optimal_value()
}

fn lp_agreement(report: &mut Report) {
    let mut bad = Vec::new();
    for i in 0..LP_CASES {
        let n = 1 + (i % 3) as usize;
        let m = ((i / 3) % 6) as usize;
        let (p, f) = instance(n, m, 10_000 + i, Shape::Lp);
        let out = min_qp_lof(&p, &f).unwrap().outcome;
        report.record_ray(&p, &f, &out);
        let oracle = lp_status_oracle(&p, &f, &limits()).unwrap();
        if !same_verdict(&out, &oracle) {
            bad.push(format!("seed {}: solver {:?}, oracle {:?}", 10_000 + i, out.value(), oracle.value()));
        }
    }
    report.line(
        4,
        "LP agreement",
        bad.is_empty(),
        format!("{LP_CASES} instances, {} mismatches", bad.len()) + &first(&bad),
    );
}

fn convex_agreement(report: &mut Report) {
    let mut bad = Vec::new();
    for i in 0..CONVEX_CASES {
        let n = 1 + (i % 3) as usize;
        let m = ((i / 3) % 6) as usize;
        let (p, f) = instance(n, m, 20_000 + i, Shape::Convex);
        let out = min_qp_lof(&p, &f).unwrap().outcome;
        report.record_ray(&p, &f, &out);
        let oracle = convex_status_oracle(&p, &f, &limits()).unwrap();
        if !same_verdict(&out, &oracle) {
            bad.push(format!("seed {}: solver {:?}, oracle {:?}", 20_000 + i, out.value(), oracle.value()));
        }
    }
    report.line(
        5,
        "convex agreement",
        bad.is_empty(),
        format!("{CONVEX_CASES} instances, {} mismatches", bad.len()) + &first(&bad),
    );
}

fn unbounded_biased(report: &mut Report) -> usize {
    let mut detected = 0;
    for i in 0..UNBOUNDED_BIASED_CASES {
        let n = 1 + (i % 3) as usize;
        let m = ((i / 3) % 6) as usize;
        let (p, f) = instance(n, m, 30_000 + i, Shape::UnboundedBiased);
        let out = min_qp_lof(&p, &f).unwrap().outcome;
        report.record_ray(&p, &f, &out);
        if out.status() == Status::Unbounded {
            detected += 1;
        }
    }
    detected
}

/// Random invertible `T` with small entries and a random shift `t`.
fn random_affine(rng: &mut ChaCha8Rng, n: usize) -> AffineMap<Q> {
    loop {
        let rows: Vec<Vec<Q>> = (0..n)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-2..=2))).collect())
            .collect();
        let t = Matrix::from_rows_with_cols(rows, n).unwrap();
        if t.rank() == n {
            let shift = (0..n).map(|_| random_rational(rng)).collect();
            return AffineMap::new(t, shift).unwrap();
        }
    }
}

fn affine_invariance(report: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xaff1);
    let mut bad = Vec::new();
    for i in 0..AFFINE_CASES {
        let n = 1 + (i % 3) as usize;
        let m = ((i / 3) % 6) as usize;
        let (p, f) = instance(n, m, 40_000 + i, trichotomy_shape(i, m));
        let base = min_qp_lof(&p, &f).unwrap().outcome;
        report.record_ray(&p, &f, &base);
        for _ in 0..AFFINE_MAPS {
            let map = random_affine(&mut rng, n);
            // {z : A (T z + t) ≤ b}
            let a_z = p.a().mul(&map.m).unwrap();
            let at = p.a().mul_vec(&map.p).unwrap();
            let b_z = p.b().iter().zip(at).map(|(b, v)| b.clone() - &v).collect();
            let p_z = Polyhedron::new(a_z, b_z).unwrap();
            let f_z = substitute_into_function(&f, &map).unwrap();
            let out = min_qp_lof(&p_z, &f_z).unwrap().outcome;
            report.record_ray(&p_z, &f_z, &out);
            let mut ok = same_verdict(&base, &out);
            if let Outcome::Optimal { value, point } = &out {
                let x = map.apply(point).unwrap();
                ok &= verify_optimal(&p, &f, value, &x);
            }
            if !ok {
                bad.push(format!("seed {}: {:?} vs {:?}", 40_000 + i, base.value(), out.value()));
            }
        }
    }
    report.line(
        7,
        "affine invariance",
        bad.is_empty(),
        format!("{AFFINE_CASES} x {AFFINE_MAPS} reparameterizations, {} mismatches", bad.len()) + &first(&bad),
    );
}

fn r(s: &str) -> RatFunc {
    RatFunc::parse_literal(s).unwrap()
}

fn ratfunc_poly(rows: &[(Vec<RatFunc>, RatFunc)], n: usize) -> Polyhedron<RatFunc> {
    let a = Matrix::from_rows_with_cols(rows.iter().map(|(a, _)| a.clone()).collect(), n).unwrap();
    Polyhedron::new(a, rows.iter().map(|(_, b)| b.clone()).collect()).unwrap()
}

fn non_archimedean(report: &mut Report) {
    let e = RatFunc::epsilon();
    let one = RatFunc::one();
    let zero = RatFunc::zero();
    let mut bad = Vec::new();
    let mut check = |name: &str, p: Polyhedron<RatFunc>, f: QuadraticFunction<RatFunc>, expect: Option<(&str, Vec<&str>)>| {
        let out = min_qp_lof(&p, &f).unwrap().outcome;
        report.record_ray(&p, &f, &out);
        let ok = match (&out, &expect) {
            (Outcome::Optimal { value, point }, Some((v, x))) => {
                value.render() == *v && point.iter().map(RatFunc::render).collect::<Vec<_>>() == *x
            }
            (Outcome::Infeasible, None) => true,
            _ => false,
        };
        if !ok {
            bad.push(format!("{name}: got {out:?}"));
        }
    };

    // εx² − x: completing the square gives x = 1/(2ε), value −1/(4ε).
    let x_star = (e.clone() * RatFunc::from_i64(2)).inv().unwrap();
    let v_star = e.clone() * &x_star * &x_star - &x_star;
    assert_eq!(v_star, r("(-1)/(4*e)"));
    check(
        "e*x^2 - x",
        Polyhedron::whole_space(1),
        QuadraticFunction::new(Matrix::diagonal(std::slice::from_ref(&e)), vec![-one.clone()], zero.clone()).unwrap(),
        Some(("(-1/4)/(e)", vec!["(1/2)/(e)"])),
    );

    // x² on x ≥ 1 + ε: the bound is active.
    let bound = one.clone() + &e;
    assert_eq!(bound.clone() * &bound, r("1 + 2*e + e^2"));
    check(
        "x^2, x >= 1+e",
        ratfunc_poly(&[(vec![-one.clone()], -bound)], 1),
        QuadraticFunction::diagonal(std::slice::from_ref(&one), vec![zero.clone()], zero.clone()).unwrap(),
        Some(("1 + 2*e + e^2", vec!["1 + e"])),
    );

    // x² + y² on x + y ≥ ε: (ε/2, ε/2), value ε²/2.
    check(
        "x^2 + y^2, x + y >= e",
        ratfunc_poly(&[(vec![-one.clone(), -one.clone()], -e.clone())], 2),
        QuadraticFunction::diagonal(&[one.clone(), one.clone()], vec![zero.clone(), zero.clone()], zero.clone())
            .unwrap(),
        Some(("1/2*e^2", vec!["1/2*e", "1/2*e"])),
    );

    // −x on εx ≤ 1: an infinitely large optimum 1/ε.
    check(
        "-x, e*x <= 1",
        ratfunc_poly(&[(vec![e.clone()], one.clone())], 1),
        QuadraticFunction::linear(vec![-one.clone()], zero.clone()).unwrap(),
        Some(("(-1)/(e)", vec!["(1)/(e)"])),
    );

    // ε ≤ x ≤ ε² is empty because ε² < ε.
    check(
        "e <= x <= e^2",
        ratfunc_poly(&[(vec![-one.clone()], -e.clone()), (vec![one.clone()], e.clone() * &e)], 1),
        QuadraticFunction::diagonal(std::slice::from_ref(&one), vec![zero.clone()], zero).unwrap(),
        None,
    );

    report.line(
        8,
        "non-Archimedean suite",
        bad.is_empty(),
        format!("5 instances, {} mismatches", bad.len()) + &first(&bad),
    );
}

fn stress(report: &mut Report) {
    let mut slowest = Duration::ZERO;
    let mut bad = Vec::new();
    for i in 0..STRESS_CASES {
        let (p, f) = instance(4, 6, 50_000 + i, Shape::Generic);
        let start = Instant::now();
        let res = min_qp_lof(&p, &f).unwrap();
        let took = start.elapsed();
        report.record_ray(&p, &f, &res.outcome);
        slowest = slowest.max(took);
        if took >= STRESS_BUDGET || res.stats.max_depth > p.dim() {
            bad.push(format!("seed {}: {took:.1?}, depth {}", 50_000 + i, res.stats.max_depth));
        }
    }
    report.line(
        9,
        "termination at n=4, m=6",
        bad.is_empty(),
        format!("{STRESS_CASES} instances, slowest {slowest:.1?}, {} violations", bad.len()) + &first(&bad),
    );
}

fn is_indefinite(f: &QuadraticFunction<Q>) -> bool {
    decouple(f).unwrap().lambda.iter().any(|l| l.is_negative())
}

fn falsification(report: &mut Report) {
    let mut verdicts = Vec::new();
    let mut seed = 60_000;
    while verdicts.len() < FALSIFY_VERDICTS {
        let n = 2 + (seed % 2) as usize;
        let m = 2 + (seed % 4) as usize;
        let (p, f) = instance(n, m, seed, Shape::Generic);
        seed += 1;
        if !is_indefinite(&f) {
            continue;
        }
        let out = min_qp_lof(&p, &f).unwrap().outcome;
        report.record_ray(&p, &f, &out);
        if let Outcome::Optimal { value, .. } = out {
            verdicts.push((p, f, value, seed));
        }
    }
    let refuted = verdicts
        .iter()
        .filter(|(p, f, v, s)| !falsify_by_sampling(p, f, v, FALSIFY_TRIALS, *s, &limits()).unwrap().passed())
        .count();
    let caught = verdicts
        .iter()
        .take(CORRUPTED)
        .filter(|(p, f, v, s)| {
            let raised = v.clone() + &q(1);
            !falsify_by_sampling(p, f, &raised, FALSIFY_TRIALS, *s, &limits()).unwrap().passed()
        })
        .count();
    report.line(
        10,
        "falsification robustness",
        refuted == 0 && caught >= CORRUPTED_REQUIRED,
        format!(
            "{FALSIFY_VERDICTS} indefinite optima, {refuted} refuted; {caught}/{CORRUPTED} corrupted values caught"
        ),
    );
}

fn main() -> ExitCode {
    let mut report = Report {
        failed: 0,
        rays_seen: 0,
        rays_valid: 0,
    };
    decomposition(&mut report);
    trichotomy_and_values(&mut report);
    lp_agreement(&mut report);
    convex_agreement(&mut report);
    let detected = unbounded_biased(&mut report);
    affine_invariance(&mut report);
    non_archimedean(&mut report);
    stress(&mut report);
    falsification(&mut report);
    // Criterion 6 covers every Unbounded verdict produced above.
    let rays_ok = report.rays_valid == report.rays_seen;
    report.line(
        6,
        "unbounded soundness",
        rays_ok && detected == UNBOUNDED_BIASED_CASES as usize,
        format!(
            "{}/{} rays verified; {detected}/{UNBOUNDED_BIASED_CASES} unbounded-biased instances detected",
            report.rays_valid, report.rays_seen
        ),
    );
    if report.failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", report.failed);
        ExitCode::FAILURE
    }
}
