//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria whose literal statement is known not to hold are listed in
//! `EXPECTED_RED`; each still runs its literal check and prints the evidence.
//! The run fails on any unexpected failure and on any unexpected pass.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pentarot::cyclo::{parse_cyclo, Cyclo, QuadReal};
use pentarot::dynamics::{self, CertificateKind};
use pentarot::fractal::{self, IfsSystem};
use pentarot::nfold;
use pentarot::odometer;
use pentarot::regions::{Named, PointSet};
use pentarot::suites::{self, SuiteOptions};
use pentarot::symbolic::{self, Lasso};

type Rat = BigRational;

const EXPECTED_RED: [u32; 3] = [2, 5, 11];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn third() -> Cyclo {
    Cyclo::from_rational(5, Rat::new(1.into(), 3.into()))
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed <= limit
}

fn c1_coding() -> Outcome {
    let t = Instant::now();
    let d = symbolic::coding_d(&third(), 26).unwrap();
    let el = t.elapsed();
    let ok = d == "10110101011010101101101101" && within(el, Duration::from_secs(1));
    outcome(ok, format!("d(1/3) = {d} in {el:?}"))
}

fn c2_induced_coding() -> Outcome {
    let x = parse_cyclo(5, "-2*zeta^-1/3").unwrap();
    let printed = "abaaabaaababab ab".replace(' ', "");
    let got = symbolic::coding_dtilde(&x, 16).unwrap();
    let image: String = got.chars().map(|c| if c == 'a' { "01" } else { "1" }).collect();
    let d = symbolic::coding_d(&x, image.len()).unwrap();
    let consistent = d == image;
    let literal = got == printed;
    outcome(
        literal && consistent,
        format!("computed {got}, printed {printed}; a→01, b→1 image matches d-coding: {consistent}"),
    )
}

fn c3_certificate() -> Outcome {
    let t = Instant::now();
    let cert = dynamics::classify(&third()).unwrap();
    let el = t.elapsed();
    let mut orbit = vec![third()];
    for _ in 0..6 {
        let next = dynamics::step_s(orbit.last().unwrap()).unwrap().unwrap();
        orbit.push(next);
    }
    let w2 = &Cyclo::omega_pow(2) * &third();
    let ok = cert.kind == CertificateKind::Aperiodic
        && cert.preperiod == Some(2)
        && cert.cycle == Some(4)
        && cert.witness_point == orbit[2]
        && orbit[2] == orbit[6]
        && orbit[1] == w2
        && cert.verify().unwrap()
        && within(el, Duration::from_secs(1));
    outcome(ok, format!("aperiodic, S²(1/3) = S⁶(1/3) = {}, S(1/3) = ω²/3, {el:?}", orbit[2]))
}

/// Lozenge coordinates `(a + bω)/2` in `[0, 1)` with `|b| ≤ 6`.
fn half_coords() -> Vec<QuadReal> {
    let mut out = Vec::new();
    for b in -6i64..=6 {
        for a in -20i64..=20 {
            let q = QuadReal::new(Rat::new(a.into(), 2.into()), Rat::new(b.into(), 2.into()));
            if q.signum() >= 0 && (&q - &QuadReal::one()).signum() < 0 {
                out.push(q);
            }
        }
    }
    out
}

fn c4_half_lattice() -> Outcome {
    let t = Instant::now();
    let coords = half_coords();
    let mut pts: Vec<Cyclo> =
        coords.iter().flat_map(|x| coords.iter().map(move |y| Cyclo::from_lozenge_coords(x, y))).collect();
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(4));
    pts.truncate(200);
    let sampled = pts.iter().filter(|x| suites::is_periodic(x)).count();
    let b = dynamics::enumerate_b(2);
    let b_ok = b.iter().filter(|x| suites::is_periodic(x)).count();
    let el = t.elapsed();
    let ok = sampled == pts.len() && pts.len() == 200 && b_ok == b.len() && within(el, Duration::from_secs(60));
    outcome(ok, format!("{sampled}/{} sampled periodic, {b_ok}/{} of B(2) periodic, {el:?}", pts.len(), b.len()))
}

fn c5_self_inducing() -> Outcome {
    let samples = suites::standard_samples(10_000);
    let (mut self_fail, mut self2_fail, mut tz) = (0usize, 0usize, 0usize);
    let (mut corrected_fail, mut outside_p0) = (0usize, 0usize);
    let p0 = Named::P0.region();
    for x in &samples {
        let (lhs, rhs) = dynamics::self_identity(x).unwrap();
        if lhs != rhs {
            self_fail += 1;
            outside_p0 += usize::from(!p0.contains(x));
        }
        corrected_fail += usize::from(dynamics::corrected_self_rhs(x).unwrap() != lhs);
        if dynamics::in_tzed(x) {
            tz += 1;
            if dynamics::induced_self_lhs(x).unwrap() != dynamics::step_ttilde(x).unwrap() {
                self2_fail += 1;
                outside_p0 += usize::from(!p0.contains(x));
            }
        }
    }
    outcome(
        self_fail == 0 && self2_fail == 0,
        format!(
            "first identity fails on {self_fail}/{} points, second on {self2_fail}/{tz}; \
             failures outside P₀: {outside_p0}; T³-on-P₀ form fails on {corrected_fail}",
            samples.len()
        ),
    )
}

fn c6_return_times() -> Outcome {
    let cells = dynamics::return_time_cells().unwrap();
    let wi2 = Cyclo::omega_pow(-2);
    let mut bad = 0usize;
    let mut counts = [0usize; 3];
    let samples = suites::standard_samples(10_000);
    for x in &samples {
        let y = &wi2 * x;
        let (_, m) = dynamics::first_return_lprime(&y).unwrap();
        let expected = if cells.time1.contains(&y) {
            1
        } else if cells.time3.contains(&y) {
            3
        } else if cells.time6.contains(&y) {
            6
        } else {
            0
        };
        match m {
            1 => counts[0] += 1,
            3 => counts[1] += 1,
            6 => counts[2] += 1,
            _ => {}
        }
        bad += usize::from(m != expected);
    }
    outcome(
        bad == 0,
        format!("{} samples of L′: m=1 ×{}, m=3 ×{}, m=6 ×{}, cell mismatches {bad}", samples.len(), counts[0], counts[1], counts[2]),
    )
}

fn c7_osc() -> Outcome {
    let yp = IfsSystem::yprime();
    let r1 = fractal::osc_check(&yp, 1);
    let r2 = fractal::osc_check(&yp, 2);
    outcome(
        r1.is_ok() && r2.is_ok(),
        format!("depth 1: {} pairs, {} overlaps; depth 2: {} pairs, {} overlaps", r1.pairs_checked, r1.overlaps.len(), r2.pairs_checked, r2.overlaps.len()),
    )
}

fn c8_cut_points() -> Outcome {
    let pairs = symbolic::cut_point_pairs();
    let equal = pairs.iter().filter(|(a, b)| symbolic::eval_lasso(a).unwrap() == symbolic::eval_lasso(b).unwrap()).count();
    outcome(equal == pairs.len() && pairs.len() == 3, format!("{equal}/{} pairs equal", pairs.len()))
}

fn c9_cylinders() -> Outcome {
    let rel = fractal::cylinder_relations().unwrap();
    let held = rel.iter().filter(|r| r.holds).count();
    outcome(held == 6 && rel.len() == 6, format!("{held}/{} identities hold", rel.len()))
}

fn c10_removal() -> Outcome {
    let d0 = Named::D0.region().area_f64();
    let mut worst = 0f64;
    let mut exact = true;
    for i in 0..=6 {
        exact &= fractal::removal_area_ratio(i) == fractal::removal_ratio(i);
        let numeric: f64 = fractal::pentagon_removal(i).iter().map(|(_, r)| r.area_f64()).sum::<f64>() / d0;
        worst = worst.max((numeric - fractal::removal_ratio(i).to_f64()).abs());
    }
    outcome(exact && worst < 1e-10, format!("exact ratio equality for i ≤ 6: {exact}; worst numeric area error {worst:.1e}"))
}

fn c11_diagrams() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let xs = odometer::sample_dyadics_avoiding(&mut rng, 100, odometer::is_cut_point_address);
    let add = odometer::additive_diagram(&xs).unwrap();
    let literal = odometer::multiplicative_diagram(&xs, false).unwrap();
    let corrected = odometer::multiplicative_diagram(&xs, true).unwrap();
    outcome(
        add.is_ok() && literal.is_ok(),
        format!(
            "additive: {} exact, {} boundary exceptions, {} failures; multiplicative with ρ: {} failures; with −ρ(−x): {} failures",
            add.exact_passes,
            add.cutpoint_exceptions.len(),
            add.failures.len(),
            literal.failures.len(),
            corrected.failures.len(),
        ),
    )
}

fn c12_equidistribution() -> Outcome {
    let t = Instant::now();
    let x = dynamics::step_t(&third()).unwrap();
    let table = fractal::cylinder_freq(&x, 100_000, 2).unwrap();
    let el = t.elapsed();
    let dev = table.max_deviation();
    outcome(
        dev <= 0.01 && table.counts.len() == 16 && within(el, Duration::from_secs(60)),
        format!("16 cylinders, max deviation from 1/16 = {dev:.2e}, {el:?}"),
    )
}

fn c13_automaton() -> Outcome {
    let g = symbolic::build_edge_automaton().unwrap();
    let rule = g.has_edge("5R", "3L") && g.has_edge("5R", "0R");
    let third = suites::third_address_lasso();
    let third_rejected = !g.accepts_lasso(&third);
    let zero_accepted = g.accepts_lasso(&Lasso { prefix: vec![], cycle: vec![0] });
    let rho = g.spectral_radius();
    outcome(
        rule && third_rejected && zero_accepted && rho <= 2.01,
        format!("5R→{{3L,0R}}: {rule}; 1/3 lasso {third} rejected: {third_rejected}; (0)^∞ accepted: {zero_accepted}; ρ = {rho:.6}"),
    )
}

fn c14_constants() -> Outcome {
    let r = nfold::verify_constants();
    let wanted = ["x^3 - 6x^2 + 5x - 1", "x^3 - 17x^2 + 10x - 1", "x^3 - 2x^2 - x + 1", "x^3 - 9x^2 + 6x - 1", "x^3 - 3x^2 + 1"];
    let present = wanted.iter().filter(|p| r.checks.iter().any(|c| c.polynomial == **p)).count();
    let b1 = r.checks.iter().find(|c| c.name == "b_minus_1").map(|c| !c.pisot).unwrap_or(false);
    let failing: Vec<&str> = r.checks.iter().filter(|c| !c.holds()).map(|c| c.name.as_str()).collect();
    outcome(
        r.all_hold() && present == wanted.len() && b1,
        format!("{} checks, {present}/5 printed polynomials found, b−1 not Pisot: {b1}, failing: {failing:?}", r.checks.len()),
    )
}

fn c15_conjecture() -> Outcome {
    let t = Instant::now();
    let r = suites::conjecture(&SuiteOptions { bound: 50, ..SuiteOptions::default() });
    let el = t.elapsed();
    outcome(
        r.passed && within(el, Duration::from_secs(300)),
        format!("{} pairs, disagreements {}, max pair period {}, {el:?}", r.details["pairs"], r.details["disagreements"], r.details["max_period"]),
    )
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 15] = [
        (1, "coding reproduction", c1_coding),
        (2, "induced coding", c2_induced_coding),
        (3, "aperiodicity certificate", c3_certificate),
        (4, "periodicity at 1/2", c4_half_lattice),
        (5, "self-inducing identities", c5_self_inducing),
        (6, "return-time law", c6_return_times),
        (7, "open set condition", c7_osc),
        (8, "cut points", c8_cut_points),
        (9, "cylinder relations", c9_cylinders),
        (10, "measure-zero trend", c10_removal),
        (11, "odometer diagrams", c11_diagrams),
        (12, "equidistribution", c12_equidistribution),
        (13, "automaton", c13_automaton),
        (14, "algebraic constants", c14_constants),
        (15, "conjecture harness", c15_conjecture),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let o = run();
        let red = EXPECTED_RED.contains(&id);
        let tag = match (o.pass, red) {
            (true, false) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
            (true, true) => {
                unexpected += 1;
                "PASS (unexpected)"
            }
        };
        println!("{tag:<17} {id:>2} {name}: {}", o.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
