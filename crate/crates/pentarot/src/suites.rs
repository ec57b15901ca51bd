//! Verification suites shared by the command line and the acceptance run.
//! Each suite returns a pass flag with a JSON body of counts and evidence.

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclo::{Cyclo, QuadReal};
use crate::dynamics::{self, CertificateKind};
use crate::fractal::{self, CylinderSet, IfsSystem};
use crate::nfold;
use crate::odometer;
use crate::regions::{Named, PointSet};
use crate::symbolic::{self, Lasso};

type Rat = BigRational;

pub const SUITES: [&str; 7] = ["self-inducing", "osc", "cylinders", "diagrams", "constants", "conjecture", "automaton"];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub details: Value,
}

impl SuiteReport {
    fn new(suite: &str, passed: bool, details: Value) -> Self {
        SuiteReport { suite: suite.to_string(), passed, details }
    }

    pub fn to_json(&self) -> Value {
        json!({ "schema": 1, "suite": self.suite, "passed": self.passed, "details": self.details })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub samples: usize,
    pub seed: u64,
    pub bound: i64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { samples: 10_000, seed: 1, bound: 50 }
    }
}

/// Points of `L`: boundary and interior samples of every named region,
/// then lattice points `(a/q, b/q)` in lozenge coordinates for growing `q`
/// until `count` points are collected.
pub fn standard_samples(count: usize) -> Vec<Cyclo> {
    let mut out: Vec<Cyclo> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |x: Cyclo, out: &mut Vec<Cyclo>| {
        if dynamics::in_l(&x) && seen.insert(x.clone()) {
            out.push(x);
        }
    };
    for n in Named::ALL {
        for part in n.region().parts() {
            for x in part.sample_points(6) {
                push(x, &mut out);
            }
        }
    }
    let mut q = 2i64;
    while out.len() < count {
        for a in 0..q {
            for b in 0..q {
                let c = |v: i64| QuadReal::from_rational(Rat::new(v.into(), q.into()));
                push(Cyclo::from_lozenge_coords(&c(a), &c(b)), &mut out);
            }
        }
        q += 1;
    }
    out.truncate(count);
    out
}

/// Both self-inducing identities. The literal forms are reported as they
/// stand; the suite passes when every literal failure lies in `P₀` and the
/// corrected form (`T³` on `P₀`) holds everywhere.
pub fn self_inducing(opts: &SuiteOptions) -> SuiteReport {
    let samples = standard_samples(opts.samples);
    let p0 = Named::P0.region();
    let (mut lit_fail, mut outside_p0, mut corrected_fail) = (0usize, 0usize, 0usize);
    let (mut tz, mut lit2_fail, mut outside2) = (0usize, 0usize, 0usize);
    for x in &samples {
        let Ok((lhs, rhs)) = dynamics::self_identity(x) else {
            corrected_fail += 1;
            continue;
        };
        if lhs != rhs {
            lit_fail += 1;
            if !p0.contains(x) {
                outside_p0 += 1;
            }
        }
        if dynamics::corrected_self_rhs(x).map(|c| c != lhs).unwrap_or(true) {
            corrected_fail += 1;
        }
        if dynamics::in_tzed(x) {
            tz += 1;
            let ok = match (dynamics::induced_self_lhs(x), dynamics::step_ttilde(x)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            };
            if !ok {
                lit2_fail += 1;
                if !p0.contains(x) {
                    outside2 += 1;
                }
            }
        }
    }
    let passed = outside_p0 == 0 && corrected_fail == 0 && outside2 == 0;
    SuiteReport::new(
        "self-inducing",
        passed,
        json!({
            "samples": samples.len(),
            "literal_failures": lit_fail,
            "literal_failures_outside_P0": outside_p0,
            "corrected_failures": corrected_fail,
            "induced_samples": tz,
            "induced_literal_failures": lit2_fail,
            "induced_failures_outside_P0": outside2,
        }),
    )
}

pub fn osc() -> SuiteReport {
    let yp = IfsSystem::yprime();
    let reports = [fractal::osc_check(&yp, 1), fractal::osc_check(&yp, 2), fractal::osc_check_d0(1), fractal::osc_check_d0(2)];
    let passed = reports.iter().all(|r| r.is_ok());
    SuiteReport::new(
        "osc",
        passed,
        json!({
            "yprime": [reports[0].clone(), reports[1].clone()],
            "d0": [reports[2].clone(), reports[3].clone()],
        }),
    )
}

pub fn cylinders(opts: &SuiteOptions) -> SuiteReport {
    let relations = fractal::cylinder_relations();
    let (rel_ok, rel_json) = match &relations {
        Ok(r) => (r.iter().all(|c| c.holds), json!(r)),
        Err(e) => (false, json!(e.to_string())),
    };
    let x = dynamics::step_t(&third()).expect("1/3 is in L");
    let n = opts.samples.max(1) as u64;
    let freq = fractal::cylinder_freq(&x, n, 2);
    let (freq_ok, freq_json) = match &freq {
        Ok(t) => (t.max_deviation() <= 0.01, json!({ "samples": n, "max_deviation": t.max_deviation(), "counts": t.counts })),
        Err(e) => (false, json!(e.to_string())),
    };
    let measure_ok = CylinderSet::new(&[0, 5]).map(|c| c.measure() == Rat::new(1.into(), 16.into())).unwrap_or(false);
    SuiteReport::new(
        "cylinders",
        rel_ok && freq_ok && measure_ok,
        json!({ "relations": rel_json, "frequencies": freq_json, "measure": measure_ok }),
    )
}

pub fn diagrams(opts: &SuiteOptions) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = opts.samples.clamp(1, 1000);
    let xs = odometer::sample_dyadics_avoiding(&mut rng, n, odometer::is_cut_point_address);
    let add = odometer::additive_diagram(&xs);
    let mult = odometer::multiplicative_diagram(&xs, true);
    let literal = odometer::multiplicative_diagram(&xs, false);
    let passed = matches!((&add, &mult), (Ok(a), Ok(m)) if a.is_ok() && m.is_ok());
    let show = |r: &Result<odometer::DiagramReport, odometer::OdometerError>| match r {
        Ok(r) => json!(r),
        Err(e) => json!(e.to_string()),
    };
    SuiteReport::new(
        "diagrams",
        passed,
        json!({
            "samples": n,
            "additive": show(&add),
            "multiplicative": show(&mult),
            "multiplicative_literal_rho": show(&literal),
        }),
    )
}

pub fn constants() -> SuiteReport {
    let r = nfold::verify_constants();
    SuiteReport::new("constants", r.all_hold(), json!(r.checks))
}

/// Every `(a₀, a₁)` with `|a₀|, |a₁| ≤ bound`.
pub fn conjecture(opts: &SuiteOptions) -> SuiteReport {
    use rayon::prelude::*;
    let b = opts.bound;
    let pairs: Vec<(i64, i64)> = (-b..=b).flat_map(|a| (-b..=b).map(move |c| (a, c))).collect();
    let results: Vec<_> = pairs.par_iter().map(|&(a0, a1)| dynamics::recurrence_check(a0, a1, dynamics::DEFAULT_PERIOD_CAP)).collect();
    let mut bad = Vec::new();
    let mut max_period = 0u64;
    for (r, &(a0, a1)) in results.iter().zip(&pairs) {
        match r {
            Ok(rep) if rep.agree => max_period = max_period.max(rep.pair_period.unwrap_or(0)),
            _ => bad.push(json!([a0, a1])),
        }
    }
    SuiteReport::new(
        "conjecture",
        bad.is_empty(),
        json!({ "bound": b, "pairs": pairs.len(), "disagreements": bad, "max_period": max_period }),
    )
}

/// The address lasso of `1/3`, from its aperiodicity certificate.
pub fn third_address_lasso() -> Lasso {
    let c = dynamics::classify(&third()).expect("1/3 is in L");
    let k = c.preperiod.unwrap_or(0);
    let d: Vec<u8> = c.digits.iter().map(|&m| m as u8).collect();
    Lasso { prefix: d[..k].to_vec(), cycle: d[k..].to_vec() }
}

pub fn automaton() -> SuiteReport {
    let g = match symbolic::build_edge_automaton() {
        Ok(g) => g,
        Err(e) => return SuiteReport::new("automaton", false, json!(e.to_string())),
    };
    let rule = g.has_edge("5R", "3L") && g.has_edge("5R", "0R");
    let third = third_address_lasso();
    let third_rejected = !g.accepts_lasso(&third);
    let zero_accepted = g.accepts_lasso(&Lasso { prefix: vec![], cycle: vec![0] });
    let rho = g.spectral_radius();
    SuiteReport::new(
        "automaton",
        rule && third_rejected && zero_accepted && rho <= 2.01,
        json!({
            "graph": g.to_json(),
            "rule_5R": rule,
            "third_address": third.to_string(),
            "third_rejected": third_rejected,
            "zero_accepted": zero_accepted,
            "spectral_radius": rho,
        }),
    )
}

pub fn run(name: &str, opts: &SuiteOptions) -> Option<SuiteReport> {
    Some(match name {
        "self-inducing" => self_inducing(opts),
        "osc" => osc(),
        "cylinders" => cylinders(opts),
        "diagrams" => diagrams(opts),
        "constants" => constants(),
        "conjecture" => conjecture(opts),
        "automaton" => automaton(),
        _ => return None,
    })
}

fn third() -> Cyclo {
    Cyclo::from_rational(5, Rat::new(1.into(), 3.into()))
}

/// Whether `x` is periodic, by certificate.
pub fn is_periodic(x: &Cyclo) -> bool {
    dynamics::classify(x).map(|c| c.kind == CertificateKind::Periodic).unwrap_or(false)
}
