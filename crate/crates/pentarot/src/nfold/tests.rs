use super::*;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn configurations() {
    assert!(NFoldSystem::new(7, 2).is_ok());
    assert!(NFoldSystem::new(9, 4).is_ok());
    assert!(NFoldSystem::new(9, 3).is_err());
    assert!(NFoldSystem::new(7, 4).is_err());
    assert!(NFoldSystem::new(11, 1).is_err());
    let s = NFoldSystem::new(7, 2).unwrap();
    assert!((rotation_trace(&s) - 2.0 * (4.0 * std::f64::consts::PI / 7.0).cos()).abs() < 1e-12);
}

#[test]
fn reduces_to_the_pentagonal_map() {
    let s = NFoldSystem::new(5, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let den = rng.gen_range(1..40i64);
        let p = s.point(rat(rng.gen_range(0..den), den), rat(rng.gen_range(0..den), den));
        let x = s.to_cyclo(&p);
        assert!(dynamics::in_l(&x));
        let q = s.step(&p);
        assert_eq!(s.to_cyclo(&q), dynamics::step_t(&x).unwrap());
        assert_eq!(s.from_cyclo(&x).unwrap(), p);
    }
    let third = s.point(rat(1, 3), rat(0, 1));
    assert_eq!(s.period(&third, 2000), None);
    let half = s.point(rat(1, 2), rat(0, 1));
    let x = s.to_cyclo(&half);
    assert_eq!(s.period(&half, 10_000), dynamics::period(&x, 10_000).unwrap());
}

#[test]
fn bijective_on_samples() {
    for (n, k) in [(5, 1), (5, 2), (7, 1), (7, 2), (7, 3), (9, 1), (9, 2), (9, 4)] {
        let s = NFoldSystem::new(n, k).unwrap();
        for p in s.grid(7) {
            let mut cur = p.clone();
            for _ in 0..20 {
                assert!(s.contains(&cur), "({n},{k}) left the lozenge");
                let next = s.step(&cur);
                assert_eq!(s.step_back(&next), cur);
                cur = next;
            }
        }
    }
}

#[test]
fn seven_fold_orbits() {
    let s = NFoldSystem::new(7, 2).unwrap();
    let origin = s.point(rat(0, 1), rat(0, 1));
    assert_eq!(s.period(&origin, 10), Some(1));
    assert!(s.step(&origin).is_origin());
    let p = s.point(rat(1, 2), rat(1, 3));
    let q = s.step(&p);
    let z = s.to_cyclo(&q);
    let expect = &Cyclo::zeta_pow(7, -2) * &(&s.to_cyclo(&p) - &Cyclo::from_int(7, s.branch(&p).try_into().unwrap()));
    assert_eq!(z, expect);
    let s9 = NFoldSystem::new(9, 2).unwrap();
    let p = s9.point(rat(1, 4), rat(1, 2));
    let m = s9.period(&p, 5000).expect("periodic sample");
    let mut cur = p.clone();
    for _ in 0..m {
        cur = s9.step(&cur);
    }
    assert_eq!(cur, p);
}

#[test]
fn scans() {
    let s = NFoldSystem::new(7, 2).unwrap();
    let r = s.scan_periodic_fraction(6, 1);
    assert_eq!(r.total, 36);
    assert_eq!(r.periodic, 0);
    let traj = s.scan_trajectory(6, &[10, 100, 1000]);
    assert!(traj.windows(2).all(|w| w[0].1 <= w[1].1));
    assert!(traj[2].1 > 0.5);
    let csv = s.scan_periodic_fraction(3, 50).to_csv();
    assert_eq!(csv.lines().count(), 10);
    assert!(csv.starts_with("a,b,period\n"));
}

#[test]
fn field_arithmetic() {
    let f = RealField::new(IntPoly::from_desc(&[1, -2, -1, 1]), 2.24698).unwrap();
    let b = f.generator();
    let inv = f.inv(&b).unwrap();
    assert_eq!(f.mul(&b, &inv), f.from_int(1));
    assert_eq!(f.char_int_poly(&b).unwrap(), IntPoly::from_desc(&[1, -2, -1, 1]));
    assert_eq!(f.floor(&b), BigInt::from(2));
    assert_eq!(f.ceil(&b), BigInt::from(3));
    assert_eq!(f.sign(&f.sub(&b, &b)), 0);
    // b³ − 2b² − b + 1 = 0 exactly
    let b3 = f.mul(&b, &f.mul(&b, &b));
    let z = f.add(&f.sub(&f.sub(&b3, &f.scale(&f.mul(&b, &b), &rat(2, 1))), &b), &f.from_int(1));
    assert!(z.is_zero());
}

#[test]
fn constants() {
    let r = verify_constants();
    for c in &r.checks {
        assert!(c.holds(), "{c:?}");
    }
    let by_name = |n: &str| r.checks.iter().find(|c| c.name == n).unwrap();
    assert!(by_name("beta").pisot && by_name("beta").unit);
    assert!(!by_name("b_minus_1").pisot);
    assert!(by_name("sqrt_beta").pisot);
    assert!(r.all_hold());
}
