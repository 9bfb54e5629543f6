use num_complex::Complex64;
use rand::prelude::*;
use szego_lab::fixtures;
use szego_lab::matrices::build_toeplitz;
use szego_lab::wiener_hopf::{
    scalar_winding_theorem, shifted_toeplitz_log_det, LaurentPoly,
};

fn fixture(name: &str, kv: &[(&str, f64)]) -> fixtures::ExampleFixture {
    let params: std::collections::BTreeMap<String, f64> =
        kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    fixtures::make_fixture(name, &params).unwrap()
}

#[test]
fn probe_example2_det_accuracy() {
    for (u, v) in [(0.3, 0.6), (0.6, 0.3), (0.2, 0.9)] {
        let f = fixture("example2", &[("u", u), ("v", v)]);
        let mut worst = 0.0f64;
        for n in 2..=24 {
            let det = build_toeplitz(&f.symbol, n).unwrap().log_det();
            let want = f.det_oracle.eval(n);
            let rel = ((det.log_abs - want.log_abs).exp() - 1.0).abs()
                + (det.phase - want.phase).norm();
            worst = worst.max(rel);
        }
        println!("example2 ({u},{v}): worst rel det err over n=2..24: {worst:.3e}");
    }
}

#[test]
fn probe_winding_theorem_margins() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    let mut worst_case = String::new();
    for sym in 0..50 {
        // winding-zero banded symbol: degree <= 3 polynomial part each side
        let n_in = rng.gen_range(0..=2usize);
        let n_out = rng.gen_range(1..=2usize);
        let mut p = LaurentPoly::from_terms(&[(0, Complex64::new(rng.gen_range(0.5..2.0), 0.0))]);
        for _ in 0..n_in {
            let r = Complex64::from_polar(
                rng.gen_range(0.05..0.15),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            p = p.mul(&LaurentPoly::from_terms(&[
                (0, Complex64::new(1.0, 0.0)),
                (-1, -r),
            ]));
        }
        for _ in 0..n_out {
            let r = Complex64::from_polar(
                rng.gen_range(7.0..15.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            p = p.mul(&LaurentPoly::from_terms(&[
                (0, Complex64::new(1.0, 0.0)),
                (1, -Complex64::new(1.0, 0.0) / r),
            ]));
        }
        for n in 3..=12 {
            for m in 1..=3usize {
                let pred = scalar_winding_theorem(&p, m, n).unwrap();
                let brute = shifted_toeplitz_log_det(&p, m as i64, n);
                let rel = (pred.value() - brute.value()).norm() / brute.value().norm();
                if rel > worst {
                    worst = rel;
                    worst_case = format!("sym={sym} n={n} m={m}");
                }
            }
        }
    }
    println!("winding theorem worst rel err: {worst:.3e} at {worst_case}");
}

#[test]
fn probe_prefactor_slope() {
    let f = fixture("example2", &[("u", 0.3), ("v", 0.6)]);
    let r: Vec<usize> = (8..=16).collect();
    let ma = szego_lab::asymptotics::modified_asymptotics_unchecked(&f.symbol, &r).unwrap();
    // slope of log|prefactor| vs n
    let pts: Vec<(f64, f64)> = ma
        .prefactors
        .iter()
        .map(|(n, p)| (*n as f64, p.log_abs))
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let want = 2.0 * (0.3f64 / 0.6).ln();
    println!(
        "prefactor slope = {slope:.6} want {want:.6} rel dev {:.3e}",
        (slope - want).abs() / want.abs()
    );
    println!("t_n tail deviation = {:.3e}", ma.max_tail_deviation);
    println!("E_tilde = {:?}", ma.e_tilde);
}

#[test]
fn probe_widom_20_values() {
    let mut worst_in = 0.0f64;
    let mut worst_out = 0.0f64;
    for i in 0..10 {
        let u = 0.08 + 0.085 * i as f64; // 0.08 .. 0.845
        let f = fixture("example1", &[("u", u)]);
        let e = szego_lab::asymptotics::widom_finite_e(&f.symbol, 1).unwrap();
        let cl = szego_lab::asymptotics::classify_e(&f.symbol, &(4..=24).collect::<Vec<_>>())
            .unwrap();
        worst_in = worst_in.max((e - cl.e_estimate).norm());
    }
    for i in 0..10 {
        let u = 1.1 + 0.3 * i as f64;
        let f = fixture("example1", &[("u", u)]);
        let e = szego_lab::asymptotics::widom_finite_e(&f.symbol, 1).unwrap();
        worst_out = worst_out.max(e.norm());
    }
    println!("widom inside worst |E - classify|: {worst_in:.3e}");
    println!("widom outside worst |E|: {worst_out:.3e}");
}

#[test]
fn probe_zero_mode_rates() {
    for (name, kv, want_pairs) in [
        ("example1", vec![("u", 0.5)], 0usize),
        ("example1", vec![("u", 2.0)], 1),
        ("example1b", vec![("u", 2.0)], 2),
        ("example2", vec![("u", 0.3), ("v", 0.6)], 1),
        ("example3", vec![("zeta", 2.0)], 1),
    ] {
        let f = fixture(name, &kv);
        let r: Vec<usize> = (6..=16).collect();
        let rep = szego_lab::zero_modes::zero_mode_scan(&f.symbol, &r).unwrap();
        println!(
            "{name} {kv:?}: pairs={} (want {want_pairs}) rate={:?} coeff={:?} root={:?}",
            rep.pair_count, rep.fitted_rate, rep.coeff_decay_rate, rep.root_gap
        );
    }
}
