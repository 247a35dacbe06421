//! End-to-end acceptance run: one line per criterion, non-zero exit if any
//! fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use huygens_cli::config::{parse_config, SweepConfig};
use huygens_cli::network::run_network;
use huygens_cli::sweep::run_sweep;
use huygens_cli::verify::run_verify;
use huygens_core::cosmo::CosmologyParams;
use huygens_core::oracle::{random_geometry, s2_oracle_mode_sum};
use huygens_core::signalling::{
    channel_capacity, optimal_detector_states, s_theta, signal_from_windows, CausalCase,
    ConformalWindow, DetectorSpec, QubitState, Switching,
};
use huygens_core::specfun::{bessel_j, bessel_jy, bessel_y, dilog};

const CASE5_REL: f64 = 1e-12;
const ORACLE_REL: f64 = 1e-6;
const MODE_SUM_REL: f64 = 1e-3;
const RADIATION_RATIO: f64 = 1e-6;
const FLAT_REL: f64 = 1e-12;
const MODE_SUM_TOL: f64 = 1e-8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn win(a: f64, b: f64) -> ConformalWindow {
    ConformalWindow::new(a, b).unwrap()
}

fn optimal_pair(wa: ConformalWindow, wb: ConformalWindow) -> (DetectorSpec, DetectorSpec) {
    let (sa, sb) = optimal_detector_states();
    (
        DetectorSpec::new(1.0, Switching::Conformal(wa), sa).unwrap(),
        DetectorSpec::new(1.0, Switching::Conformal(wb), sb).unwrap(),
    )
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn case_five_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (wa, wb, r) = random_geometry(CausalCase::Five, &mut rng).map_err(|e| e.to_string())?;
        let exact = (wa.eta_f() / wa.eta_i()).ln() * (wb.eta_f() / wb.eta_i()).ln();
        let gap = wb.eta_i() - wa.eta_f();
        for r in [r, 0.5 * r, gap] {
            let v = s_theta(&wa, &wb, r);
            let rel = (v - exact).abs() / exact;
            worst = worst.max(rel);
            ensure(rel <= CASE5_REL, || {
                format!("A={wa:?} B={wb:?} R={r}: {v} vs {exact}")
            })?;
        }
    }
    Ok(format!(
        "100 geometries x 3 separations, worst relative error {worst:.1e}"
    ))
}

fn causality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let (wa, wb, r) = random_geometry(CausalCase::One, &mut rng).map_err(|e| e.to_string())?;
        let (a, b) = optimal_pair(wa, wb);
        let out = signal_from_windows(&wa, &wb, r, &a, &b).map_err(|e| e.to_string())?;
        ensure(out.s2 == 0.0 && out.capacity == 0.0, || {
            format!("A={wa:?} B={wb:?} R={r}: {out:?}")
        })?;
    }
    Ok("100 geometries, S2 identically 0".into())
}

fn oracle_equivalence() -> Outcome {
    let report = run_verify(42, 3, ORACLE_REL).map_err(|e| e.to_string())?;
    let failed: Vec<_> = report.entries.iter().filter(|e| !e.pass).collect();
    ensure(report.entries.len() == 18 && failed.is_empty(), || {
        format!("failures: {failed:?}")
    })?;
    let signs = report
        .entries
        .iter()
        .all(|e| e.closed_form == 0.0 || e.closed_form.signum() == e.oracle.signum());
    ensure(signs, || {
        "sign mismatch between oracle and closed form".into()
    })?;
    Ok(format!(
        "18/18 geometries, max deviation {:.1e}",
        report.max_deviation()
    ))
}

fn mode_sum_geometries() -> [(ConformalWindow, ConformalWindow, f64); 2] {
    [
        (win(1.0, 2.0), win(10.0, 11.0), 3.0),
        (win(1.0, 3.0), win(2.5, 3.5), 1.0),
    ]
}

fn mode_sum_validation() -> Outcome {
    let matter = CosmologyParams::matter(1.0).unwrap();
    let mut notes = Vec::new();
    for (wa, wb, r) in mode_sum_geometries() {
        let (a, b) = optimal_pair(wa, wb);
        let closed = signal_from_windows(&wa, &wb, r, &a, &b).map_err(|e| e.to_string())?;
        let rep =
            s2_oracle_mode_sum(&a, &b, r, &matter, MODE_SUM_TOL).map_err(|e| e.to_string())?;
        let rel = (rep.s2_numeric - closed.s2).abs() / closed.s2.abs();
        ensure(rel < MODE_SUM_REL, || {
            format!(
                "case {}: mode sum {} vs closed {}",
                closed.case_label, rep.s2_numeric, closed.s2
            )
        })?;
        notes.push(format!("case {} rel {rel:.1e}", closed.case_label));
    }
    Ok(notes.join(", "))
}

fn radiation_non_violation() -> Outcome {
    let (wa, wb, r) = mode_sum_geometries()[0];
    let (a, b) = optimal_pair(wa, wb);
    let rad = CosmologyParams::from_alpha(0.5, 1.0).unwrap();
    let mat = CosmologyParams::matter(1.0).unwrap();
    let x = s2_oracle_mode_sum(&a, &b, r, &rad, MODE_SUM_TOL).map_err(|e| e.to_string())?;
    let y = s2_oracle_mode_sum(&a, &b, r, &mat, MODE_SUM_TOL).map_err(|e| e.to_string())?;
    let ratio = x.s2_numeric.abs() / y.s2_numeric.abs();
    ensure(ratio < RADIATION_RATIO, || {
        format!("|S2(1/2)|/|S2(3/2)| = {ratio:e}")
    })?;
    Ok(format!("|S2(alpha=1/2)| / |S2(alpha=3/2)| = {ratio:.1e}"))
}

/// Case labels of consecutive rows, with runs collapsed.
fn regions(labels: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::new();
    for &l in labels {
        if out.last() != Some(&l) {
            out.push(l);
        }
    }
    out
}

fn separation_sweep_structure() -> Outcome {
    let cfg = parse_config("vary = R\ngrid_min = 0.01\ngrid_max = 3\ngrid_points = 600")
        .map_err(|e| e.to_string())?;
    let rows = run_sweep(&cfg).map_err(|e| e.to_string())?;
    let results: Vec<_> = rows
        .iter()
        .map(|r| r.result.clone())
        .collect::<Result<_, _>>()?;
    let labels: Vec<u8> = results.iter().map(|b| b.case_label.label()).collect();
    let seen = regions(&labels);
    let order = [5u8, 4, 3, 2, 1];
    let mut pos = 0;
    for s in &seen {
        match order[pos..].iter().position(|o| o == s) {
            Some(p) => pos += p + 1,
            None => {
                return Err(format!(
                    "regions {seen:?} are not an ordered subset of 5,4,3,2,1"
                ))
            }
        }
    }
    let five: Vec<_> = results
        .iter()
        .filter(|b| b.case_label == CausalCase::Five)
        .collect();
    ensure(!five.is_empty(), || "no case-5 region".into())?;
    let c0 = five[0].capacity;
    ensure(
        five.iter()
            .all(|b| (b.capacity - c0).abs() <= FLAT_REL * c0),
        || "capacity not flat in region 5".into(),
    )?;
    ensure(five.iter().all(|b| b.capacity_delta_only == 0.0), || {
        "C_delta nonzero in region 5".into()
    })?;
    ensure(
        results
            .iter()
            .filter(|b| b.case_label == CausalCase::One)
            .all(|b| b.capacity == 0.0),
        || "capacity nonzero in region 1".into(),
    )?;
    Ok(format!(
        "regions {seen:?}, region-5 capacity {c0:.6e} over {} points",
        five.len()
    ))
}

fn delay_sweep_structure() -> Outcome {
    let cfg = parse_config("vary = T_iB\nR = 1/10\ngrid_min = 2\ngrid_max = 50\ngrid_points = 200")
        .map_err(|e| e.to_string())?;
    let rows = run_sweep(&cfg).map_err(|e| e.to_string())?;
    let five: Vec<_> = rows
        .iter()
        .filter_map(|r| {
            r.result
                .as_ref()
                .ok()
                .filter(|b| b.case_label == CausalCase::Five)
        })
        .collect();
    ensure(five.len() == rows.len(), || {
        format!("{} of {} points in region 5", five.len(), rows.len())
    })?;
    ensure(
        five.windows(2).all(|w| w[1].capacity < w[0].capacity),
        || "capacity not strictly decreasing".into(),
    )?;
    Ok(format!(
        "capacity falls from {:.4e} to {:.4e} over {} points",
        five[0].capacity,
        five[five.len() - 1].capacity,
        five.len()
    ))
}

fn special_functions() -> Outcome {
    let grid = |lo: f64, hi: f64, n: usize| {
        (0..n).map(move |i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
    };
    for nu in [0.0, 0.5, 1.5, 2.3, 5.0] {
        for x in grid(0.1, 100.0, 60) {
            let v = bessel_jy(nu, x).map_err(|e| e.to_string())?;
            let jp = 0.5 * (bessel_j(nu - 1.0, x).unwrap() - bessel_j(nu + 1.0, x).unwrap());
            let yp = 0.5 * (bessel_y(nu - 1.0, x).unwrap() - bessel_y(nu + 1.0, x).unwrap());
            let w = v.j * yp - jp * v.y;
            let exact = 2.0 / (PI * x);
            ensure(((w - exact) / exact).abs() < 1e-10, || {
                format!("Wronskian nu={nu} x={x}")
            })?;
        }
    }
    for x in grid(0.05, 500.0, 100) {
        let s = (2.0 / (PI * x)).sqrt();
        let (sn, cs) = x.sin_cos();
        for (nu, j, y) in [
            (0.5, s * sn, -s * cs),
            (1.5, s * (sn / x - cs), -s * (cs / x + sn)),
        ] {
            let v = bessel_jy(nu, x).unwrap();
            let scale = j.hypot(y);
            ensure(
                (v.j - j).abs() < 1e-12 * scale && (v.y - y).abs() < 1e-12 * scale,
                || format!("half-integer closed form nu={nu} x={x}"),
            )?;
        }
    }
    for i in 1..200 {
        let x = f64::from(i) / 200.0;
        let lhs = dilog(x).unwrap() + dilog(1.0 - x).unwrap();
        let rhs = PI * PI / 6.0 - x.ln() * (1.0 - x).ln();
        ensure((lhs - rhs).abs() < 1e-12, || {
            format!("dilog reflection x={x}")
        })?;
    }
    ensure(dilog(1.0).unwrap() == PI * PI / 6.0, || "Li2(1)".into())?;
    Ok("Wronskian, half-integer forms, reflection, Li2(1)".into())
}

fn state_optimality() -> Outcome {
    let (wa, wb, r) = (win(1.0, 2.0), win(10.0, 11.0), 3.0);
    let capacity = |sa: QubitState, sb: QubitState| -> f64 {
        let a = DetectorSpec::new(1.0, Switching::Conformal(wa), sa).unwrap();
        let b = DetectorSpec::new(1.0, Switching::Conformal(wb), sb).unwrap();
        signal_from_windows(&wa, &wb, r, &a, &b).map_or(0.0, |o| o.capacity)
    };
    let (oa, ob) = optimal_detector_states();
    let best = capacity(oa, ob);
    let n = 20;
    let modulus = |i: usize| (i as f64 + 0.5) / n as f64;
    let phase = |j: usize| 2.0 * PI * j as f64 / n as f64;
    let mut grid_max = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let sa = QubitState::from_polar(modulus(i), phase(j)).unwrap();
            for k in 0..n {
                for l in 0..n {
                    let sb = QubitState::from_polar(modulus(k), phase(l)).unwrap();
                    grid_max = grid_max.max(capacity(sa, sb));
                }
            }
        }
    }
    ensure(best >= grid_max, || {
        format!("grid beats optimum: {grid_max} > {best}")
    })?;
    let off = QubitState::from_polar(FRAC_1_SQRT_2, 0.0).unwrap();
    let a = DetectorSpec::new(1.0, Switching::Conformal(wa), oa).unwrap();
    let b = DetectorSpec::new(1.0, Switching::Conformal(wb), off).unwrap();
    let silent =
        channel_capacity(signal_from_windows(&wa, &wb, r, &a, &b).unwrap().s2, &a, &b).unwrap();
    ensure(silent < 1e-30 * best, || {
        format!("in-phase receiver still signals: {silent}")
    })?;
    Ok(format!(
        "optimum {best:.6e} >= grid max {grid_max:.6e} (20^4 points)"
    ))
}

fn network_compensation() -> Outcome {
    let cfg: SweepConfig =
        parse_config("receiver_policy = fixed-conformal-ratio\nslices = 10, 20, 40, 80, 160")
            .map_err(|e| e.to_string())?;
    let slices = run_network(&cfg).map_err(|e| e.to_string())?;
    ensure(slices.len() == 5, || "expected 5 slices".into())?;
    let c0 = slices[0].per_receiver_capacity;
    ensure(c0 > 0.0, || "no per-receiver signal".into())?;
    for w in slices.windows(2) {
        ensure(w[1].total_bits > w[0].total_bits, || {
            format!("total not increasing: {w:?}")
        })?;
        ensure(
            (w[1].per_receiver_capacity - c0).abs() <= FLAT_REL * c0,
            || format!("per-receiver drift: {w:?}"),
        )?;
    }
    let counts: Vec<_> = slices.iter().map(|s| s.receiver_count).collect();
    Ok(format!("receiver counts {counts:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "case-5 exactness",
            case_five_exactness,
            Duration::from_secs(1),
        ),
        ("causality", causality, Duration::from_secs(1)),
        (
            "oracle equivalence",
            oracle_equivalence,
            Duration::from_secs(300),
        ),
        (
            "mode-sum validation",
            mode_sum_validation,
            Duration::from_secs(1800),
        ),
        (
            "radiation non-violation",
            radiation_non_violation,
            Duration::from_secs(1800),
        ),
        (
            "separation sweep structure",
            separation_sweep_structure,
            Duration::from_secs(10),
        ),
        (
            "receiver-delay sweep structure",
            delay_sweep_structure,
            Duration::from_secs(10),
        ),
        (
            "special functions",
            special_functions,
            Duration::from_secs(5),
        ),
        (
            "state optimality",
            state_optimality,
            Duration::from_secs(60),
        ),
        (
            "network compensation",
            network_compensation,
            Duration::from_secs(60),
        ),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > *budget => {
                Err(format!("{msg}; took {elapsed:.2?}, budget {budget:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!(
                "criterion {:>2} [{name}]: PASS ({msg}; {elapsed:.2?})",
                i + 1
            ),
            Err(msg) => {
                failures += 1;
                println!(
                    "criterion {:>2} [{name}]: FAIL ({msg}; {elapsed:.2?})",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
