//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the lines always print; exits nonzero if any check fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use bernint::analysis::{
    boundary_interpolation_check, error_curve, fit_rate, hypothesis_check, omega1, omega_phi2,
    saturation_probe, voronovskaya_check, GridConfig, Interval, SaturationVerdict,
};
use bernint::corpus::{builtin, catalog, FunctionSpec};
use bernint::exact::{falling_factorial, ratio, ExactRational, TiePolicy};
use bernint::operators::{
    build_model, derivative_model, finite_difference, proximity_gap, proximity_gap_exact,
    sample_differences, BernsteinPoly, OperatorKind,
};
use bernint::{RealFunction, Result};
use num_rational::BigRational;

type Check = std::result::Result<String, String>;

fn doubling(from: usize, to: usize) -> Vec<usize> {
    std::iter::successors(Some(from), |n| Some(n * 2)).take_while(|&n| n <= to).collect()
}

fn nearest_kinds() -> Vec<OperatorKind> {
    TiePolicy::ALL.into_iter().map(OperatorKind::NearestInt).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within_time(started: Instant, limit: Duration) -> std::result::Result<(), String> {
    let elapsed = started.elapsed();
    ensure(elapsed < limit, || format!("took {:.1} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()))
}

fn ac1_proximity() -> Check {
    let started = Instant::now();
    let grid = GridConfig::default();
    let points: Vec<ExactRational> = (0..=64).map(|j| ratio(j, 64)).collect();
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for entry in catalog().into_iter().filter(|e| e.spec.integer_endpoints()) {
        let f = &entry.spec;
        for n in doubling(2, 256) {
            let mut kinds = vec![(OperatorKind::FloorInt, 1.0)];
            kinds.extend(nearest_kinds().into_iter().map(|k| (k, 0.5)));
            for (kind, c) in kinds {
                let bound = c / n as f64;
                let gap = lib(proximity_gap(f, n, kind, &grid))?.value;
                ensure(gap <= bound, || format!("{f} {kind} n={n}: {gap:e} > {bound:e}"))?;
                let exact = lib(proximity_gap_exact(f, n, kind, &points))?;
                let exact_bound = if c == 1.0 { ratio(1, n as i64) } else { ratio(1, 2 * n as i64) };
                ensure(exact <= exact_bound, || format!("{f} {kind} n={n}: exact gap {exact} above bound"))?;
                worst = worst.max(gap / bound);
                checked += 1;
            }
        }
    }
    within_time(started, Duration::from_secs(60))?;
    Ok(format!(
        "{checked} (f, n, kind) cases, max gap/bound = {worst:.4}, {:.1} s",
        started.elapsed().as_secs_f64()
    ))
}

fn ac2_trivial_class() -> Check {
    let grid = GridConfig::default();
    let mut pairs = Vec::new();
    for p in [-2, 0, 3] {
        for q in [-2, 0, 3] {
            pairs.push((p, q));
        }
    }
    pairs.extend([(1, 0), (-1, 5), (7, -3)]);
    let ns: Vec<usize> = (1..=256).collect();
    let kinds = [
        OperatorKind::Classic,
        OperatorKind::FloorInt,
        OperatorKind::NearestInt(TiePolicy::HalfUp),
        OperatorKind::NearestInt(TiePolicy::HalfDown),
    ];
    for &(p, q) in &pairs {
        let f = lib(builtin(&format!("integer_linear({p},{q})")))?;
        for &n in &ns {
            let classic = lib(build_model(&f, n, OperatorKind::Classic))?;
            for kind in &kinds[1..] {
                let m = lib(build_model(&f, n, *kind))?;
                ensure(m.coeffs() == classic.coeffs(), || format!("{f} n={n}: {kind} coefficients differ"))?;
            }
        }
        for kind in kinds {
            let curve = lib(error_curve(&f, kind, 0, &ns, &grid))?;
            ensure(curve.all_exact_zero(), || format!("{f} {kind}: nonzero error"))?;
        }
    }
    Ok(format!("{} functions, n = 1..256, all errors exactly 0", pairs.len()))
}

fn ac3_classic_rate() -> Check {
    let started = Instant::now();
    let f = lib(builtin("monomial(2)"))?;
    let curve = lib(error_curve(&f, OperatorKind::Classic, 0, &doubling(16, 512), &GridConfig::default()))?;
    let fit = lib(fit_rate(&curve.pairs()))?;
    ensure((0.98..=1.02).contains(&fit.exponent), || format!("alpha = {}", fit.exponent))?;
    ensure((0.24..=0.26).contains(&fit.constant), || format!("C = {}", fit.constant))?;
    within_time(started, Duration::from_secs(10))?;
    Ok(format!(
        "alpha = {:.6}, C = {:.6}, {:.2} s",
        fit.exponent,
        fit.constant,
        started.elapsed().as_secs_f64()
    ))
}

fn ac4_saturation() -> Check {
    let f = lib(builtin("monomial(2)"))?;
    let grid = GridConfig::default();
    let ns = doubling(64, 512);
    let lo = 0.25 - 0.5 * 1.05;
    let hi = 0.25 + 0.5 * 1.05;
    let mut range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut kinds = vec![OperatorKind::FloorInt];
    kinds.extend(nearest_kinds());
    for kind in kinds {
        let curve = lib(error_curve(&f, kind, 0, &ns, &grid))?;
        for p in &curve.points {
            let scaled = p.n as f64 * p.error;
            ensure((lo..=hi).contains(&scaled), || format!("{kind} n={}: n*error = {scaled}", p.n))?;
            range = (range.0.min(scaled), range.1.max(scaled));
        }
        let verdict = lib(saturation_probe(&f, kind, 0, &ns, &grid))?.verdict;
        ensure(verdict == SaturationVerdict::SaturatedRate, || format!("{kind}: verdict {verdict:?}"))?;
    }
    Ok(format!("n*error in [{:.4}, {:.4}], verdict saturated_rate", range.0, range.1))
}

fn ac5_voronovskaya() -> Check {
    let f = lib(builtin("monomial(3)"))?;
    let ns = doubling(16, 256);
    let r = lib(voronovskaya_check(&f, &ratio(1, 2), &ns))?;
    ensure(r.exact, || "not computed exactly".into())?;
    ensure(r.limit_exact == Some(ratio(3, 8)), || format!("limit {:?}", r.limit_exact))?;
    let mut worst = BigRational::from_integer(0.into());
    for row in &r.rows {
        let residual = row.residual_exact.clone().ok_or("missing exact residual")?;
        ensure(residual <= ratio(1, row.n as i64), || format!("n={}: residual {residual}", row.n))?;
        if residual > worst {
            worst = residual;
        }
    }
    Ok(format!("max residual = {worst} (exact)"))
}

/// Central-difference order of the float path: `(g(x+h) - g(x-h)) / 2h`
/// against `d(x)`, counting only steps where truncation dominates roundoff.
fn cd_order(g: &BernsteinPoly, d: &BernsteinPoly, x: f64) -> std::result::Result<Option<f64>, String> {
    let scale = g.float_coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs()));
    let mut errors = Vec::new();
    for j in 0..10 {
        let h = 0.02 * 0.5f64.powi(j);
        let cd = (g.value(x + h) - g.value(x - h)) / (2.0 * h);
        let err = (cd - d.value(x)).abs();
        // de Casteljau roundoff grows like (degree + 1) eps max|c|.
        let roundoff = 10.0 * (g.degree() + 1) as f64 * f64::EPSILON * scale / h;
        errors.push((err, err > roundoff));
    }
    let orders: Vec<f64> = errors
        .windows(2)
        .filter(|w| w[0].1 && w[1].1)
        .map(|w| (w[0].0 / w[1].0).log2())
        .collect();
    if orders.len() < 2 {
        let abs = errors[0].0;
        ensure(abs <= 1e-8, || format!("no truncation regime and |cd - d| = {abs:e} at x = {x}"))?;
        return Ok(None);
    }
    // The asymptotic order: the two smallest steps still above roundoff.
    Ok(Some(orders[orders.len() - 2..].iter().copied().fold(f64::INFINITY, f64::min)))
}

fn ac6_derivative_formulas() -> Check {
    let polys: Vec<FunctionSpec> = catalog()
        .into_iter()
        .map(|e| e.spec)
        .filter(|f| f.as_polynomial().is_some())
        .collect();
    let kinds = [OperatorKind::Classic, OperatorKind::FloorInt, OperatorKind::NearestInt(TiePolicy::default())];
    let mut min_order = f64::INFINITY;
    let mut exact_checks = 0;
    for f in &polys {
        for n in doubling(8, 128) {
            for kind in kinds {
                let model = lib(build_model(f, n, kind))?;
                for s in 1..=2 {
                    let d = lib(derivative_model(&model, s))?;
                    let factor = BigRational::from_integer(falling_factorial(n, s));
                    let diffs = if kind == OperatorKind::Classic {
                        lib(sample_differences(f, n, s))?
                    } else {
                        lib(finite_difference(model.coeffs(), s))?
                    };
                    let expected: Vec<ExactRational> = diffs.values.iter().map(|v| v * &factor).collect();
                    ensure(d.coeffs() == &expected[..], || format!("{f} {kind} n={n} s={s}: coefficients differ"))?;
                    exact_checks += 1;
                    let g = lib(derivative_model(&model, s - 1))?;
                    for x in [0.17, 0.42, 0.5, 0.77] {
                        if let Some(order) = cd_order(&g, &d, x).map_err(|e| format!("{f} {kind} n={n} s={s}: {e}"))? {
                            ensure(order >= 1.9, || format!("{f} {kind} n={n} s={s} x={x}: order {order:.3}"))?;
                            min_order = min_order.min(order);
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{exact_checks} exact coefficient identities, min observed order {min_order:.3}"
    ))
}

fn ac7_moduli() -> Check {
    let f = lib(builtin("monomial(2)"))?;
    let grid = GridConfig::default();
    let mut parts = Vec::new();
    for t in [0.05, 0.1, 0.2, 0.4] {
        let v = lib(omega_phi2(&f, t, &grid))?.value;
        let target = t * t / 2.0;
        ensure(v <= target && v >= target * (1.0 - 1e-3), || format!("omega_phi2(t={t}) = {v:e}, target {target:e}"))?;
        parts.push(format!("{:.3e}", v / target));
    }
    let w = lib(omega1(&f, 0.25, Interval::unit(), &grid))?.value;
    ensure(w <= 0.4375 && w >= 0.4375 * (1.0 - 1e-3), || format!("omega1 = {w}"))?;
    Ok(format!("omega_phi2/target = [{}], omega1(1/4) = {w}", parts.join(", ")))
}

fn ac8_characterization() -> Check {
    let grid = GridConfig::default();
    let kind = OperatorKind::NearestInt(TiePolicy::default());
    let mut summary = Vec::new();
    for name in ["monomial(2)", "poly_boundary_flat(2)"] {
        let f = lib(builtin(name))?;
        let ns = doubling(16, 512);
        let curve = lib(error_curve(&f, kind, 0, &ns, &grid))?;
        let mut ratios = Vec::new();
        for p in &curve.points {
            let inv = 1.0 / p.n as f64;
            let w = lib(omega_phi2(&f, (p.n as f64).sqrt().recip(), &grid))?.value;
            ratios.push((p.error + inv) / (w + inv));
        }
        let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        ensure(min >= 1.0 / 20.0 && max <= 20.0, || format!("{name}: ratio range [{min}, {max}]"))?;
        ensure(max / min < 10.0, || format!("{name}: max/min = {}", max / min))?;
        summary.push(format!("{name} [{min:.3}, {max:.3}]"));
    }
    Ok(summary.join(", "))
}

fn ac9_boundary() -> Check {
    let f = lib(builtin("monomial(2)"))?;
    let ns: Vec<usize> = (1..=64).collect();
    let r = lib(boundary_interpolation_check(&f, OperatorKind::NearestInt(TiePolicy::default()), 2, &ns))?;
    let threshold = r.threshold.ok_or("no threshold within n <= 64")?;
    for row in r.rows.iter().filter(|row| row.n >= threshold) {
        ensure(row.all_match(), || format!("n={} mismatch after threshold", row.n))?;
    }
    Ok(format!("threshold n = {threshold}, exact for i = 0, 1"))
}

fn ac10_hypotheses() -> Check {
    let sq = lib(builtin("monomial(2)"))?;
    let r = lib(hypothesis_check(&sq, 1, 1..=64))?;
    ensure(r.passed, || format!("x^2, s=1 fails: {:?}", r.failures().collect::<Vec<_>>()))?;
    ensure(r.n0 == Some(1), || format!("x^2: n0 = {:?}", r.n0))?;
    let cube = lib(builtin("monomial(3)"))?;
    let r = lib(hypothesis_check(&cube, 2, 2..=64))?;
    let witnesses: Vec<&str> = r.failures().map(|c| c.detail.as_str()).collect();
    ensure(!r.passed && witnesses == ["f''(1) = 6"], || format!("x^3, s=2 witnesses {witnesses:?}"))?;
    Ok("x^2 passes with n0 = 1; x^3 fails with f''(1) = 6".into())
}

fn ac11_planted() -> Check {
    let mut worst: f64 = 0.0;
    for alpha in [0.25, 0.5, 0.75, 1.0] {
        let pairs: Vec<(usize, f64)> = doubling(2, 2048).into_iter().map(|n| (n, 3.0 * (n as f64).powf(-alpha))).collect();
        let fit = lib(fit_rate(&pairs))?;
        let err = (fit.exponent - alpha).abs();
        ensure(err <= 1e-10, || format!("alpha {alpha}: recovered {}", fit.exponent))?;
        worst = worst.max(err);
    }
    Ok(format!("max |alpha_hat - alpha| = {worst:e}"))
}

fn ac12_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("report");
    let run = |args: &[&str], path: &Path| -> std::result::Result<Vec<u8>, String> {
        let status = Command::new(env!("CARGO_BIN_EXE_bernint"))
            .args(args)
            .arg("--out")
            .arg(path)
            .stderr(std::process::Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("{args:?} exited with {status}"))?;
        std::fs::read(path).map_err(|e| e.to_string())
    };
    let commands: &[&[&str]] = &[
        &["list-fns"],
        &["coeffs", "--fn", "holder_interior(3/2)", "--n", "9", "--kind", "floor"],
        &["eval", "--fn", "poly_boundary_flat(2)", "--x", "1/3,1/2", "--n", "5,10"],
        &["error", "--fn", "monomial(3)", "--kind", "nearest", "--s", "1", "--n-max", "128"],
        &["rate", "--fn", "monomial(2)"],
        &["modulus", "--fn", "holder_interior(1/2)"],
        &["saturation", "--fn", "monomial(2)", "--kind", "nearest", "--n-max", "256"],
        &["converse", "--fn", "holder_interior(3/2)", "--s", "1", "--n-max", "128"],
        &["verify", "--fn", "monomial(3)", "--s", "2"],
        &["voronovskaya", "--fn", "monomial(3)", "--x", "1/2,1/3"],
    ];
    for args in commands {
        for format in ["json", "csv"] {
            let mut full = args.to_vec();
            full.extend(["--format", format]);
            let a = run(&full, &path)?;
            let b = run(&full, &path)?;
            ensure(a == b, || format!("{full:?} differs between runs"))?;
        }
    }
    Ok(format!("{} commands x 2 formats byte-identical", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("AC1 integer-coefficient proximity", ac1_proximity),
        ("AC2 trivial class exactness", ac2_trivial_class),
        ("AC3 classic rate recovery", ac3_classic_rate),
        ("AC4 saturation band", ac4_saturation),
        ("AC5 Voronovskaya limit", ac5_voronovskaya),
        ("AC6 derivative formula equivalence", ac6_derivative_formulas),
        ("AC7 modulus oracles", ac7_moduli),
        ("AC8 characterization band", ac8_characterization),
        ("AC9 boundary interpolation", ac9_boundary),
        ("AC10 hypothesis checker", ac10_hypotheses),
        ("AC11 planted exponent recovery", ac11_planted),
        ("AC12 determinism", ac12_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
