//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line
//! each, and exits nonzero if any failed.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::Xoshiro256PlusPlus;

use panelboost::functional::{argmin_rho, lambda_err, psi, transform};
use panelboost::io::{self, GenSpec, ModelFile, Provenance};
use panelboost::{
    evaluate, fit, fit_on_split, predict, split, sweep, BoostConfig, Error, Family, Series,
    SplitSpec, SweepGrid, TimeGrid, TransformKind,
};

type Rand = Xoshiro256PlusPlus;

fn normal_vec(rng: &mut Rand, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

fn sum_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn family_of(cols: Vec<Vec<f64>>) -> Family {
    let n = cols[0].len();
    let members = cols
        .into_iter()
        .enumerate()
        .map(|(i, c)| Series::new(format!("s{}", i + 1), c).unwrap())
        .collect();
    Family::new(TimeGrid::new(0.0, 1.0, n).unwrap(), members).unwrap()
}

/// Centers each column over `range`, then Gram-Schmidt orthonormalizes over
/// `range`, applying the same linear maps to the full-length columns.
fn orthonormalize(cols: &mut [Vec<f64>], range: std::ops::Range<usize>) {
    for i in 0..cols.len() {
        let m = cols[i][range.clone()].iter().sum::<f64>() / range.len() as f64;
        cols[i].iter_mut().for_each(|v| *v -= m);
        for j in 0..i {
            let (head, tail) = cols.split_at_mut(i);
            let qj = &head[j];
            let ci = &mut tail[0];
            let proj: f64 = range.clone().map(|k| qj[k] * ci[k]).sum();
            for (c, q) in ci.iter_mut().zip(qj) {
                *c -= proj * q;
            }
        }
        let norm = sum_sq(&cols[i][range.clone()]).sqrt();
        cols[i].iter_mut().for_each(|v| *v /= norm);
    }
}

// ---------------------------------------------------------------------------
// 1. Closed-form least-squares weight against a numeric 1-D minimizer.
// ---------------------------------------------------------------------------

/// Squared loss, evaluated independently of the library.
fn loss(rho: f64, h: &[f64], y: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..h.len() {
        let e = y[i] - rho * h[i];
        acc += e * e;
    }
    acc
}

/// Golden-section search over a Cauchy-Schwarz bracket, polished by one
/// parabolic step through three wide-spaced samples. The loss is an exact
/// quadratic in rho, so the parabola recovers its vertex up to rounding.
fn numeric_argmin(h: &[f64], y: &[f64]) -> (f64, f64) {
    let scale = (sum_sq(y) / sum_sq(h)).sqrt();
    let bound = scale * 1.5 + f64::MIN_POSITIVE;
    let (mut a, mut b) = (-bound, bound);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (loss(c, h, y), loss(d, h, y));
    for _ in 0..120 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = loss(c, h, y);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = loss(d, h, y);
        }
    }
    let x0 = 0.5 * (a + b);
    let s = scale;
    let (l, m, r) = (loss(x0 - s, h, y), loss(x0, h, y), loss(x0 + s, h, y));
    let curvature = l - 2.0 * m + r;
    (x0 - 0.5 * s * (r - l) / curvature, scale)
}

fn ac1() -> String {
    let started = Instant::now();
    let mut rng = Rand::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.random_range(2..=200);
        let h = normal_vec(&mut rng, n);
        let mut y = normal_vec(&mut rng, n);
        // Mix in some signal so the minimizer is not always near zero.
        let c: f64 = rng.random_range(-5.0..5.0);
        y.iter_mut().zip(&h).for_each(|(yi, hi)| *yi += c * hi);

        let rho = argmin_rho(&h, &y).unwrap();
        let (oracle, scale) = numeric_argmin(&h, &y);
        let rel = (rho - oracle).abs() / rho.abs().max(scale);
        worst = worst.max(rel);
        assert!(rel <= 1e-9, "argmin {rho} vs oracle {oracle} (rel {rel:e})");

        let at_min = lambda_err(rho, &h, &y).unwrap();
        for _ in 0..1000 {
            let r = rho + rng.random_range(-10.0..10.0) * scale;
            assert!(at_min <= lambda_err(r, &h, &y).unwrap());
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    format!("worst relative gap {worst:.2e}, {elapsed:.2?}")
}

// ---------------------------------------------------------------------------
// 2. Transform endpoint values and shape.
// ---------------------------------------------------------------------------

fn ac2() -> String {
    use TransformKind::*;
    assert_eq!(transform(Reciprocal, 1.0).unwrap(), 0.0);
    assert_eq!(transform(Witch, 1.0).unwrap(), 0.0);
    assert!((transform(Reciprocal, -1.0).unwrap() - 2.0 / 3.0).abs() <= 1e-15);
    assert!((transform(Witch, 0.0).unwrap() - 0.5).abs() <= 1e-15);

    let n = 10_000;
    let xs: Vec<f64> = (0..n).map(|k| -1.0 + 2.0 * k as f64 / (n - 1) as f64).collect();
    let rec: Vec<f64> = xs.iter().map(|&x| transform(Reciprocal, x).unwrap()).collect();
    assert!(rec.windows(2).all(|w| w[1] < w[0]), "reciprocal not strictly decreasing");
    for &x in &xs {
        let a = transform(Witch, x).unwrap();
        let b = transform(Witch, -x).unwrap();
        assert_eq!(a, b, "witch not even at {x}");
    }
    let pos: Vec<f64> = xs
        .iter()
        .filter(|&&x| x >= 0.0)
        .map(|&x| transform(Witch, x).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[1] < w[0]), "witch not decreasing on [0, 1]");
    format!("{n} samples")
}

// ---------------------------------------------------------------------------
// 3. psi(f, f) = 0.
// ---------------------------------------------------------------------------

fn ac3() -> String {
    let mut rng = Rand::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(2..=300);
        let scale: f64 = 10f64.powf(rng.random_range(-3.0..4.0));
        let f: Vec<f64> = normal_vec(&mut rng, n).iter().map(|v| v * scale + 5.0).collect();
        for kind in TransformKind::ALL {
            let v = psi(kind, &f, &f).unwrap();
            worst = worst.max(v.abs());
            assert!(v.abs() <= 1e-12, "psi(f, f) = {v}");
        }
    }
    format!("max |psi(f,f)| = {worst:e}")
}

// ---------------------------------------------------------------------------
// 4. Exact recovery.
// ---------------------------------------------------------------------------

fn ac4() -> String {
    let mut rng = Rand::seed_from_u64(4);
    let n = 80;
    let mut cols: Vec<Vec<f64>> = (0..3).map(|_| normal_vec(&mut rng, n)).collect();
    orthonormalize(&mut cols, 0..n);
    // Unequal norms keep the recovered weights informative.
    cols[0].iter_mut().for_each(|v| *v *= 1.7);
    cols[1].iter_mut().for_each(|v| *v *= 0.6);
    let target: Vec<f64> = (0..n).map(|i| 2.0 * cols[0][i] + 3.0 * cols[1][i]).collect();
    let family = family_of(cols);
    let target = Series::new("y", target).unwrap();

    let cfg = BoostConfig {
        panel_size: 2,
        lbound: -1.0,
        alpha: 1.0,
        ..BoostConfig::default()
    };
    let (model, trace) = fit(&family, &target, &cfg).unwrap();
    let mut picked: Vec<(&str, f64)> = model
        .terms()
        .iter()
        .map(|t| (t.member_id.as_str(), t.weight))
        .collect();
    picked.sort_by(|a, b| a.0.cmp(b.0));
    assert_eq!(picked.len(), 2);
    assert_eq!((picked[0].0, picked[1].0), ("s1", "s2"));
    assert!((picked[0].1 - 2.0).abs() <= 1e-9, "w1 = {}", picked[0].1);
    assert!((picked[1].1 - 3.0).abs() <= 1e-9, "w2 = {}", picked[1].1);
    let rmse = (trace.records.last().unwrap().squared_error_after / n as f64).sqrt();
    let norm = sum_sq(target.values()).sqrt();
    assert!(rmse <= 1e-9 * norm, "rmse {rmse}");

    // Target itself inside the family.
    let mut members = family.members().to_vec();
    members.insert(1, target.clone().with_id("total"));
    let with_target = Family::new(*family.grid(), members).unwrap();
    let (model, _) = fit(&with_target, &target, &BoostConfig::new(1)).unwrap();
    assert_eq!(model.terms().len(), 1);
    assert_eq!(model.terms()[0].member_id, "total");
    assert!((model.terms()[0].weight - 1.0).abs() <= 1e-12);
    format!("weights ({:.12}, {:.12}), rmse {rmse:.1e}", picked[0].1, picked[1].1)
}

// ---------------------------------------------------------------------------
// 5. Loop invariants on random fits.
// ---------------------------------------------------------------------------

fn random_instance(rng: &mut Rand, max_members: usize) -> (Family, Series) {
    let n_members = rng.random_range(2..=max_members);
    let len = rng.random_range(8..=120);
    let latent: Vec<Vec<f64>> = (0..3).map(|_| normal_vec(rng, len)).collect();
    let cols: Vec<Vec<f64>> = (0..n_members)
        .map(|_| {
            let w: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..2.0)).collect();
            let noise = rng.random_range(0.0..1.0);
            let off = rng.random_range(-2.0..5.0);
            (0..len)
                .map(|i| {
                    off + (0..3).map(|k| w[k] * latent[k][i]).sum::<f64>()
                        + noise * rng.sample::<f64, _>(StandardNormal)
                })
                .collect()
        })
        .collect();
    let family = family_of(cols);
    let target = if rng.random_bool(0.5) {
        panelboost::aggregate_target(&family).unwrap()
    } else {
        Series::new("y", normal_vec(rng, len)).unwrap()
    };
    (family, target)
}

fn ac5() -> String {
    let mut rng = Rand::seed_from_u64(5);
    let (mut fitted, mut rejected, mut steps) = (0, 0, 0);
    for _ in 0..200 {
        let (family, target) = random_instance(&mut rng, 50);
        let cfg = BoostConfig {
            panel_size: rng.random_range(1..=10),
            lbound: if rng.random_bool(0.5) { -1.0 } else { rng.random_range(-1.0..0.5) },
            alpha: if rng.random_bool(0.5) { 1.0 } else { rng.random_range(0.05..=1.0) },
            transform: if rng.random_bool(0.5) { TransformKind::Reciprocal } else { TransformKind::Witch },
            with_replacement: rng.random_bool(0.25),
        };
        let (model, trace) = match fit(&family, &target, &cfg) {
            Ok(r) => r,
            Err(Error::NoAdmissibleMember { .. }) => {
                rejected += 1;
                continue;
            }
            Err(e) => panic!("unexpected fit error {e}"),
        };
        fitted += 1;

        if cfg.alpha == 1.0 {
            let mut prev = sum_sq(target.values());
            for r in &trace.records {
                assert!(r.squared_error_after <= prev, "error rose: {} > {prev} at {:?} cfg {:?}", r.squared_error_after, r, cfg);
                prev = r.squared_error_after;
            }
        }
        for t in model.terms() {
            assert!(t.score >= cfg.lbound);
        }
        if !cfg.with_replacement {
            let mut ids: Vec<&str> = model.member_ids().collect();
            ids.sort_unstable();
            ids.dedup();
            assert_eq!(ids.len(), model.terms().len(), "duplicate member");
        }

        let y = target.values();
        let mut pred = vec![0.0; y.len()];
        for t in model.terms() {
            let h = family.get(&t.member_id).unwrap().values();
            let res: Vec<f64> = y.iter().zip(&pred).map(|(a, b)| a - b).collect();
            let after: f64 = h.iter().zip(&res).map(|(hi, ri)| hi * (ri - t.raw_rho * hi)).sum();
            let bound = 1e-8 * sum_sq(h).sqrt() * sum_sq(&res).sqrt();
            assert!(after.abs() <= bound, "step not orthogonal: {after:e} > {bound:e}");
            pred.iter_mut().zip(h).for_each(|(p, hi)| *p += t.weight * hi);
            steps += 1;
        }

        let again = fit(&family, &target, &cfg).unwrap();
        assert_eq!(again.0, model);
        assert_eq!(again.1, trace);
    }
    assert!(fitted >= 100, "only {fitted} random fits succeeded");
    format!("{fitted} fits ({rejected} rejected by lbound), {steps} steps checked")
}

// ---------------------------------------------------------------------------
// 6. Greedy path against exhaustive enumeration of small panels.
// ---------------------------------------------------------------------------

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Stagewise replay of an ordered selection path with unit shrinkage.
fn replay(family: &Family, target: &[f64], path: &[&str]) -> f64 {
    let mut pred = vec![0.0; target.len()];
    let mut res = target.to_vec();
    for id in path {
        let h = family.get(id).unwrap().values();
        let mut hy = 0.0;
        let mut hh = 0.0;
        for i in 0..h.len() {
            hy += h[i] * res[i];
            hh += h[i] * h[i];
        }
        let rho = hy / hh;
        for i in 0..h.len() {
            pred[i] += rho * h[i];
            res[i] = target[i] - pred[i];
        }
    }
    res.iter().map(|r| r * r).sum()
}

fn ac6() -> String {
    let started = Instant::now();
    let mut rng = Rand::seed_from_u64(6);
    let mut gaps = Vec::new();
    for _ in 0..50 {
        let (family, target) = random_instance(&mut rng, 6);
        let m = rng.random_range(1..=3usize.min(family.len()));
        let (model, trace) = fit(&family, &target, &BoostConfig::new(m)).unwrap();
        let greedy_err = trace.records.last().unwrap().squared_error_after;

        let path: Vec<&str> = model.member_ids().collect();
        assert_eq!(replay(&family, target.values(), &path), greedy_err, "replay mismatch");

        let mut chosen: Vec<&str> = path.clone();
        chosen.sort_unstable();
        let mut found = false;
        let mut best_same_size = f64::INFINITY;
        for size in 1..=m {
            for idx in subsets(family.len(), size) {
                let ids: Vec<&str> = idx.iter().map(|&i| family.members()[i].id()).collect();
                let sub = family.filter(|id| ids.contains(&id));
                let (_, t) = fit(&sub, &target, &BoostConfig::new(size)).unwrap();
                let err = t.records.last().unwrap().squared_error_after;
                if size == chosen.len() {
                    best_same_size = best_same_size.min(err);
                }
                let mut sorted = ids.clone();
                sorted.sort_unstable();
                if sorted == chosen {
                    assert_eq!(err, greedy_err, "enumerated panel disagrees with greedy fit");
                    found = true;
                }
            }
        }
        assert!(found, "greedy panel {chosen:?} missing from enumeration");
        gaps.push(if best_same_size > 0.0 { greedy_err / best_same_size } else { 1.0 });
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    let worst = gaps.iter().cloned().fold(1.0, f64::max);
    let optimal = gaps.iter().filter(|g| **g <= 1.0).count();
    format!(
        "greedy optimal in {optimal}/50 instances, worst error ratio {worst:.4}, {elapsed:.2?}"
    )
}

// ---------------------------------------------------------------------------
// 7. Sweep selection and failure.
// ---------------------------------------------------------------------------

fn ac7() -> String {
    let mut rng = Rand::seed_from_u64(7);
    let n = 60;
    let spec = SplitSpec::new(0.5, 0.25).unwrap();
    let ranges = split(&TimeGrid::new(0.0, 1.0, n).unwrap(), &spec).unwrap();
    let mut basis: Vec<Vec<f64>> = (0..2).map(|_| normal_vec(&mut rng, n)).collect();
    orthonormalize(&mut basis, ranges.train.clone());
    let target: Vec<f64> = (0..n).map(|i| 2.0 * basis[0][i] + 3.0 * basis[1][i]).collect();
    let mut cols = basis;
    for _ in 0..4 {
        cols.push(normal_vec(&mut rng, n).iter().map(|v| 0.3 * v).collect());
    }
    let family = family_of(cols);
    let target = Series::new("y", target).unwrap();
    let grid = SweepGrid {
        panel_sizes: vec![1, 2, 3],
        lbounds: vec![-1.0],
        alphas: vec![1.0],
        transforms: vec![TransformKind::Reciprocal],
    };
    let result = sweep(&family, &target, &spec, &grid).unwrap();
    assert_eq!(result.rows.len(), 3);
    assert_eq!(result.best_row().config.panel_size, 2);
    let best_rmse = result.best_row().outcome.as_ref().unwrap().validation.rmse;
    for r in &result.rows {
        assert!(r.outcome.as_ref().unwrap().validation.rmse >= best_rmse);
    }
    assert_eq!(sweep(&family, &target, &spec, &grid).unwrap(), result);

    let noise = family_of((0..8).map(|_| normal_vec(&mut rng, n)).collect());
    let noise_target = Series::new("y", normal_vec(&mut rng, n)).unwrap();
    let strict = SweepGrid {
        panel_sizes: vec![1, 3],
        lbounds: vec![0.99],
        alphas: vec![1.0, 0.5],
        transforms: TransformKind::ALL.to_vec(),
    };
    assert!(matches!(
        sweep(&noise, &noise_target, &spec, &strict),
        Err(Error::SweepFailed)
    ));
    format!("best panel_size 2 (val rmse {best_rmse:.1e}); lbound 0.99 on noise -> SweepFailed")
}

// ---------------------------------------------------------------------------
// 8. Validation data never reaches the fit.
// ---------------------------------------------------------------------------

fn ac8() -> String {
    let (family, target) = io::generate(&GenSpec {
        n_series: 25,
        days: 120,
        archetypes: 4,
        noise_sd: 0.1,
        seed: 8,
    })
    .unwrap();
    let spec = SplitSpec::new(0.6, 0.2).unwrap();
    let cfg = BoostConfig {
        panel_size: 5,
        alpha: 0.8,
        ..BoostConfig::default()
    };
    let (model, trace, ranges) = fit_on_split(&family, &target, &spec, &cfg).unwrap();

    let mut rng = Rand::seed_from_u64(88);
    let outside = ranges.train.end..family.grid().count();
    let perturb = |s: &Series, rng: &mut Rand| {
        let mut v = s.values().to_vec();
        for i in outside.clone() {
            v[i] = v[i] * rng.random_range(0.0..3.0) + rng.random_range(-50.0..50.0);
        }
        Series::new(s.id(), v).unwrap()
    };
    let members = family.members().iter().map(|m| perturb(m, &mut rng)).collect();
    let changed = Family::new(*family.grid(), members).unwrap();
    let changed_target = perturb(&target, &mut rng);
    assert_ne!(changed, family);
    let (model2, trace2, _) = fit_on_split(&changed, &changed_target, &spec, &cfg).unwrap();
    assert_eq!(model2, model, "validation data leaked into the fit");
    assert_eq!(trace2, trace);

    let pred = predict(&model, &family).unwrap();
    let m = evaluate(&pred, &pred, TransformKind::Witch, 1.0).unwrap();
    assert_eq!(m.cumulative_abs_error, 0.0);
    format!("model bit-identical after perturbing {} samples", outside.len())
}

// ---------------------------------------------------------------------------
// 9. File round-trips and the CLI pipeline.
// ---------------------------------------------------------------------------

fn run_cli(args: &[&str]) {
    let out = Command::new(env!("CARGO_BIN_EXE_panelboost"))
        .args(args)
        .output()
        .expect("spawn cli");
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn pipeline(dir: &Path) -> (Vec<u8>, ModelFile, Vec<u8>, Vec<u8>) {
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let (data, model, pred, report) = (p("data.csv"), p("model.json"), p("pred.csv"), p("eval.csv"));
    run_cli(&["gen", "--out", &data, "--n", "30", "--days", "90", "--archetypes", "3", "--noise", "0.05", "--seed", "9"]);
    run_cli(&[
        "fit", "--data", &data, "--model-out", &model, "--panel-size", "4", "--lbound", "-1",
        "--alpha", "0.9", "--transform", "witch", "--train", "0.6", "--val", "0.2",
    ]);
    run_cli(&["predict", "--data", &data, "--model", &model, "--out", &pred, "--cumulative"]);
    run_cli(&["eval", "--pred", &pred, "--data", &data, "--report", &report]);
    let read = |f: &str| std::fs::read(f).unwrap();
    (read(&data), io::read_model(Path::new(&model)).unwrap(), read(&pred), read(&report))
}

fn ac9() -> String {
    let dir = tempfile::tempdir().unwrap();

    let (family, _) = io::generate(&GenSpec {
        n_series: 10,
        days: 40,
        archetypes: 2,
        noise_sd: 0.2,
        seed: 99,
    })
    .unwrap();
    let csv_path = dir.path().join("panel.csv");
    io::write_panel_csv(&csv_path, &family, None).unwrap();
    let back = io::read_panel_csv(&csv_path).unwrap();
    for (a, b) in family.members().iter().zip(back.family.members()) {
        assert_eq!(a.id(), b.id());
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() <= 1e-12, "{x} vs {y}");
        }
    }

    let (model, _) = fit(&family, &panelboost::aggregate_target(&family).unwrap(), &BoostConfig {
        panel_size: 4,
        alpha: 0.75,
        transform: TransformKind::Witch,
        ..BoostConfig::default()
    })
    .unwrap();
    let model_path = dir.path().join("m.json");
    let prov = Provenance::for_input(b"bytes");
    io::write_model(&model_path, &model, &prov).unwrap();
    let read = io::read_model(&model_path).unwrap();
    assert_eq!(read.model, model);
    assert_eq!(read.provenance, prov);

    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    std::fs::create_dir_all(&a).unwrap();
    std::fs::create_dir_all(&b).unwrap();
    let first = pipeline(&a);
    let second = pipeline(&b);
    assert_eq!(first.0, second.0, "generated data differs");
    assert_eq!(first.1.model, second.1.model, "fitted model differs");
    assert_eq!(first.1.provenance.input_digest, second.1.provenance.input_digest);
    assert_eq!(first.2, second.2, "prediction differs");
    assert_eq!(first.3, second.3, "eval report differs");
    let rows = String::from_utf8(first.2).unwrap().lines().count();
    assert_eq!(rows, 91);
    "panel CSV and model round-trip; gen -> fit -> predict -> eval reproducible".into()
}

type Criterion = (&'static str, fn() -> String);

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1 closed-form weight matches numeric minimizer", ac1),
        ("AC2 transform contract", ac2),
        ("AC3 psi minimum at f", ac3),
        ("AC4 exact recovery", ac4),
        ("AC5 boosting loop invariants", ac5),
        ("AC6 greedy vs brute-force audit", ac6),
        ("AC7 sweep behavior", ac7),
        ("AC8 forecast split integrity", ac8),
        ("AC9 IO round-trips and pipeline", ac9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    let _ = panic::take_hook();
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
