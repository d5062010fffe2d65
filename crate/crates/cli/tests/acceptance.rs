//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use npj_core::decomp::{decompose, is_isomorphic, SearchBudget};
use npj_core::engine::{
    cc_sequence, cyclic_exact_npj, detect_recurrence, invariant_harness, npj_report, omega_table, random_modules,
    running_min, subaction_lower_bound, table_npj, upper_bounds, CcConfig, OrbitConfig, ReportConfig,
    SubactionConfig,
};
use npj_core::gallery;
use npj_core::linalg::{charpoly_int, largest_real_root, IntMatrix, IntPolynomial};
use npj_core::rep::{omega, Answer, Module};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn cc_cfg(n: usize) -> CcConfig {
    CcConfig {
        n_max: n,
        ..CcConfig::default()
    }
}

/// Product of `(x - r)` over integer roots.
fn from_roots(roots: &[i64]) -> IntPolynomial {
    roots
        .iter()
        .fold(IntPolynomial::from_i64(&[1]), |acc, &r| acc.mul(&IntPolynomial::from_i64(&[-r, 1])))
}

/// Block-size oracle for `Z/p`: `J_2 ⊗ J_j = J_{j+1} ⊕ J_{j-1}`, with `J_p` dropped.
fn clebsch_gordan_cc(p: usize, n_max: usize) -> Vec<u64> {
    let mut counts = vec![0u64; p + 1];
    counts[1] = 1;
    let mut out = vec![1];
    for _ in 0..n_max {
        let mut next = vec![0u64; p + 1];
        for j in 1..p {
            let c = counts[j];
            if j + 1 < p {
                next[j + 1] += c;
            }
            if j > 1 {
                next[j - 1] += c;
            }
        }
        counts = next;
        out.push((1..p).map(|j| j as u64 * counts[j]).sum());
    }
    out
}

fn c1() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in [3u32, 5, 7] {
        for j in 1..p as usize {
            let v = cyclic_exact_npj(&gallery::jordan_block(p, j)).map_err(|e| e.to_string())?;
            let want = (j as f64 * PI / p as f64).sin() / (PI / p as f64).sin();
            worst = worst.max((v.value - want).abs());
        }
    }
    ensure!(worst < 1e-12, "max error {worst:e}");
    let tau = cyclic_exact_npj(&gallery::jordan_block(5, 2)).unwrap().value;
    ensure!((tau - 1.6180339887).abs() < 1e-10, "tau = {tau}");
    Ok(format!("max error {worst:.1e}, τ = {tau:.10}"))
}

fn c2() -> Outcome {
    let seq = cc_sequence(&gallery::jordan_block(5, 2), &cc_cfg(12));
    let oracle = clebsch_gordan_cc(5, 12);
    ensure!(seq.values == oracle, "cc {:?} vs oracle {:?}", seq.values, oracle);
    ensure!(seq.values[..7] == [1, 2, 4, 8, 11, 22, 29], "prefix {:?}", &seq.values[..7]);
    let rec = detect_recurrence(&seq.values, 3).recurrence.ok_or("no recurrence")?;
    let root = largest_real_root(&rec.charpoly, 1e-13).ok_or("no real root")?;
    let want = 2.0 * (PI / 5.0).cos();
    ensure!((root - want).abs() < 1e-9, "root {root} vs {want}");
    Ok(format!("cc_0..12 match the oracle; {} ; root {root:.10}", rec.describe()))
}

fn c3() -> Outcome {
    let m = gallery::uniserial_3x3();
    let seq = cc_sequence(&m, &cc_cfg(12));
    ensure!(seq.values[2] == 9, "cc_2 = {}", seq.values[2]);
    ensure!(seq.values[5] == 72, "cc_5 = {}", seq.values[5]);
    ensure!(seq.total_free_ranks[5] == Some(19), "free part at 5 = {:?}", seq.total_free_ranks[5]);
    let rec = detect_recurrence(&seq.values, 3).recurrence.ok_or("no recurrence")?;
    let want = [0i64, 0, -8].map(num_bigint::BigInt::from);
    ensure!(rec.start == 5 && rec.coeffs == want, "found {}", rec.describe());
    let r = npj_report(&m, &ReportConfig::default());
    let v = r.verdict.exact().ok_or_else(|| format!("not certified: {}", r.verdict))?;
    ensure!((v - 2.0).abs() < 1e-12, "value {v}");
    ensure!(r.is_consistent(), "{:?}", r.inconsistencies);
    Ok(format!("cc_2 = 9, cc_5 = 72, 19·P; {}; {}", rec.describe(), r.verdict))
}

fn c4() -> Outcome {
    let m = gallery::soc2_3x3();
    let b = SearchBudget::default();
    let d = decompose(&m.tensor(&m).unwrap(), &b);
    ensure!(d.dims() == vec![3, 6], "dims {:?}", d.dims());
    let three = &d.summands.iter().find(|s| s.module.dim() == 3).unwrap().module;
    let six = &d.summands.iter().find(|s| s.module.dim() == 6).unwrap().module;
    let iso = is_isomorphic(three, &m.dual(), &b);
    ensure!(iso == Answer::Yes, "dim-3 summand vs M*: {iso}");
    let iso = is_isomorphic(six, &omega(&m.dual()), &b);
    ensure!(iso == Answer::Yes, "dim-6 summand vs Ω(M*): {iso}");
    let r = npj_report(&m, &ReportConfig::default());
    let v = r.verdict.exact().ok_or_else(|| format!("not certified: {}", r.verdict))?;
    ensure!((v - 2.0).abs() < 1e-12, "value {v}");
    Ok(format!("dims {{3, 6}}, M ⊗ M ≅ M* ⊕ Ω(M*); {}", r.verdict))
}

fn table_case(m: &Module, classes: usize, want: &IntPolynomial, value: f64) -> Outcome {
    let t = omega_table(m, &OrbitConfig::default());
    ensure!(t.closed, "table not closed: {:?}", t.limit);
    ensure!(t.len() == classes, "{} classes, dims {:?}", t.len(), t.dims());
    let v = table_npj(&t).map_err(|e| e.to_string())?;
    ensure!(&v.charpoly == want, "charpoly {}", v.charpoly);
    ensure!((v.value - value).abs() < 1e-9, "value {}", v.value);
    Ok(format!("{classes} classes {:?}, charpoly {}, npj = {}", t.dims(), v.charpoly, v.value))
}

fn c5() -> Outcome {
    table_case(&gallery::m6_three_classes(), 3, &from_roots(&[0, 2, 3]), 3.0)
}

fn c6() -> Outcome {
    table_case(&gallery::m6_eight_classes(), 8, &from_roots(&[4, 3, 1, 0, 0, 0, -2, -2]), 4.0)
}

fn c7() -> Outcome {
    let t = omega_table(&gallery::kg_mod_rad2(5), &OrbitConfig::default());
    ensure!(t.closed, "table not closed: {:?}", t.limit);
    let v = table_npj(&t).map_err(|e| e.to_string())?;
    let cp = charpoly_int(&t.at_one());
    let golden = 1.0 + (1.0 + 5f64.sqrt()) / 2.0;
    ensure!((v.value - golden).abs() < 1e-6, "value {}", v.value);
    let f1 = IntPolynomial::from_i64(&[1, -3, 1]);
    let f2 = IntPolynomial::from_i64(&[-1, 0, 0, -4, 0, 0, 1]);
    ensure!(cp.div_exact(&f1).is_some(), "x²−3x+1 does not divide {cp}");
    ensure!(cp.div_exact(&f2).is_some(), "x⁶−4x³−1 does not divide {cp}");
    Ok(format!("{} classes, npj = {:.10}, both factors divide", t.len(), v.value))
}

fn c8() -> Outcome {
    let f = IntPolynomial::from_i64(&[-2, 4, -4, 1]);
    let r = largest_real_root(&f, 1e-13).ok_or("no root")?;
    ensure!((r - 2.839286755).abs() < 1e-6, "root {r}");
    let a = IntMatrix::from_rows(&[vec![2, 1, 0], vec![0, 0, 1], vec![2, 0, 2]]);
    ensure!(charpoly_int(&a) == f, "charpoly of A is {}", charpoly_int(&a));
    Ok(format!("root {r:.9}"))
}

fn c9() -> Outcome {
    let m = gallery::m5_restriction();
    let h = m.restrict(&[vec![1, 0]]).map_err(|e| e.to_string())?;
    let v = cyclic_exact_npj(&h).map_err(|e| e.to_string())?;
    ensure!(v.blocks == vec![2, 2, 1], "blocks {:?}", v.blocks);
    ensure!((v.value - 3.0).abs() < 1e-12, "restriction value {}", v.value);
    let seq = cc_sequence(&m, &cc_cfg(4));
    let us = upper_bounds(&seq.values);
    ensure!(us.iter().all(|&u| u >= 3.0 - 1e-9), "u_n {us:?}");
    Ok(format!("⟨g⟩ gives {:.12}; u_1..u_{} = {:?}", v.value, us.len(), round(&us)))
}

fn round(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e6).round() / 1e6).collect()
}

/// `dim V_i = 3i + a(i mod 6)`.
fn v_dim(i: usize) -> usize {
    let a: [i64; 6] = [11, 1, -1, 7, 2, 7];
    (3 * i as i64 + a[i % 6]) as usize
}

fn c10() -> Outcome {
    let m = gallery::m4_zigzag();
    let b = SearchBudget::default();
    let pieces = |x: &Module| -> Vec<Module> {
        decompose(x, &b)
            .summands
            .into_iter()
            .flat_map(|s| std::iter::repeat(s.module).take(s.multiplicity))
            .collect()
    };
    let mm = pieces(&m.tensor(&m).unwrap());
    let mut dims: Vec<usize> = mm.iter().map(Module::dim).collect();
    dims.sort_unstable();
    ensure!(dims == vec![1, 5, 10], "core(M⊗M) dims {dims:?}");
    let v2 = mm.iter().find(|x| x.dim() == 5).unwrap().clone();
    let w = mm.iter().find(|x| x.dim() == 10).unwrap().clone();

    let mw = pieces(&m.tensor(&w).unwrap());
    let xs: Vec<&Module> = mw.iter().filter(|x| x.dim() == 18).collect();
    ensure!(xs.len() == 2 && mw.len() == 3, "core(M⊗W) dims {:?}", mw.iter().map(Module::dim).collect::<Vec<_>>());
    let x = xs[0].clone();
    let x_star = xs[1].clone();
    ensure!(is_isomorphic(&x_star, &x.dual(), &b) == Answer::Yes, "18-dim pieces are not dual");

    let mut v: Vec<Module> = vec![Module::trivial(m.group(), 1), m.clone(), v2];
    for i in 2..=10 {
        let mut rest = pieces(&m.tensor(&v[i]).unwrap());
        let mut take = |target: &Module, what: &str| -> Result<(), String> {
            let k = rest
                .iter()
                .position(|y| y.dim() == target.dim() && is_isomorphic(y, target, &b) == Answer::Yes)
                .ok_or_else(|| format!("M⊗V_{i}: no summand ≅ {what}"))?;
            rest.remove(k);
            Ok(())
        };
        take(&v[i - 1], "V_{i-1}")?;
        if i % 3 == 0 {
            take(&x, "X")?;
            take(&x_star, "X*")?;
        }
        ensure!(rest.len() == 1, "M⊗V_{i}: {} leftover summands", rest.len());
        let next = rest.pop().unwrap();
        ensure!(next.dim() == v_dim(i + 1), "dim V_{} = {} vs {}", i + 1, next.dim(), v_dim(i + 1));
        ensure!(v[i].dim() == v_dim(i), "dim V_{i} = {}", v[i].dim());
        v.push(next);
    }

    let seed = x.sum_with(&x_star).unwrap();
    let sb = subaction_lower_bound(
        &m,
        &[seed],
        &SubactionConfig {
            depth: 1,
            ..SubactionConfig::default()
        },
    );
    ensure!(sb.value == 3.0, "subaction bound {}", sb.value);
    let seq = cc_sequence(&m, &cc_cfg(8));
    let us = upper_bounds(&seq.values);
    ensure!(us.iter().all(|&u| u >= 3.0 - 1e-9), "u_n {us:?}");
    Ok(format!(
        "dims {{1,5,10}}, V_2..V_11 dims {:?}, subaction {:?} → {}, min u_n {:.6} (n ≤ {})",
        v[2..].iter().map(Module::dim).collect::<Vec<_>>(),
        sb.matrix.to_i64_rows(),
        sb.value,
        running_min(&us).last().unwrap(),
        us.len()
    ))
}

fn c11() -> Outcome {
    let mut total = 0;
    let mut undecided = 0;
    let mut checks = 0;
    for (p, seed) in [(2u32, 11u64), (3, 12)] {
        let mods = random_modules(p, 2, 5, 25, seed);
        for chunk in mods.chunks(5) {
            let r = invariant_harness(chunk, 5, &SearchBudget::default());
            total += r.modules;
            undecided += r.undecided;
            checks += r.tally.iter().map(|t| t.1).sum::<usize>();
            if let Some(f) = r.failures.first() {
                return Err(format!("p = {p}: law ({}) failed: {}", f.law.letter(), f.detail));
            }
        }
    }
    ensure!(total >= 50, "only {total} modules");
    Ok(format!("{total} modules, {checks} checks, 0 failures, {undecided} undecided"))
}

fn c12() -> Outcome {
    let cases: [&[&str]; 6] = [
        &["cc", "gallery:jordan-5-2", "--n", "12"],
        &["npj", "gallery:uniserial-3x3"],
        &["npj", "gallery:soc2-3x3"],
        &["omega-table", "gallery:m6-three-classes"],
        &["omega-table", "gallery:m6-eight-classes"],
        &["omega-table", "gallery:kg-mod-rad2-5"],
    ];
    for case in cases {
        let mut reports = Vec::new();
        for threads in ["1", "3"] {
            let mut args = vec!["npj"];
            args.extend_from_slice(case);
            args.extend_from_slice(&["--seed", "7", "--threads", threads]);
            let (out, _) = npj_cli::run_captured(args).map_err(|e| e.to_string())?;
            reports.push(out.json);
        }
        ensure!(reports[0] == reports[1], "{} report differs between 1 and 3 threads", case.join(" "));
    }
    Ok("criteria 2-7 reports byte-identical with 1 and 3 threads".into())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 12] = [
        (1, "cyclic closed form", c1),
        (2, "Z/5 Fibonacci pattern", c2),
        (3, "uniserial 3x3 identity", c3),
        (4, "socle-two 3x3", c4),
        (5, "three-class omega table", c5),
        (6, "eight-class omega table", c6),
        (7, "kG/Rad² over Z/5 × Z/5", c7),
        (8, "cubic constant", c8),
        (9, "restriction bound 3", c9),
        (10, "zigzag module", c10),
        (11, "law harness", c11),
        (12, "determinism", c12),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (n, name, f) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name} [{secs:.1}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name} [{secs:.1}s]: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
