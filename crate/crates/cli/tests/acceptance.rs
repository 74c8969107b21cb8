//! One PASS/FAIL line per acceptance criterion, written straight to stdout
//! so they show in a plain `cargo test` log.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{HashMap, HashSet};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::{el, random};
use seifert_core::exactmath::{cokernel, smith_normal_form, Int, IntMatrix, Rat};
use seifert_core::localmodel::{
    decompose_residue, multiplicity_at_center, reduce_chart, seifert_is_smooth, seifert_is_smooth_by_generation,
    to_quotient, to_seifert, CyclicChart, QuotientPresentation,
};
use seifert_core::seifert::{
    chern_class, class_group_y, contraction_type, global_order, quotient_by_mu, singularity_predicates, validate,
    BaseVariety, Coefficient, ContractionType, SeifertData, Verdict,
};
use seifert_core::topology::{h1_of, h1_orb, h1_y_relations, reconstruct_from_chern, IntersectionProfile};
use seifert_core::Error;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn odometer(v: &mut [u64], bound: impl Fn(usize) -> u64) -> bool {
    for (i, x) in v.iter_mut().enumerate() {
        *x += 1;
        if *x < bound(i) {
            return true;
        }
        *x = 0;
    }
    false
}

fn all_charts(max_m: u64, max_n: usize) -> Vec<CyclicChart> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for n in 1..=max_n {
            let mut a = vec![0u64; n];
            loop {
                if let Ok(c) = CyclicChart::new(m, a.clone()) {
                    out.push(c);
                }
                if !odometer(&mut a, |_| m) {
                    break;
                }
            }
        }
    }
    out
}

fn criterion_1() -> Check {
    let mut presentations = 0u64;
    let charts = all_charts(24, 3);
    for chart in &charts {
        let rc = reduce_chart(chart);
        let m = chart.order();
        let big_c = rc.c_product();
        let mut hits: HashMap<u64, Vec<(u64, Vec<u64>)>> = HashMap::new();
        let mut b = vec![0u64; chart.dim()];
        loop {
            for l in 0..rc.m_red() {
                let r = chart.weights().iter().zip(&b).fold(l * big_c % m, |acc, (a, bi)| (acc + a * bi) % m);
                hits.entry(r).or_default().push((l, b.clone()));
            }
            if !odometer(&mut b, |i| rc.c()[i]) {
                break;
            }
        }
        for r in 0..m {
            let found = hits.get(&r).cloned().unwrap_or_default();
            ensure(found.len() == 1, || format!("{chart:?}, r = {r}: scan found {found:?}"))?;
            let d = decompose_residue(chart, r);
            ensure((d.l, d.b.clone()) == found[0], || format!("{chart:?}, r = {r}: {d:?} vs {found:?}"))?;
            let qp = QuotientPresentation::new(r, chart.clone());
            let back = to_quotient(&to_seifert(&qp)).map_err(|e| e.to_string())?;
            ensure(back == qp, || format!("round trip {qp:?} -> {back:?}"))?;
            presentations += 1;
        }
    }
    Ok(format!("{} charts, {presentations} presentations", charts.len()))
}

fn criterion_2() -> Check {
    let (mut agree, mut excluded) = (0u64, 0u64);
    for chart in all_charts(24, 3) {
        for r in 0..chart.order() {
            let lsd = to_seifert(&QuotientPresentation::new(r, chart.clone()));
            let back = to_quotient(&lsd).map_err(|e| e.to_string())?;
            match seifert_is_smooth(&lsd) {
                Ok(s) => {
                    let oracle = back.r().gcd(&back.chart().order()) == 1;
                    ensure(s == oracle, || format!("{back:?}: criterion {s}, gcd oracle {oracle}"))?;
                    let g = seifert_is_smooth_by_generation(&lsd).map_err(|e| e.to_string())?;
                    ensure(g == s, || format!("{back:?}: generator test {g}, criterion {s}"))?;
                    agree += 1;
                }
                Err(Error::HypothesisNotMet(_)) => excluded += 1,
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(format!("{agree} presentations agree, {excluded} outside gcd(b_i, c_i) = 1"))
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 1000;
    for _ in 0..n {
        let sd = random::seifert_data(&mut rng);
        ensure(validate(&sd).map_err(|e| e.to_string())?.is_valid(), || "generator produced invalid data".into())?;
        let cl = sd.base().class_group();
        let c1 = chern_class(&sd);
        for m in 1..=24u64 {
            let q = quotient_by_mu(&sd, m).map_err(|e| e.to_string())?;
            let ok = chern_class(&q).equals_in(&c1.scaled(&Int::from(m)), cl).map_err(|e| e.to_string())?;
            ensure(ok, || format!("M = {m}, L = {}, {:?}", sd.l_class(), sd.coefficients()))?;
        }
    }
    Ok(format!("{n} instances x M = 1..24"))
}

fn cofactor_det(m: &[Vec<Int>]) -> Int {
    if m.is_empty() {
        return Int::one();
    }
    let mut acc = Int::zero();
    for j in 0..m.len() {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Int>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += t
        } else {
            acc -= t
        }
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn to_rows(a: &IntMatrix) -> Vec<Vec<Int>> {
    a.row_iter().map(|r| r.to_vec()).collect()
}

/// `|Z^n / L|` by listing the image of `L` in `(Z/d)^n`; `d Z^n` lies in `L`.
fn enumerate_order(a: &IntMatrix, d: u64) -> u128 {
    let n = a.cols();
    let gens: Vec<Vec<u64>> = a
        .row_iter()
        .map(|r| r.iter().map(|x| u64::try_from(x.mod_floor(&Int::from(d))).unwrap()).collect())
        .collect();
    let mut seen = HashSet::from([vec![0u64; n]]);
    let mut stack = vec![vec![0u64; n]];
    while let Some(v) = stack.pop() {
        for g in &gens {
            let w: Vec<u64> = v.iter().zip(g).map(|(x, y)| (x + y) % d).collect();
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    (d as u128).pow(n as u32) / seen.len() as u128
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = 10_000;
    let (mut small_finite, mut enumerated) = (0u64, 0u64);
    for _ in 0..n {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let a = IntMatrix::from_rows(c, rows.clone()).unwrap();
        let d = smith_normal_form(&a);
        let uav = d.u.mul(&a).and_then(|x| x.mul(&d.v)).map_err(|e| e.to_string())?;
        ensure(uav == d.s && d.s.is_diagonal(), || format!("U A V != S for {rows:?}"))?;
        ensure(cofactor_det(&to_rows(&d.u)).abs().is_one(), || format!("U not unimodular for {rows:?}"))?;
        ensure(cofactor_det(&to_rows(&d.v)).abs().is_one(), || format!("V not unimodular for {rows:?}"))?;
        let diag = d.diagonal();
        for w in diag.windows(2) {
            let ok = !w[0].is_negative() && (w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
            ensure(ok, || format!("divisibility fails on {diag:?} for {rows:?}"))?;
        }
        let order = cokernel(&a).order();
        let minors = subsets(r, c).into_iter().fold(Int::zero(), |g, s| {
            let sub: Vec<Vec<Int>> = s.iter().map(|&i| a.row(i).to_vec()).collect();
            g.gcd(&cofactor_det(&sub))
        });
        match &order {
            None => ensure(minors.is_zero(), || format!("infinite cokernel but minors gcd {minors}"))?,
            Some(o) => {
                ensure(*o == minors, || format!("order {o} vs maximal minors gcd {minors} for {rows:?}"))?;
                if *o <= Int::from(10_000) {
                    small_finite += 1;
                    let dd: u64 = o.try_into().unwrap();
                    if (dd as u128).pow(c as u32) <= 300_000 {
                        let e = enumerate_order(&a, dd);
                        ensure(Int::from(e) == *o, || format!("enumeration {e} vs {o} for {rows:?}"))?;
                        enumerated += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{n} matrices; {small_finite} finite cokernels of order <= 10^4 checked against maximal minors, {enumerated} also by enumeration"
    ))
}

fn criterion_5() -> Check {
    let sd = common::p1_fixture();
    let cl = sd.base().class_group();
    let e = |e: Error| e.to_string();
    let c1 = chern_class(&sd).free_part(cl).map_err(e)?;
    ensure(c1 == vec![Rat::new(Int::from(1), Int::from(6))], || format!("c1 = {c1:?}"))?;
    let m = global_order(&sd).map_err(e)?;
    ensure(m == 6, || format!("m(X) = {m}"))?;
    // determinant oracles for the two presentations
    let cly_rel = [[1i64, -2, 0], [1, 0, -3], [-1, 1, 2]];
    let h1_rel = [[1i64, 2, 0], [2, 0, 3], [-1, -1, -1]];
    for rel in [cly_rel, h1_rel] {
        let rows: Vec<Vec<Int>> = rel.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        ensure(cofactor_det(&rows).abs().is_one(), || format!("oracle determinant of {rel:?} is not ±1"))?;
    }
    ensure(class_group_y(&sd).map_err(e)?.group().is_trivial(), || "Cl(Y) not trivial".into())?;
    let h1 = h1_of(&sd, &common::p1_profile(2, -1)).map_err(e)?;
    ensure(h1.is_trivial(), || format!("H_1(Y) = {h1}"))?;
    let ct = contraction_type(&sd).map_err(e)?;
    ensure(ct == ContractionType::InfinitySectionContractible, || format!("contraction {ct}"))?;
    let p = singularity_predicates(&sd).map_err(e)?;
    ensure(p.q_cartier == Verdict::Holds && p.log_terminal == Verdict::Holds, || format!("{p:?}"))?;
    Ok("c1 = 1/6, m(X) = 6, Cl(Y) = 0, H_1(Y) = 0, infinity-section, q_cartier, log_terminal".into())
}

fn criterion_6() -> Check {
    let base = Arc::new(common::affine_line());
    let mut pairs = 0;
    for c in 1u64..=20 {
        for b in 0..c {
            let Ok(coeff) = Coefficient::new(b, c) else { continue };
            let sd = SeifertData::new(base.clone(), el(&[]), vec![coeff]).map_err(|e| e.to_string())?;
            let cly = class_group_y(&sd).map_err(|e| e.to_string())?;
            ensure(cly.group().is_trivial(), || format!("Cl(Y) = {} for {b}/{c}", cly.group()))?;
            let lsd = to_seifert(&QuotientPresentation::new(b, CyclicChart::new(c, vec![1]).unwrap()));
            let mult = multiplicity_at_center(&lsd);
            ensure(mult == c && sd.coefficients()[0].c() == c, || format!("multiplicity {mult} for {b}/{c}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} coprime pairs"))
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 1000;
    for _ in 0..n {
        let t = rng.gen_range(0..=3usize);
        let k = rng.gen_range(0..=4usize);
        let pairings: Vec<Vec<i64>> = (0..k).map(|_| (0..t).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let l: Vec<i64> = (0..t).map(|_| rng.gen_range(-5..=5)).collect();
        let coeffs: Vec<(u64, u64)> = (0..k)
            .map(|_| {
                let c = rng.gen_range(1..=6u64);
                (rng.gen_range(0..c), c)
            })
            .collect();
        let profile = IntersectionProfile::from_i64s(&pairings, &l).map_err(|e| e.to_string())?;
        let mut rel = h1_y_relations(&profile, &coeffs).map_err(|e| e.to_string())?;
        let mut kill = vec![Int::zero(); k + 1];
        kill[0] = Int::one();
        rel.push_row(kill).map_err(|e| e.to_string())?;
        let c: Vec<u64> = coeffs.iter().map(|&(_, c)| c).collect();
        let orb = h1_orb(&profile, &c).map_err(|e| e.to_string())?;
        ensure(cokernel(&rel) == orb, || format!("{pairings:?} {l:?} {coeffs:?}"))?;
    }
    Ok(format!("{n} random profiles"))
}

fn rank_one_bases() -> Vec<(String, BaseVariety, IntersectionProfile)> {
    let mut out = Vec::new();
    for k in 1..=3 {
        out.push((format!("P^1 with {k} points"), common::projective_line(k), common::p1_profile(k, 0)));
    }
    for degrees in [vec![1], vec![2], vec![3], vec![1, 2], vec![1, 1, 1], vec![2, 3]] {
        let rows: Vec<Vec<i64>> = degrees.iter().map(|&d| vec![d]).collect();
        let profile = IntersectionProfile::from_i64s(&rows, &[0]).unwrap();
        out.push((format!("P^2 with curves {degrees:?}"), common::projective_plane(&degrees), profile));
    }
    out
}

fn criterion_8() -> Check {
    let (mut tuples, mut candidates) = (0u64, 0u64);
    for (name, base, profile) in rank_one_bases() {
        let base = Arc::new(base);
        let k = base.divisors().len();
        let mut c = vec![1u64; k];
        loop {
            let prod: u64 = c.iter().product();
            let trivial = h1_orb(&profile, &c).map_err(|e| e.to_string())?.is_trivial();
            if prod <= 60 && trivial {
                tuples += 1;
                let mut seen: HashMap<Rat, (i64, Vec<u64>)> = HashMap::new();
                for l in -3i64..=3 {
                    let mut b = vec![0u64; k];
                    loop {
                        let coeffs = b.iter().zip(&c).map(|(&bi, &ci)| Coefficient::fractional(bi, ci)).collect();
                        let sd = SeifertData::new(base.clone(), el(&[l]), coeffs).map_err(|e| e.to_string())?;
                        let c1 = chern_class(&sd);
                        let back = reconstruct_from_chern(&base, &profile, &c, &c1)
                            .map_err(|e| format!("{name}, c = {c:?}: {e}"))?
                            .ok_or_else(|| format!("{name}, c = {c:?}, b = {b:?}: nothing reconstructed"))?;
                        ensure(back.l_class() == sd.l_class() && back.coefficients() == sd.coefficients(), || {
                            format!("{name}, c = {c:?}, l = {l}, b = {b:?}: got {:?}", back.coefficients())
                        })?;
                        let key = c1.free_part(base.class_group()).map_err(|e| e.to_string())?.remove(0);
                        if let Some(prev) = seen.insert(key.clone(), (l, b.clone())) {
                            return Err(format!("{name}, c = {c:?}: {prev:?} and {:?} share c1 = {key}", (l, &b)));
                        }
                        candidates += 1;
                        if !odometer(&mut b, |i| c[i]) {
                            break;
                        }
                    }
                }
            }
            // walk every tuple with product <= 60
            let mut i = 0;
            loop {
                if i == k {
                    break;
                }
                c[i] += 1;
                if c.iter().product::<u64>() <= 60 {
                    break;
                }
                c[i] = 1;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    Ok(format!("{tuples} multiplicity tuples with H_1^orb = 0, {candidates} candidates, all distinct"))
}

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn calc(args: &[&str], input: Option<&[u8]>) -> Result<Vec<u8>, String> {
    let mut child = Command::new(env!("CARGO_BIN_EXE_seifert-calc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    if let Some(bytes) = input {
        child.stdin.take().unwrap().write_all(bytes).map_err(|e| e.to_string())?;
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn rat_field(v: &Value, path: &[&str]) -> Result<Vec<Rat>, String> {
    let mut x = v;
    for p in path {
        x = &x[*p];
    }
    x.as_array()
        .ok_or_else(|| format!("{path:?} missing"))?
        .iter()
        .map(|s| s.as_str().unwrap_or("").parse::<Rat>().map_err(|e| format!("{s}: {e}")))
        .collect()
}

fn criterion_9() -> Check {
    let mut runs = 0;
    for f in ["p1_23.json", "p2_curve.json", "marked_z5.json", "lens_5.json"] {
        let path = fixture(f);
        let original: Value =
            serde_json::from_slice(&calc(&["--json", "analyze", &path], None)?).map_err(|e| e.to_string())?;
        let c1 = rat_field(&original, &["chern_class", "free_part"])?;
        for m in 1..=12u64 {
            let ms = m.to_string();
            let doc = calc(&["quotient", "--m", &ms, &path], None)?;
            let doc2 = calc(&["quotient", "--m", &ms, &path], None)?;
            ensure(doc == doc2, || format!("{f}, M = {m}: quotient output differs between runs"))?;
            let a = calc(&["--json", "analyze", "-"], Some(&doc))?;
            let b = calc(&["--json", "analyze", "-"], Some(&doc2))?;
            ensure(a == b, || format!("{f}, M = {m}: analyze output differs between runs"))?;
            let h1 = calc(&["analyze", "-"], Some(&doc))?;
            let h2 = calc(&["analyze", "-"], Some(&doc))?;
            ensure(h1 == h2, || format!("{f}, M = {m}: human output differs between runs"))?;
            let report: Value = serde_json::from_slice(&a).map_err(|e| e.to_string())?;
            let scaled = rat_field(&report, &["chern_class", "free_part"])?;
            let expected: Vec<Rat> = c1.iter().map(|x| x * Rat::from_integer(Int::from(m))).collect();
            ensure(scaled == expected, || format!("{f}, M = {m}: c1 {scaled:?}, expected {expected:?}"))?;
            if original.get("topology").is_some() {
                let p0 = rat_field(&original, &["topology", "chern_pairings"])?;
                let p1 = rat_field(&report, &["topology", "chern_pairings"])?;
                let expected: Vec<Rat> = p0.iter().map(|x| x * Rat::from_integer(Int::from(m))).collect();
                ensure(p1 == expected, || format!("{f}, M = {m}: pairings {p1:?}, expected {expected:?}"))?;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} quotient documents re-analyzed twice, byte-identical, c1 scaled by M"))
}

/// Bypasses libtest's capture of `println!`.
fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Check);
    let checks: [Criterion; 9] = [
        ("dictionary round trip and unique decomposition", criterion_1),
        ("smoothness criteria agree", criterion_2),
        ("chern class scales under quotients", criterion_3),
        ("smith normal form and cokernel orders", criterion_4),
        ("worked P^1 fixture", criterion_5),
        ("bundles over a curve", criterion_6),
        ("H_1 with the fibre killed is H_1^orb", criterion_7),
        ("chern class determines the data", criterion_8),
        ("cli determinism and quotient round trip", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in checks.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => report(&format!("PASS criterion {}: {name} ({detail})", i + 1)),
            Err(why) => {
                report(&format!("FAIL criterion {}: {name}: {why}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
