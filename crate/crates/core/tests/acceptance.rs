//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigUint;
use postlie::catalog::{self, PA52_FAMILIES};
use postlie::ffsearch::{self, HeisenbergOptions, SearchSpec, Strategy};
use postlie::grading::{self, Grading};
use postlie::linalg::vector;
use postlie::pa::{check_cpa, check_lr};
use postlie::symmetrization::{self, check_ad_compatibility, check_sym_ad, lr_completeness};
use postlie::{BilinearProduct, Field, Identity, LieAlgebra, PaPair, Scalar, Subspace};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn span1(v: Vec<Scalar>) -> Subspace {
    Subspace::span(q(), v.len(), &[v])
}

fn criterion1() -> Outcome {
    let mut rng = rng(1);
    let one = q().one();
    for draw in 0..200 {
        let (a, b, c) = ex25_admissible(&mut rng);
        let pair = catalog::ex2_5(q(), a.clone(), b.clone(), c.clone()).map_err(|e| e.to_string())?;
        let v = pair.check_pa();
        ensure(v.is_ok(), || format!("draw {draw} ({a}, {b}, {c}): check_pa failed"))?;
        let ann_l = if b.is_zero() && c.is_zero() {
            span1(vec![one.clone(), -a.clone()])
        } else {
            span1(vec![c.clone(), -b.clone()])
        };
        let ann_r = if a.is_zero() && b.is_zero() {
            span1(vec![c.clone(), -one.clone()])
        } else {
            span1(vec![b.clone(), -a.clone()])
        };
        ensure(pair.ann_left() == ann_l, || {
            format!("draw {draw}: Ann_L = {:?}", pair.ann_left().basis())
        })?;
        ensure(pair.ann_right() == ann_r, || {
            format!("draw {draw}: Ann_R = {:?}", pair.ann_right().basis())
        })?;
        ensure(pair.h0() == ann_r, || format!("draw {draw}: H0 differs from Ann_R"))?;
        ensure(ann_l.dim() == 1 && ann_r.dim() == 1, || {
            format!("draw {draw}: dimension")
        })?;
    }
    for draw in 0..200 {
        let (a, b, c) = ex25_violating(&mut rng);
        let pair = catalog::ex2_5_unchecked(q(), a, b, c);
        ensure(!pair.check_pa().is_ok(), || {
            format!("violating draw {draw} passed check_pa")
        })?;
    }
    // The same-sign condition β(β−1) = αγ is inconsistent with the product
    // table whenever β ≠ 0: L(e1) and L(e2) fail to commute.
    let mut literal_rejected = 0;
    for _ in 0..20 {
        let beta = nonzero_rational(&mut rng);
        if beta == -one.clone() {
            continue;
        }
        let alpha = nonzero_rational(&mut rng);
        let gamma = &(&beta * &(&beta - &one)) / &alpha;
        literal_rejected += usize::from(!catalog::ex2_5_unchecked(q(), alpha, beta, gamma).check_pa().is_ok());
    }
    ensure(literal_rejected > 0, || {
        "same-sign condition unexpectedly consistent".into()
    })?;
    Ok(format!(
        "200 admissible with exact annihilators, 200 violating rejected; condition is β(β+1) = αγ ({literal_rejected} same-sign draws rejected)"
    ))
}

fn criterion2() -> Outcome {
    let mut rng = rng(2);
    let lambdas = [
        q().from_i64(1),
        q().from_i64(2),
        q().from_i64(-1),
        q().from_ratio(1, 2).unwrap(),
    ];
    let mut count = 0;
    for lambda in &lambdas {
        for _ in 0..10 {
            let (a, b, c) = (
                small_rational(&mut rng),
                small_rational(&mut rng),
                small_rational(&mut rng),
            );
            let pair = catalog::ex3_6(q(), lambda.clone(), a, b, c).map_err(|e| e.to_string())?;
            ensure(pair.check_pa().is_ok(), || format!("lambda {lambda}: check_pa failed"))?;
            ensure(!pair.all_left_mults_nilpotent(), || {
                format!("lambda {lambda}: L nilpotent")
            })?;
            let tr = pair.product().left_basis(0).trace().map_err(|e| e.to_string())?;
            let two_lambda = &q().from_i64(2) * lambda;
            ensure(tr == two_lambda, || format!("lambda {lambda}: tr L(e1) = {tr}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} builds over 4 values of lambda"))
}

fn criterion3() -> Outcome {
    let ex45 = catalog::ex4_5(q());
    ensure(ex45.check_pa().is_ok(), || "ex4.5 is not post-Lie".into())?;
    let report = check_sym_ad(&ex45);
    let two_e5 = vector::scale(&q().from_i64(2), &vector::unit(q(), 5, 4));
    for (form, v) in [
        ("operator", &report.operator),
        ("element", &report.element),
        ("rewritten", &report.rewritten),
    ] {
        let w = v
            .witnesses()
            .iter()
            .find(|w| w.is_at(&[3, 1, 3]))
            .ok_or_else(|| format!("ex4.5 {form} form: no witness at (e3,e1,e3)"))?;
        ensure(w.residual() == two_e5, || {
            format!("ex4.5 {form} form: residual {}", vector::format_basis(&w.residual()))
        })?;
    }
    let ex47 = catalog::ex4_7(q());
    ensure(ex47.check_pa().is_ok(), || "ex4.7 is not post-Lie".into())?;
    let v = check_ad_compatibility(&ex47);
    let e3 = vector::unit(q(), 3, 2);
    let w = v
        .witnesses()
        .iter()
        .find(|w| w.identity == Identity::AdAd && w.indices[..2] == [1, 2])
        .ok_or_else(|| "ex4.7: no [ad x, Ad y] = Ad[x,y] witness at (e2,e3)".to_string())?;
    ensure(w.lhs == e3 && vector::is_zero(&w.rhs), || format!("ex4.7 witness {w}"))?;
    Ok(format!("ex4.5 (e3,e1,e3) residual 2*e5 in all three forms; ex4.7 {w}"))
}

fn criterion4() -> Outcome {
    let mut rng = rng(4);
    let minus_half = q().from_ratio(-1, 2).unwrap();
    for draw in 0..500 {
        let family = draw % 6 + 1;
        let (params, pair) = random_family_member(&mut rng, family);
        let tag = || {
            format!(
                "{} {:?}",
                PA52_FAMILIES[family - 1],
                params.iter().map(ToString::to_string).collect::<Vec<_>>()
            )
        };
        ensure(pair.check_pa().is_ok(), || format!("{}: check_pa failed", tag()))?;
        ensure(
            pair.product().left_basis(2) == pair.n().ad_basis(2).scale(&minus_half),
            || format!("{}: L(e3) != -1/2 Ad(e3)", tag()),
        )?;
        ensure(pair.all_left_mults_nilpotent(), || {
            format!("{}: some L(x) not nilpotent", tag())
        })?;
        let ids = pair.heisenberg_pair_identities();
        ensure(
            !ids.fails(Identity::LeftKillsDerivedN) && !ids.fails(Identity::DerivedAnticommutes),
            || format!("{}: {:?}", tag(), ids.failed_identities()),
        )?;
        let sym = pair.product().symmetrized();
        let cpa = check_cpa(pair.g(), &sym).map_err(|e| e.to_string())?;
        ensure(cpa.is_ok(), || format!("{}: symmetrization is not CPA on g", tag()))?;
    }
    Ok("500 draws over families 1-6; [x,y]·z = −z·[x,y] (sign-corrected form)".into())
}

/// Pairs from the catalog: entries without parameters plus small integer
/// parameter grids for the parameterized ones.
fn catalog_pairs() -> Vec<(String, PaPair)> {
    let mut out = vec![
        ("ex4.5".to_string(), catalog::ex4_5(q())),
        ("ex4.7".to_string(), catalog::ex4_7(q())),
        ("lr.A4".to_string(), catalog::lr_a4(q())),
    ];
    for m in 1..=3 {
        out.push((
            format!("lr.halfbracket m={m}"),
            catalog::half_bracket_pair(&LieAlgebra::heisenberg(q(), m)),
        ));
    }
    let grid = [-1i64, 0, 1, 2];
    for (a, b, c) in itertools3(&grid) {
        if let Ok(p) = catalog::ex2_5(q(), q().from_i64(a), q().from_i64(b), q().from_i64(c)) {
            out.push((format!("ex2.5 ({a},{b},{c})"), p));
        }
    }
    for lambda in [1i64, 2, -1] {
        let p = catalog::ex3_6(q(), q().from_i64(lambda), q().from_i64(1), q().zero(), q().from_i64(-1)).unwrap();
        out.push((format!("ex3.6 lambda={lambda}"), p));
    }
    let small = [-1i64, 0, 1];
    for (fi, name) in PA52_FAMILIES.iter().enumerate() {
        let arity = catalog::entry(name).unwrap().params.len();
        let total = 3usize.pow(arity as u32);
        for idx in 0..total {
            let mut k = idx;
            let params: Vec<Scalar> = (0..arity)
                .map(|_| {
                    let v = small[k % 3];
                    k /= 3;
                    q().from_i64(v)
                })
                .collect();
            if let Ok(p) = catalog::pa52_from_vec(fi + 1, q(), &params) {
                out.push((format!("{name} {idx}"), p));
            }
        }
    }
    out
}

fn itertools3(grid: &[i64]) -> Vec<(i64, i64, i64)> {
    let mut v = Vec::new();
    for &a in grid {
        for &b in grid {
            for &c in grid {
                v.push((a, b, c));
            }
        }
    }
    v
}

fn criterion5() -> Outcome {
    let mut pairs = catalog_pairs();
    let mut rng = rng(5);
    for i in 0..100 {
        let (_, p) = random_family_member(&mut rng, i % 6 + 1);
        pairs.push((format!("fuzz {i}"), p));
    }
    let (mut g_hold, mut g_fail, mut n_hold, mut n_fail, mut skipped) = (0, 0, 0, 0, 0);
    for (name, pair) in &pairs {
        ensure(pair.check_pa().is_ok(), || format!("{name}: not post-Lie"))?;
        let report = check_sym_ad(pair);
        ensure(report.agree(), || format!("{name}: the three forms disagree"))?;
        if !(pair.g().is_at_most_two_step() && pair.n().is_at_most_two_step()) {
            skipped += 1;
            continue;
        }
        let sym = pair.product().symmetrized();
        let on_g = check_cpa(pair.g(), &sym).map_err(|e| e.to_string())?.is_ok();
        ensure(on_g == report.is_ok(), || {
            format!("{name}: CPA on g is {on_g}, condition is {}", report.is_ok())
        })?;
        let on_n = check_cpa(pair.n(), &sym).map_err(|e| e.to_string())?.is_ok();
        let cond_n = check_ad_compatibility(pair).is_ok();
        ensure(on_n == cond_n, || {
            format!("{name}: CPA on n is {on_n}, condition is {cond_n}")
        })?;
        let via_g = symmetrization::cpa_on_g(pair).map_err(|e| e.to_string())?.is_cpa();
        let via_n = symmetrization::cpa_on_n(pair).map_err(|e| e.to_string())?.is_cpa();
        ensure(via_g == on_g && via_n == on_n, || {
            format!("{name}: cpa_on_g/cpa_on_n disagree with check_cpa")
        })?;
        if pair.g().is_abelian() {
            let trivial = symmetrization::derived_n_acts_trivially(pair);
            ensure(trivial == on_n, || {
                format!("{name}: {{n,n}}·n = 0 is {trivial}, CPA on n is {on_n}")
            })?;
        }
        if on_g {
            g_hold += 1
        } else {
            g_fail += 1
        }
        if on_n {
            n_hold += 1
        } else {
            n_fail += 1
        }
    }
    ensure(g_fail > 0 && g_hold > 0 && n_fail > 0 && n_hold > 0, || {
        "one direction not exercised".into()
    })?;
    Ok(format!(
        "{} pairs, three forms agree on all; on g {g_hold} CPA / {g_fail} not, on n {n_hold} / {n_fail}; {skipped} outside the two-step hypothesis",
        pairs.len()
    ))
}

fn nilpotency_props(pair: &PaPair) -> Result<bool, String> {
    if !pair.g().is_nilpotent() {
        return Ok(false);
    }
    ensure(pair.n().is_solvable(), || "g nilpotent but n not solvable".into())?;
    if pair.h0().is_zero() {
        ensure(pair.n().is_nilpotent(), || {
            "g nilpotent, H0 = 0, n not nilpotent".into()
        })?;
    }
    Ok(true)
}

fn f3_finds() -> Result<Vec<PaPair>, String> {
    let f3 = Field::prime(3).unwrap();
    let heis = catalog::heis3(f3);
    let specs = [
        SearchSpec::new(heis.clone(), heis.clone(), Strategy::HomThroughDerivations),
        SearchSpec::new(LieAlgebra::abelian(f3, 2), catalog::r2(f3), Strategy::RawTensor),
        SearchSpec::new(
            LieAlgebra::abelian(f3, 2),
            LieAlgebra::abelian(f3, 2),
            Strategy::RawTensor,
        ),
        SearchSpec::new(catalog::r2(f3), catalog::r2(f3), Strategy::RawTensor),
        SearchSpec::new(
            LieAlgebra::abelian(f3, 3),
            heis.clone(),
            Strategy::HomThroughDerivations,
        ),
        SearchSpec::new(
            heis.clone(),
            LieAlgebra::abelian(f3, 3),
            Strategy::HomThroughDerivations,
        ),
    ];
    let mut out = Vec::new();
    for spec in specs {
        let spec = spec.map_err(|e| e.to_string())?;
        let res = ffsearch::enumerate_pa(&spec).map_err(|e| e.to_string())?;
        out.extend(res.structures);
    }
    Ok(out)
}

fn criterion6() -> Outcome {
    let mut checked = 0;
    let mut with_h0_zero = 0;
    let catalog = catalog_pairs();
    let finds = f3_finds()?;
    let total = catalog.len() + finds.len();
    for (name, pair) in catalog
        .iter()
        .map(|(n, p)| (n.clone(), p))
        .chain(finds.iter().enumerate().map(|(i, p)| (format!("F3 find {i}"), p)))
    {
        ensure(pair.check_pa().is_ok(), || format!("{name}: not post-Lie"))?;
        if nilpotency_props(pair).map_err(|e| format!("{name}: {e}"))? {
            checked += 1;
            with_h0_zero += usize::from(pair.h0().is_zero());
        }
    }
    let report = ffsearch::corroborate_heisenberg(3, &HeisenbergOptions::default()).map_err(|e| e.to_string())?;
    let bad: Vec<_> = report
        .violations
        .iter()
        .filter(|v| {
            matches!(
                v.property,
                ffsearch::HeisenbergProperty::NSolvable | ffsearch::HeisenbergProperty::H0Nilpotent
            )
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} violations in the F3 sweep", bad.len()))?;
    Ok(format!(
        "{total} pairs, {checked} with g nilpotent ({with_h0_zero} with H0 = 0), plus {} swept F3 structures; 0 violations",
        report.structures_checked
    ))
}

fn criterion7() -> Outcome {
    let f5 = Field::prime(5).unwrap();
    let spec =
        SearchSpec::new(LieAlgebra::abelian(f5, 2), catalog::r2(f5), Strategy::RawTensor).map_err(|e| e.to_string())?;
    let res = ffsearch::enumerate_pa(&spec).map_err(|e| e.to_string())?;
    let mut condition = 0;
    for a in 0..5i64 {
        for b in 0..5i64 {
            for c in 0..5i64 {
                if (b * (b + 1) - a * c).rem_euclid(5) == 0 {
                    condition += 1;
                    let p = catalog::ex2_5(f5, f5.from_i64(a), f5.from_i64(b), f5.from_i64(c)).unwrap();
                    ensure(res.structures.contains(&p), || {
                        format!("({a},{b},{c}) missing from F5 search")
                    })?;
                }
            }
        }
    }
    ensure(res.structures.len() == 30 && condition == 30, || {
        format!("F5: {} structures, {condition} parameter triples", res.structures.len())
    })?;
    let start = Instant::now();
    let report = ffsearch::corroborate_heisenberg(3, &HeisenbergOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("heis3 over F3 took {elapsed:?}")
    })?;
    ensure(report.standard_nominal == 3u128.pow(12), || {
        format!("nominal candidates {}", report.standard_nominal)
    })?;
    ensure(report.violations.is_empty(), || format!("{report}"))?;
    ensure(report.catalog_missing.is_empty(), || format!("{report}"))?;
    Ok(format!(
        "F5 dim-2: 30 = condition count; F3 (heis3,heis3): {} structures from 3^12 candidates in {:.2?}, {} catalog instances found, 0 violations",
        report.standard_count, elapsed, report.catalog_instances
    ))
}

/// Random candidates on heis5 kept if they pass `check_lr`. Unrestricted
/// symmetric forms mostly fail, so half the draws force `φ(·, e5) = 0`.
fn fuzz_lr_heis5(rng: &mut rand_chacha::ChaCha8Rng) -> Option<BilinearProduct> {
    let kill_center = rng.gen_bool(0.5);
    let prod = heis5_lr_candidate(rng, kill_center);
    check_lr(&LieAlgebra::heisenberg(q(), 2), &prod)
        .ok()?
        .is_ok()
        .then_some(prod)
}

fn criterion8() -> Outcome {
    let heis5 = LieAlgebra::heisenberg(q(), 2);
    let half = catalog::half_bracket_pair(&heis5);
    ensure(
        lr_completeness(&heis5, half.product()).map_err(|e| e.to_string())?,
        || "half-bracket on heis5 not complete".into(),
    )?;
    let mut rng = rng(8);
    let mut found = 0;
    for _ in 0..200 {
        if let Some(prod) = fuzz_lr_heis5(&mut rng) {
            found += 1;
            ensure(lr_completeness(&heis5, &prod).map_err(|e| e.to_string())?, || {
                "fuzzed LR structure on heis5 not complete".into()
            })?;
        }
    }
    ensure(found > 0, || "fuzzing found no LR structures".into())?;
    let a4 = catalog::lr_a4(q());
    let complete = lr_completeness(a4.n(), a4.product()).map_err(|e| e.to_string())?;
    ensure(!complete, || "lr.A4 reported complete".into())?;
    Ok(format!(
        "half-bracket and {found} fuzzed LR structures on heis5 complete; lr.A4 non-complete"
    ))
}

fn filiform(n: usize) -> (LieAlgebra, Vec<Vec<i64>>) {
    let entries: Vec<_> = (1..n - 1).map(|i| (0, i, i + 1, 1)).collect();
    let alg = LieAlgebra::from_int_brackets(q(), n, &entries).unwrap();
    let mut degrees = vec![vec![1, 0]];
    degrees.extend((1..n).map(|i| vec![i as i64 - 1, 1]));
    (alg, degrees)
}

fn criterion9() -> Outcome {
    let mut gradings = Vec::new();
    for m in 1..=3 {
        let g = Grading::heisenberg_standard(LieAlgebra::heisenberg(q(), m), m).map_err(|e| e.to_string())?;
        ensure(grading::grading_check(&g).is_ok(), || {
            format!("heis{} standard grading fails", 2 * m + 1)
        })?;
        gradings.push(g);
    }
    for n in 3..=6 {
        let (alg, deg) = filiform(n);
        let g = Grading::new(alg, deg).map_err(|e| e.to_string())?;
        ensure(grading::grading_check(&g).is_ok(), || {
            format!("filiform {n} grading fails")
        })?;
        gradings.push(g);
    }
    let bounds: Vec<BigUint> = (1..=3)
        .map(|k| {
            let x = (1..=k).map(|i| vec![i as i64]).collect();
            grading::class_bound(&x).unwrap()
        })
        .collect();
    ensure(
        bounds == [BigUint::from(1u32), BigUint::from(16u32), BigUint::from(6561u32)],
        || format!("bounds {bounds:?}"),
    )?;
    let mut free = 0;
    for g in &gradings {
        let x = grading::support(g);
        if !grading::is_arithmetically_free(&x) {
            continue;
        }
        free += 1;
        let class = g
            .algebra()
            .nilpotency_class()
            .class()
            .ok_or("free grading on non-nilpotent algebra")?;
        let bound = grading::class_bound(&x).map_err(|e| e.to_string())?;
        ensure(grading::within_bound(class, &bound), || {
            format!("class {class} exceeds bound {bound}")
        })?;
    }
    Ok(format!(
        "bounds 1, 16, 6561; {free} arithmetically-free gradings within bound"
    ))
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 9] = [
        ("ex2.5 regression", criterion1, Some(Duration::from_secs(1))),
        ("ex3.6 non-nilpotent L", criterion2, Some(Duration::from_secs(1))),
        ("counterexample witnesses", criterion3, Some(Duration::from_secs(1))),
        ("Heisenberg-pair families", criterion4, Some(Duration::from_secs(10))),
        ("symmetrization equivalences", criterion5, Some(Duration::from_secs(10))),
        ("solvability and nilpotency of n", criterion6, None),
        ("finite-field corroboration", criterion7, None),
        ("LR completeness", criterion8, None),
        ("gradings", criterion9, Some(Duration::from_secs(1))),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match (result, budget) {
            (Ok(_), Some(b)) if elapsed >= *b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {} ({name}): PASS [{elapsed:.2?}] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{elapsed:.2?}] {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
