//! The `verify` suite: every desk-checkable identity, replayed with exact
//! arithmetic and reported as one named pass/fail line per check.
//!
//! Randomized checks draw from a ChaCha8 stream seeded with the suite seed
//! mixed with the check name, so results do not depend on scheduling.

use crate::collections::{
    apply_group_element, apply_word, gram, is_exceptional_collection, mutate, orbit_search,
    sigma23_square_check, standard_collection, BraidLetter, BraidWord, GroupElement,
};
use crate::k0::{
    bundle_representative, enumerate_exceptional_classes, euler_form, serre_twist,
    torsion_class_oc, EnumerationBox, K0Class,
};
use crate::surface::{DivisorClass, SurfaceParams};
use crate::tower::{
    check_table_consistency, f_i_class, restriction_profile, tower_entry, TowerKind,
};
use crate::twist::{compose_adjacent_twists, tensor_by_c, SphericalClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::time::Instant;

const F2: SurfaceParams = SurfaceParams::F2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: u32,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{verdict}  {:<32} {:>9.2} ms  {}",
                c.name, c.millis, c.detail
            );
        }
        let total = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{total}/{} checks passed", self.checks.len());
        out
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type CheckFn = fn(SurfaceParams, &mut ChaCha8Rng) -> Result<String, String>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("adjacent-twists-tensor-C", adjacent_twists),
    ("braid-relations", braid_relations),
    ("double-twist-trivial", double_twist),
    ("euler-calibration", euler_calibration),
    ("ext-table-consistency", ext_table_consistency),
    ("mutation-round-trip", mutation_round_trip),
    ("orbit-search-round-trip", orbit_round_trip),
    ("rank-parity-enumeration", rank_parity),
    ("remark-Fn-negative-degree", negative_degree_f3),
    ("riemann-roch-box", riemann_roch_box),
    ("serre-duality-cohomology", serre_duality_cohomology),
    ("serre-duality-form", serre_duality_form),
    ("sigma23-square-F0", sigma23),
    ("standard-collection", standard_collection_check),
    ("tower-class-invariance", tower_invariance),
    ("tower-twist-consistency", tower_twists),
    ("twist-fixed-point", twist_fixed_point),
    ("twist-reflection", twist_reflection),
];

/// Names of all checks, in report order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _)| *name).collect()
}

fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// Runs every check; the generic surface checks use `s`, the rest fix the
/// surface they are about.
pub fn verify_suite(s: SurfaceParams, seed: u64) -> VerifyReport {
    let mut checks: Vec<CheckResult> = CHECKS
        .par_iter()
        .map(|(name, check)| {
            let mut rng = rng_for(seed, name);
            let start = Instant::now();
            let outcome = check(s, &mut rng);
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult {
                name: name.to_string(),
                passed,
                detail,
                millis,
            }
        })
        .collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    VerifyReport {
        n: s.n,
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn e2s(e: crate::Error) -> String {
    e.to_string()
}

fn random_class_f2(rng: &mut ChaCha8Rng, bound: i64) -> K0Class {
    let mut c = || rng.gen_range(-bound..=bound);
    K0Class::new(c(), DivisorClass::new(c(), c()), 2 * c())
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| BraidLetter::all()[rng.gen_range(0..6)])
        .collect()
}

/// Line bundles with `|x|, |y| ≤ 3` plus higher-rank exceptional classes
/// found by enumeration.
pub fn tower_corpus() -> Vec<K0Class> {
    let mut corpus: Vec<K0Class> = (-3..=3)
        .flat_map(|x| (-3..=3).map(move |y| K0Class::line_bundle(F2, DivisorClass::new(x, y))))
        .collect();
    corpus.extend(enumerate_exceptional_classes(
        F2,
        &EnumerationBox::symmetric((3, 7), 5),
    ));
    corpus
}

fn euler_calibration(_: SurfaceParams, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let o = K0Class::STRUCTURE_SHEAF;
    ensure!(euler_form(F2, o, o) == Ok(1), "χ(O, O) ≠ 1");
    for a in -10..=10 {
        let u = torsion_class_oc(a);
        ensure!(euler_form(F2, u, u) == Ok(2), "χ(O_C({a}), O_C({a})) ≠ 2");
    }
    for _ in 0..500 {
        let mut c = || rng.gen_range(-10..=10);
        let d = DivisorClass::new(c(), c());
        let e = DivisorClass::new(c(), c());
        let form = euler_form(F2, K0Class::line_bundle(F2, d), K0Class::line_bundle(F2, e))
            .map_err(e2s)?;
        let h = F2.line_bundle_cohomology(e - d);
        ensure!(
            form == h.euler_char(),
            "χ(O({d}), O({e})) = {form} but h• = {h}"
        );
    }
    Ok("χ(O,O) = 1; 21 spherical classes; 500 line-bundle pairs".into())
}

fn riemann_roch_box(s: SurfaceParams, _: &mut ChaCha8Rng) -> Result<String, String> {
    for x in -12..=12 {
        for y in -12..=12 {
            let d = DivisorClass::new(x, y);
            let h = s.line_bundle_cohomology(d);
            ensure!(
                h.euler_char() == s.euler_char_line_bundle(d),
                "{s}: h•(O({d})) = {h} disagrees with Riemann–Roch"
            );
        }
    }
    Ok(format!("{s}, |x|,|y| ≤ 12"))
}

fn serre_duality_cohomology(s: SurfaceParams, _: &mut ChaCha8Rng) -> Result<String, String> {
    let k = s.canonical_class();
    for x in -12..=12 {
        for y in -12..=12 {
            let d = DivisorClass::new(x, y);
            ensure!(
                s.line_bundle_cohomology(d).reversed() == s.line_bundle_cohomology(k - d),
                "{s}: Serre duality fails for O({d})"
            );
        }
    }
    Ok(format!("{s}, |x|,|y| ≤ 12"))
}

fn serre_duality_form(s: SurfaceParams, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let draw = |rng: &mut ChaCha8Rng| {
        let mut c = || rng.gen_range(-20..=20);
        let c1 = DivisorClass::new(c(), c());
        let parity = s.intersect(c1, c1).rem_euclid(2);
        K0Class::new(c(), c1, 2 * c() + parity)
    };
    for _ in 0..1000 {
        let (v, w) = (draw(rng), draw(rng));
        let lhs = euler_form(s, v, w).map_err(e2s)?;
        let rhs = euler_form(s, w, serre_twist(s, v).map_err(e2s)?).map_err(e2s)?;
        ensure!(lhs == rhs, "χ({v}, {w}) = {lhs} but χ(w, v⊗ω) = {rhs}");
    }
    Ok(format!("{s}, 1000 random pairs"))
}

fn double_twist(_: SurfaceParams, rng: &mut ChaCha8Rng) -> Result<String, String> {
    for _ in 0..1000 {
        let a = SphericalClass::new(rng.gen_range(-50..=50));
        let v = random_class_f2(rng, 30);
        let back = a.twist(a.twist(v).map_err(e2s)?).map_err(e2s)?;
        ensure!(back == v, "T² along O_C({}) moves {v}", a.a);
    }
    Ok("1000 random (a, v)".into())
}

fn twist_reflection(_: SurfaceParams, rng: &mut ChaCha8Rng) -> Result<String, String> {
    for _ in 0..1000 {
        let a = SphericalClass::new(rng.gen_range(-50..=50));
        let v = random_class_f2(rng, 30);
        let u = a.class();
        let before = euler_form(F2, u, v).map_err(e2s)?;
        let after = euler_form(F2, u, a.twist(v).map_err(e2s)?).map_err(e2s)?;
        ensure!(after == -before, "χ(u, Tv) = {after}, χ(u, v) = {before}");
    }
    Ok("1000 random (a, v)".into())
}

fn adjacent_twists(_: SurfaceParams, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let basis = [
        K0Class::STRUCTURE_SHEAF,
        K0Class::new(0, DivisorClass::F, 0),
        K0Class::new(0, DivisorClass::C, 0),
        K0Class::new(0, DivisorClass::ZERO, 2),
    ];
    let mut samples: Vec<(i64, K0Class)> = (-5..=5).flat_map(|a| basis.map(|v| (a, v))).collect();
    samples.extend((0..1000).map(|_| (rng.gen_range(-50..=50), random_class_f2(rng, 30))));
    for (a, v) in &samples {
        let lhs = compose_adjacent_twists(SphericalClass::new(*a), *v).map_err(e2s)?;
        let rhs = tensor_by_c(*v).map_err(e2s)?;
        ensure!(
            lhs == rhs,
            "T_(a−1)T_a({v}) = {lhs} ≠ v⊗O(C) = {rhs} at a = {a}"
        );
    }
    Ok(format!("lattice basis and {} samples", samples.len()))
}

fn twist_fixed_point(_: SurfaceParams, _: &mut ChaCha8Rng) -> Result<String, String> {
    let o = K0Class::STRUCTURE_SHEAF;
    let t = SphericalClass::new(-1).twist(o).map_err(e2s)?;
    ensure!(t == o, "T_(O_C(−1)) O = {t}");
    Ok("T_(O_C(−1)) [O] = [O]".into())
}

fn tower_invariance(_: SurfaceParams, _: &mut ChaCha8Rng) -> Result<String, String> {
    let corpus = tower_corpus();
    for v in &corpus {
        for i in -6..=10 {
            let e = tower_entry(*v, i).map_err(e2s)?;
            ensure!(e.total == *v, "[E_{i}] = {} ≠ {v}", e.total);
        }
    }
    Ok(format!("{} classes, i ∈ [−6, 10]", corpus.len()))
}

fn tower_twists(_: SurfaceParams, _: &mut ChaCha8Rng) -> Result<String, String> {
    let corpus = tower_corpus();
    for v in &corpus {
        let p = restriction_profile(*v).map_err(e2s)?;
        for i in 0..=8 {
            let a = SphericalClass::new(p.b0 + i - 1);
            let fi = f_i_class(*v, i).map_err(e2s)?;
            let ei = tower_entry(*v, i).map_err(e2s)?.total;
            let prev = tower_entry(*v, i - 1).map_err(e2s)?.total;
            ensure!(
                a.inverse_twist(fi).map_err(e2s)? == ei,
                "E_{i} ≠ T'F_{i} for {v}"
            );
            ensure!(
                a.twist(fi).map_err(e2s)? == prev,
                "E_{} ≠ TF_{i} for {v}",
                i - 1
            );
        }
    }
    Ok(format!("{} classes, i ∈ [0, 8]", corpus.len()))
}

fn ext_table_consistency(_: SurfaceParams, _: &mut ChaCha8Rng) -> Result<String, String> {
    let mut checked = 0;
    for v in tower_corpus() {
        for i in 0..=10 {
            if tower_entry(v, i).map_err(e2s)?.kind == TowerKind::SheafWithTorsion {
                check_table_consistency(v, i).map_err(e2s)?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} torsion entries × 9 pairings"))
}

fn standard_collection_check(_: SurfaceParams, _: &mut ChaCha8Rng) -> Result<String, String> {
    let coll = standard_collection();
    for i in 0..4 {
        for j in 0..i {
            let d = coll.classes[j].c1 - coll.classes[i].c1;
            let h = F2.line_bundle_cohomology(d);
            ensure!(
                h == Default::default(),
                "h•(O({d})) = {h} for the pair ({i}, {j})"
            );
        }
    }
    let g = gram(F2, &coll).map_err(e2s)?;
    ensure!(g[0] == [1, 2, 4, 6], "first Gram row {:?}", g[0]);
    ensure!(
        is_exceptional_collection(F2, &coll),
        "Gram {g:?} not unit upper-triangular"
    );
    Ok("six downward cohomologies vanish; first row (1, 2, 4, 6)".into())
}

fn mutation_round_trip(_: SurfaceParams, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let std = standard_collection();
    for _ in 0..100 {
        let c = apply_word(F2, &std, &random_word(rng, 8)).map_err(e2s)?;
        ensure!(
            is_exceptional_collection(F2, &c),
            "orbit member {c} not exceptional"
        );
        for k in 1..=3 {
            let m = mutate(F2, &c, k, 1).map_err(e2s)?;
            ensure!(
                mutate(F2, &m, k, -1).map_err(e2s)? == c,
                "L then R at {k} moves {c}"
            );
        }
    }
    Ok("100 orbit members × 3 positions".into())
}

fn braid_relations(_: SurfaceParams, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let std = standard_collection();
    let w = |ps: [u8; 3]| -> BraidWord {
        ps.map(|p| BraidLetter::left(p).expect("position in range"))
            .into_iter()
            .collect()
    };
    for _ in 0..100 {
        let c = apply_word(F2, &std, &random_word(rng, 8)).map_err(e2s)?;
        for k in 1..=2u8 {
            let lhs = apply_word(F2, &c, &w([k, k + 1, k])).map_err(e2s)?;
            let rhs = apply_word(F2, &c, &w([k + 1, k, k + 1])).map_err(e2s)?;
            ensure!(lhs == rhs, "braid relation at {k} fails on {c}");
        }
    }
    Ok("σ1σ2σ1 = σ2σ1σ2 and σ2σ3σ2 = σ3σ2σ3 on 100 orbit members".into())
}

fn orbit_round_trip(_: SurfaceParams, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let std = standard_collection();
    for _ in 0..50 {
        let word = random_word(rng, 5);
        let signs = [0; 4].map(|_: u8| rng.gen_range(0..2u8));
        let src = apply_group_element(F2, &std, &GroupElement { signs, word }).map_err(e2s)?;
        let g = orbit_search(F2, &src, &std, 5).map_err(e2s)?;
        ensure!(
            apply_group_element(F2, &src, &g).map_err(e2s)? == std,
            "certificate {g} does not map {src} to the standard collection"
        );
    }
    Ok("50 random words of length ≤ 5 at depth 5".into())
}

fn rank_parity(_: SurfaceParams, _: &mut ChaCha8Rng) -> Result<String, String> {
    let bounds = EnumerationBox::symmetric((-10, 10), 10);
    let classes = enumerate_exceptional_classes(F2, &bounds);
    for v in &classes {
        ensure!(v.rank != 0, "rank-zero exceptional class {v}");
        let b = bundle_representative(F2, *v).map_err(e2s)?;
        ensure!(
            b.rank > 0,
            "representative {b} of {v} has non-positive rank"
        );
    }
    Ok(format!("{} classes, none of rank 0", classes.len()))
}

fn negative_degree_f3(_: SurfaceParams, _: &mut ChaCha8Rng) -> Result<String, String> {
    let f3 = SurfaceParams::new(3);
    let l = DivisorClass::new(2, 1);
    let h = f3.line_bundle_cohomology(l);
    let chi = euler_form(f3, K0Class::STRUCTURE_SHEAF, K0Class::line_bundle(f3, l)).map_err(e2s)?;
    let degree = f3.intersect(l, DivisorClass::C);
    ensure!(h.h0 == 3, "h⁰(O(2F+C)) = {} on F_3", h.h0);
    ensure!(chi == 3, "χ(O, O(2F+C)) = {chi} on F_3");
    ensure!(degree == -1, "(2F+C)·C = {degree} on F_3");
    Ok("F_3: h⁰ = 3, χ = 3, L·C = −1".into())
}

fn sigma23(_: SurfaceParams, _: &mut ChaCha8Rng) -> Result<String, String> {
    let rep = sigma23_square_check().map_err(e2s)?;
    ensure!(rep.passed, "σ₂₃² check failed: {rep:?}");
    Ok("χ vanishes both ways; σ₂² fixes (O, O(0,1), O(1,0), O(1,1))".into())
}
