//! Acceptance suite. Each criterion runs in isolation, prints one
//! `PASS`/`FAIL` line, and the process exits non-zero if any failed.
//!
//! Run with `cargo test -p hirzebruch --test acceptance`.

use hirzebruch::collections::{
    apply_group_element, apply_word, gram, is_exceptional_collection, mutate, orbit_search,
    sigma23_square_check, standard_collection, BraidLetter, BraidWord, Collection4, GroupElement,
};
use hirzebruch::k0::{
    bundle_representative, enumerate_exceptional_classes, euler_form, torsion_class_oc,
    EnumerationBox,
};
use hirzebruch::tower::{check_table_consistency, tower_entry, TowerKind};
use hirzebruch::twist::{compose_adjacent_twists, tensor_by_c, twist_class, SphericalClass};
use hirzebruch::{DivisorClass, K0Class, SurfaceParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

const F2: SurfaceParams = SurfaceParams::F2;
const O: K0Class = K0Class::STRUCTURE_SHEAF;

type Criterion = fn() -> Result<String, String>;

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x00ac_ce97 + criterion)
}

fn o(s: SurfaceParams, x: i64, y: i64) -> K0Class {
    K0Class::line_bundle(s, DivisorClass::new(x, y))
}

fn random_class(rng: &mut ChaCha8Rng) -> K0Class {
    let mut c = || rng.gen_range(-40..=40);
    K0Class::new(c(), DivisorClass::new(c(), c()), 2 * c())
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| BraidLetter::all()[rng.gen_range(0..6)])
        .collect()
}

/// Exact χ of a line-bundle pair by direct HRR on the Picard lattice of 𝔽₂:
/// χ(O(D), O(E)) = 1 + ½ (E−D)·(E−D−K) with K = −4F − 2C.
fn chi_line_bundles_rr(d: (i64, i64), e: (i64, i64)) -> i64 {
    let (x, y) = (e.0 - d.0, e.1 - d.1);
    let (kx, ky) = (x + 4, y + 2);
    let dot = x * ky + kx * y - 2 * y * ky;
    1 + dot / 2
}

/// Line bundles with |x|, |y| ≤ 3 plus higher-rank classes from enumeration.
fn tower_corpus() -> Vec<K0Class> {
    let mut corpus: Vec<K0Class> = (-3..=3)
        .flat_map(|x| (-3..=3).map(move |y| o(F2, x, y)))
        .collect();
    corpus.extend(enumerate_exceptional_classes(
        F2,
        &EnumerationBox::symmetric((2, 6), 4),
    ));
    corpus
}

fn c1_euler_calibration() -> Result<String, String> {
    let start = Instant::now();
    if euler_form(F2, O, O) != Ok(1) {
        return Err("χ(O, O) ≠ 1".into());
    }
    for a in -10..=10 {
        let u = torsion_class_oc(a);
        if euler_form(F2, u, u) != Ok(2) {
            return Err(format!("χ(O_C({a}), O_C({a})) ≠ 2"));
        }
    }
    let mut rng = rng(1);
    for _ in 0..500 {
        let mut c = || rng.gen_range(-15..=15);
        let (d, e) = ((c(), c()), (c(), c()));
        let form = euler_form(F2, o(F2, d.0, d.1), o(F2, e.0, e.1)).map_err(|e| e.to_string())?;
        let h = F2.line_bundle_cohomology(DivisorClass::new(e.0 - d.0, e.1 - d.1));
        let alt = h.h0 - h.h1 + h.h2;
        if form != alt || form != chi_line_bundles_rr(d, e) {
            return Err(format!("χ(O{d:?}, O{e:?}): form {form}, cohomology {alt}"));
        }
    }
    within(start, Duration::from_secs(1), "1 s")?;
    Ok(format!("500 pairs in {:?}", start.elapsed()))
}

fn within(start: Instant, bound: Duration, label: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t < bound {
        Ok(())
    } else {
        Err(format!("took {t:?}, bound {label}"))
    }
}

fn c2_reflection() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = rng(2);
    for _ in 0..1000 {
        let a = rng.gen_range(-60..=60);
        let v = random_class(&mut rng);
        let sa = SphericalClass::new(a);
        let t = twist_class(sa, v).map_err(|e| e.to_string())?;
        if twist_class(sa, t) != Ok(v) {
            return Err(format!("double twist moves {v} at a = {a}"));
        }
        // χ(O_C(a), w) = r(a+1) − c₁·C on 𝔽₂, computed here by hand.
        let chi_u = |w: K0Class| w.rank * (a + 1) - (w.c1.x - 2 * w.c1.y);
        if chi_u(t) != -chi_u(v) || euler_form(F2, sa.class(), v) != Ok(chi_u(v)) {
            return Err(format!("reflection fails for {v} at a = {a}"));
        }
    }
    within(start, Duration::from_secs(1), "1 s")?;
    Ok(format!("1000 samples in {:?}", start.elapsed()))
}

fn c3_composition() -> Result<String, String> {
    let basis = [
        O,
        K0Class::new(0, DivisorClass::F, 0),
        K0Class::new(0, DivisorClass::C, 0),
        K0Class::new(0, DivisorClass::ZERO, 2),
    ];
    let mut rng = rng(3);
    let mut samples: Vec<(i64, K0Class)> = basis
        .iter()
        .map(|v| (rng.gen_range(-20..=20), *v))
        .collect();
    samples.extend((0..1000).map(|_| (rng.gen_range(-60..=60), random_class(&mut rng))));
    for (a, v) in samples {
        let lhs = compose_adjacent_twists(SphericalClass::new(a), v).map_err(|e| e.to_string())?;
        // v ⊗ O(C): c₁ += rC, 2ch₂ += 2c₁·C + r C² with C² = −2.
        let by_hand = K0Class::new(
            v.rank,
            DivisorClass::new(v.c1.x, v.c1.y + v.rank),
            v.ch2_x2 + 2 * (v.c1.x - 2 * v.c1.y) - 2 * v.rank,
        );
        if lhs != by_hand || tensor_by_c(v) != Ok(by_hand) {
            return Err(format!(
                "composite at a = {a} sends {v} to {lhs}, expected {by_hand}"
            ));
        }
    }
    Ok("4 basis vectors and 1000 samples".into())
}

fn c4_tower_invariance() -> Result<String, String> {
    let start = Instant::now();
    let corpus = tower_corpus();
    if corpus.len() < 20 || !corpus.iter().any(|v| v.rank > 1) {
        return Err(format!("corpus too small: {}", corpus.len()));
    }
    for v in &corpus {
        if euler_form(F2, *v, *v) != Ok(1) {
            return Err(format!("corpus member {v} not exceptional"));
        }
        for i in -6..=10 {
            let e = tower_entry(*v, i).map_err(|e| e.to_string())?;
            if e.total != *v {
                return Err(format!("[E_{i}] = {} for {v}", e.total));
            }
        }
    }
    within(start, Duration::from_secs(1), "1 s")?;
    Ok(format!("{} classes in {:?}", corpus.len(), start.elapsed()))
}

fn c5_fixed_point() -> Result<String, String> {
    match twist_class(SphericalClass::new(-1), O) {
        Ok(v) if v == O => Ok("T_(O_C(−1)) [O] = [O]".into()),
        other => Err(format!("got {other:?}")),
    }
}

fn c6_ext_table() -> Result<String, String> {
    let mut count = 0;
    for v in tower_corpus() {
        for i in -6..=10 {
            let e = tower_entry(v, i).map_err(|e| e.to_string())?;
            if e.kind == TowerKind::SheafWithTorsion {
                check_table_consistency(v, i).map_err(|e| format!("{v}, i = {i}: {e}"))?;
                count += 1;
            }
        }
    }
    if count == 0 {
        return Err("no torsion entries in corpus".into());
    }
    Ok(format!("{count} entries, nine pairings each"))
}

fn c7_standard_collection() -> Result<String, String> {
    let coll = standard_collection();
    let divisors = [(0, 0), (1, 0), (2, 1), (3, 1)];
    for (k, d) in divisors.iter().enumerate() {
        if coll.classes[k] != o(F2, d.0, d.1) {
            return Err(format!("entry {k} is {}", coll.classes[k]));
        }
    }
    let mut vanishing = 0;
    for i in 0..4 {
        for j in 0..i {
            let (di, dj) = (divisors[i], divisors[j]);
            let h = F2.line_bundle_cohomology(DivisorClass::new(dj.0 - di.0, dj.1 - di.1));
            if (h.h0, h.h1, h.h2) != (0, 0, 0) {
                return Err(format!("Ext•(E{i}, E{j}) = {h}"));
            }
            vanishing += 1;
        }
    }
    let g = gram(F2, &coll).map_err(|e| e.to_string())?;
    for i in 0..4 {
        for j in 0..4 {
            let (di, dj) = (divisors[i], divisors[j]);
            let expected = match i.cmp(&j) {
                std::cmp::Ordering::Greater => 0,
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Less => F2
                    .line_bundle_cohomology(DivisorClass::new(dj.0 - di.0, dj.1 - di.1))
                    .euler_char(),
            };
            if g[i][j] != expected {
                return Err(format!("Gram[{i}][{j}] = {}, expected {expected}", g[i][j]));
            }
        }
    }
    if g[0] != [1, 2, 4, 6] {
        return Err(format!("first row {:?}", g[0]));
    }
    Ok(format!(
        "{vanishing} vanishing Ext vectors, first row {:?}",
        g[0]
    ))
}

fn c8_mutation_algebra() -> Result<String, String> {
    let mut rng = rng(8);
    let std = standard_collection();
    let word = |ps: [u8; 3]| -> BraidWord {
        ps.into_iter()
            .map(|p| BraidLetter::left(p).unwrap())
            .collect()
    };
    for _ in 0..100 {
        let c = apply_word(F2, &std, &random_word(&mut rng, 8)).map_err(|e| e.to_string())?;
        if !is_exceptional_collection(F2, &c) {
            return Err(format!("{c} not exceptional"));
        }
        for k in 1..=3 {
            let l = mutate(F2, &c, k, 1).map_err(|e| e.to_string())?;
            let r = mutate(F2, &c, k, -1).map_err(|e| e.to_string())?;
            if mutate(F2, &l, k, -1) != Ok(c) || mutate(F2, &r, k, 1) != Ok(c) {
                return Err(format!("round trip at {k} fails on {c}"));
            }
        }
        for k in 1..=2u8 {
            let a = apply_word(F2, &c, &word([k, k + 1, k])).map_err(|e| e.to_string())?;
            let b = apply_word(F2, &c, &word([k + 1, k, k + 1])).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("braid relation at {k} fails on {c}"));
            }
        }
    }
    Ok("100 orbit members".into())
}

/// A separate model of the orbit: each object is a coordinate vector over
/// the standard collection, paired by a Gram matrix computed from line-bundle
/// cohomology. Shares no code with the search or its mutation routines.
mod coords {
    use super::*;

    pub type Vec4 = [i64; 4];

    pub struct Model {
        gram: [[i64; 4]; 4],
    }

    impl Model {
        pub fn new() -> Self {
            let d = [(0i64, 0i64), (1, 0), (2, 1), (3, 1)];
            let mut gram = [[0; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    let h = F2.line_bundle_cohomology(DivisorClass::new(
                        d[j].0 - d[i].0,
                        d[j].1 - d[i].1,
                    ));
                    gram[i][j] = h.h0 - h.h1 + h.h2;
                }
            }
            Model { gram }
        }

        pub fn chi(&self, a: &Vec4, b: &Vec4) -> i64 {
            (0..4)
                .flat_map(|i| (0..4).map(move |j| (i, j)))
                .map(|(i, j)| a[i] * self.gram[i][j] * b[j])
                .sum()
        }

        fn step(&self, c: &mut [Vec4; 4], k: usize, left: bool) {
            let (a, b) = (c[k - 1], c[k]);
            let chi = self.chi(&a, &b);
            let combo = |x: &Vec4, y: &Vec4| -> Vec4 { std::array::from_fn(|t| x[t] - chi * y[t]) };
            if left {
                c[k - 1] = combo(&b, &a);
                c[k] = a;
            } else {
                c[k - 1] = b;
                c[k] = combo(&a, &b);
            }
        }

        pub fn act(&self, c: &[Vec4; 4], signs: &[u8; 4], word: &[(usize, bool)]) -> [Vec4; 4] {
            let mut out = *c;
            for &(k, left) in word {
                self.step(&mut out, k, left);
            }
            for (v, s) in out.iter_mut().zip(signs) {
                if s % 2 == 1 {
                    *v = v.map(|t| -t);
                }
            }
            out
        }

        pub fn to_classes(c: &[Vec4; 4]) -> [K0Class; 4] {
            let basis = standard_collection().classes;
            c.map(|v| {
                (0..4).fold(K0Class::ZERO, |acc, i| {
                    acc + K0Class::new(
                        v[i] * basis[i].rank,
                        v[i] * basis[i].c1,
                        v[i] * basis[i].ch2_x2,
                    )
                })
            })
        }
    }

    pub fn letters(word: &BraidWord) -> Vec<(usize, bool)> {
        // The wire form [k, ±1] is the one documented interface they share.
        let json = serde_json::to_value(word).unwrap();
        json.as_array()
            .unwrap()
            .iter()
            .map(|l| (l[0].as_u64().unwrap() as usize, l[1].as_i64().unwrap() > 0))
            .collect()
    }
}

fn c9_transitivity() -> Result<String, String> {
    use coords::*;
    let start = Instant::now();
    let model = Model::new();
    let unit: [Vec4; 4] = std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as i64));
    let std = standard_collection();
    if Model::to_classes(&unit) != std.classes {
        return Err("coordinate model disagrees with the standard classes".into());
    }
    let mut rng = rng(9);
    for _ in 0..50 {
        let word = random_word(&mut rng, 5);
        let signs: [u8; 4] = std::array::from_fn(|_| rng.gen_range(0..2));
        let src_coords = model.act(&unit, &signs, &letters(&word));
        let src = Collection4 {
            classes: Model::to_classes(&src_coords),
        };
        let g = GroupElement { signs, word };
        if apply_group_element(F2, &std, &g) != Ok(src) {
            return Err(format!("library and model disagree on {g}"));
        }
        let cert = orbit_search(F2, &src, &std, 5).map_err(|e| format!("{src}: {e}"))?;
        let back = model.act(&src_coords, &cert.signs, &letters(&cert.word));
        if back != unit {
            return Err(format!(
                "certificate {cert} fails independent re-application from {src}"
            ));
        }
    }
    within(start, Duration::from_secs(30), "30 s")?;
    Ok(format!("50 words in {:?}", start.elapsed()))
}

fn c10_rank_parity() -> Result<String, String> {
    let start = Instant::now();
    let classes = enumerate_exceptional_classes(F2, &EnumerationBox::symmetric((-10, 10), 10));
    if classes.is_empty() {
        return Err("enumeration returned nothing".into());
    }
    for v in &classes {
        if v.rank == 0 {
            return Err(format!("rank-zero class {v}"));
        }
        let b = bundle_representative(F2, *v).map_err(|e| format!("{v}: {e}"))?;
        if b.rank <= 0 || (b != *v && b != -*v) {
            return Err(format!("representative {b} of {v}"));
        }
    }
    within(start, Duration::from_secs(5), "5 s")?;
    // Brute-force completeness on a sub-box: scan ch₂ directly.
    let sub = EnumerationBox::symmetric((-4, 4), 4);
    let found = enumerate_exceptional_classes(F2, &sub);
    let mut brute = Vec::new();
    for r in -4..=4 {
        for x in -4..=4 {
            for y in -4..=4 {
                for h in -200..=200 {
                    let v = K0Class::new(r, DivisorClass::new(x, y), h);
                    if v.satisfies_parity(F2) && euler_form(F2, v, v) == Ok(1) {
                        brute.push(v);
                    }
                }
            }
        }
    }
    brute.sort();
    if brute != found {
        return Err(format!(
            "sub-box: enumeration {} vs scan {}",
            found.len(),
            brute.len()
        ));
    }
    Ok(format!(
        "{} classes, no rank 0, in {:?}",
        classes.len(),
        start.elapsed()
    ))
}

fn c11_negative_degree_f3() -> Result<String, String> {
    let f3 = SurfaceParams::new(3);
    let l = DivisorClass::new(2, 1);
    let h = f3.line_bundle_cohomology(l);
    let chi = euler_form(f3, O, K0Class::line_bundle(f3, l)).map_err(|e| e.to_string())?;
    // By hand: L·C = 2·1 + 0 − 3·1·1 = −1.
    let degree = f3.intersect(l, DivisorClass::C);
    if (h.h0, chi, degree) != (3, 3, -1) {
        return Err(format!("h⁰ = {}, χ = {chi}, L·C = {degree}", h.h0));
    }
    Ok("h⁰ = 3, χ = 3, L·C = −1".into())
}

fn c12_sigma23() -> Result<String, String> {
    let f0 = SurfaceParams::F0;
    let (a, b) = (o(f0, 0, 1), o(f0, 1, 0));
    for (p, q) in [(a, b), (b, a)] {
        if euler_form(f0, p, q) != Ok(0) {
            return Err(format!("χ({p}, {q}) ≠ 0"));
        }
    }
    for d in [DivisorClass::new(1, -1), DivisorClass::new(-1, 1)] {
        let h = f0.line_bundle_cohomology(d);
        if h.h0 != 0 || h.h2 != 0 || h.euler_char() != 0 {
            return Err(format!("h•(O({d})) = {h}"));
        }
    }
    let coll = Collection4 {
        classes: [O, a, b, o(f0, 1, 1)],
    };
    let once = mutate(f0, &coll, 2, 1).map_err(|e| e.to_string())?;
    let twice = mutate(f0, &once, 2, 1).map_err(|e| e.to_string())?;
    if twice != coll {
        return Err(format!("σ₂² gives {twice}"));
    }
    let rep = sigma23_square_check().map_err(|e| e.to_string())?;
    if !rep.passed {
        return Err(format!("library check: {rep:?}"));
    }
    Ok("pairings and obstructions vanish; σ₂² fixes the quadruple".into())
}

fn main() {
    let criteria: [(&str, Criterion); 12] = [
        ("euler-form calibration", c1_euler_calibration),
        ("reflection suite", c2_reflection),
        ("composition identity", c3_composition),
        ("tower invariance", c4_tower_invariance),
        ("fixed-point example", c5_fixed_point),
        ("ext-table consistency", c6_ext_table),
        ("standard collection", c7_standard_collection),
        ("mutation algebra", c8_mutation_algebra),
        ("transitivity round-trip", c9_transitivity),
        ("rank-parity enumeration", c10_rank_parity),
        ("F_3 negative-degree check", c11_negative_degree_f3),
        ("sigma23 square on F_0", c12_sigma23),
    ];
    let mut failures = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", k + 1),
            Err(detail) => {
                println!("FAIL  {:>2}. {name}: {detail}", k + 1);
                failures.push(k + 1);
            }
        }
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
