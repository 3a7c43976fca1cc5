//! Acceptance suite: one PASS/FAIL line per criterion.
//! Run with `cargo test --test acceptance -- --nocapture`.

mod common;

use std::time::Instant;

use common::{example, random_arrangement, random_essential};
use minimal_cw::complex::{build_complex, TwistedComplex};
use minimal_cw::degree::{degree_tables, DegreeOptions, DegreeTable};
use minimal_cw::faces::{enumerate_chambers, is_bounded};
use minimal_cw::flag::{build_flag, is_generic, partition, ChamberPartition, OrientedFlag};
use minimal_cw::geometry::Arrangement;
use minimal_cw::lattice::{build_lattice, deletion_restriction, poincare, Polynomial};
use minimal_cw::linalg;
use minimal_cw::local_system::WeightAssignment;
use minimal_cw::pi1::presentation;
use minimal_cw::rational::{frac, int, Rational};
use minimal_cw::salvetti::build_salvetti;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Poincaré coefficients by Whitney's subset sum: every consistent subset `S`
/// contributes `(-1)^{|S| + rk S}` to the coefficient of `t^{rk S}`.
fn whitney(arr: &Arrangement) -> Vec<i64> {
    let n = arr.len();
    let mut coeffs = vec![0i64; arr.dim() + 1];
    for mask in 0u32..(1 << n) {
        let hs: Vec<_> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| arr.hyperplane(i)).collect();
        let a: Vec<Vec<Rational>> = hs.iter().map(|h| h.normal.clone()).collect();
        let ab: Vec<Vec<Rational>> = hs
            .iter()
            .map(|h| {
                let mut r = h.normal.clone();
                r.push(h.offset.clone());
                r
            })
            .collect();
        let r = linalg::rank(&a);
        if r != linalg::rank(&ab) {
            continue;
        }
        coeffs[r] += if (hs.len() + r) % 2 == 0 { 1 } else { -1 };
    }
    coeffs
}

fn beta_of(coeffs: &[i64]) -> i64 {
    coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 0 { *c } else { -c }).sum::<i64>().abs()
}

fn betti(arr: &Arrangement) -> Vec<usize> {
    whitney(arr).into_iter().map(|c| c as usize).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn weights(v: &[Rational]) -> WeightAssignment {
    WeightAssignment::new(v.to_vec()).unwrap()
}

fn complex_of(arr: &Arrangement, flag: &OrientedFlag) -> Result<TwistedComplex, String> {
    build_complex(arr, flag, &DegreeOptions::default()).map_err(|e| e.to_string())
}

/// The named examples plus seeded random plane arrangements.
fn plane_suite() -> Vec<(String, Arrangement, OrientedFlag)> {
    let mut out: Vec<_> = ["wedge.json", "triangle.json", "triple_point.json", "two_lines.json", "one_line.json"]
        .iter()
        .map(|name| {
            let (a, f) = example(name);
            (name.to_string(), a, f)
        })
        .collect();
    for seed in 0..50u64 {
        let arr = random_arrangement(2, 2 + (seed as usize % 5), 500 + seed);
        let flag = build_flag(&arr, 7 * seed + 1);
        out.push((format!("plane seed {seed}"), arr, flag));
    }
    out
}

fn crit1() -> Outcome {
    let (arr, _) = example("wedge.json");
    let ch = enumerate_chambers(&arr);
    let bounded = ch.iter().filter(|c| is_bounded(&arr, &c.signs)).count();
    let w = whitney(&arr);
    ensure(ch.len() == 7 && w.iter().sum::<i64>() == 7, || format!("wedge chambers {}", ch.len()))?;
    ensure(bounded == 1 && beta_of(&w) == 1, || format!("wedge bounded {bounded}"))?;
    for seed in 0..50u64 {
        let dim = 1 + (seed as usize % 3);
        let n = 1 + (seed as usize % 8);
        let arr = random_arrangement(dim, n, 9000 + seed);
        let w = whitney(&arr);
        let ch = enumerate_chambers(&arr);
        let bounded = ch.iter().filter(|c| is_bounded(&arr, &c.signs)).count() as i64;
        let expect_bounded = if arr.is_essential() { beta_of(&w) } else { 0 };
        ensure(ch.len() as i64 == w.iter().sum::<i64>(), || format!("seed {seed}: chambers {}", ch.len()))?;
        ensure(bounded == expect_bounded, || format!("seed {seed}: bounded {bounded} vs {expect_bounded}"))?;
        ensure(poincare(&build_lattice(&arr)) == Polynomial::new(w.clone()), || format!("seed {seed}: lattice polynomial"))?;
    }
    Ok("wedge 7/1, 50 random arrangements".into())
}

fn crit2() -> Outcome {
    let (arr, flag) = example("wedge.json");
    let part = partition(&arr, &flag).map_err(|e| e.to_string())?;
    ensure(part.sizes() == vec![1, 3, 3], || format!("wedge sizes {:?}", part.sizes()))?;
    ensure(part.levels[0][0].signs.to_string() == "--+", || "wedge ch0".into())?;
    let mut flags = 0;
    for seed in 0..20u64 {
        let dim = 2 + (seed as usize % 2);
        let arr = random_arrangement(dim, 2 + (seed as usize % 4), 3000 + seed);
        let w = whitney(&arr);
        let mut seen = Vec::new();
        for fs in 0..3u64 {
            let flag = build_flag(&arr, 100 * seed + fs);
            ensure(is_generic(&arr, &flag), || format!("seed {seed}/{fs}: flag not generic"))?;
            ensure(!seen.contains(&flag), || format!("seed {seed}: repeated flag"))?;
            let part = partition(&arr, &flag).map_err(|e| e.to_string())?;
            let sizes: Vec<i64> = part.sizes().iter().map(|&s| s as i64).collect();
            ensure(sizes == w, || format!("seed {seed}/{fs}: sizes {sizes:?} vs {w:?}"))?;
            let with = arr.with(flag.hyperplane()).map_err(|e| e.to_string())?;
            let b = beta_of(&whitney(&with));
            ensure(sizes[dim] == b, || format!("seed {seed}/{fs}: top level {} vs {b}", sizes[dim]))?;
            seen.push(flag);
            flags += 1;
        }
    }
    Ok(format!("wedge 1/3/3, {flags} random flags"))
}

fn crit3() -> Outcome {
    let mut checked = 0;
    let mut arrs: Vec<Arrangement> = plane_suite().into_iter().map(|(_, a, _)| a).collect();
    arrs.extend((0..20u64).map(|s| random_arrangement(3, 2 + (s as usize % 5), 4000 + s)));
    for arr in &arrs {
        let p = poincare(&build_lattice(arr));
        for i in 0..arr.len() {
            let (del, res) = deletion_restriction(arr, i);
            let rhs = &poincare(&build_lattice(&del)) + &poincare(&build_lattice(&res)).shift();
            ensure(p == rhs, || format!("{p} != {rhs}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} hyperplanes"))
}

fn crit4() -> Outcome {
    let chi = |arr: &Arrangement| -> (i64, i64) {
        let e = whitney(arr).iter().enumerate().map(|(k, c)| if k % 2 == 0 { *c } else { -c }).sum();
        (build_salvetti(arr).euler_characteristic(), e)
    };
    let (wedge, _) = example("wedge.json");
    ensure(chi(&wedge) == (1, 1), || format!("wedge {:?}", chi(&wedge)))?;
    let (one, _) = example("one_line.json");
    ensure(chi(&one) == (0, 0), || format!("one line {:?}", chi(&one)))?;
    for seed in 0..25u64 {
        let arr = random_arrangement(1 + (seed as usize % 3), 1 + (seed as usize % 5), 5000 + seed);
        let (s, e) = chi(&arr);
        ensure(s == e, || format!("seed {seed}: {s} vs {e}"))?;
    }
    Ok("wedge, one line, 25 random".into())
}

fn crit5() -> Outcome {
    let (arr, flag) = example("triangle.json");
    let cx = complex_of(&arr, &flag)?;
    let d1: Vec<String> = (0..3).map(|j| cx.boundaries[0].get(0, j).to_string()).collect();
    ensure(d1 == ["-q1 + q1^-1", "q2 - q2^-1", "q2*q3 - q2^-1*q3^-1"], || format!("d1 {d1:?}"))?;
    let golden = [
        ("-+-", ["q2 - q2^-1", "q1 - q1^-1", "0"]),
        ("-++", ["q2*q3 - q2^-1*q3^-1", "0", "q1 - q1^-1"]),
        ("--+", ["q3 - q3^-1", "-q1*q2*q3 + q1^-1*q2^-1*q3^-1", "q1*q2 - q1^-1*q2^-1"]),
    ];
    for (sv, want) in golden {
        let j = cx.partition.levels[2]
            .iter()
            .position(|c| c.signs.to_string() == sv)
            .ok_or(format!("no chamber {sv}"))?;
        let col: Vec<String> = (0..3).map(|i| cx.boundaries[1].get(i, j).to_string()).collect();
        ensure(col == want, || format!("d2[{sv}] {col:?}"))?;
    }
    Ok("d1 and three d2 columns".into())
}

fn crit6() -> Outcome {
    let (arr, flag) = example("triangle.json");
    let cx = complex_of(&arr, &flag)?;
    let generic = cx.generic_homology().map_err(|e| e.to_string())?;
    let res = |q: &[Rational]| cx.resonance_against(&weights(q), &generic).map(|r| r.resonant).map_err(|e| e.to_string());
    for mask in 0..8 {
        let q: Vec<Rational> = (0..3).map(|i| int(if mask >> i & 1 == 1 { -1 } else { 1 })).collect();
        ensure(res(&q)?, || format!("triangle {q:?} not resonant"))?;
    }
    for q in [[2, 1, 1], [1, 2, 1], [2, 3, 5]] {
        let q: Vec<Rational> = q.iter().map(|&v| int(v)).collect();
        ensure(!res(&q)?, || format!("triangle {q:?} resonant"))?;
    }
    let (arr, flag) = example("triple_point.json");
    let cx = complex_of(&arr, &flag)?;
    let generic = cx.generic_homology().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut on, mut off) = (0, 0);
    for i in 0..20 {
        let q1 = frac(rng.gen_range(1..=9) * if rng.gen() { 1 } else { -1 }, rng.gen_range(1..=4));
        let q2 = frac(rng.gen_range(2..=9), rng.gen_range(1..=5));
        let q3 = if i % 2 == 0 {
            let s = int(if rng.gen() { 1 } else { -1 });
            s / (&q1 * &q2)
        } else {
            frac(rng.gen_range(1..=7), rng.gen_range(8..=13))
        };
        let prod = &q1 * &q2 * &q3;
        let expect = &prod * &prod == int(1);
        let got = cx.resonance_against(&weights(&[q1, q2, q3]), &generic).map_err(|e| e.to_string())?.resonant;
        ensure(got == expect, || format!("triple_point sample {i}: resonant {got}, expected {expect}"))?;
        if expect {
            on += 1
        } else {
            off += 1
        }
    }
    ensure(on > 0 && off > 0, || "sample misses one side".into())?;
    Ok(format!("triangle 11 assignments, triple_point {on} on / {off} off"))
}

fn crit7() -> Outcome {
    let mut count = 0;
    for name in ["triangle.json", "triple_point.json", "two_lines.json"] {
        let (arr, flag) = example(name);
        complex_of(&arr, &flag)?.verify_d2().map_err(|e| format!("{name}: {e}"))?;
        count += 1;
    }
    for seed in 0..50u64 {
        let arr = random_arrangement(2, 2 + (seed as usize % 6), 6000 + seed);
        let flag = build_flag(&arr, 31 * seed + 5);
        complex_of(&arr, &flag)?.verify_d2().map_err(|e| format!("seed {seed}: {e}"))?;
        count += 1;
    }
    Ok(format!("{count} complexes"))
}

fn crit8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut essential = 0;
    let suite = plane_suite();
    for (name, arr, flag) in &suite {
        let cx = complex_of(arr, flag)?;
        let b = betti(arr);
        let h = cx.homology(&WeightAssignment::trivial(arr.len())).map_err(|e| e.to_string())?;
        ensure(h == b, || format!("{name}: trivial {h:?} vs {b:?}"))?;
        if arr.is_essential() {
            let h = cx.homology(&WeightAssignment::generic_probe(arr.len())).map_err(|e| e.to_string())?;
            let beta = beta_of(&whitney(arr)) as usize;
            ensure(h == vec![0, 0, beta], || format!("{name}: primes {h:?}, beta {beta}"))?;
            essential += 1;
        }
        let chi = cx.euler_characteristic();
        for _ in 0..10 {
            let q: Vec<Rational> = (0..arr.len())
                .map(|_| frac(rng.gen_range(1..=4) * if rng.gen() { 1 } else { -1 }, rng.gen_range(1..=3)))
                .collect();
            let h = cx.homology(&weights(&q)).map_err(|e| e.to_string())?;
            let e: i64 = h.iter().enumerate().map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
            ensure(e == chi, || format!("{name}: euler {e} vs {chi} at {q:?}"))?;
        }
    }
    Ok(format!("{} arrangements, {essential} essential", suite.len()))
}

fn crit9() -> Outcome {
    let (arr, flag) = example("triangle.json");
    let part = partition(&arr, &flag).map_err(|e| e.to_string())?;
    let tables = degree_tables(&arr, &flag, &part, &DegreeOptions::default()).map_err(|e| e.to_string())?;
    let pres = presentation(&part, &tables);
    let mut rels: Vec<String> = pres.relations.iter().map(ToString::to_string).collect();
    rels.sort();
    let want = [
        "gamma1^-1*gamma2*gamma3^-1*gamma1*gamma2^-1*gamma3",
        "gamma1^-1*gamma2^-1*gamma1*gamma2",
        "gamma1^-1*gamma3^-1*gamma1*gamma3",
    ];
    ensure(rels == want, || format!("triangle relations {rels:?}"))?;
    ensure(pres.abelianization() == (3, vec![]), || "triangle abelianization".into())?;
    let suite = plane_suite();
    for (name, arr, flag) in &suite {
        let part = partition(arr, flag).map_err(|e| e.to_string())?;
        let tables = degree_tables(arr, flag, &part, &DegreeOptions::default()).map_err(|e| e.to_string())?;
        let pres = presentation(&part, &tables);
        ensure(pres.generators == arr.len(), || format!("{name}: {} generators", pres.generators))?;
        ensure(pres.abelianization() == (arr.len(), vec![]), || format!("{name}: {:?}", pres.abelianization()))?;
    }
    Ok(format!("triangle golden, Z^n for {} arrangements", suite.len()))
}

fn tables(arr: &Arrangement, flag: &OrientedFlag, part: &ChamberPartition, opts: &DegreeOptions) -> Result<Vec<DegreeTable>, String> {
    degree_tables(arr, flag, part, opts).map_err(|e| e.to_string())
}

fn values(t: &[DegreeTable]) -> Vec<Vec<Vec<i64>>> {
    t.iter().map(|t| t.values.clone()).collect()
}

fn signs(p: &ChamberPartition) -> Vec<Vec<String>> {
    p.levels.iter().map(|l| l.iter().map(|c| c.signs.to_string()).collect()).collect()
}

/// The flag with its base point pushed by a small rational offset.
fn nudged(flag: &OrientedFlag) -> OrientedFlag {
    let base: Vec<Rational> = flag.base().iter().enumerate().map(|(i, c)| c + frac(i as i64 + 1, 997)).collect();
    OrientedFlag::new(base, flag.basis().to_vec()).unwrap()
}

fn crit10() -> Outcome {
    let mut suite = plane_suite();
    let (braid, braid_flag) = example("braid3.json");
    suite.push(("braid3".into(), braid, braid_flag));
    for seed in 0..6u64 {
        let arr = random_essential(3, 3 + (seed as usize % 3), 7000 + 10 * seed);
        let flag = build_flag(&arr, seed);
        suite.push((format!("space seed {seed}"), arr, flag));
    }
    let (mut pairs, mut compared, mut residue) = (0usize, 0usize, 0.0f64);
    let base_opts = DegreeOptions::default();
    for (name, arr, flag) in &suite {
        let part = partition(arr, flag).map_err(|e| e.to_string())?;
        let base = tables(arr, flag, &part, &base_opts)?;
        pairs += base.iter().map(|t| t.values.iter().map(Vec::len).sum::<usize>()).sum::<usize>();
        let alt = tables(arr, flag, &part, &DegreeOptions { alternate_point: true, ..base_opts.clone() })?;
        ensure(values(&alt) == values(&base), || format!("{name}: alternate point"))?;
        let wide = tables(arr, flag, &part, &DegreeOptions { radius_doublings: 1, ..base_opts.clone() })?;
        ensure(values(&wide) == values(&base), || format!("{name}: doubled radius"))?;
        let second = nudged(flag);
        if is_generic(arr, &second) {
            let p2 = partition(arr, &second).map_err(|e| e.to_string())?;
            if signs(&p2) == signs(&part) {
                let t2 = tables(arr, &second, &p2, &base_opts)?;
                ensure(values(&t2) == values(&base), || format!("{name}: second flag"))?;
                compared += 1;
            }
        }
        if arr.dim() == 3 {
            let fine = tables(arr, flag, &part, &DegreeOptions { samples_per_edge: 64, ..base_opts.clone() })?;
            ensure(values(&fine) == values(&base), || format!("{name}: sampling refinement"))?;
            for t in base.iter().chain(&fine) {
                residue = residue.max(t.residue);
            }
        }
    }
    ensure(compared > 0, || "no second flag was comparable".into())?;
    ensure(residue < 1e-6, || format!("residue {residue:e}"))?;
    Ok(format!(
        "{pairs} pairs in {} arrangements, {compared} second flags, max residue {residue:.1e}",
        suite.len()
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("chamber and bounded chamber counts", crit1),
        ("flag partition sizes", crit2),
        ("deletion-restriction", crit3),
        ("Salvetti Euler characteristic", crit4),
        ("golden boundary matrices", crit5),
        ("resonance", crit6),
        ("boundary squares to zero", crit7),
        ("homology sanity", crit8),
        ("fundamental group presentations", crit9),
        ("degree stability", crit10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                println!("FAIL [{}] {name}: {why} ({secs:.2}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
