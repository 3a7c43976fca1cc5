mod common;

use common::random_arrangement;
use minimal_cw::complex::build_complex;
use minimal_cw::degree::DegreeOptions;
use minimal_cw::flag::build_flag;
use minimal_cw::lattice::{beta, build_lattice, poincare};
use minimal_cw::local_system::WeightAssignment;

fn check(dim: usize, n: usize, seed: u64) {
    let arr = random_arrangement(dim, n, seed);
    let flag = build_flag(&arr, seed);
    let cx = build_complex(&arr, &flag, &DegreeOptions::default()).unwrap();
    cx.verify_d2().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    let poly = poincare(&build_lattice(&arr));
    let betti: Vec<usize> = (0..=dim).map(|k| poly.coeff(k) as usize).collect();
    assert_eq!(cx.dims(), betti, "seed {seed}");
    assert_eq!(cx.homology(&WeightAssignment::trivial(n)).unwrap(), betti, "seed {seed}");
    let mut generic = vec![0; dim + 1];
    // Over the fraction field only the top degree of the essentialization survives.
    generic[arr.rank()] = beta(&poly) as usize;
    assert_eq!(cx.generic_homology().unwrap(), generic, "seed {seed}");
}

#[test]
fn plane_arrangements_are_complexes() {
    for seed in 0..40 {
        check(2, 2 + (seed as usize % 5), seed);
    }
}

#[test]
fn space_arrangements_are_complexes() {
    for seed in 0..15 {
        check(3, 3 + (seed as usize % 3), 1000 + seed);
    }
}

