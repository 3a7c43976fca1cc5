//! Hand-checked values for the bundled example arrangements.

mod common;

use common::example;
use minimal_cw::complex::build_complex;
use minimal_cw::degree::{degree_tables, DegreeOptions};
use minimal_cw::faces::{enumerate_chambers, is_bounded};
use minimal_cw::flag::partition;
use minimal_cw::lattice::{beta, build_lattice, poincare};
use minimal_cw::local_system::WeightAssignment;
use minimal_cw::pi1::presentation;
use minimal_cw::rational::{frac, int};
use minimal_cw::salvetti::build_salvetti;

fn names(levels: &[minimal_cw::flag::LeveledChamber]) -> Vec<String> {
    levels.iter().map(|c| c.signs.to_string()).collect()
}

#[test]
fn wedge_counts_and_partition() {
    let (arr, flag) = example("wedge.json");
    let poly = poincare(&build_lattice(&arr));
    assert_eq!(poly.to_string(), "1 + 3t + 3t^2");
    let ch = enumerate_chambers(&arr);
    assert_eq!(ch.len(), 7);
    let bounded: Vec<String> = ch.iter().filter(|c| is_bounded(&arr, &c.signs)).map(|c| c.signs.to_string()).collect();
    assert_eq!(bounded, vec!["+-+"]);
    assert_eq!(beta(&poly), 1);
    let p = partition(&arr, &flag).unwrap();
    assert_eq!(names(&p.levels[0]), vec!["--+"]);
    assert_eq!(names(&p.levels[1]), vec!["+--", "+-+", "-++"]);
    assert_eq!(names(&p.levels[2]), vec!["---", "++-", "+++"]);
    assert_eq!(build_salvetti(&arr).euler_characteristic(), 1);
}

#[test]
fn triangle_boundary_matrices() {
    let (arr, flag) = example("triangle.json");
    let cx = build_complex(&arr, &flag, &DegreeOptions::default()).unwrap();
    assert_eq!(names(&cx.partition.levels[1]), vec!["---", "++-", "+++"]);
    let d1: Vec<String> = (0..3).map(|j| cx.boundaries[0].get(0, j).to_string()).collect();
    assert_eq!(d1, vec!["-q1 + q1^-1", "q2 - q2^-1", "q2*q3 - q2^-1*q3^-1"]);
    let col = |sv: &str| -> Vec<String> {
        let j = cx.partition.levels[2].iter().position(|c| c.signs.to_string() == sv).unwrap();
        (0..3).map(|i| cx.boundaries[1].get(i, j).to_string()).collect()
    };
    assert_eq!(col("-+-"), vec!["q2 - q2^-1", "q1 - q1^-1", "0"]);
    assert_eq!(col("-++"), vec!["q2*q3 - q2^-1*q3^-1", "0", "q1 - q1^-1"]);
    assert_eq!(col("--+"), vec!["q3 - q3^-1", "-q1*q2*q3 + q1^-1*q2^-1*q3^-1", "q1*q2 - q1^-1*q2^-1"]);
    cx.verify_d2().unwrap();
    let generic = cx.generic_homology().unwrap();
    assert_eq!(generic, vec![0, 0, 1]);
    let h = |q: [i64; 3]| cx.homology(&WeightAssignment::new(q.iter().map(|&v| int(v)).collect()).unwrap()).unwrap();
    assert_eq!(h([1, 1, 1]), vec![1, 3, 3]);
    assert_eq!(h([2, 3, 5]), vec![0, 0, 1]);
    assert!(h([1, -1, 1])[1] > 0);
}

#[test]
fn triangle_presentation() {
    let (arr, flag) = example("triangle.json");
    let part = partition(&arr, &flag).unwrap();
    let tables = degree_tables(&arr, &flag, &part, &DegreeOptions::default()).unwrap();
    let pres = presentation(&part, &tables);
    let mut rels: Vec<String> = pres.relations.iter().map(ToString::to_string).collect();
    rels.sort();
    assert_eq!(
        rels,
        vec![
            "gamma1^-1*gamma2*gamma3^-1*gamma1*gamma2^-1*gamma3",
            "gamma1^-1*gamma2^-1*gamma1*gamma2",
            "gamma1^-1*gamma3^-1*gamma1*gamma3",
        ]
    );
    assert_eq!(pres.abelianization(), (3, vec![]));
}

#[test]
fn degenerate_triple_point() {
    let (arr, flag) = example("triple_point.json");
    assert_eq!(poincare(&build_lattice(&arr)).to_string(), "1 + 3t + 2t^2");
    let cx = build_complex(&arr, &flag, &DegreeOptions::default()).unwrap();
    assert_eq!(names(&cx.partition.levels[2]), vec!["--+", "-++"]);
    cx.verify_d2().unwrap();
    let generic = cx.generic_homology().unwrap();
    assert_eq!(generic, vec![0, 0, 0]);
    let on = WeightAssignment::new(vec![int(2), int(3), frac(1, 6)]).unwrap();
    let off = WeightAssignment::new(vec![int(2), int(3), frac(1, 12)]).unwrap();
    assert!(cx.resonance(&on).unwrap().resonant);
    assert!(!cx.resonance(&off).unwrap().resonant);
}

#[test]
fn two_generic_lines() {
    let (arr, flag) = example("two_lines.json");
    let cx = build_complex(&arr, &flag, &DegreeOptions::default()).unwrap();
    assert_eq!(cx.dims(), vec![1, 2, 1]);
    assert_eq!(names(&cx.partition.levels[2]), vec!["++"]);
    cx.verify_d2().unwrap();
    let pres = presentation(&cx.partition, &cx.degrees);
    assert_eq!(pres.relations.len(), 1);
    assert!(pres.relations_are_commutators());
    assert_eq!(pres.relations[0].0.len(), 4);
    assert_eq!(pres.abelianization(), (2, vec![]));
}

#[test]
fn one_line_presentation() {
    let (arr, flag) = example("one_line.json");
    let part = partition(&arr, &flag).unwrap();
    assert_eq!(part.sizes(), vec![1, 1, 0]);
    let pres = presentation(&part, &degree_tables(&arr, &flag, &part, &DegreeOptions::default()).unwrap());
    assert_eq!(pres.to_string(), "< gamma1 | >");
    assert_eq!(pres.abelianization(), (1, vec![]));
}

#[test]
fn space_arrangement_complex() {
    let (arr, flag) = example("braid3.json");
    let cx = build_complex(&arr, &flag, &DegreeOptions::default()).unwrap();
    assert_eq!(cx.dims(), vec![1, 4, 5, 2]);
    cx.verify_d2().unwrap();
    assert_eq!(cx.homology(&WeightAssignment::trivial(4)).unwrap(), vec![1, 4, 5, 2]);
    assert!(cx.degrees[2].residue < 1e-6);
}
