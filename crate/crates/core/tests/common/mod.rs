#![allow(dead_code)]

use minimal_cw::geometry::{Arrangement, Hyperplane};
use minimal_cw::rational::int;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random arrangement of `n` hyperplanes in `R^dim` with small integer
/// coefficients. Duplicates are redrawn.
pub fn random_arrangement(dim: usize, n: usize, seed: u64) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let hs: Vec<Hyperplane> = (0..n)
            .map(|_| {
                let normal = (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect();
                Hyperplane::new(normal, int(rng.gen_range(-4..=4)))
            })
            .collect();
        if let Ok(a) = Arrangement::new(dim, hs) {
            return a;
        }
    }
}

pub fn line(a: i64, b: i64, c: i64) -> Hyperplane {
    Hyperplane::new(vec![int(a), int(b)], int(c))
}

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// Arrangement and flag of a bundled example file.
pub fn example(name: &str) -> (Arrangement, minimal_cw::flag::OrientedFlag) {
    let spec = minimal_cw::io::read_input(&data_path(name)).unwrap();
    let flag = spec
        .flag
        .unwrap_or_else(|| minimal_cw::flag::build_flag(&spec.arrangement, 0));
    (spec.arrangement, flag)
}

/// A random arrangement with a rank equal to its dimension.
pub fn random_essential(dim: usize, n: usize, seed: u64) -> Arrangement {
    (seed..)
        .map(|s| random_arrangement(dim, n, s))
        .find(Arrangement::is_essential)
        .expect("essential arrangements are common")
}
