//! Timing probe for discovery on a disguised split algebra.
use hypalg::{AlgebraTable, Element, FieldTag, Scalar, SpectralConfig};
use nalgebra::DMatrix;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn disguised(dim: usize, seed: u64) -> AlgebraTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = 0.5 / (dim as f64).sqrt();
    let basis = DMatrix::from_fn(dim, dim, |i, j| {
        if j == 0 {
            Scalar::new(1.0, 0.0)
        } else {
            let base = if i == j { 1.0 } else { 0.0 };
            Scalar::new(base + noise * rng.random_range(-1.0..1.0), 0.0)
        }
    });
    let inverse = basis.clone().try_inverse().unwrap();
    let mut constants = vec![Scalar::new(0.0, 0.0); dim * dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod = DMatrix::from_fn(dim, 1, |r, _| basis[(r, i)] * basis[(r, j)]);
            let coords = &inverse * prod;
            for k in 0..dim {
                constants[(i * dim + j) * dim + k] = coords[(k, 0)];
            }
        }
    }
    AlgebraTable::new(FieldTag::RealField, dim, None, constants).unwrap()
}

fn main() {
    for dim in [16usize, 32, 64] {
        let t0 = Instant::now();
        let table = disguised(dim, 54);
        let t_build = t0.elapsed();
        let t0 = Instant::now();
        let g = Element::from_reals(&(0..dim).map(|i| (i as f64 * 0.7).sin()).collect::<Vec<_>>());
        let _m = table.regular_representation(&g);
        let t_rep = t0.elapsed();
        let t0 = Instant::now();
        let sys = hypalg::find_idempotent_system(&table, &SpectralConfig::default());
        let t_disc = t0.elapsed();
        match &sys {
            Ok(s) => println!(
                "dim {dim}: build {t_build:?} rep {t_rep:?} discovery {t_disc:?} -> {} idems",
                s.len()
            ),
            Err(e) => println!(
                "dim {dim}: build {t_build:?} rep {t_rep:?} discovery FAILED after {t_disc:?}: {e}"
            ),
        }
        let t0 = Instant::now();
        let report = table.verify(1e-9);
        println!(
            "  verify {:?} pass={} assoc={:.2e}",
            t0.elapsed(),
            report.pass(),
            report.associativity
        );
    }
}
