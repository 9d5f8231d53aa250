//! Input generation shared by the benchmark targets. Everything is seeded so
//! that two runs measure the same workload.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stabspace::{HPoint, QuotientPoint, StabPoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn off_lattice(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-3i64..=3) as f64 + rng.gen_range(0.05..0.95)
}

pub fn interior_tau(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(off_lattice(rng), rng.gen_range(0.1..6.0))
}

pub fn hpoint(rng: &mut ChaCha8Rng) -> HPoint {
    let z = interior_tau(rng);
    HPoint::new(z.re, z.im).expect("interior")
}

pub fn geometric(rng: &mut ChaCha8Rng) -> StabPoint {
    StabPoint::geometric(interior_tau(rng), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
        .expect("interior tau")
}

pub fn algebraic(rng: &mut ChaCha8Rng) -> StabPoint {
    StabPoint::algebraic(
        rng.gen_range(-3..=3),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(1.0..3.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    )
    .expect("beta >= 1")
}

pub fn mixed(rng: &mut ChaCha8Rng) -> StabPoint {
    if rng.gen_bool(0.5) {
        geometric(rng)
    } else {
        algebraic(rng)
    }
}

pub fn algebraic_orbit(rng: &mut ChaCha8Rng, k: i64) -> QuotientPoint {
    QuotientPoint::algebraic(k, rng.gen_range(-2.0..2.0), rng.gen_range(1.0..3.0))
        .expect("beta >= 1")
}

/// Pregenerate a cycling input deck so the measured closure does no sampling.
pub fn deck<T>(n: usize, mut draw: impl FnMut() -> T) -> Vec<T> {
    (0..n).map(|_| draw()).collect()
}
