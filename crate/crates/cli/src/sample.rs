//! Seeded draws of points in every coordinate form.
//!
//! Real parts stay at least 0.1 away from the integers: masses of line
//! bundles vanish on the lattice, so distances blow up there and absolute
//! tolerances would stop meaning anything. All magnitudes are kept O(1) to
//! O(10) for the same reason.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stabspace::{ChartPoint, HPoint, QuotientPoint, StabPoint};

pub const LATTICE_MARGIN: f64 = 0.1;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A real number in `(k_min, k_max + 1)` with distance at least
/// [`LATTICE_MARGIN`] from every integer.
pub fn real_off_lattice(rng: &mut impl Rng, k_min: i64, k_max: i64) -> f64 {
    let k = rng.gen_range(k_min..=k_max);
    k as f64 + rng.gen_range(LATTICE_MARGIN..=1.0 - LATTICE_MARGIN)
}

pub fn interior_tau(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(real_off_lattice(rng, -3, 2), rng.gen_range(0.1..8.0))
}

/// Interior point with log-uniform height over two decades. Pairs drawn this
/// way regularly land on both sides of the charge-ratio-distance-2 threshold.
pub fn wide_tau(rng: &mut impl Rng) -> Complex64 {
    let im = (rng.gen_range((0.05f64).ln()..(20.0f64).ln())).exp();
    Complex64::new(real_off_lattice(rng, -3, 2), im)
}

pub fn shift(rng: &mut impl Rng) -> (f64, f64) {
    (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

pub fn geometric_point(rng: &mut impl Rng) -> StabPoint {
    let (x, y) = shift(rng);
    StabPoint::geometric(interior_tau(rng), x, y).expect("interior tau")
}

pub fn boundary_point(rng: &mut impl Rng) -> StabPoint {
    let (x, y) = shift(rng);
    StabPoint::boundary(real_off_lattice(rng, -3, 2), x, y).expect("off-lattice tau")
}

/// Algebraic draw; lands on the wall (and therefore canonicalizes to the
/// boundary form) about one time in eight.
pub fn algebraic_point(rng: &mut impl Rng) -> StabPoint {
    let k = rng.gen_range(-3..=3);
    let alpha = rng.gen_range(-2.0..2.0);
    let beta = if rng.gen_bool(0.125) { 1.0 } else { rng.gen_range(1.0..3.0) };
    let (x, y) = shift(rng);
    StabPoint::algebraic(k, alpha, beta, x, y).expect("beta >= 1")
}

pub fn stab_point(rng: &mut impl Rng) -> StabPoint {
    match rng.gen_range(0..4) {
        0 | 1 => geometric_point(rng),
        2 => boundary_point(rng),
        _ => algebraic_point(rng),
    }
}

pub fn quotient_point(rng: &mut impl Rng) -> QuotientPoint {
    stab_point(rng).quotient()
}

pub fn interior_hpoint(rng: &mut impl Rng) -> HPoint {
    let z = interior_tau(rng);
    HPoint::new(z.re, z.im).expect("interior")
}

/// Interior three times out of four, boundary otherwise.
pub fn hpoint(rng: &mut impl Rng) -> HPoint {
    if rng.gen_bool(0.25) {
        HPoint::new(real_off_lattice(rng, -3, 2), 0.0).expect("off-lattice")
    } else {
        interior_hpoint(rng)
    }
}

/// Chart draw with `beta` in `(0, 1]`; exactly 1 one time in five, so wall
/// round trips get exercised alongside geometric ones.
pub fn chart_point(rng: &mut impl Rng) -> ChartPoint {
    let k = rng.gen_range(-3..=3);
    let alpha = rng.gen_range(-2.0..2.0);
    let beta = if rng.gen_bool(0.2) { 1.0 } else { rng.gen_range(0.05..1.0) };
    let (x, y) = shift(rng);
    ChartPoint::new(k, alpha, beta, x, y).expect("beta > 0")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins_hold() {
        let mut r = rng(1);
        for _ in 0..2000 {
            let t = real_off_lattice(&mut r, -3, 2);
            let frac = t - t.floor();
            assert!((LATTICE_MARGIN..=1.0 - LATTICE_MARGIN).contains(&frac), "{t}");
        }
    }

    #[test]
    fn draws_are_reproducible() {
        let mut a = rng(9);
        let mut b = rng(9);
        for _ in 0..50 {
            assert_eq!(stab_point(&mut a), stab_point(&mut b));
        }
    }

    #[test]
    fn all_forms_show_up() {
        let mut r = rng(3);
        let (mut geo, mut bd, mut alg) = (0, 0, 0);
        for _ in 0..400 {
            let p = stab_point(&mut r);
            if p.is_geometric() {
                geo += 1;
            } else if p.is_boundary() {
                bd += 1;
            } else {
                alg += 1;
            }
        }
        assert!(geo > 50 && bd > 50 && alg > 50, "{geo}/{bd}/{alg}");
    }

    #[test]
    fn chart_draws_include_the_wall() {
        let mut r = rng(4);
        let mut walls = 0;
        for _ in 0..200 {
            let c = chart_point(&mut r);
            assert!(c.beta > 0.0 && c.beta <= 1.0);
            if c.beta == 1.0 {
                walls += 1;
            }
        }
        assert!(walls > 10, "{walls}");
    }
}
