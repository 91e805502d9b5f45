use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DomainSpec, Point};
use crate::error::{Error, Result};

const MIN_MODULUS: f64 = 0.05;
const MAX_MODULUS: f64 = 0.95;
/// Both defining monomials must stay below this, keeping the series oracle
/// geometrically convergent.
pub(crate) const MARGIN: f64 = 0.9;
const MAX_REJECTIONS: u64 = 1_000_000;

/// `n` seeded pairs `(z, w)` of interior points, deterministic in `seed`.
pub fn sample_points(spec: &DomainSpec, n: usize, seed: u64) -> Result<Vec<(Point, Point)>> {
    if n == 0 {
        return Err(Error::PreconditionViolated(
            "need at least one sample point".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejections = 0u64;
    let mut draw = |rng: &mut ChaCha8Rng| -> Result<Point> {
        loop {
            let r = [
                rng.gen_range(MIN_MODULUS..MAX_MODULUS),
                rng.gen_range(MIN_MODULUS..MAX_MODULUS),
            ];
            let angles = [rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)];
            if spec.defining_monomials(r).iter().all(|&m| m < MARGIN) {
                return Ok([
                    Complex64::from_polar(r[0], angles[0]),
                    Complex64::from_polar(r[1], angles[1]),
                ]);
            }
            rejections += 1;
            if rejections > MAX_REJECTIONS {
                return Err(Error::SamplingExhausted(MAX_REJECTIONS));
            }
        }
    };
    (0..n)
        .map(|_| Ok((draw(&mut rng)?, draw(&mut rng)?)))
        .collect()
}
