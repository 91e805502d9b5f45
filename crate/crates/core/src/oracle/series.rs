use num_complex::Complex64;
use num_traits::Zero;

use super::{DomainSpec, Point};
use crate::error::{Error, Result};

pub const DEFAULT_TRUNC_CAP: u32 = 640;
const START_TRUNCATION: u32 = 40;

/// Kernel as a truncated sum over square-integrable Laurent monomials,
/// `Σ t^α / ‖z^α‖²` with `max(|α1|, |α2|) ≤ M`.
///
/// `M` starts at 40 and doubles until two successive partial sums agree to
/// `tol / 10` relative; returns the last sum and the `M` that produced it.
pub fn series_kernel(
    spec: &DomainSpec,
    z: Point,
    w: Point,
    tol: f64,
    cap: u32,
) -> Result<(Complex64, u32)> {
    let (t1, t2) = crate::kernel::t_values(z, w);
    let mut m = START_TRUNCATION;
    let mut prev = partial_sum(spec, t1, t2, m as i64);
    loop {
        m *= 2;
        if m > cap {
            return Err(Error::NoConvergence(cap));
        }
        let cur = partial_sum(spec, t1, t2, m as i64);
        if (cur - prev).norm() <= tol / 10.0 * cur.norm() {
            return Ok((cur, m));
        }
        prev = cur;
    }
}

/// Smallest `u2` with `col.0·u1 + col.1·u2 > 0`, or `None` if no `u2` works.
/// Columns of `adj(B)` are nonnegative for a bounded domain.
fn lower_bound(col: (i64, i64), u1: i64) -> Option<i64> {
    let lhs = col.0 * u1;
    if col.1 == 0 {
        return (lhs > 0).then_some(i64::MIN);
    }
    // col.1·u2 > -lhs
    Some((-lhs).div_euclid(col.1) + 1)
}

fn degrees(cols: [(i64, i64); 2], u1: i64, u2: i64) -> (f64, f64) {
    let d1 = 2 * (cols[0].0 * u1 + cols[0].1 * u2);
    let d2 = 2 * (cols[1].0 * u1 + cols[1].1 * u2);
    debug_assert!(d1 > 0 && d2 > 0);
    (d1 as f64, d2 as f64)
}

fn partial_sum(spec: &DomainSpec, t1: Complex64, t2: Complex64, m: i64) -> Complex64 {
    let adj = spec.adj_s;
    let cols = [(adj[0][0], adj[1][0]), (adj[0][1], adj[1][1])];
    let inv_scale = 1.0 / (4.0 * spec.det_b_s as f64 * std::f64::consts::PI.powi(2));
    let mut sum = Complex64::zero();
    for a1 in -m..=m {
        // u = α + 1, so d_j = 2⟨u, col_j⟩
        let u1 = a1 + 1;
        let (Some(lo0), Some(lo1)) = (lower_bound(cols[0], u1), lower_bound(cols[1], u1)) else {
            continue;
        };
        let a2_lo = (lo0.max(lo1).saturating_sub(1)).max(-m);
        if a2_lo > m {
            continue;
        }
        // start the row at t^(a1, a2_lo) in log form; the two factors
        // separately can over- or underflow for large truncations
        let start = match (t1.is_zero(), t2.is_zero()) {
            (false, false) => (t1.ln() * a1 as f64 + t2.ln() * a2_lo as f64).exp(),
            _ => {
                // a zero coordinate kills every term with a positive power of it
                let ok1 = !t1.is_zero() || a1 == 0;
                if !ok1 {
                    continue;
                }
                let r = if t1.is_zero() {
                    Complex64::new(1.0, 0.0)
                } else {
                    t1.powi(a1 as i32)
                };
                if t2.is_zero() {
                    if a2_lo > 0 {
                        continue;
                    }
                    // only the a2 = 0 term survives
                    let (d1, d2) = degrees(cols, u1, 1);
                    sum += r * (d1 * d2);
                    continue;
                }
                r * t2.powi(a2_lo as i32)
            }
        };
        let mut p = start;
        let mut row_sum = Complex64::zero();
        for a2 in a2_lo..=m {
            let (d1, d2) = degrees(cols, u1, a2 + 1);
            row_sum += p * (d1 * d2);
            p *= t2;
        }
        sum += row_sum;
    }
    sum * inv_scale
}
