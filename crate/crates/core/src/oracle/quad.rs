//! Adaptive Gauss–Kronrod quadrature and the numerical monomial norm.

#![allow(clippy::excessive_precision)]

use super::DomainSpec;

// 15-point Kronrod abscissae on [-1, 1] (nonnegative half) and weights;
// every other abscissa carries a 7-point Gauss weight.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Kronrod panel: `(estimate, error estimate)`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, (&x, &wk)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let sum = f(center - dx) + f(center + dx);
        kronrod += wk * sum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * sum;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Result of [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

/// Globally adaptive bisection: split the panel with the largest error estimate
/// until the total error is below `max(abs_tol, rel_tol·|value|)` or
/// `max_intervals` is reached.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Quadrature {
    if a == b {
        return Quadrature {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        };
    }
    let (v, e) = gk15(&f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let value: f64 = panels.iter().map(|p| p.2).sum();
        let error: f64 = panels.iter().map(|p| p.3).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) || panels.len() >= max_intervals {
            return Quadrature {
                value,
                error,
                intervals: panels.len(),
            };
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("nonempty");
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // cannot bisect further in double precision
            let (v, _) = gk15(&f, lo, hi);
            panels.push((lo, hi, v, 0.0));
            continue;
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}

/// Bounds on `x1` at height `x2` imposed by the defining rows, `(lower, upper)`,
/// or `None` if a row with zero `x1` coefficient excludes this `x2`.
fn x1_range(spec: &DomainSpec, x2: f64) -> Option<(f64, f64)> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for row in spec.b_s {
        let (b1, b2) = (row[0] as f64, row[1] as f64);
        // b1·x1 + b2·x2 < 0
        if b1 > 0.0 {
            hi = hi.min(-b2 * x2 / b1);
        } else if b1 < 0.0 {
            lo = lo.max(-b2 * x2 / b1);
        } else if b2 * x2 >= 0.0 {
            return None;
        }
    }
    Some((lo, hi))
}

/// `‖z^α‖² / π²` by nested adaptive quadrature over the part of the
/// log-shadow with `x1, x2 ≥ -depth`.
///
/// With `r_j = e^{x_j}` the norm integral `(2π)² ∬ r1^{2α1+1} r2^{2α2+1} dr`
/// over the shadow becomes `4π² ∬ exp(c1 x1 + c2 x2) dx`, `c = 2α + 2`, over
/// the cone `{Bx < 0}`.
pub fn norm_by_quadrature(spec: &DomainSpec, alpha: (i64, i64), depth: f64) -> f64 {
    let c1 = (2 * alpha.0 + 2) as f64;
    let c2 = (2 * alpha.1 + 2) as f64;
    let inner = |x2: f64| -> f64 {
        let Some((lo, hi)) = x1_range(spec, x2) else {
            return 0.0;
        };
        let (lo, hi) = (lo.max(-depth), hi.min(0.0));
        if lo >= hi {
            return 0.0;
        }
        let q = integrate(|x1| (c1 * x1 + c2 * x2).exp(), lo, hi, 0.0, 1e-14, 200);
        q.value
    };
    // outer integrand has kinks where an x1 bound crosses -depth or 0
    let mut cuts = vec![-depth, 0.0];
    for row in spec.b_s {
        let (b1, b2) = (row[0] as f64, row[1] as f64);
        if b1 != 0.0 && b2 != 0.0 {
            // -b2·x2/b1 = -depth
            let x2 = depth * b1 / b2;
            if x2 > -depth && x2 < 0.0 {
                cuts.push(x2);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let total: f64 = cuts
        .windows(2)
        .map(|w| integrate(inner, w[0], w[1], 0.0, 1e-13, 2000).value)
        .sum();
    4.0 * total
}

/// Truncation depths `4·2^L`, `L = 0, 1, ...`, used for the divergence check.
pub fn refinement_depth(level: u32) -> f64 {
    4.0 * f64::from(1u32 << level)
}

/// Deepen the truncation until two successive values agree to `rel_tol`.
pub fn converged_norm(spec: &DomainSpec, alpha: (i64, i64), rel_tol: f64) -> Option<f64> {
    let mut prev = norm_by_quadrature(spec, alpha, refinement_depth(2));
    for level in 3..=12 {
        let cur = norm_by_quadrature(spec, alpha, refinement_depth(level));
        if (cur - prev).abs() <= rel_tol * cur.abs() {
            return Some(cur);
        }
        prev = cur;
    }
    None
}
