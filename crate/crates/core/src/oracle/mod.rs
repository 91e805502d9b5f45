//! Independent numerical checks of the closed-form kernel.
//!
//! Two oracles are provided, neither of which touches the `D_k`/`N`
//! combinatorics of [`crate::kernel`]:
//!
//! * [`series_kernel`] sums the orthonormal Laurent-monomial expansion of the
//!   kernel, with squared norms from [`monomial_norm`];
//! * [`transported_kernel`] pushes the bidisc kernel through the proper map
//!   onto a generalized Hartogs triangle (a finite sum over local inverse
//!   branches) and then through the monomial biholomorphism onto the domain.

mod bell;
pub mod quad;
mod sample;
mod series;
mod verify;

pub use bell::{
    bell_sum_hartogs, h_function, h_symmetry_check, transported_kernel, transported_kernel_branch,
};
pub use sample::sample_points;
pub use series::{series_kernel, DEFAULT_TRUNC_CAP};
pub use verify::{verify, OracleKind, ReportEntry, VerificationReport};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::intmat::{
    adjugate, check_bounded, hermite, reduce_with_gcds, HermiteDecomposition, IntMatrix2,
};
use crate::kernel::small_matrix;

pub type Point = [Complex64; 2];

/// A bounded monomial polyhedron together with the integer data derived from
/// its defining matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainSpec {
    b: IntMatrix2,
    adj: IntMatrix2,
    det_b: BigInt,
    a: IntMatrix2,
    hermite: HermiteDecomposition,
    // machine-integer copies for the numeric code
    pub(crate) b_s: [[i64; 2]; 2],
    pub(crate) adj_s: [[i64; 2]; 2],
    pub(crate) a_s: [[i64; 2]; 2],
    pub(crate) det_b_s: i64,
    pub(crate) det_a_s: i64,
    pub(crate) ell: (i64, i64),
    pub(crate) h: i64,
}

impl DomainSpec {
    /// Normalizes `b` and rejects singular or unbounded matrices.
    pub fn new(b: &IntMatrix2) -> Result<Self> {
        let b = check_bounded(b)?;
        let adj = adjugate(&b);
        let (a, _, _) = reduce_with_gcds(&b);
        let hermite = hermite(&a)?;
        let narrow = |x: &BigInt| {
            x.to_i64()
                .ok_or_else(|| Error::TooLarge(format!("integer {x} does not fit in 64 bits")))
        };
        Ok(Self {
            b_s: small_matrix(&b)?,
            adj_s: small_matrix(&adj)?,
            a_s: small_matrix(&a)?,
            det_b_s: narrow(&b.det())?,
            det_a_s: narrow(&hermite.det_a)?,
            ell: (narrow(&hermite.ell1)?, narrow(&hermite.ell2)?),
            h: narrow(&hermite.h)?,
            det_b: b.det(),
            b,
            adj,
            a,
            hermite,
        })
    }

    pub fn matrix(&self) -> &IntMatrix2 {
        &self.b
    }

    pub fn adjugate(&self) -> &IntMatrix2 {
        &self.adj
    }

    pub fn det_b(&self) -> &BigInt {
        &self.det_b
    }

    pub fn reduced(&self) -> &IntMatrix2 {
        &self.a
    }

    pub fn hermite(&self) -> &HermiteDecomposition {
        &self.hermite
    }

    /// `|z1|^{b_i1} |z2|^{b_i2}` for both defining rows, given the moduli.
    /// `0^0 = 1`; a zero raised to a negative power is `+inf`.
    pub fn defining_monomials(&self, r: [f64; 2]) -> [f64; 2] {
        let pow = |x: f64, e: i64| -> f64 {
            if x == 0.0 && e < 0 {
                f64::INFINITY
            } else {
                x.powi(e as i32)
            }
        };
        let row = |i: usize| pow(r[0], self.b_s[i][0]) * pow(r[1], self.b_s[i][1]);
        [row(0), row(1)]
    }

    /// `d_j = ⟨(2α1 + 2, 2α2 + 2), column j of adj(B)⟩`; the monomial `z^α`
    /// is square integrable iff both are positive.
    pub fn integrability(&self, alpha: (i64, i64)) -> (i64, i64) {
        let c = (2 * alpha.0 + 2, 2 * alpha.1 + 2);
        let col = |j: usize| c.0 * self.adj_s[0][j] + c.1 * self.adj_s[1][j];
        (col(0), col(1))
    }
}

pub fn membership(spec: &DomainSpec, z: Point) -> bool {
    spec.defining_monomials([z[0].norm(), z[1].norm()])
        .iter()
        .all(|&m| m < 1.0)
}

/// `‖z^α‖² / π²` on the domain, exactly.
///
/// In log-moduli `x` the shadow is the cone `{Bx < 0}` and the norm integral
/// becomes `4π² ∫ exp⟨2α + 2, x⟩ dx`. The substitution `y = Bx` splits it into
/// two one-dimensional exponential integrals, giving `4 det(B) / (d1 d2)`.
pub fn monomial_norm(spec: &DomainSpec, alpha: (i64, i64)) -> Result<BigRational> {
    let (d1, d2) = spec.integrability(alpha);
    if d1 <= 0 || d2 <= 0 {
        return Err(Error::NotSquareIntegrable(alpha.0, alpha.1));
    }
    Ok(BigRational::new(
        4 * spec.det_b.clone(),
        BigInt::from(d1) * BigInt::from(d2),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: [[i64; 2]; 2]) -> DomainSpec {
        DomainSpec::new(&IntMatrix2::from_rows(r)).unwrap()
    }

    fn pt(a: f64, b: f64) -> Point {
        [Complex64::new(a, 0.0), Complex64::new(b, 0.0)]
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn membership_examples() {
        let hartogs = spec([[1, -1], [0, 1]]);
        assert!(membership(&hartogs, pt(0.2, 0.5)));
        assert!(!membership(&hartogs, pt(0.5, 0.2)));
        assert!(!membership(&hartogs, pt(0.2, 0.0)));
        let u = spec([[4, -1], [-1, 3]]);
        assert!(membership(&u, pt(0.5, 0.3)));
        let bidisc = spec([[1, 0], [0, 1]]);
        assert!(membership(&bidisc, pt(0.0, 0.0)));
        assert!(!membership(&bidisc, pt(1.0, 0.0)));
    }

    #[test]
    fn norm_examples() {
        let bidisc = spec([[1, 0], [0, 1]]);
        assert_eq!(monomial_norm(&bidisc, (0, 0)).unwrap(), q(1, 1));
        assert_eq!(
            monomial_norm(&bidisc, (0, -1)),
            Err(Error::NotSquareIntegrable(0, -1))
        );
        let hartogs = spec([[1, -1], [0, 1]]);
        assert_eq!(monomial_norm(&hartogs, (0, 0)).unwrap(), q(1, 2));
        assert_eq!(monomial_norm(&hartogs, (0, -1)).unwrap(), q(1, 1));
        assert!(monomial_norm(&hartogs, (0, -2)).is_err());
    }

    #[test]
    fn spec_rejects_bad_matrices() {
        assert_eq!(
            DomainSpec::new(&IntMatrix2::new(1, 1, 0, 1)),
            Err(Error::UnboundedDomain)
        );
        assert_eq!(
            DomainSpec::new(&IntMatrix2::new(1, 1, 1, 1)),
            Err(Error::SingularMatrix)
        );
    }
}
