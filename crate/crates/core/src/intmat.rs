//! Exact 2×2 integer matrix algebra.
//!
//! Entries are stored row-major: `m[i][j]` is row `i`, column `j`. In the
//! upper/lower index notation common in the literature on monomial polyhedra
//! (`b_j^i` = row `i`, column `j`), the defining matrix
//!
//! ```text
//! B = [ b_1^1  b_2^1 ]
//!     [ b_1^2  b_2^2 ]
//! ```
//!
//! describes the domain `|z1|^{b_1^1} |z2|^{b_2^1} < 1, |z1|^{b_1^2} |z2|^{b_2^2} < 1`,
//! i.e. row `i` holds the exponents of the `i`-th defining inequality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    m: [[BigInt; 2]; 2],
}

impl IntMatrix2 {
    /// Row-major constructor: `[[m00, m01], [m10, m11]]`.
    pub fn new(m00: i64, m01: i64, m10: i64, m11: i64) -> Self {
        Self::from_big([
            [BigInt::from(m00), BigInt::from(m01)],
            [BigInt::from(m10), BigInt::from(m11)],
        ])
    }

    pub fn from_rows(rows: [[i64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn from_big(m: [[BigInt; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// The column swap `R = [[0,1],[1,0]]`.
    pub fn swap() -> Self {
        Self::new(0, 1, 1, 0)
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.m[row][col]
    }

    pub fn rows(&self) -> &[[BigInt; 2]; 2] {
        &self.m
    }

    pub fn column(&self, col: usize) -> [BigInt; 2] {
        [self.m[0][col].clone(), self.m[1][col].clone()]
    }

    pub fn det(&self) -> BigInt {
        det2(self)
    }

    pub fn mul(&self, rhs: &IntMatrix2) -> IntMatrix2 {
        let e = |i: usize, j: usize| &self.m[i][0] * &rhs.m[0][j] + &self.m[i][1] * &rhs.m[1][j];
        IntMatrix2::from_big([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn swap_rows(&self) -> IntMatrix2 {
        IntMatrix2::from_big([self.m[1].clone(), self.m[0].clone()])
    }

    /// Narrow to machine integers, if every entry fits.
    pub fn to_i64(&self) -> Option<[[i64; 2]; 2]> {
        Some([
            [self.m[0][0].to_i64()?, self.m[0][1].to_i64()?],
            [self.m[1][0].to_i64()?, self.m[1][1].to_i64()?],
        ])
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

/// The data of the unimodular reduction `L·A = H`, `H = [[1, h], [0, det A]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteDecomposition {
    pub l: IntMatrix2,
    pub h_mat: IntMatrix2,
    pub ell1: BigInt,
    pub ell2: BigInt,
    pub h: BigInt,
    pub det_a: BigInt,
}

pub fn det2(m: &IntMatrix2) -> BigInt {
    &m.m[0][0] * &m.m[1][1] - &m.m[1][0] * &m.m[0][1]
}

pub fn adjugate(m: &IntMatrix2) -> IntMatrix2 {
    IntMatrix2::from_big([
        [m.m[1][1].clone(), -&m.m[0][1]],
        [-&m.m[1][0], m.m[0][0].clone()],
    ])
}

/// Swap the rows of `b` if needed so that `det(b) > 0`. The domain is unchanged.
pub fn normalize(b: &IntMatrix2) -> Result<IntMatrix2> {
    let d = b.det();
    if d.is_zero() {
        Err(Error::SingularMatrix)
    } else if d.is_positive() {
        Ok(b.clone())
    } else {
        Ok(b.swap_rows())
    }
}

/// Normalize `b` and accept it iff the domain it defines is bounded.
///
/// With `det(B) > 0` the log-shadow `{x : Bx < 0}` is the cone spanned by the
/// columns of `-B⁻¹ = -adj(B)/det(B)`, so it lies in the negative quadrant (and
/// the domain in the unit bidisc) exactly when `adj(B)` is entrywise nonnegative.
pub fn check_bounded(b: &IntMatrix2) -> Result<IntMatrix2> {
    let n = normalize(b)?;
    let adj = adjugate(&n);
    if adj.m.iter().flatten().any(|e| e.is_negative()) {
        return Err(Error::UnboundedDomain);
    }
    Ok(n)
}

/// `gcd(|x|, |y|)` with `gcd(x, 0) = |x|`.
pub fn gcd(x: &BigInt, y: &BigInt) -> BigInt {
    x.gcd(y)
}

/// Column-reduced adjugate `A` together with the column gcds `(g1, g2)`,
/// so that `adj(B) = A·diag(g1, g2)`.
pub fn reduce_with_gcds(b: &IntMatrix2) -> (IntMatrix2, BigInt, BigInt) {
    let adj = adjugate(b);
    let g1 = gcd(adj.get(0, 0), adj.get(1, 0));
    let g2 = gcd(adj.get(0, 1), adj.get(1, 1));
    let a = IntMatrix2::from_big([
        [adj.get(0, 0) / &g1, adj.get(0, 1) / &g2],
        [adj.get(1, 0) / &g1, adj.get(1, 1) / &g2],
    ]);
    (a, g1, g2)
}

/// Divide each column of `adj(b)` by the gcd of its entries.
///
/// `b` must already be normalized and bounded (see [`check_bounded`]).
pub fn reduce_to_a(b: &IntMatrix2) -> IntMatrix2 {
    reduce_with_gcds(b).0
}

/// Returns `(g, alpha, gamma)` with `g = gcd(|a|, |c|)` and `alpha·a + gamma·c = g`.
pub fn extended_gcd(a: &BigInt, c: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), c.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// The unique `L = [[ℓ1, ℓ2], [-c, a]]` with `det L = 1` and
/// `L·A = [[1, h], [0, det A]]`, `0 ≤ h < det A`, for `A = [[a, b], [c, d]]`
/// with coprime columns and positive determinant.
pub fn hermite(a_mat: &IntMatrix2) -> Result<HermiteDecomposition> {
    let [[a, b], [c, d]] = a_mat.rows().clone();
    let det_a = a_mat.det();
    if !det_a.is_positive() {
        return Err(Error::PreconditionViolated(format!(
            "hermite needs det(A) > 0, got {det_a}"
        )));
    }
    if !gcd(&a, &c).is_one() || !gcd(&b, &d).is_one() {
        return Err(Error::PreconditionViolated(format!(
            "hermite needs coprime columns, got {a_mat}"
        )));
    }
    let (_, alpha, gamma) = extended_gcd(&a, &c);
    let h1 = &alpha * &b + &gamma * &d;
    let (q, h) = h1.div_mod_floor(&det_a);
    let ell1 = &alpha + &q * &c;
    let ell2 = &gamma - &a * &q;
    let l = IntMatrix2::from_big([[ell1.clone(), ell2.clone()], [-&c, a.clone()]]);
    let h_mat = IntMatrix2::from_big([[BigInt::one(), h.clone()], [BigInt::zero(), det_a.clone()]]);
    debug_assert_eq!(l.mul(a_mat), h_mat);
    Ok(HermiteDecomposition {
        l,
        h_mat,
        ell1,
        ell2,
        h,
        det_a,
    })
}
