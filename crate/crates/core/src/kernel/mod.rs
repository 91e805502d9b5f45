//! Closed-form Bergman kernels of bounded two-dimensional monomial polyhedra.
//!
//! For a bounded domain with (normalized) defining matrix `B`, let `A` be the
//! column-reduced adjugate of `B`. The kernel is
//!
//! ```text
//! K(z, w) = 1/(π² det A) · g(t1, t2) / ((t2^{a12} - t1^{a22})² (t1^{a21} - t2^{a11})²)
//! ```
//!
//! with `t_j = z_j · conj(w_j)` and `aij` the row `i`, column `j` entry of `A`.
//! The numerator `g` has coefficients `D_{det A}(N(A, γ)) · D_{det A}(N(AR, γ))`.

mod format;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::intmat::{check_bounded, reduce_to_a, IntMatrix2};
use crate::poly::BiLaurentPoly;

/// Scale of every kernel formula is `1 / (det A · π²)`.
pub const PI_EXPONENT: i32 = -2;

/// Entries beyond this are rejected before any enumeration starts.
const MAX_ENTRY: i64 = 1 << 20;
/// Cap on the number of exponent pairs scanned for the numerator.
const MAX_BOX_CELLS: i64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelFormula {
    /// The normalized defining matrix `B`.
    pub matrix: IntMatrix2,
    /// The column-reduced adjugate `A`.
    pub reduced: IntMatrix2,
    pub det_a: i64,
    pub numerator: BiLaurentPoly,
    /// `[(t2^{a12} - t1^{a22}, 2), (t1^{a21} - t2^{a11}, 2)]`, in this order.
    pub denom_factors: Vec<(BiLaurentPoly, u32)>,
}

/// Parameters of the generalized Hartogs triangle `{|z1|^k1 < |z2|^k2 < 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HartogsParams {
    k1: i64,
    k2: i64,
}

impl HartogsParams {
    /// Requires `0 ≤ k2 < k1` and `gcd(k1, k2) = 1` (so `k2 = 0` forces `k1 = 1`),
    /// or the classical triangle `k1 = k2 = 1`.
    pub fn new(k1: i64, k2: i64) -> Result<Self> {
        let classical = k1 == 1 && k2 == 1;
        if !classical && (k1 < 1 || k2 < 0 || k2 >= k1 || k1.gcd(&k2) != 1) {
            return Err(Error::PreconditionViolated(format!(
                "Hartogs parameters need 0 <= k2 < k1, gcd(k1, k2) = 1; got ({k1}, {k2})"
            )));
        }
        Ok(Self { k1, k2 })
    }

    pub fn k1(&self) -> i64 {
        self.k1
    }

    pub fn k2(&self) -> i64 {
        self.k2
    }

    /// `B = [[k1, -k2], [0, 1]]`.
    pub fn matrix(&self) -> IntMatrix2 {
        IntMatrix2::new(self.k1, -self.k2, 0, 1)
    }
}

/// Coefficients of `((1 - x^k)/(1 - x))^2`: `1 + r` on `[0, k-1]`,
/// `2k - 1 - r` on `[k, 2k-2]`, zero elsewhere.
pub fn d_k(k: i64, r: i64) -> i64 {
    assert!(k >= 1, "d_k needs k >= 1");
    if (0..k).contains(&r) {
        1 + r
    } else if (k..=2 * k - 2).contains(&r) {
        2 * k - 1 - r
    } else {
        0
    }
}

pub fn perm2(p: &IntMatrix2) -> BigInt {
    p.get(0, 0) * p.get(1, 1) + p.get(0, 1) * p.get(1, 0)
}

/// `N(P, γ) = p11 γ1 + p21 γ2 - 2 p11 p21 + p11 + p21 - 1 - perm(P) + |det P|`,
/// where `p11`, `p21` are the entries of the first column of `P`.
pub fn n_func(p: &IntMatrix2, gamma: (i64, i64)) -> BigInt {
    let (c0, c1) = (p.get(0, 0), p.get(1, 0));
    let (g1, g2) = (BigInt::from(gamma.0), BigInt::from(gamma.1));
    c0 * &g1 + c1 * &g2 - 2 * c0 * c1 + c0 + c1 - 1 - perm2(p) + p.det().abs()
}

/// Machine-integer `N(P, γ)` for the enumeration loop.
fn n_small(p: &[[i64; 2]; 2], gamma: (i64, i64)) -> i64 {
    let (c0, c1) = (p[0][0], p[1][0]);
    let perm = p[0][0] * p[1][1] + p[0][1] * p[1][0];
    let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    c0 * gamma.0 + c1 * gamma.1 - 2 * c0 * c1 + c0 + c1 - 1 - perm + det.abs()
}

/// `lower ≤ coef.0·γ1 + coef.1·γ2 + offset ≤ upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strip {
    pub coef: (i64, i64),
    pub offset: i64,
    pub lower: i64,
    pub upper: i64,
}

impl Strip {
    pub fn value(&self, gamma: (i64, i64)) -> i64 {
        self.coef.0 * gamma.0 + self.coef.1 * gamma.1 + self.offset
    }

    pub fn contains(&self, gamma: (i64, i64)) -> bool {
        (self.lower..=self.upper).contains(&self.value(gamma))
    }
}

/// Where the numerator `g` can have nonzero coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportBounds {
    /// Inclusive range of `γ1`.
    pub gamma1: (i64, i64),
    /// Inclusive range of `γ2`.
    pub gamma2: (i64, i64),
    /// The two strips whose intersection is the parallelogram.
    pub strips: [Strip; 2],
}

impl SupportBounds {
    pub fn in_box(&self, gamma: (i64, i64)) -> bool {
        (self.gamma1.0..=self.gamma1.1).contains(&gamma.0)
            && (self.gamma2.0..=self.gamma2.1).contains(&gamma.1)
    }

    pub fn in_parallelogram(&self, gamma: (i64, i64)) -> bool {
        self.strips.iter().all(|s| s.contains(gamma))
    }

    /// The corner opposite the origin; `g` is palindromic about it.
    pub fn gamma_max(&self) -> (i64, i64) {
        (self.gamma1.1, self.gamma2.1)
    }
}

pub(crate) fn small_matrix(m: &IntMatrix2) -> Result<[[i64; 2]; 2]> {
    m.to_i64()
        .filter(|r| r.iter().flatten().all(|e| e.abs() <= MAX_ENTRY))
        .ok_or_else(|| Error::TooLarge(format!("matrix entries of {m} exceed {MAX_ENTRY}")))
}

/// Box and parallelogram bounds on the support of `g` for a reduced matrix `A`.
pub fn support_bounds(a: &IntMatrix2) -> Result<SupportBounds> {
    let m = small_matrix(a)?;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det <= 0 {
        return Err(Error::PreconditionViolated(format!(
            "support bounds need det(A) > 0, got {det}"
        )));
    }
    let [[a11, a12], [a21, a22]] = m;
    let strip = |c0: i64, c1: i64| Strip {
        coef: (c0, c1),
        offset: -2 * c0 * c1 + c0 + c1 - 2 * a21 * a12 - 1,
        lower: 0,
        upper: 2 * det - 2,
    };
    // first strip is N(A, γ), second is N(AR, γ)
    let first = strip(a11, a21);
    let second = Strip {
        offset: -2 * a21 * a12 + a12 + a22 - 2 * a12 * a22 - 1,
        ..strip(a12, a22)
    };
    Ok(SupportBounds {
        gamma1: (0, 2 * a21 + 2 * a22 - 2),
        gamma2: (0, 2 * a11 + 2 * a12 - 2),
        strips: [first, second],
    })
}

fn binomial(plus: (i64, i64), minus: (i64, i64)) -> BiLaurentPoly {
    BiLaurentPoly::from_int_terms([(plus, 1), (minus, -1)])
}

fn denominator_factors(a: &[[i64; 2]; 2]) -> Vec<(BiLaurentPoly, u32)> {
    let [[a11, a12], [a21, a22]] = *a;
    vec![
        (binomial((0, a12), (a22, 0)), 2),
        (binomial((a21, 0), (0, a11)), 2),
    ]
}

fn check_box(len1: i64, len2: i64) -> Result<()> {
    if len1.saturating_mul(len2) > MAX_BOX_CELLS {
        return Err(Error::TooLarge(format!(
            "numerator search box {len1}x{len2} is too large"
        )));
    }
    Ok(())
}

/// Kernel of the generalized Hartogs triangle `{|z1|^k1 < |z2|^k2 < 1}`.
pub fn hartogs_kernel(params: HartogsParams) -> KernelFormula {
    let HartogsParams { k1, k2 } = params;
    let mut numerator = BiLaurentPoly::zero();
    for b1 in 0..=2 * k1 - 2 {
        for b2 in 0..=2 * k2 {
            let c = d_k(k1, b1) * d_k(k1, k1 * b2 + b1 * k2 + k1 + k2 - 1 - 2 * k1 * k2);
            numerator.add_term((b1, b2), BigInt::from(c).into());
        }
    }
    let a = [[1, k2], [0, k1]];
    KernelFormula {
        matrix: params.matrix(),
        reduced: IntMatrix2::from_rows(a),
        det_a: k1,
        numerator,
        denom_factors: denominator_factors(&a),
    }
}

/// Kernel of the bounded monomial polyhedron defined by `b` (rows in either order).
pub fn general_kernel(b: &IntMatrix2) -> Result<KernelFormula> {
    let b = check_bounded(b)?;
    let reduced = reduce_to_a(&b);
    let a = small_matrix(&reduced)?;
    let det_a = reduced.det().to_i64().expect("bounded by small entries");
    let bounds = support_bounds(&reduced)?;
    let ar = [[a[0][1], a[0][0]], [a[1][1], a[1][0]]];
    check_box(bounds.gamma1.1 + 1, bounds.gamma2.1 + 1)?;

    let mut numerator = BiLaurentPoly::zero();
    for g1 in bounds.gamma1.0..=bounds.gamma1.1 {
        for g2 in bounds.gamma2.0..=bounds.gamma2.1 {
            let first = d_k(det_a, n_small(&a, (g1, g2)));
            if first == 0 {
                continue;
            }
            let c = first * d_k(det_a, n_small(&ar, (g1, g2)));
            numerator.add_term((g1, g2), BigInt::from(c).into());
        }
    }
    Ok(KernelFormula {
        matrix: b,
        reduced,
        det_a,
        numerator,
        denom_factors: denominator_factors(&a),
    })
}

/// `t_j = z_j · conj(w_j)`.
pub fn t_values(z: [Complex64; 2], w: [Complex64; 2]) -> (Complex64, Complex64) {
    (z[0] * w[0].conj(), z[1] * w[1].conj())
}

/// Relative size below which a denominator factor counts as vanishing.
const SINGULAR_REL: f64 = 1e-14;

pub fn eval_kernel(f: &KernelFormula, z: [Complex64; 2], w: [Complex64; 2]) -> Result<Complex64> {
    let (t1, t2) = t_values(z, w);
    let num = f.numerator.eval(t1, t2)?;
    let mut den = Complex64::new(std::f64::consts::PI.powi(2) * f.det_a as f64, 0.0);
    for (factor, power) in &f.denom_factors {
        let v = factor.eval(t1, t2)?;
        let scale = factor.eval_abs(t1.norm(), t2.norm())?;
        if v.norm() <= SINGULAR_REL * scale {
            return Err(Error::SingularEvaluation(format!(
                "factor {} vanishes at t = ({t1}, {t2})",
                factor.render(crate::poly::Notation::Plain, true)
            )));
        }
        den *= v.powi(*power as i32);
    }
    Ok(num / den)
}

impl KernelFormula {
    pub fn support_bounds(&self) -> Result<SupportBounds> {
        support_bounds(&self.reduced)
    }

    pub fn evaluate(&self, z: [Complex64; 2], w: [Complex64; 2]) -> Result<Complex64> {
        eval_kernel(self, z, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn m(r: [[i64; 2]; 2]) -> IntMatrix2 {
        IntMatrix2::from_rows(r)
    }

    fn poly(terms: &[((i64, i64), i64)]) -> BiLaurentPoly {
        BiLaurentPoly::from_int_terms(terms.iter().copied())
    }

    #[test]
    fn d_k_values() {
        assert_eq!(d_k(3, 2), 3);
        assert_eq!(d_k(3, 4), 1);
        assert_eq!(d_k(3, 5), 0);
        assert_eq!(d_k(1, 0), 1);
        assert_eq!(d_k(7, -1), 0);
        assert_eq!(d_k(11, 10), 11);
        for k in 1..30 {
            for r in -3..2 * k + 3 {
                assert_eq!(d_k(k, r), d_k(k, 2 * k - 2 - r));
            }
        }
    }

    #[test]
    fn permanents() {
        assert_eq!(perm2(&IntMatrix2::identity()), 1.into());
        assert_eq!(perm2(&m([[3, 1], [1, 4]])), 13.into());
        assert_eq!(perm2(&IntMatrix2::swap()), 1.into());
    }

    #[test]
    fn n_values() {
        let a = m([[3, 1], [1, 4]]);
        assert_eq!(n_func(&a, (4, 3)), 10.into());
        assert_eq!(n_func(&a.mul(&IntMatrix2::swap()), (4, 3)), 10.into());
        assert_eq!(n_func(&IntMatrix2::identity(), (0, 0)), 0.into());
        let small = a.to_i64().unwrap();
        for g in [(0, 0), (4, 3), (8, 6), (-2, 5)] {
            assert_eq!(BigInt::from(n_small(&small, g)), n_func(&a, g));
        }
    }

    #[test]
    fn hartogs_examples() {
        let bidisc = hartogs_kernel(HartogsParams::new(1, 0).unwrap());
        assert_eq!(bidisc.det_a, 1);
        assert_eq!(bidisc.numerator, BiLaurentPoly::one());
        assert_eq!(
            bidisc.denom_factors[0].0,
            poly(&[((0, 0), 1), ((1, 0), -1)])
        );
        assert_eq!(
            bidisc.denom_factors[1].0,
            poly(&[((0, 0), 1), ((0, 1), -1)])
        );

        let classic = hartogs_kernel(HartogsParams::new(1, 1).unwrap());
        assert_eq!(classic.numerator, poly(&[((0, 1), 1)]));
        assert_eq!(
            classic.denom_factors[0].0,
            poly(&[((0, 1), 1), ((1, 0), -1)])
        );

        let h21 = hartogs_kernel(HartogsParams::new(2, 1).unwrap());
        assert_eq!(h21.det_a, 2);
        assert_eq!(
            h21.numerator,
            poly(&[
                ((2, 0), 1),
                ((1, 1), 4),
                ((0, 1), 1),
                ((2, 1), 1),
                ((0, 2), 1)
            ])
        );
        assert_eq!(h21.denom_factors[0].0, poly(&[((0, 1), 1), ((2, 0), -1)]));
    }

    #[test]
    fn hartogs_params_validation() {
        assert!(HartogsParams::new(1, 0).is_ok());
        assert!(HartogsParams::new(11, 4).is_ok());
        assert!(HartogsParams::new(2, 0).is_err());
        assert!(HartogsParams::new(4, 2).is_err());
        assert!(HartogsParams::new(3, 3).is_err());
        assert!(HartogsParams::new(1, 1).is_ok());
        assert!(HartogsParams::new(0, 0).is_err());
    }

    #[test]
    fn general_agrees_with_hartogs() {
        for k1 in 1..=12 {
            for k2 in 0..k1 {
                let Ok(params) = HartogsParams::new(k1, k2) else {
                    continue;
                };
                let h = hartogs_kernel(params);
                let g = general_kernel(&params.matrix()).unwrap();
                assert_eq!(g.det_a, h.det_a);
                assert_eq!(g.numerator, h.numerator, "({k1}, {k2})");
                assert_eq!(g.denom_factors, h.denom_factors, "({k1}, {k2})");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn n_is_antisymmetric_about_gamma_max(
            a11 in 0i64..12, a12 in 0i64..12, a21 in 0i64..12, a22 in 0i64..12,
            g1 in -20i64..40, g2 in -20i64..40,
        ) {
            let det = a11 * a22 - a12 * a21;
            proptest::prop_assume!(det > 0);
            let a = m([[a11, a12], [a21, a22]]);
            let (m1, m2) = support_bounds(&a).unwrap().gamma_max();
            for p in [a.clone(), a.mul(&IntMatrix2::swap())] {
                let sum = n_func(&p, (g1, g2)) + n_func(&p, (m1 - g1, m2 - g2));
                proptest::prop_assert_eq!(sum, BigInt::from(2 * det - 2));
            }
        }
    }

    #[test]
    fn general_examples() {
        let f = general_kernel(&m([[1, -2], [-1, 4]])).unwrap();
        assert_eq!(f.det_a, 2);
        assert_eq!(
            f.numerator,
            poly(&[
                ((0, 8), 1),
                ((1, 4), 1),
                ((1, 5), 4),
                ((1, 6), 1),
                ((2, 2), 1)
            ])
        );
        assert_eq!(f.denom_factors[0].0, poly(&[((0, 2), 1), ((1, 0), -1)]));
        assert_eq!(f.denom_factors[1].0, poly(&[((1, 0), 1), ((0, 4), -1)]));

        let f = general_kernel(&m([[4, -1], [-1, 3]])).unwrap();
        assert_eq!(f.det_a, 11);
        assert_eq!(
            f.numerator.coeff(4, 3),
            BigRational::from_integer(121.into())
        );
        assert_eq!(f.numerator.coeff(1, 2), BigRational::from_integer(4.into()));

        let f = general_kernel(&IntMatrix2::identity()).unwrap();
        assert_eq!(f.det_a, 1);
        assert_eq!(f.numerator, BiLaurentPoly::one());

        assert_eq!(
            general_kernel(&m([[1, 1], [0, 1]])),
            Err(Error::UnboundedDomain)
        );
        assert_eq!(
            general_kernel(&m([[2, 1], [2, 1]])),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn support_examples() {
        let s = support_bounds(&m([[3, 1], [1, 4]])).unwrap();
        assert_eq!((s.gamma1, s.gamma2), ((0, 8), (0, 6)));
        let s = support_bounds(&m([[1, 1], [0, 1]])).unwrap();
        assert_eq!((s.gamma1, s.gamma2), ((0, 0), (0, 2)));
        let inside: Vec<_> = (0..=0)
            .flat_map(|a| (0..=2).map(move |b| (a, b)))
            .filter(|&g| s.in_parallelogram(g))
            .collect();
        assert_eq!(inside, vec![(0, 1)]);
        let s = support_bounds(&IntMatrix2::identity()).unwrap();
        assert_eq!((s.gamma1, s.gamma2), ((0, 0), (0, 0)));
    }

    #[test]
    fn strips_match_n() {
        let a = m([[3, 1], [1, 4]]);
        let ar = a.mul(&IntMatrix2::swap());
        let s = support_bounds(&a).unwrap();
        for g1 in -2..10 {
            for g2 in -2..8 {
                assert_eq!(
                    BigInt::from(s.strips[0].value((g1, g2))),
                    n_func(&a, (g1, g2))
                );
                assert_eq!(
                    BigInt::from(s.strips[1].value((g1, g2))),
                    n_func(&ar, (g1, g2))
                );
            }
        }
    }

    #[test]
    fn evaluation() {
        let pi2 = std::f64::consts::PI.powi(2);
        let zero = Complex64::new(0.0, 0.0);
        let bidisc = general_kernel(&IntMatrix2::identity()).unwrap();
        let v = eval_kernel(&bidisc, [zero; 2], [zero; 2]).unwrap();
        assert!((v.re - 1.0 / pi2).abs() < 1e-15 && v.im == 0.0);

        let classic = hartogs_kernel(HartogsParams::new(1, 1).unwrap());
        let p = [zero, Complex64::new(0.5, 0.0)];
        let v = eval_kernel(&classic, p, p).unwrap();
        let expected = 0.25 / (pi2 * 0.25f64.powi(2) * 0.75f64.powi(2));
        assert!((v.re - expected).abs() < 1e-12 * expected);

        let z = [Complex64::new(0.2, 0.1), Complex64::new(0.4, -0.3)];
        let w = [Complex64::new(-0.1, 0.2), Complex64::new(0.1, 0.6)];
        let a = eval_kernel(&classic, z, w).unwrap();
        let b = eval_kernel(&classic, w, z).unwrap();
        assert!((a - b.conj()).norm() <= 1e-14 * a.norm());
    }

    #[test]
    fn singular_evaluation() {
        let classic = hartogs_kernel(HartogsParams::new(1, 1).unwrap());
        let p = [Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)];
        assert!(matches!(
            eval_kernel(&classic, p, p),
            Err(Error::SingularEvaluation(_))
        ));
    }
}
