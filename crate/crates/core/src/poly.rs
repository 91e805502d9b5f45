//! Sparse bivariate Laurent polynomials in `(t1, t2)` with exact rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Exponent = (i64, i64);

/// Terms are kept in a `BTreeMap`, so iteration is lexicographic in `(e1, e2)`
/// and no stored coefficient is ever zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiLaurentPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl BiLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigRational::one())
    }

    pub fn monomial(e1: i64, e2: i64, coeff: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term((e1, e2), coeff);
        p
    }

    /// `t1^e1 t2^e2` with an integer coefficient.
    pub fn int_monomial(e1: i64, e2: i64, coeff: i64) -> Self {
        Self::monomial(e1, e2, BigRational::from_integer(coeff.into()))
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_int_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, i64)>,
    {
        Self::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (e, BigRational::from_integer(c.into()))),
        )
    }

    /// Accumulate `coeff · t^e`, dropping the term if it cancels.
    pub fn add_term(&mut self, e: Exponent, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e1: i64, e2: i64) -> BigRational {
        self.terms
            .get(&(e1, e2))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v * c)))
    }

    /// Largest exponent of `t1` among the stored terms.
    pub fn degree_t1(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                out.add_term((e.0 + f.0, e.1 + f.1), c * d);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Direct summation in double precision, in lexicographic exponent order.
    pub fn eval(&self, t1: Complex64, t2: Complex64) -> Result<Complex64> {
        let mut sum = Complex64::zero();
        for (&(e1, e2), c) in &self.terms {
            let c = c.to_f64().unwrap_or(f64::NAN);
            sum += c * int_pow(t1, e1)? * int_pow(t2, e2)?;
        }
        Ok(sum)
    }

    /// Sum of `|c|·|t1|^e1·|t2|^e2`, the scale against which cancellation in
    /// [`eval`](Self::eval) is judged.
    pub fn eval_abs(&self, t1: f64, t2: f64) -> Result<f64> {
        let mut sum = 0.0;
        for (&(e1, e2), c) in &self.terms {
            let c = c.abs().to_f64().unwrap_or(f64::NAN);
            sum += c * real_pow(t1, e1)? * real_pow(t2, e2)?;
        }
        Ok(sum)
    }

    /// `[[e1, e2, "num/den"], ...]` in lexicographic exponent order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!([e.0, e.1, c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("polynomial term: {what} in {v}"));
        let arr = v.as_array().ok_or_else(|| bad("expected array"))?;
        let mut p = Self::zero();
        for term in arr {
            let t = term
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| bad("expected triple"))?;
            let e1 = t[0].as_i64().ok_or_else(|| bad("exponent"))?;
            let e2 = t[1].as_i64().ok_or_else(|| bad("exponent"))?;
            let c = t[2].as_str().ok_or_else(|| bad("coefficient string"))?;
            let c = BigRational::from_str(c).map_err(|_| bad("coefficient"))?;
            if p.terms.contains_key(&(e1, e2)) {
                return Err(bad("duplicate exponent"));
            }
            p.add_term((e1, e2), c);
        }
        Ok(p)
    }
}

fn int_pow(t: Complex64, e: i64) -> Result<Complex64> {
    if e < 0 && t.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let e = i32::try_from(e).map_err(|_| Error::TooLarge(format!("exponent {e}")))?;
    Ok(t.powi(e))
}

fn real_pow(t: f64, e: i64) -> Result<f64> {
    if e < 0 && t == 0.0 {
        return Err(Error::DivisionByZero);
    }
    let e = i32::try_from(e).map_err(|_| Error::TooLarge(format!("exponent {e}")))?;
    Ok(t.powi(e))
}

/// `((1 - x^k) / (1 - x))^2` as a polynomial in `t1`, by long division and
/// squaring.
pub fn expand_square_cyclotomic(k: u32) -> BiLaurentPoly {
    assert!(k >= 1, "k must be positive");
    let numerator = BiLaurentPoly::one().add(&BiLaurentPoly::int_monomial(k as i64, 0, -1));
    let divisor = BiLaurentPoly::one().add(&BiLaurentPoly::int_monomial(1, 0, -1));
    let (quotient, remainder) = div_rem_t1(&numerator, &divisor);
    debug_assert!(remainder.is_zero());
    quotient.mul(&quotient)
}

/// Long division of polynomials in `t1` alone (nonnegative exponents, `e2 = 0`).
fn div_rem_t1(num: &BiLaurentPoly, den: &BiLaurentPoly) -> (BiLaurentPoly, BiLaurentPoly) {
    let den_deg = den.degree_t1().expect("nonzero divisor");
    let lead = den.coeff(den_deg, 0);
    let mut rem = num.clone();
    let mut quot = BiLaurentPoly::zero();
    while let Some(d) = rem.degree_t1().filter(|&d| d >= den_deg) {
        let c = rem.coeff(d, 0) / &lead;
        let step = BiLaurentPoly::monomial(d - den_deg, 0, c);
        rem = rem.sub(&step.mul(den));
        quot = quot.add(&step);
    }
    (quot, rem)
}

impl BiLaurentPoly {
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Add for &BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn add(self, rhs: Self) -> BiLaurentPoly {
        BiLaurentPoly::add(self, rhs)
    }
}

impl Sub for &BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn sub(self, rhs: Self) -> BiLaurentPoly {
        BiLaurentPoly::sub(self, rhs)
    }
}

impl Mul for &BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn mul(self, rhs: Self) -> BiLaurentPoly {
        BiLaurentPoly::mul(self, rhs)
    }
}

impl Neg for &BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn neg(self) -> BiLaurentPoly {
        BiLaurentPoly::neg(self)
    }
}

/// Variable naming for [`BiLaurentPoly::render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    Plain,
    Latex,
}

impl BiLaurentPoly {
    /// Human-readable form: terms in lexicographic order, or positive
    /// coefficients first when `positive_first` is set (used for binomials
    /// such as `t1 - t2^3`).
    pub fn render(&self, notation: Notation, positive_first: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        if positive_first {
            terms.sort_by_key(|(e, c)| (c.is_negative(), **e));
        }
        let mut out = String::new();
        for (i, (&(e1, e2), c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let vars = render_vars(e1, e2, notation);
            let unit = mag.is_one();
            if !unit || vars.is_empty() {
                out.push_str(&render_coeff(&mag, notation));
                if !vars.is_empty() && notation == Notation::Plain {
                    out.push(' ');
                }
            }
            out.push_str(&vars);
        }
        out
    }
}

fn render_coeff(c: &BigRational, notation: Notation) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else if notation == Notation::Latex {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

fn render_vars(e1: i64, e2: i64, notation: Notation) -> String {
    let var = |name: &str, e: i64| -> Option<String> {
        match (e, notation) {
            (0, _) => None,
            (1, Notation::Plain) => Some(name.to_string()),
            (1, Notation::Latex) => Some(format!("t_{}", &name[1..])),
            (e, Notation::Plain) => Some(format!("{name}^{e}")),
            (e, Notation::Latex) => Some(format!("t_{}^{{{e}}}", &name[1..])),
        }
    };
    [var("t1", e1), var("t2", e2)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for BiLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Plain, false))
    }
}

/// Exact integer coefficient, if the rational is integral.
pub fn as_integer(c: &BigRational) -> Option<BigInt> {
    c.is_integer().then(|| c.to_integer())
}
