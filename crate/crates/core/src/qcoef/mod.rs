//! Exact coefficients: rational functions in the half-power variable `s`,
//! where `s^2 = q`.
//!
//! A [`QHalfRational`] is kept in canonical form, so equality of values is
//! structural equality:
//! - numerator and denominator are coprime as polynomials,
//! - the denominator's lowest exponent is 0 and its lowest coefficient is positive,
//! - the contents of numerator and denominator are coprime (the denominator
//!   content is 1 unless the value itself has a non-integral scalar),
//! - zero is `0/1`.

mod gcd;
mod laurent;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use laurent::LaurentPoly;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QHalfRational {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QHalfRational {
    pub fn zero() -> Self {
        QHalfRational {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    /// `c * s^e`.
    pub fn monomial(c: BigInt, e: i64) -> Self {
        QHalfRational {
            num: LaurentPoly::monomial(c, e),
            den: LaurentPoly::one(),
        }
    }

    /// `s^e`.
    pub fn s_pow(e: i64) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    /// `(-s)^e` for any integer `e`.
    pub fn neg_s_pow(e: i64) -> Self {
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(BigInt::from(sign), e)
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        QHalfRational {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `num / den`, canonicalized.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    /// Canonical form of `num / den` for arbitrary `num` and nonzero `den`.
    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = if num.is_monomial() || den.is_monomial() {
            None
        } else {
            let g = gcd::poly_gcd(num.coeffs(), den.coeffs());
            (g.len() > 1).then_some(g)
        };
        match g {
            Some(g) => {
                let g = LaurentPoly::from_coeffs(0, g);
                let num = num.div_exact(&g).expect("gcd divides numerator");
                let den = den.div_exact(&g).expect("gcd divides denominator");
                Self::normalize_units(num, den)
            }
            None => Self::normalize_units(num, den),
        }
    }

    /// Fixes the unit ambiguity (`±c * s^k`) of a coprime pair.
    fn normalize_units(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.low();
        let mut num = num.shift(-shift);
        let mut den = den.shift(-shift);
        let g = num.content().gcd(&den.content());
        if !g.is_one() {
            num = num.div_int_exact(&g);
            den = den.div_int_exact(&g);
        }
        if den.lowest_coeff().is_some_and(Signed::is_negative) {
            num = num.neg();
            den = den.neg();
        }
        QHalfRational { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inversion of zero".into()));
        }
        Ok(Self::normalize_units(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = u32::try_from(e).map_err(|_| Error::Arithmetic("exponent too large".into()))?;
        if self.is_zero() {
            return Ok(if e == 0 { Self::one() } else { Self::zero() });
        }
        // powers of a coprime pair stay coprime
        Ok(Self::normalize_units(self.num.pow(e), self.den.pow(e)))
    }

    /// The substitution `s -> s^{-1}`.
    pub fn invert_variable(&self) -> Self {
        Self::normalize_units(self.num.reflect(), self.den.reflect())
    }

    /// Multiplies by `s^e`.
    pub fn shift(&self, e: i64) -> Self {
        QHalfRational {
            num: self.num.shift(e),
            den: self.den.clone(),
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        // with g = gcd(b, d): a/b + c/d = (a d' + c b') / (b' d' g), and any
        // common factor of the new numerator with b' d' g already divides g
        let (b, d) = (&self.den, &other.den);
        let g = if b.is_monomial() || d.is_monomial() {
            LaurentPoly::one()
        } else {
            LaurentPoly::from_coeffs(0, gcd::poly_gcd(b.coeffs(), d.coeffs()))
        };
        let b1 = b.div_exact(&g).expect("gcd divides");
        let d1 = d.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return Self::zero();
        }
        if g.is_one() {
            return Self::normalize_units(num, b1.mul(&d1).mul(&g));
        }
        let h = if num.is_monomial() {
            LaurentPoly::one()
        } else {
            LaurentPoly::from_coeffs(0, gcd::poly_gcd(num.coeffs(), g.coeffs()))
        };
        let num = num.div_exact(&h).expect("gcd divides");
        let g = g.div_exact(&h).expect("gcd divides");
        Self::normalize_units(num, b1.mul(&d1).mul(&g))
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = (&self.num, &self.den);
        let (c, d) = (&other.num, &other.den);
        let (a, d) = cancel(a, d);
        let (c, b) = cancel(c, b);
        Self::normalize_units(a.mul(&c), b.mul(&d))
    }

    /// Laurent expansion around `s = 0`: all nonzero terms with exponent at
    /// most `order`, in ascending exponent order.
    ///
    /// Fails if a coefficient is not an integer, which can only happen when
    /// the denominator's constant term is not `±1`.
    pub fn laurent_expand(&self, order: i64) -> Result<Vec<(i64, BigInt)>> {
        let low = self.num.low();
        if self.is_zero() || order < low {
            return Ok(Vec::new());
        }
        let den = self.den.coeffs();
        let d0 = &den[0];
        let len = (order - low + 1) as usize;
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = self.num.coeff(low + k as i64);
            for (j, dj) in den.iter().enumerate().skip(1).take(k) {
                if !dj.is_zero() {
                    acc -= dj * &out[k - j];
                }
            }
            let (q, r) = acc.div_rem(d0);
            if !r.is_zero() {
                return Err(Error::Arithmetic(format!(
                    "expansion of {self} has a non-integral coefficient at s^{}",
                    low + k as i64
                )));
            }
            out.push(q);
        }
        Ok(out
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (low + k as i64, c))
            .collect())
    }

    /// Whether the expansion up to `order` has only even exponents and
    /// non-negative coefficients.
    pub fn expands_even_nonnegative(&self, order: i64) -> Result<bool> {
        Ok(self
            .laurent_expand(order)?
            .iter()
            .all(|(e, c)| e % 2 == 0 && !c.is_negative()))
    }
}

fn cancel(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if a.is_monomial() || b.is_monomial() {
        return (a.clone(), b.clone());
    }
    let g = gcd::poly_gcd(a.coeffs(), b.coeffs());
    if g.len() == 1 {
        return (a.clone(), b.clone());
    }
    let g = LaurentPoly::from_coeffs(0, g);
    (
        a.div_exact(&g).expect("gcd divides"),
        b.div_exact(&g).expect("gcd divides"),
    )
}

impl Add for &QHalfRational {
    type Output = QHalfRational;
    fn add(self, rhs: &QHalfRational) -> QHalfRational {
        self.add_impl(rhs)
    }
}

impl Add for QHalfRational {
    type Output = QHalfRational;
    fn add(self, rhs: QHalfRational) -> QHalfRational {
        self.add_impl(&rhs)
    }
}

impl Sub for &QHalfRational {
    type Output = QHalfRational;
    fn sub(self, rhs: &QHalfRational) -> QHalfRational {
        self.add_impl(&-rhs)
    }
}

impl Sub for QHalfRational {
    type Output = QHalfRational;
    fn sub(self, rhs: QHalfRational) -> QHalfRational {
        self.add_impl(&-rhs)
    }
}

impl Mul for &QHalfRational {
    type Output = QHalfRational;
    fn mul(self, rhs: &QHalfRational) -> QHalfRational {
        self.mul_impl(rhs)
    }
}

impl Mul for QHalfRational {
    type Output = QHalfRational;
    fn mul(self, rhs: QHalfRational) -> QHalfRational {
        self.mul_impl(&rhs)
    }
}

impl Neg for &QHalfRational {
    type Output = QHalfRational;
    fn neg(self) -> QHalfRational {
        QHalfRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for QHalfRational {
    type Output = QHalfRational;
    fn neg(self) -> QHalfRational {
        -&self
    }
}

impl std::iter::Sum for QHalfRational {
    fn sum<I: Iterator<Item = QHalfRational>>(iter: I) -> Self {
        iter.fold(QHalfRational::zero(), |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a QHalfRational> for QHalfRational {
    fn sum<I: Iterator<Item = &'a QHalfRational>>(iter: I) -> Self {
        iter.fold(QHalfRational::zero(), |a, b| &a + b)
    }
}

impl fmt::Display for QHalfRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for QHalfRational {
    type Err = Error;

    /// Parses the canonical rendering; the input need not be reduced.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix('(') {
            let (num, den) = rest
                .split_once(")/(")
                .ok_or_else(|| bad_coefficient(text, "expected `(<num>)/(<den>)`"))?;
            let den = den
                .strip_suffix(')')
                .ok_or_else(|| bad_coefficient(text, "missing closing parenthesis"))?;
            QHalfRational::new(parse_laurent(num)?, parse_laurent(den)?)
        } else {
            Ok(QHalfRational::from_laurent(parse_laurent(text)?))
        }
    }
}

fn bad_coefficient(text: &str, why: &str) -> Error {
    Error::Domain(format!("cannot parse coefficient `{text}`: {why}"))
}

fn parse_laurent(text: &str) -> Result<LaurentPoly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(LaurentPoly::zero());
    }
    let mut terms = Vec::new();
    for term in compact.split('+') {
        let (c, e) = term
            .split_once("*s^")
            .ok_or_else(|| bad_coefficient(text, "terms must look like `c*s^e`"))?;
        let c: BigInt = c
            .parse()
            .map_err(|_| bad_coefficient(text, "bad integer coefficient"))?;
        let e: i64 = e
            .parse()
            .map_err(|_| bad_coefficient(text, "bad exponent"))?;
        terms.push((e, c));
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// `(1 - s^2)(1 - s^4)...(1 - s^{2n})` as a Laurent polynomial.
pub fn poch_poly(n: u32) -> LaurentPoly {
    (1..=n as i64).fold(LaurentPoly::one(), |acc, i| {
        acc.mul(&LaurentPoly::from_terms([
            (0, BigInt::one()),
            (2 * i, BigInt::from(-1)),
        ]))
    })
}

/// The q-Pochhammer symbol `(q; q)_n` with `q = s^2`.
pub fn poch(n: u32) -> QHalfRational {
    QHalfRational::from_laurent(poch_poly(n))
}

/// `1 / prod_i poch(parts_i)`.
pub fn inverse_poch_product<I: IntoIterator<Item = u32>>(parts: I) -> QHalfRational {
    let den = parts
        .into_iter()
        .filter(|&n| n > 0)
        .fold(LaurentPoly::one(), |acc, n| acc.mul(&poch_poly(n)));
    QHalfRational {
        num: LaurentPoly::one(),
        den,
    }
}

/// The Gaussian binomial `[n; m]_q = (q;q)_n / ((q;q)_m (q;q)_{n-m})`.
pub fn gaussian_binomial(n: u32, m: u32) -> Result<QHalfRational> {
    if m > n {
        return Err(Error::Domain(format!(
            "gaussian_binomial({n}, {m}) needs m <= n"
        )));
    }
    Ok(&poch(n) * &inverse_poch_product([m, n - m]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, cs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(low, cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn frac(n: LaurentPoly, d: LaurentPoly) -> QHalfRational {
        QHalfRational::new(n, d).unwrap()
    }

    fn geometric() -> QHalfRational {
        frac(LaurentPoly::one(), lp(0, &[1, 0, -1]))
    }

    fn terms(x: &QHalfRational, order: i64) -> Vec<(i64, i64)> {
        x.laurent_expand(order)
            .unwrap()
            .into_iter()
            .map(|(e, c)| (e, i64::try_from(c).unwrap()))
            .collect()
    }

    #[test]
    fn opposite_fractions_cancel() {
        let a = geometric();
        let b = frac(lp(0, &[-1]), lp(0, &[1, 0, -1]));
        assert!((&a + &b).is_zero());
        assert_eq!(a.clone() - a, QHalfRational::zero());
    }

    #[test]
    fn canonicalizes_common_factor() {
        let x = frac(lp(0, &[1, 0, 0, 0, -1]), lp(0, &[1, 0, -1]));
        assert_eq!(x, QHalfRational::from_laurent(lp(0, &[1, 0, 1])));
        assert!(x.is_polynomial());
    }

    #[test]
    fn negative_power_of_minus_s() {
        let minus_s = QHalfRational::monomial(BigInt::from(-1), 1);
        assert_eq!(
            minus_s.pow(-1).unwrap(),
            QHalfRational::monomial(BigInt::from(-1), -1)
        );
        assert_eq!(QHalfRational::neg_s_pow(-1), minus_s.pow(-1).unwrap());
        assert_eq!(QHalfRational::neg_s_pow(4), QHalfRational::s_pow(4));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(QHalfRational::zero().inv().is_err());
        assert!(QHalfRational::zero().pow(-2).is_err());
        assert!(QHalfRational::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
        assert_eq!(QHalfRational::zero().pow(0).unwrap(), QHalfRational::one());
    }

    #[test]
    fn canonical_denominator_shape() {
        // (-2 s^3) / (-4 s^5 + 4 s^7)  ==  (1 s^-2) / (2 - 2 s^2)
        let x = frac(lp(3, &[-2]), lp(5, &[-4, 0, 4]));
        assert_eq!(x.denominator(), &lp(0, &[2, 0, -2]));
        assert_eq!(x.numerator(), &lp(-2, &[1]));
        // integral values keep a content-one denominator
        let y = frac(lp(0, &[6, 0, -6]), lp(0, &[3, 3]));
        assert_eq!(y, QHalfRational::from_laurent(lp(0, &[2, -2])));
        // a genuinely fractional scalar survives
        assert_eq!(
            QHalfRational::from_int(2).inv().unwrap().to_string(),
            "(1*s^0)/(2*s^0)"
        );
    }

    #[test]
    fn poch_values() {
        assert_eq!(poch(0), QHalfRational::one());
        assert_eq!(poch(1).to_string(), "1*s^0 + -1*s^2");
        assert_eq!(poch(2).numerator(), &lp(0, &[1, 0, -1, 0, -1, 0, 1]));
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(5, 0).unwrap(), QHalfRational::one());
        assert_eq!(
            gaussian_binomial(2, 1).unwrap().numerator(),
            &lp(0, &[1, 0, 1])
        );
        assert_eq!(
            gaussian_binomial(4, 2).unwrap().numerator(),
            &lp(0, &[1, 0, 1, 0, 2, 0, 1, 0, 1])
        );
        assert!(gaussian_binomial(2, 3).is_err());
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(terms(&geometric(), 5), vec![(0, 1), (2, 1), (4, 1)]);
        assert_eq!(terms(&QHalfRational::s_pow(-1), 3), vec![(-1, 1)]);
        let x = &QHalfRational::monomial(BigInt::from(-1), 1) * &geometric();
        assert_eq!(terms(&x, 4), vec![(1, -1), (3, -1)]);
        assert!(QHalfRational::from_int(3)
            .inv()
            .unwrap()
            .laurent_expand(2)
            .is_err());
    }

    #[test]
    fn invert_variable_is_involution() {
        let x = frac(lp(-1, &[2, 0, 1]), lp(0, &[1, -1, 0, 3]));
        assert_eq!(x.invert_variable().invert_variable(), x);
        assert_eq!(
            QHalfRational::s_pow(3).invert_variable(),
            QHalfRational::s_pow(-3)
        );
    }

    #[test]
    fn render_and_parse() {
        let x = &QHalfRational::neg_s_pow(1) * &geometric();
        assert_eq!(x.to_string(), "(-1*s^1)/(1*s^0 + -1*s^2)");
        assert_eq!(x.to_string().parse::<QHalfRational>().unwrap(), x);
        assert_eq!("0".parse::<QHalfRational>().unwrap(), QHalfRational::zero());
        assert_eq!(
            "(2*s^0 + -2*s^4)/(2*s^0 + -2*s^2)"
                .parse::<QHalfRational>()
                .unwrap(),
            QHalfRational::from_laurent(lp(0, &[1, 0, 1]))
        );
        assert!("1*s".parse::<QHalfRational>().is_err());
        assert!("(1*s^0)/(0)".parse::<QHalfRational>().is_err());
    }
}
