//! Fractions of `LaurentSA` in canonical reduced form.
//!
//! The working coefficient ring is Z[q^{±1/2}, a^{±1}] with the q-numbers and
//! the skein eigenvalues c_{λ,μ} inverted; `RationalSA` is the localization
//! that houses all of those inverses.
//!
//! Canonical form: the denominator is an ordinary polynomial (no negative
//! exponents, no monomial content), coprime to the polynomial part of the
//! numerator, with no common integer content, and its lexicographically
//! smallest term has a positive coefficient. Equality of canonical forms is
//! structural equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{APoly, SPoly};
use super::LaurentSA;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffError {
    DivisionByZero,
}

impl fmt::Display for CoeffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for CoeffError {}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalSA {
    num: LaurentSA,
    den: LaurentSA,
}

/// `p = s^ms a^ma * poly` with the polynomial part having min exponents 0.
fn split_monomial(p: &LaurentSA) -> (i64, i64, SPoly) {
    let ms = p.min_s_exp().unwrap_or(0);
    let ma = p.min_a_exp().unwrap_or(0);
    let mut max_s = 0usize;
    for (&(s, _), _) in p.terms() {
        max_s = max_s.max((s - ms) as usize);
    }
    let mut coeffs = vec![APoly::zero(); max_s + 1];
    for (&(s, a), c) in p.terms() {
        let si = (s - ms) as usize;
        let ai = (a - ma) as usize;
        if coeffs[si].0.len() <= ai {
            coeffs[si].0.resize(ai + 1, BigInt::zero());
        }
        coeffs[si].0[ai] = c.clone();
    }
    (ms, ma, SPoly(coeffs).normalize())
}

fn from_spoly(sp: &SPoly, shift_s: i64, shift_a: i64) -> LaurentSA {
    let mut out = LaurentSA::zero();
    for (si, ap) in sp.0.iter().enumerate() {
        for (ai, c) in ap.0.iter().enumerate() {
            if !c.is_zero() {
                out.insert_term((si as i64 + shift_s, ai as i64 + shift_a), c.clone());
            }
        }
    }
    out
}

/// Normalizations other than the polynomial gcd: monomial content lives in the
/// numerator, common integer content is removed, and the denominator's
/// lexicographically smallest term is positive.
fn normalize_units(mut num: LaurentSA, mut den: LaurentSA) -> (LaurentSA, LaurentSA) {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return (LaurentSA::zero(), LaurentSA::one());
    }
    let ems = den.min_s_exp().unwrap();
    let ema = den.min_a_exp().unwrap();
    if ems != 0 || ema != 0 {
        den = den.mul_s_pow(-ems) * LaurentSA::a_pow(-ema);
        num = num.mul_s_pow(-ems) * LaurentSA::a_pow(-ema);
    }
    let g = num.int_content().gcd(&den.int_content());
    if !g.is_one() {
        num = num.div_int_exact(&g);
        den = den.div_int_exact(&g);
    }
    if den.lex_smallest().is_some_and(|(_, c)| c.is_negative()) {
        num = -num;
        den = -den;
    }
    (num, den)
}

fn make_canonical(num: LaurentSA, den: LaurentSA) -> (LaurentSA, LaurentSA) {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return (LaurentSA::zero(), LaurentSA::one());
    }
    let (ns, na, np) = split_monomial(&num);
    let (ds, da, dp) = split_monomial(&den);
    let g = np.gcd(&dp);
    let (np, dp) = if g.is_one() {
        (np, dp)
    } else {
        (np.div_exact(&g), dp.div_exact(&g))
    };
    normalize_units(from_spoly(&np, ns - ds, na - da), from_spoly(&dp, 0, 0))
}

impl RationalSA {
    /// `num / den`, reduced to canonical form.
    pub fn new(num: LaurentSA, den: LaurentSA) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let (num, den) = make_canonical(num, den);
        Ok(RationalSA { num, den })
    }

    pub fn from_laurent(p: LaurentSA) -> Self {
        RationalSA {
            num: p,
            den: LaurentSA::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentSA::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentSA::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentSA::one())
    }

    pub fn numerator(&self) -> &LaurentSA {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentSA {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Re-run canonicalization. Canonical forms are fixed points.
    pub fn reduce(&self) -> Self {
        let (num, den) = make_canonical(self.num.clone(), self.den.clone());
        RationalSA { num, den }
    }

    pub fn invert(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        // numerator and denominator are already coprime; only units move
        let (num, den) = normalize_units_split(self.den.clone(), self.num.clone());
        Ok(RationalSA { num, den })
    }

    /// Substitute `a = s` in numerator and denominator, then reduce.
    pub fn specialize_a(&self) -> Result<Self, CoeffError> {
        Self::new(self.num.specialize_a(), self.den.specialize_a())
    }

    pub fn mul_s_pow(&self, k: i64) -> Self {
        RationalSA {
            num: self.num.mul_s_pow(k),
            den: self.den.clone(),
        }
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let (num, den) =
                make_canonical(self.num.clone() + rhs.num.clone(), self.den.clone());
            return RationalSA { num, den };
        }
        let (_, _, b) = split_monomial(&self.den);
        let (_, _, d) = split_monomial(&rhs.den);
        let g = b.gcd(&d);
        let (b_red, d_red) = if g.is_one() {
            (b, d)
        } else {
            (b.div_exact(&g), d.div_exact(&g))
        };
        let b_red = from_spoly(&b_red, 0, 0);
        let d_red = from_spoly(&d_red, 0, 0);
        let num = self.num.clone() * d_red.clone() + rhs.num.clone() * b_red;
        // self.den = g * b_red, so this is the lcm-style denominator g * b_red * d_red
        let den = self.den.clone() * d_red;
        let (num, den) = make_canonical(num, den);
        RationalSA { num, den }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // cross-cancel: gcd(num_l, den_r) and gcd(num_r, den_l); the factors
        // that remain are pairwise coprime, so no further polynomial gcd runs
        let (ns1, na1, a) = split_monomial(&self.num);
        let (ns2, na2, c) = split_monomial(&rhs.num);
        let (_, _, b) = split_monomial(&self.den);
        let (_, _, d) = split_monomial(&rhs.den);
        let g1 = a.gcd(&d);
        let (a, d) = if g1.is_one() {
            (a, d)
        } else {
            (a.div_exact(&g1), d.div_exact(&g1))
        };
        let g2 = c.gcd(&b);
        let (c, b) = if g2.is_one() {
            (c, b)
        } else {
            (c.div_exact(&g2), b.div_exact(&g2))
        };
        let num = from_spoly(&a.mul(&c), ns1 + ns2, na1 + na2);
        let den = from_spoly(&b.mul(&d), 0, 0);
        let (num, den) = normalize_units(num, den);
        RationalSA { num, den }
    }
}

/// Like `normalize_units` but re-extracts monomial content from both sides
/// first (used by `invert`, where a Laurent numerator becomes a denominator).
fn normalize_units_split(num: LaurentSA, den: LaurentSA) -> (LaurentSA, LaurentSA) {
    let (ds, da, dp) = split_monomial(&den);
    let den = from_spoly(&dp, 0, 0);
    let num = num.mul_s_pow(-ds) * LaurentSA::a_pow(-da);
    normalize_units(num, den)
}

impl Add for RationalSA {
    type Output = RationalSA;
    fn add(self, rhs: RationalSA) -> RationalSA {
        self.add_impl(&rhs)
    }
}

impl Sub for RationalSA {
    type Output = RationalSA;
    fn sub(self, rhs: RationalSA) -> RationalSA {
        self.add_impl(&(-rhs))
    }
}

impl Neg for RationalSA {
    type Output = RationalSA;
    fn neg(self) -> RationalSA {
        RationalSA {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RationalSA {
    type Output = RationalSA;
    fn mul(self, rhs: RationalSA) -> RationalSA {
        self.mul_impl(&rhs)
    }
}

impl Div for RationalSA {
    type Output = RationalSA;
    fn div(self, rhs: RationalSA) -> RationalSA {
        self.mul_impl(&rhs.invert().expect("division by zero RationalSA"))
    }
}

impl Zero for RationalSA {
    fn zero() -> Self {
        RationalSA::zero()
    }
    fn is_zero(&self) -> bool {
        RationalSA::is_zero(self)
    }
}

impl One for RationalSA {
    fn one() -> Self {
        RationalSA::one()
    }
    fn is_one(&self) -> bool {
        RationalSA::is_one(self)
    }
}

impl From<LaurentSA> for RationalSA {
    fn from(p: LaurentSA) -> Self {
        RationalSA::from_laurent(p)
    }
}

impl fmt::Display for RationalSA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalSA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalSA({})", self)
    }
}

impl Serialize for RationalSA {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            num: &'a LaurentSA,
            den: &'a LaurentSA,
        }
        Repr {
            num: &self.num,
            den: &self.den,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalSA {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            num: LaurentSA,
            den: LaurentSA,
        }
        let repr = Repr::deserialize(deserializer)?;
        RationalSA::new(repr.num, repr.den)
            .map_err(|e| D::Error::custom(format!("invalid RationalSA: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> LaurentSA {
        LaurentSA::q_pow(k)
    }

    #[test]
    fn reduce_quotient_of_q_integers() {
        // (1 - q^{-2}) / (1 - q^{-1}) = 1 + q^{-1}
        let r = RationalSA::new(LaurentSA::q_integer(2), LaurentSA::q_integer(1)).unwrap();
        let expect = RationalSA::from_laurent(LaurentSA::one() + q(-1));
        assert_eq!(r, expect);
        // independent oracle: denominator * claimed quotient = numerator
        let back = LaurentSA::q_integer(1) * (LaurentSA::one() + q(-1));
        assert_eq!(back, LaurentSA::q_integer(2));
    }

    #[test]
    fn invert_round_trips() {
        let x = RationalSA::new(
            LaurentSA::q_factorial(3),
            LaurentSA::a_pow(1) - LaurentSA::a_pow(-1),
        )
        .unwrap();
        let prod = x.clone() * x.invert().unwrap();
        assert!(prod.is_one());
        assert!(RationalSA::one().invert().unwrap().is_one());
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(
            RationalSA::zero().invert().unwrap_err(),
            CoeffError::DivisionByZero
        );
        assert!(RationalSA::new(LaurentSA::one(), LaurentSA::zero()).is_err());
    }

    #[test]
    fn canonicalization_idempotent() {
        let x = RationalSA::new(
            (LaurentSA::one() - q(-3)) * LaurentSA::s_pow(5),
            LaurentSA::q_integer(6) * LaurentSA::from_int(-4),
        )
        .unwrap();
        assert_eq!(x.reduce(), x);
    }

    #[test]
    fn cross_multiplication_agrees_with_canonical_equality() {
        // a/b == c/d  iff  ad == cb
        let a = RationalSA::new(LaurentSA::q_integer(4), LaurentSA::q_integer(2)).unwrap();
        let b = RationalSA::new(
            LaurentSA::q_integer(4) * LaurentSA::q_integer(3),
            LaurentSA::q_integer(2) * LaurentSA::q_integer(3),
        )
        .unwrap();
        assert_eq!(a, b);
        let ad = a.numerator().clone() * b.denominator().clone();
        let cb = b.numerator().clone() * a.denominator().clone();
        assert_eq!(ad, cb);
    }

    #[test]
    fn unknot_specializes_to_one() {
        // (a - a^{-1}) / z  ->  1 at a = q^{1/2}
        let unknot = RationalSA::new(
            LaurentSA::a_pow(1) - LaurentSA::a_pow(-1),
            LaurentSA::z_var(),
        )
        .unwrap();
        assert!(unknot.specialize_a().unwrap().is_one());
    }

    #[test]
    fn inverse_law_on_quotients() {
        let a = RationalSA::new(LaurentSA::q_integer(5), LaurentSA::q_integer(3)).unwrap();
        let b = a.invert().unwrap();
        assert!((a * b).is_one());
    }
}
