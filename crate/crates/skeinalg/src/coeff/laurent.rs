//! Exact Laurent polynomials in `s = q^{1/2}` and the framing variable `a`,
//! with arbitrary-precision integer coefficients.
//!
//! All q-powers are stored through even s-exponents (`q^k = s^{2k}`), so no
//! fractional exponents ever appear.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Sparse Laurent polynomial in (s, a) over Z.
///
/// Invariant: no stored coefficient is zero, so equality of values is equality
/// of representations.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentSA {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentSA {
    pub fn zero() -> Self {
        LaurentSA {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(BigInt::from(n), 0, 0)
    }

    /// `coeff * s^s_exp * a^a_exp`.
    pub fn monomial(coeff: BigInt, s_exp: i64, a_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((s_exp, a_exp), coeff);
        }
        LaurentSA { terms }
    }

    /// `s^k`.
    pub fn s_pow(k: i64) -> Self {
        Self::monomial(BigInt::one(), k, 0)
    }

    /// `a^k`.
    pub fn a_pow(k: i64) -> Self {
        Self::monomial(BigInt::one(), 0, k)
    }

    /// `q^k = s^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Self::s_pow(2 * k)
    }

    /// `z = q^{1/2} - q^{-1/2} = s - s^{-1}`.
    pub fn z_var() -> Self {
        Self::s_pow(1) - Self::s_pow(-1)
    }

    /// The q-number `[n]_q = 1 - q^{-n}`; zero for n = 0.
    pub fn q_integer(n: u64) -> Self {
        Self::one() - Self::s_pow(-2 * n as i64)
    }

    /// `[n]_q! = [n]_q [n-1]_q ... [1]_q`, with the empty product equal to 1.
    pub fn q_factorial(n: u64) -> Self {
        let mut acc = Self::one();
        for k in 1..=n {
            acc = acc * Self::q_integer(k);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The single term if this is a monomial.
    pub fn as_monomial(&self) -> Option<((i64, i64), &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    /// Inverse, defined exactly when this is a monomial with coefficient ±1.
    pub fn invert_unit(&self) -> Option<Self> {
        let ((s, a), c) = self.as_monomial()?;
        if c.is_one() || (-c).is_one() {
            Some(Self::monomial(c.clone(), -s, -a))
        } else {
            None
        }
    }

    pub(crate) fn insert_term(&mut self, key: (i64, i64), coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn mul_s_pow(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(s, a), c)| ((s + k, a), c.clone()))
            .collect();
        LaurentSA { terms }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(&e, c)| (e, c * k)).collect();
        LaurentSA { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// Substitute `a = s` (the U(1) / linking-skein specialization).
    pub fn specialize_a(&self) -> Self {
        let mut out = Self::zero();
        for (&(s, a), c) in &self.terms {
            out.insert_term((s + a, 0), c.clone());
        }
        out
    }

    pub fn min_s_exp(&self) -> Option<i64> {
        self.terms.keys().map(|&(s, _)| s).min()
    }

    pub fn max_s_exp(&self) -> Option<i64> {
        self.terms.keys().map(|&(s, _)| s).max()
    }

    pub fn min_a_exp(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, a)| a).min()
    }

    /// Lexicographically smallest (s_exp, a_exp) key with its coefficient.
    pub fn lex_smallest(&self) -> Option<((i64, i64), &BigInt)> {
        self.terms.iter().next().map(|(k, c)| (*k, c))
    }

    /// Nonnegative gcd of all integer coefficients; zero for the zero polynomial.
    pub fn int_content(&self) -> BigInt {
        use num_integer::Integer;
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, k: &BigInt) -> Self {
        use num_integer::Integer;
        let terms = self
            .terms
            .iter()
            .map(|(&e, c)| {
                let (q, r) = c.div_rem(k);
                debug_assert!(r.is_zero());
                (e, q)
            })
            .collect();
        LaurentSA { terms }
    }
}

impl Add for LaurentSA {
    type Output = LaurentSA;
    fn add(self, rhs: LaurentSA) -> LaurentSA {
        let mut out = self;
        for (k, c) in rhs.terms {
            out.insert_term(k, c);
        }
        out
    }
}

impl Sub for LaurentSA {
    type Output = LaurentSA;
    fn sub(self, rhs: LaurentSA) -> LaurentSA {
        self + (-rhs)
    }
}

impl Neg for LaurentSA {
    type Output = LaurentSA;
    fn neg(self) -> LaurentSA {
        let terms = self.terms.into_iter().map(|(k, c)| (k, -c)).collect();
        LaurentSA { terms }
    }
}

impl Mul for LaurentSA {
    type Output = LaurentSA;
    fn mul(self, rhs: LaurentSA) -> LaurentSA {
        let mut out = LaurentSA::zero();
        for (&(s1, a1), c1) in &self.terms {
            for (&(s2, a2), c2) in &rhs.terms {
                out.insert_term((s1 + s2, a1 + a2), c1 * c2);
            }
        }
        out
    }
}

impl Zero for LaurentSA {
    fn zero() -> Self {
        LaurentSA::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentSA::is_zero(self)
    }
}

impl One for LaurentSA {
    fn one() -> Self {
        LaurentSA::one()
    }
    fn is_one(&self) -> bool {
        LaurentSA::is_one(self)
    }
}

impl fmt::Display for LaurentSA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(s, a), c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (s == 0 && a == 0) {
                parts.push(mag.to_string());
            }
            if s != 0 {
                parts.push(if s == 1 {
                    "s".to_string()
                } else {
                    format!("s^{}", s)
                });
            }
            if a != 0 {
                parts.push(if a == 1 {
                    "a".to_string()
                } else {
                    format!("a^{}", a)
                });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentSA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSA({})", self)
    }
}

impl Serialize for LaurentSA {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            terms: Vec<(i64, i64, &'a str)>,
        }
        let strings: Vec<((i64, i64), String)> = self
            .terms
            .iter()
            .map(|(&k, c)| (k, c.to_string()))
            .collect();
        let repr = Repr {
            terms: strings
                .iter()
                .map(|((s, a), c)| (*s, *a, c.as_str()))
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentSA {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            terms: Vec<(i64, i64, String)>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut out = LaurentSA::zero();
        for (s, a, c) in repr.terms {
            let coeff: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad integer coefficient: {c}")))?;
            if coeff.is_zero() {
                return Err(D::Error::custom("zero coefficient stored in LaurentSA"));
            }
            if out.terms.contains_key(&(s, a)) {
                return Err(D::Error::custom("duplicate exponent pair in LaurentSA"));
            }
            out.insert_term((s, a), coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_integer_values() {
        // [0]_q = 0, [1]_q = 1 - q^{-1}, [2]_q = 1 - q^{-2}
        assert!(LaurentSA::q_integer(0).is_zero());
        assert_eq!(
            LaurentSA::q_integer(1),
            LaurentSA::one() - LaurentSA::q_pow(-1)
        );
        assert_eq!(
            LaurentSA::q_integer(2),
            LaurentSA::one() - LaurentSA::q_pow(-2)
        );
    }

    #[test]
    fn q_factorial_values() {
        assert!(LaurentSA::q_factorial(0).is_one());
        let expect2 = LaurentSA::q_integer(1) * LaurentSA::q_integer(2);
        assert_eq!(LaurentSA::q_factorial(2), expect2);
        let expect3 = LaurentSA::q_integer(1) * LaurentSA::q_integer(2) * LaurentSA::q_integer(3);
        assert_eq!(LaurentSA::q_factorial(3), expect3);
    }

    #[test]
    fn q_factorial_lowest_exponent() {
        // lowest s-exponent of [n]_q! is -n(n+1): each factor contributes s^{-2k}
        for n in 0..=12u64 {
            let f = LaurentSA::q_factorial(n);
            let expect = -(n as i64) * (n as i64 + 1);
            assert_eq!(f.min_s_exp().unwrap_or(0), if n == 0 { 0 } else { expect });
        }
    }

    #[test]
    fn specialize_a_basics() {
        // a - a^{-1} -> s - s^{-1}
        let p = LaurentSA::a_pow(1) - LaurentSA::a_pow(-1);
        assert_eq!(p.specialize_a(), LaurentSA::z_var());
        // constants are fixed
        let c = LaurentSA::from_int(7);
        assert_eq!(c.specialize_a(), LaurentSA::from_int(7));
    }

    #[test]
    fn cancellation_prunes_zero_terms() {
        let p = LaurentSA::s_pow(3) - LaurentSA::s_pow(3);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentSA::q_factorial(3) * LaurentSA::a_pow(-2) - LaurentSA::from_int(5);
        let text = serde_json::to_string(&p).unwrap();
        let back: LaurentSA = serde_json::from_str(&text).unwrap();
        assert_eq!(p, back);
    }
}
