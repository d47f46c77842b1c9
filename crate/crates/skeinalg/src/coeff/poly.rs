//! Internal polynomial arithmetic backing fraction reduction.
//!
//! `RationalSA` needs exact gcds in Z[s, a]. Laurent shifts are stripped by the
//! caller, so everything here works with nonnegative exponents. Gcds use the
//! subresultant pseudo-remainder sequence (Collins), with `a` as the inner
//! variable and `s` as the outer one; the subresultant divisions keep
//! intermediate degrees and coefficients polynomially bounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial over Z in `a`, coefficients ascending by exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct APoly(pub(crate) Vec<BigInt>);

impl APoly {
    pub fn zero() -> Self {
        APoly(Vec::new())
    }

    pub fn one() -> Self {
        APoly(vec![BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn normalize(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> &BigInt {
        self.0.last().expect("lead of zero polynomial")
    }

    pub fn neg(&self) -> Self {
        APoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        APoly(out).normalize()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, d) in other.0.iter().enumerate() {
                out[i + j] += c * d;
            }
        }
        APoly(out).normalize()
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        APoly(self.0.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Nonnegative gcd of the integer coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, k: &BigInt) -> Self {
        debug_assert!(!k.is_zero());
        APoly(
            self.0
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(k);
                    debug_assert!(r.is_zero(), "inexact integer division in APoly");
                    q
                })
                .collect(),
        )
    }

    /// Exact polynomial division; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero APoly");
        if self.is_zero() {
            return Self::zero();
        }
        let mut rem = self.clone();
        assert!(rem.0.len() >= d.0.len(), "inexact APoly division");
        let mut quot = vec![BigInt::zero(); rem.0.len() - d.0.len() + 1];
        while !rem.is_zero() && rem.0.len() >= d.0.len() {
            let shift = rem.0.len() - d.0.len();
            let (q, r) = rem.lead().div_rem(d.lead());
            assert!(r.is_zero(), "inexact APoly division (leading coefficient)");
            for (j, c) in d.0.iter().enumerate() {
                rem.0[shift + j] -= &q * c;
            }
            quot[shift] = q;
            rem = rem.normalize();
        }
        assert!(rem.is_zero(), "inexact APoly division (remainder)");
        APoly(quot).normalize()
    }

    /// Pseudo-remainder with the full power: lead(d)^{deg self - deg d + 1} · self mod d.
    fn prem(&self, d: &Self) -> Self {
        let delta = self.0.len() as i64 - d.0.len() as i64;
        debug_assert!(delta >= 0);
        let lc = d.lead().clone();
        let mut applied = 0i64;
        let mut r = self.clone();
        while !r.is_zero() && r.0.len() >= d.0.len() {
            let shift = r.0.len() - d.0.len();
            let rl = r.lead().clone();
            let mut next = r.mul_int(&lc);
            applied += 1;
            for (j, c) in d.0.iter().enumerate() {
                next.0[shift + j] -= &rl * c;
            }
            r = next.normalize();
        }
        // force the canonical lc^{delta+1} normalization even when leading
        // terms vanished early
        for _ in applied..=delta {
            r = r.mul_int(&lc);
        }
        r
    }

    /// Subresultant-PRS gcd over Z, normalized with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.sign_normalized();
        }
        if other.is_zero() {
            return self.sign_normalized();
        }
        let ca = self.content();
        let cb = other.content();
        let c = ca.gcd(&cb);
        let mut p = self.div_int_exact(&ca);
        let mut q = other.div_int_exact(&cb);
        if p.degree() < q.degree() {
            std::mem::swap(&mut p, &mut q);
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = p.degree() - q.degree();
            let r = p.prem(&q);
            if r.is_zero() {
                break;
            }
            if q.degree() == 0 {
                // nonzero remainder below a constant: coprime primitive parts
                q = APoly::one();
                break;
            }
            let divisor = &g * h.pow(delta as u32);
            p = q;
            q = r.div_int_exact(&divisor);
            g = p.lead().clone();
            if delta > 0 {
                let num = g.pow(delta as u32);
                let den = h.pow(delta as u32 - 1);
                let (v, rem) = num.div_rem(&den);
                debug_assert!(rem.is_zero());
                h = v;
            }
        }
        let qc = q.content();
        q.div_int_exact(&qc).sign_normalized().mul_int(&c)
    }

    fn sign_normalized(&self) -> Self {
        if !self.is_zero() && self.lead().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

/// Dense polynomial in `s` with `APoly` coefficients, ascending by exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SPoly(pub(crate) Vec<APoly>);

impl SPoly {
    pub fn zero() -> Self {
        SPoly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0] == APoly::one()
    }

    #[cfg(test)]
    pub fn neg(&self) -> Self {
        SPoly(self.0.iter().map(APoly::neg).collect())
    }

    pub fn normalize(mut self) -> Self {
        for c in &mut self.0 {
            *c = std::mem::replace(c, APoly::zero()).normalize();
        }
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn lead(&self) -> &APoly {
        self.0.last().expect("lead of zero polynomial")
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![APoly::zero(); self.0.len() + other.0.len() - 1];
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, d) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&c.mul(d));
            }
        }
        SPoly(out).normalize()
    }

    fn mul_apoly(&self, k: &APoly) -> Self {
        SPoly(self.0.iter().map(|c| c.mul(k)).collect()).normalize()
    }

    /// Content as a polynomial in `a`.
    pub fn content(&self) -> APoly {
        let mut g = APoly::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_apoly_exact(&self, d: &APoly) -> Self {
        SPoly(self.0.iter().map(|c| c.div_exact(d)).collect()).normalize()
    }

    /// Exact division in Z[s, a]; panics if inexact.
    pub fn div_exact(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero SPoly");
        if self.is_zero() {
            return Self::zero();
        }
        let mut rem = self.clone();
        assert!(rem.0.len() >= d.0.len(), "inexact SPoly division");
        let mut quot = vec![APoly::zero(); rem.0.len() - d.0.len() + 1];
        while !rem.is_zero() && rem.0.len() >= d.0.len() {
            let shift = rem.0.len() - d.0.len();
            let q = rem.lead().div_exact(d.lead());
            for (j, c) in d.0.iter().enumerate() {
                rem.0[shift + j] = rem.0[shift + j].sub(&q.mul(c));
            }
            quot[shift] = q;
            rem = rem.normalize();
        }
        assert!(rem.is_zero(), "inexact SPoly division (remainder)");
        SPoly(quot).normalize()
    }

    /// Pseudo-remainder with the full power lead(d)^{delta+1}.
    fn prem(&self, d: &Self) -> Self {
        let delta = self.0.len() as i64 - d.0.len() as i64;
        debug_assert!(delta >= 0);
        let lc = d.lead().clone();
        let mut applied = 0i64;
        let mut r = self.clone();
        while !r.is_zero() && r.0.len() >= d.0.len() {
            let shift = r.0.len() - d.0.len();
            let rl = r.lead().clone();
            let mut next = r.mul_apoly(&lc);
            applied += 1;
            if next.0.len() < shift + d.0.len() {
                r = next;
                continue;
            }
            for (j, c) in d.0.iter().enumerate() {
                next.0[shift + j] = next.0[shift + j].sub(&rl.mul(c));
            }
            r = next.normalize();
        }
        for _ in applied..=delta {
            r = r.mul_apoly(&lc);
        }
        r
    }

    /// Subresultant-PRS gcd in Z[s, a].
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone().normalize();
        }
        if other.is_zero() {
            return self.clone().normalize();
        }
        let ca = self.content();
        let cb = other.content();
        let c = ca.gcd(&cb);
        let mut p = self.div_apoly_exact(&ca);
        let mut q = other.div_apoly_exact(&cb);
        if p.0.len() < q.0.len() {
            std::mem::swap(&mut p, &mut q);
        }
        let mut g = APoly::one();
        let mut h = APoly::one();
        loop {
            let delta = p.0.len() - q.0.len();
            let r = p.prem(&q);
            if r.is_zero() {
                break;
            }
            if q.0.len() == 1 {
                q = SPoly(vec![APoly::one()]);
                break;
            }
            let divisor = g.mul(&h.pow(delta));
            p = q;
            q = r.div_apoly_exact(&divisor);
            g = p.lead().clone();
            if delta > 0 {
                h = g.pow(delta).div_exact(&h.pow(delta - 1));
            }
        }
        let qc = q.content();
        q.div_apoly_exact(&qc).mul_apoly(&c)
    }
}
