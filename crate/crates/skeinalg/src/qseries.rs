//! Truncated power series in one variable over the localized coefficient ring,
//! the operators `l` (multiplication by x) and `m` (dilation), and the
//! q-dilogarithm E_q(x) = Σ xⁿ/[n]_q! they characterize.
//!
//! Convention: `m` scales xⁿ by q^{-n}. This is the unique dilation direction
//! for which both `l∘m = q·m∘l` and `x·∂_x^{(q)} = 1 - m` hold with
//! [n]_q = 1 - q^{-n}.

use serde::{Deserialize, Serialize};

use crate::coeff::{LaurentSA, RationalSA};

/// Truncated series Σ coeffs[n]·xⁿ, n = 0..=order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QSeries1 {
    coeffs: Vec<RationalSA>,
}

impl QSeries1 {
    /// Series from explicit coefficients (index = degree).
    pub fn from_coeffs(coeffs: Vec<RationalSA>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the degree-0 term");
        QSeries1 { coeffs }
    }

    /// The constant series 1 truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![RationalSA::zero(); order + 1];
        coeffs[0] = RationalSA::one();
        QSeries1 { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &RationalSA {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[RationalSA] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `l: f(x) ↦ x·f(x)`, truncated at the same order.
    pub fn apply_l(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(RationalSA::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        QSeries1 { coeffs }
    }

    /// `m: xⁿ ↦ q^{-n} xⁿ`.
    pub fn apply_m(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.mul_s_pow(-2 * n as i64))
            .collect();
        QSeries1 { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "order mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        QSeries1 { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "order mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        QSeries1 { coeffs }
    }
}

/// Coefficients of E_q(x) = Σ xⁿ/[n]_q! up to degree `order`.
pub fn qdilog_coeffs(order: usize) -> QSeries1 {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(RationalSA::one());
    for n in 1..=order {
        let inv = RationalSA::new(LaurentSA::one(), LaurentSA::q_integer(n as u64))
            .expect("[n]_q is nonzero for n >= 1");
        let prev = coeffs[n - 1].clone();
        coeffs.push(prev * inv);
    }
    QSeries1 { coeffs }
}

/// Whether `(1 - m - l) f = 0` up to the truncation order.
pub fn check_difference_eq(f: &QSeries1) -> bool {
    f.sub(&f.apply_m()).sub(&f.apply_l()).is_zero()
}

/// Solve `(1 - m - l) f = 0`, `f_0 = 1` degree by degree.
///
/// Used as the uniqueness oracle: the coefficient recursion
/// [n]_q·f_n = f_{n-1} has exactly one solution per degree.
pub fn solve_difference_eq(order: usize) -> QSeries1 {
    let mut coeffs = vec![RationalSA::one()];
    for n in 1..=order {
        let qn = RationalSA::from_laurent(LaurentSA::q_integer(n as u64));
        let prev = coeffs[n - 1].clone();
        coeffs.push(prev * qn.invert().expect("[n]_q nonzero"));
    }
    QSeries1 { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qdilog_low_coefficients() {
        let e = qdilog_coeffs(2);
        assert!(e.coeff(0).is_one());
        let inv1 = RationalSA::new(LaurentSA::one(), LaurentSA::q_integer(1)).unwrap();
        assert_eq!(e.coeff(1), &inv1);
        let inv12 = RationalSA::new(LaurentSA::one(), LaurentSA::q_factorial(2)).unwrap();
        assert_eq!(e.coeff(2), &inv12);
    }

    #[test]
    fn l_and_m_basics() {
        // l(1) = x
        let one = QSeries1::one(3);
        let lx = one.apply_l();
        assert!(lx.coeff(0).is_zero());
        assert!(lx.coeff(1).is_one());
        // m(x^n) = q^{-n} x^n
        let mut xn = vec![RationalSA::zero(); 4];
        xn[3] = RationalSA::one();
        let xn = QSeries1::from_coeffs(xn);
        let m = xn.apply_m();
        assert_eq!(
            m.coeff(3),
            &RationalSA::from_laurent(LaurentSA::q_pow(-3))
        );
    }

    #[test]
    fn l_m_commutation() {
        // (l m - q m l) x^n = 0, checked on a generic dense series
        let f = qdilog_coeffs(6);
        let lm = f.apply_m().apply_l();
        let ml = f.apply_l().apply_m();
        let q = RationalSA::from_laurent(LaurentSA::q_pow(1));
        let qml = QSeries1::from_coeffs(ml.coeffs().iter().map(|c| c.clone() * q.clone()).collect());
        assert_eq!(lm, qml);
    }

    #[test]
    fn x_dq_equals_one_minus_m() {
        // x ∂_x^{(q)} x^n = [n]_q x^n = (1 - m) x^n
        let f = qdilog_coeffs(5);
        let lhs: Vec<RationalSA> = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| {
                c.clone() * RationalSA::from_laurent(LaurentSA::q_integer(n as u64))
            })
            .collect();
        let rhs = f.sub(&f.apply_m());
        assert_eq!(QSeries1::from_coeffs(lhs), rhs);
    }

    #[test]
    fn difference_equation_holds_for_qdilog() {
        for order in [0, 1, 5, 20] {
            assert!(check_difference_eq(&qdilog_coeffs(order)));
        }
    }

    #[test]
    fn difference_equation_rejects_constants_and_perturbations() {
        // f = 1 fails at order >= 1 because l·1 = x != 0
        assert!(!check_difference_eq(&QSeries1::one(1)));
        // perturbing one coefficient breaks the recursion
        let mut coeffs = qdilog_coeffs(4).coeffs().to_vec();
        coeffs[1] = coeffs[1].clone() + RationalSA::one();
        assert!(!check_difference_eq(&QSeries1::from_coeffs(coeffs)));
    }

    #[test]
    fn unique_solution_matches_qdilog() {
        assert_eq!(solve_difference_eq(20), qdilog_coeffs(20));
    }
}
