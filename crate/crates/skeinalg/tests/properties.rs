//! Property suites: ring axioms on random samples, canonical-form laws for
//! the localized coefficients, torus algebra laws, and numeric evaluation
//! oracles over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skeinalg::annulus::Partition;
use skeinalg::torus::{GradeFunctional, QTElement, SkewLattice, TorusAlgebra};
use skeinalg::{LaurentSA, RationalSA};

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow(base: &BigRational, exp: i64) -> BigRational {
    if exp >= 0 {
        base.pow(exp as i32)
    } else {
        base.pow((-exp) as i32).recip()
    }
}

/// Exact evaluation oracle at rational values of s and a.
fn eval_laurent(p: &LaurentSA, s: &BigRational, a: &BigRational) -> BigRational {
    let mut total = BigRational::zero();
    for (&(se, ae), c) in p.terms() {
        total += BigRational::from(c.clone()) * pow(s, se) * pow(a, ae);
    }
    total
}

fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentSA {
    let mut p = LaurentSA::zero();
    for _ in 0..rng.gen_range(0..=4) {
        let coeff = loop {
            let c = rng.gen_range(-9i64..=9);
            if c != 0 {
                break c;
            }
        };
        let term = LaurentSA::monomial(coeff.into(), rng.gen_range(-6..=6), rng.gen_range(-3..=3));
        p = p + term;
    }
    p
}

#[test]
fn laurent_ring_axioms_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1200 {
        let a = random_laurent(&mut rng);
        let b = random_laurent(&mut rng);
        let c = random_laurent(&mut rng);
        assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        assert_eq!(
            (a.clone() * b.clone()) * c.clone(),
            a.clone() * (b.clone() * c.clone())
        );
        assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
    }
}

#[test]
fn rational_canonical_form_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut nontrivial = 0;
    for _ in 0..400 {
        let num = random_laurent(&mut rng);
        let den = loop {
            let d = random_laurent(&mut rng);
            if !d.is_zero() {
                break d;
            }
        };
        let x = RationalSA::new(num, den).unwrap();
        // canonicalization is idempotent
        assert_eq!(x.reduce(), x);
        if !x.is_zero() {
            nontrivial += 1;
            // invert(x)·x = 1
            assert!((x.clone() * x.invert().unwrap()).is_one());
            // blowing the fraction up by a random nonzero factor is invisible
            let f = loop {
                let f = random_laurent(&mut rng);
                if !f.is_zero() {
                    break f;
                }
            };
            let y = RationalSA::new(
                x.numerator().clone() * f.clone(),
                x.denominator().clone() * f,
            )
            .unwrap();
            assert_eq!(x, y);
            // equality of canonical forms agrees with cross-multiplication
            let ad = x.numerator().clone() * y.denominator().clone();
            let cb = y.numerator().clone() * x.denominator().clone();
            assert_eq!(ad, cb);
        }
    }
    assert!(nontrivial > 300);
}

#[test]
fn rational_field_axioms_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut sample = || {
        let num = random_laurent(&mut rng);
        let den = LaurentSA::one() + LaurentSA::monomial(2.into(), 2, 0);
        RationalSA::new(num, den).unwrap()
    };
    for _ in 0..150 {
        let a = sample();
        let b = sample();
        let c = sample();
        assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        assert_eq!(
            (a.clone() * b.clone()) * c.clone(),
            a.clone() * (b.clone() * c.clone())
        );
        assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
    }
}

#[test]
fn q_factorial_numeric_oracle() {
    // evaluate [n]_q! at q = 2 (s² = 2 enters only through even powers) and
    // compare with the directly computed rational product
    let s = rational(0, 1); // unused marker; q-polynomials have even s-exponents
    let _ = s;
    for n in 0..=12u64 {
        let f = LaurentSA::q_factorial(n);
        // all exponents even: evaluate via q directly
        let mut value = BigRational::zero();
        for (&(se, ae), c) in f.terms() {
            assert_eq!(se % 2, 0);
            assert_eq!(ae, 0);
            value += BigRational::from(c.clone()) * pow(&rational(2, 1), se / 2);
        }
        let mut expect = BigRational::one();
        for k in 1..=n {
            expect *= BigRational::one() - pow(&rational(2, 1), -(k as i64));
        }
        assert_eq!(value, expect);
    }
}

#[test]
fn unknot_numeric_spot_check() {
    // ○ = (a - a^{-1})/z at q = 4, a = 8 (s = 2): (8 - 1/8)/(2 - 1/2) = 21/4
    let unknot = skeinalg::annulus::unknot_value();
    let s = rational(2, 1);
    let a = rational(8, 1);
    let num = eval_laurent(unknot.numerator(), &s, &a);
    let den = eval_laurent(unknot.denominator(), &s, &a);
    assert_eq!(num / den, rational(21, 4));
}

#[test]
fn specialize_a_is_a_ring_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..300 {
        let a = random_laurent(&mut rng);
        let b = random_laurent(&mut rng);
        assert_eq!(
            (a.clone() * b.clone()).specialize_a(),
            a.specialize_a() * b.specialize_a()
        );
        assert_eq!(
            (a.clone() + b.clone()).specialize_a(),
            a.specialize_a() + b.specialize_a()
        );
    }
}

fn random_torus_element(
    rng: &mut ChaCha8Rng,
    algebra: &TorusAlgebra,
    cutoff: i64,
) -> QTElement<RationalSA> {
    let mut out = QTElement::zero(algebra.clone(), cutoff);
    for _ in 0..rng.gen_range(1..=5) {
        let v = loop {
            let v = vec![rng.gen_range(0..=3i64), rng.gen_range(0..=3i64)];
            if algebra.grade(&v) <= cutoff {
                break v;
            }
        };
        let coeff = RationalSA::from_laurent(random_laurent(rng));
        let term = QTElement::monomial(algebra.clone(), cutoff, v, coeff).unwrap();
        out = out.add(&term).unwrap();
    }
    out
}

#[test]
fn torus_multiplication_is_associative() {
    let lattice = SkewLattice::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
    let algebra = TorusAlgebra::new(lattice, GradeFunctional::new(vec![1, 1])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..60 {
        let a = random_torus_element(&mut rng, &algebra, 6);
        let b = random_torus_element(&mut rng, &algebra, 6);
        let c = random_torus_element(&mut rng, &algebra, 6);
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn torus_inverse_is_two_sided() {
    let lattice = SkewLattice::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
    let algebra = TorusAlgebra::new(lattice, GradeFunctional::new(vec![1, 1])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..40 {
        let mut x = random_torus_element(&mut rng, &algebra, 5);
        // make the grade-0 part exactly 1 so x is invertible
        let one = QTElement::one(algebra.clone(), 5);
        let zero_grade: Vec<Vec<i64>> = x
            .terms()
            .filter(|(v, _)| algebra.grade(v) == 0)
            .map(|(v, _)| v.clone())
            .collect();
        for v in zero_grade {
            let c = x.coeff_of(&v).unwrap().clone();
            let fix = QTElement::monomial(algebra.clone(), 5, v, -c).unwrap();
            x = x.add(&fix).unwrap();
        }
        x = x.add(&one).unwrap();
        let inv = x.inverse().unwrap();
        assert!(x.mul(&inv).unwrap().is_one());
        assert!(inv.mul(&x).unwrap().is_one());
    }
}

#[test]
fn torus_commutation_law() {
    // e_u e_v = q^{⟨u,v⟩} e_v e_u on random vectors
    let lattice = SkewLattice::new(vec![vec![0, 2], vec![-2, 0]]).unwrap();
    let algebra = TorusAlgebra::new(lattice, GradeFunctional::new(vec![1, 1])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let u = vec![rng.gen_range(0..=4i64), rng.gen_range(0..=4i64)];
        let v = vec![rng.gen_range(0..=4i64), rng.gen_range(0..=4i64)];
        let cutoff = algebra.grade(&u) + algebra.grade(&v);
        let eu = QTElement::monomial(algebra.clone(), cutoff, u.clone(), RationalSA::one())
            .unwrap();
        let ev = QTElement::monomial(algebra.clone(), cutoff, v.clone(), RationalSA::one())
            .unwrap();
        let lhs = eu.mul(&ev).unwrap();
        let twist = RationalSA::from_laurent(LaurentSA::s_pow(2 * algebra.pairing(&u, &v)));
        let rhs = ev.mul(&eu).unwrap().scale(&twist);
        assert_eq!(lhs, rhs);
    }
}

proptest! {
    #[test]
    fn laurent_json_round_trip(terms in proptest::collection::vec(
        (-20i64..=20, -8i64..=8, -99i64..=99), 0..8)
    ) {
        let mut p = LaurentSA::zero();
        for (s, a, c) in terms {
            p = p + LaurentSA::monomial(c.into(), s, a);
        }
        let text = serde_json::to_string(&p).unwrap();
        let back: LaurentSA = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(p, back);
    }

    #[test]
    fn rational_json_round_trip(
        nums in proptest::collection::vec((-6i64..=6, -3i64..=3, -9i64..=9), 0..5),
        dens in proptest::collection::vec((-6i64..=6, -3i64..=3, -9i64..=9), 1..5),
    ) {
        let mut num = LaurentSA::zero();
        for (s, a, c) in nums {
            num = num + LaurentSA::monomial(c.into(), s, a);
        }
        let mut den = LaurentSA::zero();
        for (s, a, c) in dens {
            den = den + LaurentSA::monomial(c.into(), s, a);
        }
        prop_assume!(!den.is_zero());
        let x = RationalSA::new(num, den).unwrap();
        let text = serde_json::to_string(&x).unwrap();
        let back: RationalSA = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(x, back);
    }

    #[test]
    fn partition_contents_count_matches_size(parts in proptest::collection::vec(1u32..=7, 0..6)) {
        let mut sorted = parts.clone();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        let p = Partition::new(sorted).unwrap();
        prop_assert_eq!(p.contents().len() as u64, p.size());
        // every addable box grows the size by exactly one
        for (bigger, _) in p.addable_boxes() {
            prop_assert_eq!(bigger.size(), p.size() + 1);
        }
    }

    #[test]
    fn laurent_sign_split_is_consistent(terms in proptest::collection::vec(
        (-10i64..=10, -4i64..=4, -20i64..=20), 0..6)
    ) {
        // a - (-a) has only even coefficients; sanity for negation arithmetic
        let mut p = LaurentSA::zero();
        for (s, a, c) in terms {
            p = p + LaurentSA::monomial(c.into(), s, a);
        }
        let doubled = p.clone() - (-p.clone());
        for (_, c) in doubled.terms() {
            prop_assert!((c % BigInt::from(2)).is_zero());
        }
        prop_assert!((p.clone() - p).is_zero());
    }
}
