//! The skew polynomial ring `F_q[x; θ]`, where `x·a = θ(a)·x`.
//!
//! θ-cyclic codes of length `n` are exactly the left submodules
//! `F_q[x;θ]·g / F_q[x;θ]·(x^n - 1)` for monic right divisors `g` of
//! `x^n - 1`; left multiplication by `x` acts on coefficient vectors as
//! `T_θ`.

use alloc::vec;
use alloc::vec::Vec;

use crate::code::LinearCode;
use crate::field::{Automorphism, Elem, Field, FieldOps};
use crate::{Error, Result};

/// Coefficients lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkewPolynomial {
    coeffs: Vec<Elem>,
    twist: Automorphism,
}

impl SkewPolynomial {
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn twist(&self) -> Automorphism {
        self.twist
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Arithmetic in `F_q[x; θ]`.
pub struct SkewRing<'a> {
    field: &'a Field,
    theta: Automorphism,
    /// `θ^i` for `i < |θ|`.
    powers: Vec<Automorphism>,
}

impl<'a> SkewRing<'a> {
    pub fn new(field: &'a Field, theta: Automorphism) -> Self {
        let powers = (0..theta.order() as u64).map(|i| theta.power(i)).collect();
        SkewRing {
            field,
            theta,
            powers,
        }
    }

    pub fn field(&self) -> &'a Field {
        self.field
    }

    pub fn theta(&self) -> Automorphism {
        self.theta
    }

    /// `θ^i(a)`.
    pub fn twist_pow(&self, i: usize, a: Elem) -> Elem {
        self.powers[i % self.powers.len()].apply(self.field, a)
    }

    pub fn poly(&self, mut coeffs: Vec<Elem>) -> SkewPolynomial {
        while coeffs.last() == Some(&Elem::ZERO) {
            coeffs.pop();
        }
        SkewPolynomial {
            coeffs,
            twist: self.theta,
        }
    }

    pub fn one(&self) -> SkewPolynomial {
        self.poly(vec![Elem::ONE])
    }

    pub fn monomial(&self, c: Elem, k: usize) -> SkewPolynomial {
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.push(c);
        self.poly(coeffs)
    }

    /// `x^n - 1`, which is the same polynomial in any twist.
    pub fn x_pow_minus_one(&self, n: usize) -> SkewPolynomial {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[0] = self.field.neg(&Elem::ONE);
        coeffs[n] = self.field.add(&coeffs[n], &Elem::ONE);
        self.poly(coeffs)
    }

    fn check(&self, f: &SkewPolynomial) {
        debug_assert_eq!(f.twist, self.theta, "skew polynomials with different twists");
    }

    pub fn add(&self, f: &SkewPolynomial, g: &SkewPolynomial) -> SkewPolynomial {
        self.check(f);
        self.check(g);
        let n = f.coeffs.len().max(g.coeffs.len());
        let get = |p: &SkewPolynomial, i: usize| p.coeffs.get(i).copied().unwrap_or(Elem::ZERO);
        self.poly((0..n).map(|i| self.field.add(&get(f, i), &get(g, i))).collect())
    }

    /// `f·g = Σ_{i,j} f_i θ^i(g_j) x^(i+j)`.
    pub fn mul(&self, f: &SkewPolynomial, g: &SkewPolynomial) -> SkewPolynomial {
        self.check(f);
        self.check(g);
        if f.is_zero() || g.is_zero() {
            return self.poly(Vec::new());
        }
        let mut out = vec![Elem::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a == Elem::ZERO {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                let term = self.field.mul(&a, &self.twist_pow(i, b));
                out[i + j] = self.field.add(&out[i + j], &term);
            }
        }
        self.poly(out)
    }

    /// Right division: `f = quotient·g + remainder` with
    /// `deg remainder < deg g`.
    pub fn right_divmod(
        &self,
        f: &SkewPolynomial,
        g: &SkewPolynomial,
    ) -> Result<(SkewPolynomial, SkewPolynomial)> {
        self.check(f);
        self.check(g);
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let lead = *g.coeffs.last().unwrap();
        let mut rem = f.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len().saturating_sub(dg)];
        while rem.len() > dg {
            let top = *rem.last().unwrap();
            let k = rem.len() - 1 - dg;
            if top != Elem::ZERO {
                // (c x^k)·g has leading coefficient c θ^k(lead)
                let c = self
                    .field
                    .div(&top, &self.twist_pow(k, lead))
                    .ok_or(Error::DivisionByZero)?;
                for (j, &gj) in g.coeffs.iter().enumerate() {
                    let term = self.field.mul(&c, &self.twist_pow(k, gj));
                    rem[k + j] = self.field.sub(&rem[k + j], &term);
                }
                quot[k] = c;
            }
            rem.pop();
        }
        Ok((self.poly(quot), self.poly(rem)))
    }

    pub fn is_right_divisor(&self, g: &SkewPolynomial, f: &SkewPolynomial) -> Result<bool> {
        Ok(self.right_divmod(f, g)?.1.is_zero())
    }

    /// Coefficient vector of `x^i·g`, padded to length `n`.
    pub fn shifted_row(&self, g: &SkewPolynomial, i: usize, n: usize) -> Vec<Elem> {
        let mut row = vec![Elem::ZERO; n];
        for (j, &c) in g.coeffs.iter().enumerate() {
            row[i + j] = self.twist_pow(i, c);
        }
        row
    }

    /// The length-`n` code spanned by `g, x·g, …, x^(n-deg g-1)·g`.
    pub fn code_of(&self, g: &SkewPolynomial, n: usize) -> Result<LinearCode> {
        let deg = g
            .degree()
            .ok_or_else(|| Error::Domain("skew generator is zero".into()))?;
        if deg > n {
            return Err(Error::Domain("skew generator longer than the code".into()));
        }
        let rows: Vec<_> = (0..n - deg).map(|i| self.shifted_row(g, i, n)).collect();
        LinearCode::from_generators(self.field, n, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use proptest::prelude::*;

    const A: Elem = Elem(2);
    const A2: Elem = Elem(3);

    fn f4() -> Field {
        Field::with_order(4).unwrap()
    }

    #[test]
    fn defining_relation() {
        let f = f4();
        let ring = SkewRing::new(&f, Automorphism::new(&f, 1).unwrap());
        let x = ring.monomial(Elem::ONE, 1);
        let a = ring.poly(vec![A]);
        assert_eq!(ring.mul(&x, &a), ring.monomial(A2, 1));
        let g = ring.poly(vec![A, Elem::ONE, A2]);
        assert_eq!(ring.mul(&g, &ring.one()), g);
    }

    #[test]
    fn noncommutative_products() {
        let f = f4();
        let ring = SkewRing::new(&f, Automorphism::new(&f, 1).unwrap());
        let p = ring.poly(vec![A, Elem::ONE]);
        let q = ring.poly(vec![A2, Elem::ONE]);
        // (x+α)(x+α²) = x² + (θ(α²) + α) x + α·α² = x² + 0·x + 1
        assert_eq!(ring.mul(&p, &q).coeffs(), [Elem::ONE, Elem::ZERO, Elem::ONE]);
        // (x+α²)(x+α) = x² + (θ(α) + α²) x + 1 = x² + 1 as well
        assert_eq!(ring.mul(&p, &q), ring.mul(&q, &p));
        // (x+α)(α²x+α) = αx² + αx + α², (α²x+α)(x+α) = α²x² + α²
        let r = ring.poly(vec![A, A2]);
        assert_eq!(ring.mul(&p, &r).coeffs(), [A2, A, A]);
        assert_eq!(ring.mul(&r, &p).coeffs(), [A2, Elem::ZERO, A2]);
    }

    #[test]
    fn divmod_self_and_classical_agreement() {
        let f = f4();
        let ring = SkewRing::new(&f, Automorphism::new(&f, 1).unwrap());
        let g = ring.poly(vec![A, Elem::ONE, A2, Elem::ONE]);
        let (quot, rem) = ring.right_divmod(&g, &g).unwrap();
        assert_eq!((quot, rem.is_zero()), (ring.one(), true));
        assert!(ring.right_divmod(&g, &ring.poly(Vec::new())).is_err());

        let f2 = Field::with_order(2).unwrap();
        let id = SkewRing::new(&f2, Automorphism::identity(&f2));
        let classical = PolyRing::new(&f2);
        for n in 1..12 {
            let xn = id.x_pow_minus_one(n);
            let (_, rem) = id.right_divmod(&xn, &id.poly(vec![Elem::ONE, Elem::ONE])).unwrap();
            assert!(rem.is_zero());
            let (_, crem) = classical
                .divmod(&classical.x_pow_minus_one(n), &classical.linear(&Elem::ONE))
                .unwrap();
            assert!(crem.is_zero());
        }
    }

    proptest! {
        #[test]
        fn right_division_reconstructs(a in proptest::collection::vec(0u32..4, 0..10),
                                       b in proptest::collection::vec(0u32..4, 0..5),
                                       lead in 1u32..4, r in 1u32..=2) {
            let f = f4();
            let ring = SkewRing::new(&f, Automorphism::new(&f, r).unwrap());
            let fa = ring.poly(a.into_iter().map(Elem).collect());
            let mut b: Vec<Elem> = b.into_iter().map(Elem).collect();
            b.push(Elem(lead));
            let g = ring.poly(b);
            let (quot, rem) = ring.right_divmod(&fa, &g).unwrap();
            prop_assert!(rem.degree().is_none_or(|d| d < g.degree().unwrap()));
            prop_assert_eq!(ring.add(&ring.mul(&quot, &g), &rem), fa);
        }

        #[test]
        fn degree_is_additive(a in proptest::collection::vec(0u32..8, 1..6), b in proptest::collection::vec(0u32..8, 1..6)) {
            let f = Field::with_order(8).unwrap();
            let ring = SkewRing::new(&f, Automorphism::new(&f, 1).unwrap());
            let fa = ring.poly(a.into_iter().map(Elem).collect());
            let fb = ring.poly(b.into_iter().map(Elem).collect());
            prop_assume!(!fa.is_zero() && !fb.is_zero());
            prop_assert_eq!(ring.mul(&fa, &fb).degree(), Some(fa.degree().unwrap() + fb.degree().unwrap()));
        }
    }
}
