//! Dense univariate polynomials over any [`FieldOps`] field, plus the
//! coset-driven factorization of `x^n - 1` into self-reciprocal factors and
//! reciprocal pairs.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::split_power;
use crate::cosets::{cyclotomic_cosets, CyclotomicCoset};
use crate::extension::{primitive_nth_root, ExtElem, ExtensionField};
use crate::field::{Automorphism, Elem, Field, FieldOps};
use crate::{Error, Result};

/// A polynomial, coefficients lowest degree first, with no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Polynomial arithmetic over a borrowed field.
#[derive(Clone, Copy)]
pub struct PolyRing<'a, F: FieldOps> {
    field: &'a F,
}

impl<'a, F: FieldOps> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &'a F {
        self.field
    }

    /// Builds a polynomial, trimming trailing zeros.
    pub fn poly(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.poly(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.push(c);
        self.poly(coeffs)
    }

    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(&self, n: usize) -> Poly<F::Elem> {
        self.sub(&self.monomial(self.field.one(), n), &self.one())
    }

    /// `x - a`.
    pub fn linear(&self, root: &F::Elem) -> Poly<F::Elem> {
        self.poly(vec![self.field.neg(root), self.field.one()])
    }

    pub fn add(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = f.coeffs.len().max(g.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = f.coeffs.get(i).unwrap_or(&zero);
                let b = g.coeffs.get(i).unwrap_or(&zero);
                self.field.add(a, b)
            })
            .collect();
        self.poly(coeffs)
    }

    pub fn neg(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.poly(f.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, c: &F::Elem, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.poly(f.coeffs.iter().map(|a| self.field.mul(c, a)).collect())
    }

    pub fn mul(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        if f.is_zero() || g.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.field.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        for (i, a) in f.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(a, b));
            }
        }
        self.poly(out)
    }

    pub fn pow(&self, f: &Poly<F::Elem>, mut exp: u64) -> Poly<F::Elem> {
        let mut acc = self.one();
        let mut base = f.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Euclidean division: `f = quotient·g + remainder`, `deg remainder < deg g`.
    pub fn divmod(
        &self,
        f: &Poly<F::Elem>,
        g: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = self.field.inv(g.leading().unwrap()).ok_or(Error::DivisionByZero)?;
        let mut rem = f.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len().saturating_sub(dg)];
        while rem.len() > dg {
            let top = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - dg;
            if !self.field.is_zero(&top) {
                let c = self.field.mul(&top, &lead_inv);
                for (i, gi) in g.coeffs.iter().enumerate() {
                    rem[shift + i] = self.field.sub(&rem[shift + i], &self.field.mul(&c, gi));
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        Ok((self.poly(quot), self.poly(rem)))
    }

    pub fn rem(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.divmod(f, g)?.1)
    }

    pub fn divides(&self, g: &Poly<F::Elem>, f: &Poly<F::Elem>) -> Result<bool> {
        Ok(self.rem(f, g)?.is_zero())
    }

    /// Scales to a monic polynomial; the zero polynomial is returned as is.
    pub fn monic(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        match f.leading() {
            None => f.clone(),
            Some(lead) => {
                let inv = self.field.inv(lead).expect("nonzero leading coefficient");
                self.scale(&inv, f)
            }
        }
    }

    /// Monic gcd. `gcd(0, 0)` is a division-by-zero error.
    pub fn gcd(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(self.monic(&a))
    }

    /// `f(a)` by Horner's rule.
    pub fn eval(&self, f: &Poly<F::Elem>, a: &F::Elem) -> F::Elem {
        f.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, a), c))
    }

    /// `f* = x^deg(f)·f(1/x) / f(0)`, the monic reciprocal.
    pub fn reciprocal(&self, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let constant = match f.coeffs.first() {
            Some(c) if !self.field.is_zero(c) => c,
            _ => {
                return Err(Error::Domain(
                    "reciprocal needs a nonzero constant term".into(),
                ))
            }
        };
        let inv = self.field.inv(constant).unwrap();
        let rev = f.coeffs.iter().rev().map(|c| self.field.mul(&inv, c)).collect();
        Ok(self.poly(rev))
    }

    pub fn is_self_reciprocal(&self, f: &Poly<F::Elem>) -> Result<bool> {
        Ok(self.reciprocal(f)? == self.monic(f))
    }

    /// Applies `map` to every coefficient.
    pub fn map_coeffs(&self, f: &Poly<F::Elem>, map: impl Fn(&F::Elem) -> F::Elem) -> Poly<F::Elem> {
        self.poly(f.coeffs.iter().map(map).collect())
    }

    pub fn product<'p>(
        &self,
        factors: impl IntoIterator<Item = &'p Poly<F::Elem>>,
    ) -> Poly<F::Elem>
    where
        F::Elem: 'p,
    {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }
}

/// Applies θ to every coefficient of a polynomial over `field`.
pub fn map_automorphism_over_poly(field: &Field, theta: &Automorphism, f: &Poly<Elem>) -> Poly<Elem> {
    PolyRing::new(field).map_coeffs(f, |&c| theta.apply(field, c))
}

/// `∏_{k ∈ coset} (x - α^k)`, computed in the extension holding `α` and
/// brought down to the base field.
///
/// Fails with an internal error if some coefficient is not in the base
/// field, which happens only for a mismatched root/coset pair.
pub fn minimal_polynomial(
    ext: &ExtensionField,
    alpha: &ExtElem,
    coset: &CyclotomicCoset,
) -> Result<Poly<Elem>> {
    let ring = PolyRing::new(ext);
    let mut acc = ring.one();
    for &k in coset.elements() {
        let root = ext.pow(alpha, k as u128);
        acc = ring.mul(&acc, &ring.linear(&root));
    }
    let base = ext.base();
    let coeffs = acc
        .coeffs()
        .iter()
        .map(|c| {
            ext.to_base(c).ok_or_else(|| {
                Error::Internal(format!(
                    "minimal polynomial of coset {:?} has a coefficient outside {base:?}",
                    coset.elements()
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyRing::new(base).poly(coeffs))
}

/// An irreducible factor of `x^ñ - 1` together with the cyclotomic coset
/// indexing its roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: Poly<Elem>,
    pub coset: CyclotomicCoset,
}

impl Factor {
    pub fn rep(&self) -> u64 {
        self.coset.rep()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

/// `x^n - 1 = ∏ f_i^(p^v) · ∏ (h_j h_j*)^(p^v)` with `n = p^v ñ`, `p ∤ ñ`.
#[derive(Clone, Debug)]
pub struct FactorizationOfXnMinus1 {
    pub field: Field,
    pub n: u64,
    pub n_tilde: u64,
    /// `p^v`.
    pub multiplicity: u64,
    pub self_reciprocal: Vec<Factor>,
    /// `(h, h*)` with `rep(h) < rep(h*)`.
    pub pairs: Vec<(Factor, Factor)>,
}

impl FactorizationOfXnMinus1 {
    /// Every irreducible factor, ordered by coset representative.
    pub fn factors(&self) -> Vec<&Factor> {
        let mut all: Vec<&Factor> = self
            .self_reciprocal
            .iter()
            .chain(self.pairs.iter().flat_map(|(a, b)| [a, b]))
            .collect();
        all.sort_by_key(|f| f.rep());
        all
    }

    pub fn factor_by_rep(&self, rep: u64) -> Option<&Factor> {
        self.factors().into_iter().find(|f| f.rep() == rep)
    }

    /// Multiplies everything back together.
    pub fn reassemble(&self) -> Poly<Elem> {
        let ring = PolyRing::new(&self.field);
        self.factors()
            .into_iter()
            .fold(ring.one(), |acc, f| ring.mul(&acc, &ring.pow(&f.poly, self.multiplicity)))
    }
}

/// Factors `x^n - 1` over `field` through cyclotomic cosets modulo `ñ`.
pub fn factor_xn_minus_1(field: &Field, n: u64) -> Result<FactorizationOfXnMinus1> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let p = field.p() as u64;
    let q = field.q() as u64;
    let (v, n_tilde) = split_power(n, p);
    let cosets = cyclotomic_cosets(n_tilde, q)?;
    let (ext, alpha) = primitive_nth_root(field, n_tilde)?;
    let ring = PolyRing::new(field);

    let mut polys = Vec::with_capacity(cosets.len());
    for coset in &cosets {
        polys.push(minimal_polynomial(&ext, &alpha, coset)?);
    }
    let index_of = |a: u64| cosets.iter().position(|c| c.contains(a)).unwrap();

    let mut self_reciprocal = Vec::new();
    let mut pairs = Vec::new();
    for (i, coset) in cosets.iter().enumerate() {
        let partner = index_of((n_tilde - coset.rep()) % n_tilde);
        let recip = ring.reciprocal(&polys[i])?;
        if recip != polys[partner] {
            return Err(Error::Internal(format!(
                "reciprocal of the factor for coset {} is not the factor for coset {}",
                coset.rep(),
                cosets[partner].rep()
            )));
        }
        let factor = Factor {
            poly: polys[i].clone(),
            coset: coset.clone(),
        };
        if partner == i {
            self_reciprocal.push(factor);
        } else if partner > i {
            let other = Factor {
                poly: polys[partner].clone(),
                coset: cosets[partner].clone(),
            };
            pairs.push((factor, other));
        }
    }
    Ok(FactorizationOfXnMinus1 {
        field: field.clone(),
        n,
        n_tilde,
        multiplicity: p.pow(v),
        self_reciprocal,
        pairs,
    })
}
