//! Tower fields `GF(q)[z]/(f)` over a tabulated base field.
//!
//! These hold the roots of unity needed to factor `x^ñ - 1` and serve as the
//! constituent fields `F_q[Y]/(g)` of the CRT decomposition. Elements are
//! coordinate vectors over the base field, so the base field embeds as the
//! constants and down-casting is a check that the other coordinates vanish.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::arith::{self, prime_factors};
use crate::cosets::multiplicative_order;
use crate::error::precondition;
use crate::field::{Elem, Field, FieldOps};
use crate::poly::{Poly, PolyRing};
use crate::{Error, Result};

/// An element of an [`ExtensionField`]: `degree` base-field coordinates with
/// respect to `1, z, …, z^(t-1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElem(pub Vec<Elem>);

/// `base[z]/(modulus)` for a monic irreducible `modulus`.
#[derive(Clone)]
pub struct ExtensionField {
    base: Field,
    modulus: Poly<Elem>,
    degree: usize,
    order: BigUint,
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[z]/({:?})", self.base, self.modulus.coeffs())
    }
}

impl ExtensionField {
    /// Checks the modulus with Rabin's irreducibility test.
    pub fn new(base: &Field, modulus: Poly<Elem>) -> Result<Self> {
        let degree = modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| precondition!("extension modulus must have positive degree"))?;
        if modulus.leading() != Some(&Elem::ONE) {
            return Err(precondition!("extension modulus must be monic"));
        }
        if !is_irreducible(base, &modulus) {
            return Err(precondition!("extension modulus {:?} is reducible", modulus.coeffs()));
        }
        let order = BigUint::from(base.q()).pow(degree as u32);
        Ok(ExtensionField {
            base: base.clone(),
            modulus,
            degree,
            order,
        })
    }

    /// The extension of the given degree whose modulus is the first monic
    /// irreducible polynomial in base-`q` counting order.
    pub fn with_degree(base: &Field, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(precondition!("extension degree must be positive"));
        }
        let ring = PolyRing::new(base);
        let q = base.q() as u128;
        let mut index: u128 = 0;
        loop {
            let mut coeffs = Vec::with_capacity(degree + 1);
            let mut rest = index;
            for _ in 0..degree {
                coeffs.push(Elem((rest % q) as u32));
                rest /= q;
            }
            if rest != 0 || (degree > 1 && index == u128::MAX) {
                return Err(Error::Internal(format!("no irreducible of degree {degree}")));
            }
            coeffs.push(Elem::ONE);
            let candidate = ring.poly(coeffs);
            if is_irreducible(base, &candidate) {
                return ExtensionField::new(base, candidate);
            }
            index += 1;
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn modulus(&self) -> &Poly<Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn from_base(&self, c: Elem) -> ExtElem {
        let mut v = vec![Elem::ZERO; self.degree];
        v[0] = c;
        ExtElem(v)
    }

    /// `Some(c)` if the element is the constant `c`.
    pub fn to_base(&self, a: &ExtElem) -> Option<Elem> {
        a.0[1..].iter().all(|&c| c == Elem::ZERO).then_some(a.0[0])
    }

    /// Reduces a base-field polynomial into the extension.
    pub fn from_poly(&self, f: &Poly<Elem>) -> ExtElem {
        let ring = PolyRing::new(&self.base);
        let r = ring.rem(f, &self.modulus).expect("modulus is nonzero");
        let mut v = r.into_coeffs();
        v.resize(self.degree, Elem::ZERO);
        ExtElem(v)
    }

    pub fn to_poly(&self, a: &ExtElem) -> Poly<Elem> {
        PolyRing::new(&self.base).poly(a.0.clone())
    }

    /// Exact number of elements.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// `a^e` for an exponent of any size.
    pub fn pow_big(&self, a: &ExtElem, e: &BigUint) -> ExtElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The class of `z`.
    pub fn generator(&self) -> ExtElem {
        self.from_poly(&PolyRing::new(&self.base).x())
    }
}

impl FieldOps for ExtensionField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem(vec![Elem::ZERO; self.degree])
    }

    fn one(&self) -> ExtElem {
        self.from_base(Elem::ONE)
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| self.base.add(x, y)).collect())
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| self.base.sub(x, y)).collect())
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().map(|x| self.base.neg(x)).collect())
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let t = self.degree;
        let f = &self.base;
        let mut prod = vec![Elem::ZERO; 2 * t - 1];
        for (i, x) in a.0.iter().enumerate() {
            if *x == Elem::ZERO {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        // reduce with the monic modulus: z^t = -Σ m_i z^i
        let m = self.modulus.coeffs();
        for k in (t..prod.len()).rev() {
            let top = prod[k];
            if top == Elem::ZERO {
                continue;
            }
            for (i, mi) in m[..t].iter().enumerate() {
                prod[k - t + i] = f.sub(&prod[k - t + i], &f.mul(&top, mi));
            }
        }
        prod.truncate(t);
        ExtElem(prod)
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        // extended Euclid: s·a + t·f = 1
        let ring = PolyRing::new(&self.base);
        let (mut r0, mut r1) = (self.modulus.clone(), self.to_poly(a));
        let (mut s0, mut s1) = (ring.zero(), ring.one());
        while !r1.is_zero() {
            let (quot, rem) = ring.divmod(&r0, &r1).ok()?;
            let s2 = ring.sub(&s0, &ring.mul(&quot, &s1));
            (r0, r1) = (r1, rem);
            (s0, s1) = (s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        let c = self.base.inv(r0.coeffs().first()?)?;
        Some(self.from_poly(&ring.scale(&c, &s0)))
    }

    /// Saturates at `u128::MAX`; see [`ExtensionField::order`] for the
    /// exact value.
    fn cardinality(&self) -> u128 {
        u128::try_from(&self.order).unwrap_or(u128::MAX)
    }

    fn multiplicative_order(&self, a: &ExtElem) -> Option<u128> {
        if self.is_zero(a) {
            return None;
        }
        let group = u128::try_from(&self.order).ok()? - 1;
        let mut order = group;
        for l in prime_factors(group) {
            while order % l == 0 && self.pow(a, order / l) == self.one() {
                order /= l;
            }
        }
        Some(order)
    }

    fn element(&self, mut index: u128) -> ExtElem {
        assert!(BigUint::from(index) < self.order, "element index out of range");
        let q = self.base.q() as u128;
        let mut v = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            v.push(Elem((index % q) as u32));
            index /= q;
        }
        ExtElem(v)
    }
}

/// `x^e mod f` over the base field.
fn pow_x_mod(ring: &PolyRing<'_, Field>, base: &Poly<Elem>, e: u128, f: &Poly<Elem>) -> Poly<Elem> {
    let mut acc = ring.one();
    let mut b = ring.rem(base, f).unwrap();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = ring.rem(&ring.mul(&acc, &b), f).unwrap();
        }
        e >>= 1;
        if e > 0 {
            b = ring.rem(&ring.mul(&b, &b), f).unwrap();
        }
    }
    acc
}

/// Rabin's test: `f` of degree `t` is irreducible iff `x^(q^t) ≡ x` and
/// `gcd(x^(q^(t/l)) - x, f) = 1` for every prime `l | t`.
pub fn is_irreducible(base: &Field, f: &Poly<Elem>) -> bool {
    let Some(t) = f.degree() else { return false };
    if t == 0 {
        return false;
    }
    if t == 1 {
        return true;
    }
    let ring = PolyRing::new(base);
    let f = ring.monic(f);
    let q = base.q() as u128;
    let x = ring.x();
    // frob[k] = x^(q^k) mod f
    let mut frob = Vec::with_capacity(t + 1);
    frob.push(ring.rem(&x, &f).unwrap());
    for k in 1..=t {
        let next = pow_x_mod(&ring, &frob[k - 1], q, &f);
        frob.push(next);
    }
    if frob[t] != frob[0] {
        return false;
    }
    prime_factors(t as u128).into_iter().all(|l| {
        let h = ring.sub(&frob[t / l as usize], &x);
        !h.is_zero() && ring.gcd(&h, &f).map(|g| g == ring.one()).unwrap_or(false)
    })
}

/// An element of multiplicative order exactly `n` in `GF(q^t)`,
/// `t = ord_n(q)`, together with that extension.
///
/// The extension is the first irreducible of degree `t` in counting order
/// and the root is the first `y^((q^t-1)/n)` of full order, so the output is
/// deterministic.
pub fn primitive_nth_root(base: &Field, n: u64) -> Result<(ExtensionField, ExtElem)> {
    if n == 0 || arith::gcd(n, base.p() as u64) != 1 {
        return Err(precondition!(
            "a primitive {n}-th root of unity needs gcd(n, {}) = 1",
            base.p()
        ));
    }
    let t = multiplicative_order(n, base.q() as u64)?;
    let ext = ExtensionField::with_degree(base, t as usize)?;
    if n == 1 {
        let one = ext.one();
        return Ok((ext, one));
    }
    let cofactor = (ext.order() - 1u32) / n;
    let primes = prime_factors(n as u128);
    let one = ext.one();
    for index in 1..ext.cardinality() {
        let alpha = ext.pow_big(&ext.element(index), &cofactor);
        if primes.iter().all(|&l| ext.pow(&alpha, n as u128 / l) != one) {
            return Ok((ext, alpha));
        }
    }
    Err(Error::Internal(format!("no element of order {n} found")))
}
