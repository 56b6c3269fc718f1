//! Finite fields `GF(p^m)` with `p^m <= 2^16`.
//!
//! An element is stored as the integer `Σ c_i p^i`, where `(c_0, …, c_{m-1})`
//! are its coordinates in the power basis of the modulus. Multiplication goes
//! through exp/log tables built once per field.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{self, gcd, prime_factors};
use crate::error::precondition;
use crate::{Error, Result};

/// Largest supported field cardinality.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// The operations every field in this crate provides.
///
/// Implemented by [`Field`] and by the tower fields in
/// [`crate::extension`], so polynomial and matrix code can be written once.
pub trait FieldOps {
    type Elem: Clone + Eq + Ord + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Number of elements.
    fn cardinality(&self) -> u128;
    /// The `index`-th element in a fixed enumeration of the field;
    /// index 0 is zero. Panics if `index >= cardinality()`.
    fn element(&self, index: u128) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|b| self.mul(a, &b))
    }

    fn pow(&self, a: &Self::Elem, mut exp: u128) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    fn multiplicative_order(&self, a: &Self::Elem) -> Option<u128> {
        if self.is_zero(a) {
            return None;
        }
        let group = self.cardinality() - 1;
        let mut order = group;
        for l in prime_factors(group) {
            while order.is_multiple_of(l) && self.pow(a, order / l) == self.one() {
                order /= l;
            }
        }
        Some(order)
    }
}

/// A field element: the integer encoding of its coordinate vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);
}

/// Parameters of `GF(p^m)`: the characteristic, the degree and a monic
/// irreducible modulus over `GF(p)` (coefficients lowest degree first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    q: u32,
}

impl FieldSpec {
    /// Validates and builds a field description.
    ///
    /// The modulus is checked for irreducibility by trial division with every
    /// monic polynomial of degree at most `m/2`, which is only reasonable
    /// because `p^m` is capped at [`MAX_FIELD_SIZE`].
    pub fn new(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self> {
        if !arith::is_prime(p as u64) {
            return Err(precondition!("characteristic {p} is not prime"));
        }
        if m == 0 {
            return Err(precondition!("extension degree must be at least 1"));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| precondition!("field size {p}^{m} exceeds the supported 2^16"))?;
        if modulus.len() != m as usize + 1 {
            return Err(precondition!(
                "modulus must have degree {m} ({} coefficients given)",
                modulus.len()
            ));
        }
        if modulus[m as usize] != 1 {
            return Err(precondition!("modulus must be monic"));
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= p) {
            return Err(precondition!("modulus coefficient {c} is not a residue mod {p}"));
        }
        if !prime_poly::is_irreducible(&modulus, p) {
            return Err(precondition!("modulus {modulus:?} is reducible over GF({p})"));
        }
        Ok(FieldSpec {
            p,
            m,
            modulus,
            q: q as u32,
        })
    }

    /// The reproducible default modulus for `GF(p^m)`: a Conway polynomial
    /// where one is tabulated, otherwise the first primitive polynomial in
    /// base-`p` counting order of the coefficient vector.
    pub fn default_for(p: u32, m: u32) -> Result<Self> {
        if let Some(modulus) = conway(p, m) {
            return FieldSpec::new(p, m, modulus.to_vec());
        }
        if !arith::is_prime(p as u64) || m == 0 {
            return FieldSpec::new(p, m, Vec::new());
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_FIELD_SIZE {
            return Err(precondition!("field size {p}^{m} exceeds the supported 2^16"));
        }
        for index in 1..q {
            let mut modulus = prime_poly::digits(index, p, m as usize);
            modulus.push(1);
            if prime_poly::is_irreducible(&modulus, p) && prime_poly::is_primitive(&modulus, p) {
                return FieldSpec::new(p, m, modulus);
            }
        }
        Err(Error::Internal(format!("no primitive polynomial of degree {m} over GF({p})")))
    }

    /// Default field of order `q`.
    pub fn for_order(q: u64) -> Result<Self> {
        let (p, m) = arith::prime_power(q).ok_or_else(|| precondition!("{q} is not a prime power"))?;
        FieldSpec::default_for(p as u32, m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}

/// Conway polynomials for small fields, coefficients lowest degree first.
fn conway(p: u32, m: u32) -> Option<&'static [u32]> {
    Some(match (p, m) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (2, 7) => &[1, 1, 0, 0, 0, 0, 0, 1],
        (2, 8) => &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 1) => &[3, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (7, 1) => &[4, 1],
        (7, 2) => &[3, 6, 1],
        (11, 1) => &[9, 1],
        (11, 2) => &[2, 7, 1],
        (13, 1) => &[11, 1],
        (13, 2) => &[2, 12, 1],
        _ => return None,
    })
}

/// Arithmetic on coefficient vectors over the prime field, used only while
/// validating a modulus and building the tables.
mod prime_poly {
    use alloc::vec;
    use alloc::vec::Vec;

    use crate::arith::prime_factors;

    pub fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
        let mut out = vec![0; len];
        for d in out.iter_mut() {
            *d = (n % p as u64) as u32;
            n /= p as u64;
        }
        out
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        crate::arith::pow_mod(a as u64, p as u64 - 2, p as u64) as u32
    }

    /// Remainder of `f` modulo `g` (both lowest-first, `g` nonzero leading).
    pub fn rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
        let mut r = f.to_vec();
        let dg = g.len() - 1;
        let lead_inv = inv_mod(g[dg], p);
        while r.len() > dg {
            let top = *r.last().unwrap();
            if top != 0 {
                let c = (top as u64 * lead_inv as u64 % p as u64) as u32;
                let shift = r.len() - 1 - dg;
                for (i, &gi) in g.iter().enumerate() {
                    let sub = (c as u64 * gi as u64 % p as u64) as u32;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
            r.pop();
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let mut prod = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        rem(&prod, modulus, p)
    }

    pub fn pow_mod(a: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
        let m = modulus.len() - 1;
        let mut acc = vec![0; m];
        acc[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, modulus, p);
            }
            base = mul_mod(&base, &base, modulus, p);
            e >>= 1;
        }
        acc
    }

    pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
        let m = modulus.len() - 1;
        if m == 1 {
            return true;
        }
        for deg in 1..=m / 2 {
            let count = (p as u64).pow(deg as u32);
            for index in 0..count {
                let mut divisor = digits(index, p, deg);
                divisor.push(1);
                if rem(modulus, &divisor, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the class of `x` generates the multiplicative group.
    pub fn is_primitive(modulus: &[u32], p: u32) -> bool {
        let m = modulus.len() - 1;
        let group = (p as u64).pow(m as u32) - 1;
        let mut x = vec![0u32; m.max(2)];
        x[1] = 1;
        let x = rem(&x, modulus, p);
        if x.iter().all(|&c| c == 0) {
            return false;
        }
        let mut one = vec![0u32; m];
        one[0] = 1;
        prime_factors(group as u128)
            .into_iter()
            .all(|l| pow_mod(&x, group / l as u64, modulus, p) != one)
    }
}

struct Tables {
    spec: FieldSpec,
    /// `exp[i] = g^i` for `i in 0..2(q-1)` so products need no reduction.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A finite field `GF(p^m)` with precomputed multiplication tables.
///
/// Cloning is cheap (reference counted). Two fields compare equal when their
/// [`FieldSpec`]s do.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.m())
    }
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let p = spec.p;
        let m = spec.m as usize;
        let q = spec.q as u64;
        let group = q - 1;
        let to_index = |coords: &[u32]| -> u32 {
            coords.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64) as u32
        };
        let is_generator = |g: &[u32]| {
            let mut one = vec![0u32; m];
            one[0] = 1;
            prime_factors(group as u128).into_iter().all(|l| {
                prime_poly::pow_mod(g, group / l as u64, &spec.modulus, p) != one
            })
        };
        // Prefer the class of x; fall back to the smallest generator for
        // irreducible but non-primitive moduli.
        let mut gen = {
            let mut x = vec![0u32; m.max(2)];
            x[1] = 1;
            let mut x = prime_poly::rem(&x, &spec.modulus, p);
            x.resize(m, 0);
            x
        };
        if group > 1 && !is_generator(&gen) {
            gen = (2..q)
                .map(|i| prime_poly::digits(i, p, m))
                .find(|g| is_generator(g))
                .expect("multiplicative group of a finite field is cyclic");
        }
        let mut exp = Vec::with_capacity(2 * group as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![0u32; m];
        cur[0] = 1;
        for i in 0..group {
            let idx = to_index(&cur);
            exp.push(idx);
            log[idx as usize] = i as u32;
            cur = prime_poly::mul_mod(&cur, &gen, &spec.modulus, p);
            cur.resize(m, 0);
        }
        for i in 0..group as usize {
            exp.push(exp[i]);
        }
        Field(Arc::new(Tables { spec, exp, log }))
    }

    /// `GF(q)` with the default modulus.
    pub fn with_order(q: u64) -> Result<Self> {
        Ok(Field::new(FieldSpec::for_order(q)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn m(&self) -> u32 {
        self.0.spec.m
    }

    pub fn q(&self) -> u32 {
        self.0.spec.q
    }

    /// The generator `g` used for the exp/log tables.
    pub fn primitive_element(&self) -> Elem {
        Elem(self.0.exp[if self.q() == 2 { 0 } else { 1 }])
    }

    /// Element with the given power-basis coordinates.
    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() > self.m() as usize {
            return Err(Error::Domain(format!(
                "{} coordinates given for a degree-{} field",
                coords.len(),
                self.m()
            )));
        }
        if let Some(c) = coords.iter().find(|&&c| c >= self.p()) {
            return Err(Error::Domain(format!("coordinate {c} is not a residue mod {}", self.p())));
        }
        let p = self.p() as u64;
        Ok(Elem(coords.iter().rev().fold(0u64, |acc, &c| acc * p + c as u64) as u32))
    }

    pub fn coords(&self, a: Elem) -> Vec<u32> {
        prime_poly::digits(a.0 as u64, self.p(), self.m() as usize)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p() as i64) as u32)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q()).map(Elem)
    }

    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != Elem::ZERO).then(|| self.0.log[a.0 as usize])
    }

    pub fn exp(&self, k: u64) -> Elem {
        Elem(self.0.exp[(k % (self.q() as u64 - 1)) as usize])
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: Elem, k: u32) -> Elem {
        match self.log(a) {
            None => a,
            Some(l) => {
                let group = self.q() as u64 - 1;
                let e = arith::pow_mod(self.p() as u64, k as u64, group.max(1));
                self.exp(l as u64 * e)
            }
        }
    }

    /// Whether `a` lies in the subfield `GF(p^k)` (`k` must divide `m`).
    pub fn in_subfield(&self, a: Elem, k: u32) -> bool {
        self.frobenius(a, k) == a
    }
}

impl FieldOps for Field {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        Elem::ZERO
    }

    fn one(&self) -> Elem {
        Elem::ONE
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.p();
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    fn neg(&self, a: &Elem) -> Elem {
        let p = self.p();
        if p == 2 {
            return *a;
        }
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let t = &self.0;
        Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    fn inv(&self, a: &Elem) -> Option<Elem> {
        let l = self.log(*a)?;
        let group = self.q() - 1;
        Some(Elem(self.0.exp[((group - l) % group) as usize]))
    }

    fn cardinality(&self) -> u128 {
        self.q() as u128
    }

    fn element(&self, index: u128) -> Elem {
        assert!(index < self.q() as u128, "element index out of range");
        Elem(index as u32)
    }

    fn pow(&self, a: &Elem, exp: u128) -> Elem {
        match self.log(*a) {
            None if exp == 0 => Elem::ONE,
            None => Elem::ZERO,
            Some(l) => {
                let group = self.q() as u128 - 1;
                self.exp((l as u128 * (exp % group) % group) as u64)
            }
        }
    }
}

/// The Frobenius power `β ↦ β^(p^r)` of `GF(p^m)`, `1 <= r <= m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    r: u32,
    m: u32,
    p: u32,
}

impl Automorphism {
    pub fn new(field: &Field, r: u32) -> Result<Self> {
        if r == 0 || r > field.m() {
            return Err(precondition!("Frobenius exponent r={r} must lie in [1, {}]", field.m()));
        }
        Ok(Automorphism {
            r,
            m: field.m(),
            p: field.p(),
        })
    }

    pub fn identity(field: &Field) -> Self {
        Automorphism {
            r: field.m(),
            m: field.m(),
            p: field.p(),
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `|θ| = m / gcd(m, r)`.
    pub fn order(&self) -> u32 {
        self.m / gcd(self.m as u64, self.r as u64) as u32
    }

    pub fn is_identity(&self) -> bool {
        self.r == self.m
    }

    /// `θ^k`.
    pub fn power(&self, k: u64) -> Self {
        let r = ((self.r as u64 * (k % self.m as u64)) % self.m as u64) as u32;
        Automorphism {
            r: if r == 0 { self.m } else { r },
            ..*self
        }
    }

    pub fn inverse(&self) -> Self {
        self.power(self.order() as u64 - 1)
    }

    pub fn apply(&self, field: &Field, a: Elem) -> Elem {
        debug_assert!(field.m() == self.m && field.p() == self.p);
        if self.is_identity() {
            a
        } else {
            field.frobenius(a, self.r)
        }
    }
}

/// Smallest `e >= 1` with `θ^e = id`.
pub fn automorphism_order(theta: &Automorphism) -> u32 {
    theta.order()
}

pub fn apply_automorphism(theta: &Automorphism, a: &FieldElement) -> FieldElement {
    FieldElement {
        value: theta.apply(&a.field, a.value),
        field: a.field.clone(),
    }
}

/// An element bundled with its field, for callers that want every operation
/// checked for field agreement.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.field.coords(self.value), self.field)
    }
}

/// Binary operations accepted by [`field_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Result<Self> {
        if value.0 >= field.q() {
            return Err(Error::Domain(format!("{} is not an element of {field:?}", value.0)));
        }
        Ok(FieldElement {
            field: field.clone(),
            value,
        })
    }

    pub fn from_coords(field: &Field, coords: &[u32]) -> Result<Self> {
        Ok(FieldElement {
            value: field.from_coords(coords)?,
            field: field.clone(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.value)
    }

    pub fn pow(&self, exp: u128) -> Self {
        FieldElement {
            value: self.field.pow(&self.value, exp),
            field: self.field.clone(),
        }
    }
}

/// Checked binary arithmetic. Mixing fields is a domain error and division
/// by zero is [`Error::DivisionByZero`].
pub fn field_arithmetic(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if a.field != b.field {
        return Err(Error::Domain(format!(
            "operands from {:?} and {:?}",
            a.field, b.field
        )));
    }
    let f = &a.field;
    let value = match op {
        ArithOp::Add => f.add(&a.value, &b.value),
        ArithOp::Sub => f.sub(&a.value, &b.value),
        ArithOp::Mul => f.mul(&a.value, &b.value),
        ArithOp::Div => f.div(&a.value, &b.value).ok_or(Error::DivisionByZero)?,
    };
    Ok(FieldElement {
        field: f.clone(),
        value,
    })
}
