//! Quasi-cyclic codes through the CRT decomposition of `R = F_q[Y]/(Y^m - 1)`.
//!
//! A vector of length `dm` folds into `R^d`. `R` splits into the fields
//! `F_q[Y]/(f)` over the irreducible factors `f` of `Y^m - 1`, so a
//! quasi-cyclic code of index `d` splits into one length-`d` constituent per
//! factor. Euclidean self-duality becomes Hermitian self-duality (with
//! `Y ↦ Y^-1` as conjugation) on self-reciprocal factors, and
//! `C'' = conj((C')^⊥)` on each reciprocal pair `(h, h*)`.
//!
//! On top of that sit the closed-form counts for self-dual θ-cyclic codes
//! when `gcd(n, |θ|) > 1`, each reported next to a direct count over the
//! constituent enumeration and the skew-divisor oracle.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;

use crate::arith;
use crate::code::LinearCode;
use crate::error::precondition;
use crate::extension::{ExtElem, ExtensionField};
use crate::field::{Automorphism, Elem, Field, FieldOps};
use crate::linalg::{null_space, rref};
use crate::oracle::{self, combinations};
use crate::poly::{factor_xn_minus_1, Factor, Poly, PolyRing};
use crate::{Error, Result};

/// Generator rows (RREF) of a code over a constituent field.
pub type Rows = Vec<Vec<ExtElem>>;

/// One field `F_q[Y]/(f)` of the decomposition.
#[derive(Clone, Debug)]
pub struct Constituent {
    poly: Poly<Elem>,
    field: ExtensionField,
    /// `e ≡ 1 mod f`, `e ≡ 0` modulo every other factor.
    idempotent: Poly<Elem>,
    rep: u64,
}

impl Constituent {
    pub fn poly(&self) -> &Poly<Elem> {
        &self.poly
    }

    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    pub fn idempotent(&self) -> &Poly<Elem> {
        &self.idempotent
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Representative of the cyclotomic coset of its roots modulo `m`.
    pub fn coset_rep(&self) -> u64 {
        self.rep
    }
}

/// `Y^m - 1 = g_1 ⋯ g_s · h_1 h_1* ⋯ h_t h_t*` with the constituent fields.
///
/// `g_1 = Y - 1`, followed by `g_2 = Y + 1` when `m` is even (then `q` is
/// odd), then the remaining self-reciprocal factors by coset representative.
#[derive(Clone, Debug)]
pub struct CrtDecomposition {
    base: Field,
    m: usize,
    self_reciprocal: Vec<Constituent>,
    pairs: Vec<(Constituent, Constituent)>,
}

pub fn crt_decompose(field: &Field, m: usize) -> Result<CrtDecomposition> {
    if m == 0 || arith::gcd(m as u64, field.p() as u64) != 1 {
        return Err(precondition!(
            "co-index m={m} must be positive and coprime to q={}",
            field.q()
        ));
    }
    let fac = factor_xn_minus_1(field, m as u64)?;
    let ring = PolyRing::new(field);
    let ym = ring.x_pow_minus_one(m);
    let make = |f: &Factor| -> Result<Constituent> {
        let (cofactor, rem) = ring.divmod(&ym, &f.poly)?;
        if !rem.is_zero() {
            return Err(Error::Internal(format!("{:?} does not divide Y^{m} - 1", f.poly)));
        }
        let ext = ExtensionField::new(field, f.poly.clone())?;
        let inv = ext
            .inv(&ext.from_poly(&cofactor))
            .ok_or_else(|| Error::Internal("repeated factor in Y^m - 1".into()))?;
        let idempotent = ring.rem(&ring.mul(&cofactor, &ext.to_poly(&inv)), &ym)?;
        Ok(Constituent {
            poly: f.poly.clone(),
            field: ext,
            idempotent,
            rep: f.rep(),
        })
    };
    let half = m.is_multiple_of(2).then_some(m as u64 / 2);
    let mut self_reciprocal: Vec<Constituent> =
        fac.self_reciprocal.iter().map(make).collect::<Result<_>>()?;
    self_reciprocal.sort_by_key(|c| (c.rep != 0, Some(c.rep) != half, c.rep));
    let pairs = fac
        .pairs
        .iter()
        .map(|(h, hs)| Ok((make(h)?, make(hs)?)))
        .collect::<Result<_>>()?;
    Ok(CrtDecomposition {
        base: field.clone(),
        m,
        self_reciprocal,
        pairs,
    })
}

/// `c_{ij}` sits at position `i·d + j`; component `j` is
/// `Σ_i c_{ij} Y^i`.
pub fn fold(field: &Field, c: &[Elem], d: usize, m: usize) -> Result<Vec<Poly<Elem>>> {
    if d == 0 || c.len() != d * m {
        return Err(Error::Domain(format!(
            "vector of length {} does not fold into {d} components of length {m}",
            c.len()
        )));
    }
    let ring = PolyRing::new(field);
    Ok((0..d)
        .map(|j| ring.poly((0..m).map(|i| c[i * d + j]).collect()))
        .collect())
}

pub fn unfold(parts: &[Poly<Elem>], m: usize) -> Result<Vec<Elem>> {
    let d = parts.len();
    let mut out = vec![Elem::ZERO; d * m];
    for (j, part) in parts.iter().enumerate() {
        if part.coeffs().len() > m {
            return Err(Error::Domain(format!("component of degree >= {m} is not reduced")));
        }
        for (i, &c) in part.coeffs().iter().enumerate() {
            out[i * d + j] = c;
        }
    }
    Ok(out)
}

/// The cyclic shift seen on the folded side: `(Y·c_{d-1}, c_0, …, c_{d-2})`.
pub fn shift_folded(field: &Field, parts: &[Poly<Elem>], m: usize) -> Result<Vec<Poly<Elem>>> {
    let ring = PolyRing::new(field);
    let Some(last) = parts.last() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::with_capacity(parts.len());
    out.push(ring.rem(&ring.mul(&ring.x(), last), &ring.x_pow_minus_one(m))?);
    out.extend(parts[..parts.len() - 1].iter().cloned());
    Ok(out)
}

/// `a(Y^-1)` for `a` of degree `< m`, written with exponents in `[0, m)`.
fn reverse_exponents(field: &Field, a: &Poly<Elem>, m: usize) -> Poly<Elem> {
    let mut out = vec![Elem::ZERO; m];
    for (i, &c) in a.coeffs().iter().enumerate() {
        out[(m - i % m) % m] = c;
    }
    PolyRing::new(field).poly(out)
}

/// Every subspace of `K^d` as RREF generator rows, zero space first.
pub fn subspaces_over<F: FieldOps>(field: &F, d: usize, guard: u128) -> Result<Vec<Vec<Vec<F::Elem>>>> {
    let size = field.cardinality();
    let mut out = Vec::new();
    let mut budget: u128 = 0;
    for k in 0..=d {
        for pivots in combinations(d, k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pivots = &pivots;
                    (pivots[i] + 1..d).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let count = size.checked_pow(free.len() as u32).ok_or(Error::Overflow)?;
            budget = budget.checked_add(count).ok_or(Error::Overflow)?;
            if budget > guard {
                return Err(Error::GuardExceeded { required: budget, guard });
            }
            for index in 0..count {
                let mut rows = vec![vec![field.zero(); d]; k];
                for (i, &p) in pivots.iter().enumerate() {
                    rows[i][p] = field.one();
                }
                let mut rest = index;
                for &(i, c) in &free {
                    rows[i][c] = field.element(rest % size);
                    rest /= size;
                }
                out.push(rows);
            }
        }
    }
    Ok(out)
}

/// Per-constituent codes of a quasi-cyclic code, in decomposition order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstituentProfile {
    pub d: usize,
    pub self_reciprocal: Vec<Rows>,
    pub pairs: Vec<(Rows, Rows)>,
}

/// Ceiling on the constituent searches and code products below.
pub const CONSTITUENT_GUARD: u128 = 1 << 20;

impl CrtDecomposition {
    pub fn field(&self) -> &Field {
        &self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn self_reciprocal(&self) -> &[Constituent] {
        &self.self_reciprocal
    }

    pub fn pairs(&self) -> &[(Constituent, Constituent)] {
        &self.pairs
    }

    /// Number of leading linear self-reciprocal factors (`Y - 1`, `Y + 1`).
    pub fn linear_count(&self) -> usize {
        self.self_reciprocal.iter().take_while(|c| c.degree() == 1).count()
    }

    /// Product of all factors; equals `Y^m - 1`.
    pub fn product(&self) -> Poly<Elem> {
        let ring = PolyRing::new(&self.base);
        self.self_reciprocal
            .iter()
            .chain(self.pairs.iter().flat_map(|(a, b)| [a, b]))
            .fold(ring.one(), |acc, c| ring.mul(&acc, &c.poly))
    }

    pub fn project(&self, c: &Constituent, a: &Poly<Elem>) -> ExtElem {
        c.field.from_poly(a)
    }

    /// The element of `R` that is `x` in `c` and zero in every other field.
    pub fn lift(&self, c: &Constituent, x: &ExtElem) -> Poly<Elem> {
        let ring = PolyRing::new(&self.base);
        ring.rem(&ring.mul(&c.field.to_poly(x), &c.idempotent), &ring.x_pow_minus_one(self.m))
            .expect("Y^m - 1 is nonzero")
    }

    /// `x(Y) ↦ x(Y^-1)` from `from` into `to`: conjugation when they
    /// coincide, the pairing map between `h` and `h*` otherwise.
    pub fn transfer(&self, from: &Constituent, to: &Constituent, x: &ExtElem) -> ExtElem {
        to.field
            .from_poly(&reverse_exponents(&self.base, &from.field.to_poly(x), self.m))
    }

    pub fn conjugate(&self, c: &Constituent, x: &ExtElem) -> ExtElem {
        self.transfer(c, c, x)
    }

    fn project_rows(&self, c: &Constituent, folded: &[Vec<Poly<Elem>>], d: usize) -> Rows {
        let rows: Rows = folded
            .iter()
            .map(|parts| parts.iter().map(|a| self.project(c, a)).collect())
            .collect();
        if rows.is_empty() {
            return Vec::new();
        }
        let (mut basis, _) = rref(&c.field, &rows);
        basis.retain(|r| r.len() == d);
        basis
    }

    pub fn decompose(&self, code: &LinearCode) -> Result<ConstituentProfile> {
        let n = code.length();
        if !n.is_multiple_of(self.m) {
            return Err(precondition!("length {n} is not a multiple of m={}", self.m));
        }
        let d = n / self.m;
        let folded: Vec<Vec<Poly<Elem>>> = code
            .generator_matrix()
            .iter()
            .map(|row| fold(&self.base, row, d, self.m))
            .collect::<Result<_>>()?;
        Ok(ConstituentProfile {
            d,
            self_reciprocal: self
                .self_reciprocal
                .iter()
                .map(|c| self.project_rows(c, &folded, d))
                .collect(),
            pairs: self
                .pairs
                .iter()
                .map(|(h, hs)| (self.project_rows(h, &folded, d), self.project_rows(hs, &folded, d)))
                .collect(),
        })
    }

    /// `F_q`-generators of the pullback of one constituent code: every row
    /// times `1, z, …, z^(deg-1)`, lifted and unfolded.
    pub fn lift_rows(&self, c: &Constituent, rows: &Rows) -> Result<Vec<Vec<Elem>>> {
        let k = &c.field;
        let z = k.generator();
        let mut out = Vec::new();
        for row in rows {
            let mut scaled = row.clone();
            for _ in 0..k.degree() {
                let parts: Vec<Poly<Elem>> = scaled.iter().map(|x| self.lift(c, x)).collect();
                out.push(unfold(&parts, self.m)?);
                scaled = scaled.iter().map(|x| k.mul(x, &z)).collect();
            }
        }
        Ok(out)
    }

    pub fn reassemble(&self, profile: &ConstituentProfile) -> Result<LinearCode> {
        if profile.self_reciprocal.len() != self.self_reciprocal.len()
            || profile.pairs.len() != self.pairs.len()
        {
            return Err(precondition!("profile does not match the decomposition"));
        }
        let mut rows = Vec::new();
        for (c, code) in self.self_reciprocal.iter().zip(&profile.self_reciprocal) {
            rows.extend(self.lift_rows(c, code)?);
        }
        for ((h, hs), (c1, c2)) in self.pairs.iter().zip(&profile.pairs) {
            rows.extend(self.lift_rows(h, c1)?);
            rows.extend(self.lift_rows(hs, c2)?);
        }
        code_from_rows(&self.base, profile.d * self.m, &rows)
    }

    /// `φ^-1` of a code living in the `i`-th self-reciprocal constituent
    /// alone.
    pub fn pullback_single(&self, i: usize, rows: &Rows, d: usize) -> Result<LinearCode> {
        let c = self.self_reciprocal.get(i).ok_or_else(|| precondition!("no constituent G_{}", i + 1))?;
        code_from_rows(&self.base, d * self.m, &self.lift_rows(c, rows)?)
    }

    /// `φ^-1(C' ⊕ C'')` for the `j`-th reciprocal pair.
    pub fn pullback_pair(&self, j: usize, c1: &Rows, c2: &Rows, d: usize) -> Result<LinearCode> {
        let (h, hs) = self.pairs.get(j).ok_or_else(|| precondition!("no pair H_{}", j + 1))?;
        let mut rows = self.lift_rows(h, c1)?;
        rows.extend(self.lift_rows(hs, c2)?);
        code_from_rows(&self.base, d * self.m, &rows)
    }

    /// Hermitian self-dual codes of length 2 over the `i`-th self-reciprocal
    /// constituent: `⟨(1, a)⟩` with `1 + a·conj(a) = 0`, by exhaustion.
    pub fn hermitian_selfdual_codes(&self, i: usize, d: usize) -> Result<Vec<Rows>> {
        if d != 2 {
            return Err(Error::Unsupported(format!(
                "self-dual constituent enumeration is implemented for d=2, not d={d}"
            )));
        }
        let c = self.self_reciprocal.get(i).ok_or_else(|| precondition!("no constituent G_{}", i + 1))?;
        let k = &c.field;
        let size = k.cardinality();
        if size > CONSTITUENT_GUARD {
            return Err(Error::GuardExceeded { required: size, guard: CONSTITUENT_GUARD });
        }
        let one = k.one();
        Ok((0..size)
            .map(|index| k.element(index))
            .filter(|a| k.is_zero(&k.add(&one, &k.mul(a, &self.conjugate(c, a)))))
            .map(|a| vec![vec![one.clone(), a]])
            .collect())
    }

    /// All `(C', C'')` with `C''` forced by self-duality: `C'` ranges over
    /// every subspace of `H'^d` and `C'' = conj((C')^⊥)`.
    pub fn dual_pairs(&self, j: usize, d: usize, guard: u128) -> Result<Vec<(Rows, Rows)>> {
        let (h, hs) = self.pairs.get(j).ok_or_else(|| precondition!("no pair H_{}", j + 1))?;
        subspaces_over(&h.field, d, guard)?
            .into_iter()
            .map(|c1| {
                let (basis, pivots) = if c1.is_empty() { (Vec::new(), Vec::new()) } else { rref(&h.field, &c1) };
                let dual = null_space(&h.field, &basis, &pivots, d);
                let moved: Rows =
                    dual.iter().map(|row| row.iter().map(|x| self.transfer(h, hs, x)).collect()).collect();
                let c2 = if moved.is_empty() { moved } else { rref(&hs.field, &moved).0 };
                Ok((c1, c2))
            })
            .collect()
    }

    /// Every self-dual quasi-cyclic code of index `d` and co-index `m`,
    /// assembled from all combinations of self-dual constituent choices.
    pub fn selfdual_codes(&self, d: usize, guard: u128) -> Result<Vec<LinearCode>> {
        let mut choices: Vec<Vec<Vec<Vec<Elem>>>> = Vec::new();
        for (i, c) in self.self_reciprocal.iter().enumerate() {
            choices.push(
                self.hermitian_selfdual_codes(i, d)?
                    .iter()
                    .map(|rows| self.lift_rows(c, rows))
                    .collect::<Result<_>>()?,
            );
        }
        for (j, (h, hs)) in self.pairs.iter().enumerate() {
            choices.push(
                self.dual_pairs(j, d, guard)?
                    .iter()
                    .map(|(c1, c2)| {
                        let mut rows = self.lift_rows(h, c1)?;
                        rows.extend(self.lift_rows(hs, c2)?);
                        Ok(rows)
                    })
                    .collect::<Result<_>>()?,
            );
        }
        let total = choices
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
            .ok_or(Error::Overflow)?;
        if total > guard {
            return Err(Error::GuardExceeded { required: total, guard });
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut index = vec![0usize; choices.len()];
        if choices.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        loop {
            let rows: Vec<Vec<Elem>> =
                choices.iter().zip(&index).flat_map(|(c, &k)| c[k].iter().cloned()).collect();
            out.push(code_from_rows(&self.base, d * self.m, &rows)?);
            let mut pos = index.len();
            loop {
                if pos == 0 {
                    out.sort();
                    return Ok(out);
                }
                pos -= 1;
                index[pos] += 1;
                if index[pos] < choices[pos].len() {
                    break;
                }
                index[pos] = 0;
            }
        }
    }
}

fn code_from_rows(field: &Field, n: usize, rows: &[Vec<Elem>]) -> Result<LinearCode> {
    if rows.is_empty() {
        Ok(LinearCode::zero(field, n))
    } else {
        LinearCode::from_generators(field, n, rows)
    }
}

/// `N(d, q)`: the number of subspaces of `F_q^d`, as the Gaussian-binomial
/// sum. Each quotient is checked to be exact.
pub fn n_formula(d: u32, q: u128) -> Result<u128> {
    if q < 2 {
        return Err(precondition!("q={q} is not a field size"));
    }
    let q = BigUint::from(q);
    let qd = q.pow(d);
    let mut total = BigUint::from(1u32);
    for k in 1..=d {
        let qk = q.pow(k);
        let mut num = BigUint::from(1u32);
        let mut den = BigUint::from(1u32);
        for i in 0..k {
            let qi = q.pow(i);
            num *= &qd - &qi;
            den *= &qk - &qi;
        }
        if &num % &den != BigUint::from(0u32) {
            return Err(Error::Internal(format!("Gaussian binomial [{d} {k}] is not integral")));
        }
        total += num / den;
    }
    u128::try_from(&total).map_err(|_| Error::Overflow)
}

fn rho_sum(codes: &[LinearCode], theta: Automorphism) -> u128 {
    codes.iter().map(|c| crate::code::rho(c, theta) as u128).sum()
}

/// `ρ_{G_i}`: the number of Hermitian self-dual length-2 codes over the
/// `i`-th self-reciprocal constituent whose pullback is not
/// `T_θ`-invariant.
pub fn rho_g(decomp: &CrtDecomposition, i: usize, d: usize, theta: Automorphism) -> Result<u128> {
    let codes = decomp
        .hermitian_selfdual_codes(i, d)?
        .iter()
        .map(|rows| decomp.pullback_single(i, rows, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(rho_sum(&codes, theta))
}

/// `ρ_{H'_j, H''_j}` over the dual pairs of the `j`-th reciprocal pair.
pub fn rho_h(decomp: &CrtDecomposition, j: usize, d: usize, theta: Automorphism) -> Result<u128> {
    if d != 2 {
        return Err(Error::Unsupported(format!("ρ over constituent pairs is implemented for d=2, not d={d}")));
    }
    let codes = decomp
        .dual_pairs(j, d, CONSTITUENT_GUARD)?
        .iter()
        .map(|(c1, c2)| decomp.pullback_pair(j, c1, c2, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(rho_sum(&codes, theta))
}

/// The count formulas for self-dual θ-cyclic codes with `gcd(n, |θ|) > 1`.
///
/// `P5` is index 2 with free co-index `m` (length `2m`); the others fix the
/// co-index (2, 3, 3, 4, 4) and leave the index `d` free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Proposition {
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
}

impl Proposition {
    pub const ALL: [Proposition; 6] = [
        Proposition::P5,
        Proposition::P6,
        Proposition::P7,
        Proposition::P8,
        Proposition::P9,
        Proposition::P10,
    ];

    /// `(index d, co-index m)` for the given size parameter.
    pub fn shape(self, size: usize) -> (usize, usize) {
        match self {
            Proposition::P5 => (2, size),
            Proposition::P6 => (size, 2),
            Proposition::P7 | Proposition::P8 => (size, 3),
            Proposition::P9 | Proposition::P10 => (size, 4),
        }
    }

    /// Name of the size parameter: `m` for `P5`, `d` otherwise.
    pub fn size_name(self) -> &'static str {
        if self == Proposition::P5 {
            "m"
        } else {
            "d"
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Proposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Proposition::ALL
            .into_iter()
            .find(|p| format!("{p}").eq_ignore_ascii_case(s))
            .ok_or_else(|| precondition!("unknown case {s:?}; expected one of P5..P10"))
    }
}

/// One hypothesis of a proposition. Enforced ones gate evaluation;
/// the rest are reported only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub enforced: bool,
}

fn minus_one_is_square(field: &Field) -> bool {
    let minus_one = field.neg(&Elem::ONE);
    field.elements().any(|a| field.mul(&a, &a) == minus_one)
}

/// Every hypothesis of `case` for `GF(q)`, size parameter `size` and
/// `θ = Frob^r`.
pub fn hypotheses(field: &Field, case: Proposition, size: usize, r: u32) -> Result<Vec<Hypothesis>> {
    let theta = Automorphism::new(field, r)?;
    let q = field.q() as u64;
    let p = field.p() as u64;
    let e = field.m();
    let (d, m) = case.shape(size);
    let n = d * m;
    let h = |name: &str, holds: bool| Hypothesis { name: name.into(), holds, enforced: true };
    let mut out = Vec::new();
    if size == 0 {
        return Err(precondition!("size parameter {} must be positive", case.size_name()));
    }
    match case {
        Proposition::P5 => {
            let c1 = p == 2;
            let c2 = p % 4 == 1;
            let c3 = p % 4 == 3 && e.is_multiple_of(2);
            out.push(Hypothesis { name: "q is a power of 2".into(), holds: c1, enforced: false });
            out.push(Hypothesis { name: "q = p^b with p ≡ 1 mod 4".into(), holds: c2, enforced: false });
            out.push(Hypothesis { name: "q = p^(2b) with p ≡ 3 mod 4".into(), holds: c3, enforced: false });
            out.push(h("q satisfies one of the three conditions above", c1 || c2 || c3));
            out.push(h("gcd(m, q) = 1", arith::gcd(m as u64, p) == 1));
        }
        Proposition::P6 => out.push(h(
            "q ≡ 1 mod 4 and d even, or q ≡ 3 mod 4 and d ≡ 0 mod 4",
            (q % 4 == 1 && d % 2 == 0) || (q % 4 == 3 && d % 4 == 0),
        )),
        Proposition::P7 => out.push(h(
            "q ≡ 11 mod 12 and d ≡ 0 mod 4, or q ≡ 2 mod 3, q ≢ 11 mod 12 and d even",
            (q % 12 == 11 && d % 4 == 0) || (q % 3 == 2 && q % 12 != 11 && d % 2 == 0),
        )),
        Proposition::P8 => out.push(h(
            "q ≡ 7 mod 12 and d ≡ 0 mod 4, or q ≡ 1 mod 3, q ≢ 7 mod 12 and d even",
            (q % 12 == 7 && d % 4 == 0) || (q % 3 == 1 && q % 12 != 7 && d % 2 == 0),
        )),
        Proposition::P9 => {
            out.push(h("q is odd", p != 2));
            out.push(h("-1 is not a square in F_q", !minus_one_is_square(field)));
            out.push(h("d ≡ 0 mod 4", d % 4 == 0));
        }
        Proposition::P10 => {
            out.push(h("q is odd", p != 2));
            out.push(h("-1 is a square in F_q", minus_one_is_square(field)));
            out.push(h("d is even", d % 2 == 0));
        }
    }
    out.push(Hypothesis {
        name: format!("gcd(n, |θ|) = {d}"),
        holds: arith::gcd(n as u64, theta.order() as u64) == d as u64,
        enforced: false,
    });
    Ok(out)
}

fn check_hypotheses(list: &[Hypothesis], case: Proposition) -> Result<()> {
    let failed: Vec<&str> = list.iter().filter(|h| h.enforced && !h.holds).map(|h| h.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(precondition!("{case} hypothesis failed: {}", failed.join("; ")))
    }
}

/// Where a ρ value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoSource {
    /// Summed over constituent pullbacks.
    Computed,
    /// Passed in by the caller.
    Supplied,
    /// Not computable here and not supplied; taken as 0.
    Default,
}

/// One factor `(base - ρ)^exponent` of a count formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaTerm {
    pub label: String,
    pub base: u128,
    pub rho: u128,
    pub exponent: u32,
    pub rho_source: RhoSource,
}

/// Caller-provided ρ values for the terms that cannot be computed
/// (`d > 2`). `g[i-1]` feeds `ρ_{G_i}`, `h_prime[i-1]` feeds `ρ_{H'_i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RhoInputs {
    pub g: Vec<u128>,
    pub h_prime: Vec<u128>,
    pub pair: Option<u128>,
}

/// `constant · ∏ (base - ρ)^exponent` with the ρ values resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub constant: u128,
    pub terms: Vec<FormulaTerm>,
}

impl Formula {
    fn evaluate(&self, with_rho: bool) -> Result<u128> {
        self.terms.iter().try_fold(self.constant, |acc, t| {
            let rho = if with_rho { t.rho } else { 0 };
            let factor = t.base.checked_sub(rho).ok_or_else(|| {
                precondition!("ρ={} exceeds the factor {} it is subtracted from ({})", rho, t.base, t.label)
            })?;
            acc.checked_mul(arith::checked_pow(factor, t.exponent)?).ok_or(Error::Overflow)
        })
    }

    /// The value with every ρ set to 0.
    pub fn base_count(&self) -> Result<u128> {
        self.evaluate(false)
    }

    pub fn count(&self) -> Result<u128> {
        self.evaluate(true)
    }
}

fn pow_u128(q: u128, e: u32) -> Result<u128> {
    arith::checked_pow(q, e)
}

/// Builds the formula of `case`, computing ρ where the constituents allow
/// it and taking the rest from `rho`.
pub fn proposition_formula(
    field: &Field,
    case: Proposition,
    size: usize,
    r: u32,
    rho: &RhoInputs,
) -> Result<Formula> {
    let list = hypotheses(field, case, size, r)?;
    check_hypotheses(&list, case)?;
    let theta = Automorphism::new(field, r)?;
    let q = field.q() as u128;
    let b: u128 = if field.p() == 2 { 1 } else { 2 };
    let (d, m) = case.shape(size);

    if case == Proposition::P5 {
        let decomp = crt_decompose(field, m)?;
        let constant = match (q % 2 == 1, m % 2 == 0) {
            (true, true) => 4,
            (true, false) => 2,
            _ => 1,
        };
        let mut terms = Vec::new();
        for i in decomp.linear_count()..decomp.self_reciprocal.len() {
            let di = decomp.self_reciprocal[i].degree() as u32 / 2;
            terms.push(FormulaTerm {
                label: format!("G_{}", i + 1),
                base: pow_u128(q, di)? + 1,
                rho: rho_g(&decomp, i, 2, theta)?,
                exponent: 1,
                rho_source: RhoSource::Computed,
            });
        }
        for j in 0..decomp.pairs.len() {
            let e = decomp.pairs[j].0.degree() as u32;
            terms.push(FormulaTerm {
                label: format!("H_{}", j + 1),
                base: n_formula(2, pow_u128(q, e)?)?,
                rho: rho_h(&decomp, j, 2, theta)?,
                exponent: 1,
                rho_source: RhoSource::Computed,
            });
        }
        return Ok(Formula { constant, terms });
    }

    let half = d / 2;
    if rho.g.len() > half.saturating_sub(1) || rho.h_prime.len() > half.saturating_sub(1) {
        return Err(precondition!("more ρ values supplied than the formula has factors (d/2 - 1 = {})", half.saturating_sub(1)));
    }
    let supplied = |list: &[u128], i: usize| match list.get(i - 1) {
        Some(&v) => (v, RhoSource::Supplied),
        None => (0, RhoSource::Default),
    };
    let g_exponent = if matches!(case, Proposition::P6 | Proposition::P9 | Proposition::P10) { 2 } else { 1 };
    let with_h_prime = matches!(case, Proposition::P7 | Proposition::P9);
    let mut terms = Vec::new();
    for i in 1..half {
        let (value, source) = supplied(&rho.g, i);
        terms.push(FormulaTerm {
            label: format!("G_{i}"),
            base: pow_u128(q, i as u32)? + 1,
            rho: value,
            exponent: g_exponent,
            rho_source: source,
        });
        if with_h_prime {
            let (value, source) = supplied(&rho.h_prime, i);
            terms.push(FormulaTerm {
                label: format!("H'_{i}"),
                base: pow_u128(q, 2 * i as u32 + 1)? + 1,
                rho: value,
                exponent: 1,
                rho_source: source,
            });
        }
    }
    if matches!(case, Proposition::P8 | Proposition::P10) {
        let (value, source) = match rho.pair {
            Some(v) => (v, RhoSource::Supplied),
            None if d == 2 => {
                let decomp = crt_decompose(field, m)?;
                if decomp.pairs.len() != 1 {
                    return Err(Error::Internal(format!(
                        "expected one reciprocal pair in Y^{m} - 1, found {}",
                        decomp.pairs.len()
                    )));
                }
                (rho_h(&decomp, 0, d, theta)?, RhoSource::Computed)
            }
            None => (0, RhoSource::Default),
        };
        terms.push(FormulaTerm {
            label: "H',H''".into(),
            base: n_formula(d as u32, q)?,
            rho: value,
            exponent: 1,
            rho_source: source,
        });
    }
    let constant = match case {
        Proposition::P6 | Proposition::P10 => 4,
        Proposition::P7 => b * (q + 1),
        Proposition::P8 => b,
        Proposition::P9 => 4 * (q + 1),
        Proposition::P5 => unreachable!(),
    };
    Ok(Formula { constant, terms })
}

/// Formula value for `case` (see [`proposition_formula`]).
pub fn proposition_count(field: &Field, case: Proposition, size: usize, r: u32, rho: &RhoInputs) -> Result<u128> {
    proposition_formula(field, case, size, r, rho)?.count()
}

/// Counts from walking every self-dual quasi-cyclic code of the shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectCount {
    /// Self-dual quasi-cyclic codes of index `d` (the base count).
    pub selfdual: u128,
    /// Those with `T_θ(C) ⊆ C`.
    pub theta_invariant: u128,
}

pub fn direct_count(decomp: &CrtDecomposition, d: usize, theta: Automorphism, guard: u128) -> Result<DirectCount> {
    let codes = decomp.selfdual_codes(d, guard)?;
    let selfdual = codes.iter().filter(|c| c.is_self_dual()).count() as u128;
    let theta_invariant = codes.iter().filter(|c| c.is_self_dual() && c.is_theta_cyclic(theta)).count() as u128;
    Ok(DirectCount { selfdual, theta_invariant })
}

/// Everything computed for one proposition run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionReport {
    pub case: Proposition,
    pub q: u32,
    /// Index.
    pub d: usize,
    /// Co-index.
    pub m: usize,
    pub n: usize,
    pub r: u32,
    pub theta_order: u32,
    pub hypotheses: Vec<Hypothesis>,
    pub formula: Formula,
    pub base_count: u128,
    pub formula_count: u128,
    /// Only for `d = 2`, where the constituents are enumerable.
    pub direct: Option<DirectCount>,
    pub oracle_count: Option<u128>,
    /// Why a count is missing, when one is.
    pub notes: Vec<String>,
    /// Whether every available independent count equals `formula_count`;
    /// `None` when there is nothing to compare against.
    pub agree: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub rho: RhoInputs,
    /// Skip the skew-divisor oracle when `None`.
    pub oracle_guard: Option<u128>,
    pub direct_guard: u128,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            rho: RhoInputs::default(),
            oracle_guard: Some(oracle::DEFAULT_GUARD),
            direct_guard: CONSTITUENT_GUARD,
        }
    }
}

pub fn proposition_report(
    field: &Field,
    case: Proposition,
    size: usize,
    r: u32,
    options: &ReportOptions,
) -> Result<PropositionReport> {
    let hypotheses = hypotheses(field, case, size, r)?;
    let formula = proposition_formula(field, case, size, r, &options.rho)?;
    let theta = Automorphism::new(field, r)?;
    let (d, m) = case.shape(size);
    let n = d * m;
    let mut notes = Vec::new();

    let direct = if d == 2 {
        match direct_count(&crt_decompose(field, m)?, d, theta, options.direct_guard) {
            Ok(c) => Some(c),
            Err(Error::GuardExceeded { required, guard }) => {
                notes.push(format!("direct count skipped: {required} constituent combinations exceed {guard}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        notes.push(format!("direct count needs d=2, got d={d}"));
        None
    };
    let oracle_count = match options.oracle_guard {
        None => None,
        Some(guard) => match oracle::enumerate_theta_cyclic_selfdual(field, n, r, guard) {
            Ok(codes) => Some(codes.len() as u128),
            Err(Error::GuardExceeded { required, guard }) => {
                notes.push(format!("oracle skipped: {required} candidates exceed guard {guard}"));
                None
            }
            Err(e) => return Err(e),
        },
    };
    for t in formula.terms.iter().filter(|t| t.rho_source == RhoSource::Default) {
        notes.push(format!("ρ for {} not computable at d={d} and not supplied; taken as 0", t.label));
    }
    let formula_count = formula.count()?;
    let others: Vec<u128> = direct.map(|c| c.theta_invariant).into_iter().chain(oracle_count).collect();
    let agree = (!others.is_empty()).then(|| others.iter().all(|&c| c == formula_count));
    Ok(PropositionReport {
        case,
        q: field.q(),
        d,
        m,
        n,
        r,
        theta_order: theta.order(),
        hypotheses,
        base_count: formula.base_count()?,
        formula_count,
        formula,
        direct,
        oracle_count,
        notes,
        agree,
    })
}
