//! Linear codes as explicit subspaces of `F_q^n`.
//!
//! A [`LinearCode`] always stores the reduced row-echelon basis of its row
//! space, so two codes are equal exactly when their stored matrices are.
//! Invariance under a shift is decided on generator rows only: the shifts
//! are (semi)linear, so the image of the span is the span of the images.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::arith::gcd;
use crate::field::{Automorphism, Elem, Field, FieldOps};
use crate::linalg;
use crate::poly::{Poly, PolyRing};
use crate::{Error, Result};

/// Default ceiling on `q^k` for weight enumeration.
pub const DEFAULT_WEIGHT_GUARD: u128 = 1 << 24;

#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Field,
    n: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows && self.field == other.field
    }
}

impl Eq for LinearCode {}

impl PartialOrd for LinearCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders codes over the same field by length, then dimension, then basis.
impl Ord for LinearCode {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.rows.len(), &self.rows).cmp(&(other.n, other.rows.len(), &other.rows))
    }
}

impl LinearCode {
    /// The span of `generators`, each of length `n`.
    pub fn from_generators(field: &Field, n: usize, generators: &[Vec<Elem>]) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != n) {
            return Err(Error::Domain(format!(
                "generator of length {} in a length-{n} code",
                bad.len()
            )));
        }
        if let Some(bad) = generators.iter().flatten().find(|e| e.0 >= field.q()) {
            return Err(Error::Domain(format!("{} is not an element of {field:?}", bad.0)));
        }
        let (rows, pivots) = linalg::rref(field, generators);
        Ok(LinearCode {
            field: field.clone(),
            n,
            rows,
            pivots,
        })
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        LinearCode {
            field: field.clone(),
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, n: usize) -> Self {
        let rows: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let mut r = vec![Elem::ZERO; n];
                r[i] = Elem::ONE;
                r
            })
            .collect();
        LinearCode::from_generators(field, n, &rows).expect("well-formed identity")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// The canonical (RREF) generator matrix.
    pub fn generator_matrix(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.n
            && linalg::reduce(&self.field, &self.rows, &self.pivots, v)
                .iter()
                .all(|&c| c == Elem::ZERO)
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn dual(&self) -> LinearCode {
        let rows = linalg::null_space(&self.field, &self.rows, &self.pivots, self.n);
        LinearCode::from_generators(&self.field, self.n, &rows).expect("null space rows have length n")
    }

    /// Every pair of generator rows (including a row with itself) is
    /// orthogonal.
    pub fn is_self_orthogonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, a)| {
            self.rows[i..]
                .iter()
                .all(|b| linalg::dot(&self.field, a, b) == Elem::ZERO)
        })
    }

    pub fn is_self_dual(&self) -> bool {
        self.n.is_multiple_of(2) && 2 * self.dimension() == self.n && self.is_self_orthogonal()
    }

    /// The code `{shift(c) : c ∈ C}`.
    pub fn image(&self, shift: Shift) -> LinearCode {
        let rows: Vec<_> = self.rows.iter().map(|r| apply_shift(&self.field, r, shift)).collect();
        LinearCode::from_generators(&self.field, self.n, &rows).expect("shifts preserve length")
    }

    pub fn is_invariant(&self, shift: Shift) -> bool {
        self.rows.iter().all(|r| self.contains(&apply_shift(&self.field, r, shift)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.is_invariant(Shift::Cyclic)
    }

    pub fn is_quasi_cyclic(&self, index: usize) -> bool {
        self.is_invariant(Shift::Power(index))
    }

    pub fn is_theta_cyclic(&self, theta: Automorphism) -> bool {
        self.is_invariant(Shift::Twisted(theta))
    }

    /// Every codeword, in a fixed order. Only sensible for tiny codes.
    pub fn codewords(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![vec![Elem::ZERO; self.n]];
        for row in &self.rows {
            let mut next = Vec::with_capacity(out.len() * self.field.q() as usize);
            for c in self.field.elements() {
                for w in &out {
                    next.push(
                        w.iter()
                            .zip(row)
                            .map(|(a, b)| self.field.add(a, &self.field.mul(&c, b)))
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out
    }
}

/// The coordinate shifts acting on `F_q^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    /// `T(c) = (c_{n-1}, c_0, …, c_{n-2})`.
    Cyclic,
    /// `T^l(c) = (c_{n-l}, …, c_{n-l-1})`.
    Power(usize),
    /// `T_θ(c) = (θ(c_{n-1}), θ(c_0), …, θ(c_{n-2}))`.
    Twisted(Automorphism),
}

pub fn apply_shift(field: &Field, c: &[Elem], shift: Shift) -> Vec<Elem> {
    let n = c.len();
    if n == 0 {
        return Vec::new();
    }
    let rotate = |l: usize| -> Vec<Elem> { (0..n).map(|i| c[(i + n - l % n) % n]).collect() };
    match shift {
        Shift::Cyclic => rotate(1),
        Shift::Power(l) => rotate(l),
        Shift::Twisted(theta) => rotate(1).into_iter().map(|a| theta.apply(field, a)).collect(),
    }
}

/// Applies `shift` `times` times.
pub fn apply_shift_times(field: &Field, c: &[Elem], shift: Shift, times: usize) -> Vec<Elem> {
    (0..times).fold(c.to_vec(), |v, _| apply_shift(field, &v, shift))
}

/// `[c, c'] = Σ c_i c'_i`.
pub fn euclidean_product(field: &Field, c: &[Elem], c2: &[Elem]) -> Result<Elem> {
    if c.len() != c2.len() {
        return Err(Error::Domain(format!(
            "vectors of lengths {} and {}",
            c.len(),
            c2.len()
        )));
    }
    Ok(linalg::dot(field, c, c2))
}

/// Closure of a code under the three shift families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_cyclic: bool,
    pub is_quasi_cyclic: bool,
    pub is_theta_cyclic: bool,
}

pub fn classify(code: &LinearCode, index: usize, theta: Automorphism) -> Classification {
    Classification {
        is_cyclic: code.is_cyclic(),
        is_quasi_cyclic: code.is_quasi_cyclic(index),
        is_theta_cyclic: code.is_theta_cyclic(theta),
    }
}

/// 0 if `T_θ(C) ⊆ C`, 1 otherwise.
pub fn rho(code: &LinearCode, theta: Automorphism) -> u8 {
    if code.is_theta_cyclic(theta) {
        0
    } else {
        1
    }
}

/// `A_i` = number of codewords of Hamming weight `i`, for `i = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub counts: Vec<u128>,
}

impl WeightEnumerator {
    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }
}

/// Exact weight census by walking all `q^k` codewords.
pub fn weight_enumerator(code: &LinearCode, guard: u128) -> Result<WeightEnumerator> {
    let q = code.field.q() as u128;
    let size = q
        .checked_pow(code.dimension() as u32)
        .ok_or(Error::Overflow)?;
    if size > guard {
        return Err(Error::GuardExceeded {
            required: size,
            guard,
        });
    }
    let field = &code.field;
    // multiples[i][c] = c·row_i
    let multiples: Vec<Vec<Vec<Elem>>> = code
        .rows
        .iter()
        .map(|row| {
            field
                .elements()
                .map(|c| row.iter().map(|x| field.mul(&c, x)).collect())
                .collect()
        })
        .collect();
    let mut counts = vec![0u128; code.n + 1];
    let mut stack: Vec<Vec<Elem>> = vec![vec![Elem::ZERO; code.n]];
    walk(field, &multiples, 0, &mut stack, &mut counts);
    Ok(WeightEnumerator { counts })
}

fn walk(
    field: &Field,
    multiples: &[Vec<Vec<Elem>>],
    level: usize,
    stack: &mut Vec<Vec<Elem>>,
    counts: &mut [u128],
) {
    if level == multiples.len() {
        let current = stack.last().unwrap();
        counts[current.iter().filter(|&&c| c != Elem::ZERO).count()] += 1;
        return;
    }
    for m in &multiples[level] {
        let next = stack
            .last()
            .unwrap()
            .iter()
            .zip(m)
            .map(|(a, b)| field.add(a, b))
            .collect();
        stack.push(next);
        walk(field, multiples, level + 1, stack, counts);
        stack.pop();
    }
}

/// The cyclic code `⟨g⟩` of length `n`: span of `g, xg, …, x^(n-deg g-1) g`.
pub fn cyclic_code_from_poly(field: &Field, g: &Poly<Elem>, n: usize) -> Result<LinearCode> {
    let ring = PolyRing::new(field);
    let deg = g
        .degree()
        .ok_or_else(|| Error::Domain("generator polynomial is zero".into()))?;
    if !ring.divides(g, &ring.x_pow_minus_one(n))? {
        return Err(Error::Domain(format!("generator does not divide x^{n} - 1")));
    }
    let rows: Vec<Vec<Elem>> = (0..n - deg)
        .map(|shift| {
            let mut row = vec![Elem::ZERO; n];
            row[shift..shift + deg + 1].copy_from_slice(g.coeffs());
            row
        })
        .collect();
    LinearCode::from_generators(field, n, &rows)
}

/// `(s, p1)` with `p1·|θ| ≡ s (mod n)` and `s = gcd(n, |θ|)`, so that
/// `T_θ^(p1·|θ|) = T^s`.
pub fn shift_identity_exponent(n: usize, theta_order: u32) -> (usize, u64) {
    let s = gcd(n as u64, theta_order as u64);
    let t = theta_order as u64;
    let p1 = (1..=n as u64)
        .find(|&k| (k * t) % n as u64 == s % n as u64)
        .expect("s is in the subgroup generated by |θ| mod n");
    (s as usize, p1)
}
