//! Brute-force enumerators used as ground truth for the closed-form counts.
//!
//! None of these routines consult the formulas they are meant to check:
//! θ-cyclic codes come from an exhaustive skew right-divisor search, cyclic
//! codes from the divisor lattice of `x^n - 1`, and subspace counts from
//! closing sets of vectors under linear combination.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::code::{cyclic_code_from_poly, LinearCode};
use crate::field::{Automorphism, Elem, Field, FieldOps};
use crate::poly::{factor_xn_minus_1, PolyRing};
use crate::skew::{SkewPolynomial, SkewRing};
use crate::{Error, Result};

/// Default ceiling on candidate counts for exhaustive searches.
pub const DEFAULT_GUARD: u128 = 1 << 24;

/// Ceiling for the exhaustive subspace count.
pub const SUBSPACE_GUARD: u128 = 1 << 20;

fn check_guard(required: u128, guard: u128) -> Result<()> {
    if required > guard {
        Err(Error::GuardExceeded { required, guard })
    } else {
        Ok(())
    }
}

/// Number of monic polynomials of degree `deg`, i.e. `q^deg`.
pub fn monic_candidates(field: &Field, deg: usize) -> Result<u128> {
    (field.q() as u128)
        .checked_pow(deg as u32)
        .ok_or(Error::Overflow)
}

/// The `index`-th monic skew polynomial of degree `deg` (lower coefficients
/// are the base-`q` digits of `index`).
fn monic_by_index(ring: &SkewRing<'_>, deg: usize, mut index: u128) -> SkewPolynomial {
    let q = ring.field().q() as u128;
    let mut coeffs = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        coeffs.push(Elem((index % q) as u32));
        index /= q;
    }
    coeffs.push(Elem::ONE);
    ring.poly(coeffs)
}

/// Monic right divisors of `x^n - 1` of degree `deg` whose index lies in
/// `range`, in index order.
pub fn right_divisors_in_range(
    ring: &SkewRing<'_>,
    n: usize,
    deg: usize,
    range: Range<u128>,
) -> Result<Vec<SkewPolynomial>> {
    let target = ring.x_pow_minus_one(n);
    let mut out = Vec::new();
    for index in range {
        let g = monic_by_index(ring, deg, index);
        if ring.is_right_divisor(&g, &target)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// Every θ-cyclic code of length `n` with generator degree `deg`
/// (dimension `n - deg`), sorted.
pub fn theta_cyclic_codes(
    field: &Field,
    n: usize,
    theta: Automorphism,
    deg: usize,
    guard: u128,
) -> Result<Vec<LinearCode>> {
    let total = monic_candidates(field, deg)?;
    check_guard(total, guard)?;
    let ring = SkewRing::new(field, theta);
    let mut codes: Vec<LinearCode> = right_divisors_in_range(&ring, n, deg, 0..total)?
        .iter()
        .map(|g| ring.code_of(g, n))
        .collect::<Result<_>>()?;
    codes.sort();
    codes.dedup();
    Ok(codes)
}

/// Self-dual θ-cyclic codes whose degree-`n/2` generator index lies in
/// `range`. Building block for partitioned searches; results are sorted but
/// may repeat codes found in other ranges.
pub fn theta_cyclic_selfdual_in_range(
    field: &Field,
    n: usize,
    theta: Automorphism,
    range: Range<u128>,
) -> Result<Vec<LinearCode>> {
    if !n.is_multiple_of(2) {
        return Ok(Vec::new());
    }
    let ring = SkewRing::new(field, theta);
    let mut out = Vec::new();
    for g in right_divisors_in_range(&ring, n, n / 2, range)? {
        let code = ring.code_of(&g, n)?;
        if code.is_self_dual() {
            out.push(code);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// All Euclidean self-dual θ-cyclic codes of length `n` over `field`, where
/// `θ = Frob^r`, found by testing every monic skew polynomial of degree
/// `n/2` as a right divisor of `x^n - 1`.
pub fn enumerate_theta_cyclic_selfdual(
    field: &Field,
    n: usize,
    r: u32,
    guard: u128,
) -> Result<Vec<LinearCode>> {
    let theta = Automorphism::new(field, r)?;
    if !n.is_multiple_of(2) {
        return Ok(Vec::new());
    }
    let total = monic_candidates(field, n / 2)?;
    check_guard(total, guard)?;
    theta_cyclic_selfdual_in_range(field, n, theta, 0..total)
}

/// Second-tier oracle for tiny lengths: scan every `n/2`-dimensional
/// subspace of `F_q^n` and keep the self-dual, θ-cyclic ones.
pub fn enumerate_theta_cyclic_selfdual_fullscan(
    field: &Field,
    n: usize,
    r: u32,
    guard: u128,
) -> Result<Vec<LinearCode>> {
    let theta = Automorphism::new(field, r)?;
    if !n.is_multiple_of(2) {
        return Ok(Vec::new());
    }
    let mut out: Vec<LinearCode> = subspaces_of_dimension(field, n, n / 2, guard)?
        .into_iter()
        .filter(|c| c.is_self_dual() && c.is_theta_cyclic(theta))
        .collect();
    out.sort();
    Ok(out)
}

/// Cyclic codes `⟨g⟩` for every monic divisor `g` of `x^n - 1`, optionally
/// restricted to one generator degree, walking factor-multiplicity vectors.
pub fn enumerate_cyclic_codes(field: &Field, n: usize, deg: Option<usize>) -> Result<Vec<LinearCode>> {
    let fac = factor_xn_minus_1(field, n as u64)?;
    let ring = PolyRing::new(field);
    let factors = fac.factors();
    let full = fac.multiplicity;
    let mut choice = vec![0u64; factors.len()];
    let mut out = Vec::new();
    loop {
        let degree: u64 = factors.iter().zip(&choice).map(|(f, &c)| f.degree() as u64 * c).sum();
        if deg.is_none_or(|d| d as u64 == degree) {
            let g = factors
                .iter()
                .zip(&choice)
                .fold(ring.one(), |acc, (f, &c)| ring.mul(&acc, &ring.pow(&f.poly, c)));
            out.push(cyclic_code_from_poly(field, &g, n)?);
        }
        let mut i = choice.len();
        loop {
            if i == 0 {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            i -= 1;
            if choice[i] < full {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Every self-dual cyclic code of length `n`: degree-`n/2` divisors of
/// `x^n - 1` whose code is self-dual. Empty for odd `n`.
pub fn enumerate_selfdual_cyclic(field: &Field, n: usize) -> Result<Vec<LinearCode>> {
    if n == 0 || !n.is_multiple_of(2) {
        return Ok(Vec::new());
    }
    Ok(enumerate_cyclic_codes(field, n, Some(n / 2))?
        .into_iter()
        .filter(LinearCode::is_self_dual)
        .collect())
}

/// Every `k`-dimensional subspace of `F_q^n`, one per reduced row-echelon
/// shape and filling of the free entries.
pub fn subspaces_of_dimension(field: &Field, n: usize, k: usize, guard: u128) -> Result<Vec<LinearCode>> {
    if k > n {
        return Ok(Vec::new());
    }
    let q = field.q() as u128;
    let mut out = Vec::new();
    let mut budget: u128 = 0;
    for pivots in combinations(n, k) {
        // free entries: row i, column c > pivots[i], c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let count = q.checked_pow(free.len() as u32).ok_or(Error::Overflow)?;
        budget = budget.checked_add(count).ok_or(Error::Overflow)?;
        check_guard(budget, guard)?;
        for index in 0..count {
            let mut rows = vec![vec![Elem::ZERO; n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = Elem::ONE;
            }
            let mut rest = index;
            for &(i, c) in &free {
                rows[i][c] = Elem((rest % q) as u32);
                rest /= q;
            }
            out.push(LinearCode::from_generators(field, n, &rows)?);
        }
    }
    Ok(out)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Counts all subspaces of `F_q^d` by closing sets of vectors: start from
/// `{0}` and repeatedly adjoin a vector outside the current subspace.
pub fn count_subspaces(field: &Field, d: usize, guard: u128) -> Result<u128> {
    let q = field.q() as u128;
    let points = q.checked_pow(d as u32).ok_or(Error::Overflow)?;
    check_guard(points, guard)?;
    let points = points as u32;
    let decode = |mut v: u32| -> Vec<Elem> {
        (0..d)
            .map(|_| {
                let e = Elem(v % q as u32);
                v /= q as u32;
                e
            })
            .collect()
    };
    let encode = |v: &[Elem]| -> u32 { v.iter().rev().fold(0, |acc, e| acc * q as u32 + e.0) };
    let vectors: Vec<Vec<Elem>> = (0..points).map(decode).collect();

    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let zero = vec![0u32];
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(space) = queue.pop_front() {
        let members: BTreeSet<u32> = space.iter().copied().collect();
        for v in 0..points {
            if members.contains(&v) {
                continue;
            }
            let mut span = BTreeSet::new();
            for &s in &space {
                for c in field.elements() {
                    let w: Vec<Elem> = vectors[s as usize]
                        .iter()
                        .zip(&vectors[v as usize])
                        .map(|(a, b)| field.add(a, &field.mul(&c, b)))
                        .collect();
                    span.insert(encode(&w));
                }
            }
            let span: Vec<u32> = span.into_iter().collect();
            if seen.insert(span.clone()) {
                queue.push_back(span);
            }
        }
    }
    Ok(seen.len() as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic_enum::count_selfdual_cyclic;

    #[test]
    fn length_two_over_f4() {
        let f = Field::with_order(4).unwrap();
        let codes = enumerate_theta_cyclic_selfdual(&f, 2, 1, DEFAULT_GUARD).unwrap();
        assert_eq!(codes.len(), 1);
        assert_eq!(codes[0].generator_matrix(), [vec![Elem::ONE, Elem::ONE]]);
    }

    #[test]
    fn binary_twist_is_trivial() {
        let f = Field::with_order(2).unwrap();
        for n in (2..=16).step_by(2) {
            let skew = enumerate_theta_cyclic_selfdual(&f, n, 1, DEFAULT_GUARD).unwrap();
            let cyclic = enumerate_selfdual_cyclic(&f, n).unwrap();
            assert_eq!(skew, cyclic, "n={n}");
        }
    }

    #[test]
    fn selfdual_cyclic_examples() {
        let f4 = Field::with_order(4).unwrap();
        assert_eq!(enumerate_selfdual_cyclic(&f4, 6).unwrap().len(), 3);
        assert_eq!(enumerate_selfdual_cyclic(&f4, 14).unwrap().len(), 3);
        let f2 = Field::with_order(2).unwrap();
        let codes = enumerate_selfdual_cyclic(&f2, 2).unwrap();
        assert_eq!(codes.len(), 1);
        assert_eq!(codes[0].generator_matrix(), [vec![Elem::ONE, Elem::ONE]]);
        assert!(enumerate_selfdual_cyclic(&f4, 7).unwrap().is_empty());
    }

    #[test]
    fn every_theta_cyclic_result_is_valid() {
        let f = Field::with_order(4).unwrap();
        let theta = Automorphism::new(&f, 1).unwrap();
        for n in [2usize, 4, 6, 8] {
            let codes = enumerate_theta_cyclic_selfdual(&f, n, 1, DEFAULT_GUARD).unwrap();
            for (i, c) in codes.iter().enumerate() {
                assert!(c.is_self_dual() && c.is_theta_cyclic(theta));
                assert!(codes[i + 1..].iter().all(|d| d != c));
            }
        }
    }

    #[test]
    fn fullscan_agrees_with_divisor_search() {
        for q in [2u64, 3, 4, 5, 8, 9] {
            let f = Field::with_order(q).unwrap();
            for r in 1..=f.m() {
                for n in [2usize, 4] {
                    let divisor = enumerate_theta_cyclic_selfdual(&f, n, r, DEFAULT_GUARD).unwrap();
                    let scan = enumerate_theta_cyclic_selfdual_fullscan(&f, n, r, DEFAULT_GUARD).unwrap();
                    assert_eq!(divisor, scan, "q={q} n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn all_theta_cyclic_codes_match_fullscan() {
        let f = Field::with_order(4).unwrap();
        let theta = Automorphism::new(&f, 1).unwrap();
        for n in 1..=4usize {
            let mut via_divisors = Vec::new();
            for deg in 0..=n {
                via_divisors.extend(theta_cyclic_codes(&f, n, theta, deg, DEFAULT_GUARD).unwrap());
            }
            via_divisors.sort();
            let mut via_scan = Vec::new();
            for k in 0..=n {
                via_scan.extend(
                    subspaces_of_dimension(&f, n, k, DEFAULT_GUARD)
                        .unwrap()
                        .into_iter()
                        .filter(|c| c.is_theta_cyclic(theta)),
                );
            }
            via_scan.sort();
            assert_eq!(via_divisors, via_scan, "n={n}");
        }
    }

    #[test]
    fn odd_characteristic_has_no_selfdual_cyclic_codes() {
        for q in [3u64, 5, 9] {
            let f = Field::with_order(q).unwrap();
            for n in 1..=12usize {
                assert!(enumerate_selfdual_cyclic(&f, n).unwrap().is_empty(), "q={q} n={n}");
            }
        }
        let f4 = Field::with_order(4).unwrap();
        for n in (1..=13usize).step_by(2) {
            assert!(enumerate_selfdual_cyclic(&f4, n).unwrap().is_empty());
            assert_eq!(count_selfdual_cyclic(4, n as u64).unwrap(), 0);
        }
    }

    #[test]
    fn subspace_counts() {
        let f2 = Field::with_order(2).unwrap();
        assert_eq!(count_subspaces(&f2, 2, SUBSPACE_GUARD).unwrap(), 5);
        let f4 = Field::with_order(4).unwrap();
        assert_eq!(count_subspaces(&f4, 2, SUBSPACE_GUARD).unwrap(), 7);
        for q in [2u64, 3, 4, 5, 7] {
            let f = Field::with_order(q).unwrap();
            assert_eq!(count_subspaces(&f, 1, SUBSPACE_GUARD).unwrap(), 2);
            assert_eq!(count_subspaces(&f, 0, SUBSPACE_GUARD).unwrap(), 1);
        }
        assert!(matches!(count_subspaces(&f4, 3, 63), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn guard_is_enforced() {
        let f = Field::with_order(4).unwrap();
        assert_eq!(
            enumerate_theta_cyclic_selfdual(&f, 14, 1, 1000),
            Err(Error::GuardExceeded { required: 16384, guard: 1000 })
        );
    }
}
