//! Cyclotomic cosets and the arithmetic functions of the self-dual cyclic
//! count: Euler's φ, multiplicative orders, the good/bad indicator χ and
//! the coset relabelling induced by `a ↦ 2^r a`.

use alloc::vec::Vec;

use crate::arith::{gcd, pow_mod};
use crate::error::precondition;
use crate::Result;

/// `{s·q^k mod ñ : k >= 0}` with its smallest element as representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclotomicCoset {
    rep: u64,
    elements: Vec<u64>,
    modulus: u64,
    base: u64,
}

impl CyclotomicCoset {
    /// The coset of `q` modulo `ñ` containing `a` (reduced mod `ñ`).
    pub fn containing(a: u64, modulus: u64, base: u64) -> Result<Self> {
        if modulus == 0 || gcd(modulus, base) != 1 {
            return Err(precondition!("cosets of {base} modulo {modulus} need gcd = 1"));
        }
        let start = a % modulus;
        let mut elements = Vec::new();
        let mut x = start;
        loop {
            elements.push(x);
            x = ((x as u128 * base as u128) % modulus as u128) as u64;
            if x == start {
                break;
            }
        }
        elements.sort_unstable();
        Ok(CyclotomicCoset {
            rep: elements[0],
            elements,
            modulus,
            base,
        })
    }

    pub fn rep(&self) -> u64 {
        self.rep
    }

    /// Sorted residues.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn contains(&self, a: u64) -> bool {
        self.elements.binary_search(&(a % self.modulus)).is_ok()
    }

    /// The coset of `-s`.
    pub fn negation(&self) -> Self {
        CyclotomicCoset::containing(self.modulus - self.rep, self.modulus, self.base)
            .expect("same modulus and base")
    }
}

/// The `q`-cyclotomic cosets modulo `ñ`, ordered by representative. They
/// partition `{0, …, ñ-1}`.
pub fn cyclotomic_cosets(n_tilde: u64, q: u64) -> Result<Vec<CyclotomicCoset>> {
    if n_tilde == 0 || gcd(n_tilde, q) != 1 {
        return Err(precondition!("cosets of {q} modulo {n_tilde} need gcd(ñ, q) = 1"));
    }
    let mut seen = alloc::vec![false; n_tilde as usize];
    let mut out = Vec::new();
    for a in 0..n_tilde {
        if seen[a as usize] {
            continue;
        }
        let coset = CyclotomicCoset::containing(a, n_tilde, q)?;
        for &x in coset.elements() {
            seen[x as usize] = true;
        }
        out.push(coset);
    }
    Ok(out)
}

pub fn euler_phi(j: u64) -> u64 {
    (1..=j).filter(|&k| gcd(k, j) == 1).count() as u64
}

/// Smallest `e >= 1` with `j | i^e - 1`.
pub fn multiplicative_order(j: u64, i: u64) -> Result<u64> {
    if j == 0 || gcd(i, j) != 1 {
        return Err(precondition!("ord_{j}({i}) needs gcd({i}, {j}) = 1"));
    }
    if j == 1 {
        return Ok(1);
    }
    let base = i % j;
    let mut x = base;
    let mut e = 1;
    while x != 1 {
        x = ((x as u128 * base as u128) % j as u128) as u64;
        e += 1;
    }
    Ok(e)
}

/// Whether `j | (2^m)^k + 1` for some `k >= 0`. The powers of `2^m` mod `j`
/// repeat with period `ord_j(2^m)`, so only `k < ord_j(2^m)` is searched.
pub fn is_good_pair(j: u64, m: u32) -> Result<bool> {
    if j.is_multiple_of(2) {
        return Err(precondition!("χ(j, m) is defined for odd j, got j={j}"));
    }
    let q = pow_mod(2, m as u64, j);
    let period = multiplicative_order(j, q)?;
    let mut x = 1 % j;
    for _ in 0..period {
        if (x + 1).is_multiple_of(j) {
            return Ok(true);
        }
        x = ((x as u128 * q as u128) % j as u128) as u64;
    }
    Ok(false)
}

/// `χ(j, m)`: 0 for a good pair, 1 for a bad one.
pub fn chi(j: u64, m: u32) -> Result<u8> {
    Ok(if is_good_pair(j, m)? { 0 } else { 1 })
}

/// `λ_r(a) = 2^r·a mod ñ`.
pub fn lambda_map(a: u64, n_tilde: u64, r: u32) -> u64 {
    scale_residue(a, pow_mod(2, r as u64, n_tilde), n_tilde)
}

/// `factor·a mod ñ`.
pub fn scale_residue(a: u64, factor: u64, n_tilde: u64) -> u64 {
    ((a as u128 * factor as u128) % n_tilde as u128) as u64
}

/// The coset containing `λ_r(s)` for the representative `s`. Well defined
/// because multiplication by `2^r` commutes with multiplication by `q`.
pub fn induced_lambda(coset: &CyclotomicCoset, r: u32) -> CyclotomicCoset {
    let image = lambda_map(coset.rep(), coset.modulus(), r);
    CyclotomicCoset::containing(image, coset.modulus(), coset.base()).expect("same parameters")
}

/// The coset containing `p^r·s`, the relabelling induced by the Frobenius
/// power `β ↦ β^(p^r)` in characteristic `p`.
pub fn induced_frobenius(coset: &CyclotomicCoset, p: u64, r: u32) -> CyclotomicCoset {
    let factor = pow_mod(p, r as u64, coset.modulus());
    let image = scale_residue(coset.rep(), factor, coset.modulus());
    CyclotomicCoset::containing(image, coset.modulus(), coset.base()).expect("same parameters")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn elements(cosets: &[CyclotomicCoset]) -> Vec<Vec<u64>> {
        cosets.iter().map(|c| c.elements().to_vec()).collect()
    }

    #[test]
    fn example_cosets() {
        assert_eq!(elements(&cyclotomic_cosets(3, 4).unwrap()), [vec![0], vec![1], vec![2]]);
        assert_eq!(
            elements(&cyclotomic_cosets(7, 4).unwrap()),
            [vec![0], vec![1, 2, 4], vec![3, 5, 6]]
        );
        assert_eq!(elements(&cyclotomic_cosets(1, 9).unwrap()), [vec![0]]);
        assert!(cyclotomic_cosets(6, 4).is_err());
    }

    #[test]
    fn phi_and_orders() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(3), 2);
        // oracle: count coprimes by hand, {1,...,6}
        assert_eq!(euler_phi(7), 6);
        assert_eq!(multiplicative_order(3, 4).unwrap(), 1);
        assert_eq!(multiplicative_order(7, 4).unwrap(), 3);
        assert_eq!(multiplicative_order(1, 5).unwrap(), 1);
        assert!(multiplicative_order(6, 4).is_err());
    }

    #[test]
    fn chi_values() {
        for m in 1..6 {
            assert_eq!(chi(1, m).unwrap(), 0);
        }
        // 4^k + 1 ≡ 2 mod 3
        assert_eq!(chi(3, 2).unwrap(), 1);
        // 4^k + 1 mod 7 ∈ {2, 5, 3}
        assert_eq!(chi(7, 2).unwrap(), 1);
        // 2 + 1 = 3
        assert_eq!(chi(3, 1).unwrap(), 0);
        assert!(chi(4, 1).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_map(1, 3, 1), 2);
        assert_eq!(lambda_map(0, 7, 1), 0);
        assert_eq!(lambda_map(1, 7, 1), 2);
        let c3 = cyclotomic_cosets(3, 4).unwrap();
        let images: Vec<u64> = c3.iter().map(|c| induced_lambda(c, 1).rep()).collect();
        assert_eq!(images, [0, 2, 1]);
        let c7 = cyclotomic_cosets(7, 4).unwrap();
        assert!(c7.iter().all(|c| induced_lambda(c, 1) == *c));
        assert!(c3.iter().all(|c| induced_lambda(c, 2) == *c));
    }

    #[test]
    fn coset_sizes_match_orders() {
        for q in [2u64, 4, 8, 16, 3, 9, 5] {
            for n in (1..=63u64).filter(|&n| gcd(n, q) == 1) {
                let cosets = cyclotomic_cosets(n, q).unwrap();
                assert_eq!(cosets.iter().map(|c| c.len() as u64).sum::<u64>(), n);
                for c in &cosets {
                    let s = c.rep();
                    let ord = multiplicative_order(n / gcd(s, n), q).unwrap();
                    assert_eq!(c.len() as u64, ord);
                    for &x in c.elements() {
                        assert!(c.contains(x * q % n));
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_permutes_cosets_with_period() {
        for m in 1..=4u32 {
            let q = 1u64 << m;
            for n in (1..=63u64).step_by(2) {
                let cosets = cyclotomic_cosets(n, q).unwrap();
                for r in 1..=m {
                    let period = m / gcd(m as u64, r as u64) as u32;
                    let mut images: Vec<_> = cosets.iter().map(|c| induced_lambda(c, r)).collect();
                    images.sort();
                    assert_eq!(images, cosets);
                    for c in &cosets {
                        let mut x = c.clone();
                        for _ in 0..period {
                            x = induced_lambda(&x, r);
                        }
                        assert_eq!(&x, c);
                    }
                }
            }
        }
    }

    #[test]
    fn good_pairs_are_negation_closed() {
        for m in 1..=4u32 {
            for j in (1..=63u64).step_by(2) {
                let coset = CyclotomicCoset::containing(1, j, 1 << m).unwrap();
                let closed = coset.contains(j - 1) || j == 1;
                assert_eq!(chi(j, m).unwrap() == 0, closed, "j={j} m={m}");
            }
        }
    }
}
