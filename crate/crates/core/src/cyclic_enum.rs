//! Counting and constructing Euclidean self-dual cyclic codes over
//! `GF(2^m)`, and the θ-cyclic count obtained by discarding the generator
//! selections that the coset relabelling `Λ_r` moves.
//!
//! A self-dual cyclic code of length `n = 2^v ñ` is `⟨g⟩` with
//! `g = ∏ f_i^(2^(v-1)) ∏ h_j^(b_j) (h_j*)^(2^v - b_j)`: each self-reciprocal
//! factor appears with half the full multiplicity and each reciprocal pair
//! splits the full multiplicity `2^v` between its two members.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::arith::{self, divisors, prime_power};
use crate::cosets::{chi, euler_phi, induced_lambda, multiplicative_order};
use crate::field::{Elem, Field};
use crate::poly::{factor_xn_minus_1, FactorizationOfXnMinus1, Poly, PolyRing};
use crate::{Error, Result};

/// Self-dual cyclic codes of length `n` over `GF(q)` exist iff `q` is a power
/// of two and `n` is even.
pub fn selfdual_cyclic_exists(q: u64, n: u64) -> bool {
    matches!(prime_power(q), Some((2, _))) && n > 0 && n.is_multiple_of(2)
}

/// The exponent `½ Σ_{j | ñ} χ(j, m) φ(j) / ord_j(2^m)`.
pub fn selfdual_cyclic_exponent(m: u32, n: u64) -> Result<u64> {
    let (_, n_tilde) = arith::split_power(n, 2);
    let q = 1u64
        .checked_shl(m)
        .filter(|_| m < 64)
        .ok_or(Error::Overflow)?;
    let mut twice = 0u64;
    for j in divisors(n_tilde) {
        if chi(j, m)? == 1 {
            let phi = euler_phi(j);
            let ord = multiplicative_order(j, q)?;
            if !phi.is_multiple_of(ord) {
                return Err(Error::Internal(format!("ord_{j}(2^{m}) does not divide φ({j})")));
            }
            twice += phi / ord;
        }
    }
    if !twice.is_multiple_of(2) {
        return Err(Error::Internal(format!(
            "odd number {twice} of non-self-reciprocal cosets for n={n}, m={m}"
        )));
    }
    Ok(twice / 2)
}

/// `(1 + 2^v(n))^(½ Σ_{j | ñ} χ(j, m) φ(j) / ord_j(2^m))` for `q = 2^m`.
///
/// Returns 0 when no self-dual cyclic code exists (`q` odd-characteristic or
/// `n` odd); callers decide whether to warn.
pub fn count_selfdual_cyclic(q: u64, n: u64) -> Result<u128> {
    if !selfdual_cyclic_exists(q, n) {
        return Ok(0);
    }
    let (_, m) = prime_power(q).expect("checked above");
    let (v, _) = arith::split_power(n, 2);
    let exponent = selfdual_cyclic_exponent(m, n)?;
    let base = 1u128
        .checked_shl(v)
        .filter(|_| v < 127)
        .ok_or(Error::Overflow)?
        + 1;
    arith::checked_pow(base, u32::try_from(exponent).map_err(|_| Error::Overflow)?)
}

/// One element of the selection set: a multiplicity for every irreducible
/// factor of `x^ñ - 1`, keyed by coset representative.
#[derive(Clone, Debug)]
pub struct GeneratorSelection {
    base: Arc<FactorizationOfXnMinus1>,
    multiplicities: BTreeMap<u64, u64>,
}

impl PartialEq for GeneratorSelection {
    fn eq(&self, other: &Self) -> bool {
        self.multiplicities == other.multiplicities
            && self.base.n == other.base.n
            && self.base.field == other.base.field
    }
}

impl Eq for GeneratorSelection {}

impl GeneratorSelection {
    pub fn factorization(&self) -> &FactorizationOfXnMinus1 {
        &self.base
    }

    /// Coset representative → multiplicity, sorted by representative.
    pub fn multiplicities(&self) -> &BTreeMap<u64, u64> {
        &self.multiplicities
    }

    pub fn multiplicity(&self, rep: u64) -> u64 {
        self.multiplicities.get(&rep).copied().unwrap_or(0)
    }

    /// The image under `Λ_r`: the multiplicity of `C_s` moves to the coset
    /// containing `2^r s`.
    pub fn relabel(&self, r: u32) -> GeneratorSelection {
        let mut moved = BTreeMap::new();
        for factor in self.base.factors() {
            let image = induced_lambda(&factor.coset, r).rep();
            moved.insert(image, self.multiplicity(factor.rep()));
        }
        GeneratorSelection {
            base: self.base.clone(),
            multiplicities: moved,
        }
    }

    pub fn is_fixed_by(&self, r: u32) -> bool {
        self.relabel(r) == *self
    }

    /// `Σ mult·deg`, the degree of the generator.
    pub fn generator_degree(&self) -> u64 {
        self.base
            .factors()
            .iter()
            .map(|f| f.degree() as u64 * self.multiplicity(f.rep()))
            .sum()
    }
}

/// Every generator selection of a self-dual cyclic code of length `n` over
/// `field`. Empty when none exist.
pub fn build_selection_set(field: &Field, n: u64) -> Result<Vec<GeneratorSelection>> {
    if !selfdual_cyclic_exists(field.q() as u64, n) {
        return Ok(Vec::new());
    }
    let fac = Arc::new(factor_xn_minus_1(field, n)?);
    let full = fac.multiplicity;
    let half = full / 2;
    let mut fixed = BTreeMap::new();
    for f in &fac.self_reciprocal {
        fixed.insert(f.rep(), half);
    }
    // product space over b_j ∈ [0, 2^v] for each pair, first pair slowest
    let mut out = Vec::new();
    let mut choice = alloc::vec![0u64; fac.pairs.len()];
    loop {
        let mut mults = fixed.clone();
        for ((h, hs), &b) in fac.pairs.iter().zip(&choice) {
            mults.insert(h.rep(), full - b);
            mults.insert(hs.rep(), b);
        }
        out.push(GeneratorSelection {
            base: fac.clone(),
            multiplicities: mults,
        });
        let mut i = choice.len();
        loop {
            if i == 0 {
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

/// Number of selections moved by `Λ_r`.
pub fn lambda_bar(selections: &[GeneratorSelection], r: u32) -> u128 {
    selections.iter().filter(|s| !s.is_fixed_by(r)).count() as u128
}

/// `count_selfdual_cyclic(q, n) - Λ̄_r`.
pub fn count_selfdual_theta_cyclic(field: &Field, n: u64, r: u32) -> Result<u128> {
    if r == 0 || r > field.m() {
        return Err(Error::Precondition(format!(
            "Frobenius exponent r={r} must lie in [1, {}]",
            field.m()
        )));
    }
    let total = count_selfdual_cyclic(field.q() as u64, n)?;
    let selections = build_selection_set(field, n)?;
    total.checked_sub(lambda_bar(&selections, r)).ok_or_else(|| {
        Error::Internal(format!("Λ̄_{r} exceeds the self-dual cyclic count for n={n}"))
    })
}

/// `∏ factor^mult`, the monic generator encoded by a selection.
pub fn selection_to_generator(sel: &GeneratorSelection) -> Poly<Elem> {
    let field = &sel.base.field;
    let ring = PolyRing::new(field);
    sel.base.factors().into_iter().fold(ring.one(), |acc, f| {
        ring.mul(&acc, &ring.pow(&f.poly, sel.multiplicity(f.rep())))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::cyclic_code_from_poly;
    use crate::field::Automorphism;
    use crate::poly::map_automorphism_over_poly;
    use alloc::vec;

    fn f4() -> Field {
        Field::with_order(4).unwrap()
    }

    #[test]
    fn existence() {
        assert!(selfdual_cyclic_exists(4, 6));
        assert!(!selfdual_cyclic_exists(4, 7));
        assert!(!selfdual_cyclic_exists(9, 6));
        assert!(!selfdual_cyclic_exists(6, 6));
    }

    #[test]
    fn example_counts() {
        assert_eq!(count_selfdual_cyclic(4, 6).unwrap(), 3);
        assert_eq!(count_selfdual_cyclic(4, 14).unwrap(), 3);
        assert_eq!(count_selfdual_cyclic(4, 2).unwrap(), 1);
        assert_eq!(count_selfdual_cyclic(4, 7).unwrap(), 0);
        assert_eq!(count_selfdual_cyclic(9, 6).unwrap(), 0);
    }

    #[test]
    fn example_one_selection_set() {
        let f = f4();
        let a = build_selection_set(&f, 6).unwrap();
        let maps: Vec<Vec<(u64, u64)>> =
            a.iter().map(|s| s.multiplicities().iter().map(|(&k, &v)| (k, v)).collect()).collect();
        assert_eq!(
            maps,
            [
                vec![(0, 1), (1, 2), (2, 0)],
                vec![(0, 1), (1, 1), (2, 1)],
                vec![(0, 1), (1, 0), (2, 2)],
            ]
        );
        assert_eq!(lambda_bar(&a, 1), 2);
        assert_eq!(lambda_bar(&a, 2), 0);
        assert_eq!(count_selfdual_theta_cyclic(&f, 6, 1).unwrap(), 1);
        assert_eq!(count_selfdual_theta_cyclic(&f, 6, 2).unwrap(), 3);
    }

    #[test]
    fn example_two_selection_set() {
        let f = f4();
        let a = build_selection_set(&f, 14).unwrap();
        assert_eq!(a.len(), 3);
        assert!(a.iter().all(|s| s.multiplicity(0) == 1));
        assert!(a.iter().all(|s| s.multiplicity(1) + s.multiplicity(3) == 2));
        assert_eq!(lambda_bar(&a, 1), 0);
        assert_eq!(count_selfdual_theta_cyclic(&f, 14, 1).unwrap(), 3);
    }

    #[test]
    fn trivial_length_two() {
        let f = f4();
        let a = build_selection_set(&f, 2).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].multiplicities().iter().collect::<Vec<_>>(), [(&0, &1)]);
        let ring = PolyRing::new(&f);
        assert_eq!(selection_to_generator(&a[0]), ring.linear(&Elem::ONE));
        assert!(build_selection_set(&f, 5).unwrap().is_empty());
    }

    #[test]
    fn generators_for_example_one() {
        let f = f4();
        let ring = PolyRing::new(&f);
        let a = build_selection_set(&f, 6).unwrap();
        let balanced = a.iter().find(|s| s.multiplicity(1) == 1).unwrap();
        assert_eq!(selection_to_generator(balanced), ring.x_pow_minus_one(3));
        assert!(balanced.is_fixed_by(1));
        let lopsided = a.iter().find(|s| s.multiplicity(1) == 2).unwrap();
        let alpha_root = a[0].factorization().factor_by_rep(1).unwrap().poly.clone();
        let expect = ring.mul(&ring.linear(&Elem::ONE), &ring.pow(&alpha_root, 2));
        assert_eq!(selection_to_generator(lopsided), expect);
    }

    #[test]
    fn selection_invariants_hold() {
        for q in [2u64, 4, 8] {
            let f = Field::with_order(q).unwrap();
            for n in (2..=24).step_by(2) {
                let a = build_selection_set(&f, n).unwrap();
                assert_eq!(a.len() as u128, count_selfdual_cyclic(q, n).unwrap(), "q={q} n={n}");
                for s in &a {
                    assert_eq!(s.generator_degree(), n / 2);
                    let fac = s.factorization();
                    for sr in &fac.self_reciprocal {
                        assert_eq!(2 * s.multiplicity(sr.rep()), fac.multiplicity);
                    }
                    for (h, hs) in &fac.pairs {
                        assert_eq!(s.multiplicity(h.rep()) + s.multiplicity(hs.rep()), fac.multiplicity);
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_selections_match_theta_invariant_generators() {
        for q in [4u64, 8] {
            let f = Field::with_order(q).unwrap();
            for n in (2..=18).step_by(2) {
                let a = build_selection_set(&f, n).unwrap();
                for r in 1..=f.m() {
                    let theta = Automorphism::new(&f, r).unwrap();
                    for s in &a {
                        let g = selection_to_generator(s);
                        let code = cyclic_code_from_poly(&f, &g, n as usize).unwrap();
                        assert!(code.is_self_dual());
                        assert!(code.is_cyclic());
                        let tg = map_automorphism_over_poly(&f, &theta, &g);
                        let image = cyclic_code_from_poly(&f, &tg, n as usize).unwrap();
                        assert_eq!(s.is_fixed_by(r), image == code, "q={q} n={n} r={r}");
                        assert_eq!(s.is_fixed_by(r), tg == g);
                    }
                    let fixed = a.iter().filter(|s| s.is_fixed_by(r)).count() as u128;
                    assert_eq!(count_selfdual_theta_cyclic(&f, n, r).unwrap(), fixed);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_exponent() {
        assert!(count_selfdual_theta_cyclic(&f4(), 6, 3).is_err());
        assert!(count_selfdual_theta_cyclic(&f4(), 6, 0).is_err());
    }
}
