//! Row reduction over any [`FieldOps`] field.

use alloc::vec::Vec;

use crate::field::FieldOps;

/// Reduced row-echelon form with zero rows dropped, plus pivot columns.
///
/// Pivots are normalized to one, so the result is the unique canonical basis
/// of the row space.
pub fn rref<F: FieldOps>(field: &F, rows: &[Vec<F::Elem>]) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(found) = (row..m.len()).find(|&i| !field.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(row, found);
        let inv = field.inv(&m[row][col]).expect("nonzero pivot");
        for c in m[row].iter_mut() {
            *c = field.mul(c, &inv);
        }
        for i in 0..m.len() {
            if i == row || field.is_zero(&m[i][col]) {
                continue;
            }
            let factor = m[i][col].clone();
            for c in 0..ncols {
                let sub = field.mul(&factor, &m[row][c]);
                m[i][c] = field.sub(&m[i][c], &sub);
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` lies in the
/// row space.
pub fn reduce<F: FieldOps>(
    field: &F,
    basis: &[Vec<F::Elem>],
    pivots: &[usize],
    v: &[F::Elem],
) -> Vec<F::Elem> {
    let mut out = v.to_vec();
    for (row, &col) in basis.iter().zip(pivots) {
        if field.is_zero(&out[col]) {
            continue;
        }
        let factor = out[col].clone();
        for (o, r) in out.iter_mut().zip(row) {
            *o = field.sub(o, &field.mul(&factor, r));
        }
    }
    out
}

/// Basis of `{x : Σ_j rows[i][j]·x_j = 0 ∀ i}` in RREF, for an RREF input.
pub fn null_space<F: FieldOps>(
    field: &F,
    basis: &[Vec<F::Elem>],
    pivots: &[usize],
    ncols: usize,
) -> Vec<Vec<F::Elem>> {
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &col) in basis.iter().zip(pivots) {
            v[col] = field.neg(&row[free]);
        }
        out.push(v);
    }
    rref(field, &out).0
}

pub fn dot<F: FieldOps>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Elem, Field};
    use alloc::vec;

    #[test]
    fn rref_is_canonical() {
        let f = Field::with_order(3).unwrap();
        let a = vec![vec![Elem(1), Elem(2), Elem(0)], vec![Elem(2), Elem(1), Elem(1)]];
        let b = vec![vec![Elem(0), Elem(0), Elem(1)], vec![Elem(2), Elem(1), Elem(0)]];
        assert_eq!(rref(&f, &a), rref(&f, &b));
        let (basis, pivots) = rref(&f, &a);
        assert_eq!(pivots, [0, 2]);
        let ns = null_space(&f, &basis, &pivots, 3);
        assert_eq!(ns.len(), 1);
        for row in &basis {
            assert_eq!(dot(&f, row, &ns[0]), Elem::ZERO);
        }
        assert!(reduce(&f, &basis, &pivots, &a[1]).iter().all(|&c| c == Elem::ZERO));
    }
}
