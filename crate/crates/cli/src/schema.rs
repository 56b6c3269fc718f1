//! JSON shapes for fields, elements, polynomials, codes and generator
//! selections.
//!
//! An element of `GF(p^m)` is always written as its full coordinate vector
//! of length `m` over `GF(p)`, constant coordinate first, with respect to the
//! power basis of the field's modulus. Polynomials are lists of elements,
//! constant term first.

use serde::{Deserialize, Serialize};

use selfdual_core::code::LinearCode;
use selfdual_core::cyclic_enum::{selection_to_generator, GeneratorSelection};
use selfdual_core::poly::Poly;
use selfdual_core::{Elem, Error, Field, FieldSpec, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    /// Monic modulus over `GF(p)`, constant term first.
    pub modulus: Vec<u32>,
}

impl FieldJson {
    pub fn of(field: &Field) -> Self {
        let spec = field.spec();
        FieldJson { p: spec.p(), m: spec.m(), q: spec.q(), modulus: spec.modulus().to_vec() }
    }

    pub fn to_field(&self) -> Result<Field> {
        let field = Field::new(FieldSpec::new(self.p, self.m, self.modulus.clone())?);
        if field.q() != self.q {
            return Err(Error::Domain(format!("q={} does not match p^m={}", self.q, field.q())));
        }
        Ok(field)
    }
}

pub fn encode_elem(field: &Field, a: Elem) -> Vec<u32> {
    field.coords(a)
}

pub fn decode_elem(field: &Field, coords: &[u32]) -> Result<Elem> {
    if coords.len() != field.m() as usize {
        return Err(Error::Domain(format!(
            "element {coords:?} must have exactly {} coordinates",
            field.m()
        )));
    }
    field.from_coords(coords)
}

pub fn encode_poly(field: &Field, f: &Poly<Elem>) -> Vec<Vec<u32>> {
    f.coeffs().iter().map(|&c| encode_elem(field, c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: FieldJson,
    pub n: usize,
    pub k: usize,
    /// Rows of the reduced row-echelon generator matrix.
    pub generator_matrix: Vec<Vec<Vec<u32>>>,
}

impl CodeJson {
    pub fn of(code: &LinearCode) -> Self {
        let field = code.field();
        CodeJson {
            field: FieldJson::of(field),
            n: code.length(),
            k: code.dimension(),
            generator_matrix: code
                .generator_matrix()
                .iter()
                .map(|row| row.iter().map(|&c| encode_elem(field, c)).collect())
                .collect(),
        }
    }

    /// Rebuilds the code; `k` must match the rank of the rows.
    pub fn to_code(&self) -> Result<LinearCode> {
        let field = self.field.to_field()?;
        let rows = self
            .generator_matrix
            .iter()
            .map(|row| {
                if row.len() != self.n {
                    return Err(Error::Domain(format!("row of length {} in a code of length {}", row.len(), self.n)));
                }
                row.iter().map(|c| decode_elem(&field, c)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let code = if rows.is_empty() {
            LinearCode::zero(&field, self.n)
        } else {
            LinearCode::from_generators(&field, self.n, &rows)?
        };
        if code.dimension() != self.k {
            return Err(Error::Domain(format!("k={} but the rows have rank {}", self.k, code.dimension())));
        }
        Ok(code)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetMultiplicity {
    pub rep: u64,
    pub coset: Vec<u64>,
    /// Degree of the irreducible factor indexed by the coset.
    pub degree: usize,
    pub self_reciprocal: bool,
    pub multiplicity: u64,
}

/// One element of the selection set: factor multiplicities and the
/// generator polynomial they encode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionJson {
    pub multiplicities: Vec<CosetMultiplicity>,
    pub generator_degree: u64,
    pub generator: Vec<Vec<u32>>,
    /// Whether `Λ_r` fixes the selection; present when `r` was given.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fixed_by_lambda: Option<bool>,
}

impl SelectionJson {
    pub fn of(sel: &GeneratorSelection, r: Option<u32>) -> Self {
        let fac = sel.factorization();
        let multiplicities = fac
            .factors()
            .into_iter()
            .map(|f| CosetMultiplicity {
                rep: f.rep(),
                coset: f.coset.elements().to_vec(),
                degree: f.degree(),
                self_reciprocal: fac.self_reciprocal.iter().any(|g| g.rep() == f.rep()),
                multiplicity: sel.multiplicity(f.rep()),
            })
            .collect();
        SelectionJson {
            multiplicities,
            generator_degree: sel.generator_degree(),
            generator: encode_poly(&fac.field, &selection_to_generator(sel)),
            fixed_by_lambda: r.map(|r| sel.is_fixed_by(r)),
        }
    }
}
