//! JSON encodings of fields, elements, polynomials, matrices and the
//! structures built from them. Coefficient vectors are low degree first.

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::gf::{field_from_spec, Elem, Field, FieldSpec, GfError};
use crate::matrix::{JordanStructure, MatrixError, SquareMatrix};
use crate::poly::{Factorization, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WireError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("{0}")]
    Shape(String),
}

/// Serde adapter writing a `BigUint` as a decimal string.
pub mod big_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element: either a bare integer (prime fields) or a full record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Int(u64),
    Full {
        p: u64,
        e: u32,
        modulus: Vec<u64>,
        coeffs: Vec<u64>,
    },
}

/// A coefficient vector, or a bare integer standing for the constant
/// element with that value.
#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffsJson {
    Bare(u64),
    Vector(Vec<u64>),
}

impl From<CoeffsJson> for Vec<u64> {
    fn from(c: CoeffsJson) -> Self {
        match c {
            CoeffsJson::Bare(v) => vec![v],
            CoeffsJson::Vector(v) => v,
        }
    }
}

fn lenient_row<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<u64>>, D::Error> {
    let row = Vec::<CoeffsJson>::deserialize(d)?;
    Ok(row.into_iter().map(Vec::from).collect())
}

fn lenient_rows<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Vec<u64>>>, D::Error> {
    let rows = Vec::<Vec<CoeffsJson>>::deserialize(d)?;
    Ok(rows
        .into_iter()
        .map(|r| r.into_iter().map(Vec::from).collect())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub field: FieldSpec,
    #[serde(deserialize_with = "lenient_row")]
    pub coeffs: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: FieldSpec,
    pub n: usize,
    #[serde(deserialize_with = "lenient_rows")]
    pub entries: Vec<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub polynomial: String,
    pub coeffs: Vec<Vec<u64>>,
    pub degree: usize,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub field: FieldSpec,
    pub unit: Vec<u64>,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanBlockJson {
    pub factor: String,
    pub coeffs: Vec<Vec<u64>>,
    pub degree: usize,
    pub size: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanJson {
    pub field: FieldSpec,
    pub n: usize,
    pub blocks: Vec<JordanBlockJson>,
}

pub fn element_to_json(field: &Field, a: Elem) -> ElementJson {
    let spec = field.spec();
    ElementJson::Full {
        p: spec.p,
        e: spec.e,
        modulus: spec.modulus.clone(),
        coeffs: field.coeffs(a),
    }
}

/// Decodes an element. A bare integer needs `field` to be a prime field.
pub fn element_from_json(
    field: Option<&Field>,
    j: &ElementJson,
) -> Result<(Field, Elem), WireError> {
    match j {
        ElementJson::Int(v) => {
            let f =
                field.ok_or_else(|| WireError::Shape("bare integer needs a known field".into()))?;
            if !f.is_prime_field() || *v >= f.p() {
                return Err(WireError::Shape(format!(
                    "{v} is not an element of GF({})",
                    f.q()
                )));
            }
            Ok((f.clone(), *v as Elem))
        }
        ElementJson::Full {
            p,
            e,
            modulus,
            coeffs,
        } => {
            let f = field_from_spec(&FieldSpec {
                p: *p,
                e: *e,
                modulus: modulus.clone(),
            })?;
            if let Some(g) = field {
                if *g != f {
                    return Err(GfError::SpecMismatch.into());
                }
            }
            let a = f.from_coeffs(coeffs)?;
            Ok((f, a))
        }
    }
}

pub fn poly_coeffs(f: &Polynomial) -> Vec<Vec<u64>> {
    f.coeffs().iter().map(|&c| f.field().coeffs(c)).collect()
}

pub fn poly_to_json(f: &Polynomial) -> PolynomialJson {
    PolynomialJson {
        field: f.field().spec().clone(),
        coeffs: poly_coeffs(f),
    }
}

fn decode_coeffs(field: &Field, cs: &[Vec<u64>]) -> Result<Vec<Elem>, WireError> {
    cs.iter()
        .map(|c| field.from_coeffs(c).map_err(WireError::from))
        .collect()
}

pub fn poly_from_json(j: &PolynomialJson) -> Result<Polynomial, WireError> {
    let field = field_from_spec(&j.field)?;
    Ok(Polynomial::new(&field, decode_coeffs(&field, &j.coeffs)?))
}

/// Decodes a polynomial over an already known field, rejecting others.
pub fn poly_from_json_in(field: &Field, j: &PolynomialJson) -> Result<Polynomial, WireError> {
    if &j.field != field.spec() {
        return Err(GfError::SpecMismatch.into());
    }
    Ok(Polynomial::new(field, decode_coeffs(field, &j.coeffs)?))
}

pub fn matrix_to_json(a: &SquareMatrix) -> MatrixJson {
    let f = a.field();
    MatrixJson {
        field: f.spec().clone(),
        n: a.n(),
        entries: (0..a.n())
            .map(|i| a.row(i).iter().map(|&x| f.coeffs(x)).collect())
            .collect(),
    }
}

pub fn matrix_from_json(j: &MatrixJson) -> Result<SquareMatrix, WireError> {
    let field = field_from_spec(&j.field)?;
    matrix_from_json_in(&field, j)
}

pub fn matrix_from_json_in(field: &Field, j: &MatrixJson) -> Result<SquareMatrix, WireError> {
    if &j.field != field.spec() {
        return Err(GfError::SpecMismatch.into());
    }
    if j.n == 0 {
        return Err(WireError::Shape(
            "matrix dimension must be at least 1".into(),
        ));
    }
    if j.entries.len() != j.n || j.entries.iter().any(|r| r.len() != j.n) {
        return Err(WireError::Shape(format!(
            "entries must be {0} rows of {0} elements",
            j.n
        )));
    }
    let mut flat = Vec::with_capacity(j.n * j.n);
    for row in &j.entries {
        flat.extend(decode_coeffs(field, row)?);
    }
    Ok(SquareMatrix::new(field, j.n, flat)?)
}

pub fn factorization_to_json(fact: &Factorization) -> FactorizationJson {
    FactorizationJson {
        field: fact.field.spec().clone(),
        unit: fact.field.coeffs(fact.unit),
        factors: fact
            .factors
            .iter()
            .map(|(f, k)| FactorJson {
                polynomial: f.to_string(),
                coeffs: poly_coeffs(f),
                degree: f.degree().unwrap_or(0),
                multiplicity: *k,
            })
            .collect(),
    }
}

pub fn factorization_from_json(j: &FactorizationJson) -> Result<Factorization, WireError> {
    let field = field_from_spec(&j.field)?;
    let unit = field.from_coeffs(&j.unit)?;
    let factors = j
        .factors
        .iter()
        .map(|fj| {
            Ok((
                Polynomial::new(&field, decode_coeffs(&field, &fj.coeffs)?),
                fj.multiplicity,
            ))
        })
        .collect::<Result<Vec<_>, WireError>>()?;
    Ok(Factorization {
        field,
        unit,
        factors,
    })
}

pub fn jordan_to_json(js: &JordanStructure) -> JordanJson {
    JordanJson {
        field: js.factorization.field.spec().clone(),
        n: js.n,
        blocks: js
            .blocks
            .iter()
            .map(|b| JordanBlockJson {
                factor: b.factor.to_string(),
                coeffs: poly_coeffs(&b.factor),
                degree: b.factor.degree().unwrap_or(0),
                size: b.size,
                multiplicity: b.multiplicity,
            })
            .collect(),
    }
}
