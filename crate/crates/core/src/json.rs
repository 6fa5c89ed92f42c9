//! JSON forms of measures, functions and operator inputs. Complex numbers
//! are `[re, im]` pairs and matrices row-major arrays of pairs.

use std::collections::BTreeMap;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::borel::Interval;
use crate::error::{Error, Result};
use crate::l2::{Piece, VectorFunction};
use crate::linalg::{ComplexMatrix, C64};
use crate::measure::{Atom, MatrixMeasure, Segment};
use crate::poly::Poly;

pub type Pair = [f64; 2];

pub fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

pub fn complex(p: Pair) -> C64 {
    C64::new(p[0], p[1])
}

pub fn vector_dto(v: &[C64]) -> Vec<Pair> {
    v.iter().copied().map(pair).collect()
}

pub fn vector_from_dto(v: &[Pair]) -> Vec<C64> {
    v.iter().copied().map(complex).collect()
}

pub fn matrix_dto(m: &ComplexMatrix) -> Vec<Vec<Pair>> {
    m.to_rows().iter().map(|r| vector_dto(r)).collect()
}

pub fn matrix_from_dto(rows: &[Vec<Pair>]) -> Result<ComplexMatrix> {
    if rows.is_empty() {
        return Err(Error::Parse { position: 0, message: "matrix has no rows".into() });
    }
    ComplexMatrix::from_rows(&rows.iter().map(|r| vector_from_dto(r)).collect::<Vec<_>>())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomDto {
    pub t: f64,
    pub weight: Vec<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentDto {
    pub a: f64,
    pub b: f64,
    pub density: Vec<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureDto {
    pub d: usize,
    #[serde(default)]
    pub atoms: Vec<AtomDto>,
    #[serde(default)]
    pub segments: Vec<SegmentDto>,
}

impl From<&MatrixMeasure> for MeasureDto {
    fn from(m: &MatrixMeasure) -> Self {
        Self {
            d: m.dim(),
            atoms: m.atoms().iter().map(|a| AtomDto { t: a.t, weight: matrix_dto(&a.weight) }).collect(),
            segments: m
                .segments()
                .iter()
                .map(|s| SegmentDto { a: s.a, b: s.b, density: matrix_dto(&s.density) })
                .collect(),
        }
    }
}

impl TryFrom<&MeasureDto> for MatrixMeasure {
    type Error = Error;

    fn try_from(dto: &MeasureDto) -> Result<Self> {
        let atoms = dto
            .atoms
            .iter()
            .map(|a| Ok(Atom { t: a.t, weight: matrix_from_dto(&a.weight)? }))
            .collect::<Result<Vec<_>>>()?;
        let segments = dto
            .segments
            .iter()
            .map(|s| Ok(Segment { a: s.a, b: s.b, density: matrix_from_dto(&s.density)? }))
            .collect::<Result<Vec<_>>>()?;
        MatrixMeasure::new(dto.d, atoms, segments)
    }
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieceDto {
    pub a: f64,
    pub b: f64,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub a_closed: bool,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub b_closed: bool,
    /// One coefficient list per component, constant term first.
    pub polys: Vec<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionDto {
    /// Needed only when there are neither atoms nor segments.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default)]
    pub atoms: BTreeMap<String, Vec<Pair>>,
    #[serde(default)]
    pub segments: Vec<PieceDto>,
}

impl From<&VectorFunction> for FunctionDto {
    fn from(f: &VectorFunction) -> Self {
        Self {
            d: Some(f.dim()),
            atoms: f.atoms().iter().map(|(t, v)| (format!("{t:?}"), vector_dto(v))).collect(),
            segments: f
                .pieces()
                .iter()
                .map(|p| PieceDto {
                    a: p.interval.lo,
                    b: p.interval.hi,
                    a_closed: p.interval.lo_closed,
                    b_closed: p.interval.hi_closed,
                    polys: p.polys.iter().map(|q| vector_dto(q.coeffs())).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&FunctionDto> for VectorFunction {
    type Error = Error;

    fn try_from(dto: &FunctionDto) -> Result<Self> {
        let d = dto
            .d
            .or_else(|| dto.atoms.values().next().map(Vec::len))
            .or_else(|| dto.segments.first().map(|s| s.polys.len()))
            .ok_or_else(|| Error::InvalidFunction("cannot infer the dimension of an empty function".into()))?;
        let atoms = dto
            .atoms
            .iter()
            .map(|(k, v)| {
                let t: f64 = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidFunction(format!("atom key {k:?} is not a number")))?;
                Ok((t, vector_from_dto(v)))
            })
            .collect::<Result<Vec<_>>>()?;
        let pieces = dto
            .segments
            .iter()
            .map(|s| Piece {
                interval: Interval::new(s.a, s.b, s.a_closed, s.b_closed),
                polys: s.polys.iter().map(|c| Poly::new(vector_from_dto(c))).collect(),
            })
            .collect();
        VectorFunction::new(d, atoms, pieces)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorDto {
    pub matrix: Vec<Vec<Pair>>,
    #[serde(default)]
    pub vectors: Vec<Vec<Pair>>,
}

impl OperatorDto {
    pub fn new(matrix: &ComplexMatrix, vectors: &[Vec<C64>]) -> Self {
        Self { matrix: matrix_dto(matrix), vectors: vectors.iter().map(|v| vector_dto(v)).collect() }
    }

    pub fn matrix(&self) -> Result<ComplexMatrix> {
        matrix_from_dto(&self.matrix)
    }

    pub fn vectors(&self) -> Vec<Vec<C64>> {
        self.vectors.iter().map(|v| vector_from_dto(v)).collect()
    }
}

/// Deserializes with the error location reported as a byte-free
/// `line:column` message and the column as position.
pub fn from_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        position: e.column(),
        message: format!("line {}: {e}", e.line()),
    })
}

pub fn to_string_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

pub fn measure_from_str(text: &str) -> Result<MatrixMeasure> {
    MatrixMeasure::try_from(&from_str::<MeasureDto>(text)?)
}

pub fn measure_to_string(m: &MatrixMeasure) -> String {
    to_string_pretty(&MeasureDto::from(m))
}

pub fn function_from_str(text: &str) -> Result<VectorFunction> {
    VectorFunction::try_from(&from_str::<FunctionDto>(text)?)
}

pub fn function_to_string(f: &VectorFunction) -> String {
    to_string_pretty(&FunctionDto::from(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzz;
    use crate::measure::fixtures::example_measure;
    use proptest::prelude::*;

    #[test]
    fn measure_schema_example() {
        let text = r#"{"d": 2, "atoms": [{"t": 2.0, "weight": [[[3,0],[0,0]],[[0,0],[1,0]]]}],
            "segments": [{"a": 0.0, "b": 1.0, "density": [[[1,0],[0,0]],[[0,0],[1,0]]]}]}"#;
        let m = measure_from_str(text).unwrap();
        assert_eq!(m.atoms().len(), 1);
        assert_eq!(m.total_trace(), 6.0);
        assert_eq!(measure_from_str(&measure_to_string(&m)).unwrap(), m);
    }

    #[test]
    fn function_schema_example() {
        let text = r#"{"atoms": {"2.0": [[1,0],[0,0]]}, "segments": [{"a":0,"b":1,"polys": [[[1,0],[2,0]], [[0,1]]]}]}"#;
        let f = function_from_str(text).unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(f.eval(2.0), vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert_eq!(f.eval(0.5), vec![C64::new(2.0, 0.0), C64::new(0.0, 1.0)]);
        assert_eq!(function_from_str(&function_to_string(&f)).unwrap(), f);
    }

    #[test]
    fn parse_errors_carry_location() {
        match measure_from_str("{\"d\": 2,\n \"atoms\": [}") {
            Err(Error::Parse { message, .. }) => assert!(message.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(function_from_str("{}"), Err(Error::InvalidFunction(_))));
        assert!(matrix_from_dto(&[]).is_err());
    }

    #[test]
    fn example_measure_round_trips() {
        let m = example_measure();
        assert_eq!(measure_from_str(&measure_to_string(&m)).unwrap(), m);
    }

    proptest! {
        #[test]
        fn measures_and_functions_round_trip(seed in any::<u64>(), d in 1usize..4) {
            let mut rng = fuzz::rng(seed);
            let m = fuzz::random_measure(&mut rng, d, 3, 3);
            prop_assert_eq!(&measure_from_str(&measure_to_string(&m)).unwrap(), &m);
            let f = fuzz::random_function(&mut rng, &m, 3, 2.0);
            prop_assert_eq!(&function_from_str(&function_to_string(&f)).unwrap(), &f);
        }

        #[test]
        fn operators_round_trip(seed in any::<u64>(), n in 1usize..6) {
            let mut rng = fuzz::rng(seed);
            let p = fuzz::planted_hermitian(&mut rng, n, 2);
            let vs = fuzz::random_system(&mut rng, n, 2);
            let dto = OperatorDto::new(&p.matrix, &vs);
            let back: OperatorDto = from_str(&to_string_pretty(&dto)).unwrap();
            prop_assert_eq!(back.matrix().unwrap(), p.matrix);
            prop_assert_eq!(back.vectors(), vs);
        }
    }
}
