//! JSON documents read and written by the CLI. Rationals are strings `"p/q"`
//! (a bare integer `"p"` is accepted on input).

use std::collections::BTreeMap;

use okounkov_core::filtration::WeightTable;
use okounkov_core::{
    AffineForm, DensityPiece, Filtration, FiniteSemigroup, Halfspace, Measure, NormalCone,
    PlFunction, Polynomial, Polytope, Rational, Scalar, ToricTc,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub fn parse_q(s: &str, field: &str) -> Result<Rational, CliError> {
    Rational::parse_exact(s)
        .ok_or_else(|| CliError::Validation(format!("{field}: {s:?} is not a rational p/q")))
}

fn parse_vec(v: &[String], field: &str) -> Result<Vec<Rational>, CliError> {
    v.iter().map(|s| parse_q(s, field)).collect()
}

fn show(v: &[Rational]) -> Vec<String> {
    v.iter().map(Scalar::to_exact_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearRow {
    pub a: Vec<String>,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDoc {
    pub dim: usize,
    pub ineqs: Vec<LinearRow>,
}

impl PolytopeDoc {
    pub fn from_polytope(p: &Polytope) -> Self {
        Self {
            dim: p.dim(),
            ineqs: p
                .inequalities()
                .iter()
                .map(|h| LinearRow {
                    a: show(&h.normal),
                    b: h.offset.to_exact_string(),
                })
                .collect(),
        }
    }

    pub fn to_polytope(&self) -> Result<Polytope, CliError> {
        let rows = self
            .ineqs
            .iter()
            .map(|r| Ok(Halfspace::new(parse_vec(&r.a, "ineqs.a")?, parse_q(&r.b, "ineqs.b")?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Polytope::from_inequalities(self.dim, rows)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupDoc {
    pub ambient: usize,
    pub generators: Vec<Vec<i64>>,
}

impl SemigroupDoc {
    pub fn to_semigroup(&self) -> Result<FiniteSemigroup, CliError> {
        Ok(FiniteSemigroup::new(self.ambient, self.generators.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecesDoc {
    pub pieces: Vec<LinearRow>,
}

impl PiecesDoc {
    pub fn from_function(g: &PlFunction) -> Self {
        Self {
            pieces: g
                .pieces()
                .iter()
                .map(|p| LinearRow {
                    a: show(&p.coeffs),
                    b: p.constant.to_exact_string(),
                })
                .collect(),
        }
    }

    pub fn to_function(&self, domain: Polytope) -> Result<PlFunction, CliError> {
        let pieces = self
            .pieces
            .iter()
            .map(|r| Ok(AffineForm::new(parse_vec(&r.a, "g.a")?, parse_q(&r.b, "g.b")?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(PlFunction::new(domain, pieces)?)
    }
}

/// `(P, g)`; also the output format of `transform`, which adds `extrapolated`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestConfigurationDoc {
    pub polytope: PolytopeDoc,
    pub g: PiecesDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extrapolated: Option<bool>,
}

impl TestConfigurationDoc {
    pub fn function(&self) -> Result<PlFunction, CliError> {
        self.g.to_function(self.polytope.to_polytope()?)
    }

    pub fn to_test_configuration(&self) -> Result<ToricTc, CliError> {
        Ok(ToricTc::new(self.function()?, None)?)
    }
}

/// `facet_coordinate` counts from 1, so `1` names `x_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalConeDoc {
    pub polytope: PolytopeDoc,
    pub facet_coordinate: usize,
    pub c: String,
}

impl NormalConeDoc {
    pub fn to_datum(&self, c_override: Option<&Rational>) -> Result<NormalCone, CliError> {
        if self.facet_coordinate == 0 {
            return Err(CliError::Validation("facet_coordinate counts from 1".into()));
        }
        let c = match c_override {
            Some(c) => c.clone(),
            None => parse_q(&self.c, "c")?,
        };
        Ok(NormalCone::new(self.polytope.to_polytope()?, self.facet_coordinate - 1, c)?)
    }
}

/// `weights["k"]` lists rows `[alpha_1, ..., alpha_n, w]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationDoc {
    pub base: PolytopeDoc,
    pub weights: BTreeMap<String, Vec<Vec<i64>>>,
}

impl FiltrationDoc {
    pub fn to_filtration(&self) -> Result<Filtration, CliError> {
        let base = self.base.to_polytope()?;
        let n = base.dim();
        let mut levels = BTreeMap::new();
        for (key, rows) in &self.weights {
            let k: u32 = key
                .parse()
                .map_err(|_| CliError::Validation(format!("weights: degree {key:?} is not an integer")))?;
            let mut table = WeightTable::new();
            for row in rows {
                if row.len() != n + 1 {
                    return Err(CliError::Validation(format!(
                        "weights[{key}]: row {row:?} needs {n} coordinates and a weight"
                    )));
                }
                if table.insert(row[..n].to_vec(), row[n]).is_some() {
                    return Err(CliError::Validation(format!(
                        "weights[{key}]: point {:?} listed twice",
                        &row[..n]
                    )));
                }
            }
            levels.insert(k, table);
        }
        Ok(Filtration::from_table(base, levels, None)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityDoc {
    pub l: String,
    pub r: String,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureDoc {
    pub atoms: Vec<(String, String)>,
    pub pieces: Vec<DensityDoc>,
}

impl MeasureDoc {
    pub fn from_measure(m: &Measure) -> Self {
        Self {
            atoms: m
                .atoms()
                .iter()
                .map(|(l, w)| (l.to_exact_string(), w.to_exact_string()))
                .collect(),
            pieces: m
                .pieces()
                .iter()
                .map(|p| DensityDoc {
                    l: p.lo.to_exact_string(),
                    r: p.hi.to_exact_string(),
                    coeffs: show(p.density.coeffs()),
                })
                .collect(),
        }
    }

    pub fn to_measure(&self) -> Result<Measure, CliError> {
        let atoms = self
            .atoms
            .iter()
            .map(|(l, w)| Ok((parse_q(l, "atoms")?, parse_q(w, "atoms")?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                Ok(DensityPiece {
                    lo: parse_q(&p.l, "pieces.l")?,
                    hi: parse_q(&p.r, "pieces.r")?,
                    density: Polynomial::new(parse_vec(&p.coeffs, "pieces.coeffs")?),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Measure::new(atoms, pieces)?)
    }
}

/// The input kinds that define a filtration or a limiting measure.
pub enum Source {
    Toric(ToricTc),
    NormalCone(NormalCone),
    Table(Filtration),
}

/// Dispatches on the distinguishing key: `g`, `facet_coordinate` or `weights`.
pub fn read_source(value: serde_json::Value, c: Option<&Rational>) -> Result<Source, CliError> {
    let has = |k: &str| value.get(k).is_some();
    if has("g") {
        let doc: TestConfigurationDoc = serde_json::from_value(value)?;
        Ok(Source::Toric(doc.to_test_configuration()?))
    } else if has("facet_coordinate") {
        let doc: NormalConeDoc = serde_json::from_value(value)?;
        Ok(Source::NormalCone(doc.to_datum(c)?))
    } else if has("weights") {
        let doc: FiltrationDoc = serde_json::from_value(value)?;
        Ok(Source::Table(doc.to_filtration()?))
    } else {
        Err(CliError::Validation(
            "input is neither a test configuration, a normal-cone datum nor a weight table".into(),
        ))
    }
}
