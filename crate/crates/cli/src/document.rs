//! On-disk instance and result documents. Every scalar is a string literal
//! in the declared field.

use serde::{Deserialize, Serialize};

use qplof::exactla::Matrix;
use qplof::solver::SolveStats;
use qplof::{OrderedField, Outcome, Polyhedron, QuadraticFunction, RayCertificate};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub field: String,
    pub n: usize,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<String>>,
    pub c: Vec<String>,
    pub gamma: String,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub b: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn parse<F: OrderedField>(literal: &str, at: impl FnOnce() -> String) -> Result<F, CliError> {
    F::parse_literal(literal).map_err(|e| CliError::Parse(format!("{}: {e}", at())))
}

fn parse_vec<F: OrderedField>(v: &[String], name: &str) -> Result<Vec<F>, CliError> {
    v.iter()
        .enumerate()
        .map(|(i, s)| parse(s, || format!("{name}[{i}]")))
        .collect()
}

fn parse_matrix<F: OrderedField>(rows: &[Vec<String>], cols: usize, name: &str) -> Result<Matrix<F>, CliError> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(CliError::Parse(format!(
                "{name}[{i}] has {} entries, expected {cols}",
                row.len()
            )));
        }
        out.push(parse_vec(row, &format!("{name}[{i}]"))?);
    }
    Matrix::from_rows_with_cols(out, cols).map_err(|e| CliError::Parse(e.to_string()))
}

fn render_vec<F: OrderedField>(v: &[F]) -> Vec<String> {
    v.iter().map(F::render).collect()
}

impl InstanceDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid instance document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize") + "\n"
    }

    /// Parses every literal in field `F` and checks dimensions.
    pub fn to_problem<F: OrderedField>(&self) -> Result<(Polyhedron<F>, QuadraticFunction<F>), CliError> {
        if self.field != F::TAG {
            return Err(CliError::Parse(format!(
                "document field {:?} does not match {:?}",
                self.field,
                F::TAG
            )));
        }
        let n = self.n;
        if self.q.len() != n || self.c.len() != n {
            return Err(CliError::Parse(format!(
                "Q has {} rows and c has {} entries, expected n = {n}",
                self.q.len(),
                self.c.len()
            )));
        }
        if self.a.len() != self.b.len() {
            return Err(CliError::Parse(format!(
                "A has {} rows but b has {} entries",
                self.a.len(),
                self.b.len()
            )));
        }
        let q = parse_matrix::<F>(&self.q, n, "Q")?;
        let c = parse_vec(&self.c, "c")?;
        let gamma = parse(&self.gamma, || "gamma".to_string())?;
        let a = parse_matrix::<F>(&self.a, n, "A")?;
        let b = parse_vec(&self.b, "b")?;
        let p = Polyhedron::new(a, b).map_err(|e| CliError::Parse(e.to_string()))?;
        let f = QuadraticFunction::new(q, c, gamma).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok((p, f))
    }

    pub fn from_problem<F: OrderedField>(
        p: &Polyhedron<F>,
        f: &QuadraticFunction<F>,
        name: Option<String>,
        seed: Option<u64>,
    ) -> Self {
        InstanceDocument {
            field: F::TAG.to_string(),
            n: p.dim(),
            q: f.q().row_iter().map(render_vec).collect(),
            c: render_vec(f.c()),
            gamma: f.gamma().render(),
            a: p.a().row_iter().map(render_vec).collect(),
            b: render_vec(p.b()),
            name,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayDocument {
    pub x0: Vec<String>,
    pub d: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckResult {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub result: CheckResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsDocument {
    pub subproblems: u64,
    pub depth: usize,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub field: String,
    pub status: String,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray: Option<RayDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<Check>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsDocument>,
}

impl ResultDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid result document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize") + "\n"
    }

    pub fn from_outcome<F: OrderedField>(outcome: &Outcome<F>) -> Self {
        let mut doc = ResultDocument {
            field: F::TAG.to_string(),
            status: outcome.status().to_string(),
            value: String::new(),
            point: None,
            ray: None,
            verification: None,
            stats: None,
        };
        match outcome {
            Outcome::Infeasible => doc.value = "+inf".into(),
            Outcome::Unbounded(ray) => {
                doc.value = "-inf".into();
                doc.ray = Some(RayDocument {
                    x0: render_vec(&ray.x0),
                    d: render_vec(&ray.d),
                });
            }
            Outcome::Optimal { value, point } => {
                doc.value = value.render();
                doc.point = Some(render_vec(point));
            }
        }
        doc
    }

    pub fn with_stats(mut self, stats: &SolveStats, wall_time_ms: f64) -> Self {
        self.stats = Some(StatsDocument {
            subproblems: stats.subproblems,
            depth: stats.max_depth,
            wall_time_ms,
        });
        self
    }

    /// Re-parses the stored outcome in field `F`.
    pub fn to_outcome<F: OrderedField>(&self) -> Result<Outcome<F>, CliError> {
        if self.field != F::TAG {
            return Err(CliError::Parse(format!(
                "result field {:?} does not match instance field {:?}",
                self.field,
                F::TAG
            )));
        }
        match self.status.as_str() {
            "Infeasible" => Ok(Outcome::Infeasible),
            "Unbounded" => {
                let ray = self
                    .ray
                    .as_ref()
                    .ok_or_else(|| CliError::Parse("Unbounded result without a ray".into()))?;
                Ok(Outcome::Unbounded(RayCertificate {
                    x0: parse_vec(&ray.x0, "ray.x0")?,
                    d: parse_vec(&ray.d, "ray.d")?,
                }))
            }
            "Optimal" => {
                let point = self
                    .point
                    .as_ref()
                    .ok_or_else(|| CliError::Parse("Optimal result without a point".into()))?;
                Ok(Outcome::Optimal {
                    value: parse(&self.value, || "value".to_string())?,
                    point: parse_vec(point, "point")?,
                })
            }
            other => Err(CliError::Parse(format!("unknown status {other:?}"))),
        }
    }
}
