//! JSON file formats for spaces and polytopes, and the text form of reports.
//!
//! Rationals are always strings, `"p/q"` or `"p"`.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactmath::{format_rational, format_vec, parse_rational, RatVec, Rational};
use crate::fano::FanoReport;
use crate::horospace::{HoroSpace, SpaceError};
use crate::polytope::{PolytopeError, RationalPolytope};
use crate::rootsys::{Family, RootSystem, SimpleType, Weight};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Syntax { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {location}: {message}")]
    Value { path: String, location: String, message: String },
    #[error("{path}: {source}")]
    Space { path: String, source: SpaceError },
    #[error("{path}: {source}")]
    Polytope { path: String, source: PolytopeError },
}

impl IoError {
    /// Whether the file was well-formed but describes invalid data.
    pub fn is_semantic(&self) -> bool {
        matches!(self, IoError::Space { .. } | IoError::Polytope { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub factors: Vec<FactorEntry>,
    pub torus_rank: usize,
    /// 1-based simple roots in concatenated Bourbaki order.
    #[serde(rename = "I")]
    pub i_set: Vec<usize>,
    /// Fundamental-weight coefficients, then torus coordinates.
    #[serde(rename = "M_basis")]
    pub m_basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub vertices: Vec<Vec<String>>,
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.display().to_string(), source })
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Syntax {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn value_err(path: &str, location: String, message: impl Into<String>) -> IoError {
    IoError::Value { path: path.to_string(), location, message: message.into() }
}

impl SpaceFile {
    pub fn parse(text: &str, path: &str) -> Result<Self, IoError> {
        parse_json(text, path)
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        Self::parse(&read(path)?, &path.display().to_string())
    }

    pub fn from_space(space: &HoroSpace) -> Self {
        let rs = space.root_system();
        SpaceFile {
            factors: rs.factors().iter().map(|f| FactorEntry { family: f.family, rank: f.rank }).collect(),
            torus_rank: rs.torus_rank(),
            i_set: space.i_set().iter().map(|&i| i + 1).collect(),
            m_basis: space
                .m_basis()
                .iter()
                .map(|mu| mu.fund.iter().chain(&mu.torus).map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    pub fn to_space(&self, path: &str) -> Result<HoroSpace, IoError> {
        let sem = |source: SpaceError| IoError::Space { path: path.to_string(), source };
        let factors = self
            .factors
            .iter()
            .map(|f| SimpleType::new(f.family, f.rank))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| sem(e.into()))?;
        let rs = RootSystem::new(&factors, self.torus_rank);
        let s = rs.rank();
        let mut i_set = BTreeSet::new();
        for (k, &i) in self.i_set.iter().enumerate() {
            if i == 0 || i > s {
                return Err(value_err(path, format!("I[{k}]"), format!("simple root {i} outside 1..={s}")));
            }
            i_set.insert(i - 1);
        }
        let mut basis = Vec::with_capacity(self.m_basis.len());
        for (j, row) in self.m_basis.iter().enumerate() {
            if row.len() != s + self.torus_rank {
                return Err(value_err(
                    path,
                    format!("M_basis[{j}]"),
                    format!("expected {} entries, found {}", s + self.torus_rank, row.len()),
                ));
            }
            let mut ints = Vec::with_capacity(row.len());
            for (k, entry) in row.iter().enumerate() {
                let loc = format!("M_basis[{j}][{k}]");
                let x = parse_rational(entry).map_err(|e| value_err(path, loc.clone(), e.to_string()))?;
                if !x.is_integer() {
                    return Err(value_err(path, loc, format!("basis entry {entry} is not an integer")));
                }
                let v = i64::try_from(x.to_integer()).map_err(|_| value_err(path, loc, "entry too large"))?;
                ints.push(v);
            }
            basis.push(Weight::new(ints[..s].to_vec(), ints[s..].to_vec()));
        }
        HoroSpace::build(rs, i_set, basis).map_err(sem)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }
}

/// Reads and validates a space file.
pub fn read_space(path: &Path) -> Result<HoroSpace, IoError> {
    SpaceFile::read(path)?.to_space(&path.display().to_string())
}

impl PolytopeFile {
    pub fn parse(text: &str, path: &str) -> Result<Self, IoError> {
        parse_json(text, path)
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        Self::parse(&read(path)?, &path.display().to_string())
    }

    pub fn from_points(points: &[RatVec]) -> Self {
        PolytopeFile { vertices: points.iter().map(|v| v.iter().map(format_rational).collect()).collect() }
    }

    pub fn from_polytope(q: &RationalPolytope) -> Self {
        Self::from_points(q.vertices())
    }

    pub fn points(&self, path: &str) -> Result<Vec<RatVec>, IoError> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(j, row)| {
                row.iter()
                    .enumerate()
                    .map(|(k, x)| {
                        parse_rational(x).map_err(|e| value_err(path, format!("vertices[{j}][{k}]"), e.to_string()))
                    })
                    .collect()
            })
            .collect()
    }

    /// The convex hull of the listed points; must be full-dimensional.
    pub fn to_polytope(&self, path: &str) -> Result<RationalPolytope, IoError> {
        let pts = self.points(path)?;
        let sem = |source| IoError::Polytope { path: path.to_string(), source };
        let q = RationalPolytope::hull(&pts).map_err(sem)?;
        q.require_full().map_err(sem)?;
        Ok(q)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }
}

/// Reads a polytope file as a full-dimensional polytope.
pub fn read_polytope(path: &Path) -> Result<RationalPolytope, IoError> {
    PolytopeFile::read(path)?.to_polytope(&path.display().to_string())
}

fn opt_rat(x: &Option<Rational>) -> String {
    x.as_ref().map(format_rational).unwrap_or_else(|| "none".into())
}

/// `key=value` lines followed by a JSON block with the same data.
pub fn format_report(space: &HoroSpace, q: &RationalPolytope, r: &FanoReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k}={v}\n"));
    line("vertices", q.vertices().iter().map(|v| format_vec(v)).collect::<Vec<_>>().join(" "));
    line("reflexive", r.reflexive.to_string());
    line("q_reflexive", r.q_reflexive.to_string());
    line("locally_factorial", r.locally_factorial.to_string());
    line("smooth", r.smooth.to_string());
    line("q_factorial", r.q_factorial.to_string());
    line("degree", opt_rat(&r.degree));
    line("degree_scale", r.degree_scale.as_ref().map(|k| k.to_string()).unwrap_or_else(|| "none".into()));
    line("picard", r.picard.map(|p| p.to_string()).unwrap_or_else(|| "none".into()));
    line("very_ample_anticanonical", r.very_ample_anticanonical.to_string());
    for b in &r.bound_checks {
        line(
            &format!("bound.{}", b.name),
            format!("{} lhs={} rhs={}", b.satisfied, format_rational(&b.lhs), format_rational(&b.rhs)),
        );
    }
    out.push_str("---\n");
    out.push_str(&serde_json::to_string_pretty(&report_json(space, q, r)).expect("json"));
    out.push('\n');
    out
}

pub fn report_json(space: &HoroSpace, q: &RationalPolytope, r: &FanoReport) -> Value {
    let strs = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
    let cones: Vec<Value> = r
        .fan
        .as_ref()
        .map(|f| {
            f.cones()
                .iter()
                .map(|c| {
                    json!({
                        "generators": c.generators.iter().map(|g| g.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "colors": c.colors.iter().map(|a| a + 1).collect::<Vec<_>>(),
                    })
                })
                .collect()
        })
        .unwrap_or_default();
    json!({
        "space": { "n": space.n(), "d": space.d(), "C": space.c_const() },
        "vertices": q.vertices().iter().map(|v| strs(v)).collect::<Vec<_>>(),
        "dual_vertices": q.dual().map(|d| d.vertices().iter().map(|v| strs(v)).collect::<Vec<_>>()).unwrap_or_default(),
        "reflexive": r.reflexive,
        "q_reflexive": r.q_reflexive,
        "locally_factorial": r.locally_factorial,
        "smooth": r.smooth,
        "q_factorial": r.q_factorial,
        "degree": r.degree.as_ref().map(format_rational),
        "degree_scale": r.degree_scale.as_ref().map(|k| k.to_string()),
        "picard": r.picard,
        "very_ample_anticanonical": r.very_ample_anticanonical,
        "bound_checks": r.bound_checks.iter().map(|b| json!({
            "name": b.name,
            "satisfied": b.satisfied,
            "lhs": format_rational(&b.lhs),
            "rhs": format_rational(&b.rhs),
        })).collect::<Vec<_>>(),
        "fan": cones,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    const SL3: &str = r#"{"factors":[{"type":"A","rank":2}],"torus_rank":0,"I":[],"M_basis":[["1","0"],["0","1"]]}"#;

    #[test]
    fn space_round_trip() {
        let f = SpaceFile::parse(SL3, "sl3").unwrap();
        let space = f.to_space("sl3").unwrap();
        assert_eq!(space.n(), 2);
        assert_eq!(space.d(), 5);
        let again = SpaceFile::from_space(&space);
        assert_eq!(again, f);
        assert_eq!(SpaceFile::parse(&again.to_json(), "x").unwrap(), f);
    }

    #[test]
    fn normalization_of_entries() {
        let text = r#"{"factors":[{"type":"A","rank":1}],"torus_rank":1,"I":[],"M_basis":[["2/2","0"],["0","-3/3"]]}"#;
        let f = SpaceFile::parse(text, "x").unwrap();
        let normal = SpaceFile::from_space(&f.to_space("x").unwrap());
        assert_eq!(normal.m_basis, vec![vec!["1", "0"], vec!["0", "-1"]]);
        assert_eq!(SpaceFile::from_space(&normal.to_space("x").unwrap()), normal);
    }

    #[test]
    fn diagnostics() {
        let e = SpaceFile::parse("{\"factors\": [}", "bad.json").unwrap_err();
        assert!(matches!(e, IoError::Syntax { line: 1, .. }), "{e}");
        let e = SpaceFile::parse(SL3.replace("\"1\",\"0\"", "\"1/2\",\"0\"").as_str(), "f")
            .unwrap()
            .to_space("f")
            .unwrap_err();
        assert!(e.to_string().contains("M_basis[0][0]"), "{e}");
        let e = SpaceFile::parse(&SL3.replace("\"I\":[]", "\"I\":[1]"), "f").unwrap().to_space("f").unwrap_err();
        assert!(e.is_semantic());
        let e = SpaceFile::parse(&SL3.replace("\"rank\":2", "\"rank\":0"), "f").unwrap().to_space("f").unwrap_err();
        assert!(e.is_semantic());
    }

    #[test]
    fn polytope_round_trip() {
        let pts = vec![vec![rat(1, 2), rat(0, 1)], vec![rat(0, 1), rat(1, 2)], vec![rat(-1, 1), rat(-1, 1)]];
        let f = PolytopeFile::from_points(&pts);
        assert_eq!(f.vertices[0], vec!["1/2", "0"]);
        let g = PolytopeFile::parse(&f.to_json(), "p").unwrap();
        assert_eq!(g.points("p").unwrap(), pts);
        let flat = PolytopeFile::from_points(&[vec![rat(0, 1), rat(0, 1)], vec![rat(1, 1), rat(1, 1)]]);
        assert!(flat.to_polytope("p").unwrap_err().is_semantic());
    }
}
