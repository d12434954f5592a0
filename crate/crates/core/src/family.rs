//! Edge-linear FI-graph families `G ⊔_H^n G'`: `n` copies of `G'` glued to
//! `G` along a common subgraph `H`, their transition maps, and scans of
//! Betti numbers across `n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::complex::Mode;
use crate::field::FieldKind;
use crate::graph::{Graph, GraphError, GraphFile, GraphHom, VertexIx};
use crate::module::{homology_betti_table, BettiTable, ModuleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("n = {n} is below the tail start {n_min}")]
    NBelowTail { n: usize, n_min: usize },
    #[error("map [{n}] -> [{r}] is not an injection")]
    NotInjective { n: usize, r: usize },
    #[error("{0} embedding of the overlap is not injective")]
    EmbeddingNotInjective(&'static str),
    #[error("invalid gluing: {0}")]
    InvalidGluing(String),
    #[error("edge counts are not linear on the window: {0}")]
    NotEdgeLinear(String),
    #[error("window has {len} points, need at least {need}")]
    WindowTooSmall { len: usize, need: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// On-disk family description.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub base: GraphFile,
    pub copy: GraphFile,
    pub overlap: GraphFile,
    pub embed_base: BTreeMap<String, String>,
    pub embed_copy: BTreeMap<String, String>,
    #[serde(default)]
    pub n_min: usize,
}

#[derive(Clone, Debug)]
pub struct FIGraphFamily {
    base: Arc<Graph>,
    copy: Arc<Graph>,
    overlap: Arc<Graph>,
    embed_base: GraphHom,
    embed_copy: GraphHom,
    n_min: usize,
    /// For each vertex of the copy: the base vertex it is glued to, if any.
    glue: Vec<Option<VertexIx>>,
}

fn field_error(field: &str, err: GraphError) -> GraphError {
    GraphError::Invalid {
        field: field.to_string(),
        message: err.to_string(),
    }
}

impl FIGraphFamily {
    pub fn new(
        base: Graph,
        copy: Graph,
        overlap: Graph,
        embed_base: &BTreeMap<String, String>,
        embed_copy: &BTreeMap<String, String>,
        n_min: usize,
    ) -> Result<Self, FamilyError> {
        let (base, copy, overlap) = (Arc::new(base), Arc::new(copy), Arc::new(overlap));
        let embed_base = GraphHom::from_vertex_map(embed_base, overlap.clone(), base.clone())
            .map_err(|e| field_error("embed_base", e))?;
        let embed_copy = GraphHom::from_vertex_map(embed_copy, overlap.clone(), copy.clone())
            .map_err(|e| field_error("embed_copy", e))?;
        if !embed_base.is_injective() {
            return Err(FamilyError::EmbeddingNotInjective("base"));
        }
        if !embed_copy.is_injective() {
            return Err(FamilyError::EmbeddingNotInjective("copy"));
        }
        let mut glue = vec![None; copy.num_vertices()];
        for h in 0..overlap.num_vertices() {
            let h = VertexIx(h);
            glue[embed_copy.map_vertex(h).0] = Some(embed_base.map_vertex(h));
        }
        let overlap_edges: BTreeSet<usize> = (0..overlap.num_edges())
            .map(|e| embed_copy.map_edge(crate::graph::EdgeIx(e)).0)
            .collect();
        for (i, e) in copy.edges().iter().enumerate() {
            let glued = glue[e.ends.0 .0].is_some() && glue[e.ends.1 .0].is_some();
            if glued && !overlap_edges.contains(&i) {
                return Err(FamilyError::InvalidGluing(format!(
                    "copy edge `{}` joins two glued vertices but is not in the overlap; copies would be parallel",
                    e.id
                )));
            }
        }
        Ok(FIGraphFamily {
            base,
            copy,
            overlap,
            embed_base,
            embed_copy,
            n_min,
            glue,
        })
    }

    pub fn from_file(file: FamilyFile) -> Result<Self, FamilyError> {
        let base = file.base.into_graph().map_err(|e| field_error("base", e))?;
        let copy = file.copy.into_graph().map_err(|e| field_error("copy", e))?;
        let overlap = file.overlap.into_graph().map_err(|e| field_error("overlap", e))?;
        Self::new(base, copy, overlap, &file.embed_base, &file.embed_copy, file.n_min)
    }

    pub fn from_json_str(text: &str) -> Result<Self, FamilyError> {
        let file: FamilyFile = serde_json::from_str(text).map_err(|e| FamilyError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_file(file)
    }

    pub fn to_file(&self) -> FamilyFile {
        FamilyFile {
            base: self.base.to_file(),
            copy: self.copy.to_file(),
            overlap: self.overlap.to_file(),
            embed_base: self.embed_base.vertex_map_ids(),
            embed_copy: self.embed_copy.vertex_map_ids(),
            n_min: self.n_min,
        }
    }

    /// `K_{n,1}`: one centre, each copy contributes one leaf.
    pub fn star() -> Self {
        let base = Graph::build(&["u"], &[]).unwrap();
        let copy = Graph::build(&["c", "leaf"], &[("e", "c", "leaf")]).unwrap();
        let overlap = Graph::build(&["p"], &[]).unwrap();
        Self::new(
            base,
            copy,
            overlap,
            &BTreeMap::from([("p".into(), "u".into())]),
            &BTreeMap::from([("p".into(), "c".into())]),
            0,
        )
        .expect("star family is valid")
    }

    /// `K_{n,m}`: `m` fixed vertices, each copy contributes a vertex joined to all of them.
    pub fn complete_bipartite(m: usize) -> Self {
        let fixed: Vec<String> = (1..=m).map(|i| format!("b{i}")).collect();
        let base = Graph::new(fixed.clone(), Vec::new()).unwrap();
        let overlap = Graph::new(fixed.clone(), Vec::new()).unwrap();
        let mut copy_vertices = fixed.clone();
        copy_vertices.push("t".into());
        let copy = Graph::new(
            copy_vertices,
            fixed.iter().map(|b| (format!("t-{b}"), ["t".to_string(), b.clone()])),
        )
        .unwrap();
        let ident: BTreeMap<String, String> = fixed.iter().map(|b| (b.clone(), b.clone())).collect();
        Self::new(base, copy, overlap, &ident, &ident, 0).expect("bipartite family is valid")
    }

    pub fn n_min(&self) -> usize {
        self.n_min
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    fn copy_vertex_id(&self, i: usize, v: VertexIx) -> String {
        match self.glue[v.0] {
            Some(b) => self.base.vertex_id(b).to_string(),
            None => format!("copy{i}:{}", self.copy.vertex_id(v)),
        }
    }

    /// `G_n`: the base with `n` copies of `G'` glued along `H`. Copy vertices
    /// and edges are named `copy{i}:{id}` for `i = 1..=n`.
    pub fn evaluate(&self, n: usize) -> Result<Graph, FamilyError> {
        if n < self.n_min {
            return Err(FamilyError::NBelowTail { n, n_min: self.n_min });
        }
        let mut vertices: Vec<String> = self.base.vertex_ids().to_vec();
        let mut edges: Vec<(String, [String; 2])> = self
            .base
            .edges()
            .iter()
            .map(|e| {
                (
                    e.id.clone(),
                    [
                        self.base.vertex_id(e.ends.0).to_string(),
                        self.base.vertex_id(e.ends.1).to_string(),
                    ],
                )
            })
            .collect();
        for i in 1..=n {
            for v in 0..self.copy.num_vertices() {
                if self.glue[v].is_none() {
                    vertices.push(self.copy_vertex_id(i, VertexIx(v)));
                }
            }
            for e in self.copy.edges() {
                if self.glue[e.ends.0 .0].is_some() && self.glue[e.ends.1 .0].is_some() {
                    continue;
                }
                edges.push((
                    format!("copy{i}:{}", e.id),
                    [self.copy_vertex_id(i, e.ends.0), self.copy_vertex_id(i, e.ends.1)],
                ));
            }
        }
        Ok(Graph::new(vertices, edges)?)
    }

    /// `G(f) : G_n -> G_r` for an injection `f` given as `f[i-1] = f(i)`
    /// (1-based); fixes the base and sends copy `i` to copy `f(i)`.
    pub fn transition(&self, f: &[usize], r: usize) -> Result<GraphHom, FamilyError> {
        let n = f.len();
        let distinct: BTreeSet<_> = f.iter().collect();
        if distinct.len() != n || f.iter().any(|&x| x == 0 || x > r) {
            return Err(FamilyError::NotInjective { n, r });
        }
        let source = Arc::new(self.evaluate(n)?);
        let target = Arc::new(self.evaluate(r)?);
        let mut map = Vec::with_capacity(source.num_vertices());
        for id in source.vertex_ids() {
            let image = match parse_copy_id(id) {
                Some((i, rest)) => format!("copy{}:{rest}", f[i - 1]),
                None => id.clone(),
            };
            map.push(target.vertex(&image)?);
        }
        Ok(GraphHom::from_indices(map, source, target)?)
    }

    /// Fits `|E(G_n)| = a n + b` on the first two points and checks the rest.
    pub fn edge_count_check(&self, window: RangeInclusive<usize>) -> Result<LinearPolynomial, FamilyError> {
        let ns: Vec<usize> = window.collect();
        if ns.len() < 3 {
            return Err(FamilyError::WindowTooSmall { len: ns.len(), need: 3 });
        }
        let counts = ns
            .iter()
            .map(|&n| Ok((n as i64, self.evaluate(n)?.num_edges() as i64)))
            .collect::<Result<Vec<_>, FamilyError>>()?;
        let (n0, e0) = counts[0];
        let (n1, e1) = counts[1];
        if (e1 - e0) % (n1 - n0) != 0 {
            return Err(FamilyError::NotEdgeLinear(format!("slope {}/{}", e1 - e0, n1 - n0)));
        }
        let a = (e1 - e0) / (n1 - n0);
        let poly = LinearPolynomial { a, b: e0 - a * n0 };
        for &(n, e) in &counts[2..] {
            if poly.eval(n) != e {
                return Err(FamilyError::NotEdgeLinear(format!(
                    "n = {n}: expected {}, found {e}",
                    poly.eval(n)
                )));
            }
        }
        Ok(poly)
    }
}

fn parse_copy_id(id: &str) -> Option<(usize, &str)> {
    let rest = id.strip_prefix("copy")?;
    let (num, tail) = rest.split_once(':')?;
    Some((num.parse().ok()?, tail))
}

/// `a n + b`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearPolynomial {
    pub a: i64,
    pub b: i64,
}

impl LinearPolynomial {
    pub fn eval(&self, n: i64) -> i64 {
        self.a * n + self.b
    }
}

/// Polynomial in `n` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    pub coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    fn trimmed(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, n: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(n));
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Interpolates through `(x_i, y_i)` using Newton divided differences.
    pub fn interpolate(points: &[(i64, i64)]) -> Self {
        let xs: Vec<BigRational> = points
            .iter()
            .map(|(x, _)| BigRational::from_integer(BigInt::from(*x)))
            .collect();
        let mut table: Vec<BigRational> = points
            .iter()
            .map(|(_, y)| BigRational::from_integer(BigInt::from(*y)))
            .collect();
        let k = points.len();
        let mut newton = vec![table[0].clone()];
        for level in 1..k {
            for i in (level..k).rev() {
                table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
            }
            newton.push(table[level].clone());
        }
        // Horner in the Newton basis, expanding into powers of n.
        let mut poly: Vec<BigRational> = vec![BigRational::zero()];
        for i in (0..k).rev() {
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xs[i];
            }
            next[0] += &newton[i];
            poly = next;
        }
        Self::trimmed(poly)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            let body = match d {
                0 => fmt_rational(&mag),
                _ => {
                    let var = if d == 1 { "n".to_string() } else { format!("n^{d}") };
                    if mag.is_one() {
                        var
                    } else {
                        format!("{}*{var}", fmt_rational(&mag))
                    }
                }
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {sign} {body}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for RationalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(fmt_rational))
    }
}

impl<'de> Deserialize<'de> for RationalPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| {
                let parsed = match s.split_once('/') {
                    Some((a, b)) => a
                        .parse::<BigInt>()
                        .and_then(|a| b.parse::<BigInt>().map(|b| BigRational::new(a, b))),
                    None => s.parse::<BigInt>().map(BigRational::from_integer),
                };
                parsed.map_err(serde::de::Error::custom)
            })
            .collect::<Result<_, _>>()?;
        Ok(RationalPolynomial { coeffs })
    }
}

/// What a stabilization report is about. `j == None` means the support set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanTarget {
    pub q: usize,
    pub p: usize,
    pub j: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilizationStatus {
    Stabilized,
    NotStabilizedInWindow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoldoutPoint {
    pub n: usize,
    pub predicted: String,
    pub observed: i64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportPoint {
    pub n: usize,
    pub support: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub target: Option<ScanTarget>,
    pub window: (usize, usize),
    pub status: StabilizationStatus,
    /// First `n` of the trailing stretch on which the fit (or support) holds.
    pub stable_from: Option<usize>,
    /// True when the fit or support holds on the whole window.
    pub constant_on_window: bool,
    pub polynomial: Option<RationalPolynomial>,
    pub polynomial_text: Option<String>,
    pub values: Vec<(usize, i64)>,
    pub holdout: Vec<HoldoutPoint>,
    pub supports: Option<Vec<SupportPoint>>,
}

/// Searches for the longest trailing stretch of `seq` (indexed from `n_start`)
/// on which a polynomial of degree `<= max_degree` fits: the first
/// `max_degree + 1` points of the stretch determine the polynomial exactly and
/// the remaining `>= 2` points are holdouts.
pub fn detect_polynomial(seq: &[i64], n_start: usize, max_degree: usize) -> Result<StabilizationReport, FamilyError> {
    let need = max_degree + 3;
    if seq.len() < need {
        return Err(FamilyError::WindowTooSmall { len: seq.len(), need });
    }
    let values: Vec<(usize, i64)> = seq.iter().enumerate().map(|(i, v)| (n_start + i, *v)).collect();
    let window = (n_start, n_start + seq.len() - 1);
    let attempt = |s: usize| {
        let fit: Vec<(i64, i64)> = values[s..=s + max_degree]
            .iter()
            .map(|(n, v)| (*n as i64, *v))
            .collect();
        let poly = RationalPolynomial::interpolate(&fit);
        let holdout: Vec<HoldoutPoint> = values[s + max_degree + 1..]
            .iter()
            .map(|&(n, v)| {
                let predicted = poly.eval(n as i64);
                HoldoutPoint {
                    n,
                    ok: predicted == BigRational::from_integer(BigInt::from(v)),
                    predicted: fmt_rational(&predicted),
                    observed: v,
                }
            })
            .collect();
        (poly, holdout)
    };
    for s in 0..=seq.len() - need {
        let (poly, holdout) = attempt(s);
        if holdout.iter().all(|h| h.ok) {
            return Ok(StabilizationReport {
                target: None,
                window,
                status: StabilizationStatus::Stabilized,
                stable_from: Some(n_start + s),
                constant_on_window: s == 0,
                polynomial_text: Some(poly.to_string()),
                polynomial: Some(poly),
                values,
                holdout,
                supports: None,
            });
        }
    }
    let (_, holdout) = attempt(seq.len() - need);
    Ok(StabilizationReport {
        target: None,
        window,
        status: StabilizationStatus::NotStabilizedInWindow,
        stable_from: None,
        constant_on_window: false,
        polynomial: None,
        polynomial_text: None,
        values,
        holdout,
        supports: None,
    })
}

/// Betti tables of `H_q(G_n)` for each `n` in the range, computed in parallel.
pub fn betti_tables(
    family: &FIGraphFamily,
    q: usize,
    p_max: usize,
    j_max: usize,
    n_range: RangeInclusive<usize>,
    field: FieldKind,
) -> Result<Vec<(usize, BettiTable)>, FamilyError> {
    let ns: Vec<usize> = n_range.collect();
    ns.par_iter()
        .map(|&n| {
            let g = family.evaluate(n)?;
            let t = homology_betti_table(&g, q, p_max, j_max, field, Mode::Reduced)?;
            Ok((n, t))
        })
        .collect()
}

/// `n ↦ β_{p,j}(H_q(G_n))` over `n_range`.
pub fn betti_sequence(
    family: &FIGraphFamily,
    q: usize,
    p: usize,
    j: usize,
    n_range: RangeInclusive<usize>,
    field: FieldKind,
) -> Result<Vec<usize>, FamilyError> {
    Ok(betti_tables(family, q, p, j, n_range, field)?
        .into_iter()
        .map(|(_, t)| t.get(p, j))
        .collect())
}

/// Stabilization of the support `{j <= j_max : β_{p,j} ≠ 0}` from per-`n` tables.
pub fn support_report(tables: &[(usize, BettiTable)], q: usize, p: usize) -> StabilizationReport {
    let supports: Vec<SupportPoint> = tables
        .iter()
        .map(|(n, t)| SupportPoint {
            n: *n,
            support: t.support(p).into_iter().collect(),
        })
        .collect();
    let window = (
        supports.first().map_or(0, |s| s.n),
        supports.last().map_or(0, |s| s.n),
    );
    let mut start = supports.len();
    while start > 0 && supports[start - 1].support == supports.last().unwrap().support {
        start -= 1;
    }
    let stable_len = supports.len() - start;
    let status = if stable_len >= 3 {
        StabilizationStatus::Stabilized
    } else {
        StabilizationStatus::NotStabilizedInWindow
    };
    StabilizationReport {
        target: Some(ScanTarget { q, p, j: None }),
        window,
        status,
        stable_from: (status == StabilizationStatus::Stabilized).then(|| supports[start].n),
        constant_on_window: start == 0 && !supports.is_empty(),
        polynomial: None,
        polynomial_text: None,
        values: Vec::new(),
        holdout: Vec::new(),
        supports: Some(supports),
    }
}

pub fn support_stabilization(
    family: &FIGraphFamily,
    q: usize,
    p: usize,
    n_range: RangeInclusive<usize>,
    j_max: usize,
    field: FieldKind,
) -> Result<StabilizationReport, FamilyError> {
    let tables = betti_tables(family, q, p, j_max, n_range, field)?;
    Ok(support_report(&tables, q, p))
}
