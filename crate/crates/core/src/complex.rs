//! The bigraded Świątkowski complex of a graph and its reduced subcomplex.
//!
//! A basis element is a [`PureTensor`]: an edge monomial together with one
//! generator per vertex. Generators carry bigrades `|∅| = (0,0)`, `|v| = (0,1)`,
//! `|h| = (1,1)` and edge variables `|x_e| = (0,1)`. The differential is
//! `∂h = x_{e(h)} - v(h)` (full) or `∂(h_i - h_0) = x_{e_i} - x_{e_0}` (reduced),
//! extended as a graded derivation over the vertex factors in sorted id order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeIx, Graph, GraphHom, VertexIx};
use crate::matrix::IntegerMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("reduced complex requires no isolated vertices; `{0}` is isolated")]
    IsolatedVertexInReducedMode(String),
    #[error("slice mismatch: {0}")]
    SliceMismatch(String),
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("induced maps need an injective homomorphism")]
    NotInjective,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Full,
    Reduced,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Reduced => "reduced",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Mode::Full),
            "reduced" => Ok(Mode::Reduced),
            other => Err(format!("unknown mode `{other}` (expected full|reduced)")),
        }
    }
}

/// The generator sitting at one vertex of a pure tensor. Half-edges are
/// identified by their edge, the vertex being implied by position.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexState {
    Empty,
    VertexGen,
    Half(EdgeIx),
    /// `h_i - h_j`; canonical basis elements use the anchor as `j`.
    HalfDiff(EdgeIx, EdgeIx),
}

impl VertexState {
    /// Homological degree is odd (one) for half-edge generators.
    pub fn is_odd(&self) -> bool {
        matches!(self, VertexState::Half(_) | VertexState::HalfDiff(..))
    }

    pub fn weight(&self) -> usize {
        match self {
            VertexState::Empty => 0,
            _ => 1,
        }
    }
}

/// Exponent vector over the edges in sorted order.
///
/// Ordered so that `x_{e1} < x_{e2} < ...` in degree one, i.e. reverse
/// lexicographic comparison of the exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_edges: usize) -> Self {
        Monomial(vec![0; num_edges])
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn times(&self, e: EdgeIx) -> Monomial {
        let mut exps = self.0.clone();
        exps[e.0] += 1;
        Monomial(exps)
    }

    /// All monomials of degree `d` in `vars` variables.
    pub fn all_of_degree(vars: usize, d: usize) -> Vec<Monomial> {
        fn rec(pos: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == cur.len() {
                cur[pos] = left as u32;
                out.push(Monomial(cur.clone()));
                return;
            }
            for k in 0..=left {
                cur[pos] = k as u32;
                rec(pos + 1, left - k, cur, out);
            }
            cur[pos] = 0;
        }
        if vars == 0 {
            return if d == 0 { vec![Monomial(Vec::new())] } else { Vec::new() };
        }
        let mut out = Vec::new();
        rec(0, d, &mut vec![0; vars], &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureTensor {
    pub monomial: Monomial,
    pub states: Vec<VertexState>,
}

impl PureTensor {
    /// Homological degree.
    pub fn q(&self) -> usize {
        self.states.iter().filter(|s| s.is_odd()).count()
    }

    /// Weight (particle number).
    pub fn n(&self) -> usize {
        self.monomial.degree() + self.states.iter().map(VertexState::weight).sum::<usize>()
    }

    pub fn display(&self, g: &Graph) -> String {
        let mut parts = Vec::new();
        let mono: Vec<String> = self
            .monomial
            .0
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(e, &k)| {
                let id = g.edge_id(EdgeIx(e));
                if k == 1 {
                    format!("x[{id}]")
                } else {
                    format!("x[{id}]^{k}")
                }
            })
            .collect();
        parts.push(if mono.is_empty() { "1".to_string() } else { mono.join("*") });
        for (v, s) in self.states.iter().enumerate() {
            let vid = g.vertex_id(VertexIx(v));
            match s {
                VertexState::Empty => {}
                VertexState::VertexGen => parts.push(vid.to_string()),
                VertexState::Half(e) => parts.push(format!("h({vid},{})", g.edge_id(*e))),
                VertexState::HalfDiff(i, j) => parts.push(format!(
                    "h({vid},{})-h({vid},{})",
                    g.edge_id(*i),
                    g.edge_id(*j)
                )),
            }
        }
        parts.join(" ⊗ ")
    }
}

/// The anchor half-edge at `v`: the incident edge with the smallest id.
pub fn anchor(g: &Graph, v: VertexIx) -> Option<EdgeIx> {
    g.incident_edges(v).first().copied()
}

/// Basis of one bigrade `(q, n)`.
#[derive(Clone, Debug)]
pub struct BigradeSlice {
    graph: Arc<Graph>,
    pub q: usize,
    pub n: usize,
    pub mode: Mode,
    basis: Vec<PureTensor>,
    index: HashMap<PureTensor, usize>,
}

impl BigradeSlice {
    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[PureTensor] {
        &self.basis
    }

    pub fn position(&self, t: &PureTensor) -> Option<usize> {
        self.index.get(t).copied()
    }

    fn expect_position(&self, t: &PureTensor) -> usize {
        match self.index.get(t) {
            Some(&i) => i,
            None => panic!(
                "tensor {} missing from slice ({}, {}, {})",
                t.display(&self.graph),
                self.q,
                self.n,
                self.mode
            ),
        }
    }
}

fn check_reduced_ok(g: &Graph) -> Result<(), ComplexError> {
    match g.isolated_vertices().first() {
        Some(&v) => Err(ComplexError::IsolatedVertexInReducedMode(g.vertex_id(v).to_string())),
        None => Ok(()),
    }
}

/// Enumerates the basis of bigrade `(q, n)`, sorted by (monomial, states).
pub fn enumerate_basis(graph: Arc<Graph>, q: usize, n: usize, mode: Mode) -> Result<BigradeSlice, ComplexError> {
    if mode == Mode::Reduced {
        check_reduced_ok(&graph)?;
    }
    Ok(build_slice(graph, q, n, mode))
}

fn build_slice(graph: Arc<Graph>, q: usize, n: usize, mode: Mode) -> BigradeSlice {
    let g = &*graph;
    let nv = g.num_vertices();
    let options: Vec<Vec<VertexState>> = (0..nv)
        .map(|v| {
            let v = VertexIx(v);
            let mut opts = vec![VertexState::Empty];
            match mode {
                Mode::Full => {
                    opts.push(VertexState::VertexGen);
                    opts.extend(g.incident_edges(v).iter().map(|&e| VertexState::Half(e)));
                }
                Mode::Reduced => {
                    if let Some(a) = anchor(g, v) {
                        opts.extend(
                            g.incident_edges(v)
                                .iter()
                                .skip(1)
                                .map(|&e| VertexState::HalfDiff(e, a)),
                        );
                    }
                }
            }
            opts
        })
        .collect();
    // odd_capacity[i]: how many of vertices i.. can still carry an odd state
    let mut odd_capacity = vec![0usize; nv + 1];
    for v in (0..nv).rev() {
        odd_capacity[v] = odd_capacity[v + 1] + usize::from(options[v].iter().any(|s| s.is_odd()));
    }

    let mut state_vectors: Vec<(Vec<VertexState>, usize)> = Vec::new();
    let mut cur = vec![VertexState::Empty; nv];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        v: usize,
        q_left: usize,
        w: usize,
        n: usize,
        options: &[Vec<VertexState>],
        odd_capacity: &[usize],
        cur: &mut Vec<VertexState>,
        out: &mut Vec<(Vec<VertexState>, usize)>,
    ) {
        if q_left > odd_capacity[v] || w > n {
            return;
        }
        if v == options.len() {
            out.push((cur.clone(), w));
            return;
        }
        for s in &options[v] {
            let odd = usize::from(s.is_odd());
            if odd > q_left {
                continue;
            }
            cur[v] = *s;
            rec(v + 1, q_left - odd, w + s.weight(), n, options, odd_capacity, cur, out);
        }
        cur[v] = VertexState::Empty;
    }
    rec(0, q, 0, n, &options, &odd_capacity, &mut cur, &mut state_vectors);

    let mut monomial_cache: HashMap<usize, Vec<Monomial>> = HashMap::new();
    let mut basis = Vec::new();
    for (states, w) in state_vectors {
        let d = n - w;
        let monos = monomial_cache
            .entry(d)
            .or_insert_with(|| Monomial::all_of_degree(g.num_edges(), d));
        for m in monos.iter() {
            basis.push(PureTensor {
                monomial: m.clone(),
                states: states.clone(),
            });
        }
    }
    basis.sort();
    let index = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    BigradeSlice {
        graph,
        q,
        n,
        mode,
        basis,
        index,
    }
}

fn same_graph(a: &BigradeSlice, b: &BigradeSlice) -> bool {
    Arc::ptr_eq(&a.graph, &b.graph) || *a.graph == *b.graph
}

/// Terms of `∂t` as `(tensor, coefficient)`.
pub fn boundary_terms(t: &PureTensor) -> Vec<(PureTensor, i64)> {
    let mut terms = Vec::new();
    let mut odd_before = 0usize;
    for (p, s) in t.states.iter().enumerate() {
        let sign = if odd_before.is_multiple_of(2) { 1 } else { -1 };
        match *s {
            VertexState::Half(e) => {
                let mut a = t.clone();
                a.states[p] = VertexState::Empty;
                a.monomial = a.monomial.times(e);
                terms.push((a, sign));
                let mut b = t.clone();
                b.states[p] = VertexState::VertexGen;
                terms.push((b, -sign));
                odd_before += 1;
            }
            VertexState::HalfDiff(i, j) => {
                let mut base = t.clone();
                base.states[p] = VertexState::Empty;
                let mut a = base.clone();
                a.monomial = a.monomial.times(i);
                terms.push((a, sign));
                base.monomial = base.monomial.times(j);
                terms.push((base, -sign));
                odd_before += 1;
            }
            _ => {}
        }
    }
    terms
}

/// Matrix of `∂ : (q, n) -> (q-1, n)` in the given bases.
pub fn boundary_matrix(source: &BigradeSlice, target: &BigradeSlice) -> Result<IntegerMatrix, ComplexError> {
    if !same_graph(source, target)
        || source.mode != target.mode
        || source.n != target.n
        || source.q != target.q + 1
    {
        return Err(ComplexError::SliceMismatch(format!(
            "({}, {}, {}) -> ({}, {}, {})",
            source.q, source.n, source.mode, target.q, target.n, target.mode
        )));
    }
    let columns = source
        .basis
        .iter()
        .map(|t| {
            boundary_terms(t)
                .into_iter()
                .map(|(s, c)| (target.expect_position(&s), c))
                .collect()
        })
        .collect();
    Ok(IntegerMatrix::from_columns_accumulate(target.len(), columns))
}

/// Matrix of multiplication by `x_e : (q, n) -> (q, n+1)`.
pub fn edge_action_matrix(source: &BigradeSlice, target: &BigradeSlice, e: EdgeIx) -> Result<IntegerMatrix, ComplexError> {
    if e.0 >= source.graph.num_edges() {
        return Err(ComplexError::UnknownEdge(e.0));
    }
    if !same_graph(source, target)
        || source.mode != target.mode
        || source.q != target.q
        || source.n + 1 != target.n
    {
        return Err(ComplexError::SliceMismatch(format!(
            "edge action ({}, {}) -> ({}, {})",
            source.q, source.n, target.q, target.n
        )));
    }
    let columns = source
        .basis
        .iter()
        .map(|t| {
            let image = PureTensor {
                monomial: t.monomial.times(e),
                states: t.states.clone(),
            };
            vec![(target.expect_position(&image), 1)]
        })
        .collect();
    Ok(IntegerMatrix::from_columns_accumulate(target.len(), columns))
}

/// Expands a product of per-vertex linear combinations into pure tensors.
fn expand(
    monomial: Monomial,
    nv: usize,
    factors: &[(usize, Vec<(VertexState, i64)>)],
    sign: i64,
) -> Vec<(PureTensor, i64)> {
    let mut acc = vec![(
        PureTensor {
            monomial,
            states: vec![VertexState::Empty; nv],
        },
        sign,
    )];
    for (pos, combo) in factors {
        let mut next = Vec::with_capacity(acc.len() * combo.len());
        for (t, c) in &acc {
            for (s, k) in combo {
                let mut t2 = t.clone();
                t2.states[*pos] = *s;
                next.push((t2, c * k));
            }
        }
        acc = next;
    }
    acc
}

/// Matrix of the inclusion of the reduced slice into the full slice.
pub fn inclusion_matrix(reduced: &BigradeSlice, full: &BigradeSlice) -> Result<IntegerMatrix, ComplexError> {
    if !same_graph(reduced, full)
        || reduced.mode != Mode::Reduced
        || full.mode != Mode::Full
        || reduced.q != full.q
        || reduced.n != full.n
    {
        return Err(ComplexError::SliceMismatch("inclusion needs reduced -> full at one bigrade".into()));
    }
    let nv = reduced.graph.num_vertices();
    let columns = reduced
        .basis
        .iter()
        .map(|t| {
            let factors: Vec<(usize, Vec<(VertexState, i64)>)> = t
                .states
                .iter()
                .enumerate()
                .filter_map(|(p, s)| match *s {
                    VertexState::HalfDiff(i, j) => Some((
                        p,
                        vec![(VertexState::Half(i), 1), (VertexState::Half(j), -1)],
                    )),
                    VertexState::Empty => None,
                    other => Some((p, vec![(other, 1)])),
                })
                .collect();
            expand(t.monomial.clone(), nv, &factors, 1)
                .into_iter()
                .map(|(s, c)| (full.expect_position(&s), c))
                .collect()
        })
        .collect();
    Ok(IntegerMatrix::from_columns_accumulate(full.len(), columns))
}

/// Sign of the permutation that sorts `keys`.
pub(crate) fn sort_sign(keys: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if keys[i] > keys[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Chain map induced by an injective graph homomorphism, at one bigrade.
///
/// Odd factors are reordered into the target's vertex order, contributing the
/// sign of that permutation.
pub fn induced_map(hom: &GraphHom, source: &BigradeSlice, target: &BigradeSlice) -> Result<IntegerMatrix, ComplexError> {
    if !hom.is_injective() {
        return Err(ComplexError::NotInjective);
    }
    if *source.graph != **hom.source()
        || *target.graph != **hom.target()
        || source.mode != target.mode
        || source.q != target.q
        || source.n != target.n
    {
        return Err(ComplexError::SliceMismatch("induced map bigrades or graphs differ".into()));
    }
    let tg = &**hom.target();
    let columns = source
        .basis
        .iter()
        .map(|t| {
            let mut exps = vec![0u32; tg.num_edges()];
            for (e, &k) in t.monomial.0.iter().enumerate() {
                exps[hom.map_edge(EdgeIx(e)).0] += k;
            }
            let mut factors = Vec::new();
            let mut odd_positions = Vec::new();
            for (v, s) in t.states.iter().enumerate() {
                let w = hom.map_vertex(VertexIx(v));
                let combo = match *s {
                    VertexState::Empty => continue,
                    VertexState::VertexGen => vec![(VertexState::VertexGen, 1)],
                    VertexState::Half(e) => vec![(VertexState::Half(hom.map_edge(e)), 1)],
                    VertexState::HalfDiff(i, j) => {
                        let a = anchor(tg, w).expect("image vertex has edges");
                        let (fi, fj) = (hom.map_edge(i), hom.map_edge(j));
                        let mut c = Vec::new();
                        if fi != a {
                            c.push((VertexState::HalfDiff(fi, a), 1));
                        }
                        if fj != a {
                            c.push((VertexState::HalfDiff(fj, a), -1));
                        }
                        c
                    }
                };
                if s.is_odd() {
                    odd_positions.push(w.0);
                }
                factors.push((w.0, combo));
            }
            let sign = sort_sign(&odd_positions);
            expand(Monomial(exps), tg.num_vertices(), &factors, sign)
                .into_iter()
                .map(|(s, c)| (target.expect_position(&s), c))
                .collect()
        })
        .collect();
    Ok(IntegerMatrix::from_columns_accumulate(target.len(), columns))
}

/// A graph's complex in one mode, with slices built lazily and memoized.
#[derive(Debug)]
pub struct SwComplex {
    graph: Arc<Graph>,
    mode: Mode,
    cache: RwLock<HashMap<(usize, usize), Arc<BigradeSlice>>>,
}

impl SwComplex {
    pub fn new(graph: Arc<Graph>, mode: Mode) -> Result<Self, ComplexError> {
        if mode == Mode::Reduced {
            check_reduced_ok(&graph)?;
        }
        Ok(SwComplex {
            graph,
            mode,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Upper bound on homological degrees with nonempty slices.
    pub fn max_q(&self) -> usize {
        let need = match self.mode {
            Mode::Full => 1,
            Mode::Reduced => 2,
        };
        (0..self.graph.num_vertices())
            .filter(|&v| self.graph.degree(VertexIx(v)) >= need)
            .count()
    }

    pub fn slice(&self, q: usize, n: usize) -> Arc<BigradeSlice> {
        if let Some(s) = self.cache.read().expect("cache lock").get(&(q, n)) {
            return s.clone();
        }
        let built = Arc::new(build_slice(self.graph.clone(), q, n, self.mode));
        self.cache
            .write()
            .expect("cache lock")
            .entry((q, n))
            .or_insert(built)
            .clone()
    }

    pub fn dim(&self, q: usize, n: usize) -> usize {
        if q > self.max_q() || q > n {
            return 0;
        }
        self.slice(q, n).len()
    }

    /// `∂ : (q, n) -> (q-1, n)`; the zero map out of degree 0.
    pub fn boundary(&self, q: usize, n: usize) -> IntegerMatrix {
        if q == 0 {
            return IntegerMatrix::zeros(0, self.dim(0, n));
        }
        if q > self.max_q() || q > n {
            return IntegerMatrix::zeros(self.dim(q - 1, n), 0);
        }
        boundary_matrix(&self.slice(q, n), &self.slice(q - 1, n)).expect("slices compatible")
    }

    pub fn edge_action(&self, q: usize, n: usize, e: EdgeIx) -> Result<IntegerMatrix, ComplexError> {
        edge_action_matrix(&self.slice(q, n), &self.slice(q, n + 1), e)
    }

    /// Coordinate-list dump of `∂` at `(q, n)`.
    pub fn dump_boundary(&self, label: &str, q: usize, n: usize) -> String {
        let header = format!(
            "graph {label}\nbigrade ({q},{n}) -> ({},{n})\nmode {}",
            q as i64 - 1,
            self.mode
        );
        self.boundary(q, n).to_coordinate_list(&header)
    }
}
