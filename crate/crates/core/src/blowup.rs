//! Blow-up of a graph at a vertex, the short exact sequence of reduced
//! complexes it induces, and rank-level verification of the long exact
//! sequence in homology.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{anchor, BigradeSlice, ComplexError, Mode, Monomial, PureTensor, SwComplex, VertexState};
use crate::field::{kernel_basis, rank_over, Echelon, Field, FieldKind, Rationals, SparseMatrix, SparseVec};
use crate::graph::{EdgeIx, Graph, GraphError, VertexIx};
use crate::matrix::IntegerMatrix;
use crate::module::{generator_degrees, truncated_module};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("exactness failure: {0}")]
    ExactnessFailure(String),
    #[error("regression failure: {0}")]
    RegressionFailure(String),
}

/// `Bl_v(G)`: `v` replaced by one degree-one vertex `{v}x{edge}` per edge at `v`.
#[derive(Clone, Debug)]
pub struct Blowup {
    pub original: Arc<Graph>,
    pub vertex: String,
    pub result: Arc<Graph>,
    /// Edge id at `v` -> new vertex id.
    pub half_edge_vertex_map: BTreeMap<String, String>,
    /// Result vertex index -> original vertex index, `None` for new vertices.
    origin: Vec<Option<VertexIx>>,
    v: VertexIx,
}

pub fn blow_up(g: &Graph, v: &str) -> Result<Blowup, BlowupError> {
    let vix = g.vertex(v)?;
    let mut half_edge_vertex_map = BTreeMap::new();
    for &e in g.incident_edges(vix) {
        half_edge_vertex_map.insert(g.edge_id(e).to_string(), format!("{v}x{}", g.edge_id(e)));
    }
    let mut vertices: Vec<String> = g.vertex_ids().iter().filter(|id| *id != v).cloned().collect();
    vertices.extend(half_edge_vertex_map.values().cloned());
    let edges: Vec<(String, [String; 2])> = g
        .edges()
        .iter()
        .map(|e| {
            let end = |x: VertexIx| {
                if x == vix {
                    half_edge_vertex_map[&e.id].clone()
                } else {
                    g.vertex_id(x).to_string()
                }
            };
            (e.id.clone(), [end(e.ends.0), end(e.ends.1)])
        })
        .collect();
    let result = Graph::new(vertices, edges)?;
    let origin = result
        .vertex_ids()
        .iter()
        .map(|id| {
            if half_edge_vertex_map.values().any(|n| n == id) {
                None
            } else {
                Some(g.vertex(id).expect("surviving vertex"))
            }
        })
        .collect();
    Ok(Blowup {
        original: Arc::new(g.clone()),
        vertex: v.to_string(),
        result: Arc::new(result),
        half_edge_vertex_map,
        origin,
        v: vix,
    })
}

/// `H̃(v)`: the span of the differences `h_i - h_0` of half-edges at `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfEdgeDifferenceModule {
    pub vertex: String,
    /// `(edge_i, anchor_edge)` for each canonical difference.
    pub basis: Vec<(String, String)>,
    pub rank: usize,
}

impl Blowup {
    pub fn difference_module(&self) -> HalfEdgeDifferenceModule {
        let g = &self.original;
        let basis: Vec<(String, String)> = match anchor(g, self.v) {
            Some(a) => g
                .incident_edges(self.v)
                .iter()
                .skip(1)
                .map(|&e| (g.edge_id(e).to_string(), g.edge_id(a).to_string()))
                .collect(),
            None => Vec::new(),
        };
        HalfEdgeDifferenceModule {
            vertex: self.vertex.clone(),
            rank: basis.len(),
            basis,
        }
    }

    fn mu_minus_one(&self) -> usize {
        self.original.degree(self.v).saturating_sub(1)
    }

    /// Position of `e` among the non-anchor edges at `v`.
    fn difference_index(&self, e: EdgeIx) -> usize {
        let edges = self.original.incident_edges(self.v);
        edges.iter().position(|&x| x == e).expect("edge at v") - 1
    }

    fn restrict(&self, t: &PureTensor) -> PureTensor {
        PureTensor {
            monomial: t.monomial.clone(),
            states: self
                .origin
                .iter()
                .map(|o| o.map_or(VertexState::Empty, |ix| t.states[ix.0]))
                .collect(),
        }
    }
}

/// The three reduced complexes of the sequence
/// `0 -> Sw̃(Bl_v G) -> Sw̃(G) -> H̃(v) ⊗ Sw̃(Bl_v G){1} -> 0`.
pub struct BlowupSequence {
    pub blowup: Blowup,
    pub sub: SwComplex,
    pub middle: SwComplex,
}

impl BlowupSequence {
    pub fn new(g: &Graph, v: &str) -> Result<Self, BlowupError> {
        let blowup = blow_up(g, v)?;
        let middle = SwComplex::new(blowup.original.clone(), Mode::Reduced)?;
        let sub = SwComplex::new(blowup.result.clone(), Mode::Reduced)?;
        Ok(BlowupSequence { blowup, sub, middle })
    }

    fn sub_dim(&self, q: usize, n: usize) -> usize {
        self.sub.dim(q, n)
    }

    /// Dimension of the cokernel term `H̃(v) ⊗ Sw̃(Bl)_{(q-1, n-1)}`.
    pub fn quotient_dim(&self, q: usize, n: usize) -> usize {
        if q == 0 || n == 0 {
            return 0;
        }
        self.blowup.mu_minus_one() * self.sub_dim(q - 1, n - 1)
    }

    fn sub_slice(&self, q: usize, n: usize) -> Option<Arc<BigradeSlice>> {
        (self.sub_dim(q, n) > 0).then(|| self.sub.slice(q, n))
    }

    fn middle_slice(&self, q: usize, n: usize) -> Option<Arc<BigradeSlice>> {
        (self.middle.dim(q, n) > 0).then(|| self.middle.slice(q, n))
    }

    /// `Sw̃(Bl)_{(q,n)} -> Sw̃(G)_{(q,n)}`: pure tensors with empty state at `v`.
    pub fn inclusion(&self, q: usize, n: usize) -> IntegerMatrix {
        let rows = self.middle.dim(q, n);
        let Some(src) = self.sub_slice(q, n) else {
            return IntegerMatrix::zeros(rows, 0);
        };
        let tgt = self.middle.slice(q, n);
        let nv = self.blowup.original.num_vertices();
        let columns = src
            .basis()
            .iter()
            .map(|t| {
                let mut states = vec![VertexState::Empty; nv];
                for (b, o) in self.blowup.origin.iter().enumerate() {
                    if let Some(ix) = o {
                        states[ix.0] = t.states[b];
                    }
                }
                let image = PureTensor {
                    monomial: t.monomial.clone(),
                    states,
                };
                vec![(tgt.position(&image).expect("included tensor"), 1)]
            })
            .collect();
        IntegerMatrix::from_columns_accumulate(rows, columns)
    }

    /// `Sw̃(G)_{(q,n)} -> H̃(v) ⊗ Sw̃(Bl)_{(q-1,n-1)}`: extracts the difference
    /// at `v` with the sign of moving it past the odd factors before it.
    /// Rows are indexed by `i * dim + j` for difference `i` and basis tensor `j`.
    pub fn projection(&self, q: usize, n: usize) -> IntegerMatrix {
        let rows = self.quotient_dim(q, n);
        let Some(src) = self.middle_slice(q, n) else {
            return IntegerMatrix::zeros(rows, 0);
        };
        if rows == 0 {
            return IntegerMatrix::zeros(0, src.len());
        }
        let tgt = self.sub.slice(q - 1, n - 1);
        let block = tgt.len();
        let v = self.blowup.v.0;
        let columns = src
            .basis()
            .iter()
            .map(|t| match t.states[v] {
                VertexState::HalfDiff(e, _) => {
                    let odd_before = t.states[..v].iter().filter(|s| s.is_odd()).count();
                    let sign = if odd_before % 2 == 0 { 1 } else { -1 };
                    let mut rest = t.clone();
                    rest.states[v] = VertexState::Empty;
                    let rest = self.blowup.restrict(&rest);
                    let j = tgt.position(&rest).expect("restricted tensor");
                    vec![(self.blowup.difference_index(e) * block + j, sign)]
                }
                _ => Vec::new(),
            })
            .collect();
        IntegerMatrix::from_columns_accumulate(rows, columns)
    }

    /// Differential of the cokernel complex, `-(id ⊗ ∂_Bl)`, from `(q, n)` to `(q-1, n)`.
    pub fn quotient_boundary(&self, q: usize, n: usize) -> IntegerMatrix {
        let (rows, cols) = (
            if q == 0 { 0 } else { self.quotient_dim(q - 1, n) },
            self.quotient_dim(q, n),
        );
        if rows == 0 || cols == 0 {
            return IntegerMatrix::zeros(rows, cols);
        }
        let inner = self.sub.boundary(q - 1, n - 1);
        let (ir, ic) = inner.shape();
        let mut triplets = Vec::new();
        for i in 0..self.blowup.mu_minus_one() {
            for (r, c, x) in inner.triplets() {
                triplets.push((i * ir + r, i * ic + c, -x.clone()));
            }
        }
        IntegerMatrix::from_triplets(rows, cols, triplets).expect("block entries in range")
    }

    /// `(inclusion, projection)` at `(q, n)`.
    pub fn ses_matrices(&self, q: usize, n: usize) -> (IntegerMatrix, IntegerMatrix) {
        (self.inclusion(q, n), self.projection(q, n))
    }

    fn max_q(&self) -> usize {
        self.middle.max_q().max(self.sub.max_q() + 1)
    }
}

/// Free function form of [`BlowupSequence::ses_matrices`].
pub fn ses_matrices(g: &Graph, v: &str, q: usize, n: usize) -> Result<(IntegerMatrix, IntegerMatrix), BlowupError> {
    Ok(BlowupSequence::new(g, v)?.ses_matrices(q, n))
}

/// Rank of the map induced on homology by a chain map `f : X_q -> Y_q`.
fn induced_rank<F: Field>(field: &F, f: &IntegerMatrix, src_out: &IntegerMatrix, tgt_in: &IntegerMatrix) -> usize {
    if f.cols() == 0 || f.rows() == 0 {
        return 0;
    }
    let fs = SparseMatrix::from_integer(field, f);
    let mut ech = Echelon::new(field.clone());
    for col in SparseMatrix::from_integer(field, tgt_in).columns {
        ech.insert(col, Vec::new());
    }
    let boundaries = ech.rank();
    for z in kernel_basis(field, &SparseMatrix::from_integer(field, src_out)) {
        ech.insert(fs.apply(field, &z), Vec::new());
    }
    ech.rank() - boundaries
}

fn homology_dim<F: Field>(field: &F, dim: usize, d_out: &IntegerMatrix, d_in: &IntegerMatrix) -> usize {
    dim - rank_over(field, d_out) - rank_over(field, d_in)
}

/// Chain-level checks at one bigrade.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesCheck {
    pub q: usize,
    pub n: usize,
    pub dims: [usize; 3],
    pub inclusion_rank: usize,
    pub projection_rank: usize,
    pub composite_zero: bool,
    pub chain_maps: bool,
    pub exact: bool,
}

/// Homology-level bookkeeping at one `(q, n)` of the long exact sequence
/// `H_q(Bl) -> H_q(G) -> H_q(C) -> H_{q-1}(Bl)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesSegment {
    pub q: usize,
    pub n: usize,
    /// `dim H_q` of `Sw̃(Bl)`, `Sw̃(G)` and the cokernel complex.
    pub homology: [usize; 3],
    pub inclusion_rank: usize,
    pub projection_rank: usize,
    /// Inferred rank of the connecting map `H_q(C) -> H_{q-1}(Bl)`.
    pub connecting_rank: i64,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesReport {
    pub graph: String,
    pub vertex: String,
    pub field: FieldKind,
    pub q_max: usize,
    pub n_max: usize,
    pub ses: Vec<SesCheck>,
    pub segments: Vec<LesSegment>,
    /// `Σ_q (-1)^q (h_q(Bl) - h_q(G) + h_q(C))` per weight.
    pub alternating_sums: Vec<(usize, i64)>,
    pub dimension_identity: bool,
    pub passed: bool,
}

impl LesReport {
    pub fn ensure(&self) -> Result<(), BlowupError> {
        if self.passed {
            return Ok(());
        }
        let first = self
            .ses
            .iter()
            .find(|c| !c.exact)
            .map(|c| format!("SES at ({}, {})", c.q, c.n))
            .or_else(|| {
                self.segments
                    .iter()
                    .find(|s| !s.consistent)
                    .map(|s| format!("LES segment at ({}, {})", s.q, s.n))
            })
            .unwrap_or_else(|| "alternating sum or dimension identity".into());
        Err(BlowupError::ExactnessFailure(first))
    }
}

/// Checks the SES degreewise for `q <= q_max`, `n <= n_max`, and the long exact
/// sequence in homology over `field` at every weight `n <= n_max`.
pub fn verify_les(g: &Graph, v: &str, q_max: usize, n_max: usize, field: FieldKind) -> Result<LesReport, BlowupError> {
    let seq = BlowupSequence::new(g, v)?;
    crate::with_field!(field, |f| Ok(verify_with(&f, &seq, q_max, n_max)))
}

fn verify_with<F: Field>(f: &F, seq: &BlowupSequence, q_max: usize, n_max: usize) -> LesReport {
    let bigrades: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|n| (0..=q_max.min(n)).map(move |q| (q, n)))
        .collect();
    let ses: Vec<SesCheck> = bigrades.par_iter().map(|&(q, n)| ses_check(f, seq, q, n)).collect();
    let dimension_identity = bigrades
        .iter()
        .all(|&(q, n)| seq.middle.dim(q, n) == seq.sub_dim(q, n) + seq.quotient_dim(q, n));

    let top = seq.max_q() + 1;
    let per_weight: Vec<(Vec<LesSegment>, (usize, i64))> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let h: Vec<[usize; 3]> = (0..=top + 1).map(|q| homology_triple(f, seq, q, n)).collect();
            let mut segments = Vec::new();
            let mut alt = 0i64;
            for q in 0..=top {
                let [a, b, c] = h[q];
                let sign = if q % 2 == 0 { 1 } else { -1 };
                alt += sign * (a as i64 - b as i64 + c as i64);
                let inc = induced_rank(f, &seq.inclusion(q, n), &seq.sub.boundary(q, n), &seq.middle.boundary(q + 1, n));
                let proj = induced_rank(
                    f,
                    &seq.projection(q, n),
                    &seq.middle.boundary(q, n),
                    &seq.quotient_boundary(q + 1, n),
                );
                let connecting = c as i64 - proj as i64;
                // Exactness at H_q(G), at H_q(C), and at H_{q-1}(Bl).
                let at_middle = b - proj == inc;
                let at_quotient = connecting >= 0;
                let at_sub = if q == 0 {
                    connecting == 0
                } else {
                    let inc_below = induced_rank(
                        f,
                        &seq.inclusion(q - 1, n),
                        &seq.sub.boundary(q - 1, n),
                        &seq.middle.boundary(q, n),
                    );
                    h[q - 1][0] as i64 - inc_below as i64 == connecting
                };
                let at_top = q < top || (h[q + 1] == [0, 0, 0]);
                if q <= seq.max_q() || a + b + c > 0 {
                    segments.push(LesSegment {
                        q,
                        n,
                        homology: [a, b, c],
                        inclusion_rank: inc,
                        projection_rank: proj,
                        connecting_rank: connecting,
                        consistent: at_middle && at_quotient && at_sub && at_top,
                    });
                }
            }
            (segments, (n, alt))
        })
        .collect();
    let mut segments = Vec::new();
    let mut alternating_sums = Vec::new();
    for (s, a) in per_weight {
        segments.extend(s);
        alternating_sums.push(a);
    }
    let passed = dimension_identity
        && ses.iter().all(|c| c.exact)
        && segments.iter().all(|s| s.consistent)
        && alternating_sums.iter().all(|(_, a)| *a == 0);
    LesReport {
        graph: seq.blowup.original.to_string(),
        vertex: seq.blowup.vertex.clone(),
        field: f.kind(),
        q_max,
        n_max,
        ses,
        segments,
        alternating_sums,
        dimension_identity,
        passed,
    }
}

fn homology_triple<F: Field>(f: &F, seq: &BlowupSequence, q: usize, n: usize) -> [usize; 3] {
    [
        homology_dim(f, seq.sub_dim(q, n), &seq.sub.boundary(q, n), &seq.sub.boundary(q + 1, n)),
        homology_dim(f, seq.middle.dim(q, n), &seq.middle.boundary(q, n), &seq.middle.boundary(q + 1, n)),
        homology_dim(f, seq.quotient_dim(q, n), &seq.quotient_boundary(q, n), &seq.quotient_boundary(q + 1, n)),
    ]
}

fn ses_check<F: Field>(f: &F, seq: &BlowupSequence, q: usize, n: usize) -> SesCheck {
    let dims = [seq.sub_dim(q, n), seq.middle.dim(q, n), seq.quotient_dim(q, n)];
    let (inc, proj) = seq.ses_matrices(q, n);
    let composite_zero = proj.mul(&inc).map(|m| m.is_zero()).unwrap_or(false);
    let inclusion_rank = rank_over(f, &inc);
    let projection_rank = rank_over(f, &proj);
    // ι∂ = ∂ι and π∂ = d_C π, both into bigrade (q-1, n).
    let chain_maps = q == 0 || {
        let lhs = seq.middle.boundary(q, n).mul(&inc);
        let rhs = seq.inclusion(q - 1, n).mul(&seq.sub.boundary(q, n));
        let l2 = seq.projection(q - 1, n).mul(&seq.middle.boundary(q, n));
        let r2 = seq.quotient_boundary(q, n).mul(&proj);
        matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b) && matches!((l2, r2), (Ok(a), Ok(b)) if a == b)
    };
    let exact = composite_zero
        && chain_maps
        && inclusion_rank == dims[0]
        && projection_rank == dims[2]
        && dims[0] + dims[2] == dims[1];
    SesCheck {
        q,
        n,
        dims,
        inclusion_rank,
        projection_rank,
        composite_zero,
        chain_maps,
        exact,
    }
}

/// Results of the star-graph computation for one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarRegressionEntry {
    pub n: usize,
    /// The three-term element is a cycle of `Sw̃(K_{n,1})` in bigrade `(1, 2)`.
    pub element_is_cycle: bool,
    /// ... and lies in the kernel of `H̃(u) ⊗ A{1} -> A`, `(h_i - h_0) ⊗ f ↦ (x_i - x_0) f`.
    pub element_in_kernel: bool,
    /// ... and represents a nonzero class in `H_1`.
    pub element_nonzero_in_homology: bool,
    /// `dim` of that kernel per weight `0..=weight_max`.
    pub kernel_dims: Vec<usize>,
    /// Weights of minimal generators of the kernel, with counts.
    pub kernel_generator_weights: BTreeMap<usize, usize>,
    /// The images of the element under all injections `[3] -> [n]` span the
    /// kernel in weight 2, i.e. the kernel is generated from `n = 3`.
    pub generated_from_three_copies: bool,
    /// `H_1(K_{n,1})` is generated in weight 2.
    pub h1_generator_weights: BTreeMap<usize, usize>,
    /// The kernel agrees dimensionwise with `H_1` of the star.
    pub kernel_matches_h1: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarRegressionReport {
    pub weight_max: usize,
    pub entries: Vec<StarRegressionEntry>,
    pub passed: bool,
}

impl StarRegressionReport {
    pub fn ensure(&self) -> Result<(), BlowupError> {
        match self.entries.iter().find(|e| !entry_passes(e)) {
            None => Ok(()),
            Some(e) => Err(BlowupError::RegressionFailure(format!("n = {}: {e:?}", e.n))),
        }
    }
}

fn entry_passes(e: &StarRegressionEntry) -> bool {
    e.element_is_cycle
        && e.element_in_kernel
        && e.element_nonzero_in_homology
        && e.generated_from_three_copies
        && e.kernel_matches_h1
        && e.kernel_generator_weights.keys().all(|&w| w == 2)
        && e.h1_generator_weights.keys().all(|&w| w == 2)
}

/// The element `(h_a - h_b) x_c + (h_c - h_a) x_b + (h_b - h_c) x_a` of
/// `Sw̃(K_{n,1})_{(1,2)}` for distinct edges `a, b, c`, in slice coordinates.
fn three_term_element(g: &Graph, slice: &BigradeSlice, [a, b, c]: [EdgeIx; 3]) -> SparseVec<num_bigint::BigInt> {
    let u = g.vertex("u").expect("centre");
    let anchor = anchor(g, u).expect("centre has edges");
    // h_x - h_y in the anchor basis.
    let diff = |x: EdgeIx, y: EdgeIx| -> Vec<(VertexState, i64)> {
        let mut out = Vec::new();
        if x != anchor {
            out.push((VertexState::HalfDiff(x, anchor), 1));
        }
        if y != anchor {
            out.push((VertexState::HalfDiff(y, anchor), -1));
        }
        out
    };
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for (x, y, m) in [(a, b, c), (c, a, b), (b, c, a)] {
        for (s, k) in diff(x, y) {
            let mut states = vec![VertexState::Empty; g.num_vertices()];
            states[u.0] = s;
            let t = PureTensor {
                monomial: Monomial::one(g.num_edges()).times(m),
                states,
            };
            *acc.entry(slice.position(&t).expect("basis tensor")).or_default() += k;
        }
    }
    acc.into_iter()
        .filter(|(_, k)| *k != 0)
        .map(|(i, k)| (i, num_bigint::BigInt::from(k)))
        .collect()
}

/// Kernel of `φ : H̃ ⊗ A{1} -> A` for the star on `n` edges, weight by weight.
/// Domain coordinates in weight `w`: `i * |A_{w-1}| + position of monomial`.
struct DifferenceKernel {
    monomials: Vec<Vec<Monomial>>,
    index: Vec<BTreeMap<Monomial, usize>>,
    kernels: Vec<Vec<SparseVec<<Rationals as Field>::Elem>>>,
}

impl DifferenceKernel {
    fn new(n: usize, weight_max: usize) -> Self {
        let f = Rationals;
        let monomials: Vec<Vec<Monomial>> = (0..=weight_max).map(|d| Monomial::all_of_degree(n, d)).collect();
        let index: Vec<BTreeMap<Monomial, usize>> = monomials
            .iter()
            .map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let mut kernels = vec![Vec::new()];
        for w in 1..=weight_max {
            let src = &monomials[w - 1];
            let mut columns = Vec::new();
            for i in 1..n {
                for m in src {
                    let terms = vec![
                        (index[w][&m.times(EdgeIx(i))], f.one()),
                        (index[w][&m.times(EdgeIx(0))], f.neg(&f.one())),
                    ];
                    columns.push(crate::field::collect_terms(&f, terms));
                }
            }
            let phi = SparseMatrix {
                rows: monomials[w].len(),
                cols: columns.len(),
                columns,
            };
            kernels.push(if n == 0 { Vec::new() } else { kernel_basis(&f, &phi) });
        }
        DifferenceKernel {
            monomials,
            index,
            kernels,
        }
    }

    fn block(&self, w: usize) -> usize {
        self.monomials[w - 1].len()
    }

    /// Multiplies a weight-`w` kernel vector by `x_e`.
    fn times(&self, v: &SparseVec<<Rationals as Field>::Elem>, w: usize, e: usize) -> SparseVec<<Rationals as Field>::Elem> {
        let (b, b2) = (self.block(w), self.block(w + 1));
        let terms = v
            .iter()
            .map(|(k, x)| {
                let (i, j) = (k / b, k % b);
                let m = self.monomials[w - 1][j].times(EdgeIx(e));
                (i * b2 + self.index[w][&m], x.clone())
            })
            .collect();
        crate::field::collect_terms(&Rationals, terms)
    }

    fn generator_weights(&self, n: usize) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for w in 1..self.kernels.len() {
            let mut ech = Echelon::new(Rationals);
            if w >= 2 {
                for v in &self.kernels[w - 1] {
                    for e in 0..n {
                        ech.insert(self.times(v, w - 1, e), Vec::new());
                    }
                }
            }
            let gens = self.kernels[w].len() - ech.rank();
            if gens > 0 {
                out.insert(w, gens);
            }
        }
        out
    }

    /// Domain vector of `(e_a - e_b) ⊗ x_c + (e_c - e_a) ⊗ x_b + (e_b - e_c) ⊗ x_a`
    /// (0-based edges, `e_0` the anchor).
    fn element(&self, [a, b, c]: [usize; 3]) -> SparseVec<<Rationals as Field>::Elem> {
        let f = Rationals;
        let bsz = self.block(2);
        let mut terms = Vec::new();
        for (x, y, m) in [(a, b, c), (c, a, b), (b, c, a)] {
            let j = self.index[1][&Monomial::one(self.monomials[1][0].0.len()).times(EdgeIx(m))];
            for (e, k) in [(x, 1), (y, -1)] {
                if e != 0 {
                    terms.push(((e - 1) * bsz + j, f.embed_i64(k)));
                }
            }
        }
        crate::field::collect_terms(&f, terms)
    }

    fn contains(&self, w: usize, v: &SparseVec<<Rationals as Field>::Elem>) -> bool {
        let mut ech = Echelon::new(Rationals);
        for k in &self.kernels[w] {
            ech.insert(k.clone(), Vec::new());
        }
        ech.contains(v)
    }
}

/// Reproduces the star-graph computation for `n = 3..=5` up to `weight_max`.
pub fn star_example_regression(weight_max: usize) -> Result<StarRegressionReport, BlowupError> {
    let weight_max = weight_max.max(3);
    let entries = (3..=5usize)
        .into_par_iter()
        .map(|n| star_entry(n, weight_max))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = entries.iter().all(entry_passes);
    Ok(StarRegressionReport {
        weight_max,
        entries,
        passed,
    })
}

fn star_entry(n: usize, weight_max: usize) -> Result<StarRegressionEntry, BlowupError> {
    let f = Rationals;
    let g = crate::corpus::star(n);
    let complex = SwComplex::new(Arc::new(g.clone()), Mode::Reduced)?;
    let slice = complex.slice(1, 2);
    let element = three_term_element(&g, &slice, [EdgeIx(0), EdgeIx(1), EdgeIx(2)]);
    let boundary = SparseMatrix::from_integer(&f, &complex.boundary(1, 2));
    let as_field: SparseVec<_> = element.iter().map(|(i, x)| (*i, f.embed_bigint(x))).collect();
    let element_is_cycle = boundary.apply(&f, &as_field).is_empty();
    // Bigrade (2, 2) is empty for a star, so every nonzero cycle is a nonzero class.
    let element_nonzero_in_homology = element_is_cycle && !element.is_empty() && complex.dim(2, 2) == 0;

    let kernel = DifferenceKernel::new(n, weight_max);
    let element_in_kernel = kernel.contains(2, &kernel.element([0, 1, 2]));
    let kernel_dims: Vec<usize> = kernel.kernels.iter().map(Vec::len).collect();
    let kernel_generator_weights = kernel.generator_weights(n);

    let mut images = Echelon::new(f);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if BTreeSet::from([a, b, c]).len() == 3 {
                    images.insert(kernel.element([a, b, c]), Vec::new());
                }
            }
        }
    }
    let generated_from_three_copies = images.rank() == kernel.kernels[2].len()
        && kernel.kernels[2].iter().all(|k| images.contains(k));

    let module = truncated_module(f, &g, 1, weight_max, Mode::Reduced).map_err(|e| match e {
        crate::module::ModuleError::Complex(c) => BlowupError::Complex(c),
        other => BlowupError::RegressionFailure(other.to_string()),
    })?;
    let h1_generator_weights = generator_degrees(&module);
    let kernel_matches_h1 = module.dims == kernel_dims;
    Ok(StarRegressionEntry {
        n,
        element_is_cycle,
        element_in_kernel,
        element_nonzero_in_homology,
        kernel_dims,
        kernel_generator_weights,
        generated_from_three_copies,
        h1_generator_weights,
        kernel_matches_h1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn blow_up_examples() {
        let b = blow_up(&star3(), "u").unwrap();
        assert_eq!((b.result.num_vertices(), b.result.num_edges()), (6, 3));
        assert!((0..6).all(|v| b.result.degree(VertexIx(v)) == 1));
        assert_eq!(b.half_edge_vertex_map["e2"], "uxe2");

        let b = blow_up(&segment(), "a").unwrap();
        assert_eq!((b.result.num_vertices(), b.result.num_edges()), (2, 1));

        let b = blow_up(&cycle3(), "a").unwrap();
        let r = &b.result;
        assert_eq!((r.num_vertices(), r.num_edges()), (4, 3));
        let degrees: Vec<usize> = (0..4).map(|v| r.degree(VertexIx(v))).collect();
        assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 2);

        assert!(matches!(blow_up(&segment(), "zz"), Err(BlowupError::Graph(_))));
    }

    #[test]
    fn difference_module_rank() {
        let b = blow_up(&star3(), "u").unwrap();
        let m = b.difference_module();
        assert_eq!(m.rank, 2);
        assert_eq!(m.basis, [("e2".into(), "e1".into()), ("e3".into(), "e1".into())]);
    }

    #[test]
    fn star_slice_dimensions() {
        let seq = BlowupSequence::new(&star3(), "u").unwrap();
        assert_eq!(seq.sub_dim(1, 1), 0);
        assert_eq!(seq.middle.dim(1, 1), 2);
        assert_eq!(seq.quotient_dim(1, 1), 2);
        let (inc, proj) = seq.ses_matrices(0, 2);
        assert_eq!(inc.cols(), inc.rows());
        assert_eq!(proj.rows(), 0);
    }

    #[test]
    fn les_passes_on_small_examples() {
        for (g, v) in [(star3(), "u"), (segment(), "a"), (cycle3(), "b")] {
            let report = verify_les(&g, v, 1, 4, FieldKind::Rational).unwrap();
            assert!(report.passed, "{report:#?}");
            report.ensure().unwrap();
        }
    }

    #[test]
    fn star_les_recovers_four_term_sequence() {
        let report = verify_les(&star3(), "u", 1, 4, FieldKind::Rational).unwrap();
        // n = 3: 0 -> H_1(G) -> H̃ ⊗ H_0(Bl)_2 -> H_0(Bl)_3 -> H_0(G)_3 -> 0
        let seg1 = report.segments.iter().find(|s| s.q == 1 && s.n == 3).unwrap();
        assert_eq!(seg1.homology, [0, 3, 12]);
        let seg0 = report.segments.iter().find(|s| s.q == 0 && s.n == 3).unwrap();
        assert_eq!(seg0.homology, [10, 1, 0]);
    }

    #[test]
    fn star_regression() {
        let report = star_example_regression(4).unwrap();
        assert!(report.passed, "{report:#?}");
        let n3 = &report.entries[0];
        assert_eq!(n3.kernel_dims, [0, 0, 1, 3, 6]);
        assert_eq!(n3.kernel_generator_weights, BTreeMap::from([(2, 1)]));
    }
}
