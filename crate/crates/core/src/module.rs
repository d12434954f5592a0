//! Total homology as a graded module over the edge polynomial ring, and its
//! graded Betti numbers computed from the Koszul complex.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, Mode, SwComplex};
use crate::field::{kernel_basis, rank_sparse, Echelon, Field, FieldKind, SparseMatrix, SparseVec};
use crate::graph::{EdgeIx, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("degree {requested} exceeds truncation {truncation}")]
    TruncationTooSmall { requested: usize, truncation: usize },
    #[error("homological index {p} out of range 0..={max}")]
    IndexOutOfRange { p: usize, max: usize },
    #[error("malformed module: {0}")]
    Malformed(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Degreewise truncation `M_0, ..., M_N` of a graded module over
/// `k[x_e : e ∈ E]`, with one action matrix `M_j -> M_{j+1}` per edge.
#[derive(Clone, Debug)]
pub struct GradedModuleData<F: Field> {
    pub field: F,
    pub edge_ids: Vec<String>,
    pub truncation: usize,
    pub dims: Vec<usize>,
    /// `actions[j][e]` is multiplication by `x_e` from degree `j` to `j + 1`.
    pub actions: Vec<Vec<SparseMatrix<F::Elem>>>,
}

impl<F: Field> GradedModuleData<F> {
    pub fn new(
        field: F,
        edge_ids: Vec<String>,
        dims: Vec<usize>,
        actions: Vec<Vec<SparseMatrix<F::Elem>>>,
    ) -> Result<Self, ModuleError> {
        if dims.is_empty() {
            return Err(ModuleError::Malformed("no degrees".into()));
        }
        let truncation = dims.len() - 1;
        if actions.len() != truncation {
            return Err(ModuleError::Malformed(format!(
                "expected {truncation} action levels, got {}",
                actions.len()
            )));
        }
        for (j, level) in actions.iter().enumerate() {
            if level.len() != edge_ids.len() {
                return Err(ModuleError::Malformed(format!("degree {j}: wrong number of edges")));
            }
            for m in level {
                if m.rows != dims[j + 1] || m.cols != dims[j] {
                    return Err(ModuleError::Malformed(format!("degree {j}: action shape mismatch")));
                }
            }
        }
        Ok(GradedModuleData {
            field,
            edge_ids,
            truncation,
            dims,
            actions,
        })
    }

    pub fn zero(field: F, edge_ids: Vec<String>, truncation: usize) -> Self {
        let e = edge_ids.len();
        let actions = (0..truncation)
            .map(|_| {
                (0..e)
                    .map(|_| SparseMatrix {
                        rows: 0,
                        cols: 0,
                        columns: Vec::new(),
                    })
                    .collect()
            })
            .collect();
        GradedModuleData {
            field,
            edge_ids,
            truncation,
            dims: vec![0; truncation + 1],
            actions,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn field_kind(&self) -> FieldKind {
        self.field.kind()
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims.get(j).copied().unwrap_or(0)
    }

    pub fn action(&self, e: usize, j: usize) -> &SparseMatrix<F::Elem> {
        &self.actions[j][e]
    }

    /// `x_f x_e = x_e x_f` wherever both composites are defined.
    pub fn actions_commute(&self) -> bool {
        let f = &self.field;
        for j in 0..self.truncation.saturating_sub(1) {
            for e in 0..self.num_vars() {
                for g in e + 1..self.num_vars() {
                    let a = self.actions[j + 1][g].compose(f, &self.actions[j][e]);
                    let b = self.actions[j + 1][e].compose(f, &self.actions[j][g]);
                    if a != b {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn check_degree(&self, j: usize) -> Result<(), ModuleError> {
        if j > self.truncation {
            return Err(ModuleError::TruncationTooSmall {
                requested: j,
                truncation: self.truncation,
            });
        }
        Ok(())
    }
}

/// Homology classes of one degree, as representatives modulo boundaries.
struct QuotientBasis<F: Field> {
    echelon: Echelon<F>,
    reps: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> QuotientBasis<F> {
    fn build(field: &F, d_out: &SparseMatrix<F::Elem>, d_in: &SparseMatrix<F::Elem>) -> Self {
        let mut echelon = Echelon::new(field.clone());
        for col in &d_in.columns {
            echelon.insert(col.clone(), Vec::new());
        }
        let mut reps = Vec::new();
        for z in kernel_basis(field, d_out) {
            let k = reps.len();
            if echelon.insert(z.clone(), vec![(k, field.one())]).is_none() {
                reps.push(z);
            }
        }
        QuotientBasis { echelon, reps }
    }

    /// Coordinates of a cycle in the chosen basis of the quotient.
    fn coordinates(&self, field: &F, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let (rem, coef) = self.echelon.reduce(v, Vec::new());
        assert!(rem.is_empty(), "vector is not a cycle");
        coef.into_iter().map(|(i, x)| (i, field.neg(&x))).collect()
    }
}

/// Extracts `M_j = H_q(UF_j(G); k)` for `0 <= j <= truncation`, with edge
/// actions induced on homology.
pub fn truncated_module<F: Field>(
    field: F,
    g: &Graph,
    q: usize,
    truncation: usize,
    mode: Mode,
) -> Result<GradedModuleData<F>, ModuleError> {
    let complex = SwComplex::new(Arc::new(g.clone()), mode)?;
    Ok(module_from_complex(field, &complex, q, truncation))
}

pub fn module_from_complex<F: Field>(field: F, complex: &SwComplex, q: usize, truncation: usize) -> GradedModuleData<F> {
    let g = complex.graph().clone();
    let quotients: Vec<QuotientBasis<F>> = (0..=truncation)
        .into_par_iter()
        .map(|j| {
            let d_out = SparseMatrix::from_integer(&field, &complex.boundary(q, j));
            let d_in = SparseMatrix::from_integer(&field, &complex.boundary(q + 1, j));
            QuotientBasis::build(&field, &d_out, &d_in)
        })
        .collect();
    let dims: Vec<usize> = quotients.iter().map(|qb| qb.reps.len()).collect();
    let actions: Vec<Vec<SparseMatrix<F::Elem>>> = (0..truncation)
        .into_par_iter()
        .map(|j| {
            (0..g.num_edges())
                .map(|e| {
                    if dims[j] == 0 {
                        return SparseMatrix {
                            rows: dims[j + 1],
                            cols: 0,
                            columns: Vec::new(),
                        };
                    }
                    let x = complex.edge_action(q, j, EdgeIx(e)).expect("edge in range");
                    let x = SparseMatrix::from_integer(&field, &x);
                    let columns = quotients[j]
                        .reps
                        .iter()
                        .map(|c| quotients[j + 1].coordinates(&field, x.apply(&field, c)))
                        .collect();
                    SparseMatrix {
                        rows: dims[j + 1],
                        cols: dims[j],
                        columns,
                    }
                })
                .collect()
        })
        .collect();
    GradedModuleData {
        field,
        edge_ids: g.edges().iter().map(|e| e.id.clone()).collect(),
        truncation,
        dims,
        actions,
    }
}

/// Minimal generator counts `β_{0,j}` for `j <= truncation`, nonzero entries only.
pub fn generator_degrees<F: Field>(m: &GradedModuleData<F>) -> BTreeMap<usize, usize> {
    (0..=m.truncation)
        .filter_map(|j| {
            let b = generators_in_degree(m, j);
            (b > 0).then_some((j, b))
        })
        .collect()
}

/// Like [`generator_degrees`] but fails when `j_max` exceeds the truncation.
pub fn generator_degrees_upto<F: Field>(m: &GradedModuleData<F>, j_max: usize) -> Result<BTreeMap<usize, usize>, ModuleError> {
    m.check_degree(j_max)?;
    Ok(generator_degrees(m).into_iter().filter(|(j, _)| *j <= j_max).collect())
}

/// `dim M_j - dim(Σ_e x_e M_{j-1})`.
fn generators_in_degree<F: Field>(m: &GradedModuleData<F>, j: usize) -> usize {
    if j == 0 {
        return m.dim(0);
    }
    let mut ech = Echelon::new(m.field.clone());
    for a in &m.actions[j - 1] {
        for col in &a.columns {
            ech.insert(col.clone(), Vec::new());
        }
    }
    m.dim(j) - ech.rank()
}

/// Sorted `size`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    if size > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Dimension of `Λ^p V ⊗ M_{j-p}`.
fn koszul_dim<F: Field>(m: &GradedModuleData<F>, p: usize, j: usize) -> usize {
    if p > j || p > m.num_vars() {
        return 0;
    }
    subsets(m.num_vars(), p).len() * m.dim(j - p)
}

/// Koszul differential `Λ^p V ⊗ M_{j-p} -> Λ^{p-1} V ⊗ M_{j-p+1}`,
/// `e_S ⊗ m ↦ Σ_k (-1)^k e_{S∖s_k} ⊗ x_{s_k} m`.
pub fn koszul_differential<F: Field>(m: &GradedModuleData<F>, p: usize, j: usize) -> SparseMatrix<F::Elem> {
    let f = &m.field;
    let rows = if p == 0 { 0 } else { koszul_dim(m, p - 1, j) };
    let cols = koszul_dim(m, p, j);
    if p == 0 || cols == 0 || rows == 0 {
        return SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        };
    }
    let deg = j - p;
    let src_sets = subsets(m.num_vars(), p);
    let tgt_index: HashMap<Vec<usize>, usize> = subsets(m.num_vars(), p - 1)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let (src_dim, tgt_dim) = (m.dim(deg), m.dim(deg + 1));
    let mut columns = Vec::with_capacity(cols);
    for set in &src_sets {
        for b in 0..src_dim {
            let mut terms = Vec::new();
            for (k, &var) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(k);
                let block = tgt_index[&rest] * tgt_dim;
                let sign_neg = k % 2 == 1;
                for (r, x) in &m.actions[deg][var].columns[b] {
                    let val = if sign_neg { f.neg(x) } else { x.clone() };
                    terms.push((block + r, val));
                }
            }
            columns.push(crate::field::collect_terms(f, terms));
        }
    }
    SparseMatrix { rows, cols, columns }
}

/// `β_{p,j} = dim Tor_p(M, k)_j`, the middle homology of the Koszul complex
/// in internal degree `j`.
pub fn koszul_betti<F: Field>(m: &GradedModuleData<F>, p: usize, j: usize) -> Result<usize, ModuleError> {
    m.check_degree(j)?;
    if p > m.num_vars() {
        return Err(ModuleError::IndexOutOfRange { p, max: m.num_vars() });
    }
    let dim = koszul_dim(m, p, j);
    if dim == 0 {
        return Ok(0);
    }
    let out_rank = rank_sparse(&m.field, &koszul_differential(m, p, j));
    let in_rank = if p < m.num_vars() {
        rank_sparse(&m.field, &koszul_differential(m, p + 1, j))
    } else {
        0
    };
    Ok(dim - out_rank - in_rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub p: usize,
    pub j: usize,
    pub beta: usize,
}

/// Graded Betti numbers over a rectangle `p <= p_max`, `j <= j_max`.
/// Only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub field: FieldKind,
    pub p_max: usize,
    pub j_max: usize,
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    pub fn get(&self, p: usize, j: usize) -> usize {
        self.entries
            .iter()
            .find(|e| e.p == p && e.j == j)
            .map_or(0, |e| e.beta)
    }

    /// Degrees `j` with `β_{p,j} ≠ 0`.
    pub fn support(&self, p: usize) -> BTreeSet<usize> {
        self.entries.iter().filter(|e| e.p == p).map(|e| e.j).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// CSV with header `p,j,beta`, nonzero rows sorted by `(p, j)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,j,beta\n");
        for e in &self.entries {
            out.push_str(&format!("{},{},{}\n", e.p, e.j, e.beta));
        }
        out
    }
}

pub fn betti_table<F: Field>(m: &GradedModuleData<F>, p_max: usize, j_max: usize) -> Result<BettiTable, ModuleError> {
    m.check_degree(j_max)?;
    let cells: Vec<(usize, usize)> = (0..=p_max.min(m.num_vars()))
        .flat_map(|p| (0..=j_max).map(move |j| (p, j)))
        .collect();
    let values: Vec<usize> = cells
        .par_iter()
        .map(|&(p, j)| koszul_betti(m, p, j))
        .collect::<Result<_, _>>()?;
    let entries = cells
        .into_iter()
        .zip(values)
        .filter(|(_, b)| *b > 0)
        .map(|((p, j), beta)| BettiEntry { p, j, beta })
        .collect();
    Ok(BettiTable {
        field: m.field_kind(),
        p_max,
        j_max,
        entries,
    })
}

/// Betti table of `H_q(G)` over the chosen field, truncated at `j_max`.
pub fn homology_betti_table(
    g: &Graph,
    q: usize,
    p_max: usize,
    j_max: usize,
    field: FieldKind,
    mode: Mode,
) -> Result<BettiTable, ModuleError> {
    crate::with_field!(field, |f| {
        let m = truncated_module(f, g, q, j_max, mode)?;
        betti_table(&m, p_max, j_max)
    })
}
