//! Brute-force cross-check: cellular homology of the discretized
//! configuration space, a cube complex whose cells are collections of
//! pairwise disjoint closed cells of the graph.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{EdgeIx, Graph, GraphError, VertexIx};
use crate::matrix::IntegerMatrix;
use crate::snf::{self, AbelianGroup};

pub const DEFAULT_CELL_BUDGET: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph is not subdivided enough for {n} particles: {reason}")]
    InsufficientSubdivision { n: usize, reason: String },
    #[error("discretized complex exceeds the cell budget of {budget}")]
    BudgetExceeded { budget: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A cube: occupied vertices and edges, sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscreteCell {
    pub edges: Vec<EdgeIx>,
    pub vertices: Vec<VertexIx>,
}

impl DiscreteCell {
    pub fn dimension(&self) -> usize {
        self.edges.len()
    }

    pub fn particles(&self) -> usize {
        self.edges.len() + self.vertices.len()
    }
}

/// Whether the discretized model at `n` particles is homotopy equivalent to
/// the configuration space: every path between distinct vertices of degree
/// other than two has at least `n - 1` edges and every cycle at least `n + 1`.
pub fn sufficiency(g: &Graph, n: usize) -> Result<(), OracleError> {
    if n <= 1 {
        return Ok(());
    }
    if let Some(len) = g.essential_path_lengths().into_iter().min() {
        if len + 1 < n {
            return Err(OracleError::InsufficientSubdivision {
                n,
                reason: format!("a path between non-degree-2 vertices has {len} edges"),
            });
        }
    }
    if let Some(girth) = g.girth() {
        if girth < n + 1 {
            return Err(OracleError::InsufficientSubdivision {
                n,
                reason: format!("a cycle has {girth} edges"),
            });
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct DiscretizedComplex {
    pub n: usize,
    /// `cells[d]` lists the `d`-dimensional cubes in sorted order.
    pub cells: Vec<Vec<DiscreteCell>>,
    index: Vec<HashMap<DiscreteCell, usize>>,
    ends: Vec<(VertexIx, VertexIx)>,
}

/// Builds the cube complex of `n` particles on `g`, which must pass [`sufficiency`].
pub fn discretized_complex(g: &Graph, n: usize, budget: usize) -> Result<DiscretizedComplex, OracleError> {
    sufficiency(g, n)?;
    build_unchecked(g, n, budget)
}

fn build_unchecked(g: &Graph, n: usize, budget: usize) -> Result<DiscretizedComplex, OracleError> {
    let nv = g.num_vertices();
    let ne = g.num_edges();
    // Items 0..nv are vertices, nv.. are edges. An item blocks the vertices it touches.
    let touches: Vec<Vec<usize>> = (0..nv)
        .map(|v| vec![v])
        .chain(g.edges().iter().map(|e| vec![e.ends.0 .0, e.ends.1 .0]))
        .collect();
    let mut cells: Vec<Vec<DiscreteCell>> = vec![Vec::new(); n + 1];
    let mut count = 0usize;
    let mut blocked = vec![0u32; nv];
    let mut chosen = Vec::with_capacity(n);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        start: usize,
        left: usize,
        nv: usize,
        touches: &[Vec<usize>],
        blocked: &mut Vec<u32>,
        chosen: &mut Vec<usize>,
        cells: &mut Vec<Vec<DiscreteCell>>,
        count: &mut usize,
        budget: usize,
    ) -> Result<(), OracleError> {
        if left == 0 {
            *count += 1;
            if *count > budget {
                return Err(OracleError::BudgetExceeded { budget });
            }
            let cell = DiscreteCell {
                vertices: chosen.iter().filter(|&&i| i < nv).map(|&i| VertexIx(i)).collect(),
                edges: chosen.iter().filter(|&&i| i >= nv).map(|&i| EdgeIx(i - nv)).collect(),
            };
            cells[cell.dimension()].push(cell);
            return Ok(());
        }
        for item in start..touches.len() {
            if touches.len() - item < left {
                break;
            }
            if touches[item].iter().any(|&v| blocked[v] > 0) {
                continue;
            }
            for &v in &touches[item] {
                blocked[v] += 1;
            }
            chosen.push(item);
            let r = rec(item + 1, left - 1, nv, touches, blocked, chosen, cells, count, budget);
            chosen.pop();
            for &v in &touches[item] {
                blocked[v] -= 1;
            }
            r?;
        }
        Ok(())
    }
    debug_assert_eq!(touches.len(), nv + ne);
    rec(0, n, nv, &touches, &mut blocked, &mut chosen, &mut cells, &mut count, budget)?;
    for level in &mut cells {
        level.sort();
    }
    let index = cells
        .iter()
        .map(|level| level.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    Ok(DiscretizedComplex {
        n,
        cells,
        index,
        ends: g.edges().iter().map(|e| e.ends).collect(),
    })
}

impl DiscretizedComplex {
    pub fn num_cells(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, Vec::len)
    }

    /// Cellular boundary from dimension `d` to `d - 1`. Edges run from the
    /// smaller to the larger endpoint; the `i`-th occupied edge carries the sign `(-1)^i`.
    pub fn boundary(&self, d: usize) -> IntegerMatrix {
        if d == 0 {
            return IntegerMatrix::zeros(0, self.num_cells(0));
        }
        if d > self.n {
            return IntegerMatrix::zeros(self.num_cells(d - 1), 0);
        }
        let columns = self.cells[d]
            .iter()
            .map(|cell| {
                let mut terms = Vec::with_capacity(2 * d);
                for (i, &e) in cell.edges.iter().enumerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let (a, b) = self.ends[e.0];
                    for (end, s) in [(b, sign), (a, -sign)] {
                        let mut face = cell.clone();
                        face.edges.remove(i);
                        let at = face.vertices.binary_search(&end).unwrap_err();
                        face.vertices.insert(at, end);
                        terms.push((self.index[d - 1][&face], s));
                    }
                }
                terms
            })
            .collect();
        IntegerMatrix::from_columns_accumulate(self.num_cells(d - 1), columns)
    }

    pub fn homology(&self, q: usize) -> AbelianGroup {
        snf::homology_unchecked(&self.boundary(q + 1), &self.boundary(q))
    }
}

/// `H_q(UF_n(G); Z)` from the cube complex of the graph with every edge cut into `n + 1` pieces.
pub fn oracle_homology(g: &Graph, n: usize, q: usize) -> Result<AbelianGroup, OracleError> {
    oracle_homology_with(g, n, q, n + 1, DEFAULT_CELL_BUDGET)
}

/// Like [`oracle_homology`] with an explicit subdivision parameter and cell budget.
pub fn oracle_homology_with(g: &Graph, n: usize, q: usize, k: usize, budget: usize) -> Result<AbelianGroup, OracleError> {
    if q > n {
        return Ok(AbelianGroup::zero());
    }
    let (sub, _) = g.subdivide(k)?;
    Ok(discretized_complex(&sub, n, budget)?.homology(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn cycle(k: usize) -> Graph {
        let vs: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
        let es = (0..k).map(|i| (format!("e{i}"), [vs[i].clone(), vs[(i + 1) % k].clone()]));
        Graph::new(vs.clone(), es).unwrap()
    }

    #[test]
    fn boundary_squares_to_zero() {
        let (g, _) = star3().subdivide(3).unwrap();
        let c = discretized_complex(&g, 3, DEFAULT_CELL_BUDGET).unwrap();
        for d in 1..=3 {
            let composite = c.boundary(d - 1).mul(&c.boundary(d)).unwrap();
            assert!(composite.is_zero());
        }
    }

    #[test]
    fn one_particle_is_the_graph() {
        let path = Graph::build(&["a", "b", "c"], &[("ab", "a", "b"), ("bc", "b", "c")]).unwrap();
        let c = discretized_complex(&path, 1, 100).unwrap();
        assert_eq!((c.num_cells(0), c.num_cells(1)), (3, 2));
        assert_eq!(c.homology(0), AbelianGroup::free(1));
        assert_eq!(c.homology(1), AbelianGroup::zero());
    }

    #[test]
    fn examples() {
        let (g, _) = star3().subdivide(2).unwrap();
        let c = discretized_complex(&g, 2, 1000).unwrap();
        assert_eq!(c.homology(1), AbelianGroup::free(1));

        let c = discretized_complex(&cycle(6), 2, 1000).unwrap();
        assert_eq!(c.homology(0), AbelianGroup::free(1));
        assert_eq!(c.homology(1), AbelianGroup::free(1));

        assert_eq!(oracle_homology(&segment(), 3, 0).unwrap(), AbelianGroup::free(1));
        assert_eq!(oracle_homology(&star3(), 2, 1).unwrap(), AbelianGroup::free(1));
        for g in [segment(), star3(), cycle3()] {
            assert_eq!(oracle_homology(&g, 0, 0).unwrap(), AbelianGroup::free(1));
        }
    }

    #[test]
    fn insufficient_subdivision_is_rejected() {
        assert!(matches!(
            discretized_complex(&segment(), 3, 100),
            Err(OracleError::InsufficientSubdivision { n: 3, .. })
        ));
        assert!(matches!(
            discretized_complex(&cycle3(), 3, 100),
            Err(OracleError::InsufficientSubdivision { .. })
        ));
        assert!(discretized_complex(&star3(), 2, 100).is_ok());
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            oracle_homology_with(&star3(), 3, 1, 4, 10),
            Err(OracleError::BudgetExceeded { budget: 10 })
        );
    }

    #[test]
    fn subdivision_invariance() {
        for q in 0..=2 {
            let a = oracle_homology_with(&cycle3(), 3, q, 4, DEFAULT_CELL_BUDGET).unwrap();
            let b = oracle_homology_with(&cycle3(), 3, q, 5, DEFAULT_CELL_BUDGET).unwrap();
            assert_eq!(a, b);
        }
    }
}
