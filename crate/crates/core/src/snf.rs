//! Smith normal form over the integers and the homology of integer chain complexes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::matrix::{IntColumn, IntegerMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("composite of boundary maps is nonzero")]
    NotAComplex,
    #[error("boundary maps do not compose: {0}")]
    DimensionMismatch(String),
}

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with
/// `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "ser_bigints", deserialize_with = "de_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn de_bigints<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    let raw: Vec<String> = Vec::deserialize(d)?;
    raw.iter()
        .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
        .collect()
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Dimension of `self ⊗ F_p`.
    pub fn dim_mod_p(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.free_rank + self.torsion.iter().filter(|d| (*d % &p).is_zero()).count()
    }

    /// Number of torsion factors divisible by `p`, i.e. `dim Tor(self, F_p)`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.torsion.iter().filter(|d| (*d % &p).is_zero()).count()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `U * M * V = S` with `U`, `V` unimodular and `S` diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Nonzero diagonal entries of `S`, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

struct DenseSnf {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

fn dense_identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn to_sparse(rows: &[Vec<BigInt>], ncols: usize) -> IntegerMatrix {
    let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(j, v)| (i, j, v.clone()))
    });
    IntegerMatrix::from_triplets(rows.len(), ncols, triplets).expect("in range")
}

impl DenseSnf {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        fn apply(m: &mut [Vec<BigInt>], i: usize, j: usize, k: &BigInt) {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(src.iter()) {
                if !y.is_zero() {
                    *x += k * y;
                }
            }
        }
        apply(&mut self.a, i, j, k);
        if let Some(u) = &mut self.u {
            apply(u, i, j, k);
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        fn apply(m: &mut [Vec<BigInt>], i: usize, j: usize, k: &BigInt) {
            for row in m.iter_mut() {
                if !row[j].is_zero() {
                    let delta = k * &row[j];
                    row[i] += delta;
                }
            }
        }
        apply(&mut self.a, i, j, k);
        if let Some(v) = &mut self.v {
            apply(v, i, j, k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn smallest_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let steps = self.rows().min(self.cols());
        for t in 0..steps {
            loop {
                let Some((pi, pj)) = self.smallest_in(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.a[t][t].clone();
                let mut dirty = false;
                for i in t + 1..self.rows() {
                    if !self.a[i][t].is_zero() {
                        let q = &self.a[i][t] / &pivot;
                        self.add_row(i, t, &-q);
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols() {
                    if !self.a[t][j].is_zero() {
                        let q = &self.a[t][j] / &pivot;
                        self.add_col(j, t, &-q);
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if dirty {
                    continue;
                }
                let offender = (t + 1..self.rows()).find(|&i| {
                    (t + 1..self.cols()).any(|j| !(&self.a[i][j] % &pivot).is_zero())
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }

    fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows().min(self.cols()))
            .map(|i| self.a[i][i].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

/// Smith normal form with transforms, using smallest-absolute-value pivots.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut calc = DenseSnf {
        a: m.to_dense(),
        u: Some(dense_identity(rows)),
        v: Some(dense_identity(cols)),
    };
    calc.run();
    let invariant_factors = calc.diagonal();
    SmithForm {
        s: to_sparse(&calc.a, cols),
        u: to_sparse(calc.u.as_ref().unwrap(), rows),
        v: to_sparse(calc.v.as_ref().unwrap(), cols),
        invariant_factors,
    }
}

fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

/// `target -= k * src` on sorted sparse columns.
fn axpy_column(target: &IntColumn, k: &BigInt, src: &IntColumn) -> IntColumn {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let take_t = j >= src.len() || (i < target.len() && target[i].0 < src[j].0);
        let take_s = i >= target.len() || (j < src.len() && src[j].0 < target[i].0);
        if take_t {
            out.push(target[i].clone());
            i += 1;
        } else if take_s {
            out.push((src[j].0, -(k * &src[j].1)));
            j += 1;
        } else {
            let v = &target[i].1 - k * &src[j].1;
            if !v.is_zero() {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Nonzero invariant factors of `m`, in divisibility order.
///
/// Unit pivots are eliminated sparsely first (Markowitz-style choice); the
/// leftover block, if any, goes through the dense algorithm.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    let (rows, _) = m.shape();
    let mut cols: Vec<IntColumn> = m.columns().to_vec();
    let mut row_sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
    for (c, col) in cols.iter().enumerate() {
        for (r, _) in col {
            row_sets[*r].insert(c);
        }
    }
    let mut live: BTreeSet<usize> = (0..cols.len()).filter(|&c| !cols[c].is_empty()).collect();
    let mut units = 0usize;

    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        'scan: for &c in &live {
            let clen = cols[c].len() - 1;
            for (r, v) in &cols[c] {
                if !is_unit(v) {
                    continue;
                }
                let cost = clen * (row_sets[*r].len() - 1);
                if best.is_none_or(|(_, _, b)| cost < b) {
                    best = Some((*r, c, cost));
                    if cost == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let pivot_col = std::mem::take(&mut cols[pc]);
        let pv = pivot_col
            .iter()
            .find(|(r, _)| *r == pr)
            .map(|(_, v)| v.clone())
            .expect("pivot present");
        for (r, _) in &pivot_col {
            row_sets[*r].remove(&pc);
        }
        live.remove(&pc);
        let others: Vec<usize> = row_sets[pr].iter().copied().collect();
        for c in others {
            let a = cols[c]
                .iter()
                .find(|(r, _)| *r == pr)
                .map(|(_, v)| v.clone())
                .expect("row index consistent");
            let k = &a * &pv;
            let before: BTreeSet<usize> = cols[c].iter().map(|(r, _)| *r).collect();
            let updated = axpy_column(&cols[c], &k, &pivot_col);
            let after: BTreeSet<usize> = updated.iter().map(|(r, _)| *r).collect();
            for r in before.difference(&after) {
                row_sets[*r].remove(&c);
            }
            for r in after.difference(&before) {
                row_sets[*r].insert(c);
            }
            cols[c] = updated;
            if cols[c].is_empty() {
                live.remove(&c);
            }
        }
        units += 1;
    }

    let mut factors = vec![BigInt::one(); units];
    if !live.is_empty() {
        let used_rows: Vec<usize> = row_sets
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(|(r, _)| r)
            .collect();
        let row_pos: std::collections::HashMap<usize, usize> =
            used_rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let live_cols: Vec<usize> = live.iter().copied().collect();
        let mut a = vec![vec![BigInt::zero(); live_cols.len()]; used_rows.len()];
        for (j, c) in live_cols.iter().enumerate() {
            for (r, v) in &cols[*c] {
                a[row_pos[r]][j] = v.clone();
            }
        }
        let mut calc = DenseSnf { a, u: None, v: None };
        calc.run();
        factors.extend(calc.diagonal());
    }
    factors
}

/// Rank over the rationals.
pub fn rank(m: &IntegerMatrix) -> usize {
    invariant_factors(m).len()
}

/// `ker(d_out) / im(d_in)` where `d_in: C_{q+1} -> C_q` and `d_out: C_q -> C_{q-1}`.
///
/// The free rank is `dim C_q - rank d_out - rank d_in`; the torsion is the
/// non-unit invariant factors of `d_in` (the quotient `C_q / ker d_out` is free).
pub fn homology_at(d_in: &IntegerMatrix, d_out: &IntegerMatrix) -> Result<AbelianGroup, HomologyError> {
    if d_in.rows() != d_out.cols() {
        return Err(HomologyError::DimensionMismatch(format!(
            "d_in is {}x{}, d_out is {}x{}",
            d_in.rows(),
            d_in.cols(),
            d_out.rows(),
            d_out.cols()
        )));
    }
    let composite = d_out.mul(d_in).expect("shapes checked");
    if !composite.is_zero() {
        return Err(HomologyError::NotAComplex);
    }
    Ok(homology_unchecked(d_in, d_out))
}

pub(crate) fn homology_unchecked(d_in: &IntegerMatrix, d_out: &IntegerMatrix) -> AbelianGroup {
    let dim = d_out.cols();
    let out_rank = rank(d_out);
    let in_factors = invariant_factors(d_in);
    let torsion: Vec<BigInt> = in_factors.iter().filter(|d| !d.is_one()).cloned().collect();
    AbelianGroup {
        free_rank: dim - out_rank - in_factors.len(),
        torsion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(s: &SmithForm) -> Vec<i64> {
        s.invariant_factors
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    fn check_decomposition(m: &IntegerMatrix, s: &SmithForm) {
        let prod = s.u.mul(m).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.s);
    }

    #[test]
    fn snf_examples() {
        let m = IntegerMatrix::from_dense(&[vec![2, 0], vec![0, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(diag(&s), [2]);
        check_decomposition(&m, &s);

        let m = IntegerMatrix::from_dense(&[vec![0]]);
        let s = smith_normal_form(&m);
        assert!(s.s.is_zero());
        assert_eq!(s.u, IntegerMatrix::identity(1));
        assert_eq!(s.v, IntegerMatrix::identity(1));

        let m = IntegerMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(diag(&s), [2, 4]);
        check_decomposition(&m, &s);
    }

    #[test]
    fn sparse_and_dense_factors_agree() {
        let m = IntegerMatrix::from_dense(&[
            vec![1, 2, 0, 3],
            vec![0, 4, 6, 0],
            vec![2, 0, 6, 6],
            vec![0, 0, 0, 0],
        ]);
        let dense = smith_normal_form(&m).invariant_factors;
        assert_eq!(invariant_factors(&m), dense);
    }

    #[test]
    fn homology_examples() {
        let d_in = IntegerMatrix::from_dense(&[vec![2]]);
        let d_out = IntegerMatrix::zeros(0, 1);
        let h = homology_at(&d_in, &d_out).unwrap();
        assert_eq!(h.to_string(), "Z/2");

        let h = homology_at(&IntegerMatrix::zeros(3, 0), &IntegerMatrix::zeros(0, 3)).unwrap();
        assert_eq!(h, AbelianGroup::free(3));
        assert_eq!(h.to_string(), "Z^3");
    }

    #[test]
    fn homology_errors() {
        let d = IntegerMatrix::from_dense(&[vec![1]]);
        assert_eq!(homology_at(&d, &d), Err(HomologyError::NotAComplex));
        assert!(matches!(
            homology_at(&IntegerMatrix::zeros(2, 1), &IntegerMatrix::zeros(1, 3)),
            Err(HomologyError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn group_serde_and_display() {
        let g = AbelianGroup {
            free_rank: 1,
            torsion: vec![BigInt::from(2), BigInt::from(4)],
        };
        assert_eq!(g.to_string(), "Z^1 + Z/2 + Z/4");
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"free_rank":1,"torsion":["2","4"]}"#);
        assert_eq!(serde_json::from_str::<AbelianGroup>(&json).unwrap(), g);
        assert_eq!(g.dim_mod_p(2), 3);
        assert_eq!(g.dim_mod_p(3), 1);
        assert_eq!(AbelianGroup::zero().to_string(), "0");
    }
}
