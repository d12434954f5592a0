//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use gbh_core::{Graph, IntegerMatrix};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors from determinantal divisors: `d_k = gcd of k×k minors`,
/// `s_k = d_k / d_{k-1}`. Exponential; small matrices only.
pub fn invariant_factors_by_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&bareiss_det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}

/// Coefficient of `s^q t^n` in `Π_v f_v(s, t) · (1 - t)^{-E}`, where the vertex
/// factor is `1 + t + deg(v) s t` (full) or `1 + (deg(v) - 1) s t` (reduced).
pub fn generating_function_dim(g: &Graph, q: usize, n: usize, reduced: bool) -> usize {
    // poly[q][n] truncated at n.
    let mut poly = vec![vec![0u128; n + 1]; q + 1];
    poly[0][0] = 1;
    for v in 0..g.num_vertices() {
        let d = g.degree(gbh_core::graph::VertexIx(v)) as u128;
        let mut next = vec![vec![0u128; n + 1]; q + 1];
        for a in 0..=q {
            for b in 0..=n {
                let c = poly[a][b];
                if c == 0 {
                    continue;
                }
                next[a][b] += c;
                if !reduced && b < n {
                    next[a][b + 1] += c;
                }
                let odd = if reduced { d.saturating_sub(1) } else { d };
                if a < q && b < n {
                    next[a + 1][b + 1] += c * odd;
                }
            }
        }
        poly = next;
    }
    // (1 - t)^{-E}: coefficient of t^k is C(E + k - 1, k).
    let e = g.num_edges() as u128;
    let free = |k: usize| -> u128 {
        if e == 0 {
            return u128::from(k == 0);
        }
        let mut c = 1u128;
        for i in 0..k as u128 {
            c = c * (e + i) / (i + 1);
        }
        c
    };
    (0..=n).map(|b| poly[q][b] * free(n - b)).sum::<u128>() as usize
}

pub fn dense(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    m.to_dense()
}

/// Same graph with edge ids renamed so that their sorted order is reversed.
pub fn reverse_edge_order(g: &Graph) -> Graph {
    let k = g.num_edges();
    let edges = g.edges().iter().enumerate().map(|(i, e)| {
        (
            format!("z{:03}", k - i),
            [g.vertex_id(e.ends.0).to_string(), g.vertex_id(e.ends.1).to_string()],
        )
    });
    Graph::new(g.vertex_ids().to_vec(), edges).expect("relabelled graph")
}

/// Deterministic pseudo-random simple graph on `nv` vertices from `seed`.
pub fn graph_from_bits(nv: usize, bits: u64) -> Graph {
    let vs: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..nv {
        for j in i + 1..nv {
            if bits >> (k % 64) & 1 == 1 {
                edges.push((format!("e{i}_{j}"), [vs[i].clone(), vs[j].clone()]));
            }
            k += 1;
        }
    }
    Graph::new(vs.clone(), edges).expect("simple graph")
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
