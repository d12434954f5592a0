//! Small named graphs used by tests, benchmarks and the command line.

use crate::graph::Graph;

/// Path with `k` edges on vertices `p0..pk`.
pub fn path(k: usize) -> Graph {
    let vs: Vec<String> = (0..=k).map(|i| format!("p{i}")).collect();
    let es = (0..k).map(|i| (format!("s{}", i + 1), [vs[i].clone(), vs[i + 1].clone()]));
    Graph::new(vs.clone(), es).expect("path is simple")
}

/// Cycle on `k >= 3` vertices `c0..c(k-1)`.
pub fn cycle(k: usize) -> Graph {
    assert!(k >= 3, "cycles need three vertices");
    let vs: Vec<String> = (0..k).map(|i| format!("c{i}")).collect();
    let es = (0..k).map(|i| (format!("r{}", i + 1), [vs[i].clone(), vs[(i + 1) % k].clone()]));
    Graph::new(vs.clone(), es).expect("cycle is simple")
}

/// `K_{k,1}` with centre `u`, leaves `l1..lk` and edges `e1..ek`.
pub fn star(k: usize) -> Graph {
    let mut vs = vec!["u".to_string()];
    vs.extend((1..=k).map(|i| format!("l{i}")));
    Graph::new(vs, (1..=k).map(|i| (format!("e{i}"), ["u".to_string(), format!("l{i}")])))
        .expect("star is simple")
}

/// `K_{a,b}` on `a1..` and `b1..`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let left: Vec<String> = (1..=a).map(|i| format!("a{i}")).collect();
    let right: Vec<String> = (1..=b).map(|j| format!("b{j}")).collect();
    let mut edges = Vec::new();
    for x in &left {
        for y in &right {
            edges.push((format!("{x}{y}"), [x.clone(), y.clone()]));
        }
    }
    let vs: Vec<String> = left.into_iter().chain(right).collect();
    Graph::new(vs, edges).expect("bipartite graph is simple")
}

/// The cross-validation corpus: segment, path_3, C_3, C_4, K_{3,1}, K_{4,1}, K_{2,3}.
pub fn standard() -> Vec<(&'static str, Graph)> {
    vec![
        ("segment", path(1)),
        ("path_3", path(3)),
        ("C_3", cycle(3)),
        ("C_4", cycle(4)),
        ("K_3_1", star(3)),
        ("K_4_1", star(4)),
        ("K_2_3", complete_bipartite(2, 3)),
    ]
}

/// Looks up `segment`, `path_K`, `C_K`, `K_A_1`/`star_K` or `K_A_B`.
pub fn by_name(name: &str) -> Option<Graph> {
    let num = |s: &str| s.parse::<usize>().ok();
    if name == "segment" {
        return Some(path(1));
    }
    if let Some(k) = name.strip_prefix("path_").and_then(num) {
        return Some(path(k));
    }
    if let Some(k) = name.strip_prefix("C_").and_then(num) {
        return (k >= 3).then(|| cycle(k));
    }
    if let Some(k) = name.strip_prefix("star_").and_then(num) {
        return Some(star(k));
    }
    let rest = name.strip_prefix("K_")?;
    let (a, b) = rest.split_once('_')?;
    match (num(a)?, num(b)?) {
        (a, 1) => Some(star(a)),
        (a, b) => Some(complete_bipartite(a, b)),
    }
}
