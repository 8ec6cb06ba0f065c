//! Named graphs with known girth.

use super::Graph;
use crate::error::{Error, Result};

fn build(n: usize, mut edges: Vec<(usize, usize)>) -> Graph {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
    Graph::new(n, edges).expect("catalog graphs are simple")
}

/// `C_n` for `n ≥ 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|i| (0, i)).collect())
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect())
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect())
}

/// The `d`-dimensional cube `Q_d`.
pub fn hypercube(d: usize) -> Graph {
    let n = 1 << d;
    build(
        n,
        (0..n).flat_map(|v| (0..d).filter(move |b| v >> b & 1 == 0).map(move |b| (v, v | 1 << b))).collect(),
    )
}

/// Incidence graph of the Fano plane: points `0..7`, lines `7..14` where line
/// `i` is `{i, i+1, i+3} mod 7`.
pub fn heawood() -> Graph {
    build(
        14,
        (0..7).flat_map(|i| [0, 1, 3].into_iter().map(move |o| ((i + o) % 7, 7 + i))).collect(),
    )
}

/// Duads of `{0..5}` joined to the synthemes (perfect matchings) containing
/// them: 30 vertices, cubic, girth 8.
pub fn tutte_coxeter() -> Graph {
    let duads: Vec<(usize, usize)> = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect();
    let mut synthemes: Vec<[usize; 3]> = Vec::new();
    for &(a, b) in duads.iter().filter(|d| d.0 == 0) {
        let rest: Vec<usize> = (1..6).filter(|&x| x != b).collect();
        let c = rest[0];
        for &d in &rest[1..] {
            let tail: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != d).collect();
            let index = |p: (usize, usize)| duads.iter().position(|&q| q == (p.0.min(p.1), p.0.max(p.1))).unwrap();
            synthemes.push([index((a, b)), index((c, d)), index((tail[0], tail[1]))]);
        }
    }
    let edges = synthemes
        .iter()
        .enumerate()
        .flat_map(|(s, members)| members.iter().map(move |&d| (d, 15 + s)))
        .collect();
    build(30, edges)
}

/// Names accepted by [`high_girth_catalog`], with even cycles up to `C_24`.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = (2..=12).map(|m| format!("C_{}", 2 * m)).collect();
    names.extend(["Q_3", "heawood", "tutte-coxeter"].map(String::from));
    names.extend((2..=5).map(|d| format!("K_{d},{d}")));
    names
}

/// Look up a catalog graph: `C_<even n>`, `Q_3` (or `cube`), `heawood`,
/// `tutte-coxeter`, `K_<d>,<d>`.
pub fn high_girth_catalog(name: &str) -> Result<Graph> {
    let unknown = || Error::UnknownGraph(name.to_string());
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "q_3" | "q3" | "cube" => return Ok(hypercube(3)),
        "heawood" => return Ok(heawood()),
        "tutte-coxeter" | "tutte_coxeter" => return Ok(tutte_coxeter()),
        _ => {}
    }
    if let Some(len) = lower.strip_prefix("c_") {
        let n: usize = len.parse().map_err(|_| unknown())?;
        if n < 4 || n % 2 == 1 {
            return Err(unknown());
        }
        return Ok(cycle(n));
    }
    if let Some(parts) = lower.strip_prefix("k_") {
        let (a, b) = parts.split_once(',').ok_or_else(unknown)?;
        let a: usize = a.parse().map_err(|_| unknown())?;
        let b: usize = b.parse().map_err(|_| unknown())?;
        if a != b || a == 0 {
            return Err(unknown());
        }
        return Ok(complete_bipartite(a, b));
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::girth;

    #[test]
    fn catalog_parameters() {
        let expect = |name: &str, n: usize, e: usize, g: usize, d: usize| {
            let graph = high_girth_catalog(name).unwrap();
            assert_eq!(
                (graph.n(), graph.edge_count(), girth(&graph), graph.max_degree()),
                (n, e, Some(g), d),
                "{name}"
            );
            assert!(graph.is_bipartite(), "{name}");
        };
        expect("heawood", 14, 21, 6, 3);
        expect("C_8", 8, 8, 8, 2);
        expect("tutte-coxeter", 30, 45, 8, 3);
        expect("Q_3", 8, 12, 4, 3);
        expect("K_3,3", 6, 9, 4, 3);
        for name in catalog_names() {
            assert!(high_girth_catalog(&name).is_ok(), "{name}");
        }
        for bad in ["C_5", "C_2", "petersen", "K_2,3", "K_x,1"] {
            assert_eq!(high_girth_catalog(bad), Err(Error::UnknownGraph(bad.into())));
        }
    }

    #[test]
    fn regular_catalog_graphs() {
        for g in [heawood(), tutte_coxeter(), hypercube(3), complete_bipartite(4, 4)] {
            let d = g.degrees();
            assert!(d.iter().all(|&x| x == d[0]));
        }
    }
}
