//! Simple graphs, signings and signed adjacency spectra.

mod catalog;
mod signings;

pub use catalog::{
    catalog_names, complete, complete_bipartite, cycle, heawood, high_girth_catalog, hypercube,
    path, star, tutte_coxeter,
};
pub use signings::{
    best_signing_search, ramanujan_check, sample_sign_invariance, verify_sign_invariance,
    verify_sign_invariance_report, InvarianceReport, InvarianceWitness, SigningSearch,
    EXHAUSTION_CAP,
};

use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{isolate, ExactPolynomial, RootInterval, SquareMatrixQ};
use crate::rational::{int, two_pow, Rational};

/// Undirected simple graph on vertices `0..n`. Edge order is significant:
/// signings are indexed by it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.n, raw.edges.iter().map(|e| (e[0], e[1])).collect())
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge ({u}, {v}) leaves vertex range 0..{n}")));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidArgument(format!("repeated edge ({u}, {v})")));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let adj = self.neighbours();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// A proper two-colouring, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adj = self.neighbours();
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let c = colour[u].unwrap();
                for &w in &adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

/// Length of a shortest cycle, or `None` for a forest.
pub fn girth(g: &Graph) -> Option<usize> {
    let adj = g.neighbours();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; g.n];
    let mut parent = vec![usize::MAX; g.n];
    for s in 0..g.n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                // Any cycle closed from here on is at least 2·dist[u] long.
                if 2 * dist[u] >= b {
                    break 'bfs;
                }
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// `2|E|/n`, a lower bound on the largest adjacency eigenvalue.
pub fn avg_degree_bound(g: &Graph) -> Rational {
    if g.n == 0 {
        return Rational::zero();
    }
    Rational::new((2 * g.edges.len()).into(), g.n.into())
}

/// An assignment of ±1 to every edge, in the graph's edge order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct Signing(Vec<i8>);

impl TryFrom<Vec<i8>> for Signing {
    type Error = Error;

    fn try_from(signs: Vec<i8>) -> Result<Self> {
        Signing::new(signs)
    }
}

impl From<Signing> for Vec<i8> {
    fn from(s: Signing) -> Self {
        s.0
    }
}

impl Signing {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument(format!("sign {bad} is not ±1")));
        }
        Ok(Signing(signs))
    }

    pub fn all_positive(edges: usize) -> Self {
        Signing(vec![1; edges])
    }

    /// Edge `e` gets −1 exactly when bit `e` of `mask` is set.
    pub fn from_mask(mask: u64, edges: usize) -> Self {
        Signing((0..edges).map(|e| if mask >> e & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negative_count(&self) -> usize {
        self.0.iter().filter(|&&s| s < 0).count()
    }
}

fn check_signing(g: &Graph, s: &Signing) -> Result<()> {
    if s.len() != g.edge_count() {
        return Err(Error::SigningMismatch { got: s.len(), expected: g.edge_count() });
    }
    Ok(())
}

fn check_diagonal(g: &Graph, d: &[Rational]) -> Result<()> {
    if d.len() != g.n {
        return Err(Error::InvalidArgument(format!(
            "diagonal has {} entries for {} vertices",
            d.len(),
            g.n
        )));
    }
    Ok(())
}

/// `D + A_s`.
pub fn signed_adjacency(g: &Graph, s: &Signing, d: &[Rational]) -> Result<SquareMatrixQ> {
    check_signing(g, s)?;
    check_diagonal(g, d)?;
    let mut rows = vec![vec![Rational::zero(); g.n]; g.n];
    for (i, x) in d.iter().enumerate() {
        rows[i][i] = x.clone();
    }
    for (&(u, v), &sign) in g.edges.iter().zip(s.signs()) {
        rows[u][v] = int(sign as i64);
        rows[v][u] = int(sign as i64);
    }
    SquareMatrixQ::new(rows)
}

/// Exact characteristic polynomial of `D + A_s` with certified root intervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedSpectrum {
    pub char_poly: ExactPolynomial,
    pub roots: Vec<RootInterval>,
}

impl SignedSpectrum {
    /// Total multiplicity of the certified roots; equals `n` for a symmetric matrix.
    pub fn root_count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// Spectrum of `D + A_s`, with root intervals no wider than `2^-bits`.
pub fn signed_spectrum(g: &Graph, s: &Signing, d: &[Rational], bits: u32) -> Result<SignedSpectrum> {
    let char_poly = signed_adjacency(g, s, d)?.char_poly();
    let width = two_pow(-(bits as i64));
    let mut roots = isolate(&char_poly)?;
    let roots = roots
        .iter_mut()
        .map(|r| {
            r.refine_to_width(&width);
            r.as_root_interval()
        })
        .collect();
    Ok(SignedSpectrum { char_poly, roots })
}

/// A zero diagonal of the right size.
pub fn zero_diagonal(g: &Graph) -> Vec<Rational> {
    vec![Rational::zero(); g.n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn construction_is_checked() {
        assert!(Graph::new(2, vec![(0, 2)]).is_err());
        assert!(Graph::new(2, vec![(1, 1)]).is_err());
        assert!(Graph::new(2, vec![(0, 1), (1, 0)]).is_err());
        let g: Graph = serde_json::from_str(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert!(serde_json::from_str::<Graph>(r#"{"n":1,"edges":[[0,1]]}"#).is_err());
        assert!(Signing::new(vec![1, 0]).is_err());
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&cycle(5)), Some(5));
        assert_eq!(girth(&path(6)), None);
        assert_eq!(girth(&star(4)), None);
        assert_eq!(girth(&complete(4)), Some(3));
        assert_eq!(girth(&heawood()), Some(6));
        assert_eq!(girth(&hypercube(3)), Some(4));
        assert_eq!(girth(&tutte_coxeter()), Some(8));
        // Two disjoint cycles.
        let g = Graph::new(7, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        assert_eq!(girth(&g), Some(3));
    }

    #[test]
    fn adjacency_examples() {
        let edge = Graph::new(2, vec![(0, 1)]).unwrap();
        let d = zero_diagonal(&edge);
        let plus = signed_adjacency(&edge, &Signing::all_positive(1), &d).unwrap();
        assert_eq!(plus, SquareMatrixQ::from_ints(&[&[0, 1], &[1, 0]]).unwrap());
        let minus = signed_adjacency(&edge, &Signing::from_mask(1, 1), &d).unwrap();
        assert_eq!(minus, SquareMatrixQ::from_ints(&[&[0, -1], &[-1, 0]]).unwrap());
        assert_eq!(
            signed_adjacency(&edge, &Signing::all_positive(2), &d),
            Err(Error::SigningMismatch { got: 2, expected: 1 })
        );
        assert!(signed_adjacency(&edge, &Signing::all_positive(1), &[int(0)]).is_err());

        let c4 = cycle(4);
        let spec = signed_spectrum(&c4, &Signing::all_positive(4), &zero_diagonal(&c4), 20).unwrap();
        let values: Vec<(Rational, usize)> =
            spec.roots.iter().map(|r| (r.lo.clone(), r.multiplicity)).collect();
        assert_eq!(values, vec![(int(-2), 1), (int(0), 2), (int(2), 1)]);
        assert!(spec.roots.iter().all(|r| r.lo == r.hi));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(avg_degree_bound(&cycle(7)), int(2));
        assert_eq!(avg_degree_bound(&complete(4)), int(3));
        assert_eq!(avg_degree_bound(&heawood()), int(3));
        assert_eq!(avg_degree_bound(&path(3)), rat(4, 3));
        assert!(heawood().is_bipartite() && !cycle(5).is_bipartite());
        assert_eq!(heawood().components(), 1);
    }
}
