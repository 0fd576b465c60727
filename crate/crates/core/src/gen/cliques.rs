use crate::hypercore::{Graph, Hypergraph};
use crate::Result;

/// Fixed-width bit set over graph vertices.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    fn and(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn count_and(&self, other: &Self) -> u32 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones()).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }
}

/// All maximal cliques by Bron–Kerbosch with Tomita pivoting. Each clique is
/// sorted ascending and the list is sorted lexicographically.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n_vertices();
    let mut adj = vec![Bits::empty(n); n];
    for &(u, v, _) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    expand(&adj, &mut r, Bits::full(n), Bits::empty(n), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn expand(adj: &[Bits], r: &mut Vec<usize>, mut p: Bits, mut x: Bits, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.count_and(&adj[u]), std::cmp::Reverse(u)))
        .expect("P is nonempty");
    let candidates: Vec<usize> = p.and_not(&adj[pivot]).iter().collect();
    for v in candidates {
        r.push(v);
        expand(adj, r, p.and(&adj[v]), x.and(&adj[v]), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Unit-weight hypergraph with one edge per clique.
pub fn cliques_to_hypergraph(cliques: &[Vec<usize>], n: usize) -> Result<Hypergraph> {
    Hypergraph::unweighted(n, cliques.to_vec())
}
