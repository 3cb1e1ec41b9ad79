//! Cliques, clique number and joint sizes.

use serde::Serialize;

use crate::graph::{Graph, VertexSet};

/// All maximal cliques, via Bron–Kerbosch with Tomita pivoting. Output is
/// sorted by decreasing size, then by the bitmask of members.
pub fn maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    if g.order() > 0 {
        bk_pivot(g, VertexSet::EMPTY, g.vertices(), VertexSet::EMPTY, &mut out);
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    out
}

fn bk_pivot(g: &Graph, r: VertexSet, p: VertexSet, x: VertexSet, out: &mut Vec<VertexSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p.union(x).iter().max_by_key(|&u| (p.intersection(g.nbrs(u)).len(), std::cmp::Reverse(u))).expect("p is nonempty");
    let (mut p, mut x) = (p, x);
    for v in p.difference(g.nbrs(pivot)) {
        let nv = g.nbrs(v);
        let mut r2 = r;
        r2.insert(v);
        bk_pivot(g, r2, p.intersection(nv), x.intersection(nv), out);
        p.remove(v);
        x.insert(v);
    }
}

/// ω(G): 1 for a nonempty edgeless graph, 0 for the graph with no vertices.
pub fn clique_number(g: &Graph) -> usize {
    fn grow(g: &Graph, size: usize, cand: VertexSet, best: &mut usize) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        let mut cand = cand;
        while let Some(v) = cand.first() {
            if size + cand.len() <= *best {
                return;
            }
            cand.remove(v);
            grow(g, size + 1, cand.intersection(g.nbrs(v)), best);
        }
    }
    let mut best = 0;
    grow(g, 0, g.vertices(), &mut best);
    best
}

/// Number of `k`-cliques contained in `within`.
pub fn count_cliques_within(g: &Graph, within: VertexSet, k: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    if within.len() < k {
        return 0;
    }
    if k == 1 {
        return within.len() as u64;
    }
    let mut total = 0;
    let mut rest = within;
    while let Some(v) = rest.first() {
        rest.remove(v);
        total += count_cliques_within(g, rest.intersection(g.nbrs(v)), k - 1);
    }
    total
}

/// Number of `r`-cliques that contain the edge `{u, v}`; 0 when `{u, v}` is
/// not an edge or `r < 2`.
pub fn count_cliques_on_edge(g: &Graph, edge: (usize, usize), r: usize) -> u64 {
    let (u, v) = edge;
    if r < 2 || !g.has_edge(u, v) {
        return 0;
    }
    count_cliques_within(g, g.nbrs(u).intersection(g.nbrs(v)), r - 2)
}

/// js_r(G): the largest number of `r`-cliques sharing one edge, or 0 if G
/// has no `r`-clique.
pub fn joint_size(g: &Graph, r: usize) -> u64 {
    g.edges().map(|e| count_cliques_on_edge(g, e, r)).max().unwrap_or(0)
}

/// The `r`-cliques of a graph; `members.len()` is k_r(G).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueList {
    pub r: usize,
    pub members: Vec<Vec<usize>>,
}

impl CliqueList {
    pub fn of(g: &Graph, r: usize) -> Self {
        fn rec(g: &Graph, cur: &mut Vec<usize>, cand: VertexSet, r: usize, out: &mut Vec<Vec<usize>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            let mut rest = cand;
            while let Some(v) = rest.first() {
                rest.remove(v);
                if cur.len() + 1 + rest.intersection(g.nbrs(v)).len() < r {
                    continue;
                }
                cur.push(v);
                rec(g, cur, rest.intersection(g.nbrs(v)), r, out);
                cur.pop();
            }
        }
        let mut members = Vec::new();
        if r > 0 {
            rec(g, &mut Vec::with_capacity(r), g.vertices(), r, &mut members);
        }
        CliqueList { r, members }
    }

    /// k_r(G).
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::turan_graph;

    fn brute_joint(g: &Graph, r: usize) -> u64 {
        // enumerate r-subsets explicitly
        let n = g.order();
        let mut best = 0;
        for (a, b) in g.edges() {
            let mut cnt = 0;
            for mask in 0u64..(1 << n) {
                if mask.count_ones() as usize != r || mask >> a & 1 == 0 || mask >> b & 1 == 0 {
                    continue;
                }
                let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                if vs.iter().all(|&i| vs.iter().all(|&j| i == j || g.has_edge(i, j))) {
                    cnt += 1;
                }
            }
            best = best.max(cnt);
        }
        best
    }

    #[test]
    fn clique_number_examples() {
        assert_eq!(clique_number(&Graph::complete(5).unwrap()), 5);
        assert_eq!(clique_number(&Graph::cycle(5).unwrap()), 2);
        assert_eq!(clique_number(&turan_graph(3, 9).unwrap()), 3);
        assert_eq!(clique_number(&Graph::empty(4).unwrap()), 1);
        assert_eq!(clique_number(&Graph::empty(0).unwrap()), 0);
    }

    #[test]
    fn joint_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(joint_size(&k4, 3), 2);
        assert_eq!(brute_joint(&k4, 3), 2);
        assert_eq!(joint_size(&Graph::cycle(5).unwrap(), 3), 0);
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(joint_size(&k5, 4), 3);
        assert_eq!(brute_joint(&k5, 4), 3);
        assert_eq!(count_cliques_on_edge(&k5, (0, 0), 3), 0);
    }

    #[test]
    fn maximal_cliques_of_c5_and_k4_minus_edge() {
        assert_eq!(maximal_cliques(&Graph::cycle(5).unwrap()).len(), 5);
        let g = crate::graph::kr_plus(2, 2, 2).unwrap();
        let mc = maximal_cliques(&g);
        assert_eq!(mc.len(), 2);
        assert!(mc.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn clique_list_counts() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(CliqueList::of(&k5, 3).count(), 10);
        assert_eq!(CliqueList::of(&turan_graph(3, 6).unwrap(), 3).count(), 8);
        assert_eq!(CliqueList::of(&Graph::cycle(5).unwrap(), 3).count(), 0);
    }

    #[test]
    fn joints_agree_with_brute_force_on_random_graphs() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let g = Graph::random(7, 0.6, &mut rng).unwrap();
            for r in 3..=5 {
                assert_eq!(joint_size(&g, r), brute_joint(&g, r));
                assert_eq!(joint_size(&g, r) >= 1, clique_number(&g) >= r);
            }
            let mc = maximal_cliques(&g);
            assert_eq!(mc[0].len(), clique_number(&g));
        }
    }
}
