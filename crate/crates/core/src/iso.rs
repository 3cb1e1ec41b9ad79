//! Canonical forms, isomorphism, exhaustive enumeration of small graphs and
//! (non-induced) subgraph containment.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order handled by the built-in enumerator.
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Orders above this use an embedding search instead of canonical forms in
/// [`is_isomorphic`].
const CANONICAL_ISO_LIMIT: usize = 10;

/// Canonical adjacency bit string: the lexicographically smallest graph6
/// bit sequence (columns of the upper triangle, top to bottom) over all
/// vertex relabellings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub order: usize,
    pub bits: Vec<u8>,
}

/// Returns the canonical form together with the labelling that attains it:
/// `labelling[pos]` is the original vertex placed at position `pos`.
///
/// Exhaustive branch and bound over permutations; practical up to n ≈ 10.
pub fn canonical_form(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.order();
    let mut search = CanonSearch { g, perm: vec![0; n], cur: vec![0; n * n.saturating_sub(1) / 2], best: None };
    search.dfs(0, VertexSet::EMPTY);
    let (bits, labelling) = search.best.unwrap_or_default();
    (CanonicalForm { order: n, bits }, labelling)
}

struct CanonSearch<'a> {
    g: &'a Graph,
    perm: Vec<usize>,
    cur: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl CanonSearch<'_> {
    fn dfs(&mut self, pos: usize, used: VertexSet) {
        let n = self.g.order();
        if pos == n {
            let better = self.best.as_ref().is_none_or(|(b, _)| self.cur < *b);
            if better {
                self.best = Some((self.cur.clone(), self.perm.clone()));
            }
            return;
        }
        let off = pos * pos.saturating_sub(1) / 2;
        let end = off + pos;
        for v in self.g.vertices().difference(used) {
            self.perm[pos] = v;
            for i in 0..pos {
                self.cur[off + i] = u8::from(self.g.has_edge(self.perm[i], v));
            }
            if let Some((best, _)) = &self.best {
                if self.cur[..end] > best[..end] {
                    continue;
                }
            }
            let mut used2 = used;
            used2.insert(v);
            self.dfs(pos + 1, used2);
        }
    }
}

/// The graph relabelled into canonical position order.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, labelling) = canonical_form(g);
    let mut inverse = vec![0; g.order()];
    for (pos, &v) in labelling.iter().enumerate() {
        inverse[v] = pos;
    }
    g.permuted(&inverse).expect("labelling is a permutation")
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

/// Isomorphism test. Orders up to 10 compare canonical forms; larger orders
/// fall back to an embedding search, which is exact when orders and edge
/// counts already agree.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.edge_count() != h.edge_count() || sorted_degrees(g) != sorted_degrees(h) {
        return false;
    }
    if g.order() <= CANONICAL_ISO_LIMIT {
        canonical_form(g).0 == canonical_form(h).0
    } else {
        subgraph_contains(g, h)
    }
}

type Cache = Mutex<HashMap<usize, Arc<Vec<Graph>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// One canonically labelled representative of every isomorphism class of
/// graphs on `n` vertices, sorted by canonical bit string.
pub fn all_graphs(n: usize) -> Result<Arc<Vec<Graph>>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(invalid(format!("built-in enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}")));
    }
    if let Some(hit) = cache().lock().unwrap().get(&n) {
        return Ok(Arc::clone(hit));
    }
    let graphs = if n == 1 {
        vec![Graph::empty(1)?]
    } else {
        let smaller = all_graphs(n - 1)?;
        extend_by_one_vertex(&smaller, n)
    };
    let graphs = Arc::new(graphs);
    cache().lock().unwrap().insert(n, Arc::clone(&graphs));
    Ok(graphs)
}

// Every graph on n vertices arises from a representative on n−1 vertices by
// attaching vertex n−1 to some subset, so this is complete; canonical forms
// remove the duplicates.
fn extend_by_one_vertex(smaller: &[Graph], n: usize) -> Vec<Graph> {
    let candidates: Vec<(CanonicalForm, Graph)> = smaller
        .par_iter()
        .flat_map_iter(|g| {
            (0u64..1 << (n - 1)).map(move |mask| {
                let mut h = Graph::empty(n).expect("n <= 7");
                for (i, j) in g.edges() {
                    h.add_edge(i, j).expect("in range");
                }
                for i in VertexSet(mask) {
                    h.add_edge(i, n - 1).expect("in range");
                }
                h
            })
        })
        .map(|h| {
            let (form, _) = canonical_form(&h);
            let canon = canonical_graph(&h);
            (form, canon)
        })
        .collect();
    let unique: BTreeMap<CanonicalForm, Graph> = candidates.into_iter().collect();
    unique.into_values().collect()
}

/// Isomorphism-reduced enumeration of graphs on `n ≤ 7` vertices that
/// satisfy `predicate`.
pub fn enumerate_graphs<F>(n: usize, predicate: F) -> Result<Vec<Graph>>
where
    F: Fn(&Graph) -> bool,
{
    Ok(all_graphs(n)?.iter().filter(|g| predicate(g)).cloned().collect())
}

/// True iff some injective map sends every edge of `pattern` to an edge of
/// `g` (non-induced containment).
pub fn subgraph_contains(g: &Graph, pattern: &Graph) -> bool {
    let k = pattern.order();
    if k > g.order() || pattern.edge_count() > g.edge_count() {
        return false;
    }
    if k == 0 {
        return true;
    }
    // Visit pattern vertices so each one has as many already-placed
    // neighbours as possible; ties go to higher degree.
    let mut order = Vec::with_capacity(k);
    let mut placed = VertexSet::EMPTY;
    for _ in 0..k {
        let next = pattern
            .vertices()
            .difference(placed)
            .iter()
            .max_by_key(|&v| (pattern.nbrs(v).intersection(placed).len(), pattern.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        order.push(next);
        placed.insert(next);
    }
    let mut by_degree = vec![VertexSet::EMPTY; g.order() + 1];
    for v in 0..g.order() {
        for set in &mut by_degree[..=g.degree(v)] {
            set.insert(v);
        }
    }
    let mut image = vec![usize::MAX; k];
    embed(g, pattern, &order, 0, &mut image, VertexSet::EMPTY, &by_degree)
}

fn embed(g: &Graph, pattern: &Graph, order: &[usize], depth: usize, image: &mut [usize], used: VertexSet, by_degree: &[VertexSet]) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let need = pattern.degree(v);
    if need >= by_degree.len() {
        return false;
    }
    let mut cand = by_degree[need].difference(used);
    for u in pattern.nbrs(v) {
        if image[u] != usize::MAX {
            cand = cand.intersection(g.nbrs(image[u]));
        }
    }
    for w in cand {
        image[v] = w;
        let mut used2 = used;
        used2.insert(w);
        if embed(g, pattern, order, depth + 1, image, used2, by_degree) {
            return true;
        }
    }
    image[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::clique_number;
    use crate::graph::{kr_plus, turan_graph};

    fn labeled_graph(n: usize, mask: u64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> k & 1 == 1 {
                    g.add_edge(i, j).unwrap();
                }
                k += 1;
            }
        }
        g
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Independent dedup: canonical key = minimum over all relabellings of
    /// the edge bitmask, computed without the branch and bound.
    fn brute_class_count(n: usize, keep: impl Fn(&Graph) -> bool) -> usize {
        let perms = permutations(n);
        let m = n * (n - 1) / 2;
        let mut keys = std::collections::HashSet::new();
        for mask in 0u64..1 << m {
            let g = labeled_graph(n, mask);
            if !keep(&g) {
                continue;
            }
            let key = perms
                .iter()
                .map(|p| {
                    let h = g.permuted(p).unwrap();
                    let mut code = 0u64;
                    let mut k = 0;
                    for j in 1..n {
                        for i in 0..j {
                            code |= u64::from(h.has_edge(i, j)) << k;
                            k += 1;
                        }
                    }
                    code
                })
                .min()
                .unwrap();
            keys.insert(key);
        }
        keys.len()
    }

    #[test]
    fn class_counts() {
        assert_eq!(enumerate_graphs(3, |_| true).unwrap().len(), 4);
        assert_eq!(enumerate_graphs(4, |_| true).unwrap().len(), 11);
        assert_eq!(enumerate_graphs(5, |_| true).unwrap().len(), 34);
        assert_eq!(enumerate_graphs(6, |_| true).unwrap().len(), 156);
        assert_eq!(enumerate_graphs(7, |_| true).unwrap().len(), 1044);
        assert!(enumerate_graphs(8, |_| true).is_err());
        assert!(enumerate_graphs(0, |_| true).is_err());
    }

    #[test]
    fn class_counts_match_brute_force_dedup() {
        assert_eq!(brute_class_count(3, |_| true), 4);
        assert_eq!(brute_class_count(5, |_| true), 34);
        let tri_free = |g: &Graph| clique_number(g) < 3;
        assert_eq!(brute_class_count(4, tri_free), 7);
        assert_eq!(enumerate_graphs(4, tri_free).unwrap().len(), 7);
        assert_eq!(enumerate_graphs(5, tri_free).unwrap().len(), brute_class_count(5, tri_free));
    }

    #[test]
    fn enumeration_is_pairwise_non_isomorphic() {
        for n in 1..=5 {
            let gs = enumerate_graphs(n, |_| true).unwrap();
            for (a, g) in gs.iter().enumerate() {
                for h in &gs[a + 1..] {
                    assert!(!is_isomorphic(g, h));
                }
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        assert!(is_isomorphic(&Graph::cycle(4).unwrap(), &turan_graph(2, 4).unwrap()));
        assert!(!is_isomorphic(&Graph::complete(3).unwrap(), &Graph::path(3).unwrap()));
        let with_isolated = kr_plus(2, 2, 1).unwrap().disjoint_union(&Graph::empty(2).unwrap()).unwrap();
        assert!(!is_isomorphic(&turan_graph(2, 5).unwrap(), &with_isolated));
        // embedding fallback on larger, highly symmetric graphs
        let t = turan_graph(3, 12).unwrap();
        let perm: Vec<usize> = (0..12).map(|i| (i * 5) % 12).collect();
        assert!(is_isomorphic(&t, &t.permuted(&perm).unwrap()));
        let mut u = t.clone();
        u.remove_edge(0, 4).unwrap();
        u.add_edge(0, 1).unwrap();
        assert!(!is_isomorphic(&t, &u));
    }

    #[test]
    fn canonical_form_is_relabelling_invariant() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let base = canonical_form(&g).0;
        for p in permutations(6).iter().step_by(37) {
            assert_eq!(canonical_form(&g.permuted(p).unwrap()).0, base);
        }
        assert_eq!(canonical_form(&canonical_graph(&g)).0, base);
    }

    #[test]
    fn containment_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert!(subgraph_contains(&Graph::complete(4).unwrap(), &k3));
        assert!(!subgraph_contains(&Graph::cycle(5).unwrap(), &k3));
        assert!(subgraph_contains(&kr_plus(2, 2, 2).unwrap(), &k3));
        assert!(subgraph_contains(&k3, &Graph::empty(0).unwrap()));
    }

    fn brute_contains(g: &Graph, p: &Graph) -> bool {
        fn rec(g: &Graph, p: &Graph, img: &mut Vec<usize>) -> bool {
            if img.len() == p.order() {
                return p.edges().all(|(a, b)| g.has_edge(img[a], img[b]));
            }
            for w in 0..g.order() {
                if !img.contains(&w) {
                    img.push(w);
                    if rec(g, p, img) {
                        return true;
                    }
                    img.pop();
                }
            }
            false
        }
        rec(g, p, &mut Vec::new())
    }

    #[test]
    fn containment_matches_brute_force() {
        let patterns: Vec<Graph> = (1..=4).flat_map(|k| enumerate_graphs(k, |_| true).unwrap()).collect();
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = 4 + rand::Rng::gen_range(&mut rng, 0..4);
            let g = Graph::random(n, 0.45, &mut rng).unwrap();
            for p in &patterns {
                assert_eq!(subgraph_contains(&g, p), brute_contains(&g, p), "{g:?} {p:?}");
            }
        }
    }
}
