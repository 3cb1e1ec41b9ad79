use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::cliques::clique_number;
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};

/// Output of [`symmetrize`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Symmetrization {
    #[serde(skip)]
    pub graph: Graph,
    /// Parts of the complete multipartite graph, ordered by least vertex.
    #[serde(serialize_with = "ser_parts")]
    pub parts: Vec<VertexSet>,
    pub clique_number: usize,
    /// Vertices with D_H(v,x) < D_G(v,x), decided in exact rational
    /// arithmetic. Empty for a sound construction.
    pub deficits: Vec<usize>,
}

fn ser_parts<S: serde::Serializer>(parts: &[VertexSet], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(parts.iter().map(|p| p.iter().collect::<Vec<_>>()))
}

impl Symmetrization {
    pub fn dominates(&self) -> bool {
        self.deficits.is_empty()
    }
}

/// Replaces a K_{r+1}-free graph by a complete multipartite graph H on the
/// same vertices whose weighted degrees D_H(v,x) = Σ_{i∈Γ_H(v)} x_i are all
/// at least those of G.
///
/// Picks u with the largest D (lowest index on ties), keeps W = V ∖ Γ(u) as
/// one part and recurses on G[Γ(u)]. The number of parts never exceeds ω(G)
/// because every recursion level strips one vertex of a maximum clique.
pub fn symmetrize(g: &Graph, x: &[f64]) -> Result<Symmetrization> {
    if x.len() != g.order() {
        return Err(Error::LengthMismatch { expected: g.order(), found: x.len() });
    }
    let exact: Vec<BigRational> = x
        .iter()
        .map(|&v| {
            if v >= 0.0 && v.is_finite() {
                Ok(BigRational::from_float(v).expect("finite"))
            } else {
                Err(invalid(format!("symmetrize needs finite nonnegative weights, got {v}")))
            }
        })
        .collect::<Result<_>>()?;

    let mut parts = Vec::new();
    let mut rest = g.vertices();
    while !rest.is_empty() {
        let u = heaviest(g, rest, &exact);
        let inside = g.nbrs(u).intersection(rest);
        parts.push(rest.difference(inside));
        rest = inside;
    }
    parts.sort_by_key(|p| p.first());
    let h = Graph::from_parts(g.order(), &parts)?;

    let deficits = g.vertices().iter().filter(|&v| weighted(h.nbrs(v), &exact) < weighted(g.nbrs(v), &exact)).collect();
    Ok(Symmetrization { graph: h, parts, clique_number: clique_number(g), deficits })
}

fn weighted(set: VertexSet, x: &[BigRational]) -> BigRational {
    set.iter().fold(BigRational::zero(), |acc, i| acc + &x[i])
}

fn heaviest(g: &Graph, within: VertexSet, x: &[BigRational]) -> usize {
    let mut best: Option<(usize, BigRational)> = None;
    for v in within {
        let d = weighted(g.nbrs(v).intersection(within), x);
        if best.as_ref().is_none_or(|(_, b)| d > *b) {
            best = Some((v, d));
        }
    }
    best.expect("nonempty set").0
}
