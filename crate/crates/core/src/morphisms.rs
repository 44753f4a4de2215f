//! Structure maps between flip digraphs: deleting the middle color, taking
//! the core, and lifting maximal chains one dimension up.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::colors::{enumerate_packets, stick_iter, ColorSet};
use crate::digraph::{Chain, FlipDigraph};
use crate::error::{Error, Result};
use crate::flips::EdgeKind;
use crate::geometry::core;
use crate::inversion::{validate, Cubillage, InversionSet};

/// Drops the middle color `m + 1` of `[2m + 1]`: keeps the inversions that
/// avoid it and shifts larger colors down by one.
pub fn reduce_middle(q: &Cubillage) -> Result<Cubillage> {
    let (n, d) = (q.n(), q.d());
    if n % 2 == 0 {
        return Err(Error::precondition(format!("middle-color reduction needs n odd, got {n}")));
    }
    if !q.is_symmetric() {
        return Err(Error::precondition("middle-color reduction needs a symmetric cubillage"));
    }
    if d >= n {
        return Err(Error::precondition(format!("no reduction of ({n}, {d}): dimension exceeds {}", n - 1)));
    }
    let middle = n / 2 + 1;
    let low_mask = (1u64 << (middle - 1)) - 1;
    let members = q
        .iter()
        .filter(|f| !f.contains(middle))
        .map(|f| ColorSet::from_bits((f.bits() & low_mask) | ((f.bits() >> 1) & !low_mask)));
    let set = InversionSet::from_members(n - 1, d, members)?;
    let reduced = validate(set).map_err(|v| Error::Internal(format!("reduction is not bi-convex: {v}")))?;
    if !reduced.is_symmetric() {
        return Err(Error::Internal("reduction of a symmetric cubillage is not symmetric".into()));
    }
    Ok(reduced)
}

/// A total map from the nodes of one digraph to the nodes of another.
#[derive(Debug, Clone)]
pub struct DigraphMap<'a> {
    pub source: &'a FlipDigraph,
    pub target: &'a FlipDigraph,
    pub mapping: Vec<usize>,
}

impl<'a> DigraphMap<'a> {
    /// Maps every source node through `f`; each image must be a target node.
    pub fn from_fn(
        source: &'a FlipDigraph,
        target: &'a FlipDigraph,
        f: impl Fn(&Cubillage) -> Result<Cubillage> + Sync,
    ) -> Result<DigraphMap<'a>> {
        let mapping = source
            .nodes()
            .par_iter()
            .enumerate()
            .map(|(i, q)| {
                let image = f(q)?;
                target.id_of(&image).ok_or_else(|| {
                    Error::Internal(format!("image of source node {i} is not a node of the target digraph"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DigraphMap { source, target, mapping })
    }

    pub fn identity(g: &'a FlipDigraph) -> DigraphMap<'a> {
        DigraphMap { source: g, target: g, mapping: (0..g.nodes().len()).collect() }
    }

    /// Source node ids grouped by image, indexed by target node id.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.target.nodes().len()];
        for (i, &t) in self.mapping.iter().enumerate() {
            fibers[t].push(i);
        }
        fibers
    }

    /// What a source edge becomes under the map.
    pub fn edge_image(&self, edge: usize) -> ArrowImage {
        let e = self.source.edges()[edge];
        let (a, b) = (self.mapping[e.src], self.mapping[e.dst]);
        if a == b {
            return ArrowImage::Loop;
        }
        match self.target.out_edges(a).find(|t| t.dst == b) {
            Some(t) => ArrowImage::Arrow(t.kind),
            None => ArrowImage::Broken,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase", tag = "image", content = "kind")]
pub enum ArrowImage {
    Loop,
    Arrow(EdgeKind),
    /// The endpoints differ and are not joined by an arrow.
    Broken,
}

impl fmt::Display for ArrowImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowImage::Loop => f.write_str("loop"),
            ArrowImage::Arrow(k) => write!(f, "{k}"),
            ArrowImage::Broken => f.write_str("broken"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub target: usize,
    pub members: Vec<usize>,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub arrow_consistent: bool,
    pub surjective: bool,
    pub full: bool,
    pub fibers_connected: bool,
    pub fibers: Vec<Fiber>,
    /// How many source edges of each kind land on each kind of image.
    pub arrow_images: BTreeMap<String, usize>,
    pub witnesses: Vec<String>,
}

/// Arrow consistency (loops allowed), surjectivity, fullness and fiber
/// connectivity, where fibers are joined by the arrows the map collapses.
pub fn check_digraph_map(map: &DigraphMap<'_>) -> MapReport {
    let mut witnesses = Vec::new();
    let mut arrow_images = BTreeMap::new();
    let mut arrow_consistent = true;
    let mut hit = vec![false; map.target.edges().len()];
    for (i, e) in map.source.edges().iter().enumerate() {
        let image = map.edge_image(i);
        *arrow_images.entry(format!("{}->{}", e.kind, image)).or_insert(0) += 1;
        match image {
            ArrowImage::Broken => {
                if arrow_consistent {
                    witnesses.push(format!(
                        "edge {}->{} maps to {}->{}, which is not an arrow",
                        e.src, e.dst, map.mapping[e.src], map.mapping[e.dst]
                    ));
                }
                arrow_consistent = false;
            }
            ArrowImage::Arrow(_) => {
                let (a, b) = (map.mapping[e.src], map.mapping[e.dst]);
                if let Some(j) = map.target.edges().iter().position(|t| t.src == a && t.dst == b) {
                    hit[j] = true;
                }
            }
            ArrowImage::Loop => {}
        }
    }
    let fibers: Vec<Fiber> = map
        .fibers()
        .into_iter()
        .enumerate()
        .map(|(target, members)| {
            let connected = map.source.induced_connected(&members, |_| true);
            Fiber { target, members, connected }
        })
        .collect();
    let surjective = fibers.iter().all(|f| !f.members.is_empty());
    if let Some(f) = fibers.iter().find(|f| f.members.is_empty()) {
        witnesses.push(format!("target node {} has no preimage", f.target));
    }
    let missing = hit.iter().position(|h| !h);
    if let Some(j) = missing {
        let t = map.target.edges()[j];
        witnesses.push(format!("target arrow {}->{} has no preimage arrow", t.src, t.dst));
    }
    let fibers_connected = fibers.iter().all(|f| f.connected);
    if let Some(f) = fibers.iter().find(|f| !f.connected) {
        witnesses.push(format!("fiber over target node {} is disconnected", f.target));
    }
    MapReport {
        arrow_consistent,
        surjective,
        full: surjective && missing.is_none(),
        fibers_connected,
        fibers,
        arrow_images,
        witnesses,
    }
}

/// The middle-color reduction from the symmetric digraph on `2m + 1` colors
/// to the one on `2m` colors.
pub fn red_map<'a>(source: &'a FlipDigraph, target: &'a FlipDigraph) -> Result<DigraphMap<'a>> {
    if source.n().is_multiple_of(2) || target.n() + 1 != source.n() || target.d() != source.d() {
        return Err(Error::precondition(format!(
            "reduction goes from ({}, d) with odd n to ({}, d)",
            source.n(),
            source.n().saturating_sub(1)
        )));
    }
    DigraphMap::from_fn(source, target, reduce_middle)
}

/// Fibers of the middle-color reduction with their connectivity.
pub fn red_fibers(source: &FlipDigraph, target: &FlipDigraph) -> Result<Vec<Fiber>> {
    Ok(check_digraph_map(&red_map(source, target)?).fibers)
}

/// The core map from the symmetric digraph on `(2m, d)` to the type-A
/// digraph on `(m, d/2)`.
pub fn cor_map<'a>(source: &'a FlipDigraph, target: &'a FlipDigraph) -> Result<DigraphMap<'a>> {
    if source.n() != 2 * target.n() || source.d() != 2 * target.d() {
        return Err(Error::precondition(format!(
            "core goes from (2m, 2k) to (m, k), got ({}, {}) to ({}, {})",
            source.n(),
            source.d(),
            target.n(),
            target.d()
        )));
    }
    DigraphMap::from_fn(source, target, core)
}

/// The cubillage of `Z(n, d + 1)` swept by a maximal chain of `g`.
///
/// Every packet is added at exactly one step of the chain. A `(d+2)`-packet
/// is an inversion of the lift when its stick is added in reverse
/// lexicographic order; every stick must be added monotonically.
pub fn chain_lift(g: &FlipDigraph, chain: &Chain) -> Result<Cubillage> {
    let (n, d) = (g.n(), g.d());
    let nodes = g.chain_nodes(chain);
    let (first, last) = (g.node(nodes[0]), g.node(*nodes.last().expect("chains are non-empty")));
    if !first.is_standard() || !last.is_antistandard() {
        return Err(Error::precondition("a lifted chain must run from the standard to the antistandard cubillage"));
    }
    if d + 1 > n {
        return Err(Error::precondition(format!("cannot lift ({n}, {d}) to dimension {}", d + 1)));
    }
    let mut step_of: BTreeMap<ColorSet, usize> = BTreeMap::new();
    for (step, &e) in chain.edges.iter().enumerate() {
        let edge = g.edges()[e];
        if edge.kind == EdgeKind::Barrel {
            return Err(Error::BarrelHole { step });
        }
        let before = g.node(edge.src);
        for f in g.node(edge.dst).members().difference(before.members()) {
            step_of.insert(*f, step);
        }
    }
    let mut lifted = InversionSet::new(n, d + 1)?;
    if d + 2 <= n {
        for big in enumerate_packets(n, d + 2)? {
            let steps: Vec<usize> = stick_iter(big)
                .map(|f| step_of.get(&f).copied().ok_or(Error::Internal(format!("packet {f} is never added"))))
                .collect::<Result<_>>()?;
            if steps.windows(2).all(|w| w[0] < w[1]) {
                continue;
            }
            if steps.windows(2).all(|w| w[0] > w[1]) {
                lifted.insert(big)?;
                continue;
            }
            return Err(Error::LiftInconsistency { stick: big });
        }
    }
    validate(lifted).map_err(|v| Error::Internal(format!("lift is not bi-convex: {v}")))
}

/// Distinct lifts of the given chains, in canonical order.
pub fn lift_chains(g: &FlipDigraph, chains: &[Chain]) -> Result<Vec<Cubillage>> {
    let mut lifts = chains.par_iter().map(|c| chain_lift(g, c)).collect::<Result<Vec<_>>>()?;
    lifts.sort();
    lifts.dedup();
    Ok(lifts)
}
