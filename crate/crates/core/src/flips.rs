//! Capsid flips of type A and the three symmetric flip kinds.
//!
//! A raising type-A flip adds one packet to the inversion set. On symmetric
//! cubillages the allowed moves are:
//!
//! - *simple*: add one self-symmetric packet `F = F°`;
//! - *double*: add a pair `{F, F°}` of packets sharing at most `d - 1`
//!   colors, so their capsids have no common cube;
//! - *barrel*: add the whole stick of a self-symmetric `(d+2)`-packet `G`.
//!
//! Lowering flips remove the same packets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::colors::{enumerate_packets, stick_iter, ColorSet};
use crate::error::{Error, Result};
use crate::geometry::barrel_fragment_exists;
use crate::inversion::{toggled_valid, Cubillage, InversionSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Raise,
    Lower,
}

/// Edge kinds of flip digraphs, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    #[serde(rename = "typeA")]
    TypeA,
    #[serde(rename = "simple")]
    Simple,
    #[serde(rename = "double")]
    Double,
    #[serde(rename = "barrel")]
    Barrel,
}

impl EdgeKind {
    /// Rank increase of a raising flip of this kind in dimension `d`.
    pub fn delta(self, d: usize) -> usize {
        match self {
            EdgeKind::TypeA | EdgeKind::Simple => 1,
            EdgeKind::Double => 2,
            EdgeKind::Barrel => d + 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::TypeA => "typeA",
            EdgeKind::Simple => "simple",
            EdgeKind::Double => "double",
            EdgeKind::Barrel => "barrel",
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A symmetric flip. Variant order is the canonical detection order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymFlip {
    Simple(ColorSet),
    /// The two packets, lexicographically smaller first.
    Double(ColorSet, ColorSet),
    /// The `(d+2)`-packet whose stick is exchanged.
    Barrel(ColorSet),
}

impl SymFlip {
    pub fn double(f: ColorSet, n: usize) -> SymFlip {
        let g = f.involute_unchecked(n);
        if f < g {
            SymFlip::Double(f, g)
        } else {
            SymFlip::Double(g, f)
        }
    }

    pub fn kind(&self) -> EdgeKind {
        match self {
            SymFlip::Simple(_) => EdgeKind::Simple,
            SymFlip::Double(..) => EdgeKind::Double,
            SymFlip::Barrel(_) => EdgeKind::Barrel,
        }
    }

    /// The packets added (raise) or removed (lower), in lexicographic order.
    pub fn packets(&self) -> Vec<ColorSet> {
        match *self {
            SymFlip::Simple(f) => vec![f],
            SymFlip::Double(a, b) => vec![a, b],
            SymFlip::Barrel(g) => stick_iter(g).collect(),
        }
    }
}

impl fmt::Display for SymFlip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymFlip::Simple(p) => write!(f, "simple({p})"),
            SymFlip::Double(a, b) => write!(f, "double({a},{b})"),
            SymFlip::Barrel(g) => write!(f, "barrel({g})"),
        }
    }
}

/// Any flip: a single type-A packet or a symmetric flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flip {
    TypeA(ColorSet),
    Sym(SymFlip),
}

impl Flip {
    pub fn kind(&self) -> EdgeKind {
        match self {
            Flip::TypeA(_) => EdgeKind::TypeA,
            Flip::Sym(s) => s.kind(),
        }
    }

    pub fn packets(&self) -> Vec<ColorSet> {
        match self {
            Flip::TypeA(f) => vec![*f],
            Flip::Sym(s) => s.packets(),
        }
    }
}

impl fmt::Display for Flip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flip::TypeA(p) => write!(f, "typeA({p})"),
            Flip::Sym(s) => s.fmt(f),
        }
    }
}

/// Which flips generate a digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    TypeA,
    Symmetric { fragment_check: bool },
}

impl Generator {
    pub const SYMMETRIC: Generator = Generator::Symmetric { fragment_check: true };
}

fn packet_flips(q: &Cubillage, dir: Direction) -> Vec<ColorSet> {
    let all = enumerate_packets(q.n(), q.d() + 1).expect("parameters checked on construction");
    all.into_iter()
        .filter(|&f| q.contains(f) == (dir == Direction::Lower))
        .filter(|&f| toggled_valid(q.inversions(), &[f]))
        .collect()
}

/// Packets `F` with `Inv(Q) + F` valid, lexicographically.
pub fn raising_flips_a(q: &Cubillage) -> Vec<ColorSet> {
    packet_flips(q, Direction::Raise)
}

/// Packets `F` with `Inv(Q) - F` valid, lexicographically.
pub fn lowering_flips_a(q: &Cubillage) -> Vec<ColorSet> {
    packet_flips(q, Direction::Lower)
}

/// Why a symmetric flip does not apply, or `None` when it does.
fn sym_obstruction(q: &Cubillage, flip: &SymFlip, dir: Direction, fragment_check: bool) -> Option<String> {
    let (n, d) = (q.n(), q.d());
    let present = dir == Direction::Lower;
    let inv = q.inversions();
    match *flip {
        SymFlip::Simple(f) => {
            if f.len() != d + 1 || !f.within(n) || f.involute_unchecked(n) != f {
                return Some(format!("{f} is not a self-symmetric packet"));
            }
            if q.contains(f) != present {
                return Some(format!("{f} is {} the inversion set", if present { "not in" } else { "already in" }));
            }
            if !toggled_valid(inv, &[f]) {
                return Some(format!("toggling {f} breaks bi-convexity"));
            }
        }
        SymFlip::Double(a, b) => {
            if a.len() != d + 1 || !a.within(n) || a.involute_unchecked(n) != b || a == b || a > b {
                return Some(format!("{a},{b} is not a pair of distinct symmetric packets"));
            }
            if a.intersection(b).len() + 1 > d {
                return Some(format!("capsids of {a} and {b} share a cube"));
            }
            if q.contains(a) != present || q.contains(b) != present {
                return Some(format!("{a},{b} membership does not allow this direction"));
            }
            if !toggled_valid(inv, &[a]) {
                return Some(format!("toggling {a} breaks bi-convexity"));
            }
            if !toggled_valid(inv, &[a, b]) {
                return Some(format!("toggling {a} and {b} breaks bi-convexity"));
            }
        }
        SymFlip::Barrel(g) => {
            if g.len() != d + 2 || !g.within(n) || g.involute_unchecked(n) != g {
                return Some(format!("{g} is not a self-symmetric {}-packet", d + 2));
            }
            let stick: Vec<ColorSet> = stick_iter(g).collect();
            if stick.iter().any(|&f| q.contains(f) != present) {
                return Some(format!("the stick of {g} is not {}", if present { "full" } else { "empty" }));
            }
            if !toggled_valid(inv, &stick) {
                return Some(format!("exchanging the stick of {g} breaks bi-convexity"));
            }
            if fragment_check && !barrel_fragment_exists(q, g).unwrap_or(false) {
                return Some(format!("the cubes of types in the stick of {g} do not form a barrel"));
            }
        }
    }
    None
}

/// Symmetric flips available on `q` in the given direction, in canonical
/// order.
pub fn symmetric_flips(q: &Cubillage, dir: Direction, fragment_check: bool) -> Result<Vec<SymFlip>> {
    let (n, d) = (q.n(), q.d());
    if !q.is_symmetric() {
        return Err(Error::precondition("symmetric flips need a symmetric cubillage"));
    }
    let mut out = Vec::new();
    for f in enumerate_packets(n, d + 1)? {
        let g = f.involute_unchecked(n);
        let cand = if f == g {
            SymFlip::Simple(f)
        } else if f < g {
            SymFlip::Double(f, g)
        } else {
            continue;
        };
        if sym_obstruction(q, &cand, dir, fragment_check).is_none() {
            out.push(cand);
        }
    }
    if d + 2 <= n {
        for g in enumerate_packets(n, d + 2)? {
            if g.involute_unchecked(n) == g {
                let cand = SymFlip::Barrel(g);
                if sym_obstruction(q, &cand, dir, fragment_check).is_none() {
                    out.push(cand);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn symmetric_raising_flips(q: &Cubillage, fragment_check: bool) -> Result<Vec<SymFlip>> {
    symmetric_flips(q, Direction::Raise, fragment_check)
}

pub fn symmetric_lowering_flips(q: &Cubillage, fragment_check: bool) -> Result<Vec<SymFlip>> {
    symmetric_flips(q, Direction::Lower, fragment_check)
}

fn toggle(q: &Cubillage, packets: &[ColorSet], dir: Direction) -> Cubillage {
    let mut set: InversionSet = q.inversions().clone();
    for &f in packets {
        match dir {
            Direction::Raise => {
                set.insert(f).expect("flip packets have the right size");
            }
            Direction::Lower => {
                set.remove(f);
            }
        }
    }
    Cubillage::new_unchecked(set)
}

/// Applies a flip (with the barrel fragment check) or explains why it is not
/// applicable.
pub fn apply_flip(q: &Cubillage, flip: &Flip, dir: Direction) -> Result<Cubillage> {
    apply_flip_with(q, flip, dir, true)
}

pub fn apply_flip_with(q: &Cubillage, flip: &Flip, dir: Direction, fragment_check: bool) -> Result<Cubillage> {
    match flip {
        Flip::TypeA(f) => {
            if f.len() != q.d() + 1 || !f.within(q.n()) {
                return Err(Error::FlipRejected(format!("{f} is not a packet of size {}", q.d() + 1)));
            }
            if q.contains(*f) == (dir == Direction::Raise) {
                return Err(Error::FlipRejected(format!("{f} membership does not allow this direction")));
            }
            if !toggled_valid(q.inversions(), &[*f]) {
                return Err(Error::FlipRejected(format!("toggling {f} breaks bi-convexity")));
            }
        }
        Flip::Sym(s) => {
            if !q.is_symmetric() {
                return Err(Error::precondition("symmetric flips need a symmetric cubillage"));
            }
            if let Some(reason) = sym_obstruction(q, s, dir, fragment_check) {
                return Err(Error::FlipRejected(reason));
            }
        }
    }
    Ok(toggle(q, &flip.packets(), dir))
}

/// Flips of `generator` in the given direction together with their results.
pub fn arrows(q: &Cubillage, generator: Generator, dir: Direction) -> Result<Vec<(Flip, Cubillage)>> {
    match generator {
        Generator::TypeA => {
            Ok(packet_flips(q, dir).into_iter().map(|f| (Flip::TypeA(f), toggle(q, &[f], dir))).collect())
        }
        Generator::Symmetric { fragment_check } => Ok(symmetric_flips(q, dir, fragment_check)?
            .into_iter()
            .map(|s| {
                let next = toggle(q, &s.packets(), dir);
                (Flip::Sym(s), next)
            })
            .collect()),
    }
}
