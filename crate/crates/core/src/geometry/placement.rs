//! Cube positions derived from an inversion set.
//!
//! Every cube type `D` (a `d`-subset of colors) occurs exactly once in a
//! cubillage. Its base vertex `X_D` is a set of colors disjoint from `D`:
//! color `a` belongs to `X_D` when `D + a` is an inversion and an even number
//! of members of `D` exceed `a`, or when `D + a` is not an inversion and that
//! number is odd. The same rule read backwards recovers the inversion set.

use std::collections::{BTreeMap, BTreeSet};

use crate::colors::{binomial, enumerate_packets, ColorSet};
use crate::error::{Error, Result};
use crate::inversion::{check_params, Cubillage, InversionSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    n: usize,
    d: usize,
    bases: BTreeMap<ColorSet, ColorSet>,
}

/// Base vertex of the cube of type `cube` in `q`.
pub fn cube_base(q: &Cubillage, cube: ColorSet) -> Result<ColorSet> {
    if cube.len() != q.d() || !cube.within(q.n()) {
        return Err(Error::invalid(format!("{cube} is not a {}-subset of [{}]", q.d(), q.n())));
    }
    Ok(base_unchecked(q, cube))
}

fn base_unchecked(q: &Cubillage, cube: ColorSet) -> ColorSet {
    let mut base = ColorSet::EMPTY;
    for a in ColorSet::full(q.n()).difference(cube).iter() {
        let odd = cube.count_above(a) % 2 == 1;
        if odd != q.contains(cube.with(a)) {
            base = base.with(a);
        }
    }
    base
}

/// Two choices of the removed color disagree about whether `packet` is an
/// inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryConflict {
    pub packet: ColorSet,
}

impl Placement {
    pub fn of(q: &Cubillage) -> Placement {
        let bases = enumerate_packets(q.n(), q.d())
            .expect("parameters checked on construction")
            .into_iter()
            .map(|cube| (cube, base_unchecked(q, cube)))
            .collect();
        Placement { n: q.n(), d: q.d(), bases }
    }

    /// A placement from explicit data; every type must be present with a
    /// base disjoint from it.
    pub fn from_bases(n: usize, d: usize, bases: BTreeMap<ColorSet, ColorSet>) -> Result<Placement> {
        check_params(n, d)?;
        if bases.len() as u64 != binomial(n, d) {
            return Err(Error::invalid(format!("expected {} cubes, got {}", binomial(n, d), bases.len())));
        }
        for (&cube, &base) in &bases {
            if cube.len() != d || !cube.within(n) || !base.within(n) || !base.intersection(cube).is_empty() {
                return Err(Error::invalid(format!("cube {cube} with base {base} is malformed")));
            }
        }
        Ok(Placement { n, d, bases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn base(&self, cube: ColorSet) -> Option<ColorSet> {
        self.bases.get(&cube).copied()
    }

    pub fn cubes(&self) -> impl Iterator<Item = (ColorSet, ColorSet)> + '_ {
        self.bases.iter().map(|(&c, &b)| (c, b))
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Replaces the base of one cube, keeping everything else.
    pub fn with_base(mut self, cube: ColorSet, base: ColorSet) -> Result<Placement> {
        if !self.bases.contains_key(&cube) || !base.intersection(cube).is_empty() || !base.within(self.n) {
            return Err(Error::invalid(format!("cannot place {cube} at {base}")));
        }
        self.bases.insert(cube, base);
        Ok(self)
    }

    /// All vertices `X_D + Y` for `Y` a subset of `D`.
    pub fn vertices(&self) -> Spectrum {
        let mut out = BTreeSet::new();
        for (&cube, &base) in &self.bases {
            for y in cube.subsets() {
                out.insert(base.union(y));
            }
        }
        Spectrum(out)
    }

    /// Reads the inversion set back, asking every cube `F - a` of every
    /// packet `F` and requiring all answers to agree.
    pub fn recover(&self) -> Result<InversionSet, RecoveryConflict> {
        let mut set = InversionSet::new(self.n, self.d).expect("parameters checked on construction");
        if self.d + 1 > self.n {
            return Ok(set);
        }
        for packet in enumerate_packets(self.n, self.d + 1).expect("parameters checked") {
            let mut verdict = None;
            for a in packet.iter() {
                let cube = packet.without(a);
                let Some(base) = self.base(cube) else {
                    return Err(RecoveryConflict { packet });
                };
                let even = cube.count_above(a) % 2 == 0;
                let inverted = base.contains(a) == even;
                match verdict {
                    None => verdict = Some(inverted),
                    Some(v) if v != inverted => return Err(RecoveryConflict { packet }),
                    _ => {}
                }
            }
            if verdict == Some(true) {
                set.insert(packet).expect("packet has the right size");
            }
        }
        Ok(set)
    }
}

/// Vertex set of a cubillage, as color sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum(pub BTreeSet<ColorSet>);

impl Spectrum {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: ColorSet) -> bool {
        self.0.contains(&v)
    }

    /// Vertex sets moved by the color involution. The involuted cubillage
    /// has these vertices for even `d` and their complements for odd `d`.
    pub fn involuted(&self, n: usize) -> Spectrum {
        Spectrum(self.0.iter().map(|v| v.involute_unchecked(n)).collect())
    }
}

pub fn spectrum(q: &Cubillage) -> Spectrum {
    Placement::of(q).vertices()
}

/// `sum_{k <= d} C(n, k)`, the number of vertices of any cubillage.
pub fn expected_vertex_count(n: usize, d: usize) -> u64 {
    (0..=d).map(|k| binomial(n, k)).sum()
}

/// Whether the cubes whose types lie inside `barrel` form a translate of the
/// barrel on it, i.e. all their bases agree outside `barrel`.
pub fn barrel_fragment_exists(q: &Cubillage, barrel: ColorSet) -> Result<bool> {
    if barrel.len() != q.d() + 2 || !barrel.within(q.n()) {
        return Err(Error::invalid(format!("{barrel} is not a {}-subset of [{}]", q.d() + 2, q.n())));
    }
    let mut outside = None;
    for a in barrel.iter() {
        for b in barrel.iter().filter(|&b| b > a) {
            let rest = base_unchecked(q, barrel.without(a).without(b)).difference(barrel);
            match outside {
                None => outside = Some(rest),
                Some(y) if y != rest => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colors::cs;

    fn cub(n: usize, d: usize, m: &[&[usize]]) -> Cubillage {
        Cubillage::from_members(n, d, m.iter().map(|c| cs(c))).unwrap()
    }

    #[test]
    fn base_examples() {
        let st = Cubillage::standard(5, 1).unwrap();
        for i in 1..=5 {
            assert_eq!(cube_base(&st, cs(&[i])).unwrap(), ColorSet::interval(1, i - 1));
        }
        let ant = Cubillage::antistandard(5, 1).unwrap();
        assert_eq!(cube_base(&ant, cs(&[3])).unwrap(), cs(&[4, 5]));
        let st52 = Cubillage::standard(5, 2).unwrap();
        assert_eq!(cube_base(&st52, cs(&[2, 4])).unwrap(), cs(&[3]));
        assert!(cube_base(&st52, cs(&[2])).is_err());
    }

    #[test]
    fn spectra_of_tiny_cases() {
        let st = Cubillage::standard(2, 1).unwrap();
        assert_eq!(spectrum(&st).0, [ColorSet::EMPTY, cs(&[1]), cs(&[1, 2])].into_iter().collect());
        let ant = Cubillage::antistandard(2, 1).unwrap();
        assert_eq!(spectrum(&ant).0, [ColorSet::EMPTY, cs(&[2]), cs(&[1, 2])].into_iter().collect());
        assert_eq!(expected_vertex_count(5, 2), 16);
        assert_eq!(spectrum(&Cubillage::standard(5, 2).unwrap()).len(), 16);
    }

    #[test]
    fn barrel_fragments() {
        let c = cub(5, 2, &[&[2, 3, 4], &[1, 3, 4], &[2, 3, 5], &[1, 3, 5]]);
        assert!(barrel_fragment_exists(&c, cs(&[1, 2, 4, 5])).unwrap());
        let st = Cubillage::standard(5, 2).unwrap();
        assert!(!barrel_fragment_exists(&st, cs(&[1, 2, 4, 5])).unwrap());
        let st42 = Cubillage::standard(4, 2).unwrap();
        assert!(barrel_fragment_exists(&st42, cs(&[1, 2, 3, 4])).unwrap());
        assert!(barrel_fragment_exists(&st42, cs(&[1, 2, 3])).is_err());
    }

    #[test]
    fn recovery_round_trip() {
        let c = cub(5, 2, &[&[2, 3, 4], &[1, 3, 4], &[2, 3, 5], &[1, 3, 5]]);
        let p = Placement::of(&c);
        assert_eq!(p.len(), 10);
        assert_eq!(&p.recover().unwrap(), c.inversions());
    }

    #[test]
    fn recovery_detects_conflicts() {
        let st = Cubillage::standard(4, 1).unwrap();
        // Cube {2} moved from base {1} to the empty base.
        let p = Placement::of(&st).with_base(cs(&[2]), ColorSet::EMPTY).unwrap();
        assert!(p.recover().is_err());
    }
}
