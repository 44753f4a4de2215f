//! Colors, the color involution, packets and sticks.
//!
//! Colors are the integers `1..=n` with `n <= 64`. A [`ColorSet`] is stored
//! as a bitmask (bit `i - 1` holds color `i`), but it is *ordered*
//! lexicographically on its ascending member sequence, which is the order
//! every enumeration in this crate uses.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of colors.
pub const MAX_COLORS: usize = 64;

/// A subset of the colors `1..=64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct ColorSet(u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ColorSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a set from colors, rejecting anything outside `1..=64`.
    pub fn from_colors<I: IntoIterator<Item = usize>>(colors: I) -> Result<Self> {
        let mut bits = 0u64;
        for c in colors {
            if c == 0 || c > MAX_COLORS {
                return Err(Error::invalid(format!("color {c} is outside 1..={MAX_COLORS}")));
            }
            bits |= 1 << (c - 1);
        }
        Ok(ColorSet(bits))
    }

    /// The interval `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        if lo > hi || hi == 0 {
            return ColorSet::EMPTY;
        }
        let lo = lo.max(1);
        let upper = if hi >= 64 { u64::MAX } else { (1u64 << hi) - 1 };
        let lower = (1u64 << (lo - 1)) - 1;
        ColorSet(upper & !lower)
    }

    /// `[n] = {1, ..., n}`.
    pub fn full(n: usize) -> Self {
        Self::interval(1, n)
    }

    pub fn singleton(c: usize) -> Self {
        debug_assert!((1..=MAX_COLORS).contains(&c));
        ColorSet(1 << (c - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, c: usize) -> bool {
        (1..=MAX_COLORS).contains(&c) && self.0 & (1 << (c - 1)) != 0
    }

    pub fn with(self, c: usize) -> Self {
        ColorSet(self.0 | (1 << (c - 1)))
    }

    pub fn without(self, c: usize) -> Self {
        ColorSet(self.0 & !(1 << (c - 1)))
    }

    pub fn union(self, other: Self) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn max_color(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Colors in ascending order.
    pub fn iter(self) -> Colors {
        Colors(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of members strictly greater than `c`.
    pub fn count_above(self, c: usize) -> usize {
        if c >= 64 {
            0
        } else {
            (self.0 >> c).count_ones() as usize
        }
    }

    /// True when every member lies in `1..=n`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset(ColorSet::full(n))
    }

    /// Image under the color involution `i -> n + 1 - i`.
    pub fn involute(self, n: usize) -> Result<Self> {
        if !self.within(n) {
            return Err(Error::invalid(format!("{self} is not a subset of [{n}]")));
        }
        Ok(self.involute_unchecked(n))
    }

    pub(crate) fn involute_unchecked(self, n: usize) -> Self {
        // Reverse the low n bits.
        if n == 0 {
            return self;
        }
        ColorSet(self.0.reverse_bits() >> (64 - n))
    }

    /// Subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = ColorSet> {
        let set = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = sub;
            sub = sub.wrapping_sub(set) & set;
            done = sub == 0;
            Some(ColorSet(cur))
        })
    }
}

pub struct Colors(u64);

impl Iterator for Colors {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let c = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Colors {}

impl Ord for ColorSet {
    /// Lexicographic order of the ascending member sequences; a proper
    /// prefix sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        // Everything below `low` is shared. Whoever holds `low` comes first,
        // unless the other sequence has already ended.
        let self_holds = self.0 & low != 0;
        let rest = if self_holds { other.0 } else { self.0 };
        let continues = rest & !(low | (low - 1)) != 0;
        if self_holds == continues {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for ColorSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        if self.max_color().unwrap_or(0) < 10 {
            for c in self.iter() {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.iter().map(|c| c.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColorSet({self})")
    }
}

impl From<ColorSet> for Vec<usize> {
    fn from(s: ColorSet) -> Self {
        s.to_vec()
    }
}

impl TryFrom<Vec<usize>> for ColorSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        let set = ColorSet::from_colors(v.iter().copied())?;
        if set.len() != v.len() {
            return Err(Error::invalid(format!("repeated color in {v:?}")));
        }
        Ok(set)
    }
}

/// Shorthand for literals in tests and fixtures: `cs(&[1, 2, 4])`.
///
/// Panics on colors outside `1..=64`.
pub fn cs(colors: &[usize]) -> ColorSet {
    ColorSet::from_colors(colors.iter().copied()).expect("color out of range")
}

/// The `(|G| - 1)`-subsets of a packet in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stick {
    pub packet: ColorSet,
    pub members: Vec<ColorSet>,
}

impl Stick {
    pub fn position(&self, member: ColorSet) -> Option<usize> {
        self.members.iter().position(|&m| m == member)
    }
}

/// Builds the stick of `packet`.
///
/// Dropping a larger color yields a lexicographically smaller subset, so the
/// members are `G - g_k, G - g_{k-1}, ..., G - g_0`.
pub fn stick_members(packet: ColorSet) -> Result<Stick> {
    if packet.len() < 2 {
        return Err(Error::invalid(format!("stick of {packet} needs at least two colors")));
    }
    Ok(Stick { packet, members: stick_iter(packet).collect() })
}

/// Stick members in lexicographic order, without allocation.
pub(crate) fn stick_iter(packet: ColorSet) -> impl Iterator<Item = ColorSet> {
    let mut rest = packet.0;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let top = 1u64 << (63 - rest.leading_zeros());
        rest &= !top;
        Some(ColorSet(packet.0 & !top))
    })
}

/// Position of `packet - {removed}` within the stick of `packet`.
pub fn stick_position(packet: ColorSet, removed: usize) -> usize {
    packet.count_above(removed)
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn enumerate_packets(n: usize, k: usize) -> Result<Vec<ColorSet>> {
    if n > MAX_COLORS {
        return Err(Error::invalid(format!("n = {n} exceeds {MAX_COLORS}")));
    }
    if k > n {
        return Err(Error::invalid(format!("cannot choose {k} colors out of {n}")));
    }
    let mut out = Vec::with_capacity(binomial(n, k) as usize);
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(ColorSet::from_colors(idx.iter().copied())?);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if idx[i] < n - (k - 1 - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Converts a natural color to its signed label: for `n = 2m` the colors
/// `1..=n` become `-m..=-1, 1..=m`; for `n = 2m + 1` the middle color is `0`.
pub fn signed_label(c: usize, n: usize) -> i64 {
    let m = (n / 2) as i64;
    let c = c as i64;
    if n.is_multiple_of(2) {
        if c <= m {
            c - m - 1
        } else {
            c - m
        }
    } else {
        c - m - 1
    }
}

/// Inverse of [`signed_label`].
pub fn natural_color(label: i64, n: usize) -> Result<usize> {
    let m = (n / 2) as i64;
    let c = if n.is_multiple_of(2) {
        match label {
            0 => return Err(Error::invalid(format!("label 0 does not exist for even n = {n}"))),
            l if l < 0 => l + m + 1,
            l => l + m,
        }
    } else {
        label + m + 1
    };
    if c < 1 || c > n as i64 {
        return Err(Error::invalid(format!("label {label} is out of range for n = {n}")));
    }
    Ok(c as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involute_examples() {
        assert_eq!(cs(&[1, 2, 3]).involute(6).unwrap(), cs(&[4, 5, 6]));
        assert_eq!(cs(&[2, 4]).involute(5).unwrap(), cs(&[2, 4]));
        assert_eq!(cs(&[2, 4]).involute(4).unwrap(), cs(&[1, 3]));
        assert!(cs(&[5]).involute(4).is_err());
        assert_eq!(ColorSet::EMPTY.involute(0).unwrap(), ColorSet::EMPTY);
    }

    #[test]
    fn stick_examples() {
        let s = stick_members(cs(&[1, 2, 3, 4, 5])).unwrap();
        let want: Vec<ColorSet> =
            [[1, 2, 3, 4], [1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5], [2, 3, 4, 5]].iter().map(|v| cs(v)).collect();
        assert_eq!(s.members, want);

        assert_eq!(stick_members(cs(&[1, 2])).unwrap().members, vec![cs(&[1]), cs(&[2])]);

        let s = stick_members(cs(&[1, 2, 4, 5])).unwrap();
        assert_eq!(s.members, vec![cs(&[1, 2, 4]), cs(&[1, 2, 5]), cs(&[1, 4, 5]), cs(&[2, 4, 5])]);

        assert!(stick_members(cs(&[3])).is_err());
        assert!(stick_members(ColorSet::EMPTY).is_err());
    }

    #[test]
    fn stick_position_matches_members() {
        let g = cs(&[2, 3, 5, 7, 8]);
        let s = stick_members(g).unwrap();
        for c in g.iter() {
            assert_eq!(s.members[stick_position(g, c)], g.without(c));
        }
    }

    #[test]
    fn packet_enumeration() {
        assert_eq!(
            enumerate_packets(4, 3).unwrap(),
            vec![cs(&[1, 2, 3]), cs(&[1, 2, 4]), cs(&[1, 3, 4]), cs(&[2, 3, 4])]
        );
        assert_eq!(enumerate_packets(5, 3).unwrap().len(), 10);
        assert_eq!(enumerate_packets(7, 0).unwrap(), vec![ColorSet::EMPTY]);
        assert_eq!(enumerate_packets(3, 3).unwrap(), vec![cs(&[1, 2, 3])]);
        assert!(enumerate_packets(3, 4).is_err());
    }

    #[test]
    fn lex_order() {
        assert!(cs(&[1, 2, 3, 4]) < cs(&[1, 2, 3, 5]));
        assert!(cs(&[1, 3, 4, 5]) < cs(&[2, 3, 4, 5]));
        assert!(cs(&[1, 2]) < cs(&[1, 2, 3]));
        assert!(cs(&[1, 3]) > cs(&[1, 2, 3]));
        assert!(ColorSet::EMPTY < cs(&[1]));
        assert!(cs(&[1, 9]) < cs(&[2]));
    }

    #[test]
    fn subsets_and_intervals() {
        assert_eq!(cs(&[1, 3]).subsets().count(), 4);
        assert_eq!(ColorSet::EMPTY.subsets().collect::<Vec<_>>(), vec![ColorSet::EMPTY]);
        assert_eq!(ColorSet::interval(2, 4), cs(&[2, 3, 4]));
        assert_eq!(ColorSet::full(64).len(), 64);
        assert_eq!(cs(&[64]).involute(64).unwrap(), cs(&[1]));
    }

    #[test]
    fn signed_labels() {
        assert_eq!(signed_label(4, 5), 1);
        assert_eq!(signed_label(5, 5), 2);
        assert_eq!(signed_label(2, 5), -1);
        assert_eq!(signed_label(3, 5), 0);
        assert_eq!(signed_label(1, 4), -2);
        assert_eq!(signed_label(3, 4), 1);
        for n in 1..10 {
            for c in 1..=n {
                assert_eq!(natural_color(signed_label(c, n), n).unwrap(), c);
            }
        }
        assert!(natural_color(0, 4).is_err());
    }
}
