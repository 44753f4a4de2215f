//! Inversion sets and the bi-convexity (Ziegler) condition.
//!
//! An [`InversionSet`] is any family of `(d+1)`-subsets of `[n]`; a
//! [`Cubillage`] is one that passed [`validate`]. Everything outside this
//! module only ever sees validated values.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::colors::{binomial, enumerate_packets, stick_iter, ColorSet, MAX_COLORS};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InversionSet {
    n: usize,
    d: usize,
    members: BTreeSet<ColorSet>,
}

impl InversionSet {
    /// The empty family for `1 <= d <= n <= 64`.
    pub fn new(n: usize, d: usize) -> Result<Self> {
        check_params(n, d)?;
        Ok(InversionSet { n, d, members: BTreeSet::new() })
    }

    pub fn from_members<I: IntoIterator<Item = ColorSet>>(n: usize, d: usize, members: I) -> Result<Self> {
        let mut set = InversionSet::new(n, d)?;
        for f in members {
            set.insert(f)?;
        }
        Ok(set)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn members(&self) -> &BTreeSet<ColorSet> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, packet: ColorSet) -> bool {
        self.members.contains(&packet)
    }

    pub fn iter(&self) -> impl Iterator<Item = ColorSet> + '_ {
        self.members.iter().copied()
    }

    fn check_packet(&self, packet: ColorSet) -> Result<()> {
        if packet.len() != self.d + 1 || !packet.within(self.n) {
            return Err(Error::invalid(format!("{packet} is not a {}-subset of [{}]", self.d + 1, self.n)));
        }
        Ok(())
    }

    pub fn insert(&mut self, packet: ColorSet) -> Result<bool> {
        self.check_packet(packet)?;
        Ok(self.members.insert(packet))
    }

    pub fn remove(&mut self, packet: ColorSet) -> bool {
        self.members.remove(&packet)
    }

    /// Image of the family under the color involution.
    pub fn involuted(&self) -> InversionSet {
        InversionSet {
            n: self.n,
            d: self.d,
            members: self.members.iter().map(|f| f.involute_unchecked(self.n)).collect(),
        }
    }

    /// `Gr([n], d+1)` minus the family.
    pub fn complemented(&self) -> InversionSet {
        let all = enumerate_packets(self.n, self.d + 1).expect("parameters checked on construction");
        InversionSet { n: self.n, d: self.d, members: all.into_iter().filter(|f| !self.members.contains(f)).collect() }
    }
}

impl Ord for InversionSet {
    /// Canonical order: parameters, then size (rank), then the lexicographic
    /// member list.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.d, self.members.len())
            .cmp(&(other.n, other.d, other.members.len()))
            .then_with(|| self.members.iter().cmp(other.members.iter()))
    }
}

impl PartialOrd for InversionSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for InversionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Inv({},{})[{}]", self.n, self.d, format_members(self.iter()))
    }
}

pub(crate) fn format_members(members: impl Iterator<Item = ColorSet>) -> String {
    members.map(|m| m.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn check_params(n: usize, d: usize) -> Result<()> {
    if n > MAX_COLORS {
        return Err(Error::invalid(format!("n = {n} exceeds {MAX_COLORS}")));
    }
    if d < 1 || d > n {
        return Err(Error::invalid(format!("need 1 <= d <= n, got n = {n}, d = {d}")));
    }
    Ok(())
}

/// A family is bi-convex on a stick iff its membership pattern along the
/// stick changes value at most once.
pub(crate) fn pattern_is_biconvex<I: IntoIterator<Item = bool>>(pattern: I) -> bool {
    let mut changes = 0;
    let mut prev = None;
    for bit in pattern {
        if let Some(p) = prev {
            if p != bit {
                changes += 1;
                if changes > 1 {
                    return false;
                }
            }
        }
        prev = Some(bit);
    }
    true
}

fn stick_ok(members: &BTreeSet<ColorSet>, big: ColorSet) -> bool {
    pattern_is_biconvex(stick_iter(big).map(|m| members.contains(&m)))
}

/// Witness returned by [`validate`]: the lexicographically first packet of
/// size `d+2` whose stick meets the family in neither an initial nor a final
/// interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub set: InversionSet,
    pub stick: ColorSet,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family is not bi-convex on the stick of {}", self.stick)
    }
}

impl std::error::Error for Violation {}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidInput(v.to_string())
    }
}

/// The lexicographically first violated stick, if any.
pub fn first_violation(set: &InversionSet) -> Option<ColorSet> {
    if set.d + 2 > set.n {
        return None;
    }
    enumerate_packets(set.n, set.d + 2)
        .expect("parameters checked on construction")
        .into_iter()
        .find(|&g| !stick_ok(&set.members, g))
}

/// Checks Ziegler's condition on every stick.
pub fn validate(set: InversionSet) -> Result<Cubillage, Violation> {
    match first_violation(&set) {
        None => Ok(Cubillage(set)),
        Some(stick) => Err(Violation { set, stick }),
    }
}

/// Checks only the sticks through the given packets.
///
/// Equivalent to a full check whenever the family differs from a valid one
/// exactly in `changed`.
pub fn sticks_through_valid(set: &InversionSet, changed: &[ColorSet]) -> bool {
    first_violation_through(set, changed).is_none()
}

pub(crate) fn first_violation_through(set: &InversionSet, changed: &[ColorSet]) -> Option<ColorSet> {
    let full = ColorSet::full(set.n);
    let mut bad: Option<ColorSet> = None;
    for &f in changed {
        for a in full.difference(f).iter() {
            let g = f.with(a);
            if !stick_ok(&set.members, g) && bad.is_none_or(|b| g < b) {
                bad = Some(g);
            }
        }
    }
    bad
}

/// Validity of `set` with the membership of every packet in `toggled`
/// flipped, checking only the sticks through those packets. `set` itself must
/// be valid.
pub(crate) fn toggled_valid(set: &InversionSet, toggled: &[ColorSet]) -> bool {
    let full = ColorSet::full(set.n);
    let member = |m: ColorSet| set.members.contains(&m) != toggled.contains(&m);
    toggled.iter().all(|&f| full.difference(f).iter().all(|a| pattern_is_biconvex(stick_iter(f.with(a)).map(member))))
}

/// Whether adding `packet` to a valid family keeps it valid.
pub fn is_addable(q: &Cubillage, packet: ColorSet) -> bool {
    !q.contains(packet) && q.0.check_packet(packet).is_ok() && toggled_valid(&q.0, &[packet])
}

/// Whether removing `packet` from a valid family keeps it valid.
pub fn is_removable(q: &Cubillage, packet: ColorSet) -> bool {
    q.contains(packet) && toggled_valid(&q.0, &[packet])
}

/// A validated inversion set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cubillage(InversionSet);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SymmetryClass {
    pub symmetric: bool,
    pub skew_symmetric: bool,
}

impl Cubillage {
    /// Only for families known to be valid (enumeration, flips that checked
    /// their sticks).
    pub(crate) fn new_unchecked(set: InversionSet) -> Self {
        debug_assert!(first_violation(&set).is_none(), "{set:?} is not bi-convex");
        Cubillage(set)
    }

    pub fn standard(n: usize, d: usize) -> Result<Self> {
        Ok(Cubillage(InversionSet::new(n, d)?))
    }

    pub fn antistandard(n: usize, d: usize) -> Result<Self> {
        Ok(Cubillage(InversionSet::new(n, d)?.complemented()))
    }

    pub fn from_members<I: IntoIterator<Item = ColorSet>>(n: usize, d: usize, members: I) -> Result<Self> {
        Ok(validate(InversionSet::from_members(n, d, members)?)?)
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn d(&self) -> usize {
        self.0.d
    }

    pub fn inversions(&self) -> &InversionSet {
        &self.0
    }

    pub fn into_inversions(self) -> InversionSet {
        self.0
    }

    pub fn members(&self) -> &BTreeSet<ColorSet> {
        &self.0.members
    }

    pub fn iter(&self) -> impl Iterator<Item = ColorSet> + '_ {
        self.0.iter()
    }

    pub fn contains(&self, packet: ColorSet) -> bool {
        self.0.contains(packet)
    }

    /// Number of inversions.
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Rank of the anti-standard cubillage with the same parameters.
    pub fn max_rank(&self) -> u64 {
        binomial(self.n(), self.d() + 1)
    }

    pub fn is_standard(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_antistandard(&self) -> bool {
        self.rank() as u64 == self.max_rank()
    }

    /// Complementary family; bi-convexity is preserved.
    pub fn complement(&self) -> Cubillage {
        Cubillage::new_unchecked(self.0.complemented())
    }

    /// `Q°`, the image under the color involution.
    pub fn involuted(&self) -> Cubillage {
        Cubillage::new_unchecked(self.0.involuted())
    }

    pub fn symmetry_class(&self) -> SymmetryClass {
        let image = self.0.involuted();
        let symmetric = image.members == self.0.members;
        let total = binomial(self.n(), self.d() + 1) as usize;
        // Skew: the image is exactly the complement, i.e. disjoint and
        // together covering everything.
        let skew_symmetric = image.len() + self.rank() == total && image.members.is_disjoint(&self.0.members);
        SymmetryClass { symmetric, skew_symmetric }
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().all(|f| self.0.contains(f.involute_unchecked(self.n())))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.symmetry_class().skew_symmetric
    }
}

impl fmt::Debug for Cubillage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cubillage({},{})[{}]", self.n(), self.d(), format_members(self.iter()))
    }
}
