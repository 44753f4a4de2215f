//! The core of a symmetric cubillage with an even number of colors and even
//! dimension: its trace on the axial subspace, which is a cubillage with
//! `m = n/2` colors in dimension `d/2`.
//!
//! Only symmetric cubes meet the axis in a top-dimensional cell. A symmetric
//! cube of type `R` contributes the core cube of type `R+` (its positive
//! half), spanned by its symmetric vertices.

use std::collections::{BTreeMap, BTreeSet};

use super::placement::Placement;
use crate::colors::{enumerate_packets, ColorSet};
use crate::error::{Error, Result};
use crate::inversion::{validate, Cubillage};

/// Positive half of a subset of `[2m]`: colors `m+1..=2m` become `1..=m`.
pub fn positive_half(set: ColorSet, m: usize) -> ColorSet {
    ColorSet::from_bits(set.bits() >> m)
}

/// Symmetric `d`-subsets of `[2m]`, in lexicographic order.
pub fn symmetric_cube_types(n: usize, d: usize) -> Result<Vec<ColorSet>> {
    Ok(enumerate_packets(n, d)?.into_iter().filter(|r| r.involute_unchecked(n) == *r).collect())
}

/// Placement of the core cubillage, checked cell by cell.
pub fn core_placement(q: &Cubillage) -> Result<Placement> {
    let (n, d) = (q.n(), q.d());
    if n % 2 != 0 || d % 2 != 0 {
        return Err(Error::precondition(format!("core needs n and d even, got ({n}, {d})")));
    }
    if !q.is_symmetric() {
        return Err(Error::precondition("core needs a symmetric cubillage"));
    }
    let m = n / 2;
    let placement = Placement::of(q);
    let mut bases = BTreeMap::new();
    for r in symmetric_cube_types(n, d)? {
        let base = placement.base(r).expect("placement covers every type");
        let images: BTreeSet<ColorSet> = r
            .subsets()
            .map(|y| base.union(y))
            .filter(|v| v.involute_unchecked(n) == *v)
            .map(|v| positive_half(v, m))
            .collect();
        let r_plus = positive_half(r, m);
        let core_base = *images
            .iter()
            .min_by_key(|v| v.len())
            .ok_or_else(|| Error::Internal(format!("symmetric cube {r} has no vertex on the axis")))?;
        let cell: BTreeSet<ColorSet> = r_plus.subsets().map(|y| core_base.union(y)).collect();
        if cell != images || !core_base.intersection(r_plus).is_empty() {
            return Err(Error::Internal(format!("symmetric vertices of cube {r} do not form a cube of type {r_plus}")));
        }
        bases.insert(r_plus, core_base);
    }
    Placement::from_bases(m, d / 2, bases)
}

/// `cor(Q)`, a cubillage of `Z(m, d/2)`.
pub fn core(q: &Cubillage) -> Result<Cubillage> {
    let placement = core_placement(q)?;
    let set =
        placement.recover().map_err(|c| Error::Internal(format!("core cells disagree about packet {}", c.packet)))?;
    validate(set).map_err(|v| Error::Internal(format!("core is not bi-convex: {v}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colors::cs;

    #[test]
    fn symmetric_types_of_4_2() {
        assert_eq!(symmetric_cube_types(4, 2).unwrap(), vec![cs(&[1, 4]), cs(&[2, 3])]);
        assert_eq!(symmetric_cube_types(6, 2).unwrap().len(), 3);
        assert_eq!(symmetric_cube_types(6, 4).unwrap().len(), 3);
    }

    #[test]
    fn core_of_standard_and_antistandard() {
        let st = Cubillage::standard(4, 2).unwrap();
        assert_eq!(core(&st).unwrap(), Cubillage::standard(2, 1).unwrap());
        let ant = Cubillage::antistandard(4, 2).unwrap();
        assert_eq!(core(&ant).unwrap(), Cubillage::antistandard(2, 1).unwrap());
        let st = Cubillage::standard(6, 2).unwrap();
        assert_eq!(core(&st).unwrap(), Cubillage::standard(3, 1).unwrap());
    }

    #[test]
    fn core_preconditions() {
        assert!(matches!(core(&Cubillage::standard(5, 2).unwrap()), Err(Error::Precondition(_))));
        assert!(matches!(core(&Cubillage::standard(6, 3).unwrap()), Err(Error::Precondition(_))));
        let skew = Cubillage::from_members(4, 2, [cs(&[1, 2, 3]), cs(&[1, 2, 4])]).unwrap();
        assert!(matches!(core(&skew), Err(Error::Precondition(_))));
    }

    #[test]
    fn positive_halves() {
        assert_eq!(positive_half(cs(&[1, 4, 5, 6]), 3), cs(&[1, 2, 3]));
        assert_eq!(positive_half(cs(&[1, 3]), 2), cs(&[1]));
    }
}
