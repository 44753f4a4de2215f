//! Independent geometric check that a placement really tiles the zonotope.
//!
//! Clauses:
//! - (a) cube volumes sum to the zonotope volume, every maximal minor positive;
//! - (b) every facet is shared by at most two cubes, lying on opposite sides
//!   when shared; unshared facets lie on the zonotope boundary with their cube
//!   inside;
//! - (c) the vertex count is `sum_{k <= d} C(n, k)`;
//! - (d) the inversion set read back from the placement is consistent and,
//!   when given, equals the expected one.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::frame::{Frame, Rational};
use super::placement::{expected_vertex_count, Placement};
use crate::colors::{binomial, ColorSet};
use crate::error::{Error, Result};
use crate::inversion::{Cubillage, InversionSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Clause {
    Volume,
    Facets,
    Vertices,
    RoundTrip,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::Volume => "a:volume",
            Clause::Facets => "b:facets",
            Clause::Vertices => "c:vertices",
            Clause::RoundTrip => "d:round-trip",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseFailure {
    pub clause: Clause,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TilingReport {
    pub failures: Vec<ClauseFailure>,
}

impl TilingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, clause: Clause) -> bool {
        self.failures.iter().any(|f| f.clause == clause)
    }

    fn fail(&mut self, clause: Clause, witness: String) {
        self.failures.push(ClauseFailure { clause, witness });
    }
}

pub fn verify_tiling(q: &Cubillage, frame: &Frame) -> Result<TilingReport> {
    verify_placement(&Placement::of(q), frame, Some(q.inversions()))
}

pub fn verify_placement(placement: &Placement, frame: &Frame, expected: Option<&InversionSet>) -> Result<TilingReport> {
    let (n, d) = (placement.n(), placement.d());
    if frame.n() != n || frame.d() != d {
        return Err(Error::invalid(format!(
            "frame is for ({}, {}) but the placement is for ({n}, {d})",
            frame.n(),
            frame.d()
        )));
    }
    let mut report = TilingReport::default();

    // (a)
    let mut volume = Rational::zero();
    let mut volume_ok = placement.len() as u64 == binomial(n, d);
    for (cube, _) in placement.cubes() {
        match frame.cube_volume(cube) {
            Some(v) if v.is_positive() => volume += v,
            _ => {
                volume_ok = false;
                report.fail(Clause::Volume, format!("cube {cube} has no positive volume"));
            }
        }
    }
    if volume_ok && volume != frame.zonotope_volume() {
        report.fail(Clause::Volume, format!("cube volumes sum to {volume}, zonotope has {}", frame.zonotope_volume()));
    } else if !volume_ok && !report.failed(Clause::Volume) {
        report.fail(Clause::Volume, format!("{} cubes instead of {}", placement.len(), binomial(n, d)));
    }

    // (b)
    check_facets(placement, frame, &mut report)?;

    // (c)
    let vertices = placement.vertices().len() as u64;
    let want = expected_vertex_count(n, d);
    if vertices != want {
        report.fail(Clause::Vertices, format!("{vertices} vertices, expected {want}"));
    }

    // (d)
    match placement.recover() {
        Err(conflict) => report.fail(Clause::RoundTrip, format!("cubes disagree about packet {}", conflict.packet)),
        Ok(set) => {
            if let Some(exp) = expected {
                if &set != exp {
                    report.fail(Clause::RoundTrip, format!("recovered {set:?}, expected {exp:?}"));
                }
            }
        }
    }
    Ok(report)
}

/// Side of a facet on which a cube lies, as the sign of the facet normal.
type Side = bool;

fn check_facets(placement: &Placement, frame: &Frame, report: &mut TilingReport) -> Result<()> {
    let mut facets: BTreeMap<(ColorSet, ColorSet), Vec<(ColorSet, Side)>> = BTreeMap::new();
    for (cube, base) in placement.cubes() {
        for i in cube.iter() {
            let dirs = cube.without(i);
            let table = frame.facet(dirs).ok_or_else(|| Error::Internal(format!("no facet table for {dirs}")))?;
            let up = table.dots[i - 1] > 0;
            facets.entry((dirs, base)).or_default().push((cube, up));
            facets.entry((dirs, base.with(i))).or_default().push((cube, !up));
        }
    }
    for ((dirs, base), cubes) in &facets {
        match cubes.as_slice() {
            [(_, side)] => {
                let table = frame.facet(*dirs).expect("checked above");
                let value = table.value(*base).ok_or_else(|| Error::Internal("facet value overflow".into()))?;
                let on_top = value == table.max_value && !*side;
                let on_bottom = value == table.min_value && *side;
                if !(on_top || on_bottom) {
                    report.fail(
                        Clause::Facets,
                        format!("facet {dirs} at {base} is covered once but is not a boundary facet"),
                    );
                    return Ok(());
                }
            }
            [(c1, s1), (c2, s2)] => {
                if s1 == s2 {
                    report.fail(Clause::Facets, format!("cubes {c1} and {c2} overlap across facet {dirs} at {base}"));
                    return Ok(());
                }
            }
            many => {
                report.fail(Clause::Facets, format!("facet {dirs} at {base} is shared by {} cubes", many.len()));
                return Ok(());
            }
        }
    }
    Ok(())
}
