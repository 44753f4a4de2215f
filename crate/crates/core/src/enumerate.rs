//! Exhaustive enumeration of cubillages by backtracking over packets.
//!
//! Packets are decided orbit by orbit (an orbit is a single packet, or the
//! pair `{F, F°}` for the symmetric and skew classes). After every decision
//! each stick through the decided packets must still admit a completion to an
//! initial or final interval. The top of the search tree is split into
//! independent prefixes that run in parallel; results are merged and sorted
//! canonically, so output never depends on the thread count.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colors::{enumerate_packets, stick_iter, ColorSet};
use crate::error::{Error, Result};
use crate::flips::{arrows, Direction, Generator};
use crate::inversion::{check_params, Cubillage, InversionSet};

pub const BUDGET_ENV: &str = "ZONOCUBE_BUDGET";
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Upper bound on search work: backtracking nodes for [`enumerate`], closure
/// size for [`bfs_closure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    /// `ZONOCUBE_BUDGET` if set and parseable, the default otherwise.
    pub fn from_env() -> Budget {
        std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).map(Budget).unwrap_or_default()
    }

    pub fn unlimited() -> Budget {
        Budget(u64::MAX)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    All,
    Symmetric,
    Skew,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::All => "all",
            Class::Symmetric => "symmetric",
            Class::Skew => "skew",
        })
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Class::All),
            "symmetric" => Ok(Class::Symmetric),
            "skew" => Ok(Class::Skew),
            other => Err(Error::invalid(format!("unknown class {other:?}"))),
        }
    }
}

impl Class {
    pub fn admits(self, q: &Cubillage) -> bool {
        match self {
            Class::All => true,
            Class::Symmetric => q.is_symmetric(),
            Class::Skew => q.is_skew_symmetric(),
        }
    }
}

/// One decision of the search: a packet and possibly its partner.
#[derive(Debug, Clone, Copy)]
struct Orbit {
    primary: usize,
    /// Partner packet and whether it takes the opposite value.
    partner: Option<(usize, bool)>,
}

struct Search {
    n: usize,
    d: usize,
    packets: Vec<ColorSet>,
    sticks: Vec<Vec<usize>>,
    packet_sticks: Vec<Vec<usize>>,
    orbits: Vec<Orbit>,
    budget: u64,
    steps: AtomicU64,
}

const UNSET: i8 = -1;

impl Search {
    /// `None` when the class is empty for structural reasons (a
    /// self-symmetric packet in the skew class).
    fn new(n: usize, d: usize, class: Class, budget: Budget) -> Result<Option<Search>> {
        let packets = if d < n { enumerate_packets(n, d + 1)? } else { Vec::new() };
        let index: HashMap<ColorSet, usize> = packets.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let sticks: Vec<Vec<usize>> = if d + 2 <= n {
            enumerate_packets(n, d + 2)?.into_iter().map(|g| stick_iter(g).map(|m| index[&m]).collect()).collect()
        } else {
            Vec::new()
        };
        let mut packet_sticks = vec![Vec::new(); packets.len()];
        for (s, members) in sticks.iter().enumerate() {
            for &p in members {
                packet_sticks[p].push(s);
            }
        }
        let mut orbits = Vec::new();
        for (i, &f) in packets.iter().enumerate() {
            let j = index[&f.involute_unchecked(n)];
            match class {
                Class::All => orbits.push(Orbit { primary: i, partner: None }),
                Class::Symmetric if j > i => orbits.push(Orbit { primary: i, partner: Some((j, false)) }),
                Class::Symmetric if j == i => orbits.push(Orbit { primary: i, partner: None }),
                Class::Skew if j == i => return Ok(None),
                Class::Skew if j > i => orbits.push(Orbit { primary: i, partner: Some((j, true)) }),
                _ => {}
            }
        }
        Ok(Some(Search { n, d, packets, sticks, packet_sticks, orbits, budget: budget.0, steps: AtomicU64::new(0) }))
    }

    fn stick_feasible(&self, stick: usize, assign: &[i8]) -> bool {
        let (mut seen0, mut seen1) = (false, false);
        let (mut no_initial, mut no_final) = (false, false);
        for &p in &self.sticks[stick] {
            match assign[p] {
                1 => {
                    no_initial |= seen0;
                    seen1 = true;
                }
                0 => {
                    no_final |= seen1;
                    seen0 = true;
                }
                _ => {}
            }
        }
        !(no_initial && no_final)
    }

    fn decide(&self, orbit: Orbit, value: i8, assign: &mut [i8]) -> bool {
        assign[orbit.primary] = value;
        if let Some((j, opposite)) = orbit.partner {
            assign[j] = if opposite { 1 - value } else { value };
        }
        let ok = self.packet_sticks[orbit.primary].iter().all(|&s| self.stick_feasible(s, assign))
            && orbit.partner.is_none_or(|(j, _)| self.packet_sticks[j].iter().all(|&s| self.stick_feasible(s, assign)));
        if !ok {
            self.undo(orbit, assign);
        }
        ok
    }

    fn undo(&self, orbit: Orbit, assign: &mut [i8]) {
        assign[orbit.primary] = UNSET;
        if let Some((j, _)) = orbit.partner {
            assign[j] = UNSET;
        }
    }

    fn tick(&self) -> Result<()> {
        if self.steps.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                context: format!("enumerating cubillages of ({}, {})", self.n, self.d),
            });
        }
        Ok(())
    }

    fn dfs(&self, level: usize, stop: usize, assign: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) -> Result<()> {
        self.tick()?;
        if level == stop {
            out.push(assign.clone());
            return Ok(());
        }
        let orbit = self.orbits[level];
        for value in [0, 1] {
            if self.decide(orbit, value, assign) {
                let r = self.dfs(level + 1, stop, assign, out);
                self.undo(orbit, assign);
                r?;
            }
        }
        Ok(())
    }

    fn to_cubillage(&self, assign: &[i8]) -> Cubillage {
        let members = self.packets.iter().zip(assign).filter(|(_, &v)| v == 1).map(|(&p, _)| p);
        Cubillage::new_unchecked(InversionSet::from_members(self.n, self.d, members).expect("packets are well-formed"))
    }
}

/// Number of orbits decided before the search fans out across threads.
const SPLIT_DEPTH: usize = 10;

/// All cubillages of `Z(n, d)` in the class, in canonical order.
pub fn enumerate(n: usize, d: usize, class: Class, budget: Budget) -> Result<Vec<Cubillage>> {
    check_params(n, d)?;
    let Some(search) = Search::new(n, d, class, budget)? else {
        return Ok(Vec::new());
    };
    let split = SPLIT_DEPTH.min(search.orbits.len());
    let mut prefixes = Vec::new();
    search.dfs(0, split, &mut vec![UNSET; search.packets.len()], &mut prefixes)?;
    let total = search.orbits.len();
    let chunks: Vec<Result<Vec<Cubillage>>> = prefixes
        .into_par_iter()
        .map(|mut assign| {
            let mut leaves = Vec::new();
            search.dfs(split, total, &mut assign, &mut leaves)?;
            Ok(leaves.iter().map(|a| search.to_cubillage(a)).collect())
        })
        .collect();
    let mut all = Vec::new();
    for chunk in chunks {
        all.extend(chunk?);
    }
    all.sort();
    Ok(all)
}

/// Closure of `start` under raising and lowering flips of the generator.
pub fn bfs_closure(start: &Cubillage, generator: Generator, budget: Budget) -> Result<Vec<Cubillage>> {
    let mut seen: BTreeSet<Cubillage> = BTreeSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start.clone()];
    while !frontier.is_empty() {
        let found: Vec<Result<Vec<Cubillage>>> = frontier
            .par_iter()
            .map(|q| {
                let mut next = Vec::new();
                for dir in [Direction::Raise, Direction::Lower] {
                    next.extend(arrows(q, generator, dir)?.into_iter().map(|(_, c)| c));
                }
                Ok(next)
            })
            .collect();
        let mut fresh = BTreeSet::new();
        for batch in found {
            for q in batch? {
                if !seen.contains(&q) {
                    fresh.insert(q);
                }
            }
        }
        seen.extend(fresh.iter().cloned());
        if seen.len() as u64 > budget.0 {
            return Err(Error::BudgetExceeded {
                budget: budget.0,
                context: format!("closing ({}, {}) under flips", start.n(), start.d()),
            });
        }
        frontier = fresh.into_iter().collect();
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, d: usize, class: Class) -> usize {
        enumerate(n, d, class, Budget::default()).unwrap().len()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(3, 1, Class::All), 6);
        assert_eq!(count(4, 1, Class::All), 24);
        assert_eq!(count(5, 2, Class::All), 62);
        assert_eq!(count(4, 1, Class::Symmetric), 8);
        assert_eq!(count(5, 2, Class::Symmetric), 10);
        assert_eq!(count(5, 2, Class::Skew), 0);
        assert_eq!(count(4, 4, Class::All), 1);
    }

    #[test]
    fn output_is_canonical_and_valid() {
        let all = enumerate(5, 2, Class::All, Budget::default()).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all[0].is_standard());
        assert!(all.last().unwrap().is_antistandard());
        for q in &all {
            assert!(crate::inversion::first_violation(q.inversions()).is_none());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate(5, 2, Class::All, Budget(10)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        let st = Cubillage::standard(5, 2).unwrap();
        let err = bfs_closure(&st, Generator::TypeA, Budget(5)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn closure_matches_enumeration() {
        let st = Cubillage::standard(5, 2).unwrap();
        let closure = bfs_closure(&st, Generator::TypeA, Budget::default()).unwrap();
        assert_eq!(closure, enumerate(5, 2, Class::All, Budget::default()).unwrap());
        let st = Cubillage::standard(4, 2).unwrap();
        assert_eq!(bfs_closure(&st, Generator::SYMMETRIC, Budget::default()).unwrap().len(), 2);
    }

    #[test]
    fn class_parsing() {
        assert_eq!("skew".parse::<Class>().unwrap(), Class::Skew);
        assert!("odd".parse::<Class>().is_err());
    }
}
