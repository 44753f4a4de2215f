//! Hand-described symmetric digraphs on few colors, with named nodes.
//!
//! Each fixture lists a rising sequence `O, A, B, ...` of symmetric
//! cubillages, their complements (suffix `bar`), and every arrow between
//! them.

use crate::colors::ColorSet;
use crate::flips::EdgeKind;
use crate::inversion::Cubillage;

#[derive(Debug, Clone)]
pub struct Fixture {
    pub n: usize,
    pub d: usize,
    pub nodes: Vec<(String, Cubillage)>,
    pub edges: Vec<(String, String, EdgeKind)>,
}

impl Fixture {
    pub fn node(&self, name: &str) -> Option<&Cubillage> {
        self.nodes.iter().find(|(k, _)| k == name).map(|(_, q)| q)
    }
}

fn packet(digits: &str) -> ColorSet {
    ColorSet::from_colors(digits.chars().map(|c| c.to_digit(10).expect("digit") as usize)).expect("small colors")
}

/// `steps[i]` lists the packets added to reach the `i`-th named node; the
/// complements of all named nodes are added too.
fn build(n: usize, d: usize, names: &[&str], steps: &[&[&str]], edges: &[(&str, &str, EdgeKind)]) -> Fixture {
    let mut nodes = Vec::new();
    let mut members: Vec<ColorSet> = Vec::new();
    for (name, step) in names.iter().zip(steps) {
        members.extend(step.iter().map(|p| packet(p)));
        let q = Cubillage::from_members(n, d, members.iter().copied()).expect("fixture is bi-convex");
        nodes.push((format!("{name}bar"), q.complement()));
        nodes.push((name.to_string(), q));
    }
    nodes.sort_by(|a, b| a.1.cmp(&b.1));
    nodes.dedup_by(|a, b| a.1 == b.1);
    let edges = edges.iter().map(|&(a, b, k)| (a.to_string(), b.to_string(), k)).collect();
    Fixture { n, d, nodes, edges }
}

/// Symmetric digraph of `(4, 1)`: four simple and four double arrows.
pub fn sq_4_1() -> Fixture {
    use EdgeKind::*;
    build(
        4,
        1,
        &["O", "A", "B", "C"],
        &[&[], &["23"], &["13", "24"], &["14"]],
        &[
            ("O", "A", Simple),
            ("A", "B", Double),
            ("B", "C", Simple),
            ("C", "Obar", Double),
            ("O", "Cbar", Double),
            ("Cbar", "Bbar", Simple),
            ("Bbar", "Abar", Double),
            ("Abar", "Obar", Simple),
        ],
    )
}

/// Symmetric digraph of `(5, 1)`: the simple arrows of `(4, 1)` become
/// barrels.
pub fn sq_5_1() -> Fixture {
    use EdgeKind::*;
    build(
        5,
        1,
        &["O", "A", "B", "C"],
        &[&[], &["23", "24", "34"], &["14", "25"], &["13", "15", "35"]],
        &[
            ("O", "A", Barrel),
            ("A", "B", Double),
            ("B", "C", Barrel),
            ("C", "Obar", Double),
            ("O", "Cbar", Double),
            ("Cbar", "Bbar", Barrel),
            ("Bbar", "Abar", Double),
            ("Abar", "Obar", Barrel),
        ],
    )
}

/// Symmetric digraph of `(4, 2)`: one barrel.
pub fn sq_4_2() -> Fixture {
    build(4, 2, &["O"], &[&[]], &[("O", "Obar", EdgeKind::Barrel)])
}

/// Symmetric digraph of `(5, 2)`: two rows of five joined by doubles.
pub fn sq_5_2() -> Fixture {
    use EdgeKind::*;
    build(
        5,
        2,
        &["O", "A", "B", "C", "D"],
        &[&[], &["234"], &["134", "235"], &["135"], &["124", "125", "145", "245"]],
        &[
            ("O", "A", Simple),
            ("A", "B", Double),
            ("B", "C", Simple),
            ("C", "D", Barrel),
            ("D", "Obar", Double),
            ("O", "Dbar", Double),
            ("Dbar", "Cbar", Barrel),
            ("Cbar", "Bbar", Simple),
            ("Bbar", "Abar", Double),
            ("Abar", "Obar", Simple),
        ],
    )
}

pub fn all() -> Vec<Fixture> {
    vec![sq_4_1(), sq_5_1(), sq_4_2(), sq_5_2()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_counts() {
        let sizes: Vec<usize> = all().iter().map(|f| f.nodes.len()).collect();
        assert_eq!(sizes, vec![8, 8, 2, 10]);
        assert!(all().iter().all(|f| f.nodes.iter().all(|(_, q)| q.is_symmetric())));
    }

    #[test]
    fn named_members() {
        let f = sq_5_2();
        assert_eq!(f.node("C").unwrap().rank(), 4);
        assert_eq!(f.node("D").unwrap().rank(), 8);
        let dbar: Vec<ColorSet> = f.node("Dbar").unwrap().iter().collect();
        assert_eq!(dbar, vec![packet("123"), packet("345")]);
        assert!(f.node("Obar").unwrap().is_antistandard());
    }
}
