use std::collections::BTreeSet;

use proptest::prelude::*;
use zonocube::digraph::class_digraph;
use zonocube::flips::arrows;
use zonocube::geometry::{expected_vertex_count, frame_default, spectrum, Rational};
use zonocube::inversion::{first_violation, sticks_through_valid};
use zonocube::io::{emit_cubillage, parse_cubillage, LabelMode};
use zonocube::{
    apply_flip, bfs_closure, enumerate, enumerate_packets, stick_members, validate, Budget, Class, ColorSet, Cubillage,
    Direction, EdgeKind, Generator, InversionSet,
};

const PARAMS: [(usize, usize); 8] = [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2), (5, 3), (6, 2), (6, 3)];

/// Random walk of `steps` type-A flips from the standard cubillage.
fn walk(n: usize, d: usize, steps: &[(bool, u8)]) -> Cubillage {
    let mut q = Cubillage::standard(n, d).unwrap();
    for &(raise, pick) in steps {
        let dir = if raise { Direction::Raise } else { Direction::Lower };
        let options = arrows(&q, Generator::TypeA, dir).unwrap();
        if !options.is_empty() {
            q = options[pick as usize % options.len()].1.clone();
        }
    }
    q
}

fn cubillage() -> impl Strategy<Value = Cubillage> {
    (0..PARAMS.len(), prop::collection::vec((any::<bool>(), any::<u8>()), 0..40))
        .prop_map(|(i, steps)| walk(PARAMS[i].0, PARAMS[i].1, &steps))
}

/// Every stick meets the family in an initial or a final interval.
fn brute_force_valid(n: usize, d: usize, members: &BTreeSet<ColorSet>) -> bool {
    if d + 2 > n {
        return true;
    }
    enumerate_packets(n, d + 2).unwrap().into_iter().all(|g| {
        let pattern: Vec<bool> = stick_members(g).unwrap().members.iter().map(|m| members.contains(m)).collect();
        let changes = pattern.windows(2).filter(|w| w[0] != w[1]).count();
        changes <= 1
    })
}

/// Vertices of `q` as centered points, optionally through the frame's
/// reflection.
fn vertex_points(q: &Cubillage, reflected: bool) -> BTreeSet<Vec<Rational>> {
    let frame = frame_default(q.n(), q.d()).unwrap();
    spectrum(q)
        .0
        .iter()
        .map(|&v| {
            let p = frame.centered_point(v);
            if reflected {
                frame.reflect(&p)
            } else {
                p
            }
        })
        .collect()
}

fn involute_all(set: &BTreeSet<ColorSet>, n: usize) -> BTreeSet<ColorSet> {
    set.iter().map(|p| p.involute(n).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn involution_is_an_involution(q in cubillage()) {
        prop_assert_eq!(q.involuted().involuted(), q.clone());
        prop_assert_eq!(q.complement().complement(), q);
    }

    #[test]
    fn involution_commutes_with_sticks(q in cubillage()) {
        let n = q.n();
        for g in enumerate_packets(n, q.d() + 2).unwrap() {
            let mut reflected: Vec<ColorSet> =
                stick_members(g).unwrap().members.iter().map(|m| m.involute(n).unwrap()).collect();
            reflected.reverse();
            prop_assert_eq!(stick_members(g.involute(n).unwrap()).unwrap().members, reflected);
        }
    }

    #[test]
    fn symmetries_preserve_validity(q in cubillage()) {
        for image in [q.involuted(), q.complement(), q.involuted().complement()] {
            prop_assert!(brute_force_valid(image.n(), image.d(), image.members()));
        }
        let reflected = q.involuted();
        prop_assert_eq!(reflected.members(), &involute_all(q.members(), q.n()));
    }

    #[test]
    fn walks_stay_valid(q in cubillage()) {
        prop_assert!(brute_force_valid(q.n(), q.d(), q.members()));
        let symmetric = q.involuted() == q;
        let skew = q.involuted() == q.complement();
        prop_assert_eq!(q.is_symmetric(), symmetric);
        prop_assert_eq!(q.is_skew_symmetric(), skew);
    }

    #[test]
    fn validation_matches_brute_force(i in 0..PARAMS.len(), bits in any::<u64>()) {
        let (n, d) = PARAMS[i];
        let packets = enumerate_packets(n, d + 1).unwrap();
        let chosen: Vec<ColorSet> =
            packets.iter().enumerate().filter(|(k, _)| bits >> (k % 64) & 1 == 1).map(|(_, &p)| p).collect();
        let set = InversionSet::from_members(n, d, chosen.iter().copied()).unwrap();
        let expected = brute_force_valid(n, d, set.members());
        prop_assert_eq!(first_violation(&set).is_none(), expected);
        prop_assert_eq!(validate(set).is_ok(), expected);
    }

    #[test]
    fn incremental_validation_matches_full(q in cubillage(), picks in prop::collection::vec(any::<u16>(), 1..4)) {
        let packets = enumerate_packets(q.n(), q.d() + 1).unwrap();
        let mut changed: Vec<ColorSet> = picks.iter().map(|&k| packets[k as usize % packets.len()]).collect();
        changed.sort();
        changed.dedup();
        let mut set = q.inversions().clone();
        for &p in &changed {
            if !set.remove(p) {
                set.insert(p).unwrap();
            }
        }
        prop_assert_eq!(sticks_through_valid(&set, &changed), first_violation(&set).is_none());
    }

    #[test]
    fn raise_then_lower_is_identity(q in cubillage()) {
        for (flip, up) in arrows(&q, Generator::TypeA, Direction::Raise).unwrap() {
            prop_assert_eq!(up.rank(), q.rank() + 1);
            prop_assert_eq!(apply_flip(&up, &flip, Direction::Lower).unwrap(), q.clone());
        }
        for (flip, down) in arrows(&q, Generator::TypeA, Direction::Lower).unwrap() {
            prop_assert_eq!(apply_flip(&down, &flip, Direction::Raise).unwrap(), q.clone());
        }
    }

    #[test]
    fn documents_round_trip(q in cubillage(), symmetric in any::<bool>()) {
        let mode = if symmetric { LabelMode::Symmetric } else { LabelMode::Natural };
        let text = emit_cubillage(&q, mode);
        let back = parse_cubillage(&text).unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert_eq!(emit_cubillage(&back, mode), text);
    }

    #[test]
    fn spectrum_reflects_with_involution(q in cubillage()) {
        let (n, d) = (q.n(), q.d());
        let s = spectrum(&q);
        prop_assert_eq!(s.len() as u64, expected_vertex_count(n, d));
        prop_assert_eq!(vertex_points(&q.involuted(), false), vertex_points(&q, true));
    }
}

#[test]
fn spectrum_reflection_on_whole_classes() {
    for (n, d) in [(4, 1), (5, 2), (6, 3)] {
        for q in enumerate(n, d, Class::All, Budget::default()).unwrap() {
            assert_eq!(vertex_points(&q.involuted(), false), vertex_points(&q, true));
            // Vertex sets move by the involution, complemented in odd dimension.
            let moved = spectrum(&q).involuted(n);
            let moved: BTreeSet<ColorSet> =
                if d % 2 == 0 { moved.0 } else { moved.0.iter().map(|v| ColorSet::full(n).difference(*v)).collect() };
            assert_eq!(spectrum(&q.involuted()).0, moved);
        }
    }
}

#[test]
fn odd_color_counts_have_no_skew_cubillages() {
    for d in 1..=3 {
        let all = enumerate(5, d, Class::All, Budget::default()).unwrap();
        assert!(all.iter().all(|q| q.involuted() != q.complement()));
        assert!(enumerate(5, d, Class::Skew, Budget::default()).unwrap().is_empty());
    }
}

#[test]
fn class_enumeration_matches_filtering() {
    for (n, d) in PARAMS {
        let all = enumerate(n, d, Class::All, Budget::default()).unwrap();
        for class in [Class::Symmetric, Class::Skew] {
            let filtered: Vec<Cubillage> = all.iter().filter(|q| class.admits(q)).cloned().collect();
            assert_eq!(enumerate(n, d, class, Budget::default()).unwrap(), filtered, "({n},{d}) {class}");
        }
    }
}

#[test]
fn enumeration_matches_flip_closure() {
    for (n, d) in PARAMS {
        let start = Cubillage::standard(n, d).unwrap();
        let all = enumerate(n, d, Class::All, Budget::default()).unwrap();
        assert_eq!(bfs_closure(&start, Generator::TypeA, Budget::default()).unwrap(), all, "({n},{d})");
        let sym = enumerate(n, d, Class::Symmetric, Budget::default()).unwrap();
        assert_eq!(bfs_closure(&start, Generator::SYMMETRIC, Budget::default()).unwrap(), sym, "({n},{d})");
    }
}

/// Every symmetric flip is a sequence of type-A flips through valid families.
#[test]
fn symmetric_flips_decompose_into_type_a_steps() {
    for (n, d) in [(4, 1), (5, 1), (4, 2), (5, 2), (6, 2), (6, 3)] {
        let g = class_digraph(n, d, Class::Symmetric, Budget::default()).unwrap();
        for e in g.edges() {
            let (src, dst) = (g.node(e.src), g.node(e.dst));
            let added: Vec<ColorSet> = dst.members().difference(src.members()).copied().collect();
            assert!(src.members().is_subset(dst.members()));
            assert_eq!(added.len(), e.kind.delta(d), "({n},{d}) {:?}", e.kind);
            if e.kind == EdgeKind::Simple {
                continue;
            }
            let decomposes = |order: Vec<ColorSet>| {
                let mut q = src.clone();
                order.into_iter().all(|p| match Cubillage::from_members(n, d, q.members().iter().copied().chain([p])) {
                    Ok(next) => {
                        q = next;
                        true
                    }
                    Err(_) => false,
                })
            };
            assert!(
                decomposes(added.clone()) || decomposes(added.iter().rev().copied().collect()),
                "({n},{d}) {:?} arrow {} -> {}",
                e.kind,
                e.src,
                e.dst
            );
        }
    }
}
