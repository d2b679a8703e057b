use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gogsep_core::catalog;
use gogsep_core::fuzz::{random_element, random_immersion, random_loop};
use gogsep_core::schema::{from_json, to_json, CertificateDoc, LoadOptions, MorphismDoc};
use gogsep_core::verifier::{enumerate_ball_elements, tree_ball};
use gogsep_core::{
    complete_to_cover, cover_index, enlarge, exclusion_sets, fold_generators, kurosh_rank, separate_element,
    separate_element_traced, CosetConvention, DecoratedMorphism, EdgeId, Element, GraphOfGroups, Index, LiftOutcome,
    SeparateOptions, Subgroup, TieBreak, VertexGroup, VertexId, Word,
};

fn targets() -> Vec<Arc<GraphOfGroups>> {
    vec![
        Arc::new(catalog::c2_c3()),
        Arc::new(catalog::d_inf()),
        Arc::new(catalog::z_z()),
        Arc::new(catalog::c2_c3_c2()),
        Arc::new(catalog::c2_loop()),
        Arc::new(catalog::z_c3()),
        Arc::new(catalog::f2_c2()),
    ]
}

fn finite_targets() -> Vec<Arc<GraphOfGroups>> {
    targets().into_iter().filter(|t| t.is_finite_kind()).collect()
}

fn groups() -> Vec<Arc<VertexGroup>> {
    use gogsep_core::group::FiniteGroup;
    vec![
        Arc::new(VertexGroup::cyclic(6, "a")),
        Arc::new(VertexGroup::Finite(FiniteGroup::symmetric(3))),
        Arc::new(VertexGroup::Integer),
        Arc::new(VertexGroup::free(2)),
    ]
}

/// A loop with deliberate cancellations: a random walk followed by the walk
/// back, with many identity elements.
fn raw_loop(g: &GraphOfGroups, v0: VertexId, steps: usize, rng: &mut ChaCha8Rng) -> Word {
    let graph = g.graph();
    let el = |v: VertexId, rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.5) {
            g.group(v).identity()
        } else {
            random_element(g.group(v), rng)
        }
    };
    let mut elements = vec![el(v0, rng)];
    let mut path = Vec::new();
    let mut v = v0;
    for _ in 0..steps {
        let e = *graph.edges_from(v).choose(rng).unwrap();
        v = graph.tau(e);
        path.push(e);
        elements.push(el(v, rng));
    }
    let mut edges = path.clone();
    for &e in path.iter().rev() {
        edges.push(e.bar());
        elements.push(el(graph.tau(e.bar()), rng));
    }
    Word::from_parts(graph, v0, elements, edges)
}

/// Deletes cancellable `e·1·~e` subwords in a random order until none is left.
fn reduce_in_random_order(g: &GraphOfGroups, w: &Word, rng: &mut ChaCha8Rng) -> Word {
    let graph = g.graph();
    let mut els = w.elements().to_vec();
    let mut es = w.edges().to_vec();
    loop {
        let spots: Vec<usize> = (0..es.len().saturating_sub(1))
            .filter(|&j| es[j + 1] == es[j].bar() && g.group(graph.tau(es[j])).is_identity(&els[j + 1]))
            .collect();
        let Some(&j) = spots.choose(rng) else { break };
        let v = graph.iota(es[j]);
        let merged = g.group(v).mul(&els[j], &els[j + 2]);
        els.splice(j..j + 3, [merged]);
        es.drain(j..j + 2);
    }
    Word::from_parts(graph, w.start(), els, es)
}

/// Conjugates of a loop obtained by starting it after each of its edges.
fn rotations(g: &GraphOfGroups, w: &Word) -> Vec<Word> {
    let n = w.edge_count();
    let els = w.elements();
    let v0 = w.start();
    let mut h: Vec<Element> = els[..n].to_vec();
    h[0] = g.group(v0).mul(&els[n], &els[0]);
    let graph = g.graph();
    (0..n)
        .map(|k| {
            let mut elements: Vec<Element> = (0..n).map(|i| h[(k + i) % n].clone()).collect();
            let start = if k == 0 { v0 } else { graph.tau(w.edges()[k - 1]) };
            elements.push(g.group(start).identity());
            let edges: Vec<EdgeId> = (0..n).map(|i| w.edges()[(k + i) % n]).collect();
            Word::from_parts(graph, start, elements, edges)
        })
        .collect()
}

fn random_subgroup(group: &Arc<VertexGroup>, rng: &mut ChaCha8Rng) -> Subgroup {
    let gens: Vec<Element> = (0..rng.gen_range(0..=3)).map(|_| random_element(group, rng)).collect();
    Subgroup::generate(group, &gens).unwrap()
}

fn finite_index_subgroup(group: &Arc<VertexGroup>, rng: &mut ChaCha8Rng) -> Subgroup {
    let s = random_subgroup(group, rng);
    if s.index().is_finite() {
        s
    } else {
        s.separate(&[]).unwrap()
    }
}

/// Elements to probe a group with: all of them for finite groups.
fn probes(group: &Arc<VertexGroup>, rng: &mut ChaCha8Rng) -> Vec<Element> {
    group
        .elements()
        .unwrap_or_else(|| (0..30).map(|_| random_element(group, rng)).collect())
}

fn finite_cover(seed: u64) -> (DecoratedMorphism, DecoratedMorphism) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts = finite_targets();
    let t = &ts[rng.gen_range(0..ts.len())];
    let m = random_immersion(t, t.base().unwrap(), rng.gen_range(1..=3), 7, &mut rng).unwrap();
    let (c, _) = complete_to_cover(&m, TieBreak::Seeded(rng.gen())).unwrap();
    (m, c)
}

fn any_cover(seed: u64) -> DecoratedMorphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts = targets();
    let t = &ts[rng.gen_range(0..ts.len())];
    let m = random_immersion(t, t.base().unwrap(), rng.gen_range(1..=3), 6, &mut rng).unwrap();
    let xs = exclusion_sets(&m, &BTreeMap::new()).unwrap();
    let k = enlarge(&m, &xs).unwrap();
    complete_to_cover(&k, TieBreak::Seeded(rng.gen())).unwrap().0
}

/// Reduction and cyclic reduction of a domain path, written against the
/// domain graph.
fn domain_cyclic_reduce(m: &DecoratedMorphism, w: &Word) -> Word {
    let graph = m.graph();
    let mut els: Vec<Element> = vec![w.elements()[0].clone()];
    let mut es: Vec<EdgeId> = Vec::new();
    for (&e, x) in w.edges().iter().zip(&w.elements()[1..]) {
        let v = graph.iota(e);
        if es.last() == Some(&e.bar()) && m.vertex_group(v).is_identity(els.last().unwrap()) {
            es.pop();
            els.pop();
            let last = els.last_mut().unwrap();
            *last = m.vertex_group(graph.tau(e)).mul(last, x);
        } else {
            es.push(e);
            els.push(x.clone());
        }
    }
    let mut start = w.start();
    while es.len() >= 2 && es[es.len() - 1] == es[0].bar() {
        let group = m.vertex_group(start);
        if !group.is_identity(&group.mul(els.last().unwrap(), &els[0])) {
            break;
        }
        start = graph.tau(es[0]);
        es = es[1..es.len() - 1].to_vec();
        els = els[1..els.len() - 1].to_vec();
    }
    Word::from_parts(graph, start, els, es)
}

/// A random loop in the domain: a walk out, then back to the base along a
/// breadth-first tree, with subgroup elements sprinkled in.
fn domain_loop(m: &DecoratedMorphism, u0: VertexId, rng: &mut ChaCha8Rng) -> Word {
    let graph = m.graph();
    let mut towards_root: Vec<Option<EdgeId>> = vec![None; graph.vertex_count()];
    let mut seen = vec![false; graph.vertex_count()];
    seen[u0.0] = true;
    let mut queue = std::collections::VecDeque::from([u0]);
    while let Some(v) = queue.pop_front() {
        for &e in graph.edges_from(v) {
            let w = graph.tau(e);
            if !seen[w.0] {
                seen[w.0] = true;
                towards_root[w.0] = Some(e.bar());
                queue.push_back(w);
            }
        }
    }
    let mut edges = Vec::new();
    let mut v = u0;
    for _ in 0..rng.gen_range(0..6) {
        let Some(&e) = graph.edges_from(v).choose(rng) else {
            break;
        };
        edges.push(e);
        v = graph.tau(e);
    }
    while let Some(e) = towards_root[v.0] {
        edges.push(e);
        v = graph.tau(e);
    }
    let pick = |v: VertexId, rng: &mut ChaCha8Rng| m.subgroup(v).elements().unwrap().choose(rng).unwrap().clone();
    let mut elements = vec![pick(u0, rng)];
    for &e in &edges {
        elements.push(pick(graph.tau(e), rng));
    }
    Word::from_parts(graph, u0, elements, edges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_is_confluent(which in 0usize..7, steps in 0usize..6, seed: u64) {
        let g = &targets()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = raw_loop(g, g.base().unwrap(), steps, &mut rng);
        let r = g.reduce(&w);
        prop_assert!(g.is_reduced(&r));
        prop_assert_eq!(&reduce_in_random_order(g, &w, &mut rng), &r);
        prop_assert_eq!(&reduce_in_random_order(g, &w, &mut rng), &r);
        prop_assert_eq!(g.reduce(&r), r);
    }

    #[test]
    fn cyclic_reductions_stay_cyclically_reduced_under_rotation(which in 0usize..7, seed: u64) {
        let g = &targets()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v0 = g.base().unwrap();
        let w = if rng.gen_bool(0.5) {
            random_loop(g, v0, 9, &mut rng)
        } else {
            raw_loop(g, v0, rng.gen_range(1..5), &mut rng)
        };
        let c = g.cyclic_reduce(&w).unwrap();
        if c.edge_count() > 0 {
            prop_assert!(g.is_cyclically_reduced(&c));
            for r in rotations(g, &c) {
                prop_assert!(g.is_cyclically_reduced(&r), "rotation {} of {}", g.show_word(&r), g.show_word(&c));
            }
        }
        prop_assert_eq!(g.cyclic_reduce(&c).unwrap(), c);
    }

    #[test]
    fn membership_matches_canonical_representatives(which in 0usize..4, seed: u64) {
        let group = &groups()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = finite_index_subgroup(group, &mut rng);
        let one = s.canonical_rep(&group.identity()).unwrap();
        for x in probes(group, &mut rng) {
            let rep = s.canonical_rep(&x).unwrap();
            prop_assert_eq!(s.contains(&x), rep == one);
            prop_assert!(s.same_coset(&x, &rep));
        }
    }

    #[test]
    fn coset_representatives_partition_the_group(which in 0usize..4, seed: u64) {
        let group = &groups()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = finite_index_subgroup(group, &mut rng);
        let reps = s.coset_reps().unwrap();
        prop_assert_eq!(Index::Finite(reps.len()), s.index());
        prop_assert!(group.is_identity(&reps[0]));
        for x in probes(group, &mut rng).into_iter().chain(reps.iter().cloned()) {
            let hits = reps.iter().filter(|t| s.same_coset(&x, t)).count();
            prop_assert_eq!(hits, 1);
        }
    }

    #[test]
    fn separation_avoids_the_excluded_set(which in 0usize..4, seed: u64) {
        let group = &groups()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_subgroup(group, &mut rng);
        let xs: Vec<Element> = (0..rng.gen_range(0..=4))
            .map(|_| random_element(group, &mut rng))
            .filter(|x| !s.contains(x))
            .collect();
        let k = s.separate(&xs).unwrap();
        prop_assert!(k.index().is_finite());
        prop_assert!(k.contains_subgroup(&s));
        for x in &xs {
            prop_assert!(!k.contains(x));
        }
    }

    #[test]
    fn free_subgroups_ignore_generator_order(seed: u64) {
        let group = Arc::new(VertexGroup::free(2));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens: Vec<Element> = (0..rng.gen_range(1..=4)).map(|_| random_element(&group, &mut rng)).collect();
        let a = Subgroup::generate(&group, &gens).unwrap();
        gens.shuffle(&mut rng);
        let b = Subgroup::generate(&group, &gens).unwrap();
        prop_assert_eq!(a.generators(), b.generators());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn lifts_never_stick_in_covers(seed: u64) {
        let cover = any_cover(seed);
        let t = cover.target();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let u0 = cover.base().unwrap();
        for _ in 0..10 {
            let w = random_loop(t, cover.phi_vertex(u0), 10, &mut rng);
            let lift = cover.lift_loop(&w, u0).unwrap();
            let stuck = matches!(lift, LiftOutcome::Stuck { .. });
            prop_assert!(!stuck);
        }
    }

    #[test]
    fn images_of_cyclically_reduced_loops_are_cyclically_reduced(seed: u64) {
        let (m, cover) = finite_cover(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for domain in [&m, &cover] {
            let u0 = domain.base().unwrap();
            for _ in 0..10 {
                let w = domain_cyclic_reduce(domain, &domain_loop(domain, u0, &mut rng));
                let image = domain.induced_image(&w).unwrap();
                prop_assert!(domain.target().is_reduced(&image));
                if w.edge_count() > 0 {
                    prop_assert!(domain.target().is_cyclically_reduced(&image));
                }
            }
        }
    }

    #[test]
    fn fold_contains_its_generators(which in 0usize..7, seed: u64) {
        let t = &targets()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v0 = t.base().unwrap();
        let gens: Vec<Word> = (0..rng.gen_range(0..=3)).map(|_| random_loop(t, v0, 7, &mut rng)).collect();
        let m = fold_generators(t, v0, &gens).unwrap();
        prop_assert!(m.check_immersion().is_ok());
        let u0 = m.base().unwrap();
        for w in &gens {
            prop_assert!(m.subgroup_member(u0, w).unwrap());
        }
    }

    #[test]
    fn fold_ignores_generator_order(which in 0usize..7, seed: u64) {
        let t = &targets()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v0 = t.base().unwrap();
        let mut gens: Vec<Word> = (0..rng.gen_range(1..=4)).map(|_| random_loop(t, v0, 7, &mut rng)).collect();
        let a = fold_generators(t, v0, &gens).unwrap();
        gens.shuffle(&mut rng);
        let b = fold_generators(t, v0, &gens).unwrap();
        prop_assert_eq!(a.vertex_count(), b.vertex_count());
        prop_assert_eq!(a.graph().edge_count(), b.graph().edge_count());
        let profile = |m: &DecoratedMorphism| {
            let mut p: Vec<(VertexId, String)> =
                m.graph().vertices().map(|v| (m.phi_vertex(v), format!("{:?}", m.subgroup(v).index()))).collect();
            p.sort();
            p
        };
        prop_assert_eq!(profile(&a), profile(&b));
        let (ua, ub) = (a.base().unwrap(), b.base().unwrap());
        for w in a.subgroup_generators(ua) {
            prop_assert!(b.subgroup_member(ub, &w).unwrap());
        }
        for w in b.subgroup_generators(ub) {
            prop_assert!(a.subgroup_member(ua, &w).unwrap());
        }
    }

    #[test]
    fn degree_does_not_depend_on_the_pairing(seed: u64) {
        let (m, _) = finite_cover(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (first, d) = complete_to_cover(&m, TieBreak::Lexicographic).unwrap();
        prop_assert_eq!(cover_index(&first).unwrap(), d);
        for _ in 0..3 {
            let (c, d2) = complete_to_cover(&m, TieBreak::Seeded(rng.gen())).unwrap();
            prop_assert_eq!(d2, d);
            prop_assert_eq!(cover_index(&c).unwrap(), d);
        }
    }

    #[test]
    fn tree_balls_are_trees(which in 0usize..7, r in 0usize..4) {
        let g = &targets()[which];
        let ball = tree_ball(g, g.base().unwrap(), r, Some(1)).unwrap();
        prop_assert_eq!(ball.parent[0], None);
        for (i, p) in ball.parent.iter().enumerate().skip(1) {
            prop_assert!(matches!(p, Some(j) if *j < i));
        }
        let keys: HashSet<_> = ball.vertices.iter().map(|v| v.key.clone()).collect();
        prop_assert_eq!(keys.len(), ball.len());
    }

    #[test]
    fn morphisms_round_trip_through_json(seed: u64, left: bool) {
        let cover = any_cover(seed);
        let convention = if left { CosetConvention::PaperLeft } else { CosetConvention::Right };
        let doc = MorphismDoc::from_morphism(&cover, convention);
        let text = to_json(&doc);
        let back: MorphismDoc = from_json(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.build(LoadOptions::default()).unwrap(), cover);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certificates_round_trip_through_json(which in 0usize..7, seed: u64, left: bool) {
        let t = &targets()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v0 = t.base().unwrap();
        let gens: Vec<Word> = (0..rng.gen_range(1..=2)).map(|_| random_loop(t, v0, 5, &mut rng)).collect();
        let g = random_loop(t, v0, 5, &mut rng);
        let opts = SeparateOptions { tie: TieBreak::Seeded(seed) };
        let Ok(cert) = separate_element(t, v0, &gens, &g, opts) else { return Ok(()) };
        let convention = if left { CosetConvention::PaperLeft } else { CosetConvention::Right };
        let text = to_json(&CertificateDoc::from_certificate(&cert, convention));
        let back = CertificateDoc::parse(&text).unwrap().build(LoadOptions::default()).unwrap();
        prop_assert_eq!(back, cert);
    }

    #[test]
    fn hair_does_not_change_the_kurosh_rank(which in 0usize..7, seed: u64) {
        let t = &targets()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v0 = t.base().unwrap();
        let gens: Vec<Word> = (0..rng.gen_range(1..=3)).map(|_| random_loop(t, v0, 6, &mut rng)).collect();
        let g = random_loop(t, v0, 6, &mut rng);
        let Ok((cert, trace)) = separate_element_traced(t, v0, &gens, &g, SeparateOptions::default()) else {
            return Ok(());
        };
        let u0 = cert.base;
        prop_assert_eq!(kurosh_rank(&trace.with_path, u0), kurosh_rank(&trace.folded, u0));
    }
}

/// Reduced loops at the base with exactly `k` syllables in `A * B` with one
/// edge: the ends range over `A`, the middle alternates between non-trivial
/// elements of `B` and of `A`.
fn alternating_count(a: usize, b: usize, k: usize) -> usize {
    if k == 1 {
        return a;
    }
    if k.is_multiple_of(2) {
        return 0;
    }
    let m = (k - 1) / 2;
    a * a * (b - 1).pow(m as u32) * (a - 1).pow(m as u32 - 1)
}

#[test]
fn ball_element_counts_match_closed_forms() {
    for (g, a, b) in [(catalog::c2_c3(), 2, 3), (catalog::d_inf(), 2, 2)] {
        for n in 0..=6 {
            let expected: usize = (1..=n).map(|k| alternating_count(a, b, k)).sum();
            let loops = enumerate_ball_elements(&g, g.base().unwrap(), n, None).unwrap();
            assert_eq!(loops.len(), expected, "{} with n = {n}", g.describe());
            let distinct: HashSet<Word> = loops.iter().cloned().collect();
            assert_eq!(distinct.len(), loops.len());
            assert!(loops.iter().all(|w| g.is_reduced(w)));
        }
    }
}
