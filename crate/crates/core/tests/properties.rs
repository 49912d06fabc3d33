use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bnscope::andnet::{random_andnet, AndNet};
use bnscope::constructions::{theorem_b_network, Letter, TrajectoryAtlas};
use bnscope::dynamics::{attractive_cycles, attractors, fixed_points, is_antipodal, is_nonexpansive};
use bnscope::graph::Sign;
use bnscope::interaction::{local_cycles, local_graph, SignFilter};
use bnscope::isometry::Isometry;
use bnscope::network::{random_network, BooleanNetwork};
use bnscope::report::{analyze, AnalysisOptions};
use bnscope::state::State;

/// `f_i` is a constant, `x_{p(i)}` or its negation, `p` injective: such maps
/// never increase Hamming distance.
fn single_input_network(n: usize, seed: u64) -> BooleanNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng);
    let kinds: Vec<u8> = (0..n).map(|_| rng.gen_range(0..4)).collect();
    BooleanNetwork::from_fn(n, |x| {
        (0..n).fold(0, |y, i| {
            let v = (x >> p[i]) & 1;
            let b = match kinds[i] {
                0 => 0,
                1 => 1,
                2 => v,
                _ => v ^ 1,
            };
            y | b << i
        })
    })
    .unwrap()
}

/// A Hamiltonian cycle through a random order with random edge signs.
fn hamiltonian_andnet(n: usize, seed: u64) -> AndNet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pos = vec![vec![]; n];
    let mut neg = vec![vec![]; n];
    for k in 0..n {
        let (from, to) = (order[k], order[(k + 1) % n]);
        if rng.gen_bool(0.5) {
            pos[to].push(from);
        } else {
            neg[to].push(from);
        }
    }
    AndNet::new(pos, neg).unwrap()
}

fn is_chordless_hamiltonian_negative(a: &AndNet) -> bool {
    let g = a.to_signed_digraph();
    let n = a.dim();
    if g.edge_count() != n {
        return false;
    }
    let cycles = g.cycles().unwrap();
    cycles.len() == 1 && cycles[0].len() == n && cycles[0].sign() == Sign::Negative
}

#[test]
fn nonexpansive_cyclic_attractor_has_local_negative_cycle() {
    let mut with_cyclic = 0;
    for seed in 0..3000u64 {
        let n = 1 + (seed % 5) as usize;
        let f = if seed % 3 == 0 {
            random_network(n.min(3), seed).unwrap()
        } else {
            single_input_network(n, seed)
        };
        if !is_nonexpansive(&f) {
            continue;
        }
        if attractors(&f).iter().any(|a| a.is_cyclic) {
            with_cyclic += 1;
            assert!(!local_cycles(&f, SignFilter::Negative).unwrap().is_empty(), "seed {seed}");
        }
    }
    assert!(with_cyclic > 100);
}

#[test]
fn antipodal_attractive_cycle_iff_chordless_hamiltonian_negative_cycle() {
    let mut positives = 0;
    for seed in 0..4000u64 {
        let n = 1 + (seed % 5) as usize;
        let a = if seed % 2 == 0 {
            hamiltonian_andnet(n, seed)
        } else {
            random_andnet(n, seed, 0.35).unwrap()
        };
        let f = a.to_network();
        let antipodal = attractive_cycles(&f).iter().any(is_antipodal);
        let shape = is_chordless_hamiltonian_negative(&a);
        assert_eq!(antipodal, shape, "seed {seed}: {}", a.render());
        positives += usize::from(shape);
    }
    assert!(positives > 100);
}

#[test]
fn freedom_at_the_named_points() {
    for n in 7..=10 {
        let atlas = TrajectoryAtlas::new(n).unwrap();
        let f = theorem_b_network(n).unwrap();
        let e = |idx: &[i64]| idx.iter().fold(0u32, |m, &i| m | 1 << i.rem_euclid(n as i64));
        for i in 0..2 * n as i64 {
            let free = |x: State| f.image(x.word()) ^ x.word();
            assert_eq!(free(atlas.b(i)), e(&[i, i + 2]), "b^{i}");
            assert_eq!(free(atlas.c(i)), e(&[i, i + 1]), "c^{i}");
            assert_eq!(free(atlas.d(i)), e(&[i]), "d^{i}");
            assert_eq!(free(atlas.a(i)), e(&[i]), "a^{i}");
        }
    }
}

#[test]
fn twist_permutes_the_named_points() {
    for n in 7..=9 {
        let atlas = TrajectoryAtlas::new(n).unwrap();
        let t = Isometry::twist(n);
        for l in Letter::ALL {
            for i in 0..2 * n as i64 {
                assert_eq!(t.apply(&atlas.point(l, i)).unwrap(), atlas.point(l, i + 1));
            }
        }
        let set: BTreeSet<State> = atlas.points().into_iter().map(|(_, s)| s).collect();
        let image: BTreeSet<State> = set.iter().map(|s| t.apply(s).unwrap()).collect();
        assert_eq!(set, image);
    }
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let nets: Vec<BooleanNetwork> = (0..6).map(|s| random_network(6, 900 + s).unwrap()).collect();
    let run = |threads: usize| -> Vec<String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            nets.iter()
                .map(|f| analyze(f, "r", &AnalysisOptions::everything()).unwrap().to_json().unwrap())
                .collect()
        })
    };
    assert_eq!(run(1), run(4));
}

proptest! {
    #[test]
    fn attractors_partition_reachable_ends(seed in 0u64..100_000, n in 1usize..6) {
        let f = random_network(n, seed).unwrap();
        let atts = attractors(&f);
        let mut seen = BTreeSet::new();
        for a in &atts {
            for s in &a.states {
                prop_assert!(seen.insert(*s));
            }
        }
        if fixed_points(&f).is_empty() {
            prop_assert!(atts.iter().any(|a| a.is_cyclic));
        }
        prop_assert_eq!(fixed_points(&f).len(), atts.iter().filter(|a| a.is_fixed_point).count());
    }

    #[test]
    fn andnet_local_graphs_sit_inside_the_digraph(seed in 0u64..100_000, n in 1usize..6, x in 0u32..32) {
        let a = random_andnet(n, seed, 0.4).unwrap();
        let f = a.to_network();
        let s = State::new(x & ((1 << n) - 1), n).unwrap();
        prop_assert!(local_graph(&f, &s).unwrap().is_subgraph_of(&a.to_signed_digraph()));
    }
}
