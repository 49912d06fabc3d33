//! Named verification runs. Each returns a list of checked claims; the CLI
//! `verify` subcommands and the acceptance target both call into here.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::andnet::random_andnet;
use crate::andnet_analysis::{is_local_andnet_cycle, kernels, killing_triples};
use crate::constructions::{
    antipodal_cycle, fig1_network, fig1_reference_transitions, negative_cycles, padding_pattern_check,
    reduction_example, single_negative_cycle, single_positive_cycle, theorem_a_construction,
    theorem_a_prime_digraph, theorem_a_reference_edges, theorem_a_seed, theorem_b_network,
    verify_neighbor_lists, PaddingPattern, TrajectoryAtlas,
};
use crate::dynamics::{async_edges, attractive_cycles, attractors, fixed_points, freedom_mask};
use crate::error::Result;
use crate::graph::Sign;
use crate::interaction::{
    cycle_cover_count, cycle_sign_by_parity, global_graph, is_local_cycle, jacobian_invertible, local_cycles,
    local_edges, local_graph, local_graph_cycles, SignFilter,
};
use crate::isometry::{equivariance_isomorphism_check, is_equivariant, verify_isometry_characterization, Isometry};
use crate::network::{random_network, BooleanNetwork};
use crate::state::State;
use crate::transform::{
    all_quasi_delocalizing, check_reduction_jacobian, lift_state, random_reducible_network, reduce,
};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Check {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Verification {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn new(name: impl Into<String>) -> Self {
        Verification {
            name: name.into(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, claim: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            claim: claim.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn merge(&mut self, other: Verification) {
        self.checks.extend(other.checks);
    }

    /// One line per check, `PASS` or `FAIL` first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("{tag} [{}] {}\n", self.name, c.claim));
            } else {
                out.push_str(&format!("{tag} [{}] {} ({})\n", self.name, c.claim, c.detail));
            }
        }
        out
    }
}

fn bits(states: &[State]) -> String {
    states.iter().map(|s| s.to_bitstring()).collect::<Vec<_>>().join(" ")
}

pub fn verify_fig1() -> Result<Verification> {
    let mut v = Verification::new("fig1");
    let f = fig1_network();
    let fps = fixed_points(&f);
    v.check("no fixed point", fps.is_empty(), bits(&fps));
    let atts = attractors(&f);
    let expected: Vec<State> = f.states().filter(|s| s.word() != 0b111).collect();
    let single = atts.len() == 1;
    v.check("exactly one attractor", single, format!("{} found", atts.len()));
    if let Some(a) = atts.first() {
        v.check(
            "the attractor is every state but 111",
            a.states == expected,
            format!("{} states", a.len()),
        );
        v.check(
            "the attractor is cyclic and not an attractive cycle",
            a.is_cyclic && !a.is_attractive_cycle,
            "",
        );
    }
    let mut drawn = fig1_reference_transitions();
    drawn.sort();
    let mut computed = async_edges(&f);
    computed.sort();
    v.check(
        "asynchronous graph has exactly the 12 drawn transitions",
        computed == drawn,
        format!("{} transitions", computed.len()),
    );
    Ok(v)
}

pub fn verify_theorem_a_seed() -> Result<Verification> {
    let mut v = Verification::new("theorem-a-seed");
    let seed = theorem_a_seed();
    let f = seed.to_network();
    v.check("seed has no fixed point", fixed_points(&f).is_empty(), "");
    let cycles = negative_cycles(&seed)?;
    let expected: BTreeSet<Vec<usize>> = (0..4)
        .map(|i| {
            let mut c = vec![i, (i + 1) % 4, (i + 2) % 4];
            let m = c.iter().position(|&x| x == *c.iter().min().expect("nonempty")).expect("min");
            c.rotate_left(m);
            c
        })
        .collect();
    let found: BTreeSet<Vec<usize>> = cycles.iter().map(|c| c.vertices().to_vec()).collect();
    v.check(
        "negative cycles are exactly the four triangles (i, i+1, i+2)",
        found == expected && cycles.len() == 4,
        format!("{} negative cycles", cycles.len()),
    );
    let all = all_quasi_delocalizing(&seed, &cycles, 16)?;
    v.check(
        "exactly one quasi-delocalizing function",
        all.len() == 1,
        format!("{} found", all.len()),
    );
    if let Some(chi) = all.first() {
        let chords_ok = cycles.iter().all(|c| {
            let missing = (0..4).find(|&m| !c.contains_vertex(m)).expect("triangle");
            let i = (missing + 1) % 4;
            chi.chord_of(c) == Some((i, (i + 2) % 4))
        });
        v.check("its chord on the triangle (i, i+1, i+2) is (i, i+2)", chords_ok, "");
    }
    let theta = crate::constructions::theorem_a_seed_attractive_cycle();
    v.check(
        "the drawn 8-state cycle is an attractive cycle of the seed",
        attractive_cycles(&f).iter().any(|c| c.same_cycle(&theta)),
        bits(theta.states()),
    );
    Ok(v)
}

pub fn verify_theorem_a() -> Result<Verification> {
    let mut v = Verification::new("theorem-a");
    let cons = theorem_a_construction()?;
    let g = cons.expanded.to_network();
    let mut computed: Vec<_> = cons
        .expanded
        .to_signed_digraph()
        .edges()
        .map(|e| (e.from, e.to, e.sign))
        .collect();
    let mut drawn = theorem_a_reference_edges();
    computed.sort();
    drawn.sort();
    v.check(
        "expanded and-net has the drawn 24 signed edges on vertices 0..11",
        g.dim() == 12 && computed == drawn,
        format!("{} edges", computed.len()),
    );
    let fps = fixed_points(&g);
    v.check("no fixed point over all 4096 states", fps.is_empty(), bits(&fps));
    let neg = local_cycles(&g, SignFilter::Negative)?;
    v.check(
        "no local negative cycle over all 4096 states",
        neg.is_empty(),
        neg.first().map(|l| format!("{} at {}", l.cycle, l.witness.to_bitstring())).unwrap_or_default(),
    );
    let atts = attractors(&g);
    let odd = atts.iter().filter(|a| a.is_cyclic && !a.is_attractive_cycle).count();
    v.check(
        "a cyclic attractor that is not an attractive cycle",
        odd > 0,
        format!("{} attractors, sizes {:?}", atts.len(), atts.iter().map(|a| a.len()).collect::<Vec<_>>()),
    );
    let mut h = g.clone();
    for k in cons.trace.reduction_sequence() {
        h = reduce(&h, k)?;
    }
    v.check(
        "reducing the new vertices recovers the seed",
        h == cons.seed.to_network(),
        "",
    );
    Ok(v)
}

pub fn verify_theorem_a_prime() -> Result<Verification> {
    let mut v = Verification::new("theorem-a-prime");
    let d = theorem_a_prime_digraph()?;
    v.check(
        "derived digraph has 24 vertices",
        d.vertex_count() == 24,
        format!("{} arcs", d.arc_count()),
    );
    let ks = kernels(&d)?;
    v.check("no kernel", ks.is_empty(), format!("{} kernels", ks.len()));
    let cycles = d.cycles()?;
    let mut odd = 0usize;
    let mut missing = None;
    for c in cycles.iter().filter(|c| c.len() % 2 == 1) {
        odd += 1;
        if killing_triples(&d, c)?.is_empty() && missing.is_none() {
            missing = Some(c.clone());
        }
    }
    v.check(
        "every odd cycle has a killing triple",
        missing.is_none(),
        match &missing {
            Some(c) => format!("cycle {c:?} has none"),
            None => format!("{odd} odd cycles of {}", cycles.len()),
        },
    );
    Ok(v)
}

/// Vector derivative `f(x) + f(x + e^j)`.
fn derivative(f: &BooleanNetwork, j: usize, x: &State) -> u32 {
    f.image(x.word()) ^ f.image(x.word() ^ (1 << j))
}

pub fn verify_theorem_b(n: usize) -> Result<Verification> {
    let mut v = Verification::new(format!("theorem-b n={n}"));
    let atlas = TrajectoryAtlas::new(n)?;
    v.check(
        format!("the {} points a^i, b^i, c^i, d^i are distinct", 8 * n),
        atlas.all_distinct(),
        "",
    );
    let f = match theorem_b_network(n) {
        Ok(f) => f,
        Err(e) => {
            v.check("network is well defined", false, e.to_string());
            return Ok(v);
        }
    };
    v.check("network is well defined", true, "");
    let theta = antipodal_cycle(n)?;
    v.check(
        format!("antipodal cycle of length {} is an attractive cycle", 2 * n),
        attractive_cycles(&f).iter().any(|c| c.same_cycle(&theta)),
        "",
    );
    let neg = local_cycles(&f, SignFilter::Negative)?;
    v.check(
        format!("no local negative cycle over all {} states", 1u64 << n),
        neg.is_empty(),
        neg.first().map(|l| format!("{} at {}", l.cycle, l.witness.to_bitstring())).unwrap_or_default(),
    );
    v.check(
        "network commutes with the twist T",
        is_equivariant(&f, &Isometry::twist(n))?,
        "",
    );
    let patterns: Vec<PaddingPattern> = (0..=n - 3).map(|i| padding_pattern_check(&f, i)).collect::<Result<_>>()?;
    v.check(
        "asynchronous graph contains the K padding at every position",
        patterns.iter().all(|&p| p == PaddingPattern::K),
        "",
    );
    if n >= 7 {
        let e = |idx: &[usize]| idx.iter().fold(0u32, |m, &i| m | 1 << (i % n));
        let (a0, b0, c0, d0) = (atlas.a(0), atlas.b(0), atlas.c(0), atlas.d(0));
        let facts = [
            ("d_0 f(a^0) = e^1", derivative(&f, 0, &a0), e(&[1])),
            ("d_1 f(a^0) = e^{1,2}", derivative(&f, 1, &a0), e(&[1, 2])),
            ("d_2 f(a^0) = e^{1,2}", derivative(&f, 2, &a0), e(&[1, 2])),
            ("d_0 f(b^0) = 0", derivative(&f, 0, &b0), 0),
            ("d_2 f(b^0) = e^0", derivative(&f, 2, &b0), e(&[0])),
            ("d_0 f(c^0) = e^3", derivative(&f, 0, &c0), e(&[3])),
            ("d_3 f(c^0) = e^{1,3}", derivative(&f, 3, &c0), e(&[1, 3])),
            ("d_1 f(c^0) = e^0", derivative(&f, 1, &c0), e(&[0])),
            ("d_0 f(d^0) = 0", derivative(&f, 0, &d0), 0),
        ];
        for (claim, got, want) in facts {
            v.check(claim, got == want, State::from_word(got, n).to_bitstring());
        }
        v.merge(verify_neighbor_lists_report(n)?);
    }
    Ok(v)
}

pub fn verify_neighbor_lists_report(n: usize) -> Result<Verification> {
    let mut v = Verification::new(format!("neighbor-lists n={n}"));
    for c in verify_neighbor_lists(n)? {
        let show = |l: &[crate::constructions::PointLabel]| {
            l.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        };
        v.check(
            format!("named points within distance 1 of {}", c.point),
            c.passed(),
            format!("{{{}}}", show(&c.computed)),
        );
    }
    Ok(v)
}

/// Per-sample seeds derived from one base seed.
fn sample_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k)
}

pub fn verify_prop1(samples: u64, seed: u64) -> Result<Verification> {
    let mut v = Verification::new("prop1");
    let outcomes = (0..samples)
        .into_par_iter()
        .map(|k| {
            let n = 2 + (k % 4) as usize;
            let a = random_andnet(n, sample_seed(seed, k), 0.45)?;
            let g = a.to_signed_digraph();
            let f = a.to_network();
            let mut cycles = 0usize;
            let mut bad = Vec::new();
            for c in g.cycles()? {
                cycles += 1;
                if is_local_andnet_cycle(&g, &c)? != is_local_cycle(&f, &c)?.is_some() {
                    bad.push(format!("sample {k}: {c}"));
                }
            }
            Ok((cycles, bad))
        })
        .collect::<Result<Vec<_>>>()?;
    let cycles: usize = outcomes.iter().map(|o| o.0).sum();
    let bad: Vec<&String> = outcomes.iter().flat_map(|o| &o.1).collect();
    v.check(
        format!("and-net cycle is local iff it has no delocalizing triple ({samples} and-nets, n <= 5)"),
        bad.is_empty(),
        match bad.first() {
            Some(b) => format!("{} disagreements, first {b}", bad.len()),
            None => format!("{cycles} cycles, 0 disagreements"),
        },
    );
    Ok(v)
}

fn reducible_sample(seed: u64, k: u64) -> Result<(BooleanNetwork, usize)> {
    let n = 2 + (k % 5) as usize;
    let var = (k as usize / 5) % n;
    Ok((random_reducible_network(n, var, sample_seed(seed, k))?, var))
}

pub fn verify_prop2(samples: u64, seed: u64) -> Result<Verification> {
    let mut v = Verification::new("prop2");
    let failures = (0..samples)
        .into_par_iter()
        .map(|k| {
            let (f, var) = reducible_sample(seed, k)?;
            let r = reduce(&f, var)?;
            let mut lifted = fixed_points(&r)
                .iter()
                .map(|x| lift_state(&f, var, x))
                .collect::<Result<Vec<_>>>()?;
            lifted.sort();
            Ok(if lifted == fixed_points(&f) { 0u64 } else { 1 })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<u64>();
    v.check(
        format!("lifting is a bijection onto fixed points ({samples} reducible networks, n <= 6)"),
        failures == 0,
        format!("{failures} failures"),
    );
    let f = reduction_example();
    let r = reduce(&f, 2)?;
    v.check(
        "reducing f0 = !x1, f1 = x0, f2 = x0 ^ x1 at 2 creates an attractive cycle",
        attractive_cycles(&f).is_empty() && !attractive_cycles(&r).is_empty(),
        format!("{} before, {} after", attractive_cycles(&f).len(), attractive_cycles(&r).len()),
    );
    Ok(v)
}

pub fn verify_prop4(samples: u64, seed: u64) -> Result<Verification> {
    let mut v = Verification::new("prop4");
    let (checked, failures) = (0..samples)
        .into_par_iter()
        .map(|k| {
            let (f, var) = reducible_sample(seed, k)?;
            let rep = check_reduction_jacobian(&f, var)?;
            Ok((rep.checked as u64, u64::from(!rep.passed())))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold((0, 0), |(a, b), (c, d)| (a + c, b + d));
    v.check(
        format!("reduced Jacobian identity at every (x, i, j) ({samples} networks)"),
        failures == 0,
        format!("{checked} entries, {failures} failing networks"),
    );
    Ok(v)
}

pub fn verify_parity(samples: u64, seed: u64) -> Result<Verification> {
    let mut v = Verification::new("parity");
    let (cycles, mismatches, fixed_bad) = (0..samples)
        .into_par_iter()
        .map(|k| {
            let n = 1 + (k % 4) as usize;
            let f = random_network(n, sample_seed(seed, k))?;
            let (mut cycles, mut mismatches, mut fixed_bad) = (0u64, 0u64, 0u64);
            for x in f.states() {
                let cs = local_graph_cycles(&f, &x)?;
                let fixed = f.image(x.word()) == x.word();
                for c in &cs {
                    cycles += 1;
                    if cycle_sign_by_parity(&f, &x, c)? != c.sign() {
                        mismatches += 1;
                    }
                    if fixed && c.sign() == Sign::Negative {
                        fixed_bad += 1;
                    }
                }
            }
            Ok((cycles, mismatches, fixed_bad))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold((0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    v.check(
        format!("local cycle sign is (-1)^|cycle vertices on freedom| ({samples} networks, n <= 4)"),
        mismatches == 0,
        format!("{cycles} cycles, {mismatches} mismatches"),
    );
    v.check(
        "no negative local cycle at a fixed point",
        fixed_bad == 0,
        format!("{fixed_bad} violations"),
    );
    Ok(v)
}

pub fn verify_hoopings(samples: u64, seed: u64) -> Result<Verification> {
    let mut v = Verification::new("hoopings");
    let (graphs, law_bad, cor_bad) = (0..samples)
        .into_par_iter()
        .map(|k| {
            let n = 1 + (k % 5) as usize;
            let f = random_network(n, sample_seed(seed, k))?;
            let (mut graphs, mut law_bad, mut cor_bad) = (0u64, 0u64, 0u64);
            for x in f.states() {
                graphs += 1;
                let g = local_graph(&f, &x)?;
                let inv = jacobian_invertible(&f, &x)?;
                if inv != (cycle_cover_count(&g)? % 2 == 1) {
                    law_bad += 1;
                }
                if inv && freedom_mask(&f, x.word()).count_ones() % 2 == 1 {
                    let has_neg = local_graph_cycles(&f, &x)?.iter().any(|c| c.sign() == Sign::Negative);
                    if !has_neg {
                        cor_bad += 1;
                    }
                }
            }
            Ok((graphs, law_bad, cor_bad))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold((0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    v.check(
        format!("Jacobian invertible iff the hooping count is odd ({graphs} local graphs, n <= 5)"),
        law_bad == 0,
        format!("{law_bad} violations"),
    );
    v.check(
        "odd freedom and invertible Jacobian give a negative local cycle",
        cor_bad == 0,
        format!("{cor_bad} violations"),
    );
    Ok(v)
}

/// `f_i` restricted to the variables preceding `i` in a random order, so
/// every local graph is acyclic.
fn acyclic_sample(n: usize, seed: u64) -> Result<BooleanNetwork> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let g = random_network(n, seed)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut masks = vec![0u32; n];
    for (pos, &i) in order.iter().enumerate() {
        masks[i] = order[..pos].iter().fold(0, |m, &j| m | 1 << j);
    }
    BooleanNetwork::from_fn(n, |x| (0..n).fold(0, |y, i| y | (g.image(x & masks[i]) >> i & 1) << i))
}

/// `f_i = x_{pi(i)}` or its negation along a random cyclic permutation.
fn single_cycle_sample(n: usize, seed: u64) -> Result<(BooleanNetwork, Sign)> {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut src = vec![0usize; n];
    for k in 0..n {
        src[order[(k + 1) % n]] = order[k];
    }
    let neg: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let sign = Sign::from_parity(neg.iter().filter(|&&b| b).count() % 2 == 1);
    let f = BooleanNetwork::from_fn(n, |x| {
        (0..n).fold(0, |y, i| y | (((x >> src[i]) & 1) ^ neg[i] as u32) << i)
    })?;
    Ok((f, sign))
}

fn dichotomy_holds(f: &BooleanNetwork, sign: Sign) -> bool {
    let fps = fixed_points(f).len();
    let atts = attractors(f);
    match sign {
        Sign::Positive => fps == 2 && atts.iter().all(|a| a.is_fixed_point),
        Sign::Negative => fps == 0 && atts.len() == 1 && atts[0].is_attractive_cycle && attractive_cycles(f).len() == 1,
    }
}

pub fn verify_known_theorems(samples: u64, seed: u64) -> Result<Verification> {
    let mut v = Verification::new("known-theorems");
    let counts = (0..samples)
        .into_par_iter()
        .map(|k| {
            let n = 1 + (k % 4) as usize;
            let s = sample_seed(seed, k);
            let f = random_network(n, s)?;
            let atts = attractors(&f);
            let has_neg = global_graph(&f).cycles()?.iter().any(|c| c.sign() == Sign::Negative);
            let t1 = u64::from(atts.iter().any(|a| a.is_attractive_cycle) && !has_neg);
            let t2 = u64::from(atts.iter().any(|a| a.is_cyclic) && !has_neg);
            let h = acyclic_sample(n, s)?;
            let acyclic = (0..h.state_count() as u32).all(|x| {
                let edges = local_edges(&h, x);
                let mut succ = vec![Vec::new(); n];
                for (j, i, _) in edges {
                    succ[j].push(i);
                }
                let mut any = false;
                crate::graph::elementary_circuits(n, &succ, &mut |_| {
                    any = true;
                    false
                });
                !any
            });
            let sd = u64::from(!acyclic || fixed_points(&h).len() != 1);
            let (c, sign) = single_cycle_sample(n, s)?;
            let dich = u64::from(!dichotomy_holds(&c, sign));
            Ok([t1, t2, sd, dich])
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold([0u64; 4], |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]);
    v.check(
        format!("attractive cycle implies a negative cycle ({samples} networks, n <= 4)"),
        counts[0] == 0,
        format!("{} violations", counts[0]),
    );
    v.check(
        "cyclic attractor implies a negative cycle",
        counts[1] == 0,
        format!("{} violations", counts[1]),
    );
    v.check(
        format!("acyclic local graphs give a unique fixed point ({samples} networks)"),
        counts[2] == 0,
        format!("{} violations", counts[2]),
    );
    v.check(
        format!("single positive cycle: 2 fixed points; single negative cycle: one attractive cycle ({samples} networks)"),
        counts[3] == 0,
        format!("{} violations", counts[3]),
    );
    let mut explicit_bad = Vec::new();
    for n in 3..=6 {
        if !dichotomy_holds(&single_positive_cycle(n)?.to_network(), Sign::Positive) {
            explicit_bad.push(format!("positive n={n}"));
        }
        if !dichotomy_holds(&single_negative_cycle(n)?.to_network(), Sign::Negative) {
            explicit_bad.push(format!("negative n={n}"));
        }
    }
    v.check(
        "explicit single-cycle networks, n = 3..6",
        explicit_bad.is_empty(),
        explicit_bad.join(", "),
    );
    Ok(v)
}

pub fn verify_isometries() -> Result<Verification> {
    let mut v = Verification::new("isometries");
    for n in 1..=3 {
        let c = verify_isometry_characterization(n)?;
        v.check(
            format!("n = {n}: {} distance-preserving maps, all of permutation form", c.expected),
            c.passed(),
            format!("{} found", c.distance_preserving),
        );
    }
    let n = 7;
    let f = theorem_b_network(n)?;
    let t = Isometry::twist(n);
    let results = (0..f.state_count() as u32)
        .into_par_iter()
        .map(|x| equivariance_isomorphism_check(&f, &t, &f.state(x)).map(|c| c.passed()))
        .collect::<Result<Vec<bool>>>()?;
    let bad = results.iter().filter(|&&ok| !ok).count();
    v.check(
        format!("twist relabels the local graph at x onto the one at T(x), keeping cycle signs (all {} states, n = 7)", results.len()),
        bad == 0,
        format!("{bad} failures"),
    );
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        assert!(verify_fig1().unwrap().passed());
        assert!(verify_theorem_a_seed().unwrap().passed());
        assert!(verify_theorem_b(7).unwrap().passed());
        assert!(verify_prop1(40, 1).unwrap().passed());
        assert!(verify_prop2(40, 1).unwrap().passed());
        assert!(verify_prop4(40, 1).unwrap().passed());
        assert!(verify_parity(40, 1).unwrap().passed());
        assert!(verify_hoopings(40, 1).unwrap().passed());
        assert!(verify_known_theorems(200, 1).unwrap().passed());
    }

    #[test]
    fn render_marks_failures() {
        let mut v = Verification::new("x");
        v.check("a", true, "");
        v.check("b", false, "why");
        assert_eq!(v.render(), "PASS [x] a\nFAIL [x] b (why)\n");
        assert!(!v.passed());
    }

    #[test]
    fn acyclic_and_single_cycle_samples() {
        for s in 0..50 {
            let h = acyclic_sample(4, s).unwrap();
            assert!(global_graph(&h).cycles().unwrap().is_empty());
            let (c, sign) = single_cycle_sample(4, s).unwrap();
            let g = global_graph(&c);
            assert_eq!(g.edge_count(), 4);
            assert_eq!(g.cycles().unwrap()[0].sign(), sign);
        }
    }
}
