//! Analysis report: what `bnscope analyze` prints, as text or JSON.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::dynamics::{async_edges, attractors, fixed_points, is_nonexpansive, Attractor};
use crate::error::Result;
use crate::graph::{Sign, SignedDigraph};
use crate::interaction::{global_graph, local_cycles, LocalCycle, SignFilter};
use crate::network::BooleanNetwork;
use crate::state::StateRecord;

pub const SCHEMA: &str = "bnscope-analysis/1";

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalysisOptions {
    pub fixed_points: bool,
    pub attractors: bool,
    pub global_graph: bool,
    pub local_cycles: Option<SignFilter>,
    pub nonexpansive: bool,
    pub timings: bool,
}

impl AnalysisOptions {
    /// Fixed points, attractors and the global graph.
    pub fn standard() -> Self {
        AnalysisOptions {
            fixed_points: true,
            attractors: true,
            global_graph: true,
            ..Default::default()
        }
    }

    pub fn everything() -> Self {
        AnalysisOptions {
            local_cycles: Some(SignFilter::All),
            nonexpansive: true,
            ..Self::standard()
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AttractorRecord {
    pub size: usize,
    pub states: Vec<StateRecord>,
    pub is_fixed_point: bool,
    pub is_cyclic: bool,
    pub is_attractive_cycle: bool,
    pub is_antipodal: bool,
}

impl From<&Attractor> for AttractorRecord {
    fn from(a: &Attractor) -> Self {
        AttractorRecord {
            size: a.len(),
            states: a.records(),
            is_fixed_point: a.is_fixed_point,
            is_cyclic: a.is_cyclic,
            is_attractive_cycle: a.is_attractive_cycle,
            is_antipodal: a.is_antipodal,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EdgeRecord {
    pub from: usize,
    pub to: usize,
    pub sign: char,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LocalCycleRecord {
    pub vertices: Vec<usize>,
    pub edge_signs: String,
    pub sign: char,
    pub witness: StateRecord,
}

impl From<&LocalCycle> for LocalCycleRecord {
    fn from(l: &LocalCycle) -> Self {
        LocalCycleRecord {
            vertices: l.cycle.vertices().to_vec(),
            edge_signs: l.cycle.edge_signs().iter().map(|s| s.symbol()).collect(),
            sign: l.cycle.sign().symbol(),
            witness: StateRecord::from(&l.witness),
        }
    }
}

/// Cycles of the global graph split by sign and locality.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct CycleCensus {
    pub positive_local: usize,
    pub positive_nonlocal: usize,
    pub negative_local: usize,
    pub negative_nonlocal: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub n: usize,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_points: Option<Vec<StateRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attractors: Option<Vec<AttractorRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global_graph: Option<Vec<EdgeRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local_cycles: Option<Vec<LocalCycleRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_census: Option<CycleCensus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonexpansive: Option<bool>,
    /// Milliseconds per phase; only with `timings`, since they vary run to run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

fn timed<T>(timings: &mut BTreeMap<String, f64>, phase: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.insert(phase.to_string(), start.elapsed().as_secs_f64() * 1e3);
    out
}

fn census(g: &SignedDigraph, local: &[LocalCycle]) -> Result<CycleCensus> {
    let local: BTreeSet<_> = local.iter().map(|l| &l.cycle).collect();
    let mut c = CycleCensus::default();
    for cycle in g.cycles()? {
        let is_local = local.contains(&cycle);
        match (cycle.sign(), is_local) {
            (Sign::Positive, true) => c.positive_local += 1,
            (Sign::Positive, false) => c.positive_nonlocal += 1,
            (Sign::Negative, true) => c.negative_local += 1,
            (Sign::Negative, false) => c.negative_nonlocal += 1,
        }
    }
    Ok(c)
}

pub fn analyze(f: &BooleanNetwork, source: &str, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let mut t = BTreeMap::new();
    let fixed = opts
        .fixed_points
        .then(|| timed(&mut t, "fixed_points", || fixed_points(f).iter().map(StateRecord::from).collect()));
    let atts = opts
        .attractors
        .then(|| timed(&mut t, "attractors", || attractors(f).iter().map(AttractorRecord::from).collect()));
    let needs_global = opts.global_graph || opts.local_cycles.is_some();
    let g = needs_global.then(|| timed(&mut t, "global_graph", || global_graph(f)));
    let global = if opts.global_graph {
        g.as_ref().map(|g| {
            g.edges()
                .map(|e| EdgeRecord {
                    from: e.from,
                    to: e.to,
                    sign: e.sign.symbol(),
                })
                .collect()
        })
    } else {
        None
    };
    let (locals, cycle_census) = match opts.local_cycles {
        Some(filter) => {
            // the census needs every local cycle whatever the filter
            let all = timed(&mut t, "local_cycles", || local_cycles(f, SignFilter::All))?;
            let g = g.as_ref().expect("global graph computed");
            let c = timed(&mut t, "cycle_census", || census(g, &all))?;
            let shown = all
                .iter()
                .filter(|l| filter.accepts(l.cycle.sign()))
                .map(LocalCycleRecord::from)
                .collect();
            (Some(shown), Some(c))
        }
        None => (None, None),
    };
    let nonexpansive = opts
        .nonexpansive
        .then(|| timed(&mut t, "nonexpansive", || is_nonexpansive(f)));
    Ok(AnalysisReport {
        schema: SCHEMA,
        n: f.dim(),
        source: source.to_string(),
        fixed_points: fixed,
        attractors: atts,
        global_graph: global,
        local_cycles: locals,
        cycle_census,
        nonexpansive,
        timings_ms: opts.timings.then_some(t),
    })
}

impl AnalysisReport {
    /// Fixed-point count equals the number of singleton attractors, and
    /// exactly the singleton attractors are flagged as fixed points.
    pub fn is_consistent(&self) -> bool {
        let fp = match (&self.fixed_points, &self.attractors) {
            (Some(fp), Some(atts)) => fp.len() == atts.iter().filter(|a| a.is_fixed_point).count(),
            _ => true,
        };
        let attractors_ok = self
            .attractors
            .as_ref()
            .is_none_or(|atts| atts.iter().all(|a| a.size == a.states.len() && a.is_fixed_point == (a.size == 1)));
        fp && attractors_ok
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "network: {} (n = {})", self.source, self.n);
        if let Some(fp) = &self.fixed_points {
            let list: Vec<&str> = fp.iter().map(|s| s.bits.as_str()).collect();
            let _ = writeln!(out, "fixed points: {} {}", fp.len(), list.join(" "));
        }
        if let Some(atts) = &self.attractors {
            let _ = writeln!(out, "attractors: {}", atts.len());
            for a in atts {
                let kind = if a.is_fixed_point {
                    "fixed point"
                } else if a.is_antipodal {
                    "antipodal attractive cycle"
                } else if a.is_attractive_cycle {
                    "attractive cycle"
                } else {
                    "cyclic"
                };
                let shown: Vec<&str> = a.states.iter().take(16).map(|s| s.bits.as_str()).collect();
                let more = if a.size > 16 { " ..." } else { "" };
                let _ = writeln!(out, "  {kind}, {} states: {}{more}", a.size, shown.join(" "));
            }
        }
        if let Some(edges) = &self.global_graph {
            let _ = writeln!(out, "global interaction graph: {} edges", edges.len());
            for e in edges {
                let _ = writeln!(out, "  {} -{}-> {}", e.from, e.sign, e.to);
            }
        }
        if let Some(c) = &self.cycle_census {
            let _ = writeln!(
                out,
                "cycles: {} positive ({} local), {} negative ({} local)",
                c.positive_local + c.positive_nonlocal,
                c.positive_local,
                c.negative_local + c.negative_nonlocal,
                c.negative_local
            );
        }
        if let Some(ls) = &self.local_cycles {
            let _ = writeln!(out, "local cycles shown: {}", ls.len());
            for l in ls {
                let _ = writeln!(
                    out,
                    "  {:?} [{}] signs {} at {}",
                    l.vertices, l.sign, l.edge_signs, l.witness.bits
                );
            }
        }
        if let Some(ne) = self.nonexpansive {
            let _ = writeln!(out, "non-expansive: {ne}");
        }
        if let Some(t) = &self.timings_ms {
            for (phase, ms) in t {
                let _ = writeln!(out, "time {phase}: {ms:.3} ms");
            }
        }
        out
    }
}

/// DOT rendering of the asynchronous graph, states labelled by bitstrings.
pub fn async_dot(f: &BooleanNetwork) -> String {
    let mut out = String::from("digraph async {\n");
    for x in f.states() {
        let _ = writeln!(out, "  \"{x}\";");
    }
    for (x, y) in async_edges(f) {
        let _ = writeln!(out, "  \"{x}\" -> \"{y}\";");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fig1_network, theorem_a_seed};
    use crate::network::random_network;

    #[test]
    fn fig1_report() {
        let r = analyze(&fig1_network(), "fig1", &AnalysisOptions::everything()).unwrap();
        assert_eq!(r.fixed_points.as_ref().unwrap().len(), 0);
        let atts = r.attractors.as_ref().unwrap();
        assert_eq!(atts.len(), 1);
        assert!(atts[0].is_cyclic && !atts[0].is_attractive_cycle);
        assert_eq!(atts[0].size, 7);
        assert!(r.is_consistent());
        let c = r.cycle_census.unwrap();
        // the shown list and the census count the same local cycles
        assert_eq!(r.local_cycles.as_ref().unwrap().len(), c.positive_local + c.negative_local);
        assert!(r.timings_ms.is_none());
        let json: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(json["schema"], SCHEMA);
        assert_eq!(json["attractors"][0]["states"][0]["bits"], "000");
    }

    #[test]
    fn json_is_deterministic() {
        let f = random_network(5, 3).unwrap();
        let a = analyze(&f, "r", &AnalysisOptions::everything()).unwrap().to_json().unwrap();
        let b = analyze(&f, "r", &AnalysisOptions::everything()).unwrap().to_json().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reports_are_consistent_on_random_networks() {
        for seed in 0..100 {
            let f = random_network(1 + (seed % 5) as usize, seed).unwrap();
            let r = analyze(&f, "r", &AnalysisOptions::everything()).unwrap();
            assert!(r.is_consistent(), "seed {seed}");
        }
    }

    #[test]
    fn filters_and_text() {
        let f = theorem_a_seed().to_network();
        let opts = AnalysisOptions {
            local_cycles: Some(SignFilter::Negative),
            ..Default::default()
        };
        let r = analyze(&f, "seed", &opts).unwrap();
        assert!(r.fixed_points.is_none() && r.global_graph.is_none());
        assert!(r.local_cycles.as_ref().unwrap().iter().all(|l| l.sign == '-'));
        let text = r.render_text();
        assert!(text.contains("local cycles shown"));
        assert!(async_dot(&fig1_network()).contains("\"100\" -> \"000\""));
    }
}
