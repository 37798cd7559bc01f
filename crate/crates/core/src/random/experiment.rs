use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pipelines::{
    bipartite_pipeline, high_density_pipeline, intermediate_pipeline, Case, Certificate, Failure, Verification,
};
use super::{bipartite_sides, sample_bipartite, sample_gnp, RngConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// G(n, p).
    Gnp = 0,
    /// G(n, n, p).
    Bip = 1,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Gnp => "gnp",
            Model::Bip => "bip",
        }
    }

    /// Side sizes for grid value `n`.
    pub fn sides(self, n: usize) -> (usize, usize) {
        match self {
            Model::Gnp => (n, 0),
            Model::Bip => (n, n),
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gnp" => Ok(Model::Gnp),
            "bip" => Ok(Model::Bip),
            _ => Err(Error::invalid(format!("unknown model {s:?}, expected gnp or bip"))),
        }
    }
}

/// Which route produced the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Intermediate,
    Case1,
    Case2,
    Bipartite,
}

#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub graph: Graph,
    pub result: std::result::Result<(Method, Certificate, Verification), Failure>,
    /// Extra splits tried by the intermediate pipeline.
    pub retries: usize,
}

/// Samples one graph and runs the pipelines on it: the side system first
/// for the bipartite model, then the antimatching construction, then the
/// high-density one. The reported failure is the last pipeline's.
pub fn run_trial(cfg: RngConfig, model: Model, n1: usize, n2: usize, p: f64, trial: u64) -> TrialOutcome {
    let mut rng = cfg.trial_rng(model, n1, n2, p, trial);
    let graph = match model {
        Model::Gnp => sample_gnp(n1, p, &mut rng),
        Model::Bip => sample_bipartite(n1, n2, p, &mut rng),
    };
    let (result, retries) = pipelines(&graph, model, n1, n2, &mut rng);
    TrialOutcome { graph, result, retries }
}

type Routed = std::result::Result<(Method, Certificate, Verification), Failure>;

fn pipelines<R: Rng + ?Sized>(g: &Graph, model: Model, n1: usize, n2: usize, rng: &mut R) -> (Routed, usize) {
    if model == Model::Bip {
        let (a, b) = bipartite_sides(n1, n2);
        if let Ok(ok) = bipartite_pipeline(g, &a, &b) {
            let [a1, a2, b1, b2] = ok.sides;
            return (
                Ok((Method::Bipartite, Certificate::Sides { a1, a2, b1, b2 }, Verification::Verified)),
                0,
            );
        }
    }
    let mut retries = 0;
    match intermediate_pipeline(g, rng) {
        Ok(ok) => {
            return (
                Ok((Method::Intermediate, Certificate::Closure(ok.certificate), Verification::Verified)),
                ok.attempts - 1,
            )
        }
        Err(_) => retries += super::pipelines::MAX_SPLITS - 1,
    }
    let routed = high_density_pipeline(g, rng).map(|ok| {
        let method = match ok.case {
            Case::One => Method::Case1,
            Case::Two => Method::Case2,
        };
        let cert = Certificate::Transversals {
            case: ok.case,
            matching: ok.matching,
            unmatched: ok.unmatched,
        };
        (method, cert, ok.verification)
    });
    (routed, retries)
}

/// A grid of Monte Carlo runs.
#[derive(Clone, Debug)]
pub struct MonteCarlo {
    pub model: Model,
    pub ns: Vec<usize>,
    pub ps: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub model: Model,
    pub n1: usize,
    pub n2: usize,
    pub p: f64,
    pub trials: usize,
    pub successes: usize,
    pub case1: usize,
    pub case2: usize,
    pub intermediate: usize,
    /// Successes through the side system (bipartite model only).
    pub bipartite: usize,
    /// Successes whose verification was only probabilistic.
    pub probabilistic: usize,
    pub fail_reasons: BTreeMap<String, usize>,
    pub seed: u64,
    /// Extra intermediate splits over all trials; not written to CSV.
    pub retries: usize,
    /// Not written to CSV.
    #[serde(skip)]
    pub wall: Duration,
}

/// Runs every `(n, p)` of the grid. Trials run in parallel; each one draws
/// from its own stream, so rows do not depend on the thread count.
///
/// ```
/// use legalsys::random::{monte_carlo, Model, MonteCarlo};
/// let rows = monte_carlo(&MonteCarlo { model: Model::Gnp, ns: vec![8], ps: vec![1.0], trials: 3, seed: 1 }).unwrap();
/// assert_eq!(rows[0].successes, 0);
/// assert_eq!(rows[0].fail_reasons["complete graph"], 3);
/// ```
pub fn monte_carlo(mc: &MonteCarlo) -> Result<Vec<ExperimentRow>> {
    if mc.trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    if let Some(p) = mc.ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::invalid(format!("p = {p} is outside [0, 1]")));
    }
    let cfg = RngConfig { seed: mc.seed };
    let mut rows = Vec::new();
    for &n in &mc.ns {
        let (n1, n2) = mc.model.sides(n);
        for &p in &mc.ps {
            let start = Instant::now();
            let outcomes: Vec<(Routed, usize)> = (0..mc.trials as u64)
                .into_par_iter()
                .map(|t| {
                    let o = run_trial(cfg, mc.model, n1, n2, p, t);
                    (o.result, o.retries)
                })
                .collect();
            let mut row = ExperimentRow {
                model: mc.model,
                n1,
                n2,
                p,
                trials: mc.trials,
                successes: 0,
                case1: 0,
                case2: 0,
                intermediate: 0,
                bipartite: 0,
                probabilistic: 0,
                fail_reasons: BTreeMap::new(),
                seed: mc.seed,
                retries: 0,
                wall: Duration::ZERO,
            };
            for (result, retries) in outcomes {
                row.retries += retries;
                match result {
                    Ok((method, _, verification)) => {
                        row.successes += 1;
                        *match method {
                            Method::Intermediate => &mut row.intermediate,
                            Method::Case1 => &mut row.case1,
                            Method::Case2 => &mut row.case2,
                            Method::Bipartite => &mut row.bipartite,
                        } += 1;
                        if verification == Verification::Probabilistic {
                            row.probabilistic += 1;
                        }
                    }
                    Err(f) => *row.fail_reasons.entry(f.reason()).or_default() += 1,
                }
            }
            row.wall = start.elapsed();
            rows.push(row);
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: [&str; 11] = [
    "model",
    "n1",
    "n2",
    "p",
    "trials",
    "successes",
    "case1",
    "case2",
    "intermediate",
    "fail_reasons",
    "seed",
];

/// Writes rows as CSV with the fixed header; `fail_reasons` is a JSON object.
pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let reasons = serde_json::to_string(&r.fail_reasons).expect("string keys");
        w.write_record([
            r.model.name().to_string(),
            r.n1.to_string(),
            r.n2.to_string(),
            r.p.to_string(),
            r.trials.to_string(),
            r.successes.to_string(),
            r.case1.to_string(),
            r.case2.to_string(),
            r.intermediate.to_string(),
            reasons,
            r.seed.to_string(),
        ])?;
    }
    w.flush()
}

/// Edge-probability window of the random-graph theorem at size `n`, without
/// the slowly growing ω(n) term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    /// (2 log n)^{1/2} / n^{1/2}.
    pub lower: f64,
    /// 1 − n^{−1.99}.
    pub upper: f64,
}

impl Thresholds {
    pub fn for_n(n: usize) -> Self {
        let n = n.max(2) as f64;
        Thresholds {
            lower: (2.0 * n.ln()).sqrt() / n.sqrt(),
            upper: 1.0 - n.powf(-1.99),
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        self.lower <= p && p <= self.upper
    }

    /// `below`, `inside` or `above`.
    pub fn annotate(&self, p: f64) -> &'static str {
        if p < self.lower {
            "below"
        } else if p > self.upper {
            "above"
        } else {
            "inside"
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graphs_always_fail() {
        let mc = MonteCarlo {
            model: Model::Gnp,
            ns: vec![6, 9],
            ps: vec![1.0],
            trials: 4,
            seed: 2,
        };
        for r in monte_carlo(&mc).unwrap() {
            assert_eq!(r.successes, 0);
            assert_eq!(r.fail_reasons.get("complete graph"), Some(&4));
        }
    }

    #[test]
    fn zero_trials_are_rejected() {
        let mc = MonteCarlo {
            model: Model::Gnp,
            ns: vec![6],
            ps: vec![0.5],
            trials: 0,
            seed: 2,
        };
        assert!(monte_carlo(&mc).is_err());
    }

    #[test]
    fn csv_has_the_fixed_header() {
        let mc = MonteCarlo {
            model: Model::Bip,
            ns: vec![5],
            ps: vec![0.0, 1.0],
            trials: 3,
            seed: 9,
        };
        let rows = monte_carlo(&mc).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "model,n1,n2,p,trials,successes,case1,case2,intermediate,fail_reasons,seed"
        );
        assert!(lines.next().unwrap().starts_with("bip,5,5,0,3,0,"));
        assert!(lines.next().unwrap().starts_with("bip,5,5,1,3,3,"));
    }

    #[test]
    fn thresholds_bracket_half() {
        let t = Thresholds::for_n(50);
        assert!(t.contains(0.5));
        assert_eq!(t.annotate(0.1), "below");
        assert_eq!(t.annotate(1.0), "above");
    }
}
