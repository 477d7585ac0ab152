//! Seeded random-instance experiment harness: sample points, build and
//! bridge the arrangement, run all three route algorithms, and aggregate
//! metrics with DPE as the ratio baseline.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::apsp::compute_apsp;
use crate::arrangement::{bridge_components, build_arrangement, Arrangement};
use crate::error::ScenicError;
use crate::geometry::{PointClass, WeightedPoint};
use crate::metrics::{route_metrics, RouteMetrics};
use crate::route::{acch_route, acu_route, dpe_route, RouteAlgorithm};

/// Positions closer than this are resampled; the scenic locus degenerates
/// as a pair's separation vanishes.
const MIN_PAIR_SEPARATION: f64 = 1e-6;

#[derive(Clone, Copy, Debug)]
pub struct ExperimentConfig {
    pub trials: usize,
    pub n_red: usize,
    pub n_blue: usize,
    pub coord_range: (f64, f64),
    pub weight_range: (f64, f64),
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            trials: 100,
            n_red: 4,
            n_blue: 4,
            coord_range: (-30.0, 30.0),
            weight_range: (1.0, 50.0),
            seed: 0,
        }
    }
}

/// Per-trial outcome: post-bridging graph statistics plus metrics per
/// algorithm in fixed order (DPE, ACU, ACCH).
#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub nodes: usize,
    pub edges: usize,
    pub total_edge_length: f64,
    pub metrics: [(RouteAlgorithm, RouteMetrics); 3],
}

#[derive(Clone, Copy, Debug)]
pub struct AlgoSummary {
    pub algorithm: RouteAlgorithm,
    pub mean_route_length: f64,
    pub mean_walk_length: f64,
    pub mean_edges: f64,
    pub mean_repeated: f64,
    pub mean_repeated_pct: f64,
    pub complete_trials: usize,
    pub scenic_only_trials: usize,
}

#[derive(Clone, Debug)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub resampled: usize,
    pub mean_nodes: f64,
    pub mean_edges: f64,
    pub mean_total_length: f64,
    pub algos: [AlgoSummary; 3],
}

impl ExperimentSummary {
    pub fn algo(&self, a: RouteAlgorithm) -> &AlgoSummary {
        self.algos
            .iter()
            .find(|s| s.algorithm == a)
            .expect("all three algorithms are summarized")
    }

    /// Ratio (x100) of an algorithm's mean metric to the DPE mean.
    pub fn dpe_ratio(&self, a: RouteAlgorithm, f: impl Fn(&AlgoSummary) -> f64) -> f64 {
        100.0 * f(self.algo(a)) / f(self.algo(RouteAlgorithm::Dpe))
    }
}

/// Sample one trial's points. The RNG stream is derived from
/// (seed, trial index), so trials are order-independent; degenerate draws
/// (a too-close red-blue pair) are rejected and redrawn.
pub fn sample_trial_points(cfg: &ExperimentConfig, trial: usize) -> (Vec<WeightedPoint>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial as u64);
    let mut resamples = 0;
    loop {
        let mut pts = Vec::with_capacity(cfg.n_red + cfg.n_blue);
        for i in 0..(cfg.n_red + cfg.n_blue) {
            let class = if i < cfg.n_red {
                PointClass::Red
            } else {
                PointClass::Blue
            };
            pts.push(WeightedPoint::new(
                i as u32,
                class,
                rng.gen_range(cfg.coord_range.0..cfg.coord_range.1),
                rng.gen_range(cfg.coord_range.0..cfg.coord_range.1),
                rng.gen_range(cfg.weight_range.0..cfg.weight_range.1),
            ));
        }
        let degenerate = pts
            .iter()
            .filter(|p| p.class == PointClass::Red)
            .any(|r| {
                pts.iter()
                    .filter(|p| p.class == PointClass::Blue)
                    .any(|b| r.pos.dist(b.pos) < MIN_PAIR_SEPARATION)
            });
        if !degenerate {
            return (pts, resamples);
        }
        resamples += 1;
    }
}

/// Run one full trial: arrangement, bridging, APSP, all three algorithms.
pub fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<(TrialOutcome, usize), ScenicError> {
    let (pts, resamples) = sample_trial_points(cfg, trial);
    let arr = bridge_components(build_arrangement(&pts)?);
    let apsp = compute_apsp(&arr)?;
    let outcome = TrialOutcome {
        nodes: arr.nodes.len(),
        edges: arr.edges.len(),
        total_edge_length: arr.total_edge_length(),
        metrics: [
            (
                RouteAlgorithm::Dpe,
                route_metrics(&dpe_route(&arr, &apsp), &arr)?,
            ),
            (
                RouteAlgorithm::Acu,
                route_metrics(&acu_route(&arr, &apsp), &arr)?,
            ),
            (
                RouteAlgorithm::Acch,
                route_metrics(&acch_route(&arr, &apsp), &arr)?,
            ),
        ],
    };
    Ok((outcome, resamples))
}

/// Build a trial's bridged arrangement (shared by tests and rendering).
pub fn trial_arrangement(cfg: &ExperimentConfig, trial: usize) -> Result<Arrangement, ScenicError> {
    let (pts, _) = sample_trial_points(cfg, trial);
    Ok(bridge_components(build_arrangement(&pts)?))
}

pub fn run_random_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary, ScenicError> {
    if cfg.trials < 1 {
        return Err(ScenicError::Parse("trials must be at least 1".into()));
    }
    if cfg.n_red < 1 || cfg.n_blue < 1 {
        return Err(ScenicError::Parse("need at least one point per class".into()));
    }
    if cfg.coord_range.0 >= cfg.coord_range.1 {
        return Err(ScenicError::Parse("coordinate range must be increasing".into()));
    }
    if cfg.weight_range.0 >= cfg.weight_range.1 || cfg.weight_range.0 <= 0.0 {
        return Err(ScenicError::Parse(
            "weight range must be increasing and positive".into(),
        ));
    }
    let mut resampled = 0;
    let mut nodes = 0.0;
    let mut edges = 0.0;
    let mut total_len = 0.0;
    let mut acc: [(RouteAlgorithm, [f64; 5], usize, usize); 3] = [
        (RouteAlgorithm::Dpe, [0.0; 5], 0, 0),
        (RouteAlgorithm::Acu, [0.0; 5], 0, 0),
        (RouteAlgorithm::Acch, [0.0; 5], 0, 0),
    ];

    for trial in 0..cfg.trials {
        let (outcome, resamples) = run_trial(cfg, trial)?;
        resampled += resamples;
        nodes += outcome.nodes as f64;
        edges += outcome.edges as f64;
        total_len += outcome.total_edge_length;
        for (algo, m) in outcome.metrics {
            let slot = acc
                .iter_mut()
                .find(|(a, ..)| *a == algo)
                .expect("fixed algorithm set");
            slot.1[0] += m.route_length;
            slot.1[1] += m.walk_length;
            slot.1[2] += m.num_edges as f64;
            slot.1[3] += m.num_repeated as f64;
            slot.1[4] += m.repeated_pct;
            slot.2 += m.complete as usize;
            slot.3 += m.scenic_only as usize;
        }
    }

    let t = cfg.trials as f64;
    let summarize = |(algorithm, sums, complete, scenic): (RouteAlgorithm, [f64; 5], usize, usize)| {
        AlgoSummary {
            algorithm,
            mean_route_length: sums[0] / t,
            mean_walk_length: sums[1] / t,
            mean_edges: sums[2] / t,
            mean_repeated: sums[3] / t,
            mean_repeated_pct: sums[4] / t,
            complete_trials: complete,
            scenic_only_trials: scenic,
        }
    };
    Ok(ExperimentSummary {
        config: *cfg,
        resampled,
        mean_nodes: nodes / t,
        mean_edges: edges / t,
        mean_total_length: total_len / t,
        algos: [
            summarize(acc[0]),
            summarize(acc[1]),
            summarize(acc[2]),
        ],
    })
}

/// Render the summary as an aligned table followed by a CSV block. The text
/// is a pure function of the summary, so identical seeds reproduce identical
/// bytes.
pub fn format_summary(s: &ExperimentSummary) -> String {
    let mut out = String::new();
    let c = &s.config;
    out.push_str("scenic route experiment\n");
    out.push_str(&format!(
        "trials {}  red {}  blue {}  coords [{}, {}]  weights [{}, {}]  seed {}  resampled {}\n",
        c.trials,
        c.n_red,
        c.n_blue,
        c.coord_range.0,
        c.coord_range.1,
        c.weight_range.0,
        c.weight_range.1,
        c.seed,
        s.resampled
    ));
    out.push_str(&format!(
        "graph means: nodes {:.2}  edges {:.2}  total length {:.2}\n",
        s.mean_nodes, s.mean_edges, s.mean_total_length
    ));
    out.push('\n');
    out.push_str(&format!(
        "{:<10} {:>10} {:>8} {:>8} {:>8} {:>10} {:>9} {:>7}\n",
        "algorithm", "RL", "NoE", "NoRE", "RE%", "walk RL", "complete", "scenic"
    ));
    for a in &s.algos {
        out.push_str(&format!(
            "{:<10} {:>10.2} {:>8.2} {:>8.2} {:>8.2} {:>10.2} {:>9} {:>7}\n",
            a.algorithm.as_str().to_uppercase(),
            a.mean_route_length,
            a.mean_edges,
            a.mean_repeated,
            a.mean_repeated_pct,
            a.mean_walk_length,
            a.complete_trials,
            a.scenic_only_trials
        ));
    }
    out.push('\n');
    out.push_str("ratios vs DPE (x100)\n");
    out.push_str(&format!(
        "{:<10} {:>10} {:>8} {:>8} {:>8}\n",
        "algorithm", "R.RL", "R.NoE", "R.NoRE", "R.RE%"
    ));
    for a in &s.algos {
        out.push_str(&format!(
            "{:<10} {:>10.2} {:>8.2} {:>8.2} {:>8.2}\n",
            a.algorithm.as_str().to_uppercase(),
            s.dpe_ratio(a.algorithm, |x| x.mean_route_length),
            s.dpe_ratio(a.algorithm, |x| x.mean_edges),
            s.dpe_ratio(a.algorithm, |x| x.mean_repeated),
            s.dpe_ratio(a.algorithm, |x| x.mean_repeated_pct),
        ));
    }
    out.push('\n');
    out.push_str("csv\n");
    out.push_str("algorithm,rl,noe,nore,re_pct,walk_rl,complete_trials,scenic_only_trials\n");
    for a in &s.algos {
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6},{:.6},{:.6},{},{}\n",
            a.algorithm.as_str(),
            a.mean_route_length,
            a.mean_edges,
            a.mean_repeated,
            a.mean_repeated_pct,
            a.mean_walk_length,
            a.complete_trials,
            a.scenic_only_trials
        ));
    }
    out
}
