//! Simulation models, truncated MSE, and the Monte Carlo benchmark.
//!
//! Every replication draws from its own ChaCha stream whose seed is a
//! SplitMix64 digest of `(seed, model id, n, replication)`. Replications run
//! on a rayon pool and are reassembled in index order, so reports do not
//! depend on the number of threads.

use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cdf::{CdfEstimate, CdfFunction, Method};
use crate::error::{Error, Result};
use crate::pipeline::{estimate_cdf, EstimatorConfig};
use crate::sample::ObservationSample;
use crate::special::{beta_sampler, erf, exponential_sampler, regularized_incomplete_beta};

/// Rate giving `P(X ≤ 1) ≈ 0.86` for model 4 (the 0.5 read as a mean).
pub const MODEL4_RATE: f64 = 2.0;
/// Rate obtained by reading the 0.5 of model 4 literally as the rate.
pub const MODEL4_RATE_LITERAL: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SimModel {
    /// 1: `U ~ U(0,1)`, `F(u) = u`.
    Uniform,
    /// 2: `U ~ U(0,1)`, `F` the χ²₁ distribution function.
    ChiSquare,
    /// 3: `U ~ U(0,1)`, `F(u) = u²`.
    Quadratic,
    /// 4: `U ~ Exp(1)`, `F(u) = 1 − e^{−rate·u}`.
    Exponential { rate: f64 },
    /// 5: `U ~ Beta(4, 6)`, `F` the Beta(4, 8) distribution function.
    Beta,
}

impl SimModel {
    pub const ALL: [SimModel; 5] = [
        SimModel::Uniform,
        SimModel::ChiSquare,
        SimModel::Quadratic,
        SimModel::Exponential { rate: MODEL4_RATE },
        SimModel::Beta,
    ];

    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            1 => Ok(SimModel::Uniform),
            2 => Ok(SimModel::ChiSquare),
            3 => Ok(SimModel::Quadratic),
            4 => Ok(SimModel::Exponential { rate: MODEL4_RATE }),
            5 => Ok(SimModel::Beta),
            other => Err(Error::InvalidConfig(format!("unknown model id {other}"))),
        }
    }

    pub fn id(&self) -> u8 {
        match self {
            SimModel::Uniform => 1,
            SimModel::ChiSquare => 2,
            SimModel::Quadratic => 3,
            SimModel::Exponential { .. } => 4,
            SimModel::Beta => 5,
        }
    }

    /// Lower end `a` of the MSE window.
    pub fn lower(&self) -> f64 {
        0.0
    }

    /// Upper end `b` of the MSE window.
    pub fn upper(&self) -> f64 {
        match self {
            SimModel::Beta => 0.5,
            _ => 1.0,
        }
    }

    pub fn true_cdf(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        match *self {
            SimModel::Uniform => u.min(1.0),
            SimModel::ChiSquare => erf((u / 2.0).sqrt()),
            SimModel::Quadratic => u.min(1.0).powi(2),
            SimModel::Exponential { rate } => -(-rate * u).exp_m1(),
            SimModel::Beta => {
                regularized_incomplete_beta(4.0, 8.0, u.min(1.0)).expect("u clamped to [0, 1]")
            }
        }
    }

    fn draw_time<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            SimModel::Uniform | SimModel::ChiSquare | SimModel::Quadratic => rng.random::<f64>(),
            SimModel::Exponential { .. } => exponential_sampler(1.0, rng).expect("unit rate"),
            SimModel::Beta => beta_sampler(4.0, 6.0, rng).expect("valid shapes"),
        }
    }

    /// `n` observations from a generator seeded with `seed`.
    pub fn generate(&self, n: usize, seed: u64) -> Result<ObservationSample> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.generate_with(n, &mut rng)
    }

    pub fn generate_with<R: Rng>(&self, n: usize, rng: &mut R) -> Result<ObservationSample> {
        if n == 0 {
            return Err(Error::InvalidConfig("sample size must be positive".into()));
        }
        let mut u = Vec::with_capacity(n);
        let mut delta = Vec::with_capacity(n);
        for _ in 0..n {
            let t = self.draw_time(rng);
            let p = self.true_cdf(t);
            u.push(t);
            delta.push(u8::from(rng.random::<f64>() < p));
        }
        ObservationSample::new(u, delta)
    }
}

impl fmt::Display for SimModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "model {}", self.id())
    }
}

impl CdfFunction for SimModel {
    fn cdf(&self, x: f64) -> f64 {
        self.true_cdf(x)
    }
}

/// `((b − a)/K) Σ_k (F(u_k) − F̂(u_k))²` over the `K` sample points in
/// `[a, b]`.
pub fn truncated_mse<E: CdfFunction + ?Sized>(
    estimate: &E,
    model: &SimModel,
    sample: &ObservationSample,
) -> Result<f64> {
    let (a, b) = (model.lower(), model.upper());
    let (sum, k) = sample
        .u()
        .iter()
        .filter(|&&u| (a..=b).contains(&u))
        .fold((0.0, 0usize), |(s, k), &u| {
            (s + (model.true_cdf(u) - estimate.cdf(u)).powi(2), k + 1)
        });
    if k == 0 {
        return Err(Error::NoEvaluationPoints { a, b });
    }
    Ok((b - a) * sum / k as f64)
}

/// Seed of one replication stream.
pub fn replication_seed(seed: u64, model_id: u8, n: usize, replication: usize) -> u64 {
    let mut h = splitmix64(seed);
    for word in [u64::from(model_id), n as u64, replication as u64] {
        h = splitmix64(h ^ word);
    }
    h
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A column of the benchmark: an estimation method, or the true `F` as a
/// zero-error baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Contender {
    Estimator(Method),
    Oracle,
}

impl Contender {
    pub fn name(&self) -> &'static str {
        match self {
            Contender::Estimator(m) => m.name(),
            Contender::Oracle => "oracle",
        }
    }
}

impl From<Method> for Contender {
    fn from(m: Method) -> Self {
        Contender::Estimator(m)
    }
}

#[derive(Debug, Clone)]
pub struct MonteCarloConfig {
    pub models: Vec<SimModel>,
    pub contenders: Vec<Contender>,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    pub estimators: EstimatorConfig,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        Self {
            models: SimModel::ALL.to_vec(),
            contenders: Method::ALL.iter().copied().map(Contender::from).collect(),
            sample_sizes: vec![60, 200, 500, 1000],
            replications: 100,
            seed: 20_100_501,
            estimators: EstimatorConfig::default(),
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationFailure {
    pub replication: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MseCell {
    pub model: SimModel,
    pub n: usize,
    pub contender: Contender,
    /// Truncated MSE of each successful replication, in replication order.
    pub values: Vec<f64>,
    pub failures: Vec<ReplicationFailure>,
}

impl MseCell {
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Sample standard deviation over replications; 0 for a single value.
    pub fn std(&self) -> f64 {
        let j = self.values.len();
        if j < 2 {
            return 0.0;
        }
        let m = self.mean();
        (self.values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (j - 1) as f64).sqrt()
    }

    /// Monte Carlo standard error of the mean.
    pub fn std_error(&self) -> f64 {
        self.std() / (self.values.len() as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MseReport {
    pub replications: usize,
    pub seed: u64,
    pub cells: Vec<MseCell>,
}

impl MseReport {
    pub fn cell(&self, model_id: u8, n: usize, contender: Contender) -> Option<&MseCell> {
        self.cells
            .iter()
            .find(|c| c.model.id() == model_id && c.n == n && c.contender == contender)
    }

    /// One row per cell: `model,n,method,J,mean_mse,std_mse,seed`, where `J`
    /// counts the successful replications.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("model,n,method,J,mean_mse,std_mse,seed\n");
        for c in &self.cells {
            writeln!(
                out,
                "{},{},{},{},{:.15e},{:.15e},{}",
                c.model.id(),
                c.n,
                c.contender.name(),
                c.values.len(),
                c.mean(),
                c.std(),
                self.seed
            )
            .unwrap();
        }
        out
    }

    /// Mean MSE × 10² laid out with one block per method, models as rows and
    /// sample sizes as columns.
    pub fn to_table(&self) -> String {
        let mut contenders: Vec<Contender> = Vec::new();
        let mut models: Vec<SimModel> = Vec::new();
        let mut sizes: Vec<usize> = Vec::new();
        for c in &self.cells {
            if !contenders.contains(&c.contender) {
                contenders.push(c.contender);
            }
            if !models.iter().any(|m| m.id() == c.model.id()) {
                models.push(c.model);
            }
            if !sizes.contains(&c.n) {
                sizes.push(c.n);
            }
        }
        let mut out = String::new();
        writeln!(
            out,
            "Monte Carlo mean truncated MSE (x 1e-2), J = {}, seed = {}",
            self.replications, self.seed
        )
        .unwrap();
        for contender in contenders {
            writeln!(out).unwrap();
            write!(out, "{:<12}", contender.name()).unwrap();
            for n in &sizes {
                write!(out, "{:>20}", format!("n={n}")).unwrap();
            }
            writeln!(out).unwrap();
            for model in &models {
                write!(out, "{:<12}", model.to_string()).unwrap();
                for &n in &sizes {
                    match self.cell(model.id(), n, contender) {
                        Some(c) if !c.values.is_empty() => {
                            write!(out, "{:>20.12}", 100.0 * c.mean()).unwrap()
                        }
                        _ => write!(out, "{:>20}", "-").unwrap(),
                    }
                }
                writeln!(out).unwrap();
            }
        }
        let failed: Vec<&MseCell> = self
            .cells
            .iter()
            .filter(|c| !c.failures.is_empty())
            .collect();
        if !failed.is_empty() {
            writeln!(out).unwrap();
            writeln!(out, "failed replications:").unwrap();
            for c in failed {
                for f in &c.failures {
                    writeln!(
                        out,
                        "  {} n={} {} replication {}: {}",
                        c.model,
                        c.n,
                        c.contender.name(),
                        f.replication,
                        f.message
                    )
                    .unwrap();
                }
            }
        }
        out
    }
}

fn run_contender(
    contender: Contender,
    model: &SimModel,
    sample: &ObservationSample,
    cfg: &EstimatorConfig,
) -> Result<f64> {
    match contender {
        Contender::Oracle => truncated_mse(model, model, sample),
        Contender::Estimator(method) => {
            let est: CdfEstimate = estimate_cdf(method, sample, cfg)?;
            truncated_mse(&est, model, sample)
        }
    }
}

/// Runs every `(model, n)` cell for `cfg.replications` replications and
/// every contender on the same samples.
pub fn monte_carlo(cfg: &MonteCarloConfig) -> Result<MseReport> {
    if cfg.replications == 0 {
        return Err(Error::InvalidConfig(
            "at least one replication is required".into(),
        ));
    }
    if let Some(&n) = cfg.sample_sizes.iter().find(|&&n| n < 2) {
        return Err(Error::InvalidConfig(format!("sample size {n} is below 2")));
    }
    cfg.estimators.validate()?;
    match cfg.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidConfig(e.to_string()))?;
            pool.install(|| run_cells(cfg))
        }
        None => run_cells(cfg),
    }
}

fn run_cells(cfg: &MonteCarloConfig) -> Result<MseReport> {
    let mut cells = Vec::new();
    for model in &cfg.models {
        for &n in &cfg.sample_sizes {
            let per_rep: Vec<Vec<Result<f64>>> = (0..cfg.replications)
                .into_par_iter()
                .map(|rep| {
                    let seed = replication_seed(cfg.seed, model.id(), n, rep);
                    match model.generate(n, seed) {
                        Ok(sample) => cfg
                            .contenders
                            .iter()
                            .map(|&c| run_contender(c, model, &sample, &cfg.estimators))
                            .collect(),
                        Err(e) => vec![Err(e); cfg.contenders.len()],
                    }
                })
                .collect();
            for (k, &contender) in cfg.contenders.iter().enumerate() {
                let mut values = Vec::with_capacity(cfg.replications);
                let mut failures = Vec::new();
                for (rep, results) in per_rep.iter().enumerate() {
                    match &results[k] {
                        Ok(v) => values.push(*v),
                        Err(e) => failures.push(ReplicationFailure {
                            replication: rep,
                            message: e.to_string(),
                        }),
                    }
                }
                cells.push(MseCell {
                    model: *model,
                    n,
                    contender,
                    values,
                    failures,
                });
            }
        }
    }
    Ok(MseReport {
        replications: cfg.replications,
        seed: cfg.seed,
        cells,
    })
}
