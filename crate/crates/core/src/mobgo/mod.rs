//! Multi-objective Bayesian global optimization: Latin hypercube start, then
//! one true evaluation per iteration at the maximizer of EHVI or PoI under
//! per-objective Kriging models.

mod lhs;
pub mod search;

pub use lhs::lhs;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::criteria::{EhviEvaluator, PoiEvaluator};
use crate::error::{Error, Result};
use crate::par::{map_slice, Execution};
use crate::pareto::{hvi, hypervolume, ObjVec, ParetoApprox, RefPoint};
use crate::surrogate::{predict_multi, FitOptions, KrigingModel, DEFAULT_BUDGET};
use search::{argmax, Candidate, EsParams};

/// Objective map of a problem, maximization convention.
pub type Objective = dyn Fn(&[f64]) -> Result<ObjVec> + Send + Sync;

/// A box-constrained problem with `d` objectives to maximize.
#[derive(Clone)]
pub struct Problem {
    name: String,
    d: usize,
    bounds: Vec<(f64, f64)>,
    eval: Arc<Objective>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("m", &self.bounds.len())
            .field("d", &self.d)
            .field("bounds", &self.bounds)
            .finish()
    }
}

impl Problem {
    pub fn new(name: impl Into<String>, bounds: Vec<(f64, f64)>, d: usize, eval: Arc<Objective>) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        if bounds.is_empty() || bounds.iter().any(|(lo, hi)| !(lo < hi && lo.is_finite() && hi.is_finite())) {
            return Err(Error::InvalidArgument("bounds need finite lo < hi".into()));
        }
        Ok(Self {
            name: name.into(),
            d,
            bounds,
            eval,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Search dimension.
    pub fn m(&self) -> usize {
        self.bounds.len()
    }

    /// Objective dimension.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// Evaluates `x`, checking the shape and finiteness of the result.
    pub fn evaluate(&self, x: &[f64]) -> Result<ObjVec> {
        if x.len() != self.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                got: x.len(),
            });
        }
        let y = (self.eval)(x)?;
        if y.len() != self.d {
            return Err(Error::Evaluation(format!(
                "{} returned {} objectives, expected {}",
                self.name,
                y.len(),
                self.d
            )));
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Evaluation(format!("{} returned a non-finite value", self.name)));
        }
        Ok(y)
    }
}

/// Infill criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Ehvi,
    Poi,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::Ehvi => "ehvi",
            Criterion::Poi => "poi",
        })
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ehvi" => Ok(Criterion::Ehvi),
            "poi" => Ok(Criterion::Poi),
            _ => Err(Error::Parse(format!("unknown criterion '{s}'"))),
        }
    }
}

/// Evaluated designs with their objective vectors and the current front.
#[derive(Debug, Clone, PartialEq)]
pub struct Archive {
    entries: Vec<(Vec<f64>, ObjVec)>,
    front: ParetoApprox,
}

impl Archive {
    pub fn new(d: usize) -> Result<Self> {
        Ok(Self {
            entries: Vec::new(),
            front: ParetoApprox::empty(d)?,
        })
    }

    pub fn push(&mut self, x: Vec<f64>, y: ObjVec) -> Result<()> {
        self.front.insert(y.clone())?;
        self.entries.push((x, y));
        Ok(())
    }

    pub fn entries(&self) -> &[(Vec<f64>, ObjVec)] {
        &self.entries
    }

    pub fn front(&self) -> &ParetoApprox {
        &self.front
    }

    /// Evaluation count `g`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains_x(&self, x: &[f64]) -> bool {
        self.entries.iter().any(|(e, _)| e.as_slice() == x)
    }
}

/// Settings of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Initial Latin hypercube size; counts toward `tc`.
    pub eta: usize,
    /// Total number of true evaluations.
    pub tc: usize,
    pub criterion: Criterion,
    /// Reference point in the maximization convention. PoI only uses it for the
    /// reported hypervolume.
    pub ref_point: RefPoint,
    /// Criterion evaluations per proposal.
    pub inner_budget: usize,
    pub seed: u64,
    /// Likelihood evaluations when hyperparameters are re-tuned.
    pub kriging_budget: usize,
    /// Re-tune hyperparameters every this many iterations; in between the
    /// previous `theta` is kept and only the factorization is refreshed.
    pub retune_every: usize,
    pub exec: Execution,
}

impl RunConfig {
    pub fn new(eta: usize, tc: usize, criterion: Criterion, ref_point: RefPoint, seed: u64) -> Self {
        Self {
            eta,
            tc,
            criterion,
            ref_point,
            inner_budget: 2000,
            seed,
            kriging_budget: DEFAULT_BUDGET,
            retune_every: 10,
            exec: Execution::default(),
        }
    }

    pub fn validate(&self, problem: &Problem) -> Result<()> {
        if self.eta < problem.m() + 1 {
            return Err(Error::InvalidArgument(format!(
                "eta must be at least m + 1 = {}, got {}",
                problem.m() + 1,
                self.eta
            )));
        }
        if self.tc < self.eta {
            return Err(Error::InvalidArgument(format!(
                "tc ({}) must be at least eta ({})",
                self.tc, self.eta
            )));
        }
        if self.inner_budget < 100 {
            return Err(Error::InvalidArgument(format!(
                "inner_budget must be at least 100, got {}",
                self.inner_budget
            )));
        }
        if self.kriging_budget == 0 || self.retune_every == 0 {
            return Err(Error::InvalidArgument(
                "kriging_budget and retune_every must be positive".into(),
            ));
        }
        if self.ref_point.dim() != problem.d() || !self.ref_point.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "reference point must be finite with {} coordinates",
                problem.d()
            )));
        }
        Ok(())
    }
}

/// Result of one proposal step.
#[derive(Debug, Clone, PartialEq)]
pub struct Proposal {
    pub x: Vec<f64>,
    pub value: f64,
    /// The criterion was zero everywhere searched; `x` maximizes the summed
    /// predictive variance instead.
    pub fallback: bool,
}

/// Maximizes the criterion over the box with the inner evolution strategy.
/// Points already in `exclude` are never returned.
pub fn propose(
    models: &[KrigingModel],
    front: &ParetoApprox,
    cfg: &RunConfig,
    bounds: &[(f64, f64)],
    exclude: &[Vec<f64>],
    stream: u64,
) -> Result<Proposal> {
    enum Eval {
        Ehvi(EhviEvaluator),
        Poi(PoiEvaluator),
    }
    let eval = match cfg.criterion {
        Criterion::Ehvi => Eval::Ehvi(EhviEvaluator::new(&front.restrict_to(&cfg.ref_point), &cfg.ref_point)?),
        Criterion::Poi => Eval::Poi(PoiEvaluator::new(front)?),
    };
    let criterion = |x: &[f64]| -> f64 {
        let Ok(pred) = predict_multi(models, x) else {
            return f64::NEG_INFINITY;
        };
        let v = match &eval {
            Eval::Ehvi(e) => e.eval(&pred),
            Eval::Poi(e) => e.eval(&pred),
        };
        v.unwrap_or(f64::NEG_INFINITY)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let cands = search::maximize(criterion, bounds, cfg.inner_budget, EsParams::default(), &mut rng, cfg.exec);
    let fresh: Vec<Candidate> = cands
        .into_iter()
        .filter(|c| !exclude.iter().any(|e| e == &c.x))
        .collect();
    let best = argmax(&fresh).ok_or_else(|| Error::InvalidArgument("inner search produced only known points".into()))?;
    if fresh[best].value > 0.0 {
        return Ok(Proposal {
            x: fresh[best].x.clone(),
            value: fresh[best].value,
            fallback: false,
        });
    }
    let spread: Vec<Candidate> = map_slice(&fresh, cfg.exec, |c| Candidate {
        x: c.x.clone(),
        value: models
            .iter()
            .map(|m| m.predict(&c.x).map_or(0.0, |(_, v)| v))
            .sum(),
    });
    let i = argmax(&spread).expect("nonempty");
    Ok(Proposal {
        x: spread[i].x.clone(),
        value: fresh[i].value,
        fallback: true,
    })
}

/// Output of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub archive: Archive,
    /// `(g, HV(front, r))` after every evaluation, accumulated as the previous
    /// value plus the improvement of the new point so that it never decreases
    /// through rounding.
    pub history: Vec<(usize, f64)>,
    /// Notes such as fallback proposals.
    pub log: Vec<String>,
}

impl RunOutput {
    fn record(&mut self, x: Vec<f64>, y: ObjVec, r: &RefPoint) -> Result<()> {
        let gain = hvi(&y, &self.archive.front().restrict_to(r), r)?;
        let prev = self.history.last().map_or(0.0, |h| h.1);
        self.archive.push(x, y)?;
        self.history.push((self.archive.len(), prev + gain));
        Ok(())
    }
}

/// A run aborted by an error, with everything evaluated up to that point.
#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    pub error: Error,
    pub partial: RunOutput,
}

impl fmt::Display for RunFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "run aborted after {} evaluations: {}", self.partial.archive.len(), self.error)
    }
}

impl std::error::Error for RunFailure {}

/// Hypervolume of the members that strictly dominate `r`.
pub fn front_hv(front: &ParetoApprox, r: &RefPoint) -> f64 {
    hypervolume(&front.restrict_to(r), r).unwrap_or(0.0)
}

/// Runs the optimization loop until `cfg.tc` true evaluations.
pub fn run(problem: &Problem, cfg: &RunConfig) -> std::result::Result<RunOutput, Box<RunFailure>> {
    let mut out = RunOutput {
        archive: match Archive::new(problem.d()) {
            Ok(a) => a,
            Err(error) => {
                return Err(Box::new(RunFailure {
                    error,
                    partial: RunOutput {
                        archive: Archive {
                            entries: Vec::new(),
                            front: ParetoApprox::empty(2).expect("2 objectives"),
                        },
                        history: Vec::new(),
                        log: Vec::new(),
                    },
                }))
            }
        },
        history: Vec::new(),
        log: Vec::new(),
    };
    match run_into(problem, cfg, &mut out) {
        Ok(()) => Ok(out),
        Err(error) => Err(Box::new(RunFailure { error, partial: out })),
    }
}

fn run_into(problem: &Problem, cfg: &RunConfig, out: &mut RunOutput) -> Result<()> {
    cfg.validate(problem)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let init = lhs(cfg.eta, problem.bounds(), &mut rng)?;
    for x in init {
        let y = problem.evaluate(&x)?;
        out.record(x, y, &cfg.ref_point)?;
    }

    let mut thetas: Vec<Option<Vec<f64>>> = vec![None; problem.d()];
    let mut iteration = 0usize;
    while out.archive.len() < cfg.tc {
        let xs: Vec<Vec<f64>> = out.archive.entries().iter().map(|(x, _)| x.clone()).collect();
        let retune = iteration.is_multiple_of(cfg.retune_every);
        let objectives: Vec<usize> = (0..problem.d()).collect();
        let fits = map_slice(&objectives, cfg.exec, |&k| {
            let ys: Vec<f64> = out.archive.entries().iter().map(|(_, y)| y[k]).collect();
            let opts = FitOptions {
                budget: if retune { cfg.kriging_budget } else { 1 },
                bounds: Some(problem.bounds().to_vec()),
                theta0: thetas[k].clone(),
            };
            KrigingModel::fit_with(&xs, &ys, &opts)
        });
        let models: Vec<KrigingModel> = fits.into_iter().collect::<Result<_>>()?;
        for (t, m) in thetas.iter_mut().zip(&models) {
            *t = Some(m.theta().to_vec());
        }

        let prop = propose(&models, out.archive.front(), cfg, problem.bounds(), &xs, iteration as u64 + 1)?;
        if prop.fallback {
            out.log.push(format!(
                "g={}: criterion zero over the inner search, using maximal predictive variance",
                out.archive.len()
            ));
        }
        let y = problem.evaluate(&prop.x)?;
        out.record(prop.x, y, &cfg.ref_point)?;
        iteration += 1;
    }
    Ok(())
}
