//! Scenario configuration and the check execution loop.

use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use detlab_core::groebner::{GbCaps, GroebnerBasis, Ideal};
use detlab_core::syzygy::LinearSyzygySpace;
use detlab_core::{
    Error as CoreError, MatrixSpec, MonomialOrder, Polynomial, ProbeConfig, Status, SymbolicMatrix,
};

use crate::emit::{fnv1a, Report};
use crate::registry;

/// Which degeneration family a scenario runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    /// Diagonal cloning.
    Cloned,
    /// Strategic zeros.
    Zeros,
}

/// Resource caps, mirrored between the config file and the CLI flags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum S-pairs per basis computation.
    #[serde(default = "default_max_pairs")]
    pub max_pairs: usize,
    /// Maximum basis size.
    #[serde(default = "default_max_basis")]
    pub max_basis: usize,
    /// Maximum S-pair degree.
    #[serde(default = "default_max_degree")]
    pub max_degree: u32,
    /// Per-check wall-time cap in milliseconds (DETLAB_BUDGET_MS supplies a
    /// default when unset).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
}

fn default_max_pairs() -> usize {
    400_000
}
fn default_max_basis() -> usize {
    6_000
}
fn default_max_degree() -> u32 {
    80
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: default_max_pairs(),
            max_basis: default_max_basis(),
            max_degree: default_max_degree(),
            ms: None,
        }
    }
}

fn default_checks() -> Vec<String> {
    vec!["all".to_string()]
}

fn default_seed() -> u64 {
    42
}

/// One scenario: family, size, check tags, seed, primes and budget. The seed
/// fully determines all probabilistic trials.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioConfig {
    /// Degeneration family.
    pub family: FamilyTag,
    /// Matrix size.
    pub m: usize,
    /// Zeros parameter (zeros family only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    /// Check tags, or the single tag "all".
    #[serde(default = "default_checks")]
    pub checks: Vec<String>,
    /// Randomness seed.
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Explicit primes for the evaluation protocol.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    /// Resource caps.
    #[serde(default)]
    pub budget: Budget,
}

/// CLI-level error: configuration problems map to exit code 2.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration.
    Config(String),
    /// Kernel error that is not a per-check budget condition.
    Engine(CoreError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Engine(e) => write!(f, "engine error: {e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Engine(e)
    }
}

impl ScenarioConfig {
    /// Validates sizes and check tags.
    pub fn validate(&self) -> Result<(), CliError> {
        match self.family {
            FamilyTag::Cloned => {
                if self.m < 3 {
                    return Err(CliError::Config("cloned family requires m >= 3".into()));
                }
                if self.r.is_some() {
                    return Err(CliError::Config("r applies only to the zeros family".into()));
                }
            }
            FamilyTag::Zeros => {
                let r = self
                    .r
                    .ok_or_else(|| CliError::Config("zeros family requires --r".into()))?;
                if r < 1 || r + 2 > self.m {
                    return Err(CliError::Config(format!(
                        "zeros family requires 1 <= r <= m-2, got m={}, r={}",
                        self.m, r
                    )));
                }
            }
        }
        for tag in &self.checks {
            if tag == "all" {
                continue;
            }
            let def = registry::find(tag)
                .ok_or_else(|| CliError::Config(format!("unknown check tag {tag}")))?;
            if !(def.applicable)(self) {
                return Err(CliError::Config(format!(
                    "check {tag} does not apply to this scenario"
                )));
            }
        }
        Ok(())
    }

    /// The matrix spec this scenario runs on.
    pub fn matrix_spec(&self) -> MatrixSpec {
        match self.family {
            FamilyTag::Cloned => MatrixSpec::cloned(self.m),
            FamilyTag::Zeros => MatrixSpec::zeros(self.m, self.r.unwrap_or(0)),
        }
    }

    /// Zeros parameter, defaulting to 0 for the cloned family.
    pub fn r_value(&self) -> usize {
        self.r.unwrap_or(0)
    }

    /// Expanded check list ("all" becomes the size-guarded default set).
    pub fn expanded_checks(&self) -> Vec<&'static str> {
        if self.checks.iter().any(|t| t == "all") {
            registry::all()
                .iter()
                .filter(|d| (d.default_on)(self))
                .map(|d| d.tag)
                .collect()
        } else {
            self.checks
                .iter()
                .filter_map(|t| registry::find(t).map(|d| d.tag))
                .collect()
        }
    }
}

/// Shared computation cache for one scenario run.
pub struct Ctx {
    /// The scenario being run.
    pub cfg: ScenarioConfig,
    /// Realized matrix.
    pub mat: SymbolicMatrix,
    /// Its determinant.
    pub f: Polynomial,
    /// Gradient generators in table order.
    pub grad: Vec<Polynomial>,
    /// All submaximal minors (signed cofactors), row-major.
    pub minors: Vec<Polynomial>,
    gb_grad: Option<GroebnerBasis>,
    space: Option<LinearSyzygySpace>,
    conductor: Option<Ideal>,
    check_deadline: Option<Instant>,
}

impl Ctx {
    /// Builds the cache for a validated config.
    pub fn new(cfg: &ScenarioConfig) -> Result<Self, CliError> {
        let mat = cfg.matrix_spec().build()?;
        let f = mat.determinant();
        let grad = mat.gradient_generators()?;
        let minors = mat.submaximal_minors();
        Ok(Ctx {
            cfg: cfg.clone(),
            mat,
            f,
            grad,
            minors,
            gb_grad: None,
            space: None,
            conductor: None,
            check_deadline: None,
        })
    }

    /// Per-check probe configuration, derived from the scenario seed and the
    /// check tag so that runs are deterministic regardless of check subsets.
    pub fn probe(&self, tag: &str) -> ProbeConfig {
        ProbeConfig {
            seed: self.cfg.seed ^ fnv1a(tag.as_bytes()),
            primes: self.cfg.primes.clone(),
        }
    }

    /// Caps for basis computations inside the current check.
    pub fn caps(&self) -> GbCaps {
        GbCaps {
            max_pairs: self.cfg.budget.max_pairs,
            max_basis: self.cfg.budget.max_basis,
            max_degree: self.cfg.budget.max_degree,
            deadline: self.check_deadline,
        }
    }

    /// The gradient ideal.
    pub fn gradient_ideal(&self) -> Ideal {
        Ideal::new(
            self.mat.table().clone(),
            self.grad.clone(),
            MonomialOrder::DegRevLex,
        )
    }

    /// The ideal of submaximal minors.
    pub fn minors_ideal(&self) -> Ideal {
        Ideal::new(
            self.mat.table().clone(),
            self.minors.clone(),
            MonomialOrder::DegRevLex,
        )
    }

    /// Basis of the gradient ideal, cached.
    pub fn gb_gradient(&mut self) -> Result<&GroebnerBasis, CoreError> {
        if self.gb_grad.is_none() {
            let caps = self.caps();
            let gb = detlab_core::groebner::buchberger(&self.gradient_ideal(), &caps)?;
            self.gb_grad = Some(gb);
        }
        Ok(self.gb_grad.as_ref().expect("just set"))
    }

    /// Linear syzygy space of the gradient, cached.
    pub fn syzygy_space(&mut self) -> Result<&LinearSyzygySpace, CoreError> {
        if self.space.is_none() {
            self.space = Some(detlab_core::syzygy::linear_syzygies(&self.grad)?);
        }
        Ok(self.space.as_ref().expect("just set"))
    }

    /// Conductor `J : I` (or `J : P`), cached.
    pub fn conductor(&mut self) -> Result<&Ideal, CoreError> {
        if self.conductor.is_none() {
            let caps = self.caps();
            let q = detlab_core::groebner::ideal_quotient(
                &self.gradient_ideal(),
                &self.minors_ideal(),
                &caps,
            )?;
            self.conductor = Some(q);
        }
        Ok(self.conductor.as_ref().expect("just set"))
    }

    /// Sets the wall-clock deadline for the current check.
    pub fn set_deadline(&mut self, deadline: Option<Instant>) {
        self.check_deadline = deadline;
    }

    /// The variable `x_i_j` as a polynomial.
    pub fn var_poly(&self, i: usize, j: usize) -> Result<Polynomial, CoreError> {
        let v = self
            .mat
            .table()
            .require(detlab_core::VarName::X(i as u8, j as u8))?;
        Ok(Polynomial::variable(self.mat.table().clone(), v))
    }

    /// The ideal generated by the distinct variables carried by the listed
    /// cells (structural zeros contribute nothing; a cloned cell resolves to
    /// the shared variable).
    pub fn variable_ideal(&self, cells: &[(usize, usize)]) -> Result<Ideal, CoreError> {
        let mut gens = Vec::new();
        for &(i, j) in cells {
            if let Some(v) = self.mat.cell_var(i, j) {
                gens.push(Polynomial::variable(self.mat.table().clone(), v));
            }
        }
        Ok(Ideal::new(
            self.mat.table().clone(),
            gens,
            MonomialOrder::DegRevLex,
        ))
    }

    /// Ambient table.
    pub fn table(&self) -> &Arc<detlab_core::VarTable> {
        self.mat.table()
    }
}

fn env_budget_ms() -> Option<u64> {
    std::env::var("DETLAB_BUDGET_MS").ok()?.parse().ok()
}

/// Executes the scenario's checks in dependency order, reusing shared
/// computations; deterministic given the seed. Budget exhaustion inside a
/// check produces a BUDGET record and the run continues.
pub fn run(cfg: &ScenarioConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let mut cfg = cfg.clone();
    if cfg.budget.ms.is_none() {
        cfg.budget.ms = env_budget_ms();
    }
    let tags = cfg.expanded_checks();
    let mut ctx = Ctx::new(&cfg)?;
    let mut checks = Vec::with_capacity(tags.len());
    for tag in tags {
        let def = registry::find(tag).expect("expanded tags are registered");
        let started = Instant::now();
        ctx.check_deadline = cfg.budget.ms.map(|ms| started + Duration::from_millis(ms));
        let mut record = match (def.run)(&mut ctx) {
            Ok(rec) => rec,
            Err(CoreError::Budget(msg)) => detlab_core::CheckRecord::new(
                def.tag,
                (def.anchor)(&cfg),
                Status::Budget,
                detlab_core::Certification::Exact,
            )
            .with_witness(serde_json::json!({ "budget": msg })),
            Err(e) => return Err(CliError::Engine(e)),
        };
        record.tag = def.tag.to_string();
        record.anchor = (def.anchor)(&cfg).to_string();
        record.ms = started.elapsed().as_millis() as u64;
        checks.push(record);
    }
    Ok(Report::new("detlab.report/v1", serde_json::to_value(&cfg).expect("serializable"), checks))
}
