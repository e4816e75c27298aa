//! Randomized exact verification suites.
//!
//! A suite is a list of cases (surface × group) and a trial function. Trial
//! `t` runs case `t mod cases` with seed `base + t`; all randomness of a trial
//! is drawn from that seed, so a failing seed replays on its own. Verdicts are
//! exact equalities of rationals and Grassmann numbers.

mod phi;
pub mod sample;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

pub use phi::{h1_word, phi_even, phi_even_loops, phi_odd, splice, transport_function};

use crate::error::{Error, Result};
use crate::modulispace::GroupSpec;
use crate::surface::{standard, Skeleton};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    GtAxioms,
    Realization,
    GoldmanEven,
    FrInvariance,
    FrQuasi,
    BvInvariance,
    BvSquare,
    GeometricBv,
    OddGoldman,
    OddGoldmanExt,
    AlgebraIds,
    Fusion,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::GtAxioms,
        Suite::Realization,
        Suite::GoldmanEven,
        Suite::FrInvariance,
        Suite::FrQuasi,
        Suite::BvInvariance,
        Suite::BvSquare,
        Suite::GeometricBv,
        Suite::OddGoldman,
        Suite::OddGoldmanExt,
        Suite::AlgebraIds,
        Suite::Fusion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GtAxioms => "GT_AXIOMS",
            Suite::Realization => "REALIZATION",
            Suite::GoldmanEven => "GOLDMAN_EVEN",
            Suite::FrInvariance => "FR_INVARIANCE",
            Suite::FrQuasi => "FR_QUASI",
            Suite::BvInvariance => "BV_INVARIANCE",
            Suite::BvSquare => "BV_SQUARE",
            Suite::GeometricBv => "GEOMETRIC_BV",
            Suite::OddGoldman => "ODD_GOLDMAN",
            Suite::OddGoldmanExt => "ODD_GOLDMAN_EXT",
            Suite::AlgebraIds => "ALGEBRA_IDS",
            Suite::Fusion => "FUSION",
        }
    }

    /// Surfaces the suite runs on by default. The BV suites use rotation
    /// numbers so that the ν-term of the aff(1) double is exercised.
    pub fn default_surfaces(self) -> Vec<(String, Skeleton)> {
        let named = |names: &[&str]| -> Vec<(String, Skeleton)> {
            names.iter().map(|n| (n.to_string(), standard::by_name(n).expect("standard surface"))).collect()
        };
        match self {
            Suite::GtAxioms | Suite::OddGoldman | Suite::OddGoldmanExt => named(&["torus", "pants"]),
            Suite::Realization | Suite::GoldmanEven => named(&["torus", "pants", "genus2"]),
            Suite::FrInvariance | Suite::FrQuasi => named(&["torus", "pants", "theta"]),
            Suite::BvInvariance | Suite::BvSquare | Suite::GeometricBv => vec![
                ("torus".into(), standard::torus().with_rot2(&[2, -1])),
                ("pants".into(), standard::pants().with_rot2(&[1, -2])),
                ("theta".into(), standard::theta().with_rot2(&[1, 0, 3])),
            ],
            Suite::Fusion => named(&["theta"]),
            Suite::AlgebraIds => Vec::new(),
        }
    }

    pub fn default_groups(self) -> Vec<GroupSpec> {
        match self {
            Suite::GtAxioms | Suite::Realization | Suite::AlgebraIds => Vec::new(),
            Suite::GoldmanEven | Suite::FrInvariance | Suite::FrQuasi => vec![GroupSpec::Gl(2)],
            Suite::BvInvariance | Suite::BvSquare | Suite::GeometricBv => {
                vec![GroupSpec::Q(1), GroupSpec::Q(2), GroupSpec::Aff1Double]
            }
            Suite::OddGoldman | Suite::OddGoldmanExt => vec![GroupSpec::Q(1), GroupSpec::Q(2)],
            Suite::Fusion => vec![GroupSpec::Q(1), GroupSpec::Q(2), GroupSpec::Aff1Double, GroupSpec::Gl(2)],
        }
    }

    /// Whether the suite needs an even (GL) or odd (Q, aff double) group.
    pub fn accepts(self, g: GroupSpec) -> bool {
        match self {
            Suite::GtAxioms | Suite::Realization | Suite::AlgebraIds => true,
            Suite::GoldmanEven | Suite::FrInvariance | Suite::FrQuasi => matches!(g, GroupSpec::Gl(_)),
            Suite::OddGoldman | Suite::OddGoldmanExt => matches!(g, GroupSpec::Q(_)),
            Suite::BvInvariance | Suite::BvSquare | Suite::GeometricBv => g.is_odd_type(),
            Suite::Fusion => true,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        Suite::ALL.into_iter().find(|x| x.name() == up).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Named skeletons; empty means the suite's defaults.
    pub surfaces: Vec<(String, Skeleton)>,
    /// Empty means the suite's defaults.
    pub groups: Vec<GroupSpec>,
    pub max_len: usize,
    /// Trials per case.
    pub trials: usize,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_TRIALS: usize = 25;
pub const DEFAULT_MAX_LEN: usize = 5;

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            surfaces: Vec::new(),
            groups: Vec::new(),
            max_len: DEFAULT_MAX_LEN,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
        }
    }

    pub fn trials(mut self, n: usize) -> Self {
        self.trials = n;
        self
    }

    pub fn seed(mut self, s: u64) -> Self {
        self.seed = s;
        self
    }

    pub fn max_len(mut self, l: usize) -> Self {
        self.max_len = l;
        self
    }

    pub fn surface(mut self, name: &str, sk: Skeleton) -> Self {
        self.surfaces.push((name.to_string(), sk));
        self
    }

    pub fn group(mut self, g: GroupSpec) -> Self {
        self.groups.push(g);
        self
    }

    fn cases(&self) -> Result<Vec<Case>> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trial count must be at least 1".into()));
        }
        let surfaces = if self.surfaces.is_empty() { self.suite.default_surfaces() } else { self.surfaces.clone() };
        let groups = if self.groups.is_empty() { self.suite.default_groups() } else { self.groups.clone() };
        if let Some(g) = groups.iter().find(|g| !self.suite.accepts(**g)) {
            return Err(Error::InvalidConfig(format!("{} does not run on {}", self.suite, g.name())));
        }
        let surfaces: Vec<Option<(String, Skeleton)>> =
            if surfaces.is_empty() { vec![None] } else { surfaces.into_iter().map(Some).collect() };
        let groups: Vec<Option<GroupSpec>> = if groups.is_empty() { vec![None] } else { groups.into_iter().map(Some).collect() };
        let mut out = Vec::new();
        for s in &surfaces {
            for g in &groups {
                out.push(Case { surface: s.clone(), group: *g, max_len: self.max_len.max(1) });
            }
        }
        Ok(out)
    }
}

/// One (surface, group) combination of a suite.
#[derive(Clone, Debug)]
pub struct Case {
    pub surface: Option<(String, Skeleton)>,
    pub group: Option<GroupSpec>,
    pub max_len: usize,
}

impl Case {
    pub fn sk(&self) -> &Skeleton {
        &self.surface.as_ref().expect("suite case without surface").1
    }

    pub fn g(&self) -> GroupSpec {
        self.group.expect("suite case without group")
    }

    fn describe(&self) -> Value {
        json!({
            "surface": self.surface.as_ref().map(|s| s.0.clone()),
            "group": self.group.map(|g| g.name()),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub seed: u64,
    pub verdict: Verdict,
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub trials: Vec<TrialReport>,
    pub elapsed_ms: u64,
    /// How often each notable situation occurred (e.g. boundary crossings),
    /// so that coverage requirements can be checked from the report.
    pub coverage: BTreeMap<String, u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.trials.iter().all(|t| t.verdict == Verdict::Pass)
    }

    pub fn failures(&self) -> usize {
        self.trials.iter().filter(|t| t.verdict == Verdict::Fail).count()
    }

    pub fn first_counterexample(&self) -> Option<&Value> {
        self.trials.iter().find_map(|t| t.counterexample.as_ref())
    }

    pub fn coverage(&self, key: &str) -> u64 {
        self.coverage.get(key).copied().unwrap_or(0)
    }

    /// JSON with sorted keys. `timing: false` zeroes `elapsed_ms`, which is
    /// the only field that differs between identical runs.
    pub fn to_json_value(&self, timing: bool) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if !timing {
            v["elapsed_ms"] = json!(0);
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value(true)).expect("report serializes")
    }
}

/// Bookkeeping of one trial: the first failed identity and coverage counters.
#[derive(Default)]
pub struct Trial {
    failure: Option<Value>,
    coverage: BTreeMap<String, u64>,
}

impl Trial {
    /// Records a failure of `identity` unless `lhs == rhs`.
    pub fn expect_eq<T: PartialEq + Serialize>(&mut self, identity: &str, lhs: &T, rhs: &T, inputs: impl FnOnce() -> Value) -> bool {
        if lhs == rhs {
            return true;
        }
        if self.failure.is_none() {
            self.failure = Some(json!({
                "identity": identity,
                "inputs": inputs(),
                "lhs": serde_json::to_value(lhs).unwrap_or(Value::Null),
                "rhs": serde_json::to_value(rhs).unwrap_or(Value::Null),
            }));
        }
        false
    }

    /// Like [`expect_eq`](Self::expect_eq) for values rendered as text.
    pub fn check<T: PartialEq>(
        &mut self,
        identity: &str,
        lhs: &T,
        rhs: &T,
        render: impl Fn(&T) -> String,
        inputs: impl FnOnce() -> Value,
    ) -> bool {
        if lhs == rhs {
            return true;
        }
        if self.failure.is_none() {
            self.failure = Some(json!({ "identity": identity, "inputs": inputs(), "lhs": render(lhs), "rhs": render(rhs) }));
        }
        false
    }

    pub fn expect(&mut self, identity: &str, ok: bool, detail: impl FnOnce() -> Value) -> bool {
        if !ok && self.failure.is_none() {
            self.failure = Some(json!({ "identity": identity, "inputs": detail() }));
        }
        ok
    }

    pub fn note(&mut self, key: &str) {
        self.note_n(key, 1);
    }

    pub fn note_n(&mut self, key: &str, n: u64) {
        if n > 0 {
            *self.coverage.entry(key.to_string()).or_insert(0) += n;
        }
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

type TrialFn = fn(&Case, &mut sample::TrialRng, &mut Trial) -> Result<()>;

fn run_one(f: TrialFn, case: &Case, seed: u64) -> (TrialReport, BTreeMap<String, u64>) {
    use rand::SeedableRng;
    let mut rng = sample::TrialRng::seed_from_u64(seed);
    let mut trial = Trial::default();
    let outcome = f(case, &mut rng, &mut trial);
    let counterexample = match (outcome, trial.failure.take()) {
        (Err(e), _) => Some(json!({ "case": case.describe(), "error": e.to_string() })),
        (Ok(()), Some(mut c)) => {
            c["case"] = case.describe();
            Some(c)
        }
        (Ok(()), None) => None,
    };
    let verdict = if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass };
    (TrialReport { seed, verdict, counterexample }, trial.coverage)
}

/// Runs every trial of the configured suite. Trials run on all available
/// cores; the report lists them in trial order regardless.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let start = Instant::now();
    let cases = cfg.cases()?;
    let f = suites::trial_fn(cfg.suite);
    let total = cfg.trials * cases.len();
    let slots: Mutex<Vec<Option<(TrialReport, BTreeMap<String, u64>)>>> = Mutex::new(vec![None; total]);
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(total).max(1);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let t = next.fetch_add(1, Ordering::Relaxed);
                if t >= total {
                    break;
                }
                let r = run_one(f, &cases[t % cases.len()], cfg.seed.wrapping_add(t as u64));
                slots.lock().expect("no poisoned trials")[t] = Some(r);
            });
        }
    });
    let mut trials = Vec::with_capacity(total);
    let mut coverage = BTreeMap::new();
    for slot in slots.into_inner().expect("no poisoned trials") {
        let (report, cov) = slot.expect("every trial ran");
        for (k, v) in cov {
            *coverage.entry(k).or_insert(0) += v;
        }
        trials.push(report);
    }
    Ok(Report { suite: cfg.suite.name().to_string(), trials, elapsed_ms: start.elapsed().as_millis() as u64, coverage })
}
