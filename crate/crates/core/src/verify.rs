//! Verification suites: each check runs one family of exact statements over
//! generated configurations and reports a witness on failure.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::config::{cocyclic, is_coneighborly, make_random, VectorConfiguration};
use crate::covectors::{
    check_fstar_from_f, enumerate_covectors, enumerate_covectors_bruteforce, f_matrix, fstar_matrix,
};
use crate::crossings::{
    check_upper_bounds, closed_form_rows, crossing_count, crossing_count_from_fstar, hill_x,
    wendel_mc,
};
use crate::error::{Error, Result};
use crate::format::{write_configuration, write_cylinder};
use crate::gmatrix::{
    check_bounds, check_gale_antisymmetry, g_between, reconstruct_f_diff, reconstruct_fstar_diff,
    Profile, References,
};
use crate::karcs::{lift, random_cylinder, transition_scan, verify_special_pair};
use crate::motion::{g_via_motion, verify_mutation_formulas, MotionOutcome};
use crate::poly::binomial;
use crate::scalar::Sign;
use crate::Rational;

type Config = VectorConfiguration<Rational>;

/// Coordinates of random configurations are drawn from `[-RANDOM_BOUND, RANDOM_BOUND]`.
pub const RANDOM_BOUND: i64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Bounds,
    Motion,
    Karcs,
    /// the closed form of the crossing bound, selected as `appendix` on the command line
    ClosedForm,
    Wendel,
    All,
}

impl Suite {
    pub fn criteria(self) -> Vec<Criterion> {
        Criterion::ALL
            .iter()
            .copied()
            .filter(|c| self == Suite::All || c.suite() == self)
            .collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Identities => "identities",
            Suite::Bounds => "bounds",
            Suite::Motion => "motion",
            Suite::Karcs => "karcs",
            Suite::ClosedForm => "appendix",
            Suite::Wendel => "wendel",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    OracleEquivalence,
    QuadrupleIdentity,
    HillBound,
    UpperBound,
    GIdentities,
    PathIndependence,
    MutationFormulas,
    GBounds,
    GaleAntisymmetry,
    KArcs,
    ClosedForm,
    Wendel,
    FStarFromF,
}

/// Parameters of one run of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
}

/// User overrides applied on top of each check's defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub n_range: Option<(usize, usize)>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

impl Criterion {
    pub const ALL: [Criterion; 13] = [
        Criterion::OracleEquivalence,
        Criterion::QuadrupleIdentity,
        Criterion::HillBound,
        Criterion::UpperBound,
        Criterion::GIdentities,
        Criterion::PathIndependence,
        Criterion::MutationFormulas,
        Criterion::GBounds,
        Criterion::GaleAntisymmetry,
        Criterion::KArcs,
        Criterion::ClosedForm,
        Criterion::Wendel,
        Criterion::FStarFromF,
    ];

    pub fn number(self) -> usize {
        Criterion::ALL
            .iter()
            .position(|&c| c == self)
            .expect("listed")
            + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::OracleEquivalence => "oracle-equivalence",
            Criterion::QuadrupleIdentity => "quadruple-identity",
            Criterion::HillBound => "hill-bound",
            Criterion::UpperBound => "upper-bound",
            Criterion::GIdentities => "g-identities",
            Criterion::PathIndependence => "path-independence",
            Criterion::MutationFormulas => "mutation-formulas",
            Criterion::GBounds => "g-bounds",
            Criterion::GaleAntisymmetry => "gale-antisymmetry",
            Criterion::KArcs => "k-arcs",
            Criterion::ClosedForm => "closed-form",
            Criterion::Wendel => "random-crossings",
            Criterion::FStarFromF => "fstar-from-f",
        }
    }

    /// The statement being checked.
    pub fn statement(self) -> &'static str {
        match self {
            Criterion::OracleEquivalence => "face enumeration equals brute-force filtering of all 3^n sign vectors",
            Criterion::QuadrupleIdentity => "f*_{4,0} + f*_{4,1} + f*_{4,2}/2 = C(n,4)",
            Criterion::HillBound => "crossings >= X(n), with equality for cocyclic configurations",
            Criterion::UpperBound => "f*_{s,0} and f*_{s,<=1} are at most their cocyclic values",
            Criterion::GIdentities => "g is skew-symmetric and reconstructs f_W - f_V and f*_W - f*_V",
            Criterion::PathIndependence => "g counted along motions equals g from f-vectors, on two paths",
            Criterion::MutationFormulas => "each mutation changes f and f* by the formulas of its type",
            Criterion::GBounds => {
                "g*_{0,k} <= C(k+2,2), g_{1,k} >= 0, g_{1,k} + g*_{1,k} = (k+1)n - 3C(k+2,2), cocyclic equality"
            }
            Criterion::GaleAntisymmetry => "g_{j,k}(V -> W) = -g_{k,j}(V* -> W*)",
            Criterion::KArcs => "k-arc counts, vertex census, g_{1,k} = lambda_k, and transitions",
            Criterion::ClosedForm => "Y(n) = C(n,4) - X(n)",
            Criterion::Wendel => "mean crossings of Gaussian vectors is 3/8 C(n,4)",
            Criterion::FStarFromF => "f*(x,y) is determined by f(x,y) through the Gale transform identity",
        }
    }

    pub fn suite(self) -> Suite {
        match self {
            Criterion::OracleEquivalence
            | Criterion::QuadrupleIdentity
            | Criterion::GIdentities
            | Criterion::GaleAntisymmetry
            | Criterion::FStarFromF => Suite::Identities,
            Criterion::HillBound | Criterion::UpperBound | Criterion::GBounds => Suite::Bounds,
            Criterion::PathIndependence | Criterion::MutationFormulas => Suite::Motion,
            Criterion::KArcs => Suite::Karcs,
            Criterion::ClosedForm => Suite::ClosedForm,
            Criterion::Wendel => Suite::Wendel,
        }
    }

    pub fn default_settings(self) -> Settings {
        let s = |n_min, n_max, trials| Settings {
            n_min,
            n_max,
            trials,
            seed: 1,
        };
        match self {
            Criterion::OracleEquivalence => s(3, 8, 30),
            Criterion::QuadrupleIdentity => s(4, 9, 50),
            Criterion::HillBound => s(4, 10, 200),
            Criterion::UpperBound => s(4, 9, 100),
            Criterion::GIdentities => s(5, 8, 30),
            Criterion::PathIndependence | Criterion::MutationFormulas => s(5, 7, 10),
            Criterion::GBounds => s(4, 10, 100),
            Criterion::GaleAntisymmetry => s(6, 7, 10),
            Criterion::KArcs => s(5, 7, 10),
            Criterion::ClosedForm => s(4, 200, 0),
            Criterion::Wendel => s(4, 6, 20_000),
            Criterion::FStarFromF => s(4, 8, 30),
        }
    }

    pub fn settings(self, overrides: &Overrides) -> Settings {
        let mut s = self.default_settings();
        if let Some((lo, hi)) = overrides.n_range {
            s.n_min = lo;
            s.n_max = hi;
        }
        if let Some(t) = overrides.trials {
            s.trials = t;
        }
        if let Some(seed) = overrides.seed {
            s.seed = seed;
        }
        s
    }
}

/// Data identifying the failing instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// the offending input as a document
    pub document: Option<String>,
    pub indices: Vec<usize>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    pub instances: usize,
    pub detail: String,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Seed of the `index`-th instance of a check.
pub fn instance_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index as u64 + 1)
}

fn n_for(s: &Settings, index: usize, min: usize) -> Result<usize> {
    let lo = s.n_min.max(min);
    if s.n_max < lo {
        return Err(Error::InvalidParameter(format!(
            "empty range of n ({}..={})",
            s.n_min, s.n_max
        )));
    }
    Ok(lo + index % (s.n_max - lo + 1))
}

fn random(n: usize, rank: usize, seed: u64) -> Result<Config> {
    make_random(n, rank, RANDOM_BOUND, seed)
}

/// Collects per-instance outcomes, keeping the first failure.
struct Tally {
    instances: usize,
    witness: Option<Witness>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            instances: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.instances += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self, c: Criterion, detail: String) -> CheckResult {
        CheckResult {
            name: c.name().into(),
            statement: c.statement().into(),
            passed: self.witness.is_none() && self.instances > 0,
            instances: self.instances,
            detail,
            witness: self.witness,
            seconds: None,
        }
    }
}

fn config_witness(v: &Config, indices: Vec<usize>, note: impl Into<String>) -> Witness {
    Witness {
        document: Some(write_configuration(v)),
        indices,
        note: note.into(),
    }
}

fn pair_witness(v: &Config, w: &Config, note: impl Into<String>) -> Witness {
    Witness {
        document: Some(format!(
            "{}\n{}",
            write_configuration(v),
            write_configuration(w)
        )),
        indices: Vec::new(),
        note: note.into(),
    }
}

pub fn run_criterion(c: Criterion, s: &Settings, refs: &References) -> Result<CheckResult> {
    let start = Instant::now();
    let mut result = match c {
        Criterion::OracleEquivalence => oracle_equivalence(s),
        Criterion::QuadrupleIdentity => quadruple_identity(s),
        Criterion::HillBound => hill_bound(s),
        Criterion::UpperBound => upper_bound(s, refs),
        Criterion::GIdentities => g_identities(s),
        Criterion::PathIndependence => motion_checks(s, false),
        Criterion::MutationFormulas => motion_checks(s, true),
        Criterion::GBounds => g_bounds(s, refs),
        Criterion::GaleAntisymmetry => gale_antisymmetry(s),
        Criterion::KArcs => karc_checks(s, refs),
        Criterion::ClosedForm => closed_form(s),
        Criterion::Wendel => random_crossings(s),
        Criterion::FStarFromF => fstar_from_f(s),
    }?;
    result.seconds = Some(start.elapsed().as_secs_f64());
    Ok(result)
}

pub fn run_suite(suite: Suite, overrides: &Overrides, refs: &References) -> Result<Report> {
    let checks = suite
        .criteria()
        .into_iter()
        .map(|c| run_criterion(c, &c.settings(overrides), refs))
        .collect::<Result<_>>()?;
    Ok(Report { checks })
}

fn oracle_equivalence(s: &Settings) -> Result<CheckResult> {
    let c = Criterion::OracleEquivalence;
    let mut tally = Tally::new();
    for i in 0..s.trials {
        let rank = 2 + i % 3;
        let n = n_for(s, i, rank + 1)?;
        let v = random(n, rank, instance_seed(s.seed, i))?;
        let fast = enumerate_covectors(&v)?;
        let slow = enumerate_covectors_bruteforce(&v);
        tally.record(fast == slow, || {
            config_witness(
                &v,
                Vec::new(),
                format!(
                    "{} faces enumerated, {} by brute force",
                    fast.len(),
                    slow.len()
                ),
            )
        });
    }
    Ok(tally.finish(c, format!("ranks 2-4, n {}..={}", s.n_min, s.n_max)))
}

fn quadruple_identity(s: &Settings) -> Result<CheckResult> {
    let c = Criterion::QuadrupleIdentity;
    let mut tally = Tally::new();
    for i in 0..s.trials {
        let n = n_for(s, i, 4)?;
        let v = random(n, 3, instance_seed(s.seed, i))?;
        let fs = fstar_matrix(&v)?;
        let lhs = 2 * fs.get(4, 0) + 2 * fs.get(4, 1) + fs.get(4, 2);
        let rhs = 2 * binomial(n as i64, 4);
        tally.record(lhs == rhs, || {
            config_witness(
                &v,
                Vec::new(),
                format!("2 x left side {lhs}, 2 x C(n,4) {rhs}"),
            )
        });
    }
    Ok(tally.finish(c, format!("rank 3, n {}..={}", s.n_min, s.n_max)))
}

fn hill_bound(s: &Settings) -> Result<CheckResult> {
    let c = Criterion::HillBound;
    let mut tally = Tally::new();
    let mut min_gap = i64::MAX;
    for i in 0..s.trials {
        let n = n_for(s, i, 4)?;
        let v = random(n, 3, instance_seed(s.seed, i))?;
        let count = crossing_count(&v)?;
        let x = hill_x(n as u64);
        min_gap = min_gap.min(count as i64 - x as i64);
        let mut ok = count >= x;
        if i % 4 == 0 {
            ok &= crossing_count_from_fstar(&fstar_matrix(&v)?) == count as i64;
        }
        tally.record(ok, || {
            config_witness(&v, Vec::new(), format!("{count} crossings, X(n) = {x}"))
        });
    }
    let top = s.n_max.max(12);
    for n in 4..=top {
        let v = cocyclic::<Rational>(n)?;
        let count = crossing_count(&v)?;
        let x = hill_x(n as u64);
        tally.record(count == x, || {
            config_witness(
                &v,
                Vec::new(),
                format!("cocyclic: {count} crossings, X(n) = {x}"),
            )
        });
    }
    Ok(tally.finish(
        c,
        format!(
            "rank 3, n {}..={}, smallest gap {min_gap}, cocyclic n 4..={top}",
            s.n_min, s.n_max
        ),
    ))
}

fn upper_bound(s: &Settings, refs: &References) -> Result<CheckResult> {
    let c = Criterion::UpperBound;
    let mut tally = Tally::new();
    for i in 0..s.trials {
        let n = n_for(s, i, 4)?;
        let v = random(n, 3, instance_seed(s.seed, i))?;
        let report = check_upper_bounds(&fstar_matrix(&v)?, refs)?;
        tally.record(report.passed(), || {
            let bad: Vec<usize> = report
                .rows
                .iter()
                .filter(|r| !r.holds())
                .map(|r| r.s)
                .collect();
            config_witness(&v, bad, "support sizes s where a bound fails")
        });
    }
    Ok(tally.finish(c, format!("rank 3, n {}..={}", s.n_min, s.n_max)))
}

fn g_identities(s: &Settings) -> Result<CheckResult> {
    let c = Criterion::GIdentities;
    let mut tally = Tally::new();
    for i in 0..s.trials {
        let rank = 3 + i % 2;
        let n = n_for(s, i, rank + 2)?;
        let v = random(n, rank, instance_seed(s.seed, 2 * i))?;
        let w = random(n, rank, instance_seed(s.seed, 2 * i + 1))?;
        let (pv, pw) = (Profile::of(&v)?, Profile::of(&w)?);
        let g = g_between(&pv, &pw)?;
        let back = g_between(&pw, &pv)?;
        let ok = g.is_skew_symmetric()
            && back == g.negated()
            && reconstruct_f_diff(&g) == &pw.f.polynomial() - &pv.f.polynomial()
            && reconstruct_fstar_diff(&g) == &pw.fstar.polynomial() - &pv.fstar.polynomial();
        tally.record(ok, || pair_witness(&v, &w, format!("g =\n{}", g.to_text())));
    }
    Ok(tally.finish(c, format!("ranks 3-4, n {}..={}", s.n_min, s.n_max)))
}

fn formulas_ok(outcome: &MotionOutcome<Rational>) -> Result<bool> {
    Ok(verify_mutation_formulas(&outcome.path, &outcome.events)?.passed())
}

/// Path independence, or the mutation formulas, on a direct path and on a path through a third configuration.
fn motion_checks(s: &Settings, formulas: bool) -> Result<CheckResult> {
    let c = if formulas {
        Criterion::MutationFormulas
    } else {
        Criterion::PathIndependence
    };
    let mut tally = Tally::new();
    let mut events = 0;
    for i in 0..s.trials {
        let n = n_for(s, i, 4)?;
        let v = random(n, 3, instance_seed(s.seed, 3 * i))?;
        let w = random(n, 3, instance_seed(s.seed, 3 * i + 1))?;
        let via = random(n, 3, instance_seed(s.seed, 3 * i + 2))?;
        let direct = g_via_motion(&v, &w, instance_seed(s.seed, i))?;
        let first = g_via_motion(&v, &via, instance_seed(s.seed, i + 1))?;
        let second = g_via_motion(&via, &w, instance_seed(s.seed, i + 2))?;
        events += direct.events.len() + first.events.len() + second.events.len();
        let ok = if formulas {
            formulas_ok(&direct)? && formulas_ok(&first)? && formulas_ok(&second)?
        } else {
            let expected = g_between(&Profile::of(&v)?, &Profile::of(&w)?)?;
            direct.g == expected && first.g.try_add(&second.g)? == expected
        };
        tally.record(ok, || {
            pair_witness(
                &v,
                &w,
                format!("intermediate:\n{}", write_configuration(&via)),
            )
        });
    }
    Ok(tally.finish(
        c,
        format!("rank 3, n {}..={}, {events} events", s.n_min, s.n_max),
    ))
}

fn g_bounds(s: &Settings, refs: &References) -> Result<CheckResult> {
    let c = Criterion::GBounds;
    let mut tally = Tally::new();
    for i in 0..s.trials {
        let n = n_for(s, i, 4)?;
        let v = random(n, 3, instance_seed(s.seed, i))?;
        let report = check_bounds(&v, refs)?;
        tally.record(report.passed(), || {
            let bad = report
                .rows
                .iter()
                .filter(|r| !r.passed())
                .map(|r| r.k)
                .collect();
            config_witness(&v, bad, "values of k where a bound fails")
        });
    }
    let top = s.n_max.max(12);
    for n in 4..=top {
        let v = cocyclic::<Rational>(n)?;
        let report = check_bounds(&v, refs)?;
        let ok = report.passed()
            && report.coneighborly
            && report.rows.iter().all(|r| r.equality_ok == Some(true));
        tally.record(ok, || {
            config_witness(&v, Vec::new(), "cocyclic equality rows")
        });
    }
    Ok(tally.finish(
        c,
        format!("rank 3, n {}..={}, cocyclic n 4..={top}", s.n_min, s.n_max),
    ))
}

fn gale_antisymmetry(s: &Settings) -> Result<CheckResult> {
    let c = Criterion::GaleAntisymmetry;
    let mut tally = Tally::new();
    for i in 0..s.trials {
        let n = n_for(s, i, 5)?;
        let v = random(n, 3, instance_seed(s.seed, 2 * i))?;
        let w = random(n, 3, instance_seed(s.seed, 2 * i + 1))?;
        let ok = check_gale_antisymmetry(&v, &w)?;
        tally.record(ok, || {
            pair_witness(&v, &w, "g(V -> W) differs from -g(V* -> W*) transposed")
        });
    }
    Ok(tally.finish(c, format!("rank 3, n {}..={}", s.n_min, s.n_max)))
}

/// Minimum number of axis positions at which the k-arc identities are checked.
pub const MIN_AXIS_SAMPLES: usize = 5;

fn karc_checks(s: &Settings, refs: &References) -> Result<CheckResult> {
    let c = Criterion::KArcs;
    let mut tally = Tally::new();
    let mut signs = Vec::new();
    let mut transitions = 0;
    for i in 0..s.trials {
        let n = n_for(s, i, 5)?;
        let input = random_cylinder(n, instance_seed(s.seed, i))?;
        let pair = lift(&input)?;
        let special = verify_special_pair(&pair)?;
        let report = transition_scan(&pair, refs)?;
        transitions += report.transitions.len();
        signs.push(report.infinity_sign());
        let ok = special.passed() && report.passed() && report.samples.len() >= MIN_AXIS_SAMPLES;
        tally.record(ok, || {
            let bad: Vec<usize> = report
                .transitions
                .iter()
                .filter(|t| !t.ok)
                .flat_map(|t| t.triple)
                .collect();
            Witness {
                document: Some(write_cylinder(&input)),
                indices: bad,
                note: format!("special pair {special:?}; failing transition triples listed"),
            }
        });
    }
    let sign = match signs.first().copied().flatten() {
        Some(first) if signs.iter().all(|&x| x == Some(first)) => match first {
            Sign::Negative => "(k+1)n - 3C(k+2,2)",
            _ => "(k+1)n + 3C(k+2,2)",
        },
        _ => "inconsistent",
    };
    Ok(tally.finish(
        c,
        format!(
            "n {}..={}, {transitions} transitions, lambda_k at both ends of the axis = {sign}",
            s.n_min, s.n_max
        ),
    ))
}

fn closed_form(s: &Settings) -> Result<CheckResult> {
    let c = Criterion::ClosedForm;
    let mut tally = Tally::new();
    for row in closed_form_rows(s.n_min as u64..=s.n_max as u64) {
        tally.record(row.holds(), || Witness {
            document: None,
            indices: vec![row.n as usize],
            note: format!("Y = {}, C(n,4) - X(n) = {}", row.y, row.binomial_minus_x),
        });
    }
    Ok(tally.finish(c, format!("n {}..={}", s.n_min, s.n_max)))
}

/// Standard errors allowed between the sample mean and the expectation.
pub const WENDEL_TOLERANCE: f64 = 4.0;

fn random_crossings(s: &Settings) -> Result<CheckResult> {
    let c = Criterion::Wendel;
    let mut tally = Tally::new();
    let mut parts = Vec::new();
    for n in s.n_min.max(4)..=s.n_max {
        let est = wendel_mc(n, s.trials, instance_seed(s.seed, n))?;
        parts.push(format!(
            "n={n}: mean {:.4} (se {:.4}) vs {:.4}",
            est.mean, est.std_error, est.expected
        ));
        tally.record(est.within(WENDEL_TOLERANCE), || Witness {
            document: None,
            indices: vec![n],
            note: format!(
                "mean {} standard error {} expected {}",
                est.mean, est.std_error, est.expected
            ),
        });
    }
    Ok(tally.finish(c, format!("{} trials; {}", s.trials, parts.join("; "))))
}

fn fstar_from_f(s: &Settings) -> Result<CheckResult> {
    let c = Criterion::FStarFromF;
    let mut tally = Tally::new();
    for i in 0..s.trials {
        let rank = 3 + i % 2;
        let n = n_for(s, i, rank + 1)?;
        let v = random(n, rank, instance_seed(s.seed, i))?;
        tally.record(check_fstar_from_f(&v)?, || {
            config_witness(&v, Vec::new(), "f* differs from its f-expression")
        });
    }
    Ok(tally.finish(c, format!("ranks 3-4, n {}..={}", s.n_min, s.n_max)))
}

/// Checks of a single user-supplied configuration.
pub fn verify_configuration(v: &Config, refs: &References) -> Result<Report> {
    let mut checks = Vec::new();
    let single =
        |name: &str, statement: &str, passed: bool, detail: String, witness: Option<Witness>| {
            CheckResult {
                name: name.into(),
                statement: statement.into(),
                passed,
                instances: 1,
                detail,
                witness: if passed { None } else { witness },
                seconds: None,
            }
        };
    if let Some(subset) = v.dependent_subset() {
        checks.push(single(
            "general-position",
            "every rank-sized subset is linearly independent",
            false,
            format!("columns {subset:?} are dependent"),
            Some(config_witness(v, subset, "dependent columns")),
        ));
        return Ok(Report { checks });
    }
    checks.push(single(
        "general-position",
        "every rank-sized subset is linearly independent",
        true,
        String::new(),
        None,
    ));
    let f = f_matrix(v)?;
    checks.push(single(
        "antipodal-symmetry",
        "f_{s,t} = f_{s,n-s-t}",
        f.is_antipodal_symmetric(),
        String::new(),
        Some(config_witness(v, Vec::new(), f.to_text())),
    ));
    let identity = check_fstar_from_f(v)?;
    checks.push(single(
        Criterion::FStarFromF.name(),
        Criterion::FStarFromF.statement(),
        identity,
        String::new(),
        Some(config_witness(
            v,
            Vec::new(),
            "f* differs from its f-expression",
        )),
    ));
    if v.rank() != 3 || v.n() < 4 {
        return Ok(Report { checks });
    }
    let n = v.n();
    let fs = fstar_matrix(v)?;
    let lhs = 2 * fs.get(4, 0) + 2 * fs.get(4, 1) + fs.get(4, 2);
    checks.push(single(
        Criterion::QuadrupleIdentity.name(),
        Criterion::QuadrupleIdentity.statement(),
        lhs == 2 * binomial(n as i64, 4),
        format!("2 x left side {lhs}"),
        Some(config_witness(v, Vec::new(), "identity fails")),
    ));
    let count = crossing_count(v)?;
    let x = hill_x(n as u64);
    checks.push(single(
        Criterion::HillBound.name(),
        "crossings >= X(n)",
        count >= x && crossing_count_from_fstar(&fs) == count as i64,
        format!("{count} crossings, X(n) = {x}"),
        Some(config_witness(
            v,
            Vec::new(),
            format!("{count} crossings, X(n) = {x}"),
        )),
    ));
    let bounds_report = check_upper_bounds(&fs, refs)?;
    checks.push(single(
        Criterion::UpperBound.name(),
        Criterion::UpperBound.statement(),
        bounds_report.passed(),
        String::new(),
        Some(config_witness(
            v,
            bounds_report
                .rows
                .iter()
                .filter(|r| !r.holds())
                .map(|r| r.s)
                .collect(),
            "support sizes",
        )),
    ));
    let bounds = check_bounds(v, refs)?;
    checks.push(single(
        Criterion::GBounds.name(),
        Criterion::GBounds.statement(),
        bounds.passed(),
        format!("coneighborly: {}", is_coneighborly(v)?),
        Some(config_witness(
            v,
            bounds
                .rows
                .iter()
                .filter(|r| !r.passed())
                .map(|r| r.k)
                .collect(),
            "values of k",
        )),
    ));
    Ok(Report { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(c: Criterion, n_max: usize, trials: usize) -> CheckResult {
        let mut s = c.default_settings();
        s.n_max = n_max.max(s.n_min);
        s.trials = trials;
        run_criterion(c, &s, &References::new()).unwrap()
    }

    #[test]
    fn suites_cover_every_check_once() {
        let mut all: Vec<Criterion> = [
            Suite::Identities,
            Suite::Bounds,
            Suite::Motion,
            Suite::Karcs,
            Suite::ClosedForm,
            Suite::Wendel,
        ]
        .iter()
        .flat_map(|s| s.criteria())
        .collect();
        all.sort();
        assert_eq!(all, Criterion::ALL.to_vec());
        assert_eq!(Criterion::FStarFromF.number(), 13);
    }

    #[test]
    fn quick_runs_pass() {
        for (c, n, t) in [
            (Criterion::OracleEquivalence, 5, 3),
            (Criterion::QuadrupleIdentity, 6, 3),
            (Criterion::UpperBound, 6, 3),
            (Criterion::GIdentities, 6, 2),
            (Criterion::GaleAntisymmetry, 6, 1),
            (Criterion::ClosedForm, 30, 0),
            (Criterion::Wendel, 5, 500),
            (Criterion::FStarFromF, 6, 2),
        ] {
            let r = small(c, n, t);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn configuration_report_flags_dependence() {
        let refs = References::new();
        let good = make_random::<Rational>(6, 3, 5, 2).unwrap();
        assert!(verify_configuration(&good, &refs).unwrap().passed());
        let mut cols = good.columns().to_vec();
        cols[4] = cols[1]
            .iter()
            .map(|x| x * Rational::from_integer(2.into()))
            .collect();
        let bad = VectorConfiguration::new_unchecked(3, cols).unwrap();
        let report = verify_configuration(&bad, &refs).unwrap();
        assert!(!report.passed());
        let w = report.checks[0].witness.as_ref().unwrap();
        assert!(w.indices.contains(&1) && w.indices.contains(&4));
    }

    #[test]
    fn runs_are_deterministic() {
        let a = small(Criterion::Wendel, 4, 200);
        let b = small(Criterion::Wendel, 4, 200);
        assert_eq!(a.detail, b.detail);
    }
}
