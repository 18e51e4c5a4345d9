//! Verification suites. Each suite returns its reports in a fixed order, so the
//! output does not depend on the thread count.

use catalog::{e_class, orbits, unitary_labels, Family, MinimalModel, ModuleLabel, Report};
use characters::{
    branch_verify, char_n2, magic_check, series_report, ses_char_check, CharError, MagicIdentity, MagicSample,
    Method,
};
use clap::ValueEnum;
use fusion::{ring_check, sample_labels};
use rayon::prelude::*;
use series_core::{fmt_rat, int, Rational};

use crate::{CliConfig, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Branching,
    Ses,
    Magic,
    Ring,
    Crossmethod,
    Orbits,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Branching => "branching",
            Suite::Ses => "ses",
            Suite::Magic => "magic",
            Suite::Ring => "ring",
            Suite::Crossmethod => "crossmethod",
            Suite::Orbits => "orbits",
        }
    }
}

/// Reports of one suite run.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub model: (i64, i64),
    pub q_order: Rational,
    pub reports: Vec<Report>,
}

impl SuiteOutcome {
    /// True iff there is at least one report and all pass.
    pub fn passed(&self) -> bool {
        !self.reports.is_empty() && self.reports.iter().all(Report::passed)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite.name(),
            "u": self.model.0,
            "v": self.model.1,
            "q_order": fmt_rat(&self.q_order),
            "status": if self.passed() { "pass" } else { "fail" },
            "reports": self.reports.iter().map(Report::to_json_value).collect::<Vec<_>>(),
        })
    }
}

pub fn run_suite(cfg: &CliConfig, suite: Suite) -> Result<SuiteOutcome, CliError> {
    let reports = match suite {
        Suite::Branching => branching(cfg)?,
        Suite::Ses => ses(cfg)?,
        Suite::Magic => magic()?,
        Suite::Ring => ring(&cfg.m)?,
        Suite::Crossmethod => crossmethod(cfg)?,
        Suite::Orbits => orbit_census(&cfg.m)?,
    };
    Ok(SuiteOutcome { suite, model: (cfg.m.u, cfg.m.v), q_order: cfg.q_order.clone(), reports })
}

/// Runs `jobs` in parallel, keeping their order.
fn par_reports<T: Sync>(
    jobs: &[T],
    f: impl Fn(&T) -> Result<Vec<Report>, CharError> + Sync + Send,
) -> Result<Vec<Report>, CliError> {
    let parts: Result<Vec<Vec<Report>>, CharError> = jobs.par_iter().map(f).collect();
    Ok(parts?.into_iter().flatten().collect())
}

/// L for every r in every sector i ∈ 0..3 (characters and supercharacters)
/// when v = 1; L and D+ for every (r, s) in sectors i ∈ {0, 1} otherwise.
fn branching(cfg: &CliConfig) -> Result<Vec<Report>, CliError> {
    let m = &cfg.m;
    let mut jobs = Vec::new();
    for r in 1..m.u {
        let l = ModuleLabel::sl2(m, Family::L, r, 0, int(0), 0)?;
        if m.v == 1 {
            for i in 0..4 {
                for sup in [false, true] {
                    jobs.push((l.clone(), i, sup));
                }
            }
            continue;
        }
        for i in 0..2 {
            jobs.push((l.clone(), i, false));
        }
        for s in 1..m.v {
            let d = ModuleLabel::sl2(m, Family::Dplus, r, s, int(0), 0)?;
            for i in 0..2 {
                jobs.push((d.clone(), i, false));
            }
        }
    }
    par_reports(&jobs, |(l, i, sup)| branch_verify(m, l, *i, *sup, &cfg.q_order, cfg.y_window))
}

/// Every atypical relaxed label E± with p at λ_{r,s} or λ_{u−r,v−s}, i ∈ {0, 1}.
pub fn ses_labels(m: &MinimalModel) -> Vec<ModuleLabel> {
    let mut out = Vec::new();
    for r in 1..m.u {
        for s in 1..m.v {
            for p in [m.lambda(r, s), m.lambda(m.u - r, m.v - s)] {
                for i in 0..2 {
                    if let Ok(l) = e_class(m, i, p.clone() + int(i), r, s) {
                        if matches!(l.family, Family::Eplus | Family::Eminus) && !out.contains(&l) {
                            out.push(l);
                        }
                    }
                }
            }
        }
    }
    out
}

fn ses(cfg: &CliConfig) -> Result<Vec<Report>, CliError> {
    if cfg.m.v < 2 {
        return Err(CliError::Guarded("relaxed modules exist only for v ≥ 2".into()));
    }
    let labels = ses_labels(&cfg.m);
    par_reports(&labels, |l| ses_char_check(&cfg.m, l, &cfg.q_order).map(|r| vec![r]))
}

/// In-region samples: five for each side of |a| = 1 plus the two
/// Appell-Lerch specializations.
pub fn magic_samples() -> Vec<MagicSample> {
    use MagicIdentity::*;
    vec![
        MagicSample::new(0.1, 0.4, 0.25, Magic),
        MagicSample::new(0.3, 0.5, 1.7, Magic),
        MagicSample::new(0.2, 0.5, -0.45, Magic),
        MagicSample::new(0.15, 0.3, 0.6, Magic),
        MagicSample::new(0.1, 0.6, -0.8, Magic),
        MagicSample::new(0.1, 2.0, 0.25, MagicPrimed),
        MagicSample::new(0.2, 3.0, 0.4, MagicPrimed),
        MagicSample::new(0.05, 5.0, -0.3, MagicPrimed),
        MagicSample::new(0.1, 1.5, 0.7, MagicPrimed),
        MagicSample::new(0.25, 2.5, -1.3, MagicPrimed),
        MagicSample::new(0.3, 0.5, 1.7, AlIdR),
        MagicSample::new(0.3, 0.5, 1.7, AlIdNs),
    ]
}

fn magic() -> Result<Vec<Report>, CliError> {
    Ok(magic_samples()
        .iter()
        .map(|s| magic_check(std::slice::from_ref(s), 60, 1e-9))
        .collect::<Result<Vec<_>, _>>()?)
}

/// Exhaustive exact ring for v = 1; Grothendieck and exact rings on a
/// momentum window for v ≥ 2.
fn ring(m: &MinimalModel) -> Result<Vec<Report>, CliError> {
    if m.v == 1 {
        let labels = unitary_labels(m.u)?;
        return Ok(vec![ring_check(m, &labels, true)]);
    }
    let labels = sample_labels(m, &m.t())?;
    Ok(vec![ring_check(m, &labels, false), ring_check(m, &labels, true)])
}

/// Labels whose characters every route covers.
pub fn crossmethod_labels(m: &MinimalModel) -> Result<Vec<ModuleLabel>, CliError> {
    if m.v == 1 {
        return Ok(unitary_labels(m.u)?);
    }
    let mut out = Vec::new();
    for r in 1..m.u {
        for i in 0..2 {
            out.push(ModuleLabel::n2_l(m, i, m.lambda(r, 0) + int(i), r)?);
            for s in 1..m.v {
                out.push(ModuleLabel::n2(m, Family::Dplus, i, m.lambda(r, s) + int(i), r, s)?);
                out.push(ModuleLabel::n2(m, Family::Dminus, i, -m.lambda(r, s) + int(i), r, s)?);
            }
        }
    }
    Ok(out)
}

/// Appell-Lerch against residue and spectral-flow transport; against the
/// resolution when k < 0, and the resolution's divergence guard when k > 0.
fn crossmethod(cfg: &CliConfig) -> Result<Vec<Report>, CliError> {
    let m = &cfg.m;
    let n = &cfg.q_order;
    let labels = crossmethod_labels(m)?;
    let negative = m.k() < int(0);
    par_reports(&labels, |l| {
        let name = vec![l.to_string()];
        let al = char_n2(m, l, Method::AppellLerch, false, n)?;
        let mut out = Vec::new();
        for (tag, meth) in [("residue-eg", Method::ResidueEG), ("sflow", Method::SpectralFlowTransport)] {
            let other = char_n2(m, l, meth, false, n)?;
            out.push(series_report(&format!("crossmethod:{tag}"), name.clone(), &al, &other, n));
        }
        match char_n2(m, l, Method::Resolution, false, n) {
            Ok(res) if negative => out.push(series_report("crossmethod:resolution", name.clone(), &al, &res, n)),
            Err(CharError::DivergentResolution(_)) if !negative => {
                out.push(Report::new("crossmethod:resolution-guard", name.clone(), fmt_rat(n), None))
            }
            Ok(_) => out.push(Report::new(
                "crossmethod:resolution-guard",
                name.clone(),
                fmt_rat(n),
                Some(serde_json::json!({ "error": "resolution converged for k > 0" })),
            )),
            Err(e) => return Err(e),
        }
        Ok(out)
    })
}

/// Known orbit lengths of the σ^{1/2} action.
pub fn expected_orbit_lengths(u: i64) -> Option<Vec<usize>> {
    match u {
        4 => Some(vec![8, 8, 8]),
        5 => Some(vec![20, 20]),
        6 => Some(vec![12, 12, 12, 12, 6, 6]),
        _ => None,
    }
}

fn orbit_census(m: &MinimalModel) -> Result<Vec<Report>, CliError> {
    if m.v != 1 {
        return Err(CliError::Guarded("the orbit census is defined for v = 1 only".into()));
    }
    let u = m.u;
    let os = orbits(u)?;
    let mut lengths: Vec<usize> = os.iter().map(|o| o.length).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    let total: usize = lengths.iter().sum();
    let labels: Vec<String> = os.iter().map(|o| o.representative.to_string()).collect();
    let want_total = (2 * u * (u - 1)) as usize;
    let mut reports = vec![Report::new(
        "orbits:total",
        labels.clone(),
        "none",
        (total != want_total).then(|| serde_json::json!({ "total": total, "expected": want_total })),
    )];
    if let Some(want) = expected_orbit_lengths(u) {
        reports.push(Report::new(
            "orbits:lengths",
            labels,
            "none",
            (lengths != want).then(|| serde_json::json!({ "lengths": lengths, "expected": want })),
        ));
    }
    Ok(reports)
}
