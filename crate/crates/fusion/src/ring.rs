//! Ring-axiom checks on a finite label set. For v ≥ 2 the spectrum is
//! infinite, so triples whose intermediate products leave the momentum
//! window are counted as skipped rather than checked.

use catalog::{
    e_class, unitary_labels, CatalogError, Family, GrothVector, MinimalModel, ModuleLabel, Report,
};
use rayon::prelude::*;
use serde_json::{json, Value};
use series_core::{fmt_rat, int, rat, Rational};

use crate::groth::conj_vec;
use crate::{fuse_exact, groth_fuse_n2, staggered_rep, FusionError};

/// A small label set for ring checks: all unitary labels when v = 1;
/// otherwise L, D± and typical E labels in sectors i ∈ {0, 1} with the
/// momentum closest to zero and |p| ≤ `window`.
pub fn sample_labels(m: &MinimalModel, window: &Rational) -> Result<Vec<ModuleLabel>, FusionError> {
    if m.v == 1 {
        return Ok(unitary_labels(m.u)?);
    }
    let mut out = Vec::new();
    let near = |w: Rational, i: i64| -> Rational {
        // representative of w + i + 2Z closest to 0
        let x = w + int(i);
        let k = (&x / int(2)).round();
        x - k * int(2)
    };
    for i in 0..2 {
        for r in 1..m.u {
            out.push(ModuleLabel::n2_l(m, i, near(m.lambda(r, 0), i), r)?);
            for s in 1..m.v {
                out.push(ModuleLabel::n2(m, Family::Dplus, i, near(m.lambda(r, s), i), r, s)?);
                out.push(ModuleLabel::n2(m, Family::Dminus, i, near(-m.lambda(r, s), i), r, s)?);
                let typical = [rat(1, 3), rat(2, 3), rat(1, 5), rat(1, 7)]
                    .into_iter()
                    .map(|d| e_class(m, i, int(i) + d, r, s))
                    .find(|l| matches!(l, Ok(l) if l.family == Family::ETypical));
                if let Some(l) = typical {
                    out.push(catalog::canonical_label(m, &l?)?);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out.retain(|l| series_core::rational::abs(&l.p) <= *window);
    Ok(out)
}

/// `ring_check_windowed` with the window |p| ≤ 4t (unbounded for v = 1).
pub fn ring_check(m: &MinimalModel, labels: &[ModuleLabel], exact: bool) -> Report {
    ring_check_windowed(m, labels, exact, &(m.t() * int(4)))
}

enum Outcome {
    Pass,
    Skip,
    Fail(Value),
}

struct Ring<'a> {
    m: &'a MinimalModel,
    exact: bool,
    window: Option<Rational>,
}

impl Ring<'_> {
    /// None when no rule is known for the pair (exact mode only).
    fn prod(&self, a: &ModuleLabel, b: &ModuleLabel) -> Result<Option<GrothVector>, FusionError> {
        if !self.exact {
            return groth_fuse_n2(self.m, a, b).map(Some);
        }
        match fuse_exact(self.m, a, b) {
            Ok(r) => Ok(r.exact),
            Err(FusionError::NoKnownExactRule(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn vprod(&self, g: &GrothVector, h: &GrothVector) -> Result<Option<GrothVector>, FusionError> {
        let mut out = GrothVector::new();
        for (a, &ka) in &g.terms {
            for (b, &kb) in &h.terms {
                match self.prod(a, b)? {
                    Some(p) => out = out.add(&p.scale(ka * kb)),
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(out))
    }

    fn norm(&self, g: &GrothVector) -> Result<GrothVector, FusionError> {
        if self.exact {
            Ok(g.map_labels(|l| {
                staggered_rep(self.m, l).map(GrothVector::single).map_err(|e| match e {
                    FusionError::Catalog(c) => c,
                    other => CatalogError::Unsupported(other.to_string()),
                })
            })?)
        } else {
            Ok(g.iso_normalized(self.m)?)
        }
    }

    fn in_window(&self, g: &GrothVector) -> bool {
        match &self.window {
            None => true,
            Some(w) => g.terms.keys().all(|l| series_core::rational::abs(&l.p) <= *w),
        }
    }

    fn compare(&self, what: &str, names: &[&ModuleLabel], lhs: Option<GrothVector>, rhs: Option<GrothVector>) -> Outcome {
        let (Some(l), Some(r)) = (lhs, rhs) else { return Outcome::Skip };
        match (self.norm(&l), self.norm(&r)) {
            (Ok(nl), Ok(nr)) if nl == nr => Outcome::Pass,
            (Ok(nl), Ok(nr)) => Outcome::Fail(json!({
                "axiom": what,
                "labels": names.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                "lhs": nl.to_string(),
                "rhs": nr.to_string(),
            })),
            (Err(e), _) | (_, Err(e)) => self.error(what, names, e),
        }
    }

    fn error(&self, what: &str, names: &[&ModuleLabel], e: FusionError) -> Outcome {
        Outcome::Fail(json!({
            "axiom": what,
            "labels": names.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "error": e.to_string(),
        }))
    }

    fn pair(&self, a: &ModuleLabel, b: &ModuleLabel) -> Vec<Outcome> {
        let go = || -> Result<Vec<Outcome>, FusionError> {
            let ab = self.prod(a, b)?;
            let ba = self.prod(b, a)?;
            let mut out = vec![self.compare("commutativity", &[a, b], ab.clone(), ba)];
            let conj = |l: &ModuleLabel| catalog::twist_label(self.m, l, 0, true);
            let conj_of_product = match &ab {
                Some(g) => match conj_vec(self.m, g) {
                    Ok(c) => Some(c),
                    Err(FusionError::Catalog(CatalogError::Unsupported(_))) => None,
                    Err(e) => return Err(e),
                },
                None => None,
            };
            let product_of_conj = self.prod(&conj(a)?, &conj(b)?)?;
            out.push(self.compare("conjugation", &[a, b], conj_of_product, product_of_conj));
            Ok(out)
        };
        go().unwrap_or_else(|e| vec![self.error("pair", &[a, b], e)])
    }

    fn triple(&self, a: &ModuleLabel, b: &ModuleLabel, c: &ModuleLabel) -> Outcome {
        let go = || -> Result<Outcome, FusionError> {
            let (Some(ab), Some(bc)) = (self.prod(a, b)?, self.prod(b, c)?) else { return Ok(Outcome::Skip) };
            if !self.in_window(&ab) || !self.in_window(&bc) {
                return Ok(Outcome::Skip);
            }
            let lhs = self.vprod(&ab, &GrothVector::single(c.clone()))?;
            let rhs = self.vprod(&GrothVector::single(a.clone()), &bc)?;
            Ok(self.compare("associativity", &[a, b, c], lhs, rhs))
        };
        go().unwrap_or_else(|e| self.error("associativity", &[a, b, c], e))
    }
}

/// Checks the unit, commutativity, conjugation compatibility and
/// associativity on `labels`; products with a factor outside |p| ≤ `window`
/// (when v ≥ 2) are skipped and counted.
pub fn ring_check_windowed(m: &MinimalModel, labels: &[ModuleLabel], exact: bool, window: &Rational) -> Report {
    let ring = Ring { m, exact, window: (m.v > 1).then(|| window.clone()) };
    let mut outcomes: Vec<Outcome> = Vec::new();
    match ModuleLabel::n2_l(m, 0, int(0), 1) {
        Ok(vac) => {
            for a in labels {
                let got = ring.prod(&vac, a).map_err(|e| ring.error("unit", &[a], e));
                outcomes.push(match got {
                    Ok(g) => ring.compare("unit", &[a], g, Some(GrothVector::single(a.clone()))),
                    Err(o) => o,
                });
            }
        }
        Err(e) => outcomes.push(ring.error("unit", &[], e.into())),
    }
    let pairs: Vec<(usize, usize)> =
        (0..labels.len()).flat_map(|x| (x..labels.len()).map(move |y| (x, y))).collect();
    outcomes.extend(pairs.par_iter().flat_map_iter(|&(x, y)| ring.pair(&labels[x], &labels[y])).collect::<Vec<_>>());
    let n = labels.len();
    let triples: Vec<Outcome> = (0..n * n * n)
        .into_par_iter()
        .map(|k| ring.triple(&labels[k / (n * n)], &labels[(k / n) % n], &labels[k % n]))
        .collect();
    let checked = triples.iter().filter(|o| !matches!(o, Outcome::Skip)).count();
    let skipped = triples.len() - checked;
    outcomes.extend(triples);
    let first = outcomes.into_iter().find_map(|o| match o {
        Outcome::Fail(v) => Some(v),
        _ => None,
    });
    let summary = vec![
        format!("model=M({},{})", m.u, m.v),
        format!("mode={}", if exact { "exact" } else { "grothendieck" }),
        format!("labels={n}"),
        format!("triples_checked={checked}"),
        format!("triples_skipped={skipped}"),
        match &ring.window {
            Some(w) => format!("window=|p|<={}", fmt_rat(w)),
            None => "window=none".into(),
        },
    ];
    Report::new("ring", summary, "none", first)
}
