//! Cross-route verifiers: the coset branching oracle and the exact-sequence check.

use catalog::{coset_of_sl2, Family, MinimalModel, ModuleLabel, Report};
use rayon::prelude::*;
use series_core::rational::ceil_i64;
use series_core::{fmt_rat, int, Rational, Series2};

use crate::n2::{char_n2, regime_for, residue_with, typical_series, Method};
use crate::sl2::Sl2Engine;
use crate::util::discrepancy;
use crate::CharError;

/// Decomposes ch[sl2] · ch-or-sch[ghost i] into Fock sectors |p| ≤ y_window and
/// compares each branching function with the Appell-Lerch character of the
/// dictionary label. One report per p.
pub fn branch_verify(
    m: &MinimalModel,
    sl2: &ModuleLabel,
    i: i64,
    sup: bool,
    n: &Rational,
    y_window: i64,
) -> Result<Vec<Report>, CharError> {
    if !matches!(sl2.family, Family::L | Family::Dplus | Family::Dminus) {
        return Err(CharError::RegimeMismatch(format!("{sl2}: branching is checked for L and D± only")));
    }
    let eng = Sl2Engine::new(m, sl2, regime_for(sl2.family))?;
    let cls = eng.weight_class() + int(i);
    let w = int(y_window);
    let start = ceil_i64(&((-&w - &cls) / int(2)));
    let mut ps = Vec::new();
    let mut k = start;
    loop {
        let p = &cls + int(2 * k);
        if p > w {
            break;
        }
        ps.push(p);
        k += 1;
    }
    ps.par_iter()
        .map(|p| {
            let lhs = residue_with(m, &eng, i, p, sup, n)?;
            let label = coset_of_sl2(m, sl2, i, p.clone())?;
            let rhs = char_n2(m, &label, Method::AppellLerch, sup, n)?;
            let kind = if sup { "branch_super" } else { "branch" };
            Ok(Report::new(
                kind,
                vec![sl2.to_string(), format!("GH:{i}"), format!("FOCK:{}", fmt_rat(p)), label.to_string()],
                fmt_rat(n),
                discrepancy(&lhs, &rhs, n),
            ))
        })
        .collect()
}

/// The relaxed closed form at an atypical point equals the sum of the
/// Appell-Lerch characters of its composition factors.
pub fn ses_char_check(m: &MinimalModel, label: &ModuleLabel, n: &Rational) -> Result<Report, CharError> {
    if !matches!(label.family, Family::Eplus | Family::Eminus) || m.v < 2 {
        return Err(CharError::RegimeMismatch(format!("{label} is not an atypical relaxed label")));
    }
    let lhs = typical_series(m, label.i, &label.p, label.r, label.s, false, n)?;
    let rhs = char_n2(m, label, Method::AppellLerch, false, n)?;
    Ok(Report::new("ses_char", vec![label.to_string()], fmt_rat(n), discrepancy(&lhs, &rhs, n)))
}

/// Report comparing two series to order `n`; the first differing coefficient
/// is recorded on failure.
pub fn series_report(check: &str, labels: Vec<String>, lhs: &Series2, rhs: &Series2, n: &Rational) -> Report {
    Report::new(check, labels, fmt_rat(n), discrepancy(lhs, rhs, n))
}
