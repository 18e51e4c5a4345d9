//! Genuine (not merely Grothendieck) fusion rules: those of L with anything,
//! and the conjectural E_{1,1} × E rule producing staggered modules S.

use catalog::{canonical_label, e_class, Family, GrothVector, MinimalModel, ModuleLabel};
use series_core::{int, Rational};

use crate::coeff::n;
use crate::{fuse_unitary, groth_fuse_n2, FusionError, FusionResult};

/// Representative of a staggered label: S^{[i]}_{p;r,v−1} ≅ S^{[i−2]}_{p−t;u−r,0},
/// both having the same projective sl2 preimage. Other labels pass through
/// `canonical_label`.
pub fn staggered_rep(m: &MinimalModel, l: &ModuleLabel) -> Result<ModuleLabel, FusionError> {
    if l.family == Family::Staggered && l.s == m.v - 1 {
        return Ok(ModuleLabel::n2(m, Family::Staggered, l.i - 2, &l.p - m.t(), m.u - l.r, 0)?);
    }
    Ok(canonical_label(m, l)?)
}

fn no_rule(a: &ModuleLabel, b: &ModuleLabel) -> FusionError {
    FusionError::NoKnownExactRule(format!("{a} x {b}; only the Grothendieck product is known"))
}

/// Exact fusion product for the pairs with a known rule: L × L, L × E, L × D±
/// and E_{1,1} × E with both factors typical. The last one is conjectural.
pub fn fuse_exact(m: &MinimalModel, a: &ModuleLabel, b: &ModuleLabel) -> Result<FusionResult, FusionError> {
    if m.v == 1 {
        return fuse_unitary(m, a, b);
    }
    let grothendieck = groth_fuse_n2(m, a, b)?;
    let (a, b) = (canonical_label(m, a)?, canonical_label(m, b)?);
    let (x, y) = if a.family == Family::L { (&a, &b) } else { (&b, &a) };
    if x.family == Family::L {
        let exact = l_times(m, x, y).ok_or_else(|| no_rule(&a, &b))??;
        return Ok(FusionResult { exact: Some(exact), grothendieck, conjectural: false });
    }
    if a.family == Family::ETypical && b.family == Family::ETypical {
        let (x, y) = if (a.r, a.s) == (1, 1) { (&a, &b) } else { (&b, &a) };
        if (x.r, x.s) == (1, 1) {
            let exact = e11_times(m, x, y)?;
            return Ok(FusionResult { exact: Some(exact), grothendieck, conjectural: true });
        }
    }
    Err(no_rule(&a, &b))
}

/// ⊕ N^{(u) r″}_{r,r′} X^{[i+i′]}_{p+p′; r″, s′} for X of family L, E or D±.
fn l_times(m: &MinimalModel, l: &ModuleLabel, y: &ModuleLabel) -> Option<Result<GrothVector, FusionError>> {
    if !matches!(
        y.family,
        Family::L | Family::Dplus | Family::Dminus | Family::ETypical | Family::Eplus | Family::Eminus
    ) {
        return None;
    }
    let go = || -> Result<GrothVector, FusionError> {
        let (i, p) = (l.i + y.i, &l.p + &y.p);
        let mut g = GrothVector::new();
        for r2 in 1..m.u {
            let k = n(m.u, r2, l.r, y.r);
            if k == 0 {
                continue;
            }
            let z = match y.family {
                Family::ETypical | Family::Eplus | Family::Eminus => e_class(m, i, p.clone(), r2, y.s)?,
                fam => ModuleLabel::n2(m, fam, i, p.clone(), r2, y.s)?,
            };
            g.push(canonical_label(m, &z)?, k);
        }
        Ok(g)
    };
    Some(go())
}

/// The E_{1,1} × E_{r,s} rule. Each lattice condition on p + p′ − i − i′ that
/// holds contributes one candidate sum; coincident conditions keep only the
/// summands common to all candidates. Relaxed summands with s′ ∈ {0, v} are
/// dropped.
fn e11_times(m: &MinimalModel, x: &ModuleLabel, y: &ModuleLabel) -> Result<GrothVector, FusionError> {
    let (u, v, t) = (m.u, m.v, m.t());
    let (r, s) = (y.r, y.s);
    let (i, p) = (x.i + y.i, &x.p + &y.p);
    let w = &p - int(i);
    let on = |lam: Rational| ((&w - lam) / int(2)).is_integer();
    let rel = |di: i64, dp: i64, s2: i64| -> Result<Option<ModuleLabel>, FusionError> {
        if !(1..v).contains(&s2) {
            return Ok(None);
        }
        let l = e_class(m, i + di, &p + &t * int(dp), r, s2)?;
        Ok(Some(canonical_label(m, &l)?))
    };
    let stag = |di: i64, dp: i64, r2: i64, s2: i64| -> Result<Option<ModuleLabel>, FusionError> {
        let l = ModuleLabel::n2(m, Family::Staggered, i + di, &p + &t * int(dp), r2, s2)?;
        Ok(Some(staggered_rep(m, &l)?))
    };
    let sum = |parts: Vec<Option<ModuleLabel>>| -> GrothVector {
        parts.into_iter().flatten().map(|l| (l, 1)).collect()
    };
    let mut cands = Vec::new();
    if on(m.lambda(r, s - 1)) {
        cands.push(sum(vec![stag(0, 0, r, s - 1)?, rel(2, 1, s)?, rel(0, 0, s + 1)?]));
    }
    if on(m.lambda(u - r, v - s - 1)) {
        cands.push(sum(vec![stag(0, 0, u - r, v - s - 1)?, rel(2, 1, s)?, rel(0, 0, s - 1)?]));
    }
    if on(m.lambda(r, s + 1)) {
        cands.push(sum(vec![stag(2, 1, r, s)?, rel(-2, -1, s)?, rel(0, 0, s - 1)?]));
    }
    if on(m.lambda(u - r, v - s + 1)) {
        cands.push(sum(vec![stag(2, 1, u - r, v - s)?, rel(-2, -1, s)?, rel(0, 0, s + 1)?]));
    }
    if cands.is_empty() {
        return Ok(sum(vec![rel(-2, -1, s)?, rel(2, 1, s)?, rel(0, 0, s - 1)?, rel(0, 0, s + 1)?]));
    }
    let mut out = cands[0].clone();
    for c in &cands[1..] {
        out = out
            .terms
            .iter()
            .map(|(l, &k)| (l.clone(), k.min(c.terms.get(l).copied().unwrap_or(0))))
            .collect();
    }
    Ok(out)
}
