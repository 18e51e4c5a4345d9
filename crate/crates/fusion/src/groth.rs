//! Grothendieck fusion rules. Both rule sets are stated for L, relaxed E and
//! D+ inputs; everything else is reduced to those by bilinearity, conjugation
//! or the D− isomorphisms.

use catalog::{
    canonical_label, coset_of_sl2, e_class, groth_decompose, twist_label, Algebra, Family, GrothVector,
    MinimalModel, ModuleLabel,
};
use series_core::{int, Rational};

use crate::coeff::n;
use crate::{fuse_unitary, FusionError};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Kind {
    L,
    E,
    D,
}

fn kind(l: &ModuleLabel) -> Result<Kind, FusionError> {
    match l.family {
        Family::L => Ok(Kind::L),
        Family::ETypical | Family::Eplus | Family::Eminus => Ok(Kind::E),
        Family::Dplus => Ok(Kind::D),
        _ => Err(FusionError::LabelOutOfRange(format!("{l}: no Grothendieck rule for this family"))),
    }
}

/// Grothendieck product of two N=2 labels of M(u, v), as a sum of irreducibles.
///
/// Composite inputs are first split into composition factors. For v = 1 this
/// is the unitary fusion product.
pub fn groth_fuse_n2(m: &MinimalModel, a: &ModuleLabel, b: &ModuleLabel) -> Result<GrothVector, FusionError> {
    if m.v == 1 {
        return Ok(fuse_unitary(m, a, b)?.grothendieck);
    }
    for l in [a, b] {
        l.validate(m)?;
        if l.algebra != Algebra::N2 {
            return Err(FusionError::LabelOutOfRange(format!("{l} is not an N=2 label")));
        }
    }
    let split = |l: &ModuleLabel| -> Result<GrothVector, FusionError> {
        Ok(if l.family == Family::Staggered { groth_decompose(m, l)? } else { GrothVector::single(l.clone()) })
    };
    let (ga, gb) = (split(a)?, split(b)?);
    let mut out = GrothVector::new();
    for (x, &kx) in &ga.terms {
        for (y, &ky) in &gb.terms {
            out = out.add(&n2_pair(m, x, y)?.scale(kx * ky));
        }
    }
    Ok(out)
}

/// Conjugate of every summand.
pub(crate) fn conj_vec(m: &MinimalModel, g: &GrothVector) -> Result<GrothVector, FusionError> {
    Ok(g.map_labels(|l| Ok(GrothVector::single(twist_label(m, l, 0, true)?)))?)
}

fn n2_pair(m: &MinimalModel, x: &ModuleLabel, y: &ModuleLabel) -> Result<GrothVector, FusionError> {
    let dm = |l: &ModuleLabel| l.family == Family::Dminus;
    let dp = |l: &ModuleLabel| l.family == Family::Dplus;
    if dm(x) || dm(y) {
        if dp(x) || dp(y) {
            // D+ × D−: rewrite the D− through its isomorphism to a D+ or L label.
            let (x, y) = (catalog::iso_rep(m, x)?, catalog::iso_rep(m, y)?);
            return n2_pair(m, &x, &y);
        }
        let (cx, cy) = (twist_label(m, x, 0, true)?, twist_label(m, y, 0, true)?);
        return conj_vec(m, &n2_pair(m, &cx, &cy)?);
    }
    let (x, y) = if kind(x)? <= kind(y)? { (x, y) } else { (y, x) };
    let (u, v, t) = (m.u, m.v, m.t());
    let (i, p) = (x.i + y.i, &x.p + &y.p);
    let (r, s, r1, s1) = (x.r, x.s, y.r, y.s);
    let mut g = GrothVector::new();
    let e = |g: &mut GrothVector, k: i64, di: i64, sign: i64, r2: i64, s2: i64| -> Result<(), FusionError> {
        if k != 0 {
            let l = e_class(m, i + di, &p + &t * int(sign), r2, s2)?;
            g.push(canonical_label(m, &l)?, k);
        }
        Ok(())
    };
    for r2 in 1..u {
        let nu = n(u, r2, r, r1);
        if nu == 0 {
            continue;
        }
        match (kind(x)?, kind(y)?) {
            (Kind::L, Kind::L) => g.push(ModuleLabel::n2_l(m, i, p.clone(), r2)?, nu),
            (Kind::L, Kind::E) => e(&mut g, nu, 0, 0, r2, s1)?,
            (Kind::L, Kind::D) => g.push(ModuleLabel::n2(m, Family::Dplus, i, p.clone(), r2, s1)?, nu),
            (Kind::E, Kind::E) => {
                for s2 in 1..v {
                    e(&mut g, nu * n(v, s2, s, s1), -2, -1, r2, s2)?;
                    e(&mut g, nu * n(v, s2, s, s1), 2, 1, r2, s2)?;
                    e(&mut g, nu * (n(v, s2, s, s1 - 1) + n(v, s2, s, s1 + 1)), 0, 0, r2, s2)?;
                }
            }
            (Kind::E, Kind::D) => {
                for s2 in 1..v {
                    e(&mut g, nu * n(v, s2, s, s1 + 1), 0, 0, r2, s2)?;
                    e(&mut g, nu * n(v, s2, s, s1), -2, -1, r2, s2)?;
                }
            }
            (Kind::D, Kind::D) => {
                let (a, b) = if s + s1 < v { (s, s1) } else { (s + 1, s1 + 1) };
                for s2 in 1..v {
                    e(&mut g, nu * n(v, s2, a, b), -2, -1, r2, s2)?;
                }
                let d = if s + s1 < v {
                    ModuleLabel::n2(m, Family::Dplus, i, p.clone(), r2, s + s1)?
                } else {
                    ModuleLabel::n2(m, Family::Dplus, i - 2, &p - &t, u - r2, s + s1 - v + 1)?
                };
                g.push(d, nu);
            }
            _ => unreachable!("pairs are ordered L < E < D"),
        }
    }
    // Atypical relaxed summands are replaced by their composition factors.
    Ok(g.map_labels(|l| groth_decompose(m, l))?)
}

/// sl2 relaxed label of weight `lambda` and conformal data (r, s): E± on the
/// two atypical classes, typical otherwise.
fn sl2_e(m: &MinimalModel, lambda: &Rational, r: i64, s: i64, flow: i64) -> Result<ModuleLabel, FusionError> {
    let on = |w: Rational| (lambda - w) / int(2);
    let fam = if on(m.lambda(r, s)).is_integer() {
        Family::Eplus
    } else if on(m.lambda(m.u - r, m.v - s)).is_integer() {
        Family::Eminus
    } else {
        Family::ETypical
    };
    Ok(canonical_label(m, &ModuleLabel::sl2(m, fam, r, s, lambda.clone(), flow)?)?)
}

/// Grothendieck product of two sl2 labels of the admissible level k = u/v − 2,
/// with spectral-flow images kept in the `flow` field.
///
/// D−_{r,s} enters as σ⁻¹(D+_{u−r,v−1−s}), or σ⁻¹(L_{u−r,0}) when s = v − 1.
pub fn groth_fuse_sl2(m: &MinimalModel, a: &ModuleLabel, b: &ModuleLabel) -> Result<GrothVector, FusionError> {
    for l in [a, b] {
        l.validate(m)?;
        if l.algebra != Algebra::SL2 {
            return Err(FusionError::LabelOutOfRange(format!("{l} is not an sl2 label")));
        }
    }
    let unflip = |l: &ModuleLabel| -> Result<ModuleLabel, FusionError> {
        if l.family != Family::Dminus {
            return Ok(l.clone());
        }
        let (u, v) = (m.u, m.v);
        Ok(if l.s == v - 1 {
            ModuleLabel::sl2(m, Family::L, u - l.r, 0, int(0), l.flow - 1)?
        } else {
            ModuleLabel::sl2(m, Family::Dplus, u - l.r, v - 1 - l.s, int(0), l.flow - 1)?
        })
    };
    let (x, y) = (unflip(a)?, unflip(b)?);
    let (x, y) = if kind(&x)? <= kind(&y)? { (x, y) } else { (y, x) };
    let (u, v, k) = (m.u, m.v, m.k());
    let f = x.flow + y.flow;
    let (r, s, r1, s1) = (x.r, x.s, y.r, y.s);
    let mut g = GrothVector::new();
    for r2 in 1..u {
        let nu = n(u, r2, r, r1);
        if nu == 0 {
            continue;
        }
        let e = |g: &mut GrothVector, c: i64, lam: Rational, s2: i64, df: i64| -> Result<(), FusionError> {
            if c != 0 {
                g.push(sl2_e(m, &lam, r2, s2, f + df)?, c);
            }
            Ok(())
        };
        match (kind(&x)?, kind(&y)?) {
            (Kind::L, Kind::L) => g.push(ModuleLabel::sl2(m, Family::L, r2, 0, int(0), f)?, nu),
            (Kind::L, Kind::E) => e(&mut g, nu, &y.lambda + int(r - 1), s1, 0)?,
            (Kind::L, Kind::D) => g.push(ModuleLabel::sl2(m, Family::Dplus, r2, s1, int(0), f)?, nu),
            (Kind::E, Kind::E) => {
                let sum = &x.lambda + &y.lambda;
                for s2 in 1..v {
                    let c = nu * n(v, s2, s, s1);
                    e(&mut g, c, &sum - &k, s2, 1)?;
                    e(&mut g, c, &sum + &k, s2, -1)?;
                    e(&mut g, nu * (n(v, s2, s, s1 - 1) + n(v, s2, s, s1 + 1)), sum.clone(), s2, 0)?;
                }
            }
            (Kind::E, Kind::D) => {
                // D_{r1,s1} × E_{λ; r,s}
                for s2 in 1..v {
                    e(&mut g, nu * n(v, s2, s1 + 1, s), &x.lambda + m.lambda(r1, s1), s2, 0)?;
                    e(&mut g, nu * n(v, s2, s1, s), &x.lambda + m.lambda(r1, s1 + 1), s2, 1)?;
                }
            }
            (Kind::D, Kind::D) => {
                let (a, b) = if s + s1 < v { (s, s1) } else { (s + 1, s1 + 1) };
                for s2 in 1..v {
                    e(&mut g, nu * n(v, s2, a, b), m.lambda(r2, s + s1 + 1), s2, 1)?;
                }
                let d = if s + s1 < v {
                    ModuleLabel::sl2(m, Family::Dplus, r2, s + s1, int(0), f)?
                } else {
                    ModuleLabel::sl2(m, Family::Dplus, u - r2, s + s1 - v + 1, int(0), f + 1)?
                };
                g.push(d, nu);
            }
            _ => unreachable!("pairs are ordered L < E < D"),
        }
    }
    Ok(g)
}

/// Image of an sl2 Grothendieck vector in the N=2 coset at (i, p), split
/// into irreducibles. (i, p) must lie on the weight lattice of every term.
pub fn push_sl2(m: &MinimalModel, g: &GrothVector, i: i64, p: &Rational) -> Result<GrothVector, FusionError> {
    Ok(g.map_labels(|l| groth_decompose(m, &coset_of_sl2(m, l, i, p.clone())?))?)
}
