use catalog::{canonical_label, Family, GrothVector, MinimalModel, ModuleLabel};

use crate::coeff::n;
use crate::{FusionError, FusionResult};

/// C^{[i]}_{p,r} × C^{[i′]}_{p′,r′} = ⊕ N^{(u) r″}_{r,r′} C^{[i+i′]}_{p+p′,r″}, canonicalized.
pub fn fuse_unitary(m: &MinimalModel, a: &ModuleLabel, b: &ModuleLabel) -> Result<FusionResult, FusionError> {
    if m.v != 1 {
        return Err(FusionError::LabelOutOfRange(format!("M({},{}) is not unitary", m.u, m.v)));
    }
    for l in [a, b] {
        l.validate(m)?;
        if l.family != Family::L {
            return Err(FusionError::LabelOutOfRange(format!("{l} is not a unitary N=2 label")));
        }
    }
    let mut g = GrothVector::new();
    for r2 in 1..m.u {
        let k = n(m.u, r2, a.r, b.r);
        if k != 0 {
            let l = ModuleLabel::n2_l(m, a.i + b.i, &a.p + &b.p, r2)?;
            g.push(canonical_label(m, &l)?, k);
        }
    }
    Ok(FusionResult { exact: Some(g.clone()), grothendieck: g, conjectural: false })
}
