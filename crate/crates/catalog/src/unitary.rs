use std::collections::BTreeSet;

use series_core::int;

use crate::dictionary::{dictionary_unitary, HighestWeightData};
use crate::{Algebra, CatalogError, Family, MinimalModel, ModuleLabel};

/// Unique representative of a label's isomorphism class under label symmetries.
///
/// For v = 1 the coset label (i, p, r) is reduced by (i, p, r) ~ (i+2, p+u, u−r)
/// ~ (i, p+2u, r) to i ∈ {0, 1} and p ∈ [−r, 2u−r−1]. Typical E labels take the
/// lexicographically smaller of (r, s) and (u−r, v−s). Everything else is
/// already canonical.
pub fn canonical_label(m: &MinimalModel, label: &ModuleLabel) -> Result<ModuleLabel, CatalogError> {
    label.validate(m)?;
    match (label.algebra, label.family) {
        (Algebra::N2, Family::L) if m.v == 1 => {
            let (mut i, mut p, mut r) = (label.i.rem_euclid(4), label.p.clone(), label.r);
            if i >= 2 {
                i -= 2;
                p += int(m.u);
                r = m.u - r;
            }
            let period = int(2 * m.u);
            let shifted = &p + int(r);
            p = &shifted - (&shifted / &period).floor() * &period - int(r);
            ModuleLabel::n2(m, Family::L, i, p, r, 0)
        }
        (_, Family::ETypical) if (m.u - label.r, m.v - label.s) < (label.r, label.s) => {
            let mut out = label.clone();
            out.r = m.u - label.r;
            out.s = m.v - label.s;
            Ok(out)
        }
        _ => Ok(label.clone()),
    }
}

/// Applies conjugation (if requested) and then `half_flows` powers of σ^{1/2}.
///
/// On N=2 coset labels conjugation sends (i, p) ↦ (−i, −p) and swaps D± and
/// E±; σ^{1/2} sends (i, p) ↦ (i−1, p−1). On sl2 labels conjugation negates the
/// flow exponent and the weight, and `half_flows` must be even.
pub fn twist_label(
    m: &MinimalModel,
    label: &ModuleLabel,
    half_flows: i64,
    conjugate: bool,
) -> Result<ModuleLabel, CatalogError> {
    label.validate(m)?;
    let swap = |f: Family| match f {
        Family::Dplus => Family::Dminus,
        Family::Dminus => Family::Dplus,
        Family::Eplus => Family::Eminus,
        Family::Eminus => Family::Eplus,
        other => other,
    };
    if conjugate && label.family == Family::Staggered {
        return Err(CatalogError::Unsupported("conjugation of staggered labels".into()));
    }
    match label.algebra {
        Algebra::N2 => {
            let (mut fam, mut i, mut p) = (label.family, label.i, label.p.clone());
            if conjugate {
                fam = swap(fam);
                i = -i;
                p = -p;
            }
            i -= half_flows;
            p -= int(half_flows);
            let out = ModuleLabel::n2(m, fam, i, p, label.r, label.s)?;
            canonical_label(m, &out)
        }
        Algebra::SL2 => {
            if half_flows % 2 != 0 {
                return Err(CatalogError::Unsupported(
                    "sl2 labels admit integer spectral flows only".into(),
                ));
            }
            let (mut fam, mut flow, mut lambda) = (label.family, label.flow, label.lambda.clone());
            if conjugate {
                fam = swap(fam);
                flow = -flow;
                lambda = -lambda;
            }
            flow += half_flows / 2;
            let out = ModuleLabel::sl2(m, fam, label.r, label.s, lambda, flow)?;
            canonical_label(m, &out)
        }
        _ if half_flows == 0 && !conjugate => Ok(label.clone()),
        _ => Err(CatalogError::Unsupported(format!("no twist defined on {label}"))),
    }
}

/// The N=2 coset label C^{[i]}_{p} of an sl2 label, using
/// C^{[i]}_{p}(σ^ℓ M) = C^{[i+2ℓ]}_{p−ℓt}(M).
pub fn coset_of_sl2(
    m: &MinimalModel,
    sl2: &ModuleLabel,
    i: i64,
    p: series_core::Rational,
) -> Result<ModuleLabel, CatalogError> {
    if sl2.algebra != Algebra::SL2 {
        return Err(CatalogError::Unsupported(format!("{sl2} is not an sl2 label")));
    }
    let l = sl2.flow;
    let i = i + 2 * l;
    let p = p - m.t() * int(l);
    match sl2.family {
        Family::ETypical => crate::e_class(m, i, p, sl2.r, sl2.s),
        fam => ModuleLabel::n2(m, fam, i, p, sl2.r, sl2.s),
    }
}

/// One σ^{1/2}-orbit of canonical unitary labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub representative: ModuleLabel,
    pub length: usize,
    /// Whether the orbit contains the parity reversal of its members.
    pub parity_closed: bool,
    pub members: Vec<ModuleLabel>,
}

/// All canonical irreducible labels of M(u, 1); there are 2u(u−1) of them.
pub fn unitary_labels(u: i64) -> Result<Vec<ModuleLabel>, CatalogError> {
    let m = MinimalModel::new(u, 1)?;
    let mut out = Vec::new();
    for r in 1..u {
        for p in -r..=(2 * u - r - 1) {
            let i = (p - r + 1).rem_euclid(2);
            out.push(ModuleLabel::n2_l(&m, i, int(p), r)?);
        }
    }
    Ok(out)
}

/// Spectral-flow orbits of the irreducibles of M(u, 1).
pub fn orbits(u: i64) -> Result<Vec<Orbit>, CatalogError> {
    let m = MinimalModel::new(u, 1)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in unitary_labels(u)? {
        if seen.contains(&start) {
            continue;
        }
        let mut members = vec![start.clone()];
        let mut cur = twist_label(&m, &start, 1, false)?;
        while cur != start {
            members.push(cur.clone());
            cur = twist_label(&m, &cur, 1, false)?;
        }
        seen.extend(members.iter().cloned());
        let reversed = canonical_label(
            &m,
            &ModuleLabel::n2_l(&m, start.i + 2, start.p.clone(), start.r)?,
        )?;
        let parity_closed = members.contains(&reversed);
        let representative = members
            .iter()
            .min_by_key(|l| {
                // Prefer a label whose coset form (i, p, r) or (i+2, p−u, u−r) has p = 0.
                let alt = &l.p - int(u);
                let r = if alt == int(0) { u - l.r } else { l.r };
                (l.p != int(0) && alt != int(0), r, l.i)
            })
            .cloned()
            .expect("orbits are non-empty");
        out.push(Orbit { representative, length: members.len(), parity_closed, members });
    }
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

/// One Kac-table cell: the coset label (i, p, r) with i ∈ {0, 1} fixed by p and r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacCell {
    pub r: i64,
    pub p: i64,
    pub label: ModuleLabel,
    pub data: HighestWeightData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacTable {
    pub u: i64,
    /// r = 1..u−1, p = −r..2u−r−1.
    pub full: Vec<KacCell>,
    /// r = 1..u−1, p = −r..r−1.
    pub reduced: Vec<KacCell>,
}

impl KacTable {
    pub fn cell(&self, r: i64, p: i64) -> Option<&KacCell> {
        self.full.iter().find(|c| c.r == r && c.p == p)
    }

    pub fn reduced_cell(&self, r: i64, p: i64) -> Option<&KacCell> {
        self.reduced.iter().find(|c| c.r == r && c.p == p)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let cells = |v: &[KacCell]| {
            v.iter()
                .map(|c| {
                    let mut d = c.data.to_json_value();
                    d["r"] = c.r.into();
                    d["p"] = c.p.into();
                    d["i"] = c.label.i.into();
                    d
                })
                .collect::<Vec<_>>()
        };
        serde_json::json!({ "u": self.u, "full": cells(&self.full), "reduced": cells(&self.reduced) })
    }
}

/// The Kac table of M(u, 1).
pub fn kac_table(u: i64) -> Result<KacTable, CatalogError> {
    let m = MinimalModel::new(u, 1)?;
    let mut full = Vec::new();
    let mut reduced = Vec::new();
    for r in 1..u {
        for p in -r..=(2 * u - r - 1) {
            let i = (p - r + 1).rem_euclid(2);
            let cell = KacCell {
                r,
                p,
                label: ModuleLabel::n2_l(&m, i, int(p), r)?,
                data: dictionary_unitary(&m, i, p, r)?,
            };
            if p <= r - 1 {
                reduced.push(cell.clone());
            }
            full.push(cell);
        }
    }
    Ok(KacTable { u, full, reduced })
}
