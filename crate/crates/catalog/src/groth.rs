use std::collections::BTreeMap;

use series_core::int;

use crate::label::congruent2;
use crate::{Algebra, CatalogError, Family, MinimalModel, ModuleLabel};

/// Finite integer combination of labels; zero multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct GrothVector {
    pub terms: BTreeMap<ModuleLabel, i64>,
}

impl GrothVector {
    pub fn new() -> Self {
        GrothVector::default()
    }

    pub fn single(label: ModuleLabel) -> Self {
        let mut g = GrothVector::new();
        g.push(label, 1);
        g
    }

    pub fn push(&mut self, label: ModuleLabel, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.terms.entry(label.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&label);
        }
    }

    pub fn add(&self, other: &GrothVector) -> GrothVector {
        let mut out = self.clone();
        for (k, &v) in &other.terms {
            out.push(k.clone(), v);
        }
        out
    }

    pub fn scale(&self, k: i64) -> GrothVector {
        let mut out = GrothVector::new();
        for (l, &v) in &self.terms {
            out.push(l.clone(), v * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Applies `f` to every key, summing collisions.
    pub fn map_labels(
        &self,
        mut f: impl FnMut(&ModuleLabel) -> Result<GrothVector, CatalogError>,
    ) -> Result<GrothVector, CatalogError> {
        let mut out = GrothVector::new();
        for (l, &v) in &self.terms {
            out = out.add(&f(l)?.scale(v));
        }
        Ok(out)
    }

    /// Composition factors with every key replaced by its isomorphism
    /// representative; two vectors are equal in the Grothendieck group iff their
    /// normalizations are equal.
    pub fn iso_normalized(&self, m: &MinimalModel) -> Result<GrothVector, CatalogError> {
        self.map_labels(|l| {
            groth_decompose(m, l)?.map_labels(|f| Ok(GrothVector::single(iso_rep(m, f)?)))
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(l, v)| serde_json::json!({ "label": l.to_string(), "mult": v }))
                .collect(),
        )
    }
}

impl std::fmt::Display for GrothVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, v)| if *v == 1 { l.to_string() } else { format!("{v}*{l}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromIterator<(ModuleLabel, i64)> for GrothVector {
    fn from_iter<T: IntoIterator<Item = (ModuleLabel, i64)>>(iter: T) -> Self {
        let mut g = GrothVector::new();
        for (l, v) in iter {
            g.push(l, v);
        }
        g
    }
}

/// N=2 D-type coset label D^{[i]}_{p;r,s} for any s in −1..=v, with s = 0 read
/// as the L-family and s ∈ {−1, v} rewritten by the boundary conventions
/// D^{[i]}_{p;r,−1} = D^{[i+2]}_{p+t;u−r,v−2}, D^{[i]}_{p;r,v} = D^{[i−2]}_{p−t;u−r,1}.
pub(crate) fn d_factor(
    m: &MinimalModel,
    i: i64,
    p: series_core::Rational,
    r: i64,
    s: i64,
) -> Result<ModuleLabel, CatalogError> {
    let t = m.t();
    if s == -1 {
        return d_factor(m, i + 2, p + t, m.u - r, m.v - 2);
    }
    if s == m.v {
        return d_factor(m, i - 2, p - t, m.u - r, 1);
    }
    if s == 0 {
        ModuleLabel::n2(m, Family::L, i, p, r, 0)
    } else {
        ModuleLabel::n2(m, Family::Dplus, i, p, r, s)
    }
}

/// Composition factors of a label. Irreducibles map to themselves.
pub fn groth_decompose(m: &MinimalModel, label: &ModuleLabel) -> Result<GrothVector, CatalogError> {
    if label.algebra != Algebra::N2 {
        return Ok(GrothVector::single(label.clone()));
    }
    label.validate(m)?;
    let t = m.t();
    let (i, p, r, s) = (label.i, label.p.clone(), label.r, label.s);
    let (u, v) = (m.u, m.v);
    let mut g = GrothVector::new();
    match label.family {
        Family::Eplus => {
            g.push(d_factor(m, i, p.clone(), r, s)?, 1);
            g.push(d_factor(m, i + 2, p + t, r, s - 1)?, 1);
        }
        Family::Eminus => {
            g.push(d_factor(m, i + 2, &p + t, u - r, v - s - 1)?, 1);
            g.push(d_factor(m, i, p, u - r, v - s)?, 1);
        }
        Family::Staggered => {
            g.push(d_factor(m, i, p.clone(), r, s)?, 2);
            g.push(d_factor(m, i + 2, &p + &t, r, s - 1)?, 1);
            g.push(d_factor(m, i - 2, p - t, r, s + 1)?, 1);
        }
        _ => g.push(label.clone(), 1),
    }
    Ok(g)
}

/// Isomorphism-class representative of an irreducible N=2 label.
///
/// Uses D−^{[i]}_{p;r,s} ≅ D+^{[i−2]}_{p+t;u−r,v−1−s} (s ≠ v−1),
/// D−^{[i]}_{p;r,v−1} ≅ L^{[i−2]}_{p+t;u−r,0}, D+^{[i]}_{p;r,v−1} ≅ L^{[i+2]}_{p−t;u−r,0},
/// E_{(r,s)} ≅ E_{(u−r,v−s)} (lexicographically smaller pair kept), and the v = 1
/// Kac symmetry. Composite labels are returned unchanged.
pub fn iso_rep(m: &MinimalModel, label: &ModuleLabel) -> Result<ModuleLabel, CatalogError> {
    if label.algebra != Algebra::N2 {
        return Ok(label.clone());
    }
    let t = m.t();
    let (u, v) = (m.u, m.v);
    let (i, p, r, s) = (label.i, label.p.clone(), label.r, label.s);
    match label.family {
        Family::Dminus if s == v - 1 => ModuleLabel::n2(m, Family::L, i - 2, p + t, u - r, 0),
        Family::Dminus => ModuleLabel::n2(m, Family::Dplus, i - 2, p + t, u - r, v - 1 - s),
        Family::Dplus if s == v - 1 => ModuleLabel::n2(m, Family::L, i + 2, p - t, u - r, 0),
        Family::ETypical if (u - r, v - s) < (r, s) => {
            ModuleLabel::n2(m, Family::ETypical, i, p, u - r, v - s)
        }
        Family::L if v == 1 => crate::canonical_label(m, label),
        _ => Ok(label.clone()),
    }
}

/// Class of the N=2 E-type label at (i, p; r, s): typical when p − i avoids both
/// atypical weight classes, otherwise the E± label whose lattice it lies on.
pub fn e_class(
    m: &MinimalModel,
    i: i64,
    p: series_core::Rational,
    r: i64,
    s: i64,
) -> Result<ModuleLabel, CatalogError> {
    let w = &p - int(i);
    let fam = if congruent2(&w, &m.lambda(r, s)) {
        Family::Eplus
    } else if congruent2(&w, &m.lambda(m.u - r, m.v - s)) {
        Family::Eminus
    } else {
        Family::ETypical
    };
    ModuleLabel::n2(m, fam, i, p, r, s)
}

/// Whether E+^{[i]}_{p;r,s} is a highest-weight module: iff p ≥ λ_{r,s} + 1.
pub fn is_highest_weight(m: &MinimalModel, label: &ModuleLabel) -> Result<bool, CatalogError> {
    if label.family != Family::Eplus {
        return Err(CatalogError::Unsupported(format!("{label} is not of family E+")));
    }
    label.validate(m)?;
    Ok(label.p >= m.lambda(label.r, label.s) + int(1))
}
