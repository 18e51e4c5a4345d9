//! Truncated bivariate Puiseux series in `z` and `q` with integer coefficients.
//!
//! Exponents are stored as scaled integers on the lattices `(1/Dz)Z` and
//! `(1/Dq)Z`. The lattice is kept minimal after every operation, so two
//! series are equal as values iff their representations are equal.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{denom_i64, floor_i64, fmt_rat, lcm, parse_rat, scaled, Rational};
use crate::SeriesError;

/// One term `coeff * z^z_exp * q^q_exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: BigInt,
    pub z_exp: Rational,
    pub q_exp: Rational,
}

impl Monomial {
    pub fn new(coeff: impl Into<BigInt>, z_exp: Rational, q_exp: Rational) -> Self {
        Monomial { coeff: coeff.into(), z_exp, q_exp }
    }
}

/// Truncated series; every stored q-exponent is `<= q_order`, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series2 {
    dz: i64,
    dq: i64,
    q_order: Rational,
    /// `(q * Dq, z * Dz) -> coeff`.
    terms: BTreeMap<(i64, i64), BigInt>,
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

impl Series2 {
    /// The zero series known up to `q_order`.
    pub fn zero(q_order: Rational) -> Self {
        Series2 { dz: 1, dq: 1, q_order, terms: BTreeMap::new() }
    }

    /// The constant `1` known up to `q_order` (zero if `q_order < 0`).
    pub fn one(q_order: Rational) -> Self {
        Self::monomial(BigInt::one(), Rational::zero(), Rational::zero(), q_order)
    }

    /// A single monomial, dropped if its q-exponent exceeds `q_order`.
    pub fn monomial(c: impl Into<BigInt>, z: Rational, q: Rational, q_order: Rational) -> Self {
        Self::from_monomials(vec![Monomial::new(c, z, q)], q_order)
    }

    /// Sums the given monomials, keeping those at or below `q_order`.
    pub fn from_monomials(ms: impl IntoIterator<Item = Monomial>, q_order: Rational) -> Self {
        let ms: Vec<Monomial> = ms.into_iter().filter(|m| m.q_exp <= q_order).collect();
        let mut dz = 1;
        let mut dq = 1;
        for m in &ms {
            dz = lcm(dz, denom_i64(&m.z_exp));
            dq = lcm(dq, denom_i64(&m.q_exp));
        }
        let mut terms: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for m in ms {
            let key = (scaled(&m.q_exp, dq).unwrap(), scaled(&m.z_exp, dz).unwrap());
            *terms.entry(key).or_insert_with(BigInt::zero) += m.coeff;
        }
        let mut s = Series2 { dz, dq, q_order, terms };
        s.normalize();
        s
    }

    /// Lattice denominator of the z-exponents.
    pub fn dz(&self) -> i64 {
        self.dz
    }

    /// Lattice denominator of the q-exponents.
    pub fn dq(&self) -> i64 {
        self.dq
    }

    /// Inclusive truncation bound.
    pub fn q_order(&self) -> &Rational {
        &self.q_order
    }

    /// Lowest stored q-exponent, or the truncation bound for the zero series.
    pub fn q_offset(&self) -> Rational {
        match self.terms.keys().next() {
            Some(&(q, _)) => Rational::new(q.into(), self.dq.into()),
            None => self.q_order.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(q, z, coeff)` sorted by `(q, z)`.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, Rational, &BigInt)> + '_ {
        self.terms.iter().map(move |(&(q, z), c)| {
            (Rational::new(q.into(), self.dq.into()), Rational::new(z.into(), self.dz.into()), c)
        })
    }

    /// Terms as monomials.
    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms().map(|(q, z, c)| Monomial::new(c.clone(), z, q)).collect()
    }

    /// Coefficient of `z^z q^q` (zero when absent or off-lattice).
    pub fn coeff(&self, z: &Rational, q: &Rational) -> BigInt {
        match (scaled(q, self.dq), scaled(z, self.dz)) {
            (Some(qk), Some(zk)) => self.terms.get(&(qk, zk)).cloned().unwrap_or_default(),
            _ => BigInt::zero(),
        }
    }

    /// Distinct q-exponents carrying nonzero terms.
    pub fn q_levels(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for &(q, _) in self.terms.keys() {
            let r = Rational::new(q.into(), self.dq.into());
            if out.last() != Some(&r) {
                out.push(r);
            }
        }
        out
    }

    /// z-exponents present at q-exponent `q`.
    pub fn z_support_at(&self, q: &Rational) -> Vec<Rational> {
        let Some(qk) = scaled(q, self.dq) else { return Vec::new() };
        self.terms
            .range((qk, i64::MIN)..=(qk, i64::MAX))
            .map(|(&(_, z), _)| Rational::new(z.into(), self.dz.into()))
            .collect()
    }

    /// Smallest and largest z-exponent over all terms.
    pub fn z_range(&self) -> Option<(Rational, Rational)> {
        let lo = self.terms.keys().map(|k| k.1).min()?;
        let hi = self.terms.keys().map(|k| k.1).max()?;
        Some((Rational::new(lo.into(), self.dz.into()), Rational::new(hi.into(), self.dz.into())))
    }

    fn qmax_key(&self, dq: i64) -> i64 {
        floor_i64(&(&self.q_order * BigInt::from(dq)))
    }

    /// Re-expresses on the finer lattice `(dz, dq)`; both must be multiples.
    fn rescaled(&self, dz: i64, dq: i64) -> BTreeMap<(i64, i64), BigInt> {
        let fz = dz / self.dz;
        let fq = dq / self.dq;
        if fz == 1 && fq == 1 {
            return self.terms.clone();
        }
        self.terms.iter().map(|(&(q, z), c)| ((q * fq, z * fz), c.clone())).collect()
    }

    /// Drops zeros, enforces truncation and shrinks the lattice to its minimum.
    fn normalize(&mut self) {
        let qmax = self.qmax_key(self.dq);
        self.terms.retain(|&(q, _), c| !c.is_zero() && q <= qmax);
        let mut gz = self.dz;
        let mut gq = self.dq;
        for &(q, z) in self.terms.keys() {
            gz = gcd_i64(gz, z);
            gq = gcd_i64(gq, q);
        }
        if self.terms.is_empty() {
            gz = self.dz;
            gq = self.dq;
        }
        if gz > 1 || gq > 1 {
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|((q, z), c)| ((q / gq, z / gz), c))
                .collect();
            self.dz /= gz;
            self.dq /= gq;
        }
    }

    /// Coefficientwise sum; truncation is the smaller of the two bounds.
    pub fn add(&self, other: &Series2) -> Series2 {
        self.combine(other, false)
    }

    /// Coefficientwise difference.
    pub fn sub(&self, other: &Series2) -> Series2 {
        self.combine(other, true)
    }

    fn combine(&self, other: &Series2, negate: bool) -> Series2 {
        let dz = lcm(self.dz, other.dz);
        let dq = lcm(self.dq, other.dq);
        let mut terms = self.rescaled(dz, dq);
        for (k, c) in other.rescaled(dz, dq) {
            let e = terms.entry(k).or_insert_with(BigInt::zero);
            if negate {
                *e -= c;
            } else {
                *e += c;
            }
        }
        let q_order = std::cmp::min(&self.q_order, &other.q_order).clone();
        let mut s = Series2 { dz, dq, q_order, terms };
        s.normalize();
        s
    }

    /// Additive inverse.
    pub fn neg(&self) -> Series2 {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        s
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &BigInt) -> Series2 {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c *= k;
        }
        s.normalize();
        s
    }

    /// Lowers the truncation bound to `min(q_order, n)`.
    pub fn truncate(&self, n: &Rational) -> Series2 {
        let mut s = self.clone();
        if n < &s.q_order {
            s.q_order = n.clone();
        }
        s.normalize();
        s
    }

    /// Replaces the truncation bound, which may also raise it.
    ///
    /// Only sound when the caller knows the series is exact up to `n`,
    /// e.g. for finite sums assembled term by term.
    pub fn with_order(&self, n: Rational) -> Series2 {
        let mut s = self.clone();
        s.q_order = n;
        s.normalize();
        s
    }

    /// Exact multiplication by `c z^z q^q`; the truncation bound shifts by `q`.
    pub fn mul_monomial(&self, c: &BigInt, z: &Rational, q: &Rational) -> Series2 {
        let dz = lcm(self.dz, denom_i64(z));
        let dq = lcm(self.dq, denom_i64(q));
        let zs = scaled(z, dz).unwrap();
        let qs = scaled(q, dq).unwrap();
        let terms = self
            .rescaled(dz, dq)
            .into_iter()
            .map(|((qk, zk), v)| ((qk + qs, zk + zs), v * c))
            .collect();
        let mut s = Series2 { dz, dq, q_order: &self.q_order + q, terms };
        s.normalize();
        s
    }

    /// Cauchy product truncated at `min(N_a + off_b, N_b + off_a)`.
    pub fn mul(&self, other: &Series2) -> Series2 {
        let q_order = std::cmp::min(
            &self.q_order + other.q_offset(),
            &other.q_order + self.q_offset(),
        );
        let dz = lcm(self.dz, other.dz);
        let dq = lcm(self.dq, other.dq);
        let qmax = floor_i64(&(&q_order * BigInt::from(dq)));
        let a = self.rescaled(dz, dq);
        let b = other.rescaled(dz, dq);
        let b_terms: Vec<(i64, i64, &BigInt)> = b.iter().map(|(&(q, z), c)| (q, z, c)).collect();
        let mut acc: HashMap<(i64, i64), BigInt> = HashMap::new();
        for (&(qa, za), ca) in &a {
            for &(qb, zb, cb) in &b_terms {
                if qa + qb > qmax {
                    break;
                }
                *acc.entry((qa + qb, za + zb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let mut s = Series2 { dz, dq, q_order, terms: acc.into_iter().collect() };
        s.normalize();
        s
    }

    /// Multiplicative inverse for series whose lowest q-level is a single unit monomial.
    pub fn mul_inverse(&self) -> Result<Series2, SeriesError> {
        let Some((&(q0, _), _)) = self.terms.iter().next() else {
            return Err(SeriesError::NonInvertibleLeadingTerm("zero series".into()));
        };
        let lead: Vec<(&(i64, i64), &BigInt)> =
            self.terms.range((q0, i64::MIN)..=(q0, i64::MAX)).collect();
        if lead.len() != 1 || lead[0].1.abs() != BigInt::one() {
            return Err(SeriesError::NonInvertibleLeadingTerm(format!(
                "lowest q-level has {} terms with leading coefficient {}",
                lead.len(),
                lead[0].1
            )));
        }
        let c = lead[0].1.clone();
        let alpha = Rational::new(lead[0].0 .1.into(), self.dz.into());
        let beta = Rational::new(q0.into(), self.dq.into());
        // u = a / m = 1 + r with r of positive valuation.
        let unit = self.mul_monomial(&c, &-alpha.clone(), &-beta.clone());
        let dz = unit.dz;
        let dq = unit.dq;
        let qmax = unit.qmax_key(dq);
        // r grouped by q-level, excluding the constant term.
        let mut r: BTreeMap<i64, Vec<(i64, BigInt)>> = BTreeMap::new();
        for (&(q, z), v) in &unit.terms {
            if q == 0 {
                continue;
            }
            r.entry(q).or_default().push((z, v.clone()));
        }
        // b_e = - sum_{e'>0} r_{e'} b_{e-e'}, solved level by level.
        let mut b: BTreeMap<i64, BTreeMap<i64, BigInt>> = BTreeMap::new();
        b.insert(0, BTreeMap::from([(0, BigInt::one())]));
        let step = r.keys().copied().fold(0, gcd_i64).max(1);
        let mut e = step;
        while e <= qmax {
            let mut level: BTreeMap<i64, BigInt> = BTreeMap::new();
            for (&qe, rz) in r.range(..=e) {
                if let Some(prev) = b.get(&(e - qe)) {
                    for (zr, cr) in rz {
                        for (zb, cb) in prev {
                            *level.entry(zr + zb).or_insert_with(BigInt::zero) -= cr * cb;
                        }
                    }
                }
            }
            level.retain(|_, v| !v.is_zero());
            if !level.is_empty() {
                b.insert(e, level);
            }
            e += step;
        }
        let terms: BTreeMap<(i64, i64), BigInt> = b
            .into_iter()
            .flat_map(|(q, lv)| lv.into_iter().map(move |(z, v)| ((q, z), v)))
            .collect();
        let mut inv = Series2 { dz, dq, q_order: unit.q_order.clone(), terms };
        inv.normalize();
        // multiply back by m^{-1} = c z^{-alpha} q^{-beta} since c = +-1
        Ok(inv.mul_monomial(&c, &-alpha, &-beta))
    }

    /// Maps `c z^a q^b` to `c (-1)^{a if flip} z^{+-a} q^{b + a*shift}`.
    ///
    /// The result keeps the original truncation bound; terms pushed above it are dropped.
    pub fn substitute(
        &self,
        z_flip: bool,
        z_qshift: &Rational,
        z_invert: bool,
    ) -> Result<Series2, SeriesError> {
        let sd = denom_i64(z_qshift);
        let dq = lcm(self.dq, self.dz * sd);
        let fq = dq / self.dq;
        let mut terms = BTreeMap::new();
        for (&(q, z), c) in &self.terms {
            let mut c = c.clone();
            if z_flip {
                if z % self.dz != 0 {
                    return Err(SeriesError::NonIntegralSignExponent(format!(
                        "{}/{}",
                        z, self.dz
                    )));
                }
                if (z / self.dz) % 2 != 0 {
                    c = -c;
                }
            }
            let a = Rational::new(z.into(), self.dz.into());
            let shift = scaled(&(a * z_qshift), dq).unwrap();
            let newz = if z_invert { -z } else { z };
            *terms.entry((q * fq + shift, newz)).or_insert_with(BigInt::zero) += c;
        }
        let mut s = Series2 { dz: self.dz, dq, q_order: self.q_order.clone(), terms };
        s.normalize();
        Ok(s)
    }

    /// Univariate q-series of the coefficient of `z^alpha`.
    pub fn coeff_z(&self, alpha: &Rational) -> Series2 {
        let Some(zk) = scaled(alpha, self.dz) else {
            return Series2::zero(self.q_order.clone());
        };
        let terms = self
            .terms
            .iter()
            .filter(|(&(_, z), _)| z == zk)
            .map(|(&(q, _), c)| ((q, 0), c.clone()))
            .collect();
        let mut s = Series2 { dz: 1, dq: self.dq, q_order: self.q_order.clone(), terms };
        s.normalize();
        s
    }

    /// Keeps only terms whose z-exponent satisfies `keep`.
    pub fn filter_z(&self, keep: impl Fn(&Rational) -> bool) -> Series2 {
        let mut s = self.clone();
        let dz = self.dz;
        s.terms.retain(|&(_, z), _| keep(&Rational::new(z.into(), dz.into())));
        s.normalize();
        s
    }

    /// True iff every coefficient with q-exponent `<= n` agrees.
    pub fn equal_to_order(a: &Series2, b: &Series2, n: &Rational) -> bool {
        Self::first_difference(a, b, n).is_none()
    }

    /// The lowest `(q, z, coeff_a, coeff_b)` at which `a` and `b` differ up to `n`.
    pub fn first_difference(
        a: &Series2,
        b: &Series2,
        n: &Rational,
    ) -> Option<(Rational, Rational, BigInt, BigInt)> {
        let dz = lcm(a.dz, b.dz);
        let dq = lcm(a.dq, b.dq);
        let qmax = floor_i64(&(n * BigInt::from(dq)));
        let ta = a.rescaled(dz, dq);
        let tb = b.rescaled(dz, dq);
        let mut keys: Vec<&(i64, i64)> =
            ta.keys().chain(tb.keys()).filter(|k| k.0 <= qmax).collect();
        keys.sort();
        keys.dedup();
        let zero = BigInt::zero();
        for k in keys {
            let ca = ta.get(k).unwrap_or(&zero);
            let cb = tb.get(k).unwrap_or(&zero);
            if ca != cb {
                return Some((
                    Rational::new(k.0.into(), dq.into()),
                    Rational::new(k.1.into(), dz.into()),
                    ca.clone(),
                    cb.clone(),
                ));
            }
        }
        None
    }

    /// Serializes to the documented JSON object.
    pub fn to_json_value(&self) -> SeriesJson {
        SeriesJson {
            dz: self.dz,
            dq: self.dq,
            q_order: fmt_rat(&self.q_order),
            terms: self
                .terms()
                .map(|(q, z, c)| TermJson { q: fmt_rat(&q), z: fmt_rat(&z), c: c.to_string() })
                .collect(),
        }
    }

    /// JSON text, terms sorted by `(q, z)`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("series serializes")
    }

    /// Parses JSON produced by [`Series2::to_json`].
    pub fn from_json(s: &str) -> Result<Series2, SeriesError> {
        let j: SeriesJson =
            serde_json::from_str(s).map_err(|e| SeriesError::Parse(e.to_string()))?;
        Self::from_json_value(&j)
    }

    pub fn from_json_value(j: &SeriesJson) -> Result<Series2, SeriesError> {
        if j.dz <= 0 || j.dq <= 0 {
            return Err(SeriesError::Parse("lattice denominators must be positive".into()));
        }
        let q_order = parse_rat(&j.q_order)?;
        let mut terms = BTreeMap::new();
        for t in &j.terms {
            let q = parse_rat(&t.q)?;
            let z = parse_rat(&t.z)?;
            let c: BigInt = t.c.parse().map_err(|_| SeriesError::Parse(t.c.clone()))?;
            let (Some(qk), Some(zk)) = (scaled(&q, j.dq), scaled(&z, j.dz)) else {
                return Err(SeriesError::Parse(format!("term off lattice: q={} z={}", t.q, t.z)));
            };
            terms.insert((qk, zk), c);
        }
        let mut s = Series2 { dz: j.dz, dq: j.dq, q_order, terms };
        s.normalize();
        Ok(s)
    }
}

/// Wire form of a [`Series2`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesJson {
    #[serde(rename = "Dz")]
    pub dz: i64,
    #[serde(rename = "Dq")]
    pub dq: i64,
    pub q_order: String,
    pub terms: Vec<TermJson>,
}

/// Wire form of one term.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub q: String,
    pub z: String,
    pub c: String,
}
