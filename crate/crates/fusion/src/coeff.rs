use crate::FusionError;

/// N^{(u) r''}_{r, r'}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FusionCoeffQuery {
    pub u: i64,
    pub r: i64,
    pub r1: i64,
    pub r2: i64,
}

/// The sl2 fusion coefficient N^{(u) r2}_{r, r1}; all indices must lie in 1..u.
pub fn fusion_coeff(q: &FusionCoeffQuery) -> Result<i64, FusionError> {
    if q.u < 2 || [q.r, q.r1, q.r2].iter().any(|x| !(1..q.u).contains(x)) {
        return Err(FusionError::LabelOutOfRange(format!(
            "N^({}) {}_({},{}): indices must lie in 1..{}",
            q.u, q.r2, q.r, q.r1, q.u - 1
        )));
    }
    Ok(n(q.u, q.r2, q.r, q.r1))
}

/// N^{(u) c}_{a, b}, zero whenever an index leaves 1..u.
pub(crate) fn n(u: i64, c: i64, a: i64, b: i64) -> i64 {
    if [a, b, c].iter().any(|x| !(1..u).contains(x)) {
        return 0;
    }
    let ok = (a - b).abs() < c && c < (a + b).min(2 * u - a - b) && (a + b + c) % 2 == 1;
    ok as i64
}
