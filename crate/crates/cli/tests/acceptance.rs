//! End-to-end acceptance: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails.

use std::time::{Duration, Instant};

use catalog::{
    e_class, groth_decompose, kac_table, orbits, unitary_labels, Family, GrothVector, MinimalModel, ModuleLabel,
    Report, Sector,
};
use characters::{
    branch_verify, char_n2, magic_check, ses_char_check, sflow_transform, transport_source_order, CharError,
    MagicIdentity, MagicSample, Method,
};
use fusion::{fuse_exact, ring_check, ring_check_windowed, sample_labels, FusionError};
use num_bigint::BigInt;
use series_core::{int, parse_rat, rat, Rational, Series2};
use special_functions::{eg_kernel, eg_product, eta_inv, theta, theta_product, ThetaIndex};

type Outcome = Result<String, String>;

fn mm(u: i64, v: i64) -> MinimalModel {
    MinimalModel::new(u, v).expect("valid model")
}

fn same(a: &Series2, b: &Series2, n: &Rational) -> bool {
    Series2::equal_to_order(a, b, n)
}

fn all_pass(reports: &[Report]) -> Result<usize, String> {
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(r.to_json_value().to_string()),
        None => Ok(reports.len()),
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    let e = t.elapsed();
    if e > limit {
        return Err(format!("took {e:?}, limit {limit:?}"));
    }
    Ok(())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// (r, p, parity, j, Δ, Ramond) for the 24 filled cells of the M(4,1) table.
const TABLE: &[(i64, i64, &str, &str, &str, bool)] = &[
    (1, -1, "-", "1/4", "1/16", true),
    (1, 0, "+", "0", "0", false),
    (1, 1, "+", "-1/4", "1/16", true),
    (1, 2, "-", "-1/2", "1/4", false),
    (1, 3, "+", "1/4", "9/16", true),
    (1, 4, "-", "0", "1/2", false),
    (1, 5, "+", "3/4", "9/16", true),
    (1, 6, "-", "1/2", "1/4", false),
    (2, -2, "-", "0", "1/16", true),
    (2, -1, "+", "-1/4", "1/8", false),
    (2, 0, "-", "1/2", "5/16", true),
    (2, 1, "+", "1/4", "1/8", false),
    (2, 2, "+", "0", "1/16", true),
    (2, 3, "-", "-1/4", "1/8", false),
    (2, 4, "+", "1/2", "5/16", true),
    (2, 5, "-", "1/4", "1/8", false),
    (3, -3, "-", "-1/4", "1/16", true),
    (3, -2, "+", "-1/2", "1/4", false),
    (3, -1, "-", "1/4", "9/16", true),
    (3, 0, "+", "0", "1/2", false),
    (3, 1, "-", "3/4", "9/16", true),
    (3, 2, "+", "1/2", "1/4", false),
    (3, 3, "+", "1/4", "1/16", true),
    (3, 4, "-", "0", "0", false),
];

/// (r, p, j, Δ) of the reduced table.
const REDUCED: &[(i64, i64, &str, &str)] = &[
    (1, -1, "1/4", "1/16"),
    (1, 0, "0", "0"),
    (2, -2, "0", "1/16"),
    (2, -1, "-1/4", "1/8"),
    (2, 0, "1/2", "5/16"),
    (2, 1, "1/4", "1/8"),
    (3, -3, "-1/4", "1/16"),
    (3, -2, "-1/2", "1/4"),
    (3, -1, "1/4", "9/16"),
    (3, 0, "0", "1/2"),
    (3, 1, "3/4", "9/16"),
    (3, 2, "1/2", "1/4"),
];

fn kac_table_reproduction() -> Outcome {
    let t0 = Instant::now();
    let t = kac_table(4).map_err(err)?;
    let q = |s: &str| parse_rat(s).expect("table literal");
    let mut positions = 0;
    for r in 1..=3 {
        for p in -3..=6 {
            positions += 1;
            let want = TABLE.iter().find(|c| c.0 == r && c.1 == p);
            match (t.cell(r, p), want) {
                (None, None) => {}
                (Some(c), Some(&(_, _, par, j, d, ramond))) => {
                    let got = (c.data.parity.symbol(), c.data.j.clone(), c.data.delta.clone(), c.data.sector == Sector::R);
                    if got != (par, q(j), q(d), ramond) {
                        return Err(format!("cell ({r},{p}) is {}", c.data.cell()));
                    }
                }
                (got, _) => return Err(format!("cell ({r},{p}) presence differs: {}", got.is_some())),
            }
        }
    }
    if t.full.len() != TABLE.len() || t.reduced.len() != REDUCED.len() {
        return Err(format!("{} full and {} reduced cells", t.full.len(), t.reduced.len()));
    }
    for &(r, p, j, d) in REDUCED {
        let c = t.reduced_cell(r, p).ok_or(format!("reduced ({r},{p}) missing"))?;
        if (c.data.j.clone(), c.data.delta.clone()) != (q(j), q(d)) {
            return Err(format!("reduced ({r},{p}) is {}", c.data.cell()));
        }
    }
    within(t0, Duration::from_secs(1))?;
    Ok(format!("{positions} grid positions ({} filled), {} reduced cells", TABLE.len(), REDUCED.len()))
}

fn unitary_branching() -> Outcome {
    let t0 = Instant::now();
    let mut n = 0;
    for u in [4, 5] {
        let m = mm(u, 1);
        for r in 1..u {
            let l = ModuleLabel::sl2(&m, Family::L, r, 0, int(0), 0).map_err(err)?;
            for i in 0..4 {
                for sup in [false, true] {
                    n += all_pass(&branch_verify(&m, &l, i, sup, &int(8), 2 * u).map_err(err)?)?;
                }
            }
        }
    }
    within(t0, Duration::from_secs(120))?;
    Ok(format!("{n} branching reports in {:?}", t0.elapsed()))
}

fn unitary_cross_method() -> Outcome {
    let n = int(8);
    let mut count = 0;
    for u in [4, 5] {
        let m = mm(u, 1);
        for l in unitary_labels(u).map_err(err)? {
            let a = char_n2(&m, &l, Method::ResidueEG, false, &n).map_err(err)?;
            let b = char_n2(&m, &l, Method::AppellLerch, false, &n).map_err(err)?;
            if !same(&a, &b, &n) {
                return Err(format!("M({u},1) {l}: {:?}", Series2::first_difference(&a, &b, &n)));
            }
            count += 1;
        }
    }
    Ok(format!("{count} canonical labels"))
}

fn nonunitary_branching() -> Outcome {
    let t0 = Instant::now();
    let n = int(6);
    let mut count = 0;
    for (u, v) in [(3, 2), (2, 3), (5, 2)] {
        let m = mm(u, v);
        for r in 1..u {
            let mut mods = vec![ModuleLabel::sl2(&m, Family::L, r, 0, int(0), 0).map_err(err)?];
            for s in 1..v {
                mods.push(ModuleLabel::sl2(&m, Family::Dplus, r, s, int(0), 0).map_err(err)?);
            }
            for l in &mods {
                for i in 0..2 {
                    count += all_pass(&branch_verify(&m, l, i, false, &n, 2 * u).map_err(err)?)?;
                }
            }
        }
    }
    within(t0, Duration::from_secs(300))?;
    Ok(format!("{count} branching reports in {:?}", t0.elapsed()))
}

fn resolution_agreement() -> Outcome {
    let n = int(6);
    let mut agreed = 0;
    for (u, v) in [(3, 2), (2, 3)] {
        let m = mm(u, v);
        for r in 1..u {
            for i in 0..4 {
                let l = ModuleLabel::n2_l(&m, i, m.lambda(r, 0) + int(i), r).map_err(err)?;
                let a = char_n2(&m, &l, Method::Resolution, false, &n).map_err(err)?;
                let b = char_n2(&m, &l, Method::AppellLerch, false, &n).map_err(err)?;
                if !same(&a, &b, &n) {
                    return Err(format!("M({u},{v}) {l}"));
                }
                agreed += 1;
            }
        }
    }
    let m = mm(5, 2);
    let mut guarded = 0;
    for r in 1..5 {
        for i in 0..4 {
            let l = ModuleLabel::n2_l(&m, i, m.lambda(r, 0) + int(i), r).map_err(err)?;
            match char_n2(&m, &l, Method::Resolution, false, &n) {
                Err(CharError::DivergentResolution(_)) => guarded += 1,
                other => return Err(format!("M(5,2) {l}: resolution gave {other:?}")),
            }
            let al = char_n2(&m, &l, Method::AppellLerch, false, &n).map_err(err)?;
            if al.is_zero() {
                return Err(format!("M(5,2) {l}: empty Appell-Lerch character"));
            }
        }
    }
    Ok(format!("{agreed} L characters agree, {guarded} divergent resolutions guarded for M(5,2)"))
}

fn exact_sequences() -> Outcome {
    let n = int(6);
    let mut passed = 0;
    for (u, v) in [(3, 2), (2, 3), (5, 2)] {
        let m = mm(u, v);
        for r in 1..u {
            for s in 1..v {
                for p in [m.lambda(r, s), m.lambda(u - r, v - s)] {
                    for i in 0..2 {
                        let Ok(l) = e_class(&m, i, p.clone() + int(i), r, s) else { continue };
                        if !matches!(l.family, Family::Eplus | Family::Eminus) {
                            continue;
                        }
                        let rep = ses_char_check(&m, &l, &n).map_err(err)?;
                        if !rep.passed() {
                            return Err(rep.to_json_value().to_string());
                        }
                        passed += 1;
                    }
                }
            }
        }
    }
    if passed < 6 {
        return Err(format!("only {passed} atypical labels"));
    }
    Ok(format!("{passed} atypical relaxed labels"))
}

fn spectral_flow() -> Outcome {
    let m = mm(4, 1);
    let n = int(8);
    let mut count = 0;
    for l in unitary_labels(4).map_err(err)? {
        let p: i64 = i64::try_from(l.p.to_integer()).map_err(err)?;
        let src = ModuleLabel::n2_l(&m, l.i - p, int(0), l.r).map_err(err)?;
        let hw = catalog::hw_data(&m, &src).map_err(err)?;
        let no = transport_source_order(&n, &m.c(), -p, &hw.j, &(hw.delta - m.c() / int(24)));
        let s = char_n2(&m, &src, Method::AppellLerch, false, &no).map_err(err)?;
        let moved = sflow_transform(&s, &m.c(), -p, &n).map_err(err)?;
        let direct = char_n2(&m, &l, Method::AppellLerch, false, &n).map_err(err)?;
        if !same(&moved, &direct, &n) {
            return Err(format!("transport to {l}"));
        }
        let twin = ModuleLabel::n2_l(&m, l.i + 2, &l.p + int(4), 4 - l.r).map_err(err)?;
        let other = char_n2(&m, &twin, Method::AppellLerch, false, &n).map_err(err)?;
        if !same(&direct, &other, &n) {
            return Err(format!("Kac symmetry at {l}"));
        }
        count += 1;
    }
    Ok(format!("{count} labels transported and Kac-symmetric"))
}

fn orbit_census() -> Outcome {
    let want: [(i64, Vec<usize>); 3] = [(4, vec![8, 8, 8]), (5, vec![20, 20]), (6, vec![12, 12, 12, 12, 6, 6])];
    for (u, lengths) in want {
        let mut got: Vec<usize> = orbits(u).map_err(err)?.iter().map(|o| o.length).collect();
        got.sort_unstable_by(|a, b| b.cmp(a));
        if got != lengths {
            return Err(format!("u = {u}: lengths {got:?}"));
        }
    }
    Ok("orbit counts 3, 2, 6".into())
}

fn fusion_rings() -> Outcome {
    let mut notes = Vec::new();
    for u in [4, 5] {
        let m = mm(u, 1);
        let labels = unitary_labels(u).map_err(err)?;
        let rep = ring_check(&m, &labels, true);
        all_pass(std::slice::from_ref(&rep))?;
        notes.push(format!("M({u},1) {} labels", labels.len()));
    }
    for (u, v) in [(3, 2), (2, 3)] {
        let m = mm(u, v);
        let labels = sample_labels(&m, &m.t()).map_err(err)?;
        let rep = ring_check_windowed(&m, &labels, false, &(m.t() * int(4)));
        all_pass(std::slice::from_ref(&rep))?;
        notes.push(format!("M({u},{v}) {} labels", labels.len()));
    }
    Ok(notes.join(", "))
}

fn iso_equal(m: &MinimalModel, a: &GrothVector, b: &GrothVector) -> Result<bool, String> {
    Ok(a.iso_normalized(m).map_err(err)? == b.iso_normalized(m).map_err(err)?)
}

fn exact_vs_grothendieck() -> Outcome {
    let mut covered = 0;
    let mut staggered = 0;
    for (u, v) in [(3, 2), (2, 3)] {
        let m = mm(u, v);
        let mut labels = sample_labels(&m, &int(100)).map_err(err)?;
        for d in [rat(1, 3), rat(1, 2), int(0), int(1), m.t(), m.t() / int(2), rat(1, 4), rat(-1, 2)] {
            for r in 1..u {
                for s in 1..v {
                    if let Ok(l) = e_class(&m, 0, d.clone(), r, s) {
                        if l.family == Family::ETypical && !labels.contains(&l) {
                            labels.push(l);
                        }
                    }
                }
            }
        }
        for a in &labels {
            for b in &labels {
                match fuse_exact(&m, a, b) {
                    Ok(res) => {
                        let ex = res.exact.ok_or(format!("{a} x {b}: no exact part"))?;
                        if ex.terms.keys().any(|l| l.family == Family::Staggered) {
                            staggered += 1;
                        }
                        let dec = ex.map_labels(|l| groth_decompose(&m, l)).map_err(err)?;
                        if !iso_equal(&m, &dec, &res.grothendieck)? {
                            return Err(format!("M({u},{v}) {a} x {b}: {ex} vs {}", res.grothendieck));
                        }
                        covered += 1;
                    }
                    Err(FusionError::NoKnownExactRule(_)) => {}
                    Err(e) => return Err(format!("{a} x {b}: {e}")),
                }
            }
        }
    }
    if staggered == 0 {
        return Err("no staggered product was exercised".into());
    }
    Ok(format!("{covered} covered pairs, {staggered} with staggered summands"))
}

fn magic_identities() -> Outcome {
    use MagicIdentity::*;
    let plain = [
        MagicSample::new(0.1, 0.4, 0.25, Magic),
        MagicSample::new(0.3, 0.5, 1.7, Magic),
        MagicSample::new(0.2, 0.5, -0.45, Magic),
        MagicSample::new(0.15, 0.3, 0.6, Magic),
        MagicSample::new(0.1, 0.6, -0.8, Magic),
    ];
    let primed = [
        MagicSample::new(0.1, 2.0, 0.25, MagicPrimed),
        MagicSample::new(0.2, 3.0, 0.4, MagicPrimed),
        MagicSample::new(0.05, 5.0, -0.3, MagicPrimed),
        MagicSample::new(0.1, 1.5, 0.7, MagicPrimed),
        MagicSample::new(0.25, 2.5, -1.3, MagicPrimed),
    ];
    for set in [&plain[..], &primed[..]] {
        all_pass(&[magic_check(set, 60, 1e-9).map_err(err)?])?;
    }
    Ok("5 + 5 samples at truncation 60".into())
}

fn partitions(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::from(0); n + 1];
    p[0] = BigInt::from(1);
    for part in 1..=n {
        for k in part..=n {
            let prev = p[k - part].clone();
            p[k] += prev;
        }
    }
    p
}

fn special_functions() -> Outcome {
    let n = int(8);
    for i in ThetaIndex::all() {
        if !same(&theta(i, &n), &theta_product(i, &n), &n) {
            return Err(format!("theta {i:?}"));
        }
    }
    let window = 24;
    let prod = eg_kernel(&n, window).mul(&eg_product(&n));
    let (lo, hi) = eg_product(&n).z_range().ok_or("empty product")?;
    let reach = std::cmp::max(-lo, hi);
    let inner = prod.filter_z(|z| z.clone() + &reach <= int(window) && z - &reach >= int(-window));
    if !same(&inner, &Series2::one(n.clone()), &n) {
        return Err("kernel inversion".into());
    }
    let e = eta_inv(&int(20));
    for (k, pk) in partitions(20).into_iter().enumerate() {
        if e.coeff(&int(0), &(int(k as i64) - rat(1, 24))) != pk {
            return Err(format!("p({k})"));
        }
    }
    Ok("4 thetas, kernel inversion, p(0..20)".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Kac table of M(4,1)", kac_table_reproduction),
        ("unitary branching", unitary_branching),
        ("unitary cross-method equality", unitary_cross_method),
        ("non-unitary branching", nonunitary_branching),
        ("resolution agreement for k<0", resolution_agreement),
        ("exact-sequence character sums", exact_sequences),
        ("spectral-flow transport and Kac symmetry", spectral_flow),
        ("orbit census", orbit_census),
        ("fusion rings", fusion_rings),
        ("Grothendieck consistency of exact rules", exact_vs_grothendieck),
        ("magic identities", magic_identities),
        ("special-function oracles", special_functions),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{:.1?}]", k + 1, t0.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{:.1?}]", k + 1, t0.elapsed());
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
