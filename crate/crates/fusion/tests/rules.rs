use catalog::{canonical_label, e_class, groth_decompose, unitary_labels, Family, GrothVector, MinimalModel, ModuleLabel};
use fusion::{
    fuse_exact, fuse_unitary, fusion_coeff, groth_fuse_n2, groth_fuse_sl2, push_sl2, FusionCoeffQuery, FusionError,
};
use series_core::{int, rat, Rational};

fn nq(u: i64, r: i64, r1: i64, r2: i64) -> i64 {
    fusion_coeff(&FusionCoeffQuery { u, r, r1, r2 }).unwrap()
}

fn same(m: &MinimalModel, a: &GrothVector, b: &GrothVector) -> bool {
    a.iso_normalized(m).unwrap() == b.iso_normalized(m).unwrap()
}

#[test]
fn coefficient_examples() {
    assert_eq!(nq(4, 2, 2, 1), 1);
    assert_eq!(nq(4, 2, 2, 3), 1);
    assert_eq!(nq(4, 2, 2, 2), 0);
    for u in 2..=6 {
        for r in 1..u {
            for r1 in 1..u {
                assert_eq!(nq(u, 1, r, r1), (r == r1) as i64);
                for r2 in 1..u {
                    assert_eq!(nq(u, r, r1, r2), nq(u, r1, r, r2));
                }
            }
        }
    }
    assert!(matches!(
        fusion_coeff(&FusionCoeffQuery { u: 4, r: 4, r1: 1, r2: 1 }),
        Err(FusionError::LabelOutOfRange(_))
    ));
}

/// Brute-force su(2)_{u−2} fusion: multiplicities of spin j'' in j ⊗ j' truncated by level.
#[test]
fn coefficients_match_truncated_tensor_product() {
    for u in 2..=7 {
        let k = u - 2;
        for r in 1..u {
            for r1 in 1..u {
                let (a, b): (i64, i64) = (r - 1, r1 - 1); // twice the spins
                for r2 in 1..u {
                    let c = r2 - 1;
                    let clebsch = (a - b).abs() <= c && c <= a + b && (a + b + c) % 2 == 0;
                    let level = a + b + c <= 2 * k;
                    assert_eq!(nq(u, r, r1, r2), (clebsch && level) as i64, "u={u} {r} {r1} {r2}");
                }
            }
        }
    }
}

#[test]
fn unitary_products() {
    let m = MinimalModel::new(4, 1).unwrap();
    // p − i must lie in r − 1 + 2Z, so the r = 2 label sits at p = 1.
    let x = ModuleLabel::n2_l(&m, 0, int(1), 2).unwrap();
    let want: GrothVector = [
        (canonical_label(&m, &ModuleLabel::n2_l(&m, 0, int(2), 1).unwrap()).unwrap(), 1),
        (canonical_label(&m, &ModuleLabel::n2_l(&m, 0, int(2), 3).unwrap()).unwrap(), 1),
    ]
    .into_iter()
    .collect();
    let got = fuse_unitary(&m, &x, &x).unwrap();
    assert_eq!(got.exact.as_ref(), Some(&want));
    assert_eq!(got.grothendieck, want);
    assert!(!got.conjectural);
    let vac = ModuleLabel::n2_l(&m, 0, int(0), 1).unwrap();
    let labels = unitary_labels(4).unwrap();
    assert_eq!(labels.len(), 24);
    for l in labels {
        assert_eq!(fuse_unitary(&m, &vac, &l).unwrap().grothendieck, GrothVector::single(l));
    }
}

#[test]
fn unitary_structure_constants_factor() {
    for u in 3..=5 {
        let m = MinimalModel::new(u, 1).unwrap();
        let labels = unitary_labels(u).unwrap();
        for a in &labels {
            for b in &labels {
                let got = fuse_unitary(&m, a, b).unwrap().grothendieck;
                let mut want = GrothVector::new();
                for r2 in 1..u {
                    let l = ModuleLabel::n2_l(&m, a.i + b.i, &a.p + &b.p, r2);
                    if let Ok(l) = l {
                        want.push(canonical_label(&m, &l).unwrap(), nq(u, a.r, b.r, r2));
                    }
                }
                assert_eq!(got, want);
            }
        }
    }
}

#[test]
fn nonunitary_grothendieck_examples() {
    let m = MinimalModel::new(3, 2).unwrap();
    let vac = ModuleLabel::n2_l(&m, 0, int(0), 1).unwrap();
    let d = ModuleLabel::n2(&m, Family::Dplus, 0, rat(1, 2), 1, 1).unwrap();
    let e = e_class(&m, 0, rat(1, 3), 1, 1).unwrap();
    for x in [&d, &e] {
        assert_eq!(groth_fuse_n2(&m, &vac, x).unwrap(), GrothVector::single(x.clone()));
    }
    let dd = groth_fuse_n2(&m, &d, &d).unwrap();
    let want = GrothVector::single(ModuleLabel::n2(&m, Family::Dplus, 2, rat(-1, 2), 2, 1).unwrap());
    assert!(same(&m, &dd, &want), "{dd}");

    // Only the two shifted typicals survive for v = 2.
    let e2 = e_class(&m, 0, rat(1, 6), 1, 1).unwrap();
    let ee = groth_fuse_n2(&m, &e, &e2).unwrap();
    let t = m.t();
    let p = rat(1, 2);
    let want: GrothVector = [
        (e_class(&m, -2, &p - &t, 1, 1).unwrap(), 1),
        (e_class(&m, 2, &p + &t, 1, 1).unwrap(), 1),
    ]
    .into_iter()
    .collect();
    assert!(same(&m, &ee, &want), "{ee}");
}

#[test]
fn sl2_grothendieck_examples() {
    let m = MinimalModel::new(3, 2).unwrap();
    let vac = ModuleLabel::sl2(&m, Family::L, 1, 0, int(0), 0).unwrap();
    let d = ModuleLabel::sl2(&m, Family::Dplus, 1, 1, int(0), 0).unwrap();
    let e = ModuleLabel::sl2(&m, Family::ETypical, 1, 1, rat(1, 3), 0).unwrap();
    for x in [&d, &e] {
        assert_eq!(groth_fuse_sl2(&m, &vac, x).unwrap(), GrothVector::single(x.clone()));
    }
    let want = GrothVector::single(ModuleLabel::sl2(&m, Family::Dplus, 2, 1, int(0), 1).unwrap());
    assert_eq!(groth_fuse_sl2(&m, &d, &d).unwrap(), want);
}

/// sl2 labels of M(u, v) used for the push-forward check: L, D±, and relaxed
/// labels at typical and atypical weights, with flows −1..=1.
fn sl2_labels(m: &MinimalModel) -> Vec<ModuleLabel> {
    let mut out = Vec::new();
    for flow in -1..=1 {
        for r in 1..m.u {
            out.push(ModuleLabel::sl2(m, Family::L, r, 0, int(0), flow).unwrap());
            for s in 1..m.v {
                for fam in [Family::Dplus, Family::Dminus, Family::Eplus, Family::Eminus] {
                    out.push(ModuleLabel::sl2(m, fam, r, s, int(0), flow).unwrap());
                }
                for lam in [rat(1, 3), rat(1, 7)] {
                    if let Ok(l) = ModuleLabel::sl2(m, Family::ETypical, r, s, lam, flow) {
                        out.push(l);
                    }
                }
            }
        }
    }
    out
}

fn weight_class(m: &MinimalModel, l: &ModuleLabel) -> Rational {
    let base = match l.family {
        Family::Dminus => -m.lambda(l.r, l.s),
        Family::L => m.lambda(l.r, 0),
        _ => l.lambda.clone(),
    };
    base + m.k() * int(l.flow)
}

#[test]
fn sl2_rules_push_forward_to_the_coset_rules() {
    for (u, v) in [(3, 2), (2, 3)] {
        let m = MinimalModel::new(u, v).unwrap();
        let labels = sl2_labels(&m);
        let mut count = 0;
        for a in &labels {
            for b in &labels {
                for (i, j) in [(0, 0), (1, 0), (1, 3)] {
                    let p = weight_class(&m, a) + int(i);
                    let q = weight_class(&m, b) + int(j);
                    let ca = catalog::coset_of_sl2(&m, a, i, p.clone()).unwrap();
                    let cb = catalog::coset_of_sl2(&m, b, j, q.clone()).unwrap();
                    let n2 = groth_fuse_n2(&m, &ca, &cb).unwrap();
                    let sl = groth_fuse_sl2(&m, a, b).unwrap();
                    let pushed = push_sl2(&m, &sl, i + j, &(p + q)).unwrap();
                    assert!(same(&m, &n2, &pushed), "({u},{v}) {a} x {b} at {i},{j}: {n2} vs {pushed}");
                    count += 1;
                }
            }
        }
        assert!(count > 100);
    }
}

#[test]
fn atypical_relaxed_inputs_agree_with_their_factors() {
    for (u, v) in [(3, 2), (2, 3), (3, 4)] {
        let m = MinimalModel::new(u, v).unwrap();
        let others = fusion::sample_labels(&m, &int(100)).unwrap();
        for r in 1..u {
            for s in 1..v {
                for (fam, i) in [(Family::Eplus, 0), (Family::Eminus, 1)] {
                    let w = if fam == Family::Eplus { m.lambda(r, s) } else { m.lambda(u - r, v - s) };
                    let e = ModuleLabel::n2(&m, fam, i, w + int(i), r, s).unwrap();
                    let parts = groth_decompose(&m, &e).unwrap();
                    for o in &others {
                        let direct = groth_fuse_n2(&m, &e, o).unwrap();
                        let mut split = GrothVector::new();
                        for (f, &k) in &parts.terms {
                            split = split.add(&groth_fuse_n2(&m, f, o).unwrap().scale(k));
                        }
                        assert!(same(&m, &direct, &split), "({u},{v}) {e} x {o}");
                    }
                }
            }
        }
    }
}

#[test]
fn exact_rules_decompose_to_grothendieck_rules() {
    for (u, v) in [(3, 2), (2, 3), (3, 4), (2, 5)] {
        let m = MinimalModel::new(u, v).unwrap();
        let labels = fusion::sample_labels(&m, &int(100)).unwrap();
        let mut extra = Vec::new();
        // E_{1,1} against typical and lattice-hitting partners.
        for d in [rat(1, 3), rat(1, 2), int(0), int(1), m.t(), m.t() / int(2), rat(1, 4)] {
            for s in 1..v {
                for r in 1..u {
                    if let Ok(l) = e_class(&m, 0, d.clone(), r, s) {
                        if l.family == Family::ETypical {
                            extra.push(l);
                        }
                    }
                }
            }
        }
        let all: Vec<_> = labels.iter().chain(extra.iter()).cloned().collect();
        let mut covered = 0;
        for a in &all {
            for b in &all {
                match fuse_exact(&m, a, b) {
                    Ok(res) => {
                        covered += 1;
                        let ex = res.exact.unwrap();
                        let decomposed = ex.map_labels(|l| groth_decompose(&m, l)).unwrap();
                        assert!(same(&m, &decomposed, &res.grothendieck), "({u},{v}) {a} x {b}: {ex}");
                        assert_eq!(res.conjectural, a.family == Family::ETypical && b.family == Family::ETypical);
                    }
                    Err(FusionError::NoKnownExactRule(_)) => {
                        assert!(a.family != Family::L && b.family != Family::L);
                    }
                    Err(e) => panic!("{a} x {b}: {e}"),
                }
            }
        }
        assert!(covered > 50);
    }
}

#[test]
fn typical_by_typical_generic_case_for_v2() {
    let m = MinimalModel::new(3, 2).unwrap();
    let a = e_class(&m, 0, rat(1, 3), 1, 1).unwrap();
    let b = e_class(&m, 0, rat(1, 7), 1, 1).unwrap();
    let res = fuse_exact(&m, &a, &b).unwrap();
    assert!(res.conjectural);
    let p = rat(1, 3) + rat(1, 7);
    let t = m.t();
    let want: GrothVector = [
        (canonical_label(&m, &e_class(&m, -2, &p - &t, 1, 1).unwrap()).unwrap(), 1),
        (canonical_label(&m, &e_class(&m, 2, &p + &t, 1, 1).unwrap()).unwrap(), 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(res.exact.unwrap(), want);
}

#[test]
fn staggered_modules_appear_on_lattice_points() {
    // (u,v) = (2,3): E_{1,1} × E_{1,1} with p + p′ − i − i′ on λ_{1,0}.
    let m = MinimalModel::new(2, 3).unwrap();
    let a = e_class(&m, 0, rat(1, 2), 1, 1).unwrap();
    let b = e_class(&m, 0, rat(-1, 2), 1, 1).unwrap();
    let res = fuse_exact(&m, &a, &b).unwrap();
    let ex = res.exact.unwrap();
    let stag: Vec<_> = ex.terms.keys().filter(|l| l.family == Family::Staggered).collect();
    assert_eq!(stag.len(), 1, "{ex}");
    assert_eq!((stag[0].r, stag[0].s), (1, 0));
    assert_eq!(ex.total(), 2, "{ex}");
}

#[test]
fn uncovered_pairs_report_no_rule() {
    let m = MinimalModel::new(3, 2).unwrap();
    let d = ModuleLabel::n2(&m, Family::Dplus, 0, rat(1, 2), 1, 1).unwrap();
    let e = e_class(&m, 0, rat(1, 3), 1, 1).unwrap();
    for (a, b) in [(&d, &d), (&d, &e)] {
        assert!(matches!(fuse_exact(&m, a, b), Err(FusionError::NoKnownExactRule(_))));
        assert!(groth_fuse_n2(&m, a, b).is_ok());
    }
}

#[test]
fn nonunitary_l_products_embed_the_unitary_ring() {
    let (u, v) = (3, 2);
    let m = MinimalModel::new(u, v).unwrap();
    let mu = MinimalModel::new(u, 1).unwrap();
    for r in 1..u {
        for r1 in 1..u {
            for (i, j) in [(0, 0), (1, 2), (3, 1)] {
                let (p, q) = (int(r - 1 + i), int(r1 - 1 + j));
                let a = ModuleLabel::n2_l(&m, i, p.clone(), r).unwrap();
                let b = ModuleLabel::n2_l(&m, j, q.clone(), r1).unwrap();
                let got = fuse_exact(&m, &a, &b).unwrap().exact.unwrap();
                let ua = ModuleLabel::n2_l(&mu, i, p, r).unwrap();
                let ub = ModuleLabel::n2_l(&mu, j, q, r1).unwrap();
                let uni = fuse_unitary(&mu, &ua, &ub).unwrap().exact.unwrap();
                let shape = |g: &GrothVector| g.terms.iter().map(|(l, k)| (l.r, *k)).collect::<Vec<_>>();
                let mut lifted = GrothVector::new();
                for r2 in 1..u {
                    if let Ok(l) = ModuleLabel::n2_l(&m, i + j, int(r + r1 - 2 + i + j), r2) {
                        lifted.push(l, nq(u, r, r1, r2));
                    }
                }
                assert_eq!(got, lifted);
                assert_eq!(shape(&got).iter().map(|x| x.1).sum::<i64>(), shape(&uni).iter().map(|x| x.1).sum::<i64>());
            }
        }
    }
}
