use catalog::*;
use proptest::prelude::*;
use series_core::{int, parse_rat, rat, Rational};

fn mm(u: i64, v: i64) -> MinimalModel {
    MinimalModel::new(u, v).unwrap()
}

fn q(s: &str) -> Rational {
    parse_rat(s).unwrap()
}

/// Kac table of M(4,1): (r, p, parity, j, Δ, ramond).
const TABLE1: &[(i64, i64, &str, &str, &str, bool)] = &[
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

/// Reduced table of M(4,1): (r, p, j, Δ).
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

#[test]
fn kac_table_matches_table_one() {
    let t = kac_table(4).unwrap();
    assert_eq!(t.full.len(), TABLE1.len());
    for &(r, p, par, j, d, ramond) in TABLE1 {
        let c = t.cell(r, p).unwrap_or_else(|| panic!("missing cell ({r},{p})"));
        assert_eq!(c.data.parity.symbol(), par, "parity at ({r},{p})");
        assert_eq!(c.data.j, q(j), "j at ({r},{p})");
        assert_eq!(c.data.delta, q(d), "Delta at ({r},{p})");
        assert_eq!(c.data.sector == Sector::R, ramond, "sector at ({r},{p})");
    }
    assert_eq!(t.reduced.len(), REDUCED.len());
    for &(r, p, j, d) in REDUCED {
        let c = t.reduced_cell(r, p).unwrap();
        assert_eq!((c.data.j.clone(), c.data.delta.clone()), (q(j), q(d)), "reduced ({r},{p})");
    }
}

#[test]
fn reduced_table_uniform_parametrisation() {
    for u in 2..=7 {
        let t = kac_table(u).unwrap();
        for c in &t.reduced {
            let e = if (c.p + c.r) % 2 == 0 { 1 } else { 0 };
            let j = rat(c.p, u) + rat(e, 2);
            let d = rat(c.r * c.r - c.p * c.p - 1, 4 * u) + rat(e, 8);
            assert_eq!(c.data.j, j);
            assert_eq!(c.data.delta, d);
            assert_eq!(c.data.sector == Sector::NS, (c.p + c.r) % 2 != 0);
        }
        assert_eq!(t.full.len() as i64, 2 * u * (u - 1));
    }
}

#[test]
fn unitary_dictionary_examples() {
    let m = mm(4, 1);
    let d = dictionary_unitary(&m, 0, 0, 1).unwrap();
    assert_eq!((d.parity, d.j, d.delta), (Parity::Even, int(0), int(0)));
    let d = dictionary_unitary(&m, 1, -1, 1).unwrap();
    assert_eq!((d.parity, d.j, d.delta), (Parity::Odd, rat(1, 4), rat(1, 16)));
    let d = dictionary_unitary(&m, 0, 2, 3).unwrap();
    assert_eq!((d.parity, d.j, d.delta), (Parity::Even, rat(1, 2), rat(1, 4)));
    assert!(matches!(dictionary_unitary(&m, 1, 0, 1), Err(CatalogError::ParityMismatch(_))));
    let rev = dictionary_unitary(&m, 2, 0, 1).unwrap();
    assert_eq!(rev.parity, Parity::Odd);
}

#[test]
fn nonunitary_l_formulas_agree_with_unitary_dictionary() {
    for u in 2..=6 {
        let m = mm(u, 1);
        for r in 1..u {
            // The three-branch formulas hold on [−(2u−r−1), 2u−r−1]; beyond it
            // only the periodicity applies.
            for p in -(2 * u - r - 1)..=(2 * u - r - 1) {
                for i in 0..4 {
                    if (p - i - r + 1).rem_euclid(2) != 0 {
                        continue;
                    }
                    let l = ModuleLabel::n2_l(&m, i, int(p), r).unwrap();
                    let a = dictionary_nonunitary(&m, &l).unwrap();
                    let b = dictionary_unitary(&m, i, p, r).unwrap();
                    assert_eq!(a, b, "u={u} (i,p,r)=({i},{p},{r})");
                }
            }
        }
    }
}

#[test]
fn nonunitary_examples() {
    let m = mm(3, 2);
    let l = ModuleLabel::n2_l(&m, 0, int(0), 1).unwrap();
    let d = dictionary_nonunitary(&m, &l).unwrap();
    assert_eq!((d.parity, d.j, d.delta), (Parity::Even, int(0), int(0)));
    let l = ModuleLabel::n2_l(&m, 0, int(2), 1).unwrap();
    let d = dictionary_nonunitary(&m, &l).unwrap();
    assert_eq!((d.parity, d.j, d.delta), (Parity::Odd, rat(1, 3), rat(-1, 6)));
    let p = rat(1, 4);
    let e = ModuleLabel::n2(&m, Family::ETypical, 0, p.clone(), 1, 1).unwrap();
    let d = dictionary_nonunitary(&m, &e).unwrap();
    assert_eq!((d.parity, d.j.clone(), d.delta.clone()), (Parity::Even, &p / m.t(), m.h(&p, 1, 1)));
}

#[test]
fn d_branch_formulas() {
    let m = mm(2, 3);
    let t = m.t();
    let lam = m.lambda(1, 1);
    for k in -4..=4 {
        let p = &lam + int(2 * k);
        let l = ModuleLabel::n2(&m, Family::Dplus, 0, p.clone(), 1, 1).unwrap();
        let d = dictionary_nonunitary(&m, &l).unwrap();
        let h = m.h(&p, 1, 1);
        if k <= 0 {
            assert_eq!((d.parity, d.j, d.delta), (Parity::Even, &p / &t, h));
        } else {
            let shift = (&p - &lam - int(1)) / int(2);
            assert_eq!((d.parity, d.j, d.delta), (Parity::Odd, &p / &t - int(1), h + shift));
        }
        let pr = &p + int(1);
        let l = ModuleLabel::n2(&m, Family::Dplus, 1, pr.clone(), 1, 1).unwrap();
        let d = dictionary_nonunitary(&m, &l).unwrap();
        let h = m.h(&pr, 1, 1) + rat(1, 8);
        if pr <= &lam - int(1) {
            assert_eq!((d.parity, d.j, d.delta), (Parity::Odd, &pr / &t + rat(1, 2), h));
        } else {
            let shift = (&pr - &lam - int(1)) / int(2);
            assert_eq!((d.parity, d.j, d.delta), (Parity::Even, &pr / &t - rat(1, 2), h + shift));
        }
    }
}

#[test]
fn weights_examples_and_symmetry() {
    let m = mm(3, 2);
    let (l, d, _) = weights(&m, 1, 1, &int(0)).unwrap();
    assert_eq!((l.clone(), d.clone()), (rat(-3, 2), rat(-1, 8)));
    // Δ = j(j+1)/t with j = λ/2
    let j = &l / int(2);
    assert_eq!(d, &j * (&j + int(1)) / m.t());
    for (u, v) in [(3, 2), (2, 3), (5, 3), (4, 1), (7, 4)] {
        let m = mm(u, v);
        let (l0, d0, _) = weights(&m, 1, 0, &int(0)).unwrap();
        assert_eq!((l0, d0), (int(0), int(0)));
        for r in 1..u {
            for s in 1..v {
                assert_eq!(m.lambda(u - r, v - s), -m.lambda(r, s) - int(2));
                assert_eq!(m.delta(u - r, v - s), m.delta(r, s));
            }
        }
    }
    assert!(weights(&m, 3, 0, &int(0)).is_err());
}

#[test]
fn canonical_label_examples() {
    let m = mm(4, 1);
    let a = canonical_label(&m, &ModuleLabel::n2_l(&m, 0, int(0), 1).unwrap()).unwrap();
    let b = canonical_label(&m, &ModuleLabel::n2_l(&m, 2, int(4), 3).unwrap()).unwrap();
    assert_eq!(a, b);
    let c = canonical_label(&m, &ModuleLabel::n2_l(&m, 0, int(8), 1).unwrap()).unwrap();
    assert_eq!(c, a);
    // Kac-symmetric cells carry opposite table parity: the i+2 shift reverses it.
    let t = kac_table(4).unwrap();
    assert_eq!(t.cell(1, 0).unwrap().data.cell(), "+;0;0");
    assert_eq!(t.cell(3, 4).unwrap().data.cell(), "-;0;0");
    let n = mm(3, 2);
    let d = ModuleLabel::n2(&n, Family::Dplus, 0, rat(1, 2), 1, 1).unwrap();
    assert_eq!(canonical_label(&n, &d).unwrap(), d);
}

#[test]
fn twist_examples() {
    let m = mm(4, 1);
    let vac = ModuleLabel::n2_l(&m, 0, int(0), 1).unwrap();
    assert_eq!(twist_label(&m, &vac, 0, true).unwrap(), vac);
    let start = ModuleLabel::n2_l(&m, 1, int(0), 2).unwrap();
    let orbit = orbits(4).unwrap().into_iter().find(|o| o.members.contains(&start)).unwrap();
    let eight = twist_label(&m, &start, 8, false).unwrap();
    assert!(orbit.members.contains(&eight));
    assert_eq!(twist_label(&m, &start, orbit.length as i64, false).unwrap(), start);
    let n = mm(3, 2);
    let d = ModuleLabel::n2(&n, Family::Dplus, 0, rat(1, 2), 1, 1).unwrap();
    let c = twist_label(&n, &d, 0, true).unwrap();
    assert_eq!(c, ModuleLabel::n2(&n, Family::Dminus, 0, rat(-1, 2), 1, 1).unwrap());
}

#[test]
fn orbit_census() {
    let lens = |u| {
        let mut v: Vec<usize> = orbits(u).unwrap().iter().map(|o| o.length).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    assert_eq!(lens(4), vec![8, 8, 8]);
    assert_eq!(lens(5), vec![20, 20]);
    assert_eq!(lens(6), vec![12, 12, 12, 12, 6, 6]);
    assert!(orbits(5).unwrap().iter().all(|o| o.parity_closed));
    assert_eq!(orbits(4).unwrap().iter().filter(|o| o.parity_closed).count(), 1);
    for u in 2..=9 {
        let total: usize = orbits(u).unwrap().iter().map(|o| o.length).sum();
        assert_eq!(total as i64, 2 * u * (u - 1), "u = {u}");
    }
}

#[test]
fn orbit_representatives_have_zero_momentum() {
    for u in [4, 5, 6] {
        for o in orbits(u).unwrap() {
            let p = o.representative.p.clone();
            assert!(p == int(0) || p == int(u), "{}", o.representative);
        }
    }
    let reps: Vec<(i64, i64)> =
        orbits(5).unwrap().iter().map(|o| (o.representative.i, o.representative.r)).collect();
    // representatives (r−1, 0, r) for r = 1, 2
    assert_eq!(reps, vec![(0, 1), (1, 2)]);
}

#[test]
fn half_flow_matches_highest_weight_rule() {
    for (u, v) in [(4, 1), (5, 1), (3, 2), (2, 3), (5, 3)] {
        let m = mm(u, v);
        for l in sample_irreducibles(&m) {
            let d0 = hw_data(&m, &l).unwrap();
            let l1 = twist_label(&m, &l, 1, false).unwrap();
            let d1 = hw_data(&m, &l1).unwrap();
            assert_eq!(d0.half_flow(&m), d1, "half flow of {l}");
            let c = twist_label(&m, &l, 0, true).unwrap();
            assert_eq!(d0.conjugate(&m), hw_data(&m, &c).unwrap(), "conjugate of {l}");
            let flips = d0.sector == Sector::R && d0.delta != m.c() / int(24);
            assert_eq!(d0.parity != d1.parity, flips, "parity rule for {l}");
        }
    }
}

#[test]
fn groth_decompose_examples() {
    let m = mm(3, 2);
    let e = ModuleLabel::n2(&m, Family::Eplus, 0, rat(1, 2), 1, 1).unwrap();
    let g = groth_decompose(&m, &e).unwrap();
    let want: GrothVector = [
        (ModuleLabel::n2(&m, Family::Dplus, 0, rat(1, 2), 1, 1).unwrap(), 1),
        (ModuleLabel::n2_l(&m, 2, int(2), 1).unwrap(), 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(g, want);
    let s = ModuleLabel::n2(&m, Family::Staggered, 0, int(0), 1, 0).unwrap();
    assert_eq!(groth_decompose(&m, &s).unwrap().total(), 4);
    let l = ModuleLabel::n2_l(&m, 1, int(1), 1).unwrap();
    assert_eq!(groth_decompose(&m, &l).unwrap(), GrothVector::single(l));
}

#[test]
fn highest_weight_criterion() {
    let m = mm(3, 2);
    let lam = m.lambda(1, 1);
    let e = |p: Rational| ModuleLabel::n2(&m, Family::Eplus, 0, p, 1, 1).unwrap();
    assert!(is_highest_weight(&m, &e(rat(1, 2))).unwrap());
    assert!(is_highest_weight(&m, &e(&lam + int(2))).unwrap());
    assert!(!is_highest_weight(&m, &e(lam.clone())).unwrap());
    // a non-integer offset cannot sit on the lattice
    assert!(ModuleLabel::n2(&m, Family::Eplus, 0, &lam + int(1), 1, 1).is_err());
}

#[test]
fn eplus_and_eminus_factors_are_conjugate() {
    for (u, v) in [(3, 2), (2, 3), (5, 3), (3, 4)] {
        let m = mm(u, v);
        for r in 1..u {
            for s in 1..v {
                for i in 0..4 {
                    for k in -2..=2 {
                        let p = m.lambda(r, s) + int(i + 2 * k);
                        let ep = ModuleLabel::n2(&m, Family::Eplus, i, p.clone(), r, s).unwrap();
                        let em = twist_label(&m, &ep, 0, true).unwrap();
                        assert_eq!(em.family, Family::Eminus);
                        let lhs = groth_decompose(&m, &em).unwrap().iso_normalized(&m).unwrap();
                        let rhs = groth_decompose(&m, &ep)
                            .unwrap()
                            .map_labels(|f| Ok(GrothVector::single(twist_label(&m, f, 0, true)?)))
                            .unwrap()
                            .iso_normalized(&m)
                            .unwrap();
                        assert_eq!(lhs, rhs, "{ep}");
                    }
                }
            }
        }
    }
}

#[test]
fn staggered_top_equivalence() {
    for (u, v) in [(3, 2), (2, 3), (5, 3)] {
        let m = mm(u, v);
        for r in 1..u {
            let p = m.lambda(r, v - 1) + int(2);
            let a = ModuleLabel::n2(&m, Family::Staggered, 0, p.clone(), r, v - 1).unwrap();
            let b = ModuleLabel::n2(&m, Family::Staggered, 2, p - m.t(), u - r, 0).unwrap();
            let ga = groth_decompose(&m, &a).unwrap().iso_normalized(&m).unwrap();
            let gb = groth_decompose(&m, &b).unwrap().iso_normalized(&m).unwrap();
            assert_eq!(ga, gb);
        }
    }
}

#[test]
fn label_text_round_trip() {
    let m = mm(3, 2);
    for l in sample_irreducibles(&m) {
        assert_eq!(ModuleLabel::parse(&m, &l.to_string()).unwrap(), l);
    }
    let l = ModuleLabel::parse(&m, "N2:L[i=0,p=0,r=1]").unwrap();
    assert_eq!(l, ModuleLabel::n2_l(&m, 0, int(0), 1).unwrap());
    let s = ModuleLabel::parse(&m, "SL2:E[r=1,s=1,lambda=1/3,flow=-1]").unwrap();
    assert_eq!((s.flow, s.lambda.clone()), (-1, rat(1, 3)));
    assert_eq!(ModuleLabel::parse(&m, "GH:5").unwrap(), ModuleLabel::ghost(1));
    assert!(ModuleLabel::parse(&m, "N2:L[i=1,p=0,r=1]").is_err());
}

#[test]
fn sl2_flow_pushes_to_coset_shift() {
    for (u, v) in [(3, 2), (2, 3), (5, 3)] {
        let m = mm(u, v);
        let t = m.t();
        for r in 1..u {
            for s in 0..v {
                let fam = if s == 0 { Family::L } else { Family::Dplus };
                let base = ModuleLabel::sl2(&m, fam, r, s, int(0), 0).unwrap();
                let flowed = twist_label(&m, &base, 2, false).unwrap();
                for i in 0..4 {
                    let p = m.lambda(r, s) + &t + int(i + 2);
                    let lhs = coset_of_sl2(&m, &flowed, i, p.clone()).unwrap();
                    let rhs = coset_of_sl2(&m, &base, i + 2, p - &t).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

fn sample_irreducibles(m: &MinimalModel) -> Vec<ModuleLabel> {
    let mut out = Vec::new();
    for r in 1..m.u {
        for s in 0..m.v {
            for i in 0..4 {
                for k in -3..=3 {
                    let base = m.lambda(r, s) + int(i + 2 * k);
                    if s == 0 {
                        out.push(ModuleLabel::n2_l(m, i, base, r).unwrap());
                    } else {
                        out.push(ModuleLabel::n2(m, Family::Dplus, i, base.clone(), r, s).unwrap());
                        let minus = -m.lambda(r, s) + int(i + 2 * k);
                        out.push(ModuleLabel::n2(m, Family::Dminus, i, minus, r, s).unwrap());
                        let typ = base + rat(1, 3);
                        if let Ok(e) = ModuleLabel::n2(m, Family::ETypical, i, typ, r, s) {
                            out.push(e);
                        }
                    }
                }
            }
        }
    }
    out
}

fn arb_label() -> impl Strategy<Value = (MinimalModel, ModuleLabel)> {
    (prop::sample::select(vec![(3, 2), (2, 3), (5, 3), (4, 1), (5, 1)]), any::<prop::sample::Index>())
        .prop_map(|((u, v), ix)| {
            let m = mm(u, v);
            let all = sample_irreducibles(&m);
            let l = ix.get(&all).clone();
            (m, canonical_label(&m, &l).unwrap())
        })
}

proptest! {
    #[test]
    fn conjugation_is_involution((m, l) in arb_label()) {
        let c = twist_label(&m, &l, 0, true).unwrap();
        prop_assert_eq!(twist_label(&m, &c, 0, true).unwrap(), l);
    }

    #[test]
    fn dihedral_relation((m, l) in arb_label(), h in -5i64..=5) {
        let a = twist_label(&m, &twist_label(&m, &l, 0, true).unwrap(), h, false).unwrap();
        let b = twist_label(&m, &twist_label(&m, &l, -h, false).unwrap(), 0, true).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn iso_rep_preserves_highest_weight((m, l) in arb_label()) {
        let rep = iso_rep(&m, &l).unwrap();
        prop_assert_eq!(hw_data(&m, &rep).unwrap(), hw_data(&m, &l).unwrap());
    }

    #[test]
    fn sector_matches_ghost_index((m, l) in arb_label()) {
        let d = hw_data(&m, &l).unwrap();
        prop_assert_eq!(d.sector == Sector::NS, l.i % 2 == 0);
        prop_assert!(l.i >= 0 && l.i < 4);
    }
}
