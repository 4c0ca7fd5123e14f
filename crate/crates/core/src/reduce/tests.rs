use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::frontend::parse_input;
use crate::groups::{verify_witness, Assignment, BsElement, GroupElement, WreathElement};
use crate::rings::{LaurentPoly, RElem, ZkFrac};

fn sys(text: &str) -> EquationSystem {
    parse_input(text).unwrap()
}

#[test]
fn bs_identity_equation() {
    let r = reduce_bs(&sys("group BS 2\nX = 1"));
    assert_eq!(r.rows.len(), 1);
    assert_eq!(r.rows[0].render(&r.atom_names()), "1*Z_X");
    assert_eq!(r.lin, vec![AffineForm::var("r_X")]);
}

#[test]
fn bs_conjugation_collapses() {
    let r = reduce_bs(&sys("group BS 2\nX^-1 a X = a^3"));
    assert!(r.lin.is_empty());
    assert_eq!(r.rows.len(), 1);
    assert!(!r.rows[0].has_atoms());
    assert_eq!(r.rows[0].render(&r.atom_names()), "-3 + 1*2^(r_X)");
}

#[test]
fn bs_defining_relation_vanishes() {
    for k in [1, 2, 3, 5] {
        let r = reduce_bs(&sys(&format!("group BS {k}\nb^-1 a b = a^{k}")));
        assert!(r.rows.is_empty() && r.lin.is_empty());
    }
}

#[test]
fn bs_one_is_pure_linear() {
    let r = reduce_bs(&sys("group BS 1\nX Y = Y X a^2"));
    assert_eq!(r.render(), "atoms: Z_X, Z_Y\nexponents: r_X, r_Y\n  -2 = 0\n");
}

#[test]
fn wreath_commutator_with_lamp() {
    let parts = reduce_wreath(&sys("group wreath Z_2\nX a = a X"));
    assert_eq!(parts.len(), 1);
    let p = &parts[0];
    assert!(p.lin.is_empty());
    assert_eq!(p.rows.len(), 1);
    assert_eq!(p.rows[0].render(&p.atom_names()), "1 + 1*t^(x_X)");
}

#[test]
fn wreath_component_count() {
    let parts = reduce_wreath(&sys("group wreath Z^2\nX a1 = a2 X"));
    assert_eq!(parts.len(), 2);
    let parts = reduce_wreath(&sys("group wreath Z^2 x Z_3\n1 = 1"));
    assert_eq!(parts.len(), 3);
    assert!(parts.iter().all(|p| p.rows.is_empty() && p.lin.is_empty()));
}

#[test]
fn trivial_abelian_part_keeps_shifts() {
    let s = sys("group wreath Z^0\nX^2 = t");
    let merged = merge_components(&reduce_wreath(&s), &s);
    assert_eq!(merged.lin, vec![AffineForm::from_parts([("x_X".to_string(), BigInt::from(2))], -1)]);
}

fn k2() -> KRing {
    KRing { k: 2 }
}

fn term(atom: Option<usize>, exp: AffineForm, c: i64) -> ExpSum<KRing> {
    ExpSum::monomial(&k2(), atom, exp, ZkFrac::from_int(c, 2))
}

#[test]
fn triangular_single_unknown() {
    let row = term(Some(0), AffineForm::var("r"), 1).add(&term(None, AffineForm::zero(), -3));
    let b = triangularize(&[row], 16).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].pivots.len(), 1);
    assert!(b[0].residuals.is_empty() && b[0].nonzero.is_empty());
}

#[test]
fn triangular_shared_unknown() {
    let r1 = term(Some(0), AffineForm::zero(), 1).add(&term(None, AffineForm::var("y"), -1));
    let r2 = term(Some(0), AffineForm::zero(), 1).add(&term(None, AffineForm::zero(), -4));
    let b = triangularize(&[r1, r2], 16).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].residuals.len(), 1);
    assert_eq!(b[0].residuals[0].render(&[]), "-4 + 1*2^(y)");
}

#[test]
fn triangular_split_on_binomial() {
    let coeff = term(Some(0), AffineForm::var("r"), 1).add(&term(Some(0), AffineForm::var("s"), -1));
    let b = triangularize(std::slice::from_ref(&coeff), 16).unwrap();
    assert_eq!(b.len(), 2);
    let zero = b.iter().find(|t| t.pivots.is_empty()).unwrap();
    assert_eq!(zero.residuals, vec![coeff.coefficient(0)]);
    // with a nonzero constant the vanishing branch is contradictory
    let row = coeff.add(&term(None, AffineForm::zero(), -1));
    assert_eq!(triangularize(&[row], 16).unwrap().len(), 1);
    let nz = b.iter().find(|t| !t.pivots.is_empty()).unwrap();
    assert_eq!(nz.nonzero.len(), 1);
}

#[test]
fn sign_split_matches_hand_computation() {
    // k^y1 - k^y2 + k^y3 + 5 with y1 negated
    let e = term(None, AffineForm::var("y1"), 1)
        .add(&term(None, AffineForm::var("y2"), -1))
        .add(&term(None, AffineForm::var("y3"), 1))
        .add(&term(None, AffineForm::zero(), 5));
    let tri = TriSystem { pivots: vec![], residuals: vec![e.clone()], nonzero: vec![] };
    let natural: BTreeSet<String> = ["y2".to_string(), "y3".to_string()].into();
    let branches = sign_split(&tri, &natural);
    assert_eq!(branches.len(), 2);
    let neg = branches.iter().find(|b| b.signs["y1"] == Sign::Neg).unwrap();
    let expected = term(None, AffineForm::zero(), 1)
        .add(&term(None, AffineForm::var("y1").add(&AffineForm::var("y2")), -1))
        .add(&term(None, AffineForm::var("y1").add(&AffineForm::var("y3")), 1))
        .add(&term(None, AffineForm::var("y1"), 5));
    assert_eq!(neg.system.residuals[0], expected);
    let all: BTreeSet<String> = ["y1", "y2", "y3"].iter().map(|s| s.to_string()).collect();
    let same = sign_split(&tri, &all);
    assert_eq!(same.len(), 1);
    assert_eq!(same[0].system.residuals[0], e);
    let one = TriSystem { pivots: vec![], residuals: vec![term(None, AffineForm::var("y"), 1)], nonzero: vec![] };
    assert_eq!(sign_split(&one, &BTreeSet::new()).len(), 2);
}

fn point(vals: &[(&str, i64)]) -> BTreeMap<String, BigInt> {
    vals.iter().map(|(k, v)| (k.to_string(), BigInt::from(*v))).collect()
}

fn branch_holds(t: &TriSystem<KRing>, p: &BTreeMap<String, BigInt>, z: &[ZkFrac]) -> bool {
    t.pivots.iter().all(|pv| pv.row.eval(p, z).unwrap().is_zero())
        && t.residuals.iter().all(|r| r.eval(p, z).unwrap().is_zero())
        && t.nonzero.iter().all(|r| !r.eval(p, z).unwrap().is_zero())
}

fn small_row() -> impl Strategy<Value = ExpSum<KRing>> {
    let exp = prop_oneof![
        Just(AffineForm::zero()),
        Just(AffineForm::var("y1")),
        Just(AffineForm::var("y2")),
        Just(AffineForm::var("y1").sub(&AffineForm::var("y2"))),
    ];
    proptest::collection::vec((prop_oneof![Just(None), Just(Some(0usize)), Just(Some(1usize))], exp, -2i64..3), 1..5)
        .prop_map(|ts| {
            let mut s = ExpSum::zero(&k2());
            for (a, e, c) in ts {
                s.add_term(a, e, ZkFrac::from_int(c, 2));
            }
            s
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn triangularize_is_equivalent(rows in proptest::collection::vec(small_row(), 1..3)) {
        let branches = triangularize(&rows, 256).unwrap();
        let vals: Vec<ZkFrac> = [-2i64, -1, 0, 1, 2].iter().map(|&v| ZkFrac::from_int(v, 2))
            .chain([ZkFrac::new(1, 1, 2), ZkFrac::new(-3, 2, 2)]).collect();
        for y1 in 0..4 {
            for y2 in 0..4 {
                let p = point(&[("y1", y1), ("y2", y2)]);
                for z0 in &vals {
                    for z1 in &vals {
                        let z = [z0.clone(), z1.clone()];
                        let orig = rows.iter().all(|r| r.eval(&p, &z).unwrap().is_zero());
                        let any = branches.iter().any(|b| branch_holds(b, &p, &z));
                        prop_assert_eq!(orig, any);
                    }
                }
            }
        }
    }
}

// reduction soundness on random systems and assignments

fn bs_assignment(k: u32, vals: &[(i64, u64, i64)]) -> Assignment {
    ["X", "Y"]
        .iter()
        .zip(vals)
        .map(|(n, (z, i, r))| {
            (n.to_string(), GroupElement::Bs(BsElement::new(ZkFrac::new(*z, *i, k), BigInt::from(*r))))
        })
        .collect()
}

pub(crate) fn reduced_bs_holds(red: &ExpLinSystem, asg: &Assignment) -> bool {
    let mut p = BTreeMap::new();
    let mut z = Vec::new();
    for a in &red.atoms {
        let e = asg[&a.var].as_bs().unwrap();
        p.insert(format!("r_{}", a.var), e.r.clone());
        z.push(e.u.clone());
    }
    red.lin.iter().all(|l| l.eval(&p).unwrap() == BigInt::from(0))
        && red.rows.iter().all(|r| r.eval(&p, &z).unwrap().is_zero())
}

pub(crate) fn reduced_wreath_holds(parts: &[WreathCompSystem], s: &EquationSystem, asg: &Assignment) -> bool {
    let merged = merge_components(parts, s);
    let mut p = BTreeMap::new();
    let mut polys = Vec::new();
    for a in &merged.atoms {
        let e = asg[&a.var].as_wreath().unwrap();
        p.insert(format!("x_{}", a.var), e.x.clone());
        polys.push(e.p.terms().map(|(d, c)| (d, c.component(a.component))).filter(|(_, c)| *c != BigInt::from(0)).collect());
    }
    for v in &s.variables {
        let e = asg[v].as_wreath().unwrap();
        p.insert(format!("x_{v}"), e.x.clone());
    }
    merged.lin.iter().all(|l| l.eval(&p).unwrap() == BigInt::from(0))
        && merged.rows.iter().all(|r| r.eval(&p, &polys).unwrap().is_empty())
}

fn word(gens: &'static [&'static str]) -> impl Strategy<Value = String> {
    let letter = (0..gens.len() + 2, prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)]).prop_map(move |(i, e)| {
        let name = if i < gens.len() { gens[i] } else if i == gens.len() { "X" } else { "Y" };
        if e == 1 { name.to_string() } else { format!("{name}^{e}") }
    });
    proptest::collection::vec(letter, 0..4).prop_map(|ls| if ls.is_empty() { "1".into() } else { ls.join(" ") })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn bs_reduction_sound(
        k in 2u32..4,
        eqs in proptest::collection::vec((word(&["a", "b"]), word(&["a", "b"])), 1..3),
        vals in proptest::collection::vec((-3i64..4, 0u64..2, -2i64..3), 2),
    ) {
        let text = format!("group BS {k}\n{}", eqs.iter().map(|(l, r)| format!("{l} = {r}")).collect::<Vec<_>>().join("\n"));
        let s = sys(&text);
        let red = reduce_bs(&s);
        let mut asg = bs_assignment(k, &vals);
        asg.retain(|v, _| s.variables.contains(v));
        for v in &s.variables { asg.entry(v.clone()).or_insert_with(|| s.spec.identity()); }
        prop_assert_eq!(verify_witness(&s, &asg).unwrap(), reduced_bs_holds(&red, &asg));
    }

    #[test]
    fn wreath_reduction_sound(
        eqs in proptest::collection::vec((word(&["t", "a1", "c1"]), word(&["t", "a1", "c1"])), 1..3),
        polys in proptest::collection::vec((proptest::collection::vec((-2i64..3, -2i64..3, 0i64..2), 0..3), -2i64..3), 2),
    ) {
        let s = sys(&format!("group wreath Z^1 x Z_2\n{}", eqs.iter().map(|(l, r)| format!("{l} = {r}")).collect::<Vec<_>>().join("\n")));
        let GroupSpec::Wreath { shape } = &s.spec else { unreachable!() };
        let shape: Arc<_> = shape.clone();
        let mut asg = Assignment::new();
        for (v, (ts, x)) in ["X", "Y"].iter().zip(&polys) {
            let p = LaurentPoly::from_terms(ts.iter().map(|(d, a, c)| {
                (*d, RElem::from_components(&shape, &[BigInt::from(*a), BigInt::from(*c)]))
            }));
            if s.variables.iter().any(|x| x == v) {
                asg.insert(v.to_string(), GroupElement::Wreath(WreathElement::new(p, BigInt::from(*x))));
            }
        }
        let parts = reduce_wreath(&s);
        prop_assert_eq!(verify_witness(&s, &asg).unwrap(), reduced_wreath_holds(&parts, &s, &asg));
    }
}
