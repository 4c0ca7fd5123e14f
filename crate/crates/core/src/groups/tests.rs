use super::*;
use crate::frontend::parse_system;
use crate::rings::{LaurentPoly, RElem, ZkFrac};
use proptest::prelude::*;

fn bs(u: ZkFrac, r: i64) -> GroupElement {
    GroupElement::Bs(BsElement::new(u, BigInt::from(r)))
}

fn wr(shape: &Arc<AbelianShape>, terms: &[(i64, &[i64])], x: i64) -> GroupElement {
    let p = LaurentPoly::from_terms(terms.iter().map(|(d, cs)| {
        let vals: Vec<BigInt> = cs.iter().map(|&c| BigInt::from(c)).collect();
        (*d, RElem::from_components(shape, &vals))
    }));
    GroupElement::Wreath(WreathElement::new(p, BigInt::from(x)))
}

fn shape_of(spec: &GroupSpec) -> Arc<AbelianShape> {
    match spec {
        GroupSpec::Wreath { shape } => shape.clone(),
        GroupSpec::Bs { .. } => unreachable!(),
    }
}

#[test]
fn bs_product_examples() {
    let s = GroupSpec::bs(2);
    let g = bs(ZkFrac::one(2), 1);
    let h = bs(ZkFrac::one(2), -1);
    let gh = s.mul(&g, &h).unwrap();
    assert_eq!(gh, bs(ZkFrac::new(3, 1, 2), 0));
    assert_eq!(gh.to_string(), "3*2^-1 | 0");
    assert_eq!(s.mul(&g, &s.identity()).unwrap(), g);
    let alpha = bs(ZkFrac::new(5, 2, 2), 3);
    let inv = s.inv(&alpha).unwrap();
    assert_eq!(inv, bs(ZkFrac::new(-10, 0, 2), -3));
    assert_eq!(s.mul(&alpha, &inv).unwrap(), s.identity());
    assert_eq!(s.inv(&s.identity()).unwrap(), s.identity());
}

#[test]
fn wreath_product_examples() {
    let l2 = GroupSpec::wreath(0, vec![2]);
    let sh = shape_of(&l2);
    let a = wr(&sh, &[(0, &[1])], 0);
    assert_eq!(l2.mul(&a, &a).unwrap(), l2.identity());
    let zz = GroupSpec::wreath(1, vec![]);
    let sz = shape_of(&zz);
    let g = wr(&sz, &[(2, &[1])], 1);
    assert_eq!(zz.inv(&g).unwrap(), wr(&sz, &[(1, &[-1])], -1));
    let h = wr(&sh, &[(0, &[1]), (1, &[1])], 0);
    assert_eq!(h.to_string(), "{0:1, 1:1} | 0");
}

#[test]
fn word_evaluation() {
    let s = GroupSpec::bs(2);
    let sys = parse_system("b^-1 a b = a^2", &s).unwrap();
    let lhs = s.eval_word(&sys.equations[0].lhs, &Assignment::new()).unwrap();
    assert_eq!(lhs, bs(ZkFrac::from_int(2, 2), 0));
    let sys = parse_system("X^-1 a X = 1", &s).unwrap();
    for r in -3..4 {
        let mut asg = Assignment::new();
        asg.insert("X".into(), bs(ZkFrac::zero(2), r));
        let v = s.eval_word(&sys.equations[0].lhs, &asg).unwrap();
        assert_eq!(v, bs(ZkFrac::k_pow(2, r), 0));
    }
    let err = s.eval_word(&sys.equations[0].lhs, &Assignment::new()).unwrap_err();
    assert_eq!(err, GroupError::UnboundVariable("X".into()));
}

#[test]
fn witness_examples() {
    let s = GroupSpec::bs(2);
    let sys = parse_system("X^2 = a^3", &s).unwrap();
    let mut asg = Assignment::new();
    asg.insert("X".into(), bs(ZkFrac::new(3, 1, 2), 0));
    assert!(verify_witness(&sys, &asg).unwrap());
    let sys = parse_system("X = a", &s).unwrap();
    asg.insert("X".into(), s.identity());
    assert!(!verify_witness(&sys, &asg).unwrap());
    let l2 = GroupSpec::wreath(0, vec![2]);
    let sys = parse_system("X a = a X", &l2).unwrap();
    let mut asg = Assignment::new();
    asg.insert("X".into(), wr(&shape_of(&l2), &[(0, &[1]), (1, &[1])], 0));
    assert!(verify_witness(&sys, &asg).unwrap());
}

#[test]
fn bs_defining_relation() {
    for k in [1u32, 2, 3, 5] {
        let s = GroupSpec::bs(k);
        let sys = parse_system(&format!("b^-1 a b = a^{k}"), &s).unwrap();
        assert!(verify_witness(&sys, &Assignment::new()).unwrap());
    }
}

#[test]
fn record_round_trip() {
    let s = GroupSpec::wreath(1, vec![3]);
    let g = wr(&shape_of(&s), &[(-1, &[4, 2]), (3, &[0, 1])], -2);
    let rec = g.to_record();
    assert_eq!(GroupElement::from_record(&rec, &s).unwrap(), g);
    let b = GroupSpec::bs(3);
    let h = bs(ZkFrac::new(7, 2, 3), 5);
    assert_eq!(GroupElement::from_record(&h.to_record(), &b).unwrap(), h);
    assert!(GroupElement::from_record(&h.to_record(), &s).is_err());
}

fn bs_elem(k: u32) -> impl Strategy<Value = GroupElement> {
    (-20i64..20, 0u64..4, -5i64..5).prop_map(move |(z, i, r)| bs(ZkFrac::new(z, i, k), r))
}

fn wr_elem(shape: Arc<AbelianShape>) -> impl Strategy<Value = GroupElement> {
    let n = shape.components();
    (proptest::collection::vec((-3i64..4, proptest::collection::vec(-4i64..5, n)), 0..4), -3i64..4).prop_map(
        move |(ts, x)| {
            let terms: Vec<(i64, Vec<i64>)> = ts;
            let refs: Vec<(i64, &[i64])> = terms.iter().map(|(d, c)| (*d, c.as_slice())).collect();
            wr(&shape, &refs, x)
        },
    )
}

fn matrix_mul(g: &WreathElement, h: &WreathElement) -> WreathElement {
    // [[t^x1, P1], [0, 1]] * [[t^x2, P2], [0, 1]] = [[t^(x1+x2), P1 + t^x1 P2], [0, 1]]
    let x1 = g.x.to_i64().unwrap();
    let mut p = g.p.clone();
    for (d, c) in h.p.terms() {
        p.add_term(d + x1, c.clone());
    }
    WreathElement::new(p, &g.x + &h.x)
}

use num_traits::ToPrimitive;

proptest! {
    #[test]
    fn bs_axioms((k, g, h, f) in (1u32..6).prop_flat_map(|k| (Just(k), bs_elem(k), bs_elem(k), bs_elem(k)))) {
        let s = GroupSpec::bs(k);
        let lhs = s.mul(&s.mul(&g, &h).unwrap(), &f).unwrap();
        let rhs = s.mul(&g, &s.mul(&h, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(s.mul(&s.identity(), &g).unwrap(), g.clone());
        prop_assert_eq!(s.mul(&g, &s.inv(&g).unwrap()).unwrap(), s.identity());
        prop_assert_eq!(s.mul(&s.inv(&g).unwrap(), &g).unwrap(), s.identity());
    }

    #[test]
    fn wreath_axioms_and_matrix_model(
        g in wr_elem(Arc::new(AbelianShape::new(1, vec![2, 6]))),
        h in wr_elem(Arc::new(AbelianShape::new(1, vec![2, 6]))),
        f in wr_elem(Arc::new(AbelianShape::new(1, vec![2, 6]))),
    ) {
        let s = GroupSpec::wreath(1, vec![2, 6]);
        let lhs = s.mul(&s.mul(&g, &h).unwrap(), &f).unwrap();
        let rhs = s.mul(&g, &s.mul(&h, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(s.mul(&g, &s.inv(&g).unwrap()).unwrap(), s.identity());
        let gm = g.as_wreath().unwrap();
        let hm = h.as_wreath().unwrap();
        prop_assert_eq!(s.mul(&g, &h).unwrap(), GroupElement::Wreath(matrix_mul(gm, hm)));
    }

    #[test]
    fn eval_is_multiplicative(w1 in "[ab]( [ab]\\^-?[1-3]){0,4}", w2 in "[ab]( [ab]\\^-?[1-3]){0,4}", k in 1u32..4) {
        let s = GroupSpec::bs(k);
        let sys = parse_system(&format!("{w1} = {w2}"), &s).unwrap();
        let (l, r) = (&sys.equations[0].lhs, &sys.equations[0].rhs);
        let e = Assignment::new();
        let both = s.eval_word(&l.concat(r), &e).unwrap();
        let prod = s.mul(&s.eval_word(l, &e).unwrap(), &s.eval_word(r, &e).unwrap()).unwrap();
        prop_assert_eq!(both, prod);
    }
}

#[test]
fn bs_words_evaluate_back() {
    let s = GroupSpec::bs(2);
    let cases = [
        (BsElement::new(ZkFrac::zero(2), BigInt::from(2)), "b^2"),
        (BsElement::new(ZkFrac::new(3, 1, 2), BigInt::from(0)), "b a^3 b^-1"),
        (BsElement::new(ZkFrac::from_int(-5, 2), BigInt::from(1)), "a^-5 b"),
        (BsElement::identity(2), "1"),
    ];
    for (g, word) in cases {
        assert_eq!(g.word(), word);
        let sys = parse_system(&format!("{word} = 1"), &s).unwrap();
        let v = s.eval_word(&sys.equations[0].lhs, &Assignment::new()).unwrap();
        assert_eq!(v, GroupElement::Bs(g));
    }
}
