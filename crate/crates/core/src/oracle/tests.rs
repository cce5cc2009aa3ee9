use super::*;

const CAP: usize = DEFAULT_CAP;

fn setup(ring: &str) -> FiniteRing {
    FiniteRing::builtin(ring).unwrap()
}

fn ideal(r: &FiniteRing, name: &str) -> FiniteIdeal {
    FiniteIdeal::named(r, name).unwrap()
}

#[test]
fn packed_keys_round_trip() {
    let r = setup("zmod:5");
    let ctx = MatCtx::new(&r, 3).unwrap();
    let m = ctx.from_entries(&[1, 2, 3, 4, 0, 1, 2, 3, 4]);
    assert_eq!(ctx.matrix(m.key()), m);
    assert_eq!(m.get(1, 3), 3);
    let t = ctx.matrix(ctx.transvection(2, 3, 4));
    assert_eq!(t.entries(), &[1, 0, 0, 0, 1, 4, 0, 0, 1]);
    // 4x4 over a ring of order 16 uses all 64 bits; 5x5 is refused.
    assert!(MatCtx::new(&setup("zmod:16"), 4).is_ok());
    assert!(MatCtx::new(&setup("zmod:3"), 5).is_err());
}

#[test]
fn closure_basics() {
    let r = setup("zmod:4");
    let ctx = MatCtx::new(&r, 3).unwrap();
    let g = SubgroupClosure::generate(&ctx, [], CAP);
    assert_eq!(g.order(), 1);
    let two = ideal(&r, "(2)");
    let e = unrel_elementary(&ctx, &two, CAP);
    assert!(e.is_closed(&ctx));
    for &x in e.elements() {
        let xi = e.inverse(x).unwrap();
        assert!(e.contains(xi));
        assert_eq!(ctx.mul(x, xi), ctx.identity());
    }
    // (e + 2X)(e + 2Y) = e + 2(X + Y) mod 4, so E(3,(2)) is the group of
    // e + 2X with X off-diagonal over Z/2: order 2^6.
    assert_eq!(e.order(), 64);
    assert!(e.is_abelian(&ctx));
}

#[test]
fn cap_is_flagged() {
    let r = setup("zmod:3");
    let ctx = MatCtx::new(&r, 3).unwrap();
    let g = unrel_elementary(&ctx, &FiniteIdeal::full(&r), 100);
    assert!(g.cap_exceeded());
    assert_eq!(g.order(), 100);
    assert!(matches!(
        verify_theorem2(&ctx, &FiniteIdeal::full(&r), &FiniteIdeal::full(&r), 100),
        Err(crate::Error::CapExceeded(100))
    ));
}

#[test]
fn sl3_z2_order() {
    // |SL(3, F_2)| = 168.
    let r = setup("zmod:2");
    let ctx = MatCtx::new(&r, 3).unwrap();
    assert_eq!(unrel_elementary(&ctx, &FiniteIdeal::full(&r), CAP).order(), 168);
}

#[test]
fn rel_elementary_examples() {
    let r = setup("zmod:4");
    let ctx = MatCtx::new(&r, 3).unwrap();
    assert_eq!(rel_elementary(&ctx, &FiniteIdeal::zero(&r), CAP).unwrap().order(), 1);
    let full = FiniteIdeal::full(&r);
    let rel = rel_elementary(&ctx, &full, CAP).unwrap();
    assert!(rel.same_elements(&unrel_elementary(&ctx, &full, CAP)));
    let two = ideal(&r, "(2)");
    let g = rel_elementary(&ctx, &two, CAP).unwrap();
    assert!(g.is_abelian(&ctx));
    assert!(g.elements().iter().all(|&x| ctx.mul(x, x) == ctx.identity()));
    assert!(g.elements().iter().all(|&x| ctx.is_congruent(x, |v| two.contains(v))));
    assert!(rel_elementary(&MatCtx::new(&r, 2).unwrap(), &two, CAP).is_err());
}

#[test]
fn unrel_inside_rel() {
    let r = setup("zmod:8");
    let ctx = MatCtx::new(&r, 3).unwrap();
    let two = ideal(&r, "(2)");
    let u = unrel_elementary(&ctx, &two, CAP);
    let rel = rel_elementary(&ctx, &two, CAP).unwrap();
    assert!(u.is_subset(&rel));
    assert_eq!(rel.order() % u.order(), 0);
    assert!(rel.elements().iter().all(|&x| ctx.is_congruent(x, |v| two.contains(v))));
    // E(3,(2)) is a proper subgroup here: its elements have trace
    // conditions the normal closure does not.
    assert!(u.order() < rel.order());
}

#[test]
fn mixed_commutator_examples() {
    let r = setup("zmod:8");
    let ctx = MatCtx::new(&r, 3).unwrap();
    let two = ideal(&r, "(2)");
    let e = rel_elementary(&ctx, &two, CAP).unwrap();
    let trivial = SubgroupClosure::trivial(&ctx, CAP);
    assert_eq!(mixed_commutator(&ctx, &e, trivial.generators(), CAP).unwrap().order(), 1);
    let c = mixed_commutator(&ctx, &e, e.generators(), CAP).unwrap();
    // [t_12(2), t_21(2)] mod 8: upper block [[5, 4], [4, 5]]... computed
    // directly from the four transvections.
    let (x, y) = (ctx.transvection(1, 2, 2), ctx.transvection(2, 1, 2));
    let (xi, yi) = (ctx.transvection(1, 2, 6), ctx.transvection(2, 1, 6));
    let k = ctx.comm(x, y, xi, yi);
    assert_ne!(k, ctx.identity());
    assert!(c.contains(k));
    assert!(c.is_closed(&ctx));
    // Abelian H has trivial [H, H].
    let z4 = setup("zmod:4");
    let ctx4 = MatCtx::new(&z4, 3).unwrap();
    let h = rel_elementary(&ctx4, &ideal(&z4, "(2)"), CAP).unwrap();
    assert_eq!(mixed_commutator(&ctx4, &h, h.generators(), CAP).unwrap().order(), 1);
}

#[test]
fn commutator_entries_mod_8() {
    let r = setup("zmod:8");
    let ctx = MatCtx::new(&r, 3).unwrap();
    // [t_12(a), t_21(b)] has upper-left block
    // [[1 + ab + a^2 b^2, -a^2 b], [a b^2, 1 - ab]]; with a = b = 2:
    // [[1 + 4 + 16, -8], [8, -3]] = [[5, 0], [0, 5]] mod 8.
    let k = ctx.comm(
        ctx.transvection(1, 2, 2),
        ctx.transvection(2, 1, 2),
        ctx.transvection(1, 2, 6),
        ctx.transvection(2, 1, 6),
    );
    assert_eq!(ctx.matrix(k).entries(), &[5, 0, 0, 0, 5, 0, 0, 0, 1]);
}

#[test]
fn theorem1_trivial_cases() {
    for (ring, a, b) in [("zmod:4", "(2)", "(2)"), ("zmod:6", "(2)", "(3)")] {
        let r = setup(ring);
        let ctx = MatCtx::new(&r, 3).unwrap();
        let rep = verify_theorem1(&ctx, &ideal(&r, a), &ideal(&r, b), CAP).unwrap();
        assert_eq!((rep.lhs_order, rep.rhs_order, rep.equal), (1, 1, true), "{ring}");
    }
}

#[test]
fn theorem2_zero_ideals() {
    let r = setup("zmod:4");
    let ctx = MatCtx::new(&r, 3).unwrap();
    let z = FiniteIdeal::zero(&r);
    let rep = verify_theorem2(&ctx, &z, &z, CAP).unwrap();
    assert_eq!((rep.lhs_order, rep.rhs_order, rep.equal), (1, 1, true));
}

#[test]
fn lemma6_trivial_cases() {
    for (ring, a) in [("dual:2", "(t)"), ("zmod:4", "(2)")] {
        let r = setup(ring);
        let ctx = MatCtx::new(&r, 3).unwrap();
        let i = ideal(&r, a);
        let rep = verify_lemma6(&ctx, &i, &i, CAP).unwrap();
        assert_eq!((rep.lhs_order, rep.rhs_order, rep.equal), (1, 1, true), "{ring}");
    }
}

#[test]
fn eval_under_homomorphism() {
    use crate::freering::RingElem;
    let r = setup("zmod:8");
    let e = RingElem::sym("a1") * RingElem::sym("b1") - RingElem::int(3);
    let v = eval_elem(&r, &e, |s| if s.name() == "a1" { 2 } else { 7 });
    assert_eq!(v, (14 + 8 - 3) % 8);
    let u = setup("t2f2");
    assert_eq!(int_image(&u, &crate::Coeff::from(3)), u.one());
    assert_eq!(int_image(&u, &crate::Coeff::from(-2)), u.zero());
}
