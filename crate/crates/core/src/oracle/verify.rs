//! Elementary subgroups over finite rings and the subgroup-level checks.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::group::{mixed_commutator, Gen, MatCtx, SubgroupClosure};
use super::ring::{FiniteIdeal, FiniteRing};
use crate::coeff::Coeff;
use crate::elemgroup::GroupWord;
use crate::error::Error;
use crate::freering::{RingElem, Symbol};

fn positions(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
}

fn check_degree(n: usize) -> Result<(), Error> {
    if n < 3 {
        Err(Error::DegreeTooSmall(n))
    } else {
        Ok(())
    }
}

fn t_gen(ctx: &MatCtx, i: usize, j: usize, a: u8) -> Gen {
    Gen { elem: ctx.transvection(i, j, a), inv: ctx.transvection(i, j, ctx.ring().neg(a)) }
}

fn z_gen(ctx: &MatCtx, i: usize, j: usize, a: u8, c: u8) -> Gen {
    Gen { elem: ctx.z(i, j, a, c), inv: ctx.z(i, j, ctx.ring().neg(a), c) }
}

/// `[t_ij(a), t_ji(b)]`; its inverse is `[t_ji(b), t_ij(a)]`.
fn elementary_comm(ctx: &MatCtx, i: usize, j: usize, a: u8, b: u8) -> Gen {
    let (x, y) = (t_gen(ctx, i, j, a), t_gen(ctx, j, i, b));
    Gen { elem: ctx.comm(x.elem, y.elem, x.inv, y.inv), inv: ctx.comm(y.elem, x.elem, y.inv, x.inv) }
}

fn unrel_gens(ctx: &MatCtx, a: &FiniteIdeal) -> Vec<Gen> {
    positions(ctx.n()).flat_map(|(i, j)| a.members().iter().map(move |&x| t_gen(ctx, i, j, x))).collect()
}

fn rel_gens(ctx: &MatCtx, a: &FiniteIdeal) -> Vec<Gen> {
    let r = ctx.ring();
    let mut out = Vec::new();
    for (i, j) in positions(ctx.n()) {
        for &x in a.members() {
            for c in r.elements() {
                out.push(z_gen(ctx, i, j, x, c));
            }
        }
    }
    out
}

/// `E(n, A)`, generated by the `t_ij(a)` with `a` in `A`.
pub fn unrel_elementary(ctx: &MatCtx, a: &FiniteIdeal, cap: usize) -> SubgroupClosure {
    SubgroupClosure::generate(ctx, unrel_gens(ctx, a), cap)
}

/// `E(n, R, A)`, generated by the finitely many `z_ij(a, c)`.
pub fn rel_elementary(ctx: &MatCtx, a: &FiniteIdeal, cap: usize) -> Result<SubgroupClosure, Error> {
    check_degree(ctx.n())?;
    Ok(SubgroupClosure::generate(ctx, rel_gens(ctx, a), cap))
}

fn complete(g: SubgroupClosure) -> Result<SubgroupClosure, Error> {
    if g.cap_exceeded() {
        Err(Error::CapExceeded(g.cap()))
    } else {
        Ok(g)
    }
}

/// Outcome of comparing two subgroups computed in independent ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub claim: &'static str,
    pub ring: alloc::string::String,
    pub n: usize,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub lhs_order: usize,
    pub rhs_order: usize,
    pub equal: bool,
}

fn report(claim: &'static str, ctx: &MatCtx, lhs: (&'static str, &SubgroupClosure), rhs: (&'static str, &SubgroupClosure)) -> Report {
    Report {
        claim,
        ring: ctx.ring().name().into(),
        n: ctx.n(),
        lhs: lhs.0,
        rhs: rhs.0,
        lhs_order: lhs.1.order(),
        rhs_order: rhs.1.order(),
        equal: lhs.1.same_elements(rhs.1),
    }
}

/// Generators `z_ij(ab, c)`, `z_ij(ba, c)` together with the elementary
/// commutators `[t_12(a), t_21(b)]`, against `[E(n,R,A), E(n,R,B)]`.
pub fn verify_theorem1(ctx: &MatCtx, a: &FiniteIdeal, b: &FiniteIdeal, cap: usize) -> Result<Report, Error> {
    check_degree(ctx.n())?;
    let r = ctx.ring();
    let products: BTreeSet<u8> = a
        .members()
        .iter()
        .flat_map(|&x| b.members().iter().flat_map(move |&y| [r.mul(x, y), r.mul(y, x)]))
        .collect();
    let mut gens = Vec::new();
    for (i, j) in positions(ctx.n()) {
        for &p in &products {
            gens.extend(r.elements().map(|c| z_gen(ctx, i, j, p, c)));
        }
    }
    for &x in a.members() {
        gens.extend(b.members().iter().map(|&y| elementary_comm(ctx, 1, 2, x, y)));
    }
    let g1 = complete(SubgroupClosure::generate(ctx, gens, cap))?;
    let ea = complete(rel_elementary(ctx, a, cap)?)?;
    let eb = complete(rel_elementary(ctx, b, cap)?)?;
    let g2 = mixed_commutator(ctx, &ea, eb.generators(), cap)?;
    Ok(report("theorem1", ctx, ("generators", &g1), ("[E(n,R,A),E(n,R,B)]", &g2)))
}

/// `[E(n,R,A), E(n,R,B)]` against `[E(n,A), E(n,B)]`.
pub fn verify_theorem2(ctx: &MatCtx, a: &FiniteIdeal, b: &FiniteIdeal, cap: usize) -> Result<Report, Error> {
    let ra = complete(rel_elementary(ctx, a, cap)?)?;
    let rb = complete(rel_elementary(ctx, b, cap)?)?;
    let rel = mixed_commutator(ctx, &ra, rb.generators(), cap)?;
    let ua = complete(unrel_elementary(ctx, a, cap))?;
    let ub = complete(unrel_elementary(ctx, b, cap))?;
    let unrel = mixed_commutator(ctx, &ua, ub.generators(), cap)?;
    Ok(report("theorem2", ctx, ("[E(n,R,A),E(n,R,B)]", &rel), ("[E(n,A),E(n,B)]", &unrel)))
}

/// `[[E(n,A), E(n,B)], E(n,R)]` against `E(n, R, AB+BA)`.
///
/// `E(n,R)` enters only through its generators, so it is never enumerated.
pub fn verify_lemma6(ctx: &MatCtx, a: &FiniteIdeal, b: &FiniteIdeal, cap: usize) -> Result<Report, Error> {
    let r = ctx.ring();
    let ua = complete(unrel_elementary(ctx, a, cap))?;
    let ub = complete(unrel_elementary(ctx, b, cap))?;
    let inner = mixed_commutator(ctx, &ua, ub.generators(), cap)?;
    let full = FiniteIdeal::full(r);
    let outer = mixed_commutator(ctx, &inner, &unrel_gens(ctx, &full), cap)?;
    let sym = FiniteIdeal::symmetric_product(r, a, b);
    let rel = complete(rel_elementary(ctx, &sym, cap)?)?;
    Ok(report("lemma6", ctx, ("[[E(n,A),E(n,B)],E(n,R)]", &outer), ("E(n,R,AB+BA)", &rel)))
}

/// Image of an integer under the unique ring map from `Z`.
pub fn int_image(ring: &FiniteRing, c: &Coeff) -> u8 {
    let mut order = 1u64;
    let mut x = ring.one();
    while x != ring.zero() {
        x = ring.add(x, ring.one());
        order += 1;
    }
    let mut acc = ring.zero();
    for _ in 0..c.rem_euclid(order) {
        acc = ring.add(acc, ring.one());
    }
    acc
}

/// Image of a free-ring element under the homomorphism fixed by `assign`.
pub fn eval_elem(ring: &FiniteRing, e: &RingElem, mut assign: impl FnMut(&Symbol) -> u8) -> u8 {
    e.eval_with(ring.zero(), |s| assign(s), |c| int_image(ring, c), |x, y| ring.add(*x, *y), |x, y| ring.mul(*x, *y))
}

/// Image of a word as a packed matrix.
pub fn eval_word(ctx: &MatCtx, w: &GroupWord, mut assign: impl FnMut(&Symbol) -> u8) -> u64 {
    w.letters().iter().fold(ctx.identity(), |acc, l| {
        ctx.mul(acc, ctx.transvection(l.i, l.j, eval_elem(ctx.ring(), &l.param, &mut assign)))
    })
}
