//! The individual reductions: conjugation of relative generators,
//! conjugated elementary commutators, third-type generators, position
//! transport, and the congruences between elementary commutators.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::conj::{aux_index, conj_record};
use super::{check_pos, collect, require, sym_plain, Congruence, Item, Res, ResidualWord, Rule, TraceStep};
use crate::elemgroup::{
    elementary_comm_letters, invert_letters, t, word_conj, GroupWord, Transvection, ZGenRecord,
};
use crate::error::Error;
use crate::freering::{IdealPattern, RingElem, Sort};

fn comm_word(n: usize, i: usize, j: usize, a: &RingElem, b: &RingElem) -> GroupWord {
    GroupWord::from_checked(n, elementary_comm_letters(i, j, a, b).into())
}

fn step(n: usize, rule: Rule, before: Vec<Transvection>, after: Vec<Transvection>) -> TraceStep {
    TraceStep {
        rule,
        before: GroupWord::from_checked(n, before),
        after: GroupWord::from_checked(n, after),
    }
}

fn plain(i: usize, j: usize, p: RingElem) -> Res {
    Res::Rec(sym_plain(i, j, p))
}

/// `^{t_kl(d)} rec` rewritten as generators of the same level.
pub fn conj_z(n: usize, k: usize, l: usize, d: &RingElem, rec: &ZGenRecord) -> Result<ResidualWord, Error> {
    check_pos(n, k, l)?;
    check_pos(n, rec.i, rec.j)?;
    if !rec.p.member(&rec.level) {
        return Err(Error::HypothesisViolation("record parameter outside its level"));
    }
    Ok(ResidualWord::new(conj_record(n, &t(k, l, d.clone()), rec)))
}

/// `[t_kl(c), [t_ij(a), t_ji(b)]]` for a letter meeting `{i, j}` in exactly
/// one index, as a product of transvections with parameters in `AB + BA`.
pub fn lemma3_bracket(letter: &Transvection, i: usize, j: usize, a: &RingElem, b: &RingElem) -> Option<Vec<Transvection>> {
    let (k, l, c) = (letter.i, letter.j, &letter.param);
    let ab = a * b;
    let ba = b * a;
    if k == i && l != j {
        let h = l;
        let abc = &ab * c;
        let ababc = &ab * &abc;
        let babc = b * &abc;
        Some(vec![t(i, h, -(&abc + &ababc)), t(j, h, -babc)])
    } else if k == j && l != i {
        let h = l;
        let bac = &ba * c;
        Some(vec![t(i, h, a * &bac), t(j, h, bac)])
    } else if l == i && k != j {
        let h = k;
        let cab = c * &ab;
        Some(vec![t(h, i, cab.clone()), t(h, j, -(&cab * a))])
    } else if l == j && k != i {
        let h = k;
        let cba = c * &ba;
        let cbab = &cba * b;
        let cbaba = &cbab * a;
        Some(vec![t(h, i, cbab), t(h, j, -(&cba + &cbaba))])
    } else {
        None
    }
}

/// `t_ij(c) = [t_ih(c), t_hj(1)]` and `t_ji(c) = [t_jh(c), t_hi(1)]`.
fn split_letter(n: usize, letter: &Transvection, i: usize, j: usize) -> Vec<Transvection> {
    let h = aux_index(n, i, j);
    let c = &letter.param;
    let one = RingElem::one();
    let (p, q) = (letter.i, letter.j);
    debug_assert!((p, q) == (i, j) || (p, q) == (j, i));
    vec![t(p, h, c.clone()), t(h, q, one.clone()), t(p, h, -c), t(h, q, -one)]
}

/// Residual `R` with `^{letter} z = z R` for `z = [t_ij(a), t_ji(b)]`.
fn lemma3_letter(n: usize, i: usize, j: usize, a: &RingElem, b: &RingElem, letter: &Transvection) -> (Res, Rule) {
    let (k, l) = (letter.i, letter.j);
    if letter.param.is_zero() || (k != i && k != j && l != i && l != j) {
        return (Res::empty(), Rule::Lemma3Case1);
    }
    if (k, l) == (i, j) || (k, l) == (j, i) {
        let mut acc = Res::empty();
        for part in split_letter(n, letter, i, j).iter().rev() {
            let (r, _) = lemma3_letter(n, i, j, a, b, part);
            acc = r.then(acc.conj(n, core::slice::from_ref(part)));
        }
        return (acc, Rule::Lemma3Case3);
    }
    // ^t z = z . [z^{-1}, t] and z^{-1} = [t_ji(b), t_ij(a)], so the
    // bracket formula applies with the roles of the two slots exchanged.
    let bracket = lemma3_bracket(letter, j, i, b, a).expect("one shared index");
    let recs = invert_letters(&bracket).into_iter().map(|l| sym_plain(l.i, l.j, l.param)).collect();
    (Res::records(recs), Rule::Lemma3Case2)
}

/// Residual `R` with `^x [t_ij(a), t_ji(b)] = [t_ij(a), t_ji(b)] R`.
///
/// The roles of `a` and `b` may be swapped (`a` in `B`, `b` in `A`); the
/// residual level `AB + BA` is symmetric.
pub(crate) fn lemma3_core(
    n: usize,
    x: &[Transvection],
    i: usize,
    j: usize,
    a: &RingElem,
    b: &RingElem,
    mut steps: Option<&mut Vec<TraceStep>>,
) -> Res {
    let z: Vec<Transvection> = elementary_comm_letters(i, j, a, b).into();
    let mut acc = Res::empty();
    for letter in x.iter().rev() {
        let (r, rule) = lemma3_letter(n, i, j, a, b, letter);
        let next = r.then(acc.conj(n, core::slice::from_ref(letter)));
        if let Some(steps) = steps.as_deref_mut() {
            let mut before = vec![letter.clone()];
            before.extend(z.iter().cloned());
            before.extend(ResidualWord::from(acc.clone()).letters());
            before.push(letter.inverse());
            let mut after = z.clone();
            after.extend(ResidualWord::from(next.clone()).letters());
            steps.push(step(n, rule, before, after));
        }
        acc = next;
    }
    acc
}

/// Reduces `^x [t_ij(a), t_ji(b)]` to `[t_ij(a), t_ji(b)]`.
pub fn lemma3_reduce(x: &GroupWord, i: usize, j: usize, a: &RingElem, b: &RingElem) -> Result<Congruence, Error> {
    lemma3_traced(x, i, j, a, b, None)
}

pub(crate) fn lemma3_traced(
    x: &GroupWord,
    i: usize,
    j: usize,
    a: &RingElem,
    b: &RingElem,
    steps: Option<&mut Vec<TraceStep>>,
) -> Result<Congruence, Error> {
    let n = x.degree();
    check_pos(n, i, j)?;
    require(a, IdealPattern::a(), "a", "A")?;
    require(b, IdealPattern::b(), "b", "B")?;
    let z = comm_word(n, i, j, a, b);
    let lhs = word_conj(x, &z)?;
    let residual = lemma3_core(n, x.letters(), i, j, a, b, steps);
    Ok(Congruence { lhs, rhs: z, residual: residual.into() })
}

/// Result of eliminating a conjugated third-type generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma4Output {
    /// The input `^x [t_ij(a), z_ij(b, c)]`.
    pub input: GroupWord,
    pub conjugator: GroupWord,
    /// `(k, l, a', b')` for the generator `[t_kl(a'), t_lk(b')]`, `a'` in `A`.
    pub gen: (usize, usize, RingElem, RingElem),
    pub residual: ResidualWord,
}

impl Lemma4Output {
    pub fn gen_word(&self) -> GroupWord {
        let (k, l, a, b) = &self.gen;
        comm_word(self.input.degree(), *k, *l, a, b)
    }

    pub fn congruence(&self) -> Congruence {
        let rhs = word_conj(&self.conjugator, &self.gen_word()).expect("same degree");
        Congruence { lhs: self.input.clone(), rhs, residual: self.residual.clone() }
    }
}

/// The factors `u` in `E(n, B)` and `v` in `E(n, AB)` with
/// `^{z_ij(b,c)} t_ih(1) = t_ih(1) u` and `^{z_ij(b,c)} t_hj(-a) = t_hj(-a) v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma4Factors {
    pub h: usize,
    pub u: Vec<Transvection>,
    pub v: Vec<Transvection>,
}

pub fn lemma4_factors(n: usize, i: usize, j: usize, a: &RingElem, b: &RingElem, c: &RingElem) -> Result<Lemma4Factors, Error> {
    check_pos(n, i, j)?;
    let h = aux_index(n, i, j);
    let bc = b * c;
    let cbc = c * &bc;
    let acb = &(a * c) * b;
    let acbc = &acb * c;
    Ok(Lemma4Factors { h, u: vec![t(j, h, -&cbc), t(i, h, -&bc)], v: vec![t(h, i, -&acbc), t(h, j, acb)] })
}

/// `[t_ij(a), z_ij(b, c)]` as a word.
pub(crate) fn third_type_letters(i: usize, j: usize, a: &RingElem, b: &RingElem, c: &RingElem) -> Vec<Transvection> {
    let zb = crate::elemgroup::z_letters(i, j, b, c);
    let mut out = vec![t(i, j, a.clone())];
    out.extend(zb.iter().cloned());
    out.push(t(i, j, -a));
    out.extend(invert_letters(&zb));
    out
}

/// Rewrites `^x [t_ij(a), z_ij(b, c)]` as a conjugated elementary
/// commutator `^{x'} [t_hj(a), t_jh(-cbc)]` times a residual.
pub fn lemma4_reduce(
    x: &GroupWord,
    i: usize,
    j: usize,
    a: &RingElem,
    b: &RingElem,
    c: &RingElem,
) -> Result<Lemma4Output, Error> {
    lemma4_traced(x, i, j, a, b, c, None).map(|(out, _)| out)
}

pub(crate) fn lemma4_traced(
    x: &GroupWord,
    i: usize,
    j: usize,
    a: &RingElem,
    b: &RingElem,
    c: &RingElem,
    steps: Option<&mut Vec<TraceStep>>,
) -> Result<(Lemma4Output, Res), Error> {
    let n = x.degree();
    check_pos(n, i, j)?;
    require(a, IdealPattern::a(), "a", "A")?;
    require(b, IdealPattern::b(), "b", "B")?;
    let zw = GroupWord::from_checked(n, third_type_letters(i, j, a, b, c));
    let input = word_conj(x, &zw)?;
    if b.is_zero() || c.is_zero() || a.is_zero() {
        // The commutator is the identity on the nose.
        let out = Lemma4Output {
            input,
            conjugator: GroupWord::from_checked(n, Vec::new()),
            gen: (i, j, RingElem::zero(), RingElem::zero()),
            residual: ResidualWord::empty(),
        };
        return Ok((out, Res::empty()));
    }
    let h = aux_index(n, i, j);
    let one = RingElem::one();
    let bc = b * c;
    let cbc = c * &bc;
    let bca = &bc * a;
    let acb = &(a * c) * b;
    let acbc = &acb * c;

    let conj_prefix = vec![t(i, j, a.clone()), t(i, h, one.clone())];
    let u1 = t(j, h, -&cbc);
    let u2 = t(i, h, -&bc);
    // [u2, t_hj(-a)] = t_ij(bca), moved out from under u1.
    let q = plain(i, j, bca).conj(n, core::slice::from_ref(&u1));
    // ^{z_ij(b,c)} t_hj(-a) = t_hj(-a) v with v in E(n, AB).
    let v = Res::seq(vec![plain(h, i, -&acbc), plain(h, j, acb)]);
    let xu = vec![t(i, h, one), u1, u2];
    let inner = v.conj(n, &xu).then(v.inverse());
    let p1 = inner.conj(n, &[t(h, j, -a)]);

    // [t_jh(-cbc), t_hj(-a)] = [t_hj(a), t_jh(-cbc)] R3^{-1}.
    let gen_b = -&cbc;
    let r3 = lemma3_core(n, &[t(h, j, a.clone())], j, h, &gen_b, &(-a), None);

    let items = vec![
        Item::Letters(x.letters().to_vec()),
        Item::Res(q.conj(n, &conj_prefix)),
        Item::Letters(conj_prefix.clone()),
        Item::Comm(h, j, a.clone(), gen_b.clone()),
        Item::Res(r3.inverse()),
        Item::Letters(invert_letters(&conj_prefix)),
        Item::Res(p1),
        Item::Letters(invert_letters(x.letters())),
    ];
    let (_, residual) = collect(n, items);
    let mut conjugator = x.letters().to_vec();
    conjugator.extend(conj_prefix);
    let out = Lemma4Output {
        input,
        conjugator: GroupWord::from_checked(n, conjugator),
        gen: (h, j, a.clone(), gen_b),
        residual: residual.clone().into(),
    };
    if let Some(steps) = steps {
        let cong = out.congruence();
        let mut after = cong.rhs.letters().to_vec();
        after.extend(cong.residual.letters());
        steps.push(step(n, Rule::Lemma4, cong.lhs.into_letters(), after));
    }
    Ok((out, residual))
}

/// `[t_ij(ac), t_ji(b)] = [t_ih(a), t_hi(cb)] . residual`.
///
/// With `c = 1` this is the column move of the transport.
pub fn move_column(
    n: usize,
    i: usize,
    j: usize,
    h: usize,
    a: &RingElem,
    c: &RingElem,
    b: &RingElem,
) -> Result<Congruence, Error> {
    let (lhs, rhs, res) = move_column_res(n, i, j, h, a, c, b)?;
    Ok(Congruence { lhs, rhs, residual: res.into() })
}

type MoveOut = (GroupWord, GroupWord, Res);

fn move_column_res(n: usize, i: usize, j: usize, h: usize, a: &RingElem, c: &RingElem, b: &RingElem) -> Result<MoveOut, Error> {
    check_pos(n, i, j)?;
    check_pos(n, i, h)?;
    if h == j {
        return Err(Error::SameIndex(h));
    }
    let ac = a * c;
    let cb = c * b;
    let w = sym_plain(j, h, b * a);
    let y = vec![t(h, j, -c), t(h, i, cb.clone())];
    let r3 = lemma3_core(n, &[t(h, j, -c)], i, h, a, &cb, None);
    let target: Vec<Transvection> = elementary_comm_letters(i, h, a, &cb).into();
    let items = vec![
        Item::Letters(vec![t(i, j, ac.clone())]),
        Item::Res(Res::Rec(w.clone())),
        Item::Letters(vec![t(i, j, -&ac)]),
        Item::Comm(i, h, a.clone(), cb.clone()),
        Item::Res(r3),
        Item::Res(Res::Rec(w.inverse()).conj(n, &y)),
    ];
    let (_, residual) = collect(n, items);
    Ok((comm_word(n, i, j, &ac, b), GroupWord::from_checked(n, target), residual))
}

/// `[t_ij(a), t_ji(b)] = [t_hj(a), t_jh(b)] . residual`.
pub fn move_row(n: usize, i: usize, j: usize, h: usize, a: &RingElem, b: &RingElem) -> Result<Congruence, Error> {
    let (lhs, rhs, res) = move_row_res(n, i, j, h, a, b)?;
    Ok(Congruence { lhs, rhs, residual: res.into() })
}

fn move_row_res(n: usize, i: usize, j: usize, h: usize, a: &RingElem, b: &RingElem) -> Result<MoveOut, Error> {
    check_pos(n, i, j)?;
    check_pos(n, h, j)?;
    if h == i {
        return Err(Error::SameIndex(h));
    }
    let ab = a * b;
    let w = sym_plain(i, h, ab.clone());
    let y = vec![t(h, j, -a), t(h, i, RingElem::one())];
    // [t_jh(b), t_hj(-a)] = [t_hj(a), t_jh(b)] R3^{-1}.
    let r3 = lemma3_core(n, &[t(h, j, a.clone())], j, h, b, &(-a), None);
    let target: Vec<Transvection> = elementary_comm_letters(h, j, a, b).into();
    let items = vec![
        Item::Res(Res::Rec(w.clone())),
        Item::Comm(h, j, a.clone(), b.clone()),
        Item::Res(r3.inverse()),
        Item::Res(plain(h, i, -&ab)),
        Item::Letters(vec![t(j, i, b.clone())]),
        Item::Res(Res::Rec(w.inverse()).conj(n, &y)),
        Item::Letters(vec![t(j, i, -b)]),
    ];
    let (_, residual) = collect(n, items);
    Ok((comm_word(n, i, j, a, b), GroupWord::from_checked(n, target), residual))
}

/// One elementary move between positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// `(i, j) -> (i, h)`.
    Column(usize),
    /// `(i, j) -> (h, j)`.
    Row(usize),
}

/// Shortest sequence of moves from `from` to `to`; at most three for `n >= 3`.
pub fn transport_path(n: usize, from: (usize, usize), to: (usize, usize)) -> Vec<((usize, usize), Move)> {
    let idx = |p: (usize, usize)| (p.0 - 1) * n + (p.1 - 1);
    let mut prev: Vec<Option<((usize, usize), Move)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::new();
    seen[idx(from)] = true;
    queue.push_back(from);
    while let Some(p) = queue.pop_front() {
        if p == to {
            break;
        }
        for h in 1..=n {
            if h == p.0 || h == p.1 {
                continue;
            }
            for (next, mv) in [((p.0, h), Move::Column(h)), ((h, p.1), Move::Row(h))] {
                if !seen[idx(next)] {
                    seen[idx(next)] = true;
                    prev[idx(next)] = Some((p, mv));
                    queue.push_back(next);
                }
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, mv) = prev[idx(cur)].expect("positions are connected");
        path.push((p, mv));
        cur = p;
    }
    path.reverse();
    path
}

/// Transports `[t_ij(a), t_ji(b)]` to `[t_kl(a), t_lk(b)]`.
pub fn lemma5_transport(
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    a: &RingElem,
    b: &RingElem,
) -> Result<Congruence, Error> {
    let res = lemma5_traced(n, i, j, k, l, a, b, None)?;
    Ok(Congruence { lhs: comm_word(n, i, j, a, b), rhs: comm_word(n, k, l, a, b), residual: res.into() })
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn lemma5_traced(
    n: usize,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    a: &RingElem,
    b: &RingElem,
    mut steps: Option<&mut Vec<TraceStep>>,
) -> Result<Res, Error> {
    check_pos(n, i, j)?;
    check_pos(n, k, l)?;
    let one = RingElem::one();
    let mut residual = Res::empty();
    for ((p, q), mv) in transport_path(n, (i, j), (k, l)) {
        let (lhs, rhs, res) = match mv {
            Move::Column(h) => move_column_res(n, p, q, h, a, &one, b)?,
            Move::Row(h) => move_row_res(n, p, q, h, a, b)?,
        };
        if let Some(steps) = steps.as_deref_mut() {
            let mut after = rhs.into_letters();
            after.extend(ResidualWord::from(res.clone()).letters());
            steps.push(step(n, Rule::Lemma5Move, lhs.into_letters(), after));
        }
        residual = res.then(residual);
    }
    Ok(residual)
}

/// The congruences between elementary commutators at a fixed position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum S3Bullet {
    /// `[t_ij(ac), t_ji(b)] = [t_ij(a), t_ji(cb)]`.
    Shift { i: usize, j: usize, a: RingElem, c: RingElem, b: RingElem },
    /// `[t_ij(a1 + a2), t_ji(b)] = [t_ij(a1), t_ji(b)] [t_ij(a2), t_ji(b)]`.
    AddFirst { i: usize, j: usize, a1: RingElem, a2: RingElem, b: RingElem },
    /// `[t_ij(a), t_ji(b1 + b2)] = [t_ij(a), t_ji(b1)] [t_ij(a), t_ji(b2)]`.
    AddSecond { i: usize, j: usize, a: RingElem, b1: RingElem, b2: RingElem },
    /// `[t_ij(a), t_ji(b)]^{-1} = [t_ij(-a), t_ji(b)]`.
    InverseFirst { i: usize, j: usize, a: RingElem, b: RingElem },
    /// `[t_ij(a), t_ji(b)]^{-1} = [t_ij(a), t_ji(-b)]`.
    InverseSecond { i: usize, j: usize, a: RingElem, b: RingElem },
    /// `[t_ij(a1), t_ji(b)] = [t_ij(a2), t_ji(b)]` when `a1 - a2` is in `AB + BA + A^2`.
    CongruentFirst { i: usize, j: usize, a1: RingElem, a2: RingElem, b: RingElem },
    /// `[t_ij(a), t_ji(b1)] = [t_ij(a), t_ji(b2)]` when `b1 - b2` is in `AB + BA + B^2`.
    CongruentSecond { i: usize, j: usize, a: RingElem, b1: RingElem, b2: RingElem },
}

impl S3Bullet {
    /// Position of the bullet in the list of congruences, 1 to 6.
    pub fn number(&self) -> u8 {
        match self {
            S3Bullet::Shift { .. } => 1,
            S3Bullet::AddFirst { .. } => 2,
            S3Bullet::AddSecond { .. } => 3,
            S3Bullet::InverseFirst { .. } | S3Bullet::InverseSecond { .. } => 4,
            S3Bullet::CongruentFirst { .. } => 5,
            S3Bullet::CongruentSecond { .. } => 6,
        }
    }
}

/// `[t_ij(x), t_ji(q)]` with `x` or `q` already in `AB + BA`, spelled as
/// relative generators: `t_ij(x) . z_ij(-x, q)` or `^{t_ij(x)} t_ji(q) . t_ji(-q)`.
fn comm_with_level_param(n: usize, i: usize, j: usize, x: &RingElem, q: &RingElem, level_first: bool) -> Res {
    if level_first {
        Res::seq(vec![
            plain(i, j, x.clone()),
            Res::Rec(ZGenRecord::new(i, j, -x, q.clone(), IdealPattern::symmetric())),
        ])
    } else {
        plain(j, i, q.clone()).conj(n, &[t(i, j, x.clone())]).then(plain(j, i, -q))
    }
}

fn shift_residual(n: usize, i: usize, j: usize, a: &RingElem, c: &RingElem, b: &RingElem) -> Result<Res, Error> {
    let h = aux_index(n, i, j);
    let cb = c * b;
    let (_, _, first) = move_column_res(n, i, j, h, a, c, b)?;
    let back = lemma5_traced(n, i, h, i, j, a, &cb, None)?;
    Ok(back.then(first))
}

/// `z(x + y) = z(x) z(y) R` in the first slot.
fn add_first_residual(n: usize, i: usize, j: usize, x: &RingElem, y: &RingElem, b: &RingElem) -> Res {
    // [t(x) t(y), t(b)] = ^{t(x)} z(y) . z(x) = z(y) R3 z(x)
    let r3 = lemma3_core(n, &[t(i, j, x.clone())], i, j, y, b, None);
    let zx: Vec<Transvection> = elementary_comm_letters(i, j, x, b).into();
    let (_, tail) = collect(n, vec![Item::Res(r3), Item::Comm(i, j, x.clone(), b.clone())]);
    // z(y) z(x) = z(x) . ^{z(x)^{-1}} z(y)
    let r_swap = lemma3_core(n, &invert_letters(&zx), i, j, y, b, None);
    r_swap.then(tail)
}

/// `z(a, q1 + q2) = z(a, q1) z(a, q2) R` in the second slot.
fn add_second_residual(n: usize, i: usize, j: usize, a: &RingElem, q1: &RingElem, q2: &RingElem) -> Res {
    lemma3_core(n, &[t(j, i, q1.clone())], i, j, a, q2, None)
}

/// Splits `d` into the part in `AB + BA` and single terms outside it.
fn split_by_level(d: &RingElem) -> Vec<RingElem> {
    let sym = IdealPattern::symmetric();
    let mut level = RingElem::zero();
    let mut rest = Vec::new();
    for (m, c) in d.terms() {
        let term = RingElem::term(c.clone(), m.clone());
        if term.member(&sym) {
            level.add_assign_ref(&term);
        } else {
            rest.push(term);
        }
    }
    let mut pieces = Vec::new();
    if !level.is_zero() {
        pieces.push(level);
    }
    pieces.extend(rest);
    pieces
}

/// Residual equal to `[t_ij(d), t_ji(b)]` for `d` in `AB + BA + A^2`.
fn trivial_first(n: usize, i: usize, j: usize, d: &RingElem, b: &RingElem) -> Result<Res, Error> {
    let pieces = split_by_level(d);
    let Some((first, others)) = pieces.split_first() else {
        return Ok(Res::empty());
    };
    let own = if first.member(&IdealPattern::symmetric()) {
        comm_with_level_param(n, i, j, first, b, true)
    } else {
        let (m, coeff) = first.terms().next().map(|(m, c)| (m.clone(), c.clone())).expect("one term");
        let (u, v) = m.split_after_first(Sort::A).ok_or(Error::HypothesisViolation("term outside AB+BA+A^2"))?;
        let u = RingElem::term(coeff, u);
        let v = RingElem::term(crate::coeff::Coeff::ONE, v);
        // z(uv, b) = z(u, vb) R1 and vb lies in AB.
        let r1 = shift_residual(n, i, j, &u, &v, b)?;
        comm_with_level_param(n, i, j, &u, &(&v * b), false).then(r1)
    };
    if others.is_empty() {
        return Ok(own);
    }
    let rest_sum = others.iter().fold(RingElem::zero(), |acc, p| &acc + p);
    let rest_res = trivial_first(n, i, j, &rest_sum, b)?;
    let add = add_first_residual(n, i, j, first, &rest_sum, b);
    Ok(Res::seq(vec![own, rest_res, add]))
}

/// Residual equal to `[t_ij(a), t_ji(d)]` for `d` in `AB + BA + B^2`.
fn trivial_second(n: usize, i: usize, j: usize, a: &RingElem, d: &RingElem) -> Result<Res, Error> {
    let pieces = split_by_level(d);
    let Some((first, others)) = pieces.split_first() else {
        return Ok(Res::empty());
    };
    let own = if first.member(&IdealPattern::symmetric()) {
        comm_with_level_param(n, i, j, a, first, false)
    } else {
        let (m, coeff) = first.terms().next().map(|(m, c)| (m.clone(), c.clone())).expect("one term");
        let (u, v) = m.split_after_first(Sort::B).ok_or(Error::HypothesisViolation("term outside AB+BA+B^2"))?;
        let u = RingElem::term(coeff, u);
        let v = RingElem::term(crate::coeff::Coeff::ONE, v);
        // z(au, v) = z(a, uv) R1, so z(a, uv) = z(au, v) R1^{-1}; au lies in AB.
        let r1 = shift_residual(n, i, j, a, &u, &v)?;
        comm_with_level_param(n, i, j, &(a * &u), &v, true).then(r1.inverse())
    };
    if others.is_empty() {
        return Ok(own);
    }
    let rest_sum = others.iter().fold(RingElem::zero(), |acc, p| &acc + p);
    let rest_res = trivial_second(n, i, j, a, &rest_sum)?;
    let add = add_second_residual(n, i, j, a, first, &rest_sum);
    Ok(Res::seq(vec![own, rest_res, add]))
}

/// Certified congruence for one of the elementary-commutator bullets.
pub fn s3_congruence(n: usize, bullet: &S3Bullet) -> Result<Congruence, Error> {
    let a_ideal = IdealPattern::a;
    let b_ideal = IdealPattern::b;
    let word = |i, j, a: &RingElem, b: &RingElem| comm_word(n, i, j, a, b);
    let cong = |lhs: GroupWord, rhs: Vec<Transvection>, res: Res| Congruence {
        lhs,
        rhs: GroupWord::from_checked(n, rhs),
        residual: res.into(),
    };
    match bullet {
        S3Bullet::Shift { i, j, a, c, b } => {
            check_pos(n, *i, *j)?;
            require(a, a_ideal(), "a", "A")?;
            require(b, b_ideal(), "b", "B")?;
            let res = shift_residual(n, *i, *j, a, c, b)?;
            Ok(cong(word(*i, *j, &(a * c), b), word(*i, *j, a, &(c * b)).into_letters(), res))
        }
        S3Bullet::AddFirst { i, j, a1, a2, b } => {
            check_pos(n, *i, *j)?;
            require(a1, a_ideal(), "a1", "A")?;
            require(a2, a_ideal(), "a2", "A")?;
            require(b, b_ideal(), "b", "B")?;
            let mut rhs = word(*i, *j, a1, b).into_letters();
            rhs.extend(word(*i, *j, a2, b).into_letters());
            Ok(cong(word(*i, *j, &(a1 + a2), b), rhs, add_first_residual(n, *i, *j, a1, a2, b)))
        }
        S3Bullet::AddSecond { i, j, a, b1, b2 } => {
            check_pos(n, *i, *j)?;
            require(a, a_ideal(), "a", "A")?;
            require(b1, b_ideal(), "b1", "B")?;
            require(b2, b_ideal(), "b2", "B")?;
            let mut rhs = word(*i, *j, a, b1).into_letters();
            rhs.extend(word(*i, *j, a, b2).into_letters());
            Ok(cong(word(*i, *j, a, &(b1 + b2)), rhs, add_second_residual(n, *i, *j, a, b1, b2)))
        }
        S3Bullet::InverseFirst { i, j, a, b } | S3Bullet::InverseSecond { i, j, a, b } => {
            check_pos(n, *i, *j)?;
            require(a, a_ideal(), "a", "A")?;
            require(b, b_ideal(), "b", "B")?;
            // z^{-1} = [t_ji(b), t_ij(a)]; conjugating it by t_ij(-a) or
            // t_ji(-b) gives the right-hand side.
            let (conj, rhs) = match bullet {
                S3Bullet::InverseFirst { .. } => (t(*i, *j, -a), word(*i, *j, &(-a), b)),
                _ => (t(*j, *i, -b), word(*i, *j, a, &(-b))),
            };
            let r3 = lemma3_core(n, &[conj], *j, *i, b, a, None);
            let lhs = crate::elemgroup::word_inv(&word(*i, *j, a, b));
            Ok(cong(lhs, rhs.into_letters(), r3.inverse()))
        }
        S3Bullet::CongruentFirst { i, j, a1, a2, b } => {
            check_pos(n, *i, *j)?;
            require(a1, a_ideal(), "a1", "A")?;
            require(a2, a_ideal(), "a2", "A")?;
            require(b, b_ideal(), "b", "B")?;
            let d = a1 - a2;
            if !d.member(&IdealPattern::symmetric_plus_a2()) {
                return Err(Error::HypothesisViolation("a1 - a2 is not in AB+BA+A^2"));
            }
            // z(a2 + d) = z(a2) z(d) R_add and z(d) is itself a residual.
            let rd = trivial_first(n, *i, *j, &d, b)?;
            let add = add_first_residual(n, *i, *j, a2, &d, b);
            Ok(cong(word(*i, *j, a1, b), word(*i, *j, a2, b).into_letters(), rd.then(add)))
        }
        S3Bullet::CongruentSecond { i, j, a, b1, b2 } => {
            check_pos(n, *i, *j)?;
            require(a, a_ideal(), "a", "A")?;
            require(b1, b_ideal(), "b1", "B")?;
            require(b2, b_ideal(), "b2", "B")?;
            let d = b1 - b2;
            if !d.member(&IdealPattern::symmetric_plus_b2()) {
                return Err(Error::HypothesisViolation("b1 - b2 is not in AB+BA+B^2"));
            }
            let rd = trivial_second(n, *i, *j, a, &d)?;
            let add = add_second_residual(n, *i, *j, a, b2, &d);
            Ok(cong(word(*i, *j, a, b1), word(*i, *j, a, b2).into_letters(), rd.then(add)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::verify_congruence;

    fn s(n: &str) -> RingElem {
        RingElem::sym(n)
    }

    fn w(n: usize, letters: Vec<Transvection>) -> GroupWord {
        GroupWord::new(n, letters).unwrap()
    }

    #[test]
    fn lemma3_letter_cases() {
        let (a, b, c) = (s("a"), s("b"), s("c"));
        let all = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)];
        for n in [3, 4] {
            for &(k, l) in all.iter().chain([(3, 4), (4, 1), (2, 4)].iter()) {
                if k > n || l > n {
                    continue;
                }
                let x = w(n, vec![t(k, l, c.clone())]);
                let cong = lemma3_reduce(&x, 1, 2, &a, &b).unwrap();
                assert!(verify_congruence(&cong), "letter t[{k},{l}] n={n}");
            }
        }
    }

    #[test]
    fn lemma3_disjoint_letter_is_free() {
        let x = w(4, vec![t(3, 4, s("c"))]);
        let cong = lemma3_reduce(&x, 1, 2, &s("a"), &s("b")).unwrap();
        assert!(cong.residual.is_empty());
        assert!(verify_congruence(&cong));
    }

    #[test]
    fn lemma3_bracket_first_formula() {
        let (a, b, c) = (s("a"), s("b"), s("c"));
        let br = lemma3_bracket(&t(1, 3, c.clone()), 1, 2, &a, &b).unwrap();
        let mut lhs = vec![t(1, 3, c.clone())];
        let z: Vec<Transvection> = elementary_comm_letters(1, 2, &a, &b).into();
        lhs.extend(z.iter().cloned());
        lhs.push(t(1, 3, -&c));
        lhs.extend(invert_letters(&z));
        assert_eq!(crate::elemgroup::eval_letters(3, &lhs), crate::elemgroup::eval_letters(3, &br));
        let abc = &(&a * &b) * &c;
        assert_eq!(br[0].param, -(&abc + &(&(&a * &b) * &abc)));
    }

    #[test]
    fn lemma3_long_conjugator() {
        let x = w(3, vec![t(2, 1, s("c")), t(3, 2, s("d")), t(1, 2, s("e")), t(1, 3, RingElem::int(2))]);
        let a = &s("a") + &s("a2");
        let cong = lemma3_reduce(&x, 2, 3, &a, &s("b")).unwrap();
        assert!(verify_congruence(&cong));
    }

    #[test]
    fn lemma4_generic() {
        let x = w(3, vec![t(2, 3, s("d"))]);
        let out = lemma4_reduce(&x, 1, 2, &s("a"), &s("b"), &s("c")).unwrap();
        let (k, l, ref a2, ref b2) = out.gen;
        assert_eq!((k, l), (3, 2));
        assert_eq!(a2, &s("a"));
        assert_eq!(b2, &-&RingElem::word(&["c", "b", "c"]));
        assert_eq!(out.conjugator.letters()[1..], [t(1, 2, s("a")), t(1, 3, RingElem::one())]);
        assert!(verify_congruence(&out.congruence()));
    }

    #[test]
    fn lemma4_trivial_inputs() {
        let x = w(3, vec![]);
        let out = lemma4_reduce(&x, 1, 2, &s("a"), &RingElem::zero(), &s("c")).unwrap();
        assert!(out.residual.is_empty() && out.gen.2.is_zero());
        let out = lemma4_reduce(&x, 1, 2, &s("a"), &s("b"), &RingElem::zero()).unwrap();
        assert!(verify_congruence(&out.congruence()));
    }

    #[test]
    fn lemma4_all_positions_n4() {
        for (i, j) in [(1, 2), (2, 1), (3, 4), (4, 2)] {
            let x = w(4, vec![t(i, 4.min(j + 1).max(1), s("d"))].into_iter().filter(|l| l.i != l.j).collect());
            let out = lemma4_reduce(&x, i, j, &s("a"), &s("b"), &(&s("c") + &RingElem::one())).unwrap();
            assert!(verify_congruence(&out.congruence()), "({i},{j})");
        }
    }

    #[test]
    fn moves_are_exact() {
        let (a, b, c) = (s("a"), s("b"), s("c"));
        assert!(verify_congruence(&move_column(3, 1, 2, 3, &a, &c, &b).unwrap()));
        assert!(verify_congruence(&move_column(4, 2, 4, 1, &a, &RingElem::one(), &b).unwrap()));
        assert!(verify_congruence(&move_row(3, 1, 2, 3, &a, &b).unwrap()));
        assert!(verify_congruence(&move_row(4, 3, 1, 4, &a, &b).unwrap()));
    }

    #[test]
    fn transport_paths_are_short() {
        for n in [3, 4] {
            for i in 1..=n {
                for j in 1..=n {
                    for k in 1..=n {
                        for l in 1..=n {
                            if i != j && k != l {
                                assert!(transport_path(n, (i, j), (k, l)).len() <= 3);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transport_examples() {
        let (a, b) = (s("a"), s("b"));
        let same = lemma5_transport(3, 1, 2, 1, 2, &a, &b).unwrap();
        assert!(same.residual.is_empty());
        assert_eq!(transport_path(3, (1, 2), (1, 3)), vec![((1, 2), Move::Column(3))]);
        for (k, l) in [(1, 3), (3, 1), (2, 1), (2, 3), (3, 2)] {
            assert!(verify_congruence(&lemma5_transport(3, 1, 2, k, l, &a, &b).unwrap()), "({k},{l})");
        }
    }

    #[test]
    fn bullets_are_exact() {
        let (a, b, c) = (s("a"), s("b"), s("c"));
        let a2 = s("a2");
        let b2 = s("b2");
        let bullets = [
            S3Bullet::Shift { i: 1, j: 2, a: a.clone(), c: c.clone(), b: b.clone() },
            S3Bullet::AddFirst { i: 1, j: 2, a1: a.clone(), a2: a2.clone(), b: b.clone() },
            S3Bullet::AddSecond { i: 2, j: 3, a: a.clone(), b1: b.clone(), b2: b2.clone() },
            S3Bullet::InverseFirst { i: 1, j: 3, a: a.clone(), b: b.clone() },
            S3Bullet::InverseSecond { i: 3, j: 1, a: a.clone(), b: b.clone() },
            S3Bullet::CongruentFirst {
                i: 1,
                j: 2,
                a1: &a + &(&RingElem::word(&["a", "c", "a2"]) + &RingElem::word(&["b", "a"])),
                a2: a.clone(),
                b: b.clone(),
            },
            S3Bullet::CongruentSecond {
                i: 1,
                j: 2,
                a: a.clone(),
                b1: &b + &(&RingElem::word(&["b2", "c", "b"]) - &RingElem::word(&["a", "b"])),
                b2: b.clone(),
            },
        ];
        for bullet in &bullets {
            let cong = s3_congruence(3, bullet).unwrap();
            assert!(verify_congruence(&cong), "bullet {}", bullet.number());
        }
    }

    #[test]
    fn bullet_hypotheses_are_checked() {
        let bad = S3Bullet::CongruentFirst { i: 1, j: 2, a1: s("a"), a2: s("a2"), b: s("b") };
        assert!(matches!(s3_congruence(3, &bad), Err(Error::HypothesisViolation(_))));
        let bad = S3Bullet::Shift { i: 1, j: 2, a: s("b"), c: s("c"), b: s("b") };
        assert!(matches!(s3_congruence(3, &bad), Err(Error::SortViolation { .. })));
    }

    #[test]
    fn bullet_trivial_examples() {
        let cong = s3_congruence(3, &S3Bullet::InverseFirst { i: 1, j: 2, a: s("a"), b: RingElem::zero() }).unwrap();
        assert!(cong.residual.is_empty() && verify_congruence(&cong));
        let cong =
            s3_congruence(3, &S3Bullet::AddFirst { i: 1, j: 2, a1: s("a"), a2: RingElem::zero(), b: s("b") }).unwrap();
        assert!(verify_congruence(&cong));
    }

    #[test]
    fn conj_z_rejects_bad_input() {
        let rec = ZGenRecord::plain(1, 2, s("c"), IdealPattern::symmetric());
        assert!(conj_z(3, 1, 3, &s("d"), &rec).is_err());
        let rec = ZGenRecord::plain(1, 2, RingElem::word(&["a", "b"]), IdealPattern::symmetric());
        assert!(matches!(conj_z(3, 2, 2, &s("d"), &rec), Err(Error::SameIndex(2))));
    }
}
