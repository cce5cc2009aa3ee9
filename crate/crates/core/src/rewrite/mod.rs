//! Certified rewriting of commutator generators modulo `E(n, R, AB + BA)`.
//!
//! Every reduction returns a [`Congruence`]: a left-hand word, a right-hand
//! word, and an explicit residual of relative generators `z_ij(p, c)` with
//! `p` in `AB + BA`, such that `lhs = rhs . residual` holds exactly as
//! matrices over the free ring. [`verify_congruence`] re-checks that claim
//! from scratch; nothing in this module is trusted without it.

mod conj;
mod decompose;
pub(crate) mod lemmas;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::elemgroup::{elementary_comm_letters, eval_letters, GroupWord, SquareMatrix, Transvection, ZGenRecord};
use crate::error::Error;
use crate::freering::{IdealPattern, RingElem};

pub use decompose::{
    certify, decompose_to, decompose_with, input_matrix, theorem1_decompose, DecomposeOptions, Decomposition, GeneratorTerm, TermKind,
};
pub use lemmas::{
    conj_z, lemma3_bracket, lemma3_reduce, lemma4_factors, lemma4_reduce, lemma5_transport, move_column, move_row, s3_congruence,
    transport_path, Lemma4Factors, Lemma4Output, Move, S3Bullet,
};

/// Bracketing of a residual: how consecutive records are grouped when the
/// product is evaluated. It never changes the value, only the cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Plan {
    /// The next `k` records, multiplied left to right.
    Flat(usize),
    /// Product of the sub-plans.
    Group(Vec<Plan>),
}

impl Plan {
    pub fn len(&self) -> usize {
        match self {
            Plan::Flat(k) => *k,
            Plan::Group(ps) => ps.iter().map(Plan::len).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn reversed(&self) -> Plan {
        match self {
            Plan::Flat(k) => Plan::Flat(*k),
            Plan::Group(ps) => Plan::Group(ps.iter().rev().map(Plan::reversed).collect()),
        }
    }
}

/// A product of relative generators at level `AB + BA`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualWord {
    pub records: Vec<ZGenRecord>,
    pub plan: Plan,
}

impl Default for ResidualWord {
    fn default() -> Self {
        ResidualWord { records: Vec::new(), plan: Plan::Flat(0) }
    }
}

impl ResidualWord {
    pub fn new(records: Vec<ZGenRecord>) -> ResidualWord {
        let plan = Plan::Flat(records.len());
        ResidualWord { records, plan }
    }

    /// Records with an explicit bracketing; `None` if the plan does not
    /// cover the records exactly.
    pub fn with_plan(records: Vec<ZGenRecord>, plan: Plan) -> Option<ResidualWord> {
        (plan.len() == records.len()).then_some(ResidualWord { records, plan })
    }

    pub fn empty() -> ResidualWord {
        ResidualWord::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// The residual spelled out as transvections.
    pub fn letters(&self) -> Vec<Transvection> {
        self.records.iter().flat_map(ZGenRecord::letters).collect()
    }

    pub fn inverse(&self) -> ResidualWord {
        ResidualWord {
            records: self.records.iter().rev().map(ZGenRecord::inverse).collect(),
            plan: self.plan.reversed(),
        }
    }

    /// All parameters lie in `AB + BA`.
    pub fn is_level_sound(&self) -> bool {
        let sym = IdealPattern::symmetric();
        self.records.iter().all(|r| r.i != r.j && r.p.member(&sym))
    }

    pub fn max_param_degree(&self) -> usize {
        self.records.iter().map(|r| r.p.degree().max(r.c.degree())).max().unwrap_or(0)
    }

    /// The product of the records, bracketed by the plan.
    pub fn eval(&self, n: usize) -> SquareMatrix {
        fn go(n: usize, recs: &[ZGenRecord], plan: &Plan, pos: &mut usize) -> SquareMatrix {
            match plan {
                Plan::Flat(k) => {
                    let letters: Vec<Transvection> =
                        recs[*pos..*pos + k].iter().flat_map(ZGenRecord::letters).collect();
                    *pos += k;
                    eval_letters(n, &letters)
                }
                Plan::Group(ps) => {
                    let mut m = SquareMatrix::identity(n);
                    for p in ps {
                        let q = go(n, recs, p, pos);
                        m = m.mul(&q);
                    }
                    m
                }
            }
        }
        if self.plan.len() != self.records.len() {
            return eval_letters(n, &self.letters());
        }
        go(n, &self.records, &self.plan, &mut 0)
    }
}

impl From<Res> for ResidualWord {
    fn from(r: Res) -> ResidualWord {
        let mut records = Vec::new();
        let plan = r.flatten_into(&mut records);
        ResidualWord { records, plan }
    }
}

impl From<ResidualWord> for Res {
    fn from(w: ResidualWord) -> Res {
        fn go(recs: &mut alloc::vec::IntoIter<ZGenRecord>, plan: &Plan) -> Res {
            match plan {
                Plan::Flat(k) => Res::Seq(recs.take(*k).map(Res::Rec).collect()),
                Plan::Group(ps) => Res::Seq(ps.iter().map(|p| go(recs, p)).collect()),
            }
        }
        if w.plan.len() != w.records.len() {
            return Res::records(w.records);
        }
        go(&mut w.records.into_iter(), &w.plan)
    }
}

/// Residual under construction, kept as a tree mirroring how it was built
/// so that every subtree evaluates to a meaningful group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Res {
    Rec(ZGenRecord),
    Seq(Vec<Res>),
}

impl Res {
    pub(crate) fn empty() -> Res {
        Res::Seq(Vec::new())
    }

    pub(crate) fn records(recs: Vec<ZGenRecord>) -> Res {
        Res::seq(recs.into_iter().map(Res::Rec).collect())
    }

    /// Sequence node with empty children dropped and adjacent records merged.
    pub(crate) fn seq(children: Vec<Res>) -> Res {
        let mut out: Vec<Res> = Vec::with_capacity(children.len());
        for c in children {
            match c {
                Res::Rec(r) if r.is_trivial() => {}
                Res::Seq(v) if v.is_empty() => {}
                Res::Seq(mut v) if v.len() == 1 => push_merged(&mut out, v.pop().expect("one child")),
                c => push_merged(&mut out, c),
            }
        }
        if out.len() == 1 {
            out.pop().expect("one child")
        } else {
            Res::Seq(out)
        }
    }

    pub(crate) fn then(self, other: Res) -> Res {
        Res::seq(vec![self, other])
    }

    pub(crate) fn is_empty(&self) -> bool {
        matches!(self, Res::Seq(v) if v.is_empty())
    }

    pub(crate) fn num_terms(&self) -> usize {
        match self {
            Res::Rec(r) => r.p.num_terms() + r.c.num_terms(),
            Res::Seq(v) => v.iter().map(Res::num_terms).sum(),
        }
    }

    pub(crate) fn max_degree(&self) -> usize {
        match self {
            Res::Rec(r) => r.p.degree().max(r.c.degree()),
            Res::Seq(v) => v.iter().map(Res::max_degree).max().unwrap_or(0),
        }
    }

    pub(crate) fn inverse(&self) -> Res {
        match self {
            Res::Rec(r) => Res::Rec(r.inverse()),
            Res::Seq(v) => Res::Seq(v.iter().rev().map(Res::inverse).collect()),
        }
    }

    /// `^w self` for a word given by its letters.
    pub(crate) fn conj(&self, n: usize, letters: &[Transvection]) -> Res {
        let mut cur = self.clone();
        for letter in letters.iter().rev() {
            if !letter.param.is_zero() {
                cur = cur.conj_letter(n, letter);
            }
        }
        cur
    }

    /// `R'` with `self . z = z . R'` for `z = [t_ij(a), t_ji(b)]`, that is
    /// `R' = ^{z^{-1}} self`.
    pub(crate) fn past_comm(&self, n: usize, i: usize, j: usize, a: &RingElem, b: &RingElem) -> Res {
        let (left, right) = (conj::Block::comm_inverse(a, b), conj::Block::comm(a, b));
        self.conj_block(&conj::BlockConj { n, k: i, l: j, left: &left, right: &right })
    }

    pub(crate) fn conj_block(&self, bc: &conj::BlockConj<'_>) -> Res {
        match self {
            Res::Rec(r) => bc.record(r),
            Res::Seq(v) => Res::seq(v.iter().map(|c| c.conj_block(bc)).collect()),
        }
    }

    fn conj_letter(&self, n: usize, letter: &Transvection) -> Res {
        match self {
            Res::Rec(r) => conj::conj_record_tree(n, letter, r),
            Res::Seq(v) => Res::seq(v.iter().map(|c| c.conj_letter(n, letter)).collect()),
        }
    }

    fn flatten_into(&self, out: &mut Vec<ZGenRecord>) -> Plan {
        match self {
            Res::Rec(r) => {
                out.push(r.clone());
                Plan::Flat(1)
            }
            Res::Seq(v) => {
                if v.iter().all(|c| matches!(c, Res::Rec(_))) {
                    for c in v {
                        c.flatten_into(out);
                    }
                    Plan::Flat(v.len())
                } else {
                    Plan::Group(v.iter().map(|c| c.flatten_into(out)).collect())
                }
            }
        }
    }
}

fn push_merged(out: &mut Vec<Res>, c: Res) {
    if let (Some(Res::Rec(o)), Res::Rec(r)) = (out.last_mut(), &c) {
        if o.i == r.i && o.j == r.j && o.c == r.c {
            let p = &o.p + &r.p;
            if p.is_zero() {
                out.pop();
            } else {
                o.p = p;
            }
            return;
        }
    }
    out.push(c);
}

/// Certificate of `lhs = rhs . residual`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub lhs: GroupWord,
    pub rhs: GroupWord,
    pub residual: ResidualWord,
}

/// Exact check of a congruence certificate.
pub fn verify_congruence(c: &Congruence) -> bool {
    if c.lhs.degree() != c.rhs.degree() || !c.residual.is_level_sound() {
        return false;
    }
    let n = c.lhs.degree();
    if c.residual.records.iter().any(|r| r.i > n || r.j > n || r.i == 0 || r.j == 0) {
        return false;
    }
    eval_letters(n, c.lhs.letters()) == eval_letters(n, c.rhs.letters()).mul(&c.residual.eval(n))
}

/// Names of the rewriting rules recorded in traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Lemma1,
    Lemma3Case1,
    Lemma3Case2,
    Lemma3Case3,
    Lemma4,
    Lemma5Move,
    S3Bullet(u8),
}

impl Rule {
    pub fn name(&self) -> String {
        match self {
            Rule::Lemma1 => "lemma1".into(),
            Rule::Lemma3Case1 => "lemma3-case1".into(),
            Rule::Lemma3Case2 => "lemma3-case2".into(),
            Rule::Lemma3Case3 => "lemma3-case3".into(),
            Rule::Lemma4 => "lemma4".into(),
            Rule::Lemma5Move => "lemma5-move".into(),
            Rule::S3Bullet(k) => alloc::format!("s3-bullet-{k}"),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// One eval-preserving rewrite: `before` and `after` evaluate equally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub before: GroupWord,
    pub after: GroupWord,
}

impl TraceStep {
    pub fn holds(&self) -> bool {
        self.before.degree() == self.after.degree()
            && eval_letters(self.before.degree(), self.before.letters())
                == eval_letters(self.after.degree(), self.after.letters())
    }
}

/// A word interleaving ordinary letters and residual blocks.
#[derive(Clone, Debug)]
pub(crate) enum Item {
    Letters(Vec<Transvection>),
    /// The elementary commutator `[t_ij(a), t_ji(b)]`.
    Comm(usize, usize, RingElem, RingElem),
    Res(Res),
}

/// Pushes every residual block to the right end: returns `(letters, res)`
/// with `items = letters . res` exactly.
pub(crate) fn collect(n: usize, items: Vec<Item>) -> (Vec<Transvection>, Res) {
    let mut letters = Vec::new();
    let mut res = Res::empty();
    for item in items {
        match item {
            Item::Res(r) => res = res.then(r),
            Item::Comm(i, j, a, b) => {
                if !res.is_empty() {
                    res = res.past_comm(n, i, j, &a, &b);
                }
                letters.extend(elementary_comm_letters(i, j, &a, &b));
            }
            Item::Letters(ls) => {
                for l in ls {
                    if l.param.is_zero() {
                        continue;
                    }
                    if !res.is_empty() {
                        res = res.conj(n, &[l.inverse()]);
                    }
                    letters.push(l);
                }
            }
        }
    }
    (letters, res)
}

/// Merges records that meet at the same position and conjugator, looking
/// back past plain records that commute with the incoming one.
pub fn simplify_records(recs: &[ZGenRecord]) -> Vec<ZGenRecord> {
    let mut out: Vec<ZGenRecord> = Vec::with_capacity(recs.len());
    for r in recs {
        if r.is_trivial() {
            continue;
        }
        let mut merged = false;
        for k in (0..out.len()).rev() {
            let o = &out[k];
            if o.i == r.i && o.j == r.j && o.c == r.c {
                let p = &o.p + &r.p;
                if p.is_zero() {
                    out.remove(k);
                } else {
                    out[k].p = p;
                }
                merged = true;
                break;
            }
            let commutes = o.c.is_zero() && r.c.is_zero() && o.j != r.i && o.i != r.j;
            if !commutes {
                break;
            }
        }
        if !merged {
            out.push(r.clone());
        }
    }
    out
}

pub(crate) fn sym_plain(i: usize, j: usize, p: RingElem) -> ZGenRecord {
    ZGenRecord::plain(i, j, p, IdealPattern::symmetric())
}

pub(crate) fn check_pos(n: usize, i: usize, j: usize) -> Result<(), Error> {
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange(i, j, n));
    }
    if i == j {
        return Err(Error::SameIndex(i));
    }
    Ok(())
}

pub(crate) fn require(p: &RingElem, ideal: IdealPattern, what: &'static str, name: &'static str) -> Result<(), Error> {
    if p.member(&ideal) {
        Ok(())
    } else {
        Err(Error::SortViolation { what, ideal: name })
    }
}
