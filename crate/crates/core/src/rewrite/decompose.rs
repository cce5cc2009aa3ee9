//! Decomposition of products of generators of `[E(n, R, A), E(n, R, B)]`
//! into elementary commutators at one fixed position times a residual.

use alloc::vec;
use alloc::vec::Vec;

use super::lemmas::{lemma3_traced, lemma4_traced, lemma5_traced, third_type_letters};
use super::{check_pos, require, Res, ResidualWord, Rule, TraceStep};
use super::conj::{Block, BlockConj};
use crate::coeff::Coeff;
use crate::elemgroup::{
    elementary_comm_letters, eval_letters, eval_letters_capped, invert_letters, matrix_level, z_letters, GroupWord, SquareMatrix, Transvection,
    ZGenRecord,
};
use crate::error::Error;
use crate::freering::{IdealPattern, RingElem, Sort};

/// The inner generator of a [`GeneratorTerm`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    /// `z_ij(ab, c)`.
    Z1ab { i: usize, j: usize, a: RingElem, b: RingElem, c: RingElem },
    /// `z_ij(ba, c)`.
    Z1ba { i: usize, j: usize, a: RingElem, b: RingElem, c: RingElem },
    /// `[t_ij(a), t_ji(b)]`.
    C2 { i: usize, j: usize, a: RingElem, b: RingElem },
    /// `[t_ij(a), z_ij(b, c)]`.
    C3 { i: usize, j: usize, a: RingElem, b: RingElem, c: RingElem },
}

impl TermKind {
    pub fn position(&self) -> (usize, usize) {
        match self {
            TermKind::Z1ab { i, j, .. }
            | TermKind::Z1ba { i, j, .. }
            | TermKind::C2 { i, j, .. }
            | TermKind::C3 { i, j, .. } => (*i, *j),
        }
    }

    pub fn letters(&self) -> Vec<Transvection> {
        match self {
            TermKind::Z1ab { i, j, a, b, c } => z_letters(*i, *j, &(a * b), c).into(),
            TermKind::Z1ba { i, j, a, b, c } => z_letters(*i, *j, &(b * a), c).into(),
            TermKind::C2 { i, j, a, b } => elementary_comm_letters(*i, *j, a, b).into(),
            TermKind::C3 { i, j, a, b, c } => third_type_letters(*i, *j, a, b, c),
        }
    }

    fn params(&self) -> (&RingElem, &RingElem) {
        match self {
            TermKind::Z1ab { a, b, .. }
            | TermKind::Z1ba { a, b, .. }
            | TermKind::C2 { a, b, .. }
            | TermKind::C3 { a, b, .. } => (a, b),
        }
    }
}

/// `^x g` for one of the standard generators `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTerm {
    pub x: GroupWord,
    pub kind: TermKind,
}

impl GeneratorTerm {
    pub fn new(x: GroupWord, kind: TermKind) -> GeneratorTerm {
        GeneratorTerm { x, kind }
    }

    pub fn letters(&self) -> Vec<Transvection> {
        let mut out = self.x.letters().to_vec();
        out.extend(self.kind.letters());
        out.extend(invert_letters(self.x.letters()));
        out
    }

    pub fn validate(&self, n: usize) -> Result<(), Error> {
        if self.x.degree() != n {
            return Err(Error::DegreeMismatch(self.x.degree(), n));
        }
        let (i, j) = self.kind.position();
        check_pos(n, i, j)?;
        let (a, b) = self.kind.params();
        require(a, IdealPattern::a(), "a", "A")?;
        require(b, IdealPattern::b(), "b", "B")
    }
}

/// Elementary commutators at one position followed by a residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    pub pair: (usize, usize),
    /// `(a_k, b_k)` for `[t_kl(a_k), t_lk(b_k)]` at `pair`.
    pub second_type: Vec<(RingElem, RingElem)>,
    pub residual: ResidualWord,
    pub trace: Vec<TraceStep>,
}

impl Decomposition {
    fn gen_letters(&self, a: &RingElem, b: &RingElem) -> Vec<Transvection> {
        elementary_comm_letters(self.pair.0, self.pair.1, a, b).into()
    }

    /// The second-type words followed by the residual.
    pub fn product_letters(&self) -> Vec<Transvection> {
        let mut out: Vec<Transvection> =
            self.second_type.iter().flat_map(|(a, b)| self.gen_letters(a, b)).collect();
        out.extend(self.residual.letters());
        out
    }

    /// Sorts of the second-type parameters and the residual level.
    pub fn is_well_formed(&self) -> bool {
        self.second_type
            .iter()
            .all(|(a, b)| a.member(&IdealPattern::a()) && b.member(&IdealPattern::b()))
            && self.residual.is_level_sound()
    }

    /// Every trace step is eval-preserving.
    pub fn steps_hold(&self) -> bool {
        self.trace.iter().all(TraceStep::holds)
    }

    /// Exact comparison of the output product with the input product.
    pub fn matches(&self, terms: &[GeneratorTerm]) -> bool {
        self.is_well_formed() && input_matrix(self.n, terms) == self.output_matrix()
    }

    /// Value of the output product.
    pub fn output_matrix(&self) -> SquareMatrix {
        let gens: Vec<Transvection> = self.second_type.iter().flat_map(|(a, b)| self.gen_letters(a, b)).collect();
        eval_letters(self.n, &gens).mul(&self.residual.eval(self.n))
    }

    /// Residual matrix lies in the congruence subgroup of level `AB + BA`.
    pub fn residual_level_holds(&self) -> bool {
        matrix_level(&self.residual.eval(self.n), &IdealPattern::symmetric())
    }

    /// The output product written again as generator terms.
    pub fn as_terms(&self) -> Vec<GeneratorTerm> {
        let id = GroupWord::from_checked(self.n, Vec::new());
        let (i, j) = self.pair;
        let mut out: Vec<GeneratorTerm> = self
            .second_type
            .iter()
            .map(|(a, b)| GeneratorTerm::new(id.clone(), TermKind::C2 { i, j, a: a.clone(), b: b.clone() }))
            .collect();
        for rec in &self.residual.records {
            // z_ij(p + q, c) = z_ij(p, c) z_ij(q, c)
            for (m, k) in rec.p.terms() {
                let (first, sort) = if m.contains_sorts(&[Sort::A, Sort::B]) { (Sort::A, true) } else { (Sort::B, false) };
                let (u, v) = m.split_after_first(first).expect("monomial in AB + BA");
                let u = RingElem::term(k.clone(), u);
                let v = RingElem::term(Coeff::ONE, v);
                let kind = if sort {
                    TermKind::Z1ab { i: rec.i, j: rec.j, a: u, b: v, c: rec.c.clone() }
                } else {
                    TermKind::Z1ba { i: rec.i, j: rec.j, a: v, b: u, c: rec.c.clone() }
                };
                out.push(GeneratorTerm::new(id.clone(), kind));
            }
        }
        out
    }
}

/// Value of a product of terms, evaluated term by term.
pub fn input_matrix(n: usize, terms: &[GeneratorTerm]) -> SquareMatrix {
    terms.iter().fold(SquareMatrix::identity(n), |m, t| m.mul(&eval_letters(n, &t.letters())))
}

fn word(n: usize, letters: Vec<Transvection>) -> GroupWord {
    GroupWord::from_checked(n, letters)
}

/// Knobs for [`decompose_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Position receiving every elementary commutator.
    pub pair: (usize, usize),
    /// Record the rewriting steps.
    pub trace: bool,
    /// Largest monomial degree allowed in a residual parameter.
    pub max_degree: Option<usize>,
    /// Largest total number of terms allowed across the residual parameters.
    /// Checked against a bound before each record is moved, so oversized
    /// inputs fail fast instead of exhausting memory.
    pub max_terms: Option<usize>,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { pair: (1, 2), trace: true, max_degree: None, max_terms: None }
    }
}

/// Decomposition with all elementary commutators at `(1, 2)`.
pub fn theorem1_decompose(terms: &[GeneratorTerm], n: usize) -> Result<Decomposition, Error> {
    decompose_with(terms, n, &DecomposeOptions::default())
}

/// Decomposition with all elementary commutators at `pair`.
pub fn decompose_to(terms: &[GeneratorTerm], n: usize, pair: (usize, usize)) -> Result<Decomposition, Error> {
    decompose_with(terms, n, &DecomposeOptions { pair, ..DecomposeOptions::default() })
}

pub fn decompose_with(terms: &[GeneratorTerm], n: usize, opts: &DecomposeOptions) -> Result<Decomposition, Error> {
    let pair = opts.pair;
    check_pos(n, pair.0, pair.1)?;
    for term in terms {
        term.validate(n)?;
    }
    let mut trace = Vec::new();
    let mut tracer = opts.trace.then_some(&mut trace);
    let mut reduced = Vec::with_capacity(terms.len());
    for term in terms {
        reduced.push(reduce_term(n, pair, term, tracer.as_deref_mut())?);
    }
    let pieces = push_residuals(n, pair, &reduced, opts.max_terms)?;
    if let Some(trace) = tracer {
        for piece in pieces.iter().filter(|p| !p.later.is_empty()) {
            for (r, img) in &piece.images {
                let mut before = r.letters();
                before.extend(piece.later.iter().cloned());
                let mut after = piece.later.clone();
                after.extend(ResidualWord::from(img.clone()).letters());
                trace.push(TraceStep { rule: Rule::Lemma1, before: word(n, before), after: word(n, after) });
            }
        }
    }
    if let Some(cap) = opts.max_degree {
        let deg = pieces.iter().flat_map(|p| p.images.iter()).map(|(_, img)| img.max_degree()).max().unwrap_or(0);
        if deg > cap {
            return Err(Error::DegreeCap(deg, cap));
        }
    }
    let residual = Res::Seq(pieces.into_iter().map(|p| Res::Seq(p.images.into_iter().map(|(_, img)| img).collect())).collect());
    let second_type = reduced.into_iter().filter_map(|(g, _)| g).collect();
    Ok(Decomposition { n, pair, second_type, residual: residual.into(), trace })
}

/// One term's residual after moving it right past every later generator.
struct Piece {
    /// Letters of the later generators, `W`.
    later: Vec<Transvection>,
    /// Each record of the local residual with its image `^{W^{-1}} r`.
    images: Vec<(ZGenRecord, Res)>,
}

// With W the product of the later generators, `R W = W . ^{W^{-1}} R`, and
// W only touches the `(k, l)` block. Records are moved one at a time so that
// each image can be checked on its own.
fn push_residuals(n: usize, pair: (usize, usize), reduced: &[Reduced], max_terms: Option<usize>) -> Result<Vec<Piece>, Error> {
    let (k, l) = pair;
    let cap = max_terms.unwrap_or(usize::MAX);
    let mut total = 0usize;
    let (mut w, mut w_inv) = (Block::identity(), Block::identity());
    let mut later: Vec<Transvection> = Vec::new();
    let mut pieces = Vec::with_capacity(reduced.len());
    for (gen, res) in reduced.iter().rev() {
        let records = ResidualWord::from(res.clone()).records;
        let bc = BlockConj { n, k, l, left: &w_inv, right: &w };
        let mut images = Vec::with_capacity(records.len());
        for r in records {
            let img = if later.is_empty() {
                Res::Rec(r.clone())
            } else {
                let bound = bc.image_bound(&r);
                if total.saturating_add(bound) > cap {
                    return Err(Error::SizeCap(total.saturating_add(bound), cap));
                }
                bc.record(&r)
            };
            total += img.num_terms();
            if total > cap {
                return Err(Error::SizeCap(total, cap));
            }
            images.push((r, img));
        }
        pieces.push(Piece { later: later.clone(), images });
        if let Some((a, b)) = gen {
            w = Block::comm(a, b).mul(&w);
            w_inv = w_inv.mul(&Block::comm_inverse(a, b));
            let mut g: Vec<Transvection> = elementary_comm_letters(k, l, a, b).into();
            g.extend(later);
            later = g;
        }
    }
    pieces.reverse();
    Ok(pieces)
}

/// Exact check of `d` against `terms`, one piece at a time.
///
/// Every term must equal its commutator times its local residual, and every
/// moved record must evaluate to the conjugate of the original by the later
/// commutators. Those identities give equality of the full products without
/// multiplying the residual out, which is far too expensive once the later
/// commutators have large entries. With `max_terms` set, any evaluation
/// whose partial product grows past it stops with [`Error::SizeCap`].
pub fn certify(terms: &[GeneratorTerm], d: &Decomposition, max_terms: Option<usize>) -> Result<bool, Error> {
    let cap = max_terms.unwrap_or(usize::MAX);
    let n = d.n;
    let ev = |letters: &[Transvection]| eval_letters_capped(n, letters, cap);
    for term in terms {
        term.validate(n)?;
    }
    if !d.is_well_formed() {
        return Ok(false);
    }
    let (k, l) = d.pair;
    let mut reduced = Vec::with_capacity(terms.len());
    for term in terms {
        reduced.push(reduce_term(n, d.pair, term, None)?);
    }
    let gens: Vec<&(RingElem, RingElem)> = reduced.iter().filter_map(|(g, _)| g.as_ref()).collect();
    if gens.len() != d.second_type.len() || gens.iter().zip(&d.second_type).any(|(g, h)| *g != h) {
        return Ok(false);
    }
    for (term, (gen, res)) in terms.iter().zip(&reduced) {
        let mut rhs: Vec<Transvection> = match gen {
            Some((a, b)) => elementary_comm_letters(k, l, a, b).into(),
            None => Vec::new(),
        };
        rhs.extend(ResidualWord::from(res.clone()).letters());
        if ev(&term.letters())? != ev(&rhs)? {
            return Ok(false);
        }
    }
    let mut records = Vec::with_capacity(d.residual.len());
    for piece in push_residuals(n, d.pair, &reduced, max_terms)? {
        let w_inv = invert_letters(&piece.later);
        for (r, img) in piece.images {
            let img = ResidualWord::from(img);
            if !piece.later.is_empty() {
                let conj: Vec<Transvection> =
                    w_inv.iter().cloned().chain(r.letters()).chain(piece.later.iter().cloned()).collect();
                if ev(&img.letters())? != ev(&conj)? {
                    return Ok(false);
                }
            }
            records.extend(img.records);
        }
    }
    Ok(records == d.residual.records)
}

type Reduced = (Option<(RingElem, RingElem)>, Res);

/// `term = gen . residual` with `gen` at `pair` (or absent).
fn reduce_term(
    n: usize,
    pair: (usize, usize),
    term: &GeneratorTerm,
    mut trace: Option<&mut Vec<TraceStep>>,
) -> Result<Reduced, Error> {
    let (k, l) = pair;
    let x = &term.x;
    match &term.kind {
        TermKind::Z1ab { i, j, a, b, c } | TermKind::Z1ba { i, j, a, b, c } => {
            let p = match term.kind {
                TermKind::Z1ab { .. } => a * b,
                _ => b * a,
            };
            let rec = ZGenRecord::new(*i, *j, p, c.clone(), IdealPattern::symmetric());
            let out = Res::Rec(rec).conj(n, x.letters());
            if let (false, Some(trace)) = (x.is_empty(), trace) {
                let after = ResidualWord::from(out.clone()).letters();
                trace.push(TraceStep { rule: Rule::Lemma1, before: word(n, term.letters()), after: word(n, after) });
            }
            Ok((None, out))
        }
        TermKind::C2 { i, j, a, b } => {
            let r3 = lemma3_traced(x, *i, *j, a, b, trace.as_deref_mut())?;
            let r5 = lemma5_traced(n, *i, *j, k, l, a, b, trace.as_deref_mut())?;
            Ok((nontrivial(a, b), r5.then(Res::from(r3.residual))))
        }
        TermKind::C3 { i, j, a, b, c } => {
            let (out4, r4) = lemma4_traced(x, *i, *j, a, b, c, trace.as_deref_mut())?;
            let (h, jj, a2, b2) = out4.gen.clone();
            if a2.is_zero() || b2.is_zero() {
                return Ok((None, r4));
            }
            let r3 = lemma3_traced(&out4.conjugator, h, jj, &a2, &b2, trace.as_deref_mut())?;
            let r5 = lemma5_traced(n, h, jj, k, l, &a2, &b2, trace)?;
            Ok((Some((a2, b2)), Res::seq(vec![r5, Res::from(r3.residual), r4])))
        }
    }
}

fn nontrivial(a: &RingElem, b: &RingElem) -> Option<(RingElem, RingElem)> {
    if a.is_zero() || b.is_zero() {
        None
    } else {
        Some((a.clone(), b.clone()))
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::elemgroup::t;

    fn s(name: &str) -> RingElem {
        RingElem::sym(name)
    }

    fn id(n: usize) -> GroupWord {
        GroupWord::identity(n).unwrap()
    }

    #[test]
    fn empty_input() {
        let d = theorem1_decompose(&[], 3).unwrap();
        assert!(d.second_type.is_empty() && d.residual.is_empty());
        assert!(d.matches(&[]));
    }

    #[test]
    fn c2_at_fixed_pair_passes_through() {
        let term = GeneratorTerm::new(id(3), TermKind::C2 { i: 1, j: 2, a: s("a1"), b: s("b1") });
        let d = theorem1_decompose(core::slice::from_ref(&term), 3).unwrap();
        assert_eq!(d.second_type, vec![(s("a1"), s("b1"))]);
        assert!(d.residual.is_empty());
        assert!(d.matches(&[term]));
    }

    #[test]
    fn conjugated_c3_term() {
        let x = GroupWord::new(3, vec![t(2, 3, s("c2"))]).unwrap();
        let term = GeneratorTerm::new(x, TermKind::C3 { i: 1, j: 3, a: s("a1"), b: s("b1"), c: s("c1") });
        let d = theorem1_decompose(core::slice::from_ref(&term), 3).unwrap();
        assert!(d.matches(&[term]));
        assert!(d.residual_level_holds());
        assert!(d.steps_hold());
        assert!(d.second_type.len() <= 1);
    }

    #[test]
    fn other_pair_and_mixed_terms() {
        let x = GroupWord::new(3, vec![t(3, 1, s("c1"))]).unwrap();
        let terms = vec![
            GeneratorTerm::new(x.clone(), TermKind::C2 { i: 2, j: 3, a: s("a1"), b: s("b1") }),
            GeneratorTerm::new(id(3), TermKind::Z1ba { i: 3, j: 1, a: s("a2"), b: s("b2"), c: s("c2") }),
            GeneratorTerm::new(x, TermKind::C2 { i: 1, j: 2, a: s("a3"), b: s("b3") }),
        ];
        for pair in [(1, 2), (3, 2)] {
            let d = decompose_to(&terms, 3, pair).unwrap();
            assert_eq!(d.pair, pair);
            assert_eq!(d.second_type.len(), 2);
            assert!(d.matches(&terms));
            assert!(d.residual_level_holds());
            assert!(d.steps_hold());
        }
    }

    #[test]
    fn as_terms_evaluates_to_output() {
        let terms = vec![
            GeneratorTerm::new(id(3), TermKind::C2 { i: 2, j: 1, a: s("a1"), b: s("b1") }),
            GeneratorTerm::new(id(3), TermKind::Z1ab { i: 1, j: 3, a: s("a1"), b: s("b2"), c: s("c1") + RingElem::int(2) }),
        ];
        let d = theorem1_decompose(&terms, 3).unwrap();
        assert_eq!(input_matrix(3, &d.as_terms()), d.output_matrix());
        assert_eq!(d.output_matrix(), input_matrix(3, &terms));
    }

    #[test]
    fn rejects_bad_input() {
        let bad_sort = GeneratorTerm::new(id(3), TermKind::C2 { i: 1, j: 2, a: s("b1"), b: s("b2") });
        assert!(matches!(theorem1_decompose(&[bad_sort], 3), Err(Error::SortViolation { .. })));
        let bad_pos = GeneratorTerm::new(id(3), TermKind::C2 { i: 1, j: 4, a: s("a1"), b: s("b1") });
        assert!(theorem1_decompose(&[bad_pos], 3).is_err());
        assert!(decompose_to(&[], 3, (2, 2)).is_err());
    }

    #[test]
    fn degree_guard() {
        let x = GroupWord::new(3, vec![t(2, 3, s("c1") * s("c2")), t(3, 1, s("c3") * s("c4"))]).unwrap();
        let term = GeneratorTerm::new(x, TermKind::C3 { i: 1, j: 2, a: s("a1"), b: s("b1"), c: s("c5") });
        let opts = DecomposeOptions { max_degree: Some(3), ..DecomposeOptions::default() };
        assert!(matches!(decompose_with(&[term], 3, &opts), Err(Error::DegreeCap(_, 3))));
    }

    fn mixed_terms() -> Vec<GeneratorTerm> {
        let x = GroupWord::new(3, vec![t(2, 3, s("c2")), t(3, 1, s("c1"))]).unwrap();
        vec![
            GeneratorTerm::new(id(3), TermKind::Z1ab { i: 2, j: 3, a: s("a1"), b: s("b1"), c: s("c3") }),
            GeneratorTerm::new(x.clone(), TermKind::C2 { i: 2, j: 3, a: s("a2"), b: s("b2") }),
            GeneratorTerm::new(x, TermKind::C3 { i: 1, j: 3, a: s("a1"), b: s("b2"), c: s("c1") }),
        ]
    }

    #[test]
    fn certify_agrees_with_direct_evaluation() {
        let terms = mixed_terms();
        let d = theorem1_decompose(&terms, 3).unwrap();
        assert!(d.matches(&terms));
        assert!(certify(&terms, &d, None).unwrap());
        assert!(d.steps_hold());
    }

    #[test]
    fn certify_rejects_tampering() {
        let terms = mixed_terms();
        let d = theorem1_decompose(&terms, 3).unwrap();
        let mut bad = d.clone();
        let r = bad.residual.records.last_mut().unwrap();
        r.p = &r.p + &(s("a1") * s("b1"));
        assert!(!certify(&terms, &bad, None).unwrap());
        let mut bad = d.clone();
        bad.residual.records.pop();
        assert!(!certify(&terms, &bad, None).unwrap());
        let mut bad = d;
        bad.second_type[0].0 = s("a3");
        assert!(!certify(&terms, &bad, None).unwrap());
    }
}
