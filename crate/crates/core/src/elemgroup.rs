//! Elementary transvections, words in them, and exact evaluation to
//! matrices over the free ring.
//!
//! Indices are 1-based throughout, matching the usual `t_ij` notation.
//! A word carries its degree `n`; words of different degrees never mix.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::freering::{IdealPattern, RingElem};

/// `t_ij(p) = e + p e_ij`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Transvection {
    pub i: usize,
    pub j: usize,
    pub param: RingElem,
}

impl Transvection {
    pub fn new(i: usize, j: usize, param: RingElem) -> Transvection {
        Transvection { i, j, param }
    }

    pub fn inverse(&self) -> Transvection {
        Transvection { i: self.i, j: self.j, param: -&self.param }
    }

    fn check(&self, n: usize) -> Result<(), Error> {
        if self.i == 0 || self.j == 0 || self.i > n || self.j > n {
            return Err(Error::IndexOutOfRange(self.i, self.j, n));
        }
        if self.i == self.j {
            return Err(Error::SameIndex(self.i));
        }
        Ok(())
    }
}

impl fmt::Display for Transvection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{},{}]({})", self.i, self.j, self.param)
    }
}

impl fmt::Debug for Transvection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for building a transvection.
pub fn t(i: usize, j: usize, param: RingElem) -> Transvection {
    Transvection::new(i, j, param)
}

/// A product of transvections in `E(n, R)`; empty means the identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    n: usize,
    letters: Vec<Transvection>,
}

impl GroupWord {
    pub fn identity(n: usize) -> Result<GroupWord, Error> {
        if n < 3 {
            return Err(Error::DegreeTooSmall(n));
        }
        Ok(GroupWord { n, letters: Vec::new() })
    }

    pub fn new(n: usize, letters: Vec<Transvection>) -> Result<GroupWord, Error> {
        let mut w = GroupWord::identity(n)?;
        for l in letters {
            w.push(l)?;
        }
        Ok(w)
    }

    /// Builds a word from letters already known to be in range.
    pub(crate) fn from_checked(n: usize, letters: Vec<Transvection>) -> GroupWord {
        debug_assert!(letters.iter().all(|l| l.check(n).is_ok()));
        GroupWord { n, letters }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Transvection] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Transvection> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Transvection) -> Result<(), Error> {
        l.check(self.n)?;
        self.letters.push(l);
        Ok(())
    }

    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord, Error> {
        same_degree(self, other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(GroupWord { n: self.n, letters })
    }

    /// Sum of parameter degrees; bounds the monomial degree of `eval`.
    pub fn degree_bound(&self) -> usize {
        self.letters.iter().map(|l| l.param.degree()).sum()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord(n={}, [{self}])", self.n)
    }
}

fn same_degree(x: &GroupWord, y: &GroupWord) -> Result<(), Error> {
    if x.n != y.n {
        return Err(Error::DegreeMismatch(x.n, y.n));
    }
    Ok(())
}

/// Dense `n x n` matrix over the free ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<RingElem>,
}

impl SquareMatrix {
    pub fn identity(n: usize) -> SquareMatrix {
        let mut entries = vec![RingElem::zero(); n * n];
        for k in 0..n {
            entries[k * n + k] = RingElem::one();
        }
        SquareMatrix { n, entries }
    }

    pub fn from_entries(n: usize, entries: Vec<RingElem>) -> SquareMatrix {
        assert_eq!(entries.len(), n * n);
        SquareMatrix { n, entries }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.entries[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == SquareMatrix::identity(self.n)
    }

    /// Right multiplication by `t_ij(p)`: column `j` gains column `i` times `p`.
    pub fn mul_transvection(&mut self, i: usize, j: usize, p: &RingElem) {
        let n = self.n;
        for r in 0..n {
            let src = self.entries[r * n + (i - 1)].clone();
            if src.is_zero() {
                continue;
            }
            self.entries[r * n + (j - 1)].add_product(&src, p);
        }
    }

    /// Product, computed as `X + X (Y - e)` or `Y + (X - e) Y` whichever
    /// deviation from the identity is lighter; factors arising from group
    /// words are usually close to the identity.
    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let (dx, dy) = (self.deviation(), other.deviation());
        let weight = |d: &[RingElem]| d.iter().map(RingElem::num_terms).sum::<usize>();
        let mut out = if weight(&dy) <= weight(&dx) { self.entries.clone() } else { other.entries.clone() };
        let right = weight(&dy) <= weight(&dx);
        for r in 0..n {
            for k in 0..n {
                for c in 0..n {
                    let (x, y) = if right {
                        (&self.entries[r * n + k], &dy[k * n + c])
                    } else {
                        (&dx[r * n + k], &other.entries[k * n + c])
                    };
                    if !x.is_zero() && !y.is_zero() {
                        out[r * n + c].add_product(x, y);
                    }
                }
            }
        }
        SquareMatrix { n, entries: out }
    }

    fn deviation(&self) -> Vec<RingElem> {
        let n = self.n;
        let mut d = self.entries.clone();
        for k in 0..n {
            d[k * n + k] = &d[k * n + k] - &RingElem::one();
        }
        d
    }

    /// Largest monomial degree over all entries.
    pub fn max_degree(&self) -> usize {
        self.entries.iter().map(RingElem::degree).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.entries.iter().map(RingElem::num_terms).sum()
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 1..=self.n {
            f.write_str("[")?;
            for c in 1..=self.n {
                if c > 1 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Product of the letters in word order.
pub fn eval(w: &GroupWord) -> SquareMatrix {
    eval_letters(w.n, &w.letters)
}

pub fn eval_letters(n: usize, letters: &[Transvection]) -> SquareMatrix {
    let mut m = SquareMatrix::identity(n);
    for l in letters {
        if !l.param.is_zero() {
            m.mul_transvection(l.i, l.j, &l.param);
        }
    }
    m
}

/// [`eval_letters`] that gives up before any partial product could hold
/// more than `cap` terms.
pub fn eval_letters_capped(n: usize, letters: &[Transvection], cap: usize) -> Result<SquareMatrix, Error> {
    let mut m = SquareMatrix::identity(n);
    let mut size = n;
    for l in letters {
        if l.param.is_zero() {
            continue;
        }
        let column: usize = (0..n).map(|r| m.entries[r * n + l.i - 1].num_terms()).sum();
        let bound = size.saturating_add(column.saturating_mul(l.param.num_terms()));
        if bound > cap {
            return Err(Error::SizeCap(bound, cap));
        }
        m.mul_transvection(l.i, l.j, &l.param);
        size = m.num_terms();
    }
    Ok(m)
}

pub fn invert_letters(letters: &[Transvection]) -> Vec<Transvection> {
    letters.iter().rev().map(Transvection::inverse).collect()
}

pub fn word_inv(w: &GroupWord) -> GroupWord {
    GroupWord { n: w.n, letters: invert_letters(&w.letters) }
}

/// `x w x^{-1}`.
pub fn word_conj(x: &GroupWord, w: &GroupWord) -> Result<GroupWord, Error> {
    same_degree(x, w)?;
    let mut letters = x.letters.clone();
    letters.extend_from_slice(&w.letters);
    letters.extend(invert_letters(&x.letters));
    Ok(GroupWord { n: w.n, letters })
}

/// Left-normed commutator `u v u^{-1} v^{-1}`.
pub fn word_comm(u: &GroupWord, v: &GroupWord) -> Result<GroupWord, Error> {
    same_degree(u, v)?;
    let mut letters = u.letters.clone();
    letters.extend_from_slice(&v.letters);
    letters.extend(invert_letters(&u.letters));
    letters.extend(invert_letters(&v.letters));
    Ok(GroupWord { n: u.n, letters })
}

/// Letters of `z_ij(p, c) = t_ji(c) t_ij(p) t_ji(-c)`.
pub fn z_letters(i: usize, j: usize, p: &RingElem, c: &RingElem) -> [Transvection; 3] {
    [t(j, i, c.clone()), t(i, j, p.clone()), t(j, i, -c)]
}

pub fn z_gen(n: usize, i: usize, j: usize, p: RingElem, c: RingElem) -> Result<GroupWord, Error> {
    GroupWord::new(n, z_letters(i, j, &p, &c).into())
}

/// Letters of the elementary commutator `[t_ij(a), t_ji(b)]`.
pub fn elementary_comm_letters(i: usize, j: usize, a: &RingElem, b: &RingElem) -> [Transvection; 4] {
    [t(i, j, a.clone()), t(j, i, b.clone()), t(i, j, -a), t(j, i, -b)]
}

/// Merges adjacent letters at equal positions and drops zero parameters,
/// until no rule applies.
pub fn free_reduce(w: &GroupWord) -> GroupWord {
    GroupWord { n: w.n, letters: free_reduce_letters(&w.letters) }
}

pub fn free_reduce_letters(letters: &[Transvection]) -> Vec<Transvection> {
    let mut out: Vec<Transvection> = Vec::with_capacity(letters.len());
    for l in letters {
        if l.param.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.i == l.i && last.j == l.j => {
                last.param.add_assign_ref(&l.param);
                if last.param.is_zero() {
                    out.pop();
                }
            }
            _ => out.push(l.clone()),
        }
    }
    out
}

/// Closed form of `[t1, t2]` from the Steinberg relations.
///
/// Refuses the opposite-position case `(i1, j1) = (j2, i2)`; that
/// commutator is an elementary commutator and has no shorter form.
pub fn steinberg_comm(n: usize, t1: &Transvection, t2: &Transvection) -> Result<GroupWord, Error> {
    t1.check(n)?;
    t2.check(n)?;
    if t1.i == t2.j && t1.j == t2.i {
        return Err(Error::OppositePositions(t1.i, t1.j));
    }
    let letters = if t1.j == t2.i {
        vec![t(t1.i, t2.j, &t1.param * &t2.param)]
    } else if t1.i == t2.j {
        vec![t(t2.i, t1.j, -(&t2.param * &t1.param))]
    } else {
        Vec::new()
    };
    Ok(GroupWord { n, letters })
}

/// True iff `m` is congruent to the identity modulo the ideal.
pub fn matrix_level(m: &SquareMatrix, ideal: &IdealPattern) -> bool {
    let n = m.degree();
    (1..=n).all(|r| {
        (1..=n).all(|c| {
            let e = m.get(r, c);
            if r == c {
                (e - &RingElem::one()).member(ideal)
            } else {
                e.member(ideal)
            }
        })
    })
}

/// A relative elementary generator `z_ij(p, c)` with `p` in `level`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZGenRecord {
    pub i: usize,
    pub j: usize,
    pub p: RingElem,
    pub c: RingElem,
    pub level: IdealPattern,
}

impl ZGenRecord {
    pub fn new(i: usize, j: usize, p: RingElem, c: RingElem, level: IdealPattern) -> ZGenRecord {
        ZGenRecord { i, j, p, c, level }
    }

    /// The plain transvection `t_ij(p)` viewed as `z_ij(p, 0)`.
    pub fn plain(i: usize, j: usize, p: RingElem, level: IdealPattern) -> ZGenRecord {
        ZGenRecord { i, j, p, c: RingElem::zero(), level }
    }

    pub fn letters(&self) -> Vec<Transvection> {
        if self.c.is_zero() {
            vec![t(self.i, self.j, self.p.clone())]
        } else {
            z_letters(self.i, self.j, &self.p, &self.c).into()
        }
    }

    /// `z_ij(p, c)^{-1} = z_ij(-p, c)`.
    pub fn inverse(&self) -> ZGenRecord {
        ZGenRecord { p: -&self.p, ..self.clone() }
    }

    pub fn is_valid(&self) -> bool {
        self.i != self.j && self.p.member(&self.level)
    }

    pub fn is_trivial(&self) -> bool {
        self.p.is_zero()
    }
}

impl fmt::Display for ZGenRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z[{},{}]({}, {})", self.i, self.j, self.p, self.c)
    }
}

impl fmt::Debug for ZGenRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> RingElem {
        RingElem::sym(n)
    }

    fn w(n: &[&str]) -> RingElem {
        RingElem::word(n)
    }

    fn word(n: usize, letters: Vec<Transvection>) -> GroupWord {
        GroupWord::new(n, letters).unwrap()
    }

    #[test]
    fn empty_word_is_identity() {
        assert!(eval(&GroupWord::identity(3).unwrap()).is_identity());
        assert_eq!(GroupWord::identity(2), Err(Error::DegreeTooSmall(2)));
    }

    #[test]
    fn elementary_commutator_block() {
        let (a, b) = (s("a"), s("b"));
        let z = word(3, elementary_comm_letters(1, 2, &a, &b).into());
        let m = eval(&z);
        let one = RingElem::one();
        assert_eq!(*m.get(1, 1), &(&one + &w(&["a", "b"])) + &w(&["a", "b", "a", "b"]));
        assert_eq!(*m.get(1, 2), -&w(&["a", "b", "a"]));
        assert_eq!(*m.get(2, 1), w(&["b", "a", "b"]));
        assert_eq!(*m.get(2, 2), &one - &w(&["b", "a"]));
        assert!(m.get(3, 3).is_one());
        assert!(m.get(1, 3).is_zero() && m.get(3, 1).is_zero());

        let mi = eval(&word_inv(&z));
        assert_eq!(*mi.get(1, 1), &one - &w(&["a", "b"]));
        assert_eq!(*mi.get(1, 2), w(&["a", "b", "a"]));
        assert_eq!(*mi.get(2, 1), -&w(&["b", "a", "b"]));
        assert_eq!(*mi.get(2, 2), &(&one + &w(&["b", "a"])) + &w(&["b", "a", "b", "a"]));
        assert!(m.mul(&mi).is_identity());
    }

    #[test]
    fn inverse_of_single_letter() {
        let x = word(3, vec![t(1, 2, s("a"))]);
        assert_eq!(word_inv(&x).letters(), &[t(1, 2, -s("a"))]);
    }

    #[test]
    fn z_inverse_is_z_with_negated_param() {
        let zw = z_gen(3, 1, 2, s("b"), s("c")).unwrap();
        let expect = z_gen(3, 1, 2, -s("b"), s("c")).unwrap();
        assert_eq!(free_reduce(&word_inv(&zw)), free_reduce(&expect));
    }

    #[test]
    fn z_with_zero_conjugator_reduces() {
        let zw = z_gen(3, 2, 3, s("a"), RingElem::zero()).unwrap();
        assert_eq!(free_reduce(&zw).letters(), &[t(2, 3, s("a"))]);
        assert_eq!(z_gen(3, 2, 2, s("a"), s("c")), Err(Error::SameIndex(2)));
    }

    #[test]
    fn z_matrix_is_definitional() {
        let zw = z_gen(3, 1, 2, s("a"), s("c")).unwrap();
        let m = eval(&word(3, vec![t(2, 1, s("c"))]))
            .mul(&eval(&word(3, vec![t(1, 2, s("a"))])))
            .mul(&eval(&word(3, vec![t(2, 1, -s("c"))])));
        assert_eq!(eval(&zw), m);
    }

    #[test]
    fn z_params_lie_where_expected() {
        let ab = w(&["a", "b"]);
        let zw = z_gen(3, 1, 2, ab.clone(), s("c")).unwrap();
        assert!(zw.letters().iter().all(|l| l.param == s("c") || l.param == -s("c") || l.param == ab));
        assert!(ab.member(&IdealPattern::symmetric()));
    }

    #[test]
    fn free_reduce_examples() {
        let x = word(3, vec![t(1, 2, s("a")), t(1, 2, -s("a"))]);
        assert!(free_reduce(&x).is_empty());
        let y = word(3, vec![t(1, 2, s("a")), t(1, 2, s("b"))]);
        assert_eq!(free_reduce(&y).letters(), &[t(1, 2, &s("a") + &s("b"))]);
        // cascading cancellation
        let z = word(3, vec![t(1, 3, s("c")), t(1, 2, s("a")), t(1, 2, -s("a")), t(1, 3, -s("c"))]);
        assert!(free_reduce(&z).is_empty());
    }

    #[test]
    fn steinberg_examples() {
        let r = steinberg_comm(3, &t(1, 2, s("a")), &t(2, 3, s("b"))).unwrap();
        assert_eq!(r.letters(), &[t(1, 3, w(&["a", "b"]))]);
        let r = steinberg_comm(4, &t(1, 2, s("a")), &t(3, 4, s("b"))).unwrap();
        assert!(r.is_empty());
        assert_eq!(
            steinberg_comm(3, &t(1, 2, s("a")), &t(2, 1, s("b"))),
            Err(Error::OppositePositions(1, 2))
        );
        let r = steinberg_comm(3, &t(1, 2, s("a")), &t(3, 1, s("b"))).unwrap();
        let direct = word_comm(&word(3, vec![t(1, 2, s("a"))]), &word(3, vec![t(3, 1, s("b"))])).unwrap();
        assert_eq!(eval(&r), eval(&direct));
    }

    #[test]
    fn level_examples() {
        let sym = IdealPattern::symmetric();
        assert!(matrix_level(&SquareMatrix::identity(3), &sym));
        let z = word(3, elementary_comm_letters(1, 2, &s("a"), &s("b")).into());
        assert!(matrix_level(&eval(&z), &sym));
        assert!(!matrix_level(&eval(&word(3, vec![t(1, 2, s("a"))])), &sym));
        assert!(matrix_level(&eval(&word(3, vec![t(1, 2, s("a"))])), &IdealPattern::a()));
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let x = GroupWord::identity(3).unwrap();
        let y = GroupWord::identity(4).unwrap();
        assert_eq!(word_conj(&x, &y), Err(Error::DegreeMismatch(3, 4)));
        assert_eq!(word_comm(&x, &y), Err(Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(GroupWord::new(3, vec![t(1, 4, s("a"))]), Err(Error::IndexOutOfRange(1, 4, 3)));
        assert_eq!(GroupWord::new(3, vec![t(1, 1, s("a"))]), Err(Error::SameIndex(1)));
    }
}
