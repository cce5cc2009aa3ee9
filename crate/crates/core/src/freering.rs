//! The free associative ring over the integers on sorted symbols.
//!
//! Symbols are sorted by the ideal they stand for: names starting with `a`
//! live in `A`, names starting with `b` live in `B`, everything else is a
//! plain ring element. Because the ring is free, a polynomial lies in an
//! ideal like `AB + BA` exactly when each of its monomials contains the
//! required sorts as an ordered subsequence, which makes membership
//! decidable monomial by monomial.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::coeff::Coeff;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    A,
    B,
    R,
}

impl Sort {
    /// Sort of a symbol name, decided by its first character.
    pub fn of_name(name: &str) -> Sort {
        match name.as_bytes().first() {
            Some(b'a') => Sort::A,
            Some(b'b') => Sort::B,
            _ => Sort::R,
        }
    }
}

/// A free generator. The sort is a function of the name.
///
/// Names are at most [`Symbol::MAX_LEN`] bytes and stored inline, zero
/// padded, so byte order is name order and monomials stay cheap to copy
/// and compare.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol([u8; Symbol::MAX_LEN]);

impl Symbol {
    pub const MAX_LEN: usize = 16;

    /// Panics on names longer than [`Symbol::MAX_LEN`] bytes or containing
    /// NUL; see [`Symbol::try_new`].
    pub fn new(name: &str) -> Symbol {
        Symbol::try_new(name).expect("symbol name too long or contains NUL")
    }

    pub fn try_new(name: &str) -> Option<Symbol> {
        let bytes = name.as_bytes();
        if bytes.is_empty() || bytes.len() > Symbol::MAX_LEN || bytes.contains(&0) {
            return None;
        }
        let mut buf = [0u8; Symbol::MAX_LEN];
        buf[..bytes.len()].copy_from_slice(bytes);
        Some(Symbol(buf))
    }

    pub fn name(&self) -> &str {
        let len = self.0.iter().position(|&b| b == 0).unwrap_or(Symbol::MAX_LEN);
        core::str::from_utf8(&self.0[..len]).expect("built from a str")
    }

    pub fn sort(&self) -> Sort {
        match self.0[0] {
            b'a' => Sort::A,
            b'b' => Sort::B,
            _ => Sort::R,
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A word in the symbols; the empty word is the unit.
///
/// Ordered degree-lexicographically: shorter words first, then by symbol
/// names left to right. Symbols are stored as their padded name bytes so
/// that comparison is a single byte-slice comparison.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<[u8; Symbol::MAX_LEN]>);

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Monomial {
        Monomial(symbols.into_iter().map(|s| s.0).collect())
    }

    pub fn symbols(&self) -> impl ExactSizeIterator<Item = Symbol> + '_ {
        self.0.iter().map(|b| Symbol(*b))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    /// True if the sorts of `pattern` occur in order (not necessarily
    /// contiguously) among this monomial's symbols.
    pub fn contains_sorts(&self, pattern: &[Sort]) -> bool {
        let mut want = pattern.iter().peekable();
        for s in self.symbols() {
            match want.peek() {
                None => break,
                Some(w) if **w == s.sort() => {
                    want.next();
                }
                _ => {}
            }
        }
        want.peek().is_none()
    }

    /// Splits after the first symbol of sort `sort`, if there is one.
    pub fn split_after_first(&self, sort: Sort) -> Option<(Monomial, Monomial)> {
        let pos = self.symbols().position(|s| s.sort() == sort)?;
        Some((Monomial(self.0[..=pos].to_vec()), Monomial(self.0[pos + 1..].to_vec())))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.as_flattened().cmp(other.0.as_flattened()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, s) in self.symbols().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(s.name())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of the free ring: a finite integer combination of monomials.
/// Terms are kept sorted by monomial with no zero coefficient stored, so
/// derived equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElem {
    terms: Vec<(Monomial, Coeff)>,
}

impl RingElem {
    pub fn zero() -> RingElem {
        RingElem::default()
    }

    pub fn one() -> RingElem {
        RingElem::int(1)
    }

    pub fn int(v: i64) -> RingElem {
        RingElem::from_coeff(Coeff::from(v))
    }

    pub fn from_coeff(c: Coeff) -> RingElem {
        RingElem::term(c, Monomial::unit())
    }

    pub fn sym(name: &str) -> RingElem {
        RingElem::term(Coeff::ONE, Monomial::from_symbols(alloc::vec![Symbol::new(name)]))
    }

    /// Product of the named symbols, in order.
    pub fn word(names: &[&str]) -> RingElem {
        RingElem::term(Coeff::ONE, Monomial::from_symbols(names.iter().map(|n| Symbol::new(n)).collect()))
    }

    pub fn term(c: Coeff, m: Monomial) -> RingElem {
        if c.is_zero() {
            RingElem::zero()
        } else {
            RingElem { terms: alloc::vec![(m, c)] }
        }
    }

    /// Sorts and combines arbitrary terms.
    pub fn from_terms(mut terms: Vec<(Monomial, Coeff)>) -> RingElem {
        terms.sort_by(|x, y| x.0.cmp(&y.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = &last.1 + &c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        RingElem { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.degree() == 0 && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest monomial degree; 0 for constants and for zero.
    pub fn degree(&self) -> usize {
        self.terms.last().map(|t| t.0.degree()).unwrap_or(0)
    }

    /// Coefficient of the empty monomial.
    pub fn constant(&self) -> Coeff {
        match self.terms.first() {
            Some((m, c)) if m.degree() == 0 => c.clone(),
            _ => Coeff::ZERO,
        }
    }

    /// Every symbol occurring in the element.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self.terms.iter().flat_map(|(m, _)| m.symbols()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Merges sorted term lists.
    fn merge(x: Vec<(Monomial, Coeff)>, y: Vec<(Monomial, Coeff)>) -> Vec<(Monomial, Coeff)> {
        if x.is_empty() {
            return y;
        }
        if y.is_empty() {
            return x;
        }
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut xi, mut yi) = (x.into_iter().peekable(), y.into_iter().peekable());
        loop {
            let ord = match (xi.peek(), yi.peek()) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(xi.next().expect("peeked")),
                Ordering::Greater => out.push(yi.next().expect("peeked")),
                Ordering::Equal => {
                    let (m, a) = xi.next().expect("peeked");
                    let (_, b) = yi.next().expect("peeked");
                    let s = &a + &b;
                    if !s.is_zero() {
                        out.push((m, s));
                    }
                }
            }
        }
        out
    }

    pub fn add_assign_ref(&mut self, other: &RingElem) {
        let mine = core::mem::take(&mut self.terms);
        self.terms = RingElem::merge(mine, other.terms.clone());
    }

    /// `self += x * y`.
    ///
    /// Multiplying a sorted list by one fixed monomial on either side keeps
    /// it sorted, so the product is a merge of sorted runs, one per term of
    /// the shorter factor.
    pub fn add_product(&mut self, x: &RingElem, y: &RingElem) {
        if x.is_zero() || y.is_zero() {
            return;
        }
        let mut runs: Vec<Vec<(Monomial, Coeff)>> = if x.terms.len() <= y.terms.len() {
            x.terms
                .iter()
                .map(|(mx, cx)| y.terms.iter().map(|(my, cy)| (mx.concat(my), cx * cy)).collect())
                .collect()
        } else {
            y.terms
                .iter()
                .map(|(my, cy)| x.terms.iter().map(|(mx, cx)| (mx.concat(my), cx * cy)).collect())
                .collect()
        };
        runs.push(core::mem::take(&mut self.terms));
        while runs.len() > 1 {
            let mut next = Vec::with_capacity(runs.len() / 2 + 1);
            let mut it = runs.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(RingElem::merge(a, b)),
                    None => next.push(a),
                }
            }
            runs = next;
        }
        self.terms = runs.pop().unwrap_or_default();
    }

    pub fn scale(&self, k: &Coeff) -> RingElem {
        if k.is_zero() {
            return RingElem::zero();
        }
        RingElem { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// Ideal membership: every monomial matches some alternative of `ideal`.
    pub fn member(&self, ideal: &IdealPattern) -> bool {
        self.terms.iter().all(|(m, _)| ideal.matches(m))
    }

    /// Applies a ring homomorphism determined by the images of the symbols.
    pub fn eval_with<T, F, G, H, K>(&self, zero: T, mut of_symbol: F, mut of_int: K, add: G, mul: H) -> T
    where
        T: Clone,
        F: FnMut(&Symbol) -> T,
        K: FnMut(&Coeff) -> T,
        G: Fn(&T, &T) -> T,
        H: Fn(&T, &T) -> T,
    {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = of_int(c);
            for s in m.symbols() {
                t = mul(&t, &of_symbol(&s));
            }
            acc = add(&acc, &t);
        }
        acc
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        RingElem { terms: RingElem::merge(self.terms, rhs.terms) }
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self + &(-rhs)
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        &self - &rhs
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        &self * &rhs
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElem({self})")
    }
}

/// A two-sided ideal of the free ring described by sort patterns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdealPattern {
    /// The whole ring.
    Full,
    /// The zero ideal.
    Zero,
    /// Sum of the ideals `S1 S2 ... Sk`, one per alternative.
    Sum(Vec<Vec<Sort>>),
}

impl IdealPattern {
    /// Validates alternatives: at least one, each nonempty, only `A`/`B`.
    pub fn new(alternatives: Vec<Vec<Sort>>) -> Result<IdealPattern, Error> {
        if alternatives.is_empty() {
            return Err(Error::InvalidPattern("empty alternative set; use Full or Zero"));
        }
        for alt in &alternatives {
            if alt.is_empty() {
                return Err(Error::InvalidPattern("empty alternative"));
            }
            if alt.contains(&Sort::R) {
                return Err(Error::InvalidPattern("alternatives may only use sorts A and B"));
            }
        }
        Ok(IdealPattern::Sum(alternatives))
    }

    pub fn a() -> IdealPattern {
        IdealPattern::Sum(alloc::vec![alloc::vec![Sort::A]])
    }

    pub fn b() -> IdealPattern {
        IdealPattern::Sum(alloc::vec![alloc::vec![Sort::B]])
    }

    pub fn ab() -> IdealPattern {
        IdealPattern::Sum(alloc::vec![alloc::vec![Sort::A, Sort::B]])
    }

    pub fn ba() -> IdealPattern {
        IdealPattern::Sum(alloc::vec![alloc::vec![Sort::B, Sort::A]])
    }

    /// The symmetrised product `AB + BA`.
    pub fn symmetric() -> IdealPattern {
        IdealPattern::Sum(alloc::vec![alloc::vec![Sort::A, Sort::B], alloc::vec![Sort::B, Sort::A]])
    }

    /// `AB + BA + A^2`.
    pub fn symmetric_plus_a2() -> IdealPattern {
        IdealPattern::Sum(alloc::vec![
            alloc::vec![Sort::A, Sort::B],
            alloc::vec![Sort::B, Sort::A],
            alloc::vec![Sort::A, Sort::A]
        ])
    }

    /// `AB + BA + B^2`.
    pub fn symmetric_plus_b2() -> IdealPattern {
        IdealPattern::Sum(alloc::vec![
            alloc::vec![Sort::A, Sort::B],
            alloc::vec![Sort::B, Sort::A],
            alloc::vec![Sort::B, Sort::B]
        ])
    }

    pub fn matches(&self, m: &Monomial) -> bool {
        match self {
            IdealPattern::Full => true,
            IdealPattern::Zero => false,
            IdealPattern::Sum(alts) => alts.iter().any(|alt| m.contains_sorts(alt)),
        }
    }

    /// True if this ideal is contained in `other` syntactically: every
    /// alternative here has an alternative of `other` as a subsequence.
    pub fn refines(&self, other: &IdealPattern) -> bool {
        match (self, other) {
            (IdealPattern::Zero, _) | (_, IdealPattern::Full) => true,
            (IdealPattern::Full, _) | (_, IdealPattern::Zero) => false,
            (IdealPattern::Sum(mine), IdealPattern::Sum(theirs)) => mine.iter().all(|alt| {
                let m = Monomial::from_symbols(
                    alt.iter()
                        .map(|s| Symbol::new(if *s == Sort::A { "a" } else { "b" }))
                        .collect(),
                );
                theirs.iter().any(|t| m.contains_sorts(t))
            }),
        }
    }
}

impl fmt::Display for IdealPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealPattern::Full => f.write_str("R"),
            IdealPattern::Zero => f.write_str("0"),
            IdealPattern::Sum(alts) => {
                for (k, alt) in alts.iter().enumerate() {
                    if k > 0 {
                        f.write_str("+")?;
                    }
                    for s in alt {
                        f.write_str(if *s == Sort::A { "A" } else { "B" })?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for IdealPattern {
    type Err = Error;

    /// Parses `R`, `0`, or `+`-separated products of `A`/`B` such as
    /// `AB+BA+AA`. Powers may be written `A^2`.
    fn from_str(s: &str) -> Result<IdealPattern, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match s.as_str() {
            "R" => return Ok(IdealPattern::Full),
            "0" => return Ok(IdealPattern::Zero),
            _ => {}
        }
        let mut alts = Vec::new();
        for part in s.split('+') {
            let mut alt = Vec::new();
            let mut chars = part.chars().peekable();
            while let Some(c) = chars.next() {
                let sort = match c {
                    'A' => Sort::A,
                    'B' => Sort::B,
                    _ => return Err(Error::InvalidPattern("expected A or B")),
                };
                let mut times = 1;
                if chars.peek() == Some(&'^') {
                    chars.next();
                    let mut digits = String::new();
                    while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                        digits.push(*d);
                        chars.next();
                    }
                    times = digits.parse().map_err(|_| Error::InvalidPattern("bad exponent"))?;
                }
                for _ in 0..times {
                    alt.push(sort);
                }
            }
            alts.push(alt);
        }
        IdealPattern::new(alts)
    }
}
