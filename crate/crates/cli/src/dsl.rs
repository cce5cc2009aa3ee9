//! The word language.
//!
//! ```text
//! word := term (whitespace term)*
//! term := t[i,j](expr) | z[i,j](expr, expr) | comm(word, word)
//!       | conj(word, word) | inv(word)
//! expr := integer polynomial in identifiers with + - * and parentheses
//! ```
//!
//! Generator lists for `decompose` hold one generator per line (or
//! separated by `;`), optionally conjugated:
//!
//! ```text
//! gen  := z1ab[i,j](a, b, c) | z1ba[i,j](a, b, c) | c2[i,j](a, b)
//!       | c3[i,j](a, b, c) | conj(word, gen)
//! ```

use std::fmt;

use relcomm_core::elemgroup::{t, word_comm, word_conj, word_inv, z_gen, GroupWord};
use relcomm_core::rewrite::{GeneratorTerm, TermKind};
use relcomm_core::{RingElem, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
    n: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'s> Parser<'s> {
    fn new(src: &'s str, n: usize) -> Parser<'s> {
        Parser { src: src.as_bytes(), pos: 0, n }
    }

    fn error_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.iter().filter(|&&c| c == b'\n').count() + 1;
        let start = before.iter().rposition(|&c| c == b'\n').map_or(0, |p| p + 1);
        let col = String::from_utf8_lossy(&before[start..]).chars().count() + 1;
        ParseError { line, col, msg: msg.into() }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        self.error_at(self.pos, msg)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    /// Skips spaces and tabs; newlines too when `newlines` is set.
    fn skip_ws(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            if c == b' ' || c == b'\t' || c == b'\r' || (newlines && c == b'\n') {
                self.pos += 1;
            } else if c == b'#' {
                while self.peek().is_some_and(|c| c != b'\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws(true);
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{tok}`")))
        }
    }

    fn ident(&mut self) -> Option<(usize, &'s str)> {
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == b'_') {
            return None;
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        Some((start, std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")))
    }

    fn index(&mut self) -> PResult<(usize, usize)> {
        self.skip_ws(true);
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let v = text.parse().map_err(|_| self.error_at(start, "expected an index"))?;
        Ok((start, v))
    }

    /// `[i,j]` with `1 <= i, j <= n` and `i != j`.
    fn position(&mut self) -> PResult<(usize, usize)> {
        self.expect("[")?;
        let (pi, i) = self.index()?;
        self.expect(",")?;
        let (pj, j) = self.index()?;
        self.expect("]")?;
        for (p, v) in [(pi, i), (pj, j)] {
            if v == 0 || v > self.n {
                return Err(self.error_at(p, format!("index {v} out of range 1..={}", self.n)));
            }
        }
        if i == j {
            return Err(self.error_at(pi, format!("row and column index coincide: ({i},{j})")));
        }
        Ok((i, j))
    }

    fn expr(&mut self) -> PResult<RingElem> {
        self.skip_ws(true);
        let mut acc = if self.eat("-") { -self.product()? } else { self.product()? };
        loop {
            if self.eat("+") {
                acc = &acc + &self.product()?;
            } else if self.eat("-") {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> PResult<RingElem> {
        let mut acc = self.factor()?;
        while self.eat("*") {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<RingElem> {
        self.skip_ws(true);
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("-") {
            return Ok(-self.factor()?);
        }
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let v: num_bigint::BigInt = digits.parse().expect("digits");
            return Ok(RingElem::from_coeff(v.into()));
        }
        match self.ident() {
            Some((start, name)) => match Symbol::try_new(name) {
                Some(_) => Ok(RingElem::sym(name)),
                None => Err(self.error_at(start, format!("identifier `{name}` is longer than {} bytes", Symbol::MAX_LEN))),
            },
            None => Err(self.error("expected a number, identifier or `(`")),
        }
    }

    fn word(&mut self) -> PResult<GroupWord> {
        let mut w = GroupWord::identity(self.n).expect("degree");
        loop {
            self.skip_ws(true);
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() => {}
                _ => return Ok(w),
            }
            let term = self.word_term()?;
            w = w.concat(&term).expect("same degree");
        }
    }

    fn word_term(&mut self) -> PResult<GroupWord> {
        let start = self.pos;
        let Some((_, name)) = self.ident() else {
            return Err(self.error("expected a word term"));
        };
        let n = self.n;
        match name {
            "t" => {
                let (i, j) = self.position()?;
                self.expect("(")?;
                let p = self.expr()?;
                self.expect(")")?;
                Ok(GroupWord::new(n, vec![t(i, j, p)]).expect("checked"))
            }
            "z" => {
                let (i, j) = self.position()?;
                self.expect("(")?;
                let p = self.expr()?;
                self.expect(",")?;
                let c = self.expr()?;
                self.expect(")")?;
                Ok(z_gen(n, i, j, p, c).expect("checked"))
            }
            "comm" | "conj" => {
                self.expect("(")?;
                let x = self.word()?;
                self.expect(",")?;
                let y = self.word()?;
                self.expect(")")?;
                Ok(if name == "comm" { word_comm(&x, &y) } else { word_conj(&x, &y) }.expect("same degree"))
            }
            "inv" => {
                self.expect("(")?;
                let x = self.word()?;
                self.expect(")")?;
                Ok(word_inv(&x))
            }
            _ => Err(self.error_at(start, format!("unknown term `{name}`"))),
        }
    }

    fn generator(&mut self) -> PResult<GeneratorTerm> {
        self.skip_ws(true);
        let start = self.pos;
        let Some((_, name)) = self.ident() else {
            return Err(self.error("expected a generator"));
        };
        if name == "conj" {
            self.expect("(")?;
            let x = self.word()?;
            self.expect(",")?;
            let inner = self.generator()?;
            self.expect(")")?;
            let x = x.concat(&inner.x).expect("same degree");
            return Ok(GeneratorTerm::new(x, inner.kind));
        }
        let arity = match name {
            "z1ab" | "z1ba" | "c3" => 3,
            "c2" => 2,
            _ => return Err(self.error_at(start, format!("unknown generator `{name}`"))),
        };
        let (i, j) = self.position()?;
        self.expect("(")?;
        let mut params = Vec::with_capacity(arity);
        for k in 0..arity {
            if k > 0 {
                self.expect(",")?;
            }
            params.push(self.expr()?);
        }
        self.expect(")")?;
        let mut it = params.into_iter();
        let (a, b) = (it.next().expect("arity"), it.next().expect("arity"));
        let kind = match name {
            "z1ab" => TermKind::Z1ab { i, j, a, b, c: it.next().expect("arity") },
            "z1ba" => TermKind::Z1ba { i, j, a, b, c: it.next().expect("arity") },
            "c2" => TermKind::C2 { i, j, a, b },
            _ => TermKind::C3 { i, j, a, b, c: it.next().expect("arity") },
        };
        Ok(GeneratorTerm::new(GroupWord::identity(self.n).expect("degree"), kind))
    }

    fn end(&mut self) -> PResult<()> {
        self.skip_ws(true);
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
        }
    }
}

fn check_degree(n: usize) -> PResult<()> {
    if n < 2 {
        return Err(ParseError { line: 1, col: 1, msg: format!("degree {n} is too small") });
    }
    Ok(())
}

/// Parses a word; whitespace, newlines and `#` comments separate terms.
pub fn parse_word(text: &str, n: usize) -> PResult<GroupWord> {
    check_degree(n)?;
    let mut p = Parser::new(text, n);
    let mut w = GroupWord::identity(n).expect("degree");
    loop {
        p.skip_ws(true);
        if p.peek().is_none() {
            return Ok(w);
        }
        let start = p.pos;
        let next = p.word()?;
        if p.pos == start {
            p.end()?;
        }
        w = w.concat(&next).expect("same degree");
    }
}

/// Parses a single ring element.
pub fn parse_expr(text: &str) -> PResult<RingElem> {
    let mut p = Parser::new(text, 0);
    let e = p.expr()?;
    p.end()?;
    Ok(e)
}

/// Parses a generator list separated by newlines or `;`.
pub fn parse_terms(text: &str, n: usize) -> PResult<Vec<GeneratorTerm>> {
    check_degree(n)?;
    let mut p = Parser::new(text, n);
    let mut out = Vec::new();
    loop {
        p.skip_ws(true);
        while p.eat(";") {}
        p.skip_ws(true);
        if p.peek().is_none() {
            return Ok(out);
        }
        out.push(p.generator()?);
        p.skip_ws(false);
        match p.peek() {
            None | Some(b'\n') | Some(b';') => {}
            Some(c) => return Err(p.error(format!("unexpected `{}` after generator", c as char))),
        }
    }
}

/// Prints a word in the syntax [`parse_word`] reads back.
pub fn print_word(w: &GroupWord) -> String {
    w.to_string()
}

/// A generator in the syntax [`parse_terms`] reads back.
pub struct TermDisplay<'a>(pub &'a GeneratorTerm);

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = self.0;
        if !term.x.is_empty() {
            write!(f, "conj({}, ", term.x)?;
        }
        match &term.kind {
            TermKind::Z1ab { i, j, a, b, c } => write!(f, "z1ab[{i},{j}]({a}, {b}, {c})")?,
            TermKind::Z1ba { i, j, a, b, c } => write!(f, "z1ba[{i},{j}]({a}, {b}, {c})")?,
            TermKind::C2 { i, j, a, b } => write!(f, "c2[{i},{j}]({a}, {b})")?,
            TermKind::C3 { i, j, a, b, c } => write!(f, "c3[{i},{j}]({a}, {b}, {c})")?,
        }
        if !term.x.is_empty() {
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub fn print_terms(terms: &[GeneratorTerm]) -> String {
    terms.iter().map(|t| format!("{}\n", TermDisplay(t))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use relcomm_core::elemgroup::elementary_comm_letters;

    fn s(x: &str) -> RingElem {
        RingElem::sym(x)
    }

    #[test]
    fn single_transvection() {
        let w = parse_word("t[1,2](a1)", 3).unwrap();
        assert_eq!(w.letters(), &[t(1, 2, s("a1"))]);
    }

    #[test]
    fn commutator_desugars() {
        let w = parse_word("comm(t[1,2](a1), t[2,1](b1))", 3).unwrap();
        assert_eq!(w.letters(), &elementary_comm_letters(1, 2, &s("a1"), &s("b1")));
    }

    #[test]
    fn expressions() {
        let w = parse_word("t[1,3](-(a + 2*b)*c - 3) z[2,1](a*b, c)", 3).unwrap();
        let p = &(&(-(&s("a") + &(&RingElem::int(2) * &s("b")))) * &s("c")) - &RingElem::int(3);
        assert_eq!(w.letters()[0].param, p);
        assert_eq!(w.len(), 4);
        let big = parse_word("t[1,2](123456789012345678901234567890)", 3).unwrap();
        assert_eq!(big.letters()[0].param.to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn conj_and_inv() {
        let w = parse_word("conj(t[1,2](c), inv(t[2,3](a) t[3,1](b)))", 3).unwrap();
        let shown = print_word(&w);
        assert_eq!(shown, "t[1,2](c) t[3,1](-b) t[2,3](-a) t[1,2](-c)");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_word("t[1,1](a1)", 3).unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
        let e = parse_word("t[1,2](a)\n  t[4,1](b)", 3).unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        assert!(e.msg.contains("out of range"));
        let e = parse_word("t[1,2](a +)", 3).unwrap_err();
        assert_eq!((e.line, e.col), (1, 11));
        let e = parse_word("t[1,2](abcdefghijklmnopq)", 3).unwrap_err();
        assert!(e.msg.contains("longer than 16"));
        assert!(parse_word("q[1,2](a)", 3).is_err());
        assert!(parse_word("t[1,2](a) )", 3).is_err());
        assert!(parse_word("t[1,2](a", 3).is_err());
    }

    #[test]
    fn empty_and_comments() {
        assert!(parse_word("", 3).unwrap().is_empty());
        let w = parse_word("# nothing\nt[1,2](a) # tail\n", 3).unwrap();
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn generator_lists() {
        let text = "c2[1,2](a1, b1)\nconj(t[2,3](c), c3[1,3](a, b, c)); z1ba[2,1](a2, b2, 1)\n\n";
        let terms = parse_terms(text, 3).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[1].x.letters(), &[t(2, 3, s("c"))]);
        assert_eq!(parse_terms(&print_terms(&terms), 3).unwrap(), terms);
        assert!(parse_terms("", 3).unwrap().is_empty());
        let e = parse_terms("c2[1,2](a1, b1) c2[1,2](a1, b1)", 3).unwrap_err();
        assert_eq!(e.col, 17);
        assert!(parse_terms("c4[1,2](a, b)", 3).is_err());
    }

    mod round_trip {
        use super::*;
        use proptest::prelude::*;

        fn elem() -> impl Strategy<Value = RingElem> {
            let mono = (-3i64..=3, prop::collection::vec(prop::sample::select(vec!["a", "a2", "b", "c", "xy"]), 0..3));
            prop::collection::vec(mono, 0..4).prop_map(|ms| {
                ms.into_iter().fold(RingElem::zero(), |acc, (k, w)| &acc + &(&RingElem::int(k) * &RingElem::word(&w)))
            })
        }

        fn pos() -> impl Strategy<Value = (usize, usize)> {
            (1usize..=4, 1usize..=3).prop_map(|(i, d)| (i, (i + d - 1) % 4 + 1))
        }

        fn word() -> impl Strategy<Value = GroupWord> {
            prop::collection::vec((pos(), elem()), 0..4)
                .prop_map(|ls| GroupWord::new(4, ls.into_iter().map(|((i, j), p)| t(i, j, p)).collect()).unwrap())
        }

        proptest! {
            #[test]
            fn expressions(e in elem()) {
                prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
            }

            #[test]
            fn words(w in word()) {
                prop_assert_eq!(parse_word(&print_word(&w), 4).unwrap(), w);
            }

            #[test]
            fn generator_lists(
                gens in prop::collection::vec((word(), pos(), elem(), elem(), elem(), 0u8..4), 0..4),
            ) {
                let terms: Vec<GeneratorTerm> = gens
                    .into_iter()
                    .map(|(x, (i, j), a, b, c, k)| {
                        let kind = match k {
                            0 => TermKind::Z1ab { i, j, a, b, c },
                            1 => TermKind::Z1ba { i, j, a, b, c },
                            2 => TermKind::C2 { i, j, a, b },
                            _ => TermKind::C3 { i, j, a, b, c },
                        };
                        GeneratorTerm::new(x, kind)
                    })
                    .collect();
                prop_assert_eq!(parse_terms(&print_terms(&terms), 4).unwrap(), terms);
            }
        }
    }
}
