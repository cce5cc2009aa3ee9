//! The catalogue of exact identities behind the rewriting: the commutator
//! matrix displays, the four bracket formulas, the third-type chain, the
//! two transport moves and the six elementary-commutator congruences.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::elemgroup::{
    elementary_comm_letters, eval, t, word_comm, word_conj, word_inv, GroupWord, SquareMatrix, Transvection,
};
use crate::error::Error;
use crate::freering::{IdealPattern, RingElem, Symbol};
use crate::oracle::{eval_elem, eval_word, MatCtx};
use crate::rewrite::{
    lemma3_bracket, lemma4_factors, lemma4_reduce, move_column, move_row, s3_congruence, verify_congruence, Congruence,
    S3Bullet,
};

/// One exact claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    /// The word evaluates to `expected`.
    Matrix { word: GroupWord, expected: SquareMatrix },
    /// Both words evaluate to the same matrix.
    Words { lhs: GroupWord, rhs: GroupWord },
    /// A certificate `lhs = rhs . residual`.
    Congruence(Congruence),
    /// Ideal membership of a parameter.
    Member { elem: RingElem, ideal: IdealPattern },
}

impl Check {
    pub fn holds(&self) -> bool {
        match self {
            Check::Matrix { word, expected } => &eval(word) == expected,
            Check::Words { lhs, rhs } => eval(lhs) == eval(rhs),
            Check::Congruence(c) => verify_congruence(c),
            Check::Member { elem, ideal } => elem.member(ideal),
        }
    }

    /// Image of the claim under a homomorphism into a finite ring. Member
    /// checks have no finite counterpart and count as holding.
    pub fn holds_in(&self, ctx: &MatCtx, mut assign: impl FnMut(&Symbol) -> u8) -> bool {
        match self {
            Check::Matrix { word, expected } => {
                let entries: Vec<u8> = expected.entries().iter().map(|e| eval_elem(ctx.ring(), e, &mut assign)).collect();
                eval_word(ctx, word, &mut assign) == ctx.from_entries(&entries).key()
            }
            Check::Words { lhs, rhs } => eval_word(ctx, lhs, &mut assign) == eval_word(ctx, rhs, &mut assign),
            Check::Congruence(c) => {
                let mut rhs = c.rhs.letters().to_vec();
                rhs.extend(c.residual.letters());
                let rhs = GroupWord::new(c.rhs.degree(), rhs).expect("checked degree");
                eval_word(ctx, &c.lhs, &mut assign) == eval_word(ctx, &rhs, &mut assign)
            }
            Check::Member { .. } => true,
        }
    }

    /// The same claim with one sign flipped; `None` for member checks.
    pub fn sign_flipped(&self) -> Option<Check> {
        let flip = |w: &GroupWord| {
            let mut letters = w.letters().to_vec();
            let first = letters.iter_mut().find(|l| !l.param.is_zero())?;
            first.param = -&first.param;
            GroupWord::new(w.degree(), letters).ok()
        };
        match self {
            Check::Matrix { word, expected } => {
                let n = expected.degree();
                let mut e = expected.clone();
                let (i, j) = (1..=n)
                    .flat_map(|i| (1..=n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !expected.get(i, j).is_zero())?;
                e.set(i, j, -expected.get(i, j));
                Some(Check::Matrix { word: word.clone(), expected: e })
            }
            Check::Words { lhs, rhs } => Some(Check::Words { lhs: lhs.clone(), rhs: flip(rhs)? }),
            Check::Congruence(c) => Some(Check::Congruence(Congruence { rhs: flip(&c.rhs)?, ..c.clone() })),
            Check::Member { .. } => None,
        }
    }
}

/// A named identity: all of its checks must hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Identity {
    fn new(name: &str, checks: Vec<Check>) -> Identity {
        Identity { name: name.into(), checks }
    }

    pub fn holds(&self) -> bool {
        self.checks.iter().all(Check::holds)
    }

    pub fn holds_in(&self, ctx: &MatCtx, mut assign: impl FnMut(&Symbol) -> u8) -> bool {
        self.checks.iter().all(|c| c.holds_in(ctx, &mut assign))
    }

    /// Flips a sign in the first check that allows it.
    pub fn mutated(&self) -> Identity {
        let mut out = self.clone();
        if let Some(p) = self.checks.iter().position(|c| c.sign_flipped().is_some()) {
            out.checks[p] = self.checks[p].sign_flipped().expect("flippable");
        }
        out
    }
}

fn s(name: &str) -> RingElem {
    RingElem::sym(name)
}

fn w(n: usize, letters: Vec<Transvection>) -> GroupWord {
    GroupWord::new(n, letters).expect("valid positions")
}

fn block_matrix(n: usize, block: [[RingElem; 2]; 2]) -> SquareMatrix {
    let mut m = SquareMatrix::identity(n);
    for (r, row) in block.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            m.set(r + 1, c + 1, v);
        }
    }
    m
}

/// `[t_12(a), t_21(b)]` and its inverse against their 2x2 block displays.
pub fn matrix_displays(n: usize, a: &RingElem, b: &RingElem) -> Result<Vec<Identity>, Error> {
    let z = w(n, elementary_comm_letters(1, 2, a, b).into());
    let (ab, ba) = (a * b, b * a);
    let one = RingElem::one();
    let direct = block_matrix(
        n,
        [[&(&one + &ab) + &(&ab * &ab), -(&ab * a)], [&(b * a) * b, &one - &ba]],
    );
    let inverse = block_matrix(
        n,
        [[&one - &ab, &ab * a], [-(&(b * a) * b), &(&one + &ba) + &(&ba * &ba)]],
    );
    Ok(vec![
        Identity::new("display-comm", vec![Check::Matrix { word: z.clone(), expected: direct }]),
        Identity::new("display-comm-inverse", vec![Check::Matrix { word: word_inv(&z), expected: inverse }]),
    ])
}

/// `[t_kl(c), [t_ij(a), t_ji(b)]]` for the four letters sharing one index.
pub fn bracket_formulas(n: usize, i: usize, j: usize, h: usize, a: &RingElem, b: &RingElem, c: &RingElem) -> Result<Vec<Identity>, Error> {
    let z = GroupWord::new(n, elementary_comm_letters(i, j, a, b).into())?;
    let cases = [("ih", i, h), ("jh", j, h), ("hi", h, i), ("hj", h, j)];
    let mut out = Vec::new();
    for (tag, k, l) in cases {
        let letter = t(k, l, c.clone());
        let lhs = word_comm(&GroupWord::new(n, vec![letter.clone()])?, &z)?;
        let rhs = lemma3_bracket(&letter, i, j, a, b).ok_or(Error::HypothesisViolation("letter must share one index"))?;
        let name = alloc::format!("bracket-t{tag}");
        out.push(Identity::new(&name, vec![Check::Words { lhs, rhs: GroupWord::new(n, rhs)? }]));
    }
    Ok(out)
}

/// The third-type chain: both conjugation factorizations, the sorts of
/// every factor letter, and the final certificate.
pub fn lemma4_chain(x: &GroupWord, i: usize, j: usize, a: &RingElem, b: &RingElem, c: &RingElem) -> Result<Identity, Error> {
    let n = x.degree();
    let f = lemma4_factors(n, i, j, a, b, c)?;
    let zbc = GroupWord::new(n, crate::elemgroup::z_letters(i, j, b, c).into())?;
    let conj = |l: Transvection| word_conj(&zbc, &w(n, vec![l]));
    let mut tu = vec![t(i, f.h, RingElem::one())];
    tu.extend(f.u.iter().cloned());
    let mut tv = vec![t(f.h, j, -a)];
    tv.extend(f.v.iter().cloned());
    let mut checks = vec![
        Check::Words { lhs: conj(t(i, f.h, RingElem::one()))?, rhs: w(n, tu) },
        Check::Words { lhs: conj(t(f.h, j, -a))?, rhs: w(n, tv) },
    ];
    checks.extend(f.u.iter().map(|l| Check::Member { elem: l.param.clone(), ideal: IdealPattern::b() }));
    checks.extend(f.v.iter().map(|l| Check::Member { elem: l.param.clone(), ideal: IdealPattern::ab() }));
    let out = lemma4_reduce(x, i, j, a, b, c)?;
    checks.push(Check::Member { elem: out.gen.2.clone(), ideal: IdealPattern::a() });
    checks.push(Check::Member { elem: out.gen.3.clone(), ideal: IdealPattern::b() });
    checks.push(Check::Congruence(out.congruence()));
    Ok(Identity::new("lemma4-chain", checks))
}

/// Every identity of the catalogue at degree `n`, on generic symbols.
pub fn identity_suite(n: usize) -> Result<Vec<Identity>, Error> {
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    let (a, b, c) = (s("a"), s("b"), s("c"));
    let (a2, b2) = (s("a2"), s("b2"));
    let mut out = matrix_displays(n, &a, &b)?;
    out.extend(bracket_formulas(n, 1, 2, n, &a, &b, &c)?);
    out.push(lemma4_chain(&w(n, vec![t(2, 3, s("d"))]), 1, 2, &a, &b, &c)?);
    out.push(Identity::new("move-column", vec![Check::Congruence(move_column(n, 1, 2, 3, &a, &RingElem::one(), &b)?)]));
    out.push(Identity::new("move-row", vec![Check::Congruence(move_row(n, 1, 2, 3, &a, &b)?)]));
    let bullets: Vec<Vec<S3Bullet>> = vec![
        vec![S3Bullet::Shift { i: 1, j: 2, a: a.clone(), c: c.clone(), b: b.clone() }],
        vec![S3Bullet::AddFirst { i: 1, j: 2, a1: a.clone(), a2: a2.clone(), b: b.clone() }],
        vec![S3Bullet::AddSecond { i: 1, j: 2, a: a.clone(), b1: b.clone(), b2: b2.clone() }],
        vec![
            S3Bullet::InverseFirst { i: 1, j: 2, a: a.clone(), b: b.clone() },
            S3Bullet::InverseSecond { i: 1, j: 2, a: a.clone(), b: b.clone() },
        ],
        vec![S3Bullet::CongruentFirst {
            i: 1,
            j: 2,
            a1: &a + &(&RingElem::word(&["a", "c", "a2"]) + &RingElem::word(&["b", "a"])),
            a2: a.clone(),
            b: b.clone(),
        }],
        vec![S3Bullet::CongruentSecond {
            i: 1,
            j: 2,
            a: a.clone(),
            b1: &b + &(&RingElem::word(&["b2", "c", "b"]) - &RingElem::word(&["a", "b"])),
            b2: b.clone(),
        }],
    ];
    for (k, group) in bullets.iter().enumerate() {
        let checks = group.iter().map(|bl| s3_congruence(n, bl).map(Check::Congruence)).collect::<Result<_, _>>()?;
        out.push(Identity::new(&alloc::format!("bullet-{}", k + 1), checks));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_holds_and_is_complete() {
        for n in [3, 4] {
            let suite = identity_suite(n).unwrap();
            assert_eq!(suite.len(), 15);
            for id in &suite {
                assert!(id.holds(), "{} n={n}", id.name);
            }
        }
    }

    #[test]
    fn every_mutation_is_caught() {
        for id in identity_suite(3).unwrap() {
            let m = id.mutated();
            assert_ne!(m, id, "{}", id.name);
            assert!(!m.holds(), "{} survived a sign flip", id.name);
        }
    }

    #[test]
    fn lemma4_member_checks_catch_wrong_sorts() {
        let x = w(3, vec![]);
        // A `b` outside B is refused.
        assert!(lemma4_chain(&x, 1, 2, &s("a"), &s("c"), &s("c")).is_err());
        let id = lemma4_chain(&x, 1, 3, &s("a"), &s("b"), &s("c")).unwrap();
        assert!(id.holds());
    }

    #[test]
    fn finite_image_of_displays() {
        let r = crate::oracle::FiniteRing::builtin("zmod:8").unwrap();
        let ctx = MatCtx::new(&r, 3).unwrap();
        for id in matrix_displays(3, &s("a"), &s("b")).unwrap() {
            for (va, vb) in [(2u8, 6u8), (4, 2), (0, 7)] {
                assert!(id.holds_in(&ctx, |sym| if sym.name() == "a" { va } else { vb }));
                assert!(!id.mutated().holds_in(&ctx, |_| 1));
            }
        }
    }
}
