//! JSON documents written by `decompose`.

use relcomm_core::elemgroup::{elementary_comm_letters, eval_letters, matrix_level, GroupWord};
use relcomm_core::rewrite::{input_matrix, Decomposition, GeneratorTerm};
use relcomm_core::IdealPattern;
use serde::{Deserialize, Serialize};

use crate::dsl::{parse_expr, parse_terms, parse_word, TermDisplay};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecondType {
    pub a: String,
    pub b: String,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    /// `z[i,j](p, c)` in the word syntax.
    pub word: String,
    pub p: String,
    pub c: String,
    /// `p` lies in `AB+BA`.
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    pub before: String,
    pub after: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// Product of the input equals second-type generators times residual.
    pub eval_equal: bool,
    pub residual_members: bool,
    pub residual_level: bool,
    pub steps_hold: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub n: usize,
    pub pair: [usize; 2],
    pub input: Vec<String>,
    pub second_type: Vec<SecondType>,
    pub residual: Vec<ResidualEntry>,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

impl Trace {
    pub fn new(terms: &[GeneratorTerm], d: &Decomposition) -> Trace {
        let (k, l) = d.pair;
        let sym = IdealPattern::symmetric();
        let second_type = d
            .second_type
            .iter()
            .map(|(a, b)| SecondType {
                a: a.to_string(),
                b: b.to_string(),
                word: GroupWord::new(d.n, elementary_comm_letters(k, l, a, b).into()).expect("pair").to_string(),
            })
            .collect();
        let residual = d
            .residual
            .records
            .iter()
            .map(|r| ResidualEntry { word: r.to_string(), p: r.p.to_string(), c: r.c.to_string(), member: r.p.member(&sym) })
            .collect();
        let steps: Vec<Step> = d
            .trace
            .iter()
            .map(|s| Step { rule: s.rule.name(), before: s.before.to_string(), after: s.after.to_string(), holds: s.holds() })
            .collect();
        let eval_equal = input_matrix(d.n, terms) == d.output_matrix();
        let residual_members = d.residual.is_level_sound() && d.residual.records.iter().all(|r| r.p.member(&sym));
        let residual_level = matrix_level(&d.residual.eval(d.n), &sym);
        let steps_hold = steps.iter().all(|s| s.holds);
        let pass = eval_equal && residual_members && residual_level && steps_hold && d.is_well_formed();
        Trace {
            n: d.n,
            pair: [k, l],
            input: terms.iter().map(|t| TermDisplay(t).to_string()).collect(),
            second_type,
            residual,
            steps,
            verdict: Verdict { eval_equal, residual_members, residual_level, steps_hold, pass },
        }
    }

    /// Recomputes the verdict from the words stored in the document alone.
    pub fn recheck(&self) -> Result<Verdict, crate::dsl::ParseError> {
        let n = self.n;
        let terms = parse_terms(&self.input.join("\n"), n)?;
        let sym = IdealPattern::symmetric();
        let mut out = Vec::new();
        let (k, l) = (self.pair[0], self.pair[1]);
        let mut second_ok = true;
        for s in &self.second_type {
            let (a, b) = (parse_expr(&s.a)?, parse_expr(&s.b)?);
            let w = parse_word(&s.word, n)?;
            second_ok &= a.member(&IdealPattern::a())
                && b.member(&IdealPattern::b())
                && w.letters() == elementary_comm_letters(k, l, &a, &b);
            out.extend(w.into_letters());
        }
        let mut res = Vec::new();
        let mut residual_members = true;
        for r in &self.residual {
            res.extend(parse_word(&r.word, n)?.into_letters());
            residual_members &= parse_expr(&r.p)?.member(&sym);
        }
        let res_matrix = eval_letters(n, &res);
        out.extend(res);
        let eval_equal = second_ok && input_matrix(n, &terms) == eval_letters(n, &out);
        let mut steps_hold = true;
        for s in &self.steps {
            let before = parse_word(&s.before, n)?;
            let after = parse_word(&s.after, n)?;
            steps_hold &= eval_letters(n, before.letters()) == eval_letters(n, after.letters());
        }
        let residual_level = matrix_level(&res_matrix, &sym);
        let pass = eval_equal && residual_members && residual_level && steps_hold;
        Ok(Verdict { eval_equal, residual_members, residual_level, steps_hold, pass })
    }
}
