//! Conjugating relative generators by single transvections.
//!
//! `z_ij(p, c)` equals `e + u p v` with column `u = e_i + c e_j` and row
//! `v = e_j - c e_i`, where `v u = 0`. Conjugating by `t_kl(d)` replaces
//! `u` by `t_kl(d) u` and `v` by `v t_kl(-d)`; every case below is that
//! rank-one update refactored into generators of the same level.

use alloc::vec;
use alloc::vec::Vec;

use crate::elemgroup::{Transvection, ZGenRecord};
use crate::freering::RingElem;

/// Smallest index in `1..=n` different from `i` and `j`.
pub(crate) fn aux_index(n: usize, i: usize, j: usize) -> usize {
    (1..=n).find(|&h| h != i && h != j).expect("degree at least 3")
}

fn plain_like(rec: &ZGenRecord, i: usize, j: usize, p: RingElem) -> ZGenRecord {
    ZGenRecord::plain(i, j, p, rec.level.clone())
}

/// `^{t_kl(d)} z_ij(p, c)` as a product of generators at the level of `rec`.
pub(crate) fn conj_record(n: usize, letter: &Transvection, rec: &ZGenRecord) -> Vec<ZGenRecord> {
    let (k, l, d) = (letter.i, letter.j, &letter.param);
    let (i, j, p, c) = (rec.i, rec.j, &rec.p, &rec.c);
    if p.is_zero() {
        return Vec::new();
    }
    if d.is_zero() {
        return vec![rec.clone()];
    }
    let mut out = if (k, l) == (j, i) {
        vec![ZGenRecord { c: c + d, ..rec.clone() }]
    } else if (k, l) == (i, j) {
        if c.is_zero() {
            vec![rec.clone()]
        } else {
            conj_same_position(n, rec, d)
        }
    } else if k == i && l != j {
        let h = l;
        let pcd = &(p * c) * d;
        let cpcd = c * &pcd;
        vec![rec.clone(), plain_like(rec, i, h, pcd), plain_like(rec, j, h, cpcd)]
    } else if k == j && l != i {
        let h = l;
        let pd = p * d;
        let cpd = c * &pd;
        vec![rec.clone(), plain_like(rec, i, h, -pd), plain_like(rec, j, h, -cpd)]
    } else if l == i && k != j {
        let h = k;
        let dp = d * p;
        let dpc = &dp * c;
        vec![plain_like(rec, h, i, -dpc), plain_like(rec, h, j, dp), rec.clone()]
    } else if l == j && k != i {
        let h = k;
        let dcp = &(d * c) * p;
        let dcpc = &dcp * c;
        vec![plain_like(rec, h, i, -dcpc), plain_like(rec, h, j, dcp), rec.clone()]
    } else {
        vec![rec.clone()]
    };
    out.retain(|r| !r.is_trivial());
    out
}

/// `^{t_ij(d)} z_ij(p, c)` for `c != 0`.
///
/// The conjugate is `e + u' p v'` with `u' = (1 + dc) e_i + c e_j` and
/// `v' = -c e_i + (1 + cd) e_j`. For `h` outside `{i, j}` it equals the
/// commutator `[T, S]` of `T = e + u' p e_h^T` (level `p`) and
/// `S = e + e_h v'`, and `[T, S] = T . ^S(T^{-1})`.
fn conj_same_position(n: usize, rec: &ZGenRecord, d: &RingElem) -> Vec<ZGenRecord> {
    let (i, j, p, c) = (rec.i, rec.j, &rec.p, &rec.c);
    let h = aux_index(n, i, j);
    let one = RingElem::one();
    let t_first = vec![
        plain_like(rec, i, h, &(&one + &(d * c)) * p),
        plain_like(rec, j, h, c * p),
    ];
    let s_letters = [
        Transvection::new(h, i, -c),
        Transvection::new(h, j, &one + &(c * d)),
    ];
    let t_inv: Vec<ZGenRecord> = t_first.iter().rev().map(ZGenRecord::inverse).collect();
    let mut out = t_first;
    out.extend(conj_records(n, &s_letters, &t_inv));
    out
}

/// Same as [`conj_record`], bracketed so that every subtree is a conjugate
/// of a single generator.
pub(crate) fn conj_record_tree(n: usize, letter: &Transvection, rec: &ZGenRecord) -> super::Res {
    use super::Res;
    let (k, l) = (letter.i, letter.j);
    if (k, l) == (rec.i, rec.j) && !rec.c.is_zero() && !rec.p.is_zero() && !letter.param.is_zero() {
        let (i, j, p, c, d) = (rec.i, rec.j, &rec.p, &rec.c, &letter.param);
        let h = aux_index(n, i, j);
        let one = RingElem::one();
        let t_first = vec![plain_like(rec, i, h, &(&one + &(d * c)) * p), plain_like(rec, j, h, c * p)];
        let s_letters = [Transvection::new(h, i, -c), Transvection::new(h, j, &one + &(c * d))];
        let t_inv: Vec<ZGenRecord> = t_first.iter().rev().map(ZGenRecord::inverse).collect();
        return Res::records(t_first).then(Res::records(t_inv).conj(n, &s_letters));
    }
    Res::records(conj_record(n, letter, rec))
}

/// `^{w} r_1 ... r_m` for a word `w` given by its letters.
pub(crate) fn conj_records(n: usize, letters: &[Transvection], recs: &[ZGenRecord]) -> Vec<ZGenRecord> {
    let mut cur: Vec<ZGenRecord> = recs.to_vec();
    for letter in letters.iter().rev() {
        if letter.param.is_zero() {
            continue;
        }
        cur = cur.iter().flat_map(|r| conj_record(n, letter, r)).collect();
    }
    cur
}

/// A 2x2 block acting on the coordinates `(k, l)`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Block {
    pub(crate) m: [[RingElem; 2]; 2],
}

impl Block {
    pub(crate) fn identity() -> Block {
        Block { m: [[RingElem::one(), RingElem::zero()], [RingElem::zero(), RingElem::one()]] }
    }

    fn upper(a: &RingElem) -> Block {
        let mut b = Block::identity();
        b.m[0][1] = a.clone();
        b
    }

    fn lower(a: &RingElem) -> Block {
        let mut b = Block::identity();
        b.m[1][0] = a.clone();
        b
    }

    /// `[t_kl(a), t_lk(b)]` restricted to the `(k, l)` coordinates.
    pub(crate) fn comm(a: &RingElem, b: &RingElem) -> Block {
        Block::upper(a).mul(&Block::lower(b)).mul(&Block::upper(&-a)).mul(&Block::lower(&-b))
    }

    pub(crate) fn comm_inverse(a: &RingElem, b: &RingElem) -> Block {
        Block::lower(b).mul(&Block::upper(a)).mul(&Block::lower(&-b)).mul(&Block::upper(&-a))
    }

    pub(crate) fn mul(&self, o: &Block) -> Block {
        let e = |r: usize, c: usize| &(&self.m[r][0] * &o.m[0][c]) + &(&self.m[r][1] * &o.m[1][c]);
        Block { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

/// Conjugation by a matrix that is the identity outside the `(k, l)` block.
///
/// `left` is its block and `right` the block of its inverse, so
/// `t_st(d)` goes to `e + (left e_s) d (e_t^T right)`.
pub(crate) struct BlockConj<'a> {
    pub(crate) n: usize,
    pub(crate) k: usize,
    pub(crate) l: usize,
    pub(crate) left: &'a Block,
    pub(crate) right: &'a Block,
}

impl BlockConj<'_> {
    fn slot(&self, s: usize) -> Option<usize> {
        if s == self.k {
            Some(0)
        } else if s == self.l {
            Some(1)
        } else {
            None
        }
    }

    fn idx(&self, q: usize) -> usize {
        if q == 0 {
            self.k
        } else {
            self.l
        }
    }

    /// Image of `t_st(d)` when exactly one of `s, t` lies in the block, as
    /// two commuting transvections.
    fn image_letter(&self, s: usize, t: usize, d: &RingElem) -> [Transvection; 2] {
        match (self.slot(s), self.slot(t)) {
            (Some(q), None) => [0, 1].map(|r| Transvection::new(self.idx(r), t, &self.left.m[r][q] * d)),
            (None, Some(q)) => [0, 1].map(|r| Transvection::new(s, self.idx(r), d * &self.right.m[q][r])),
            _ => unreachable!("exactly one index in the block"),
        }
    }

    /// Cheap upper bound on the number of terms in the parameters of the
    /// image of `rec`, computed without building it.
    pub(crate) fn image_bound(&self, rec: &ZGenRecord) -> usize {
        let (s, t) = (rec.i, rec.j);
        let (p, c) = (rec.p.num_terms(), 1 + rec.c.num_terms());
        if self.slot(s).is_none() && self.slot(t).is_none() {
            return p + c;
        }
        let widest = |b: &Block| b.m.iter().flatten().map(RingElem::num_terms).max().unwrap_or(0);
        let u = 2 * widest(self.left) * c;
        let v = 2 * widest(self.right) * c;
        u.saturating_mul(v).saturating_mul(u.max(v)).saturating_mul(p)
    }

    pub(crate) fn record(&self, rec: &ZGenRecord) -> super::Res {
        use super::Res;
        let (s, t, p, c) = (rec.i, rec.j, &rec.p, &rec.c);
        match (self.slot(s), self.slot(t)) {
            (None, None) => Res::Rec(rec.clone()),
            (Some(qs), Some(qt)) => {
                // e + u p v with u, v supported on the block equals [T, S],
                // T = e + u p e_h^T and S = e + e_h v.
                let h = aux_index(self.n, self.k, self.l);
                let u: [RingElem; 2] = [0, 1].map(|r| &self.left.m[r][qs] + &(&self.left.m[r][qt] * c));
                let v: [RingElem; 2] = [0, 1].map(|r| &self.right.m[qt][r] - &(c * &self.right.m[qs][r]));
                let t_first: Vec<ZGenRecord> =
                    [0, 1].iter().map(|&r| plain_like(rec, self.idx(r), h, &u[r] * p)).collect();
                let s_letters: Vec<Transvection> =
                    [0, 1].iter().map(|&r| Transvection::new(h, self.idx(r), v[r].clone())).collect();
                let t_inv: Vec<ZGenRecord> = t_first.iter().rev().map(ZGenRecord::inverse).collect();
                Res::records(t_first).then(Res::records(t_inv).conj(self.n, &s_letters))
            }
            _ => {
                let z: Vec<ZGenRecord> = self
                    .image_letter(s, t, p)
                    .into_iter()
                    .map(|l| plain_like(rec, l.i, l.j, l.param))
                    .collect();
                let y = if c.is_zero() { Vec::new() } else { self.image_letter(t, s, c).to_vec() };
                Res::records(z).conj(self.n, &y)
            }
        }
    }
}
