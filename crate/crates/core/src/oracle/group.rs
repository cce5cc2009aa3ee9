//! Matrices over a finite ring, packed into `u64` keys, and subgroup
//! closures by breadth-first multiplication.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use super::ring::FiniteRing;
use crate::error::Error;

/// Default element cap for closures.
pub const DEFAULT_CAP: usize = 20_000_000;

const MAX_N: usize = 4;

/// A square matrix over a [`FiniteRing`], entries stored as element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinMatrix {
    n: usize,
    entries: Vec<u8>,
    key: u64,
}

impl FinMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn key(&self) -> u64 {
        self.key
    }
}

/// Fixes the ring and degree; converts between matrices and packed keys.
#[derive(Clone, Debug)]
pub struct MatCtx<'r> {
    ring: &'r FiniteRing,
    n: usize,
    bits: u32,
    mask: u64,
    identity: u64,
}

type Entries = [u8; MAX_N * MAX_N];

impl<'r> MatCtx<'r> {
    /// Needs `n * n * ceil(log2 k)` to fit in 64 bits.
    pub fn new(ring: &'r FiniteRing, n: usize) -> Result<MatCtx<'r>, Error> {
        let bits = (usize::BITS - (ring.size() - 1).leading_zeros()).max(1);
        if !(2..=MAX_N).contains(&n) || n * n * bits as usize > 64 {
            return Err(Error::InvalidRing(alloc::format!(
                "degree {n} over a ring of order {} does not fit a 64-bit key",
                ring.size()
            )));
        }
        let mut ctx = MatCtx { ring, n, bits, mask: (1u64 << bits) - 1, identity: 0 };
        let mut e = [ring.zero(); MAX_N * MAX_N];
        for i in 0..n {
            e[i * n + i] = ring.one();
        }
        ctx.identity = ctx.pack(&e);
        Ok(ctx)
    }

    pub fn ring(&self) -> &'r FiniteRing {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> u64 {
        self.identity
    }

    #[inline]
    fn pack(&self, e: &Entries) -> u64 {
        let mut key = 0u64;
        for &x in e[..self.n * self.n].iter().rev() {
            key = (key << self.bits) | x as u64;
        }
        key
    }

    #[inline]
    fn unpack(&self, mut key: u64) -> Entries {
        let mut e = [0u8; MAX_N * MAX_N];
        for x in e[..self.n * self.n].iter_mut() {
            *x = (key & self.mask) as u8;
            key >>= self.bits;
        }
        e
    }

    /// Product of two packed matrices.
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        let (a, b) = (self.unpack(x), self.unpack(y));
        let (n, r) = (self.n, self.ring);
        let mut c = [0u8; MAX_N * MAX_N];
        for i in 0..n {
            for j in 0..n {
                let mut s = r.zero();
                for k in 0..n {
                    s = r.add(s, r.mul(a[i * n + k], b[k * n + j]));
                }
                c[i * n + j] = s;
            }
        }
        self.pack(&c)
    }

    pub fn matrix(&self, key: u64) -> FinMatrix {
        FinMatrix { n: self.n, entries: self.unpack(key)[..self.n * self.n].to_vec(), key }
    }

    pub fn from_entries(&self, entries: &[u8]) -> FinMatrix {
        assert_eq!(entries.len(), self.n * self.n);
        let mut e = [0u8; MAX_N * MAX_N];
        e[..entries.len()].copy_from_slice(entries);
        self.matrix(self.pack(&e))
    }

    /// `t_ij(a)` with 1-based indices.
    pub fn transvection(&self, i: usize, j: usize, a: u8) -> u64 {
        assert!(i != j && (1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        let mut e = self.unpack(self.identity);
        e[(i - 1) * self.n + (j - 1)] = a;
        self.pack(&e)
    }

    /// `z_ij(a, c) = t_ji(c) t_ij(a) t_ji(-c)`.
    pub fn z(&self, i: usize, j: usize, a: u8, c: u8) -> u64 {
        let r = self.ring;
        self.mul(self.mul(self.transvection(j, i, c), self.transvection(i, j, a)), self.transvection(j, i, r.neg(c)))
    }

    /// `[x, y] = x y x^-1 y^-1`, given the inverses.
    pub fn comm(&self, x: u64, y: u64, x_inv: u64, y_inv: u64) -> u64 {
        self.mul(self.mul(x, y), self.mul(x_inv, y_inv))
    }

    /// True when every entry of `x - e` lies in `member`.
    pub fn is_congruent(&self, x: u64, member: impl Fn(u8) -> bool) -> bool {
        let (e, id) = (self.unpack(x), self.unpack(self.identity));
        let r = self.ring;
        (0..self.n * self.n).all(|p| member(r.add(e[p], r.neg(id[p]))))
    }
}

/// A generator together with its inverse, both packed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gen {
    pub elem: u64,
    pub inv: u64,
}

/// The subgroup generated by a list of invertible matrices.
#[derive(Clone, Debug)]
pub struct SubgroupClosure {
    elements: Vec<u64>,
    inverses: Vec<u64>,
    index: HashMap<u64, u32>,
    /// Generators that enlarged the group when they were added; they
    /// generate the same subgroup as the full input list.
    gens: Vec<Gen>,
    offered: usize,
    cap: usize,
    cap_exceeded: bool,
}

impl SubgroupClosure {
    pub fn trivial(ctx: &MatCtx, cap: usize) -> SubgroupClosure {
        let id = ctx.identity();
        let mut index = HashMap::new();
        index.insert(id, 0);
        SubgroupClosure {
            elements: vec![id],
            inverses: vec![id],
            index,
            gens: Vec::new(),
            offered: 0,
            cap,
            cap_exceeded: false,
        }
    }

    /// Closure of `gens` under multiplication. Stops once `cap` elements
    /// are reached and sets the flag.
    pub fn generate(ctx: &MatCtx, gens: impl IntoIterator<Item = Gen>, cap: usize) -> SubgroupClosure {
        let mut g = SubgroupClosure::trivial(ctx, cap);
        for x in gens {
            g.add_generator(ctx, x);
        }
        g
    }

    /// Enlarges the group by one generator. Old elements only need the new
    /// generator on the right; newly found elements need every generator.
    pub fn add_generator(&mut self, ctx: &MatCtx, g: Gen) -> bool {
        self.offered += 1;
        if self.cap_exceeded || self.index.contains_key(&g.elem) {
            return false;
        }
        self.gens.push(g);
        let old = self.elements.len();
        for p in 0..old {
            if !self.push_product(ctx, p, g) {
                return true;
            }
        }
        let mut p = old;
        while p < self.elements.len() {
            for q in 0..self.gens.len() {
                if !self.push_product(ctx, p, self.gens[q]) {
                    return true;
                }
            }
            p += 1;
        }
        true
    }

    // The inverse of x g is g^-1 x^-1.
    fn push_product(&mut self, ctx: &MatCtx, p: usize, g: Gen) -> bool {
        let y = ctx.mul(self.elements[p], g.elem);
        if self.index.contains_key(&y) {
            return true;
        }
        if self.elements.len() >= self.cap {
            self.cap_exceeded = true;
            return false;
        }
        let y_inv = ctx.mul(g.inv, self.inverses[p]);
        self.index.insert(y, self.elements.len() as u32);
        self.elements.push(y);
        self.inverses.push(y_inv);
        true
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Number of generators offered, including redundant ones.
    pub fn generator_count(&self) -> usize {
        self.offered
    }

    pub fn generators(&self) -> &[Gen] {
        &self.gens
    }

    pub fn cap_exceeded(&self) -> bool {
        self.cap_exceeded
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn contains(&self, x: u64) -> bool {
        self.index.contains_key(&x)
    }

    pub fn inverse(&self, x: u64) -> Option<u64> {
        self.index.get(&x).map(|&p| self.inverses[p as usize])
    }

    pub fn is_subset(&self, other: &SubgroupClosure) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Same element set.
    pub fn same_elements(&self, other: &SubgroupClosure) -> bool {
        self.order() == other.order() && self.is_subset(other)
    }

    /// Exhaustive re-check of closure under products and inverses.
    pub fn is_closed(&self, ctx: &MatCtx) -> bool {
        self.elements.iter().zip(&self.inverses).all(|(&x, &xi)| {
            ctx.mul(x, xi) == ctx.identity()
                && self.contains(xi)
                && self.elements.iter().all(|&y| self.contains(ctx.mul(x, y)))
        })
    }

    pub fn is_abelian(&self, ctx: &MatCtx) -> bool {
        self.gens.iter().all(|a| self.gens.iter().all(|b| ctx.mul(a.elem, b.elem) == ctx.mul(b.elem, a.elem)))
    }

    fn require_complete(&self) -> Result<(), Error> {
        if self.cap_exceeded {
            Err(Error::CapExceeded(self.cap))
        } else {
            Ok(())
        }
    }
}

/// `[H, K]`, generated by every commutator `[h, k]` with `h` in `H` and `k`
/// in `K`.
///
/// For fixed `h` the commutators `h k h^-1 k^-1` range over `h` times the
/// orbit of `h^-1` under conjugation by `K`, and that orbit is found by
/// conjugating with the generators of `K` alone. So the set of all pairwise
/// commutators is produced exactly without enumerating `K`. Orbits are
/// shared between elements of the same class.
pub fn mixed_commutator(ctx: &MatCtx, h: &SubgroupClosure, k: &[Gen], cap: usize) -> Result<SubgroupClosure, Error> {
    h.require_complete()?;
    let mut out = SubgroupClosure::trivial(ctx, cap);
    let mut class_of: HashMap<u64, u32> = HashMap::new();
    let mut classes: Vec<Vec<(u64, u64)>> = Vec::new();
    for (&x, &x_inv) in h.elements.iter().zip(&h.inverses) {
        let id = match class_of.get(&x_inv) {
            Some(&c) => c,
            None => {
                let orbit = conjugation_orbit(ctx, x_inv, x, k, cap)?;
                let c = classes.len() as u32;
                for &(y, _) in &orbit {
                    class_of.insert(y, c);
                }
                classes.push(orbit);
                c
            }
        };
        for &(y, y_inv) in &classes[id as usize] {
            let c = ctx.mul(x, y);
            if !out.contains(c) {
                out.add_generator(ctx, Gen { elem: c, inv: ctx.mul(y_inv, x_inv) });
                out.require_complete()?;
            }
        }
    }
    Ok(out)
}

// Orbit of `x` under conjugation by `k`, each element paired with its inverse.
fn conjugation_orbit(ctx: &MatCtx, x: u64, x_inv: u64, k: &[Gen], cap: usize) -> Result<Vec<(u64, u64)>, Error> {
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(x);
    let mut orbit = vec![(x, x_inv)];
    let mut p = 0;
    while p < orbit.len() {
        let (y, y_inv) = orbit[p];
        for g in k {
            let z = ctx.mul(ctx.mul(g.elem, y), g.inv);
            if seen.insert(z) {
                if orbit.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                orbit.push((z, ctx.mul(ctx.mul(g.elem, y_inv), g.inv)));
            }
        }
        p += 1;
    }
    Ok(orbit)
}
