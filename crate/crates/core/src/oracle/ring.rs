//! Finite rings given by tables, and their two-sided ideals.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// A finite associative unital ring on the elements `0..size`, given by
/// its addition and multiplication tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    name: String,
    labels: Vec<String>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    zero: u8,
    one: u8,
}

/// Largest ring the oracle accepts.
pub const MAX_RING_SIZE: usize = 16;

impl FiniteRing {
    /// Validates the tables exhaustively: abelian group under addition,
    /// associative multiplication with unit `one`, both distributive laws.
    pub fn new(name: &str, labels: Vec<String>, add: Vec<u8>, mul: Vec<u8>, one: u8) -> Result<FiniteRing, Error> {
        let k = labels.len();
        let bad = |msg: String| Err(Error::InvalidRing(msg));
        if k == 0 || k > MAX_RING_SIZE {
            return bad(format!("size {k} outside 1..={MAX_RING_SIZE}"));
        }
        if add.len() != k * k || mul.len() != k * k {
            return bad(format!("tables must be {k}x{k}"));
        }
        if add.iter().chain(mul.iter()).any(|&v| v as usize >= k) || one as usize >= k {
            return bad("table entry out of range".into());
        }
        let a = |x: usize, y: usize| add[x * k + y] as usize;
        let m = |x: usize, y: usize| mul[x * k + y] as usize;
        let zero = match (0..k).find(|&z| (0..k).all(|x| a(z, x) == x && a(x, z) == x)) {
            Some(z) => z,
            None => return bad("no additive identity".into()),
        };
        let mut neg = Vec::with_capacity(k);
        for x in 0..k {
            match (0..k).find(|&y| a(x, y) == zero) {
                Some(y) => neg.push(y as u8),
                None => return bad(format!("element {x} has no additive inverse")),
            }
        }
        for x in 0..k {
            if m(one as usize, x) != x || m(x, one as usize) != x {
                return bad(format!("{one} is not a two-sided unit"));
            }
            for y in 0..k {
                if a(x, y) != a(y, x) {
                    return bad(format!("addition not commutative at ({x},{y})"));
                }
                for z in 0..k {
                    if a(a(x, y), z) != a(x, a(y, z)) {
                        return bad(format!("addition not associative at ({x},{y},{z})"));
                    }
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return bad(format!("multiplication not associative at ({x},{y},{z})"));
                    }
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) || m(a(x, y), z) != a(m(x, z), m(y, z)) {
                        return bad(format!("not distributive at ({x},{y},{z})"));
                    }
                }
            }
        }
        Ok(FiniteRing { name: name.to_string(), labels, add, mul, neg, zero: zero as u8, one })
    }

    /// `zmod:k` for `2 <= k <= 16`, `dual:2` (`F_2[t]/(t^2)`) and `t2f2`
    /// (upper triangular 2x2 matrices over `F_2`).
    pub fn builtin(name: &str) -> Result<FiniteRing, Error> {
        if let Some(k) = name.strip_prefix("zmod:") {
            let k: usize = k.parse().map_err(|_| Error::UnknownRing(name.to_string()))?;
            if !(2..=MAX_RING_SIZE).contains(&k) {
                return Err(Error::UnknownRing(name.to_string()));
            }
            return FiniteRing::from_fn(name, (0..k).map(|x| x.to_string()).collect(), 1, |x, y| (x + y) % k, |x, y| {
                (x * y) % k
            });
        }
        match name {
            // a + b t encoded as a + 2b.
            "dual:2" => {
                let labels = ["0", "1", "t", "1+t"].iter().map(|s| s.to_string()).collect();
                FiniteRing::from_fn(name, labels, 1, |x, y| x ^ y, |x, y| {
                    let (a, b, c, d) = (x & 1, x >> 1, y & 1, y >> 1);
                    (a & c) | (((a & d) ^ (b & c)) << 1)
                })
            }
            // p e11 + q e12 + r e22 encoded as p + 2q + 4r.
            "t2f2" => {
                let labels = (0..8usize)
                    .map(|x| match x {
                        0 => "0".to_string(),
                        5 => "1".to_string(),
                        7 => "1+e12".to_string(),
                        _ => {
                            let units = ["e11", "e12", "e22"].iter().enumerate();
                            let parts: Vec<&str> = units.filter(|(b, _)| x >> b & 1 == 1).map(|(_, u)| *u).collect();
                            parts.join("+")
                        }
                    })
                    .collect();
                FiniteRing::from_fn(name, labels, 0b101, |x, y| x ^ y, |x, y| {
                    let (p, q, r) = (x & 1, (x >> 1) & 1, (x >> 2) & 1);
                    let (s, t, u) = (y & 1, (y >> 1) & 1, (y >> 2) & 1);
                    (p & s) | (((p & t) ^ (q & u)) << 1) | ((r & u) << 2)
                })
            }
            _ => Err(Error::UnknownRing(name.to_string())),
        }
    }

    fn from_fn(
        name: &str,
        labels: Vec<String>,
        one: u8,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<FiniteRing, Error> {
        let k = labels.len();
        let table = |f: &dyn Fn(usize, usize) -> usize| (0..k * k).map(|i| f(i / k, i % k) as u8).collect();
        FiniteRing::new(name, labels, table(&add), table(&mul), one)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: u8) -> &str {
        &self.labels[x as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u8> {
        self.labels.iter().position(|l| l == label).map(|p| p as u8)
    }

    pub fn zero(&self) -> u8 {
        self.zero
    }

    pub fn one(&self) -> u8 {
        self.one
    }

    #[inline]
    pub fn add(&self, x: u8, y: u8) -> u8 {
        self.add[x as usize * self.size() + y as usize]
    }

    #[inline]
    pub fn mul(&self, x: u8, y: u8) -> u8 {
        self.mul[x as usize * self.size() + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: u8) -> u8 {
        self.neg[x as usize]
    }

    pub fn add_table(&self) -> &[u8] {
        &self.add
    }

    pub fn mul_table(&self) -> &[u8] {
        &self.mul
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.size() as u8
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }
}

/// A two-sided ideal, as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteIdeal {
    members: Vec<u8>,
}

impl FiniteIdeal {
    /// Checks the subset is an additive subgroup closed under multiplication
    /// by ring elements on both sides.
    pub fn new(ring: &FiniteRing, subset: &[u8]) -> Result<FiniteIdeal, Error> {
        let mut members: Vec<u8> = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        let bad = |msg: String| Err(Error::InvalidIdeal(msg));
        if members.iter().any(|&x| x as usize >= ring.size()) {
            return bad("element out of range".into());
        }
        let has = |x: u8| members.binary_search(&x).is_ok();
        if !has(ring.zero()) {
            return bad("does not contain zero".into());
        }
        for &x in &members {
            if !has(ring.neg(x)) {
                return bad(format!("not closed under negation at {}", ring.label(x)));
            }
            for &y in &members {
                if !has(ring.add(x, y)) {
                    return bad(format!("not closed under addition at ({}, {})", ring.label(x), ring.label(y)));
                }
            }
            for r in ring.elements() {
                if !has(ring.mul(r, x)) || !has(ring.mul(x, r)) {
                    return bad(format!("not absorbing at ({}, {})", ring.label(r), ring.label(x)));
                }
            }
        }
        Ok(FiniteIdeal { members })
    }

    /// The smallest two-sided ideal containing `gens`.
    pub fn generated(ring: &FiniteRing, gens: &[u8]) -> FiniteIdeal {
        let mut seen = vec![false; ring.size()];
        let mut stack = vec![ring.zero()];
        seen[ring.zero() as usize] = true;
        for &g in gens {
            for r in ring.elements() {
                for s in ring.elements() {
                    let x = ring.mul(ring.mul(r, g), s);
                    if !seen[x as usize] {
                        seen[x as usize] = true;
                        stack.push(x);
                    }
                }
            }
        }
        // Additive closure of the products r g s.
        let mut i = 0;
        while i < stack.len() {
            let x = stack[i];
            for j in 0..=i {
                let y = ring.add(x, stack[j]);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
            i += 1;
        }
        FiniteIdeal { members: (0..ring.size() as u8).filter(|&x| seen[x as usize]).collect() }
    }

    pub fn zero(ring: &FiniteRing) -> FiniteIdeal {
        FiniteIdeal { members: vec![ring.zero()] }
    }

    pub fn full(ring: &FiniteRing) -> FiniteIdeal {
        FiniteIdeal { members: ring.elements().collect() }
    }

    /// Named ideals of the builtin rings: `(d)` for a principal ideal on the
    /// element labelled `d`, `0`, `R`, and `strict` for the strictly upper
    /// triangular ideal of `t2f2`.
    pub fn named(ring: &FiniteRing, name: &str) -> Result<FiniteIdeal, Error> {
        match name {
            "0" => Ok(FiniteIdeal::zero(ring)),
            "R" => Ok(FiniteIdeal::full(ring)),
            "strict" if ring.name() == "t2f2" => {
                let e12 = ring.index_of("e12").expect("t2f2 label");
                Ok(FiniteIdeal::generated(ring, &[e12]))
            }
            _ => {
                let inner = name
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| Error::InvalidIdeal(format!("unknown ideal `{name}`")))?;
                let gens = inner
                    .split(',')
                    .map(|l| ring.index_of(l.trim()).ok_or_else(|| Error::InvalidIdeal(format!("unknown element `{l}`"))))
                    .collect::<Result<Vec<u8>, Error>>()?;
                Ok(FiniteIdeal::generated(ring, &gens))
            }
        }
    }

    pub fn members(&self) -> &[u8] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: u8) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset(&self, other: &FiniteIdeal) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// `I + J`.
    pub fn sum(ring: &FiniteRing, i: &FiniteIdeal, j: &FiniteIdeal) -> FiniteIdeal {
        let mut gens = i.members.clone();
        gens.extend_from_slice(&j.members);
        FiniteIdeal::generated(ring, &gens)
    }

    /// `IJ`: additive span of the products `x y`.
    pub fn product(ring: &FiniteRing, i: &FiniteIdeal, j: &FiniteIdeal) -> FiniteIdeal {
        let gens: Vec<u8> = i.members.iter().flat_map(|&x| j.members.iter().map(move |&y| ring.mul(x, y))).collect();
        FiniteIdeal::generated(ring, &gens)
    }

    /// The symmetrised product `AB + BA`.
    pub fn symmetric_product(ring: &FiniteRing, a: &FiniteIdeal, b: &FiniteIdeal) -> FiniteIdeal {
        FiniteIdeal::sum(ring, &FiniteIdeal::product(ring, a, b), &FiniteIdeal::product(ring, b, a))
    }

    /// Smallest generating set of the additive group, greedily.
    pub fn additive_generators(&self, ring: &FiniteRing) -> Vec<u8> {
        let mut span = vec![ring.zero()];
        let mut gens = Vec::new();
        for &x in &self.members {
            if span.contains(&x) {
                continue;
            }
            gens.push(x);
            let mut i = 0;
            while i < span.len() {
                let y = ring.add(span[i], x);
                if !span.contains(&y) {
                    span.push(y);
                }
                i += 1;
            }
        }
        gens
    }
}
