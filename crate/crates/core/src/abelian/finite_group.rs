use std::collections::VecDeque;
use std::fmt;

use super::group::FGAbelianGroup;
use crate::error::{Error, Result};

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    abelian: bool,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::Validation("multiplication table has the wrong size".into()));
        }
        if table.iter().any(|&x| x >= order) {
            return Err(Error::Validation("multiplication table leaves the group".into()));
        }
        let m = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| m(e, g) == g && m(g, e) == g))
            .ok_or_else(|| Error::Validation("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(order);
        for g in 0..order {
            let inv = (0..order)
                .find(|&h| m(g, h) == identity && m(h, g) == identity)
                .ok_or_else(|| Error::Validation(format!("element {g} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::Validation(format!("associativity fails on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let abelian = (0..order).all(|a| (0..order).all(|b| m(a, b) == m(b, a)));
        let names = (0..order).map(|i| i.to_string()).collect();
        Ok(FiniteGroup { order, table, identity, inverses, abelian, names })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order);
        self.names = names;
        self
    }

    pub fn trivial() -> Self {
        FiniteGroup::new(1, vec![0]).unwrap().with_names(vec!["e".into()])
    }

    /// `Z/n` with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        FiniteGroup::new(n, table).unwrap()
    }

    /// `G × H`, element `(g, h)` at index `g * |H| + h`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let n = g.order * h.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (ga, ha) = (a / h.order, a % h.order);
                let (gb, hb) = (b / h.order, b % h.order);
                table[a * n + b] = g.mul(ga, gb) * h.order + h.mul(ha, hb);
            }
        }
        let names = (0..n).map(|i| format!("({},{})", g.names[i / h.order], h.names[i % h.order])).collect();
        FiniteGroup::new(n, table).unwrap().with_names(names)
    }

    /// Symmetric group on `n` letters. Elements are permutations in
    /// lexicographic order; `(p * q)(i) = p(q(i))`.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for x in 0..n {
                    if !p.contains(&x) {
                        let mut q = p.clone();
                        q.push(x);
                        next.push(q);
                    }
                }
            }
            perms = next;
        }
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let k = perms.len();
        let mut table = vec![0; k * k];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let comp: Vec<usize> = (0..n).map(|i| p[q[i]]).collect();
                table[a * k + b] = index(&comp);
            }
        }
        let names = perms.iter().map(|p| cycle_notation(p)).collect();
        FiniteGroup::new(k, table).unwrap().with_names(names)
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // index = 2 * unit + sign, unit in {1, i, j, k}
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            // returns (unit, negative)
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 3) => (1, false),
                (3, 1) => (2, false),
                (2, 1) => (3, true),
                (3, 2) => (1, true),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let mut table = vec![0; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (u, neg) = unit_mul(a / 2, b / 2);
                let sign = (a % 2) ^ (b % 2) ^ usize::from(neg);
                table[a * 8 + b] = 2 * u + sign;
            }
        }
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        FiniteGroup::new(8, table).unwrap().with_names(names)
    }

    /// The underlying finite group of a finite abelian group, elements in the
    /// order of [`FGAbelianGroup::elements`].
    pub fn from_abelian(a: &FGAbelianGroup) -> Result<Self> {
        let els = a.elements()?;
        let n = els.len();
        let mut table = vec![0; n * n];
        for (i, x) in els.iter().enumerate() {
            for (j, y) in els.iter().enumerate() {
                table[i * n + j] = a.element_index(&a.add(x, y));
            }
        }
        let names = els
            .iter()
            .map(|e| format!("({})", e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        Ok(FiniteGroup::new(n, table)?.with_names(names))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Exponent: lcm of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    /// A generating set, chosen greedily by index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        for g in 0..self.order {
            if !span[g] {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        span.iter().all(|&b| b).then_some(()).expect("greedy generators span");
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// An isomorphism `self -> other` as an index map, found by backtracking
    /// over images of a generating set.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order || self.abelian != other.abelian {
            return None;
        }
        let gens = self.generators();
        let mut images = Vec::with_capacity(gens.len());
        self.search_images(other, &gens, &mut images)
    }

    fn search_images(&self, other: &FiniteGroup, gens: &[usize], images: &mut Vec<usize>) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return self.extend_to_hom(other, gens, images).filter(|map| {
                let mut hit = vec![false; other.order];
                map.iter().for_each(|&y| hit[y] = true);
                hit.iter().all(|&b| b)
            });
        }
        let g = gens[images.len()];
        let ord = self.element_order(g);
        for cand in 0..other.order {
            if other.element_order(cand) != ord {
                continue;
            }
            images.push(cand);
            if let Some(map) = self.search_images(other, gens, images) {
                return Some(map);
            }
            images.pop();
        }
        None
    }

    /// Extend generator images along a BFS of words; `None` if inconsistent.
    fn extend_to_hom(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        let hom = (0..self.order)
            .all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])));
        hom.then_some(map)
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut cycles = Vec::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x];
        }
        cycles.push(format!("({})", cyc.iter().map(|v| v.to_string()).collect::<String>()));
    }
    if cycles.is_empty() {
        "e".into()
    } else {
        cycles.concat()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, {})", self.order, if self.abelian { "abelian" } else { "nonabelian" })
    }
}
