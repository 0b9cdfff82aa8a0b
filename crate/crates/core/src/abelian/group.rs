use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::scalar::reduce_mod;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk` with
/// `d1 | d2 | ... | dk`, `di >= 2`.
///
/// The group remembers the presentation it was computed from: a generator
/// count `n` and a relation matrix `R` (`n x m`, relations are columns), so
/// that the group is `Z^n / im R`. `to_canonical` takes presentation
/// coordinates to canonical coordinates and `from_canonical` lifts back.
///
/// Canonical generators are ordered free factors first, then torsion factors
/// by increasing order. Elements are coordinate vectors over the canonical
/// generators, stored reduced modulo the torsion orders.
#[derive(Clone)]
pub struct FGAbelianGroup {
    orders: Vec<Int>,
    presentation_gens: usize,
    relations: IntMatrix,
    to_canonical: IntMatrix,
    from_canonical: IntMatrix,
}

impl FGAbelianGroup {
    /// `Z^n / im relations`.
    pub fn from_presentation(gens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.nrows(), gens, "relation matrix must have one row per generator");
        let snf = smith_normal_form(&relations);
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..gens {
            let d = snf.diagonal.get(i).cloned().unwrap_or_else(Int::zero);
            if d.is_zero() {
                free.push(i);
            } else if !d.is_one() {
                torsion.push((i, d));
            }
        }
        let mut orders = vec![Int::zero(); free.len()];
        let mut kept: Vec<usize> = free;
        for (i, d) in torsion {
            orders.push(d);
            kept.push(i);
        }
        let to_canonical = snf.left.select_rows(&kept);
        let from_canonical = snf.left_inverse.select_columns(&kept);
        FGAbelianGroup { orders, presentation_gens: gens, relations, to_canonical, from_canonical }
    }

    /// The canonical group with the given invariants, presented by itself.
    pub fn from_invariants(rank: usize, torsion: &[Int]) -> Result<Self> {
        for d in torsion {
            if d < &Int::from(2) {
                return Err(Error::Validation(format!("invariant factor {d} is below 2")));
            }
        }
        for w in torsion.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::Validation(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        let mut orders = vec![Int::zero(); rank];
        orders.extend(torsion.iter().cloned());
        Ok(Self::canonical(orders))
    }

    /// Direct sum of cyclic groups of the given orders (0 means `Z`, 1 the
    /// trivial group), in any order. Normalizes to invariant-factor form.
    pub fn from_cyclic_orders(orders: &[Int]) -> Self {
        let n = orders.len();
        let mut rel = IntMatrix::zeros(n, n);
        for (i, o) in orders.iter().enumerate() {
            rel[(i, i)] = o.abs();
        }
        Self::from_presentation(n, rel)
    }

    fn canonical(orders: Vec<Int>) -> Self {
        let n = orders.len();
        let mut rel = IntMatrix::zeros(n, n);
        for (i, o) in orders.iter().enumerate() {
            rel[(i, i)] = o.clone();
        }
        FGAbelianGroup {
            orders,
            presentation_gens: n,
            relations: rel,
            to_canonical: Matrix::identity(n),
            from_canonical: Matrix::identity(n),
        }
    }

    pub fn trivial() -> Self {
        Self::canonical(Vec::new())
    }

    pub fn integers() -> Self {
        Self::canonical(vec![Int::zero()])
    }

    pub fn free(rank: usize) -> Self {
        Self::canonical(vec![Int::zero(); rank])
    }

    /// `Z/n`; `n == 0` gives `Z` and `n == 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::integers(),
            1 => Self::trivial(),
            _ => Self::canonical(vec![Int::from(n)]),
        }
    }

    /// Orders of the canonical cyclic factors, 0 for a free factor.
    pub fn orders(&self) -> &[Int] {
        &self.orders
    }

    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    pub fn rank(&self) -> usize {
        self.orders.iter().filter(|o| o.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<Int> {
        self.orders.iter().filter(|o| !o.is_zero()).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank() == 0
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.orders.iter().fold(Int::one(), |acc, o| acc * o))
    }

    /// Isomorphism type equality.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.orders == other.orders
    }

    pub fn presentation_generators(&self) -> usize {
        self.presentation_gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn to_canonical_matrix(&self) -> &IntMatrix {
        &self.to_canonical
    }

    pub fn from_canonical_matrix(&self) -> &IntMatrix {
        &self.from_canonical
    }

    /// Checks that the stored presentation reproduces the invariants.
    pub fn presentation_is_consistent(&self) -> bool {
        Self::from_presentation(self.presentation_gens, self.relations.clone()).orders == self.orders
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::zero(); self.orders.len()]
    }

    /// The `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> Vec<Int> {
        let mut v = self.zero();
        v[i] = Int::one();
        v
    }

    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.orders.len(), "element has wrong length");
        v.iter().zip(&self.orders).map(|(x, o)| reduce_mod(x, o)).collect()
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, a: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, k: &Int, a: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().map(|x| k * x).collect();
        self.reduce(&s)
    }

    pub fn is_zero(&self, a: &[Int]) -> bool {
        self.reduce(a).iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, a: &[Int]) -> bool {
        a.len() == self.orders.len()
    }

    /// Canonical element represented by presentation coordinates.
    pub fn from_presentation_coords(&self, x: &[Int]) -> Vec<Int> {
        self.reduce(&self.to_canonical.mul_vec(x))
    }

    /// A presentation-coordinate lift of a canonical element.
    pub fn to_presentation_coords(&self, a: &[Int]) -> Vec<Int> {
        self.from_canonical.mul_vec(a)
    }

    /// Additive order of an element, `None` if infinite.
    pub fn element_order(&self, a: &[Int]) -> Option<Int> {
        let a = self.reduce(a);
        let mut acc = Int::one();
        for (x, o) in a.iter().zip(&self.orders) {
            if x.is_zero() {
                continue;
            }
            if o.is_zero() {
                return None;
            }
            acc = acc.lcm(&(o / o.gcd(x)));
        }
        Some(acc)
    }

    /// Every element in lexicographic order of canonical coordinates.
    pub fn elements(&self) -> Result<Vec<Vec<Int>>> {
        if !self.is_finite() {
            return Err(Error::Unsupported(format!("cannot enumerate the infinite group {self}")));
        }
        let mut out = vec![Vec::new()];
        for o in &self.orders {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = Int::zero();
                while &k < o {
                    let mut e = prefix.clone();
                    e.push(k.clone());
                    next.push(e);
                    k += 1;
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Position of a reduced element in [`Self::elements`].
    pub fn element_index(&self, a: &[Int]) -> usize {
        let a = self.reduce(a);
        let mut idx = Int::zero();
        for (x, o) in a.iter().zip(&self.orders) {
            idx = idx * o + x;
        }
        usize::try_from(&idx).expect("element index overflow")
    }

    /// Direct sum with canonical injections and projections.
    pub fn direct_sum(parts: &[FGAbelianGroup]) -> DirectSum {
        let all_orders: Vec<Int> = parts.iter().flat_map(|p| p.orders.iter().cloned()).collect();
        let group = Self::from_cyclic_orders(&all_orders);
        let total = all_orders.len();
        let mut injections = Vec::with_capacity(parts.len());
        let mut projections = Vec::with_capacity(parts.len());
        let mut offset = 0;
        for p in parts {
            let n = p.num_generators();
            let inj = Matrix::from_fn(total, n, |r, c| if r == offset + c { Int::one() } else { Int::zero() });
            let inj = group.to_canonical.mul(&inj);
            injections.push(GroupHom::new(p.clone(), group.clone(), inj).expect("injection well defined"));
            let sel = group.from_canonical.select_rows(&(offset..offset + n).collect::<Vec<_>>());
            projections.push(GroupHom::new(group.clone(), p.clone(), sel).expect("projection well defined"));
            offset += n;
        }
        DirectSum { group, injections, projections }
    }
}

impl PartialEq for FGAbelianGroup {
    /// Groups compare by isomorphism type; canonical coordinates are
    /// interchangeable between groups with equal invariants.
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
    }
}

impl Eq for FGAbelianGroup {}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = self.rank();
        let mut parts = Vec::new();
        match rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in self.torsion() {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FGAbelianGroup({self})")
    }
}

/// Homomorphism between canonical coordinates: `target.num_generators() x
/// source.num_generators()`, entries reduced in the target.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FGAbelianGroup,
    target: FGAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks that every relation of the source lands in the relation lattice
    /// of the target, i.e. `ord(e_j) * column_j == 0`.
    pub fn new(source: FGAbelianGroup, target: FGAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (target.num_generators(), source.num_generators()) {
            return Err(Error::IllDefinedHom(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target.num_generators(),
                source.num_generators()
            )));
        }
        let mut reduced = matrix;
        for c in 0..reduced.ncols() {
            let col = target.reduce(&reduced.column(c));
            let order = &source.orders[c];
            if !order.is_zero() && !target.is_zero(&target.scale(order, &col)) {
                return Err(Error::IllDefinedHom(format!(
                    "generator {c} of order {order} maps to an element of order {}",
                    target.element_order(&col).map_or("infinity".to_string(), |o| o.to_string())
                )));
            }
            for (r, v) in col.into_iter().enumerate() {
                reduced[(r, c)] = v;
            }
        }
        Ok(GroupHom { source, target, matrix: reduced })
    }

    pub fn identity(g: &FGAbelianGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), matrix: Matrix::identity(g.num_generators()) }
    }

    pub fn zero(source: &FGAbelianGroup, target: &FGAbelianGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(target.num_generators(), source.num_generators()),
        }
    }

    /// Multiplication by `k` on a group.
    pub fn scalar(g: &FGAbelianGroup, k: &Int) -> Self {
        Self::new(g.clone(), g.clone(), Matrix::identity(g.num_generators()).scale(k)).expect("scalar map")
    }

    pub fn source(&self) -> &FGAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_vec(&self.source.reduce(x)))
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &GroupHom) -> Result<GroupHom> {
        if self.target != after.source {
            return Err(Error::GroupMismatch(format!(
                "cannot compose through {} and {}",
                self.target, after.source
            )));
        }
        GroupHom::new(self.source.clone(), after.target.clone(), after.matrix.mul(&self.matrix))
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::GroupMismatch("sum of homomorphisms with different ends".into()));
        }
        GroupHom::new(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn cokernel(&self) -> FGAbelianGroup {
        let n = self.target.num_generators();
        let mut rel = Matrix::zeros(n, n);
        for (i, o) in self.target.orders.iter().enumerate() {
            rel[(i, i)] = o.clone();
        }
        FGAbelianGroup::from_presentation(n, rel.hcat(&self.matrix))
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    /// Bijectivity. Finitely generated abelian groups are Hopfian, so a
    /// surjection between isomorphic groups is an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.source.is_isomorphic(&self.target) && self.is_surjective()
    }

    /// Injectivity for finite sources, by counting the image.
    pub fn is_injective_finite(&self) -> Result<bool> {
        let (Some(src), Some(tgt)) = (self.source.order(), self.target.order()) else {
            return Err(Error::Unsupported("injectivity test needs finite groups".into()));
        };
        let coker = self.cokernel().order().expect("finite cokernel");
        Ok(tgt / coker == src)
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({} -> {}, {:?})", self.source, self.target, self.matrix)
    }
}

/// `⊕ parts` with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FGAbelianGroup,
    pub injections: Vec<GroupHom>,
    pub projections: Vec<GroupHom>,
}

impl DirectSum {
    /// The element `Σ ι_i(x_i)`.
    pub fn combine(&self, parts: &[Vec<Int>]) -> Vec<Int> {
        parts
            .iter()
            .zip(&self.injections)
            .fold(self.group.zero(), |acc, (x, inj)| self.group.add(&acc, &inj.apply(x)))
    }

    /// The homomorphism `⊕ G_i -> T` given by `Σ f_i ∘ π_i`.
    pub fn copair(&self, maps: &[GroupHom], target: &FGAbelianGroup) -> Result<GroupHom> {
        assert_eq!(maps.len(), self.projections.len(), "one map per summand");
        let mut acc = GroupHom::zero(&self.group, target);
        for (proj, f) in self.projections.iter().zip(maps) {
            acc = acc.add(&proj.then(f)?)?;
        }
        Ok(acc)
    }
}
