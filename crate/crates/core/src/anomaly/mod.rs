//! Anomalies of finite 0-form symmetries: normalized 2-cocycles, the central
//! extensions they define, and the classification by `H^2(G; U(1))`.
//!
//! `U(1)` is modelled by its `N`-torsion `Z/N`. Cohomology of `G` with
//! integer coefficients comes from the normalized bar complex.

mod bar;

use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::abelian::scalar::reduce_mod;
use crate::abelian::{solve_congruence, FGAbelianGroup, FiniteGroup, KernelLattice, Subquotient};
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};

pub use bar::{bar_coboundary, group_cohomology_z, group_cohomology_z_with_limit, DEFAULT_BAR_LIMIT};
use bar::BarIndex;

/// Default bound on `|G|` for anomaly classification.
pub const DEFAULT_ORDER_BOUND: usize = 8;

/// A `Z/N`-valued function on `G × G`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    group: Arc<FiniteGroup>,
    modulus: u64,
    values: Vec<u64>,
}

impl Cocycle2 {
    /// A candidate table; validity is checked by [`check_cocycle`].
    pub fn new(group: Arc<FiniteGroup>, modulus: u64, values: Vec<u64>) -> Result<Self> {
        let n = group.order();
        if modulus < 2 {
            return Err(Error::Validation(format!("modulus {modulus} must be at least 2")));
        }
        if values.len() != n * n {
            return Err(Error::Validation(format!("a table on a group of order {n} needs {} entries", n * n)));
        }
        let values = values.into_iter().map(|v| v % modulus).collect();
        Ok(Cocycle2 { group, modulus, values })
    }

    pub fn zero(group: Arc<FiniteGroup>, modulus: u64) -> Result<Self> {
        let n = group.order();
        Self::new(group, modulus, vec![0; n * n])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self, g: usize, h: usize) -> u64 {
        self.values[g * self.group.order() + h]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `self + δb`, with `(δb)(g, h) = b(g) + b(h) - b(gh)`.
    pub fn add_coboundary(&self, b: &[u64]) -> Result<Self> {
        let n = self.group.order();
        if b.len() != n {
            return Err(Error::Validation(format!("a 1-cochain needs {n} values")));
        }
        let m = self.modulus;
        let values = (0..n * n)
            .map(|i| {
                let (g, h) = (i / n, i % n);
                (self.values[i] + b[g] % m + b[h] % m + m - b[self.group.mul(g, h)] % m) % m
            })
            .collect();
        Self::new(self.group.clone(), m, values)
    }
}

impl fmt::Debug for Cocycle2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cocycle2(mod {}, {:?})", self.modulus, self.values)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleVerdict {
    Valid,
    /// `c(e, g)` or `c(g, e)` is nonzero.
    NotNormalized { g: usize, h: usize },
    /// `c(g,h) + c(gh,k) != c(h,k) + c(g,hk)`.
    Violation { g: usize, h: usize, k: usize },
}

impl CocycleVerdict {
    pub fn is_valid(&self) -> bool {
        *self == CocycleVerdict::Valid
    }
}

/// Exhaustive check of normalization and the cocycle identity.
pub fn check_cocycle(c: &Cocycle2) -> CocycleVerdict {
    let g = &c.group;
    let n = g.order();
    let e = g.identity();
    for x in 0..n {
        if c.value(e, x) != 0 {
            return CocycleVerdict::NotNormalized { g: e, h: x };
        }
        if c.value(x, e) != 0 {
            return CocycleVerdict::NotNormalized { g: x, h: e };
        }
    }
    let m = c.modulus;
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                let left = (c.value(a, b) + c.value(g.mul(a, b), k)) % m;
                let right = (c.value(b, k) + c.value(a, g.mul(b, k))) % m;
                if left != right {
                    return CocycleVerdict::Violation { g: a, h: b, k };
                }
            }
        }
    }
    CocycleVerdict::Valid
}

/// `Z/N × G` with `(s,g)(t,h) = (s + t + c(g,h), gh)`. Element `(s, g)` has
/// index `g * N + s`.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    cocycle: Cocycle2,
    group: FiniteGroup,
}

impl CentralExtension {
    pub fn cocycle(&self) -> &Cocycle2 {
        &self.cocycle
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn element(&self, s: u64, g: usize) -> usize {
        g * self.cocycle.modulus as usize + (s % self.cocycle.modulus) as usize
    }

    /// `(s, g)` from an index.
    pub fn split(&self, x: usize) -> (u64, usize) {
        let m = self.cocycle.modulus as usize;
        ((x % m) as u64, x / m)
    }

    pub fn projection(&self, x: usize) -> usize {
        self.split(x).1
    }

    pub fn is_central_kernel(&self) -> bool {
        let m = self.cocycle.modulus;
        let e = self.cocycle.group.identity();
        (0..m).all(|s| {
            let z = self.element(s, e);
            (0..self.group.order()).all(|x| self.group.mul(z, x) == self.group.mul(x, z))
        })
    }

    /// The projection is a surjective homomorphism whose kernel is `Z/N × {e}`.
    pub fn is_exact(&self) -> bool {
        let base = &self.cocycle.group;
        let n = self.group.order();
        let hom = (0..n).all(|x| (0..n).all(|y| self.projection(self.group.mul(x, y)) == base.mul(self.projection(x), self.projection(y))));
        let kernel = (0..n).filter(|&x| self.projection(x) == base.identity()).count();
        let mut hit = vec![false; base.order()];
        (0..n).for_each(|x| hit[self.projection(x)] = true);
        hom && kernel == self.cocycle.modulus as usize && hit.iter().all(|&b| b)
    }
}

pub fn build_central_extension(c: &Cocycle2) -> Result<CentralExtension> {
    let verdict = check_cocycle(c);
    if !verdict.is_valid() {
        return Err(Error::Precondition(format!("not a normalized cocycle: {verdict:?}")));
    }
    let base = &c.group;
    let m = c.modulus as usize;
    let order = m * base.order();
    let mut table = vec![0; order * order];
    for x in 0..order {
        let (s, g) = ((x % m) as u64, x / m);
        for y in 0..order {
            let (t, h) = ((y % m) as u64, y / m);
            let u = (s + t + c.value(g, h)) % c.modulus;
            table[x * order + y] = base.mul(g, h) * m + u as usize;
        }
    }
    let names = (0..order).map(|x| format!("({},{})", x % m, base.name(x / m))).collect();
    let group = FiniteGroup::new(order, table).map_err(|e| Error::InvalidCocycle(e.to_string()))?.with_names(names);
    let ext = CentralExtension { cocycle: c.clone(), group };
    debug_assert!(ext.is_central_kernel() && ext.is_exact());
    Ok(ext)
}

fn coboundary_system(g: &FiniteGroup) -> IntMatrix {
    // rows: all pairs (g, h); columns: b on every element
    let n = g.order();
    let mut m = IntMatrix::zeros(n * n, n);
    for a in 0..n {
        for b in 0..n {
            let r = a * n + b;
            m[(r, a)] += Int::from(1);
            m[(r, b)] += Int::from(1);
            m[(r, g.mul(a, b))] -= Int::from(1);
        }
    }
    m
}

/// A `Z/N`-valued `b` with `b(e) = 0` and `c' - c = δb`, if one exists.
pub fn are_cohomologous(c: &Cocycle2, d: &Cocycle2) -> Result<Option<Vec<u64>>> {
    if c.group.table() != d.group.table() || c.modulus != d.modulus {
        return Err(Error::GroupMismatch("cocycles on different groups or moduli".into()));
    }
    let g = &c.group;
    let m = c.modulus;
    let e = g.identity();
    let mut system = coboundary_system(g);
    // pin b(e) = 0 with an extra equation
    let mut pin = vec![Int::from(0); g.order()];
    pin[e] = Int::from(1);
    system = system.vcat(&IntMatrix::from_rows(vec![pin], g.order()));
    let mut rhs: Vec<Int> = c.values.iter().zip(&d.values).map(|(&x, &y)| Int::from((y + m - x) % m)).collect();
    rhs.push(Int::from(0));
    Ok(solve_congruence(&system, &rhs, &Int::from(m)).map(|b| {
        b.iter().map(|v| reduce_mod(v, &Int::from(m)).to_u64().expect("small")).collect()
    }))
}

/// `H^2(G; U(1))` with one normalized `Z/|G|`-valued representative per class.
#[derive(Clone, Debug)]
pub struct AnomalyClassification {
    pub group: FGAbelianGroup,
    pub modulus: u64,
    /// In the order of [`FGAbelianGroup::elements`] of `group`.
    pub representatives: Vec<Cocycle2>,
    /// The same classes with values in `(1/k)Z/Z` for a class of order `k`,
    /// stored modulo `max(k, 2)`.
    pub reduced: Vec<Cocycle2>,
    /// `H^3(G; Z)` from the bar complex.
    pub predicted: FGAbelianGroup,
}

impl AnomalyClassification {
    pub fn agrees(&self) -> bool {
        self.group.is_isomorphic(&self.predicted)
    }
}

/// Anomalies of a 0-form symmetry `G`, i.e. maps out of `K(G, 1)`. Higher
/// Eilenberg-MacLane spaces are rejected.
pub fn classify_anomalies(g: &Arc<FiniteGroup>, n: usize) -> Result<AnomalyClassification> {
    match n {
        0 => Err(Error::Validation("the Eilenberg-MacLane degree must be at least 1".into())),
        1 => classify_anomalies_zero_form(g, DEFAULT_ORDER_BOUND),
        _ => Err(Error::Unsupported(format!("anomalies of K(A, {n}) need cohomology of Eilenberg-MacLane spaces"))),
    }
}

/// Normalized `Z/N` cocycles with `N = |G|`, modulo coboundaries of
/// `U(1)`-valued 1-cochains. Such a `b` has `N·b` a homomorphism
/// `G -> (1/N)Z/Z`, so besides ordinary `Z/N` coboundaries the quotient also
/// kills `δβ / N` for integer `β` with `δβ ≡ 0 (mod N)`.
pub fn classify_anomalies_zero_form(g: &Arc<FiniteGroup>, bound: usize) -> Result<AnomalyClassification> {
    let order = g.order();
    if order > bound {
        return Err(Error::Budget { limit: bound, context: format!("classifying anomalies of a group of order {order}") });
    }
    let predicted = group_cohomology_z(g, 3)?;
    let modulus = order.max(2) as u64;
    let n = Int::from(modulus);
    let idx = BarIndex::new(g);
    let d1 = bar_coboundary(g, 1);
    let d2 = bar_coboundary(g, 2);
    let numerator = KernelLattice::of(&d2, &n);
    let closed = KernelLattice::of(&d1, &n);
    let shifted = d1.mul(closed.basis()).map(|v| v / &n);
    let denominators = shifted.hcat(&IntMatrix::identity(idx.count(2)).scale(&n));
    let quotient = Subquotient::new(numerator, &denominators)?;
    let group = quotient.group().clone();

    let pairs = idx.tuples(2);
    let table = |v: &[Int], m: &Int| -> Vec<u64> {
        let mut values = vec![0u64; order * order];
        for (t, x) in pairs.iter().zip(v) {
            values[t[0] * order + t[1]] = reduce_mod(x, m).to_u64().expect("small");
        }
        values
    };
    let mut representatives = Vec::new();
    let mut reduced = Vec::new();
    for class in group.elements()? {
        let v = quotient.representative(&class);
        representatives.push(Cocycle2::new(g.clone(), modulus, table(&v, &n))?);
        // shift within the class until every value is a multiple of N/k
        let k = group.element_order(&class).expect("finite");
        let step = &n / &k;
        let minus: Vec<Int> = v.iter().map(|x| -x).collect();
        let y = solve_congruence(&denominators, &minus, &step)
            .ok_or_else(|| Error::InvalidCocycle("no representative of minimal order".into()))?;
        let w: Vec<Int> = denominators.mul_vec(&y).iter().zip(&v).map(|(a, b)| reduce_mod(&(a + b), &n) / &step).collect();
        let small = k.to_u64().expect("small").max(2);
        reduced.push(Cocycle2::new(g.clone(), small, table(&w, &Int::from(small)))?);
    }
    Ok(AnomalyClassification { group, modulus, representatives, reduced, predicted })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn klein() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)))
    }

    fn sign_cocycle() -> Cocycle2 {
        let g = z2();
        let e = g.identity();
        let x = 1 - e;
        let mut values = vec![0; 4];
        values[x * 2 + x] = 1;
        Cocycle2::new(g, 2, values).unwrap()
    }

    /// Counts `H^2(G; U(1))` by brute force: all normalized `Z/N` cocycles by
    /// backtracking, all coboundaries by listing 1-cochains, and the
    /// homomorphisms to `Z/N` which account for the difference between
    /// `Z/N` and `U(1)` coefficients.
    fn brute_force_order(g: &FiniteGroup) -> usize {
        let n = g.order();
        let m = n.max(2) as u64;
        let e = g.identity();
        let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
        let slots: Vec<(usize, usize)> = others.iter().flat_map(|&a| others.iter().map(move |&b| (a, b))).collect();
        let mut table = vec![None; n * n];
        for x in 0..n {
            table[e * n + x] = Some(0);
            table[x * n + e] = Some(0);
        }
        fn consistent(g: &FiniteGroup, t: &[Option<u64>], m: u64) -> bool {
            let n = g.order();
            for a in 0..n {
                for b in 0..n {
                    for k in 0..n {
                        let get = |x: usize, y: usize| t[x * n + y];
                        if let (Some(p), Some(q), Some(r), Some(s)) =
                            (get(a, b), get(g.mul(a, b), k), get(b, k), get(a, g.mul(b, k)))
                        {
                            if (p + q) % m != (r + s) % m {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        }
        fn count(g: &FiniteGroup, t: &mut Vec<Option<u64>>, slots: &[(usize, usize)], m: u64) -> usize {
            let Some(&(a, b)) = slots.first() else { return 1 };
            let n = g.order();
            let mut total = 0;
            for v in 0..m {
                t[a * n + b] = Some(v);
                if consistent(g, t, m) {
                    total += count(g, t, &slots[1..], m);
                }
            }
            t[a * n + b] = None;
            total
        }
        let cocycles = count(g, &mut table, &slots, m);
        let mut coboundaries = std::collections::HashSet::new();
        let mut homs = 0;
        let mut b = vec![0u64; n];
        loop {
            let db: Vec<u64> =
                (0..n * n).map(|i| (b[i / n] + b[i % n] + m - b[g.mul(i / n, i % n)]) % m).collect();
            if db.iter().all(|&v| v == 0) {
                homs += 1;
            }
            coboundaries.insert(db);
            // next b with b(e) = 0
            let mut i = 0;
            loop {
                if i == others.len() {
                    return cocycles / coboundaries.len() / homs;
                }
                let x = others[i];
                b[x] = (b[x] + 1) % m;
                if b[x] != 0 {
                    break;
                }
                i += 1;
            }
        }
    }

    #[test]
    fn cocycle_checks() {
        assert!(check_cocycle(&Cocycle2::zero(z2(), 2).unwrap()).is_valid());
        let c = sign_cocycle();
        assert!(check_cocycle(&c).is_valid());
        let mut bad = Cocycle2::zero(klein(), 2).unwrap();
        bad.values[4 + 2] = 1;
        assert!(matches!(check_cocycle(&bad), CocycleVerdict::Violation { .. }));
        let mut unnormal = Cocycle2::zero(z2(), 2).unwrap();
        unnormal.values[0] = 1;
        assert!(matches!(check_cocycle(&unnormal), CocycleVerdict::NotNormalized { .. }));
        assert!(Cocycle2::new(z2(), 1, vec![0; 4]).is_err());
    }

    #[test]
    fn extensions() {
        let direct = build_central_extension(&Cocycle2::zero(z2(), 3).unwrap()).unwrap();
        assert_eq!(direct.group().order(), 6);
        assert!(direct.group().is_abelian());
        let z4 = build_central_extension(&sign_cocycle()).unwrap();
        let lift = z4.element(0, 1 - z4.cocycle().group().identity());
        assert_eq!(z4.group().element_order(lift), 4);
        assert!(z4.is_central_kernel() && z4.is_exact());
        assert!(z4.group().isomorphism_to(&FiniteGroup::cyclic(4)).is_some());
        let mut bad = Cocycle2::zero(klein(), 2).unwrap();
        bad.values[4 + 2] = 1;
        assert!(matches!(build_central_extension(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn cohomologous() {
        let c = sign_cocycle();
        assert_eq!(are_cohomologous(&c, &c).unwrap(), Some(vec![0, 0]));
        assert_eq!(are_cohomologous(&c, &Cocycle2::zero(z2(), 2).unwrap()).unwrap(), None);
        let g = klein();
        let base = classify_anomalies_zero_form(&g, 8).unwrap().representatives[1].clone();
        for b in [[0, 1, 2, 3], [0, 3, 3, 1], [0, 0, 1, 0]] {
            let shifted = base.add_coboundary(&b).unwrap();
            assert!(check_cocycle(&shifted).is_valid());
            let w = are_cohomologous(&base, &shifted).unwrap().expect("cohomologous");
            assert_eq!(base.add_coboundary(&w).unwrap(), shifted);
            let e1 = build_central_extension(&base).unwrap();
            let e2 = build_central_extension(&shifted).unwrap();
            assert!(e1.group().isomorphism_to(e2.group()).is_some());
        }
    }

    #[test]
    fn classification_matches_bar_complex_and_brute_force() {
        let groups = [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
            FiniteGroup::symmetric(3),
        ];
        for g in groups {
            let g = Arc::new(g);
            let c = classify_anomalies_zero_form(&g, 8).unwrap();
            assert!(c.agrees(), "{:?}: {} vs {}", g, c.group, c.predicted);
            assert_eq!(c.group.order().unwrap(), Int::from(brute_force_order(&g)), "{g:?}");
            for r in c.representatives.iter().chain(&c.reduced) {
                assert!(check_cocycle(r).is_valid());
            }
        }
    }

    #[test]
    fn klein_four_has_one_nontrivial_class() {
        let g = klein();
        let c = classify_anomalies_zero_form(&g, 8).unwrap();
        assert_eq!(c.group.to_string(), "Z/2");
        let ext = build_central_extension(&c.representatives[1]).unwrap();
        assert_eq!(ext.group().order(), 16);
        let small = &c.reduced[1];
        assert_eq!(small.modulus(), 2);
        assert!(check_cocycle(small).is_valid());
        let ext8 = build_central_extension(small).unwrap();
        assert_eq!(ext8.group().order(), 8);
        assert!(!ext8.group().is_abelian());
        // two lifts that do not commute
        let (a, b) = (ext8.element(0, 1), ext8.element(0, 2));
        assert_ne!(ext8.group().mul(a, b), ext8.group().mul(b, a));
        // the zero class reduces to the zero table
        assert!(c.reduced[0].values().iter().all(|&v| v == 0));
    }

    #[test]
    fn bounds_and_higher_degrees() {
        let s4 = Arc::new(FiniteGroup::symmetric(4));
        assert!(matches!(classify_anomalies_zero_form(&s4, 8), Err(Error::Budget { .. })));
        assert!(matches!(classify_anomalies(&z2(), 2), Err(Error::Unsupported(_))));
        assert!(classify_anomalies(&Arc::new(FiniteGroup::trivial()), 1).unwrap().group.is_trivial());
    }
}
