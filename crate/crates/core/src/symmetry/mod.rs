//! Prefactorization algebras of higher-form symmetries at the level of
//! homotopy groups.
//!
//! The q-form symmetry algebra assigns `H^{q+1}_c(U; A)` to a star-open `U`.
//! Extension by zero makes it covariant for inclusions, and disjoint opens
//! inside a common open combine through the structure maps
//! `⊕ F(U_i) -> F(V)`.

mod algebra;
mod morphism;
mod operator;
mod product;
mod zero_form;

use std::sync::Arc;

use crate::abelian::{DirectSum, FGAbelianGroup, GroupHom};
use rand::Rng;

use crate::complex::{SimplicialComplex, StarOpen, Subcomplex};
use crate::error::{Error, Result};
use crate::IntMatrix;

pub use algebra::QFormAlgebra;
pub use morphism::{check_prefactorization_morphism, Configuration, MorphismVerdict, PrefactorizationMap};
pub use operator::{compare_in, defect_operator, fuse, fuse_into, DefectLabel, SymmetryOperator};
pub use product::{PostnikovKind, ProductTargetAlgebra};
pub use zero_form::{CollarSide, ZeroFormOperator};

/// Values on star-opens with covariant extension maps.
pub trait Prefactorization {
    fn complex(&self) -> &Arc<SimplicialComplex>;

    fn value(&self, u: &StarOpen) -> Result<FGAbelianGroup>;

    /// `F(U) -> F(V)` for `U ⊆ V`.
    fn extension(&self, u: &StarOpen, v: &StarOpen) -> Result<GroupHom>;
}

/// `⊕ F(U_i) -> F(V)` together with the summand structure of its source.
#[derive(Clone, Debug)]
pub struct StructureMap {
    pub sum: DirectSum,
    pub map: GroupHom,
}

impl StructureMap {
    /// Image of a tuple of elements, one per input open.
    pub fn apply_parts(&self, parts: &[Vec<crate::Int>]) -> Vec<crate::Int> {
        self.map.apply(&self.sum.combine(parts))
    }
}

fn check_parent<F: Prefactorization + ?Sized>(f: &F, u: &StarOpen) -> Result<()> {
    if Arc::ptr_eq(f.complex(), u.parent()) || **f.complex() == **u.parent() {
        Ok(())
    } else {
        Err(Error::ParentMismatch)
    }
}

/// Checks pairwise disjointness, reporting the first shared simplex.
pub fn check_disjoint(opens: &[StarOpen]) -> Result<()> {
    for (i, a) in opens.iter().enumerate() {
        for b in &opens[i + 1..] {
            if let Some(s) = a.overlap(b)? {
                return Err(Error::Overlap { witness: format!("{:?}", a.parent().simplex(s)) });
            }
        }
    }
    Ok(())
}

fn check_nested(u: &StarOpen, v: &StarOpen) -> Result<()> {
    match u.first_outside(v)? {
        Some(s) => Err(Error::NotNested(format!("simplex {:?} lies outside the larger open", u.parent().simplex(s)))),
        None => Ok(()),
    }
}

/// The structure map `m_V^{U_1 ... U_n}`: the sum of the extension maps.
/// With no inputs this is the zero map out of the zero group.
pub fn structure_map<F: Prefactorization + ?Sized>(f: &F, inputs: &[StarOpen], v: &StarOpen) -> Result<StructureMap> {
    check_parent(f, v)?;
    for u in inputs {
        check_parent(f, u)?;
        check_nested(u, v)?;
    }
    check_disjoint(inputs)?;
    let target = f.value(v)?;
    let values = inputs.iter().map(|u| f.value(u)).collect::<Result<Vec<_>>>()?;
    let sum = FGAbelianGroup::direct_sum(&values);
    let legs = inputs.iter().map(|u| f.extension(u, v)).collect::<Result<Vec<_>>>()?;
    let map = sum.copair(&legs, &target)?;
    Ok(StructureMap { sum, map })
}

/// A two-level nesting `U_{i,j} ⊆ V_i ⊆ W`.
#[derive(Clone, Debug)]
pub struct Nesting {
    pub outer: StarOpen,
    pub levels: Vec<(StarOpen, Vec<StarOpen>)>,
}

#[derive(Clone, Debug)]
pub struct CoherenceVerdict {
    pub commutes: bool,
    /// `⊕ F(U_ij) -> ⊕ F(V_i) -> F(W)`
    pub composite: IntMatrix,
    /// `⊕ F(U_ij) -> F(W)`
    pub direct: IntMatrix,
    pub counterexample: Option<String>,
}

/// Compares the two ways of mapping `⊕ F(U_ij)` into `F(W)`.
pub fn check_coherence<F: Prefactorization + ?Sized>(f: &F, nesting: &Nesting) -> Result<CoherenceVerdict> {
    let middle_opens: Vec<StarOpen> = nesting.levels.iter().map(|(v, _)| v.clone()).collect();
    let second = structure_map(f, &middle_opens, &nesting.outer)?;
    let mut first_legs = Vec::new();
    let mut flat_opens = Vec::new();
    for (i, (v, us)) in nesting.levels.iter().enumerate() {
        let inner = structure_map(f, us, v)?;
        for (j, u) in us.iter().enumerate() {
            let leg = inner.sum.injections[j].then(&inner.map)?.then(&second.sum.injections[i])?;
            first_legs.push(leg);
            flat_opens.push(u.clone());
        }
    }
    let direct = structure_map(f, &flat_opens, &nesting.outer)?;
    let first = direct.sum.copair(&first_legs, &second.sum.group)?;
    let composite = first.then(&second.map)?;
    let commutes = composite.matrix() == direct.map.matrix();
    let counterexample = (!commutes).then(|| {
        let c = (0..composite.matrix().ncols())
            .find(|&c| composite.matrix().column(c) != direct.map.matrix().column(c))
            .expect("differing column");
        format!(
            "generator {c} of the source maps to {:?} through the middle level and to {:?} directly",
            composite.matrix().column(c),
            direct.map.matrix().column(c)
        )
    });
    Ok(CoherenceVerdict {
        commutes,
        composite: composite.matrix().clone(),
        direct: direct.map.matrix().clone(),
        counterexample,
    })
}

/// Whether the structure map is unchanged by reordering its inputs:
/// `perm[k]` is the position in `inputs` of the `k`-th permuted input.
pub fn permutation_invariant<F: Prefactorization + ?Sized>(
    f: &F,
    inputs: &[StarOpen],
    v: &StarOpen,
    perm: &[usize],
) -> Result<bool> {
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..inputs.len()).collect::<Vec<_>>() {
        return Err(Error::Validation("not a permutation of the inputs".into()));
    }
    let original = structure_map(f, inputs, v)?;
    let permuted_inputs: Vec<StarOpen> = perm.iter().map(|&i| inputs[i].clone()).collect();
    let permuted = structure_map(f, &permuted_inputs, v)?;
    for (k, &i) in perm.iter().enumerate() {
        let a = original.sum.injections[i].then(&original.map)?;
        let b = permuted.sum.injections[k].then(&permuted.map)?;
        if a.matrix() != b.matrix() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random two-level nesting inside the whole complex: stars of random
/// simplices, grouped into disjoint middle opens, each padded out to the star
/// of its closure when that stays disjoint from the other levels.
pub fn random_nesting<R: Rng + ?Sized>(x: &Arc<SimplicialComplex>, rng: &mut R) -> Nesting {
    let mut taken = StarOpen::empty(x);
    let mut levels = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut inner: Vec<StarOpen> = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let u = StarOpen::generated(x, [rng.gen_range(0..x.len())]);
            if u.disjoint(&taken).expect("same parent") && inner.iter().all(|v| v.disjoint(&u).expect("same parent")) {
                inner.push(u);
            }
        }
        if inner.is_empty() {
            continue;
        }
        let tight = StarOpen::union_all(x, &inner).expect("same parent");
        let padded = StarOpen::generated(x, Subcomplex::closure(x, tight.members()).members());
        let mid = if padded.disjoint(&taken).expect("same parent") { padded } else { tight };
        taken = taken.union(&mid).expect("same parent");
        levels.push((mid, inner));
    }
    Nesting { outer: StarOpen::whole(x), levels }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::library;
    use crate::Int;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hexagon_algebra(a: FGAbelianGroup) -> QFormAlgebra {
        QFormAlgebra::new(Arc::new(library("S1hex").unwrap()), 0, a).unwrap()
    }

    fn edge(f: &QFormAlgebra, a: usize, b: usize) -> StarOpen {
        StarOpen::star_of(f.complex(), &[vec![a, b]]).unwrap()
    }

    #[test]
    fn empty_and_single_inputs() {
        let f = hexagon_algebra(FGAbelianGroup::integers());
        let arc = StarOpen::star_of(f.complex(), &[vec![1], vec![2]]).unwrap();
        let none = structure_map(&f, &[], &arc).unwrap();
        assert!(none.sum.group.is_trivial());
        assert!(none.map.is_zero());
        let e = edge(&f, 1, 2);
        let one = structure_map(&f, std::slice::from_ref(&e), &arc).unwrap();
        assert_eq!(one.map.matrix(), f.extension(&e, &arc).unwrap().matrix());
    }

    #[test]
    fn two_edges_into_an_arc_add() {
        let f = hexagon_algebra(FGAbelianGroup::integers());
        let arc = StarOpen::star_of(f.complex(), &[vec![1], vec![2], vec![3]]).unwrap();
        let e1 = edge(&f, 1, 2);
        let e2 = edge(&f, 2, 3);
        let m = structure_map(&f, &[e1.clone(), e2.clone()], &arc).unwrap();
        let g1 = f.extension(&e1, &arc).unwrap();
        let g2 = f.extension(&e2, &arc).unwrap();
        // both bump classes are the arc generator up to the same sign
        assert_eq!(g1.matrix(), g2.matrix());
        let x = m.apply_parts(&[vec![Int::from(3)], vec![Int::from(4)]]);
        assert_eq!(x, g1.apply(&[Int::from(7)]));
    }

    #[test]
    fn overlap_and_containment_errors() {
        let f = hexagon_algebra(FGAbelianGroup::cyclic(2));
        let whole = StarOpen::whole(f.complex());
        let a = StarOpen::star_of(f.complex(), &[vec![0]]).unwrap();
        let b = StarOpen::star_of(f.complex(), &[vec![1]]).unwrap();
        assert!(matches!(structure_map(&f, &[a.clone(), b.clone()], &whole), Err(Error::Overlap { .. })));
        assert!(matches!(structure_map(&f, std::slice::from_ref(&whole), &a), Err(Error::NotNested(_))));
    }

    #[test]
    fn three_edges_in_two_arcs() {
        let f = hexagon_algebra(FGAbelianGroup::integers());
        let x = f.complex().clone();
        let v1 = StarOpen::star_of(&x, &[vec![0], vec![1], vec![2]]).unwrap();
        let v2 = StarOpen::star_of(&x, &[vec![4]]).unwrap();
        let nesting = Nesting {
            outer: StarOpen::whole(&x),
            levels: vec![(v1, vec![edge(&f, 0, 1), edge(&f, 1, 2)]), (v2, vec![edge(&f, 3, 4)])],
        };
        let v = check_coherence(&f, &nesting).unwrap();
        assert!(v.commutes, "{:?}", v.counterexample);
        assert_eq!(v.direct.shape(), (1, 3));
    }

    #[test]
    fn degenerate_nesting() {
        let f = hexagon_algebra(FGAbelianGroup::cyclic(3));
        let x = f.complex().clone();
        let w = StarOpen::star_of(&x, &[vec![0], vec![1]]).unwrap();
        let nesting = Nesting { outer: w.clone(), levels: vec![(w.clone(), vec![edge(&f, 0, 1)])] };
        assert!(check_coherence(&f, &nesting).unwrap().commutes);
    }

    fn nested_configurations() -> impl Strategy<Value = (QFormAlgebra, Nesting, Vec<usize>)> {
        (prop_oneof![Just(("S1hex", 0usize)), Just(("T2", 0)), Just(("T2", 1))], 0u64..4, any::<u64>()).prop_map(
            |((name, q), m, seed)| {
                let x = Arc::new(library(name).unwrap());
                let f = QFormAlgebra::new(x.clone(), q, FGAbelianGroup::cyclic(m)).unwrap();
                let nesting = random_nesting(&x, &mut ChaCha8Rng::seed_from_u64(seed));
                let n = nesting.levels.iter().map(|(_, u)| u.len()).sum::<usize>();
                let mut perm: Vec<usize> = (0..n).collect();
                perm.rotate_left((seed % (n.max(1) as u64)) as usize);
                (f, nesting, perm)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn random_nestings_commute((f, nesting, perm) in nested_configurations()) {
            let v = check_coherence(&f, &nesting).unwrap();
            prop_assert!(v.commutes, "{:?}", v.counterexample);
            let flat: Vec<StarOpen> = nesting.levels.iter().flat_map(|(_, u)| u.clone()).collect();
            prop_assert!(permutation_invariant(&f, &flat, &nesting.outer, &perm).unwrap());
        }
    }
}
