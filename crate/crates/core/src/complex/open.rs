use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use super::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

fn same_parent(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ParentMismatch)
    }
}

/// An up-closed set of simplices: the union of the open stars of its
/// minimal members.
#[derive(Clone)]
pub struct StarOpen {
    parent: Arc<SimplicialComplex>,
    members: Vec<bool>,
}

impl StarOpen {
    pub fn whole(parent: &Arc<SimplicialComplex>) -> Self {
        StarOpen { parent: parent.clone(), members: vec![true; parent.len()] }
    }

    pub fn empty(parent: &Arc<SimplicialComplex>) -> Self {
        StarOpen { parent: parent.clone(), members: vec![false; parent.len()] }
    }

    /// Up-closure of the given simplex ids.
    pub fn generated(parent: &Arc<SimplicialComplex>, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut members = vec![false; parent.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for id in ids {
            assert!(id < parent.len(), "simplex id {id} out of range");
            if !members[id] {
                members[id] = true;
                queue.push_back(id);
            }
        }
        while let Some(s) = queue.pop_front() {
            for &c in parent.cofaces(s) {
                if !members[c] {
                    members[c] = true;
                    queue.push_back(c);
                }
            }
        }
        StarOpen { parent: parent.clone(), members }
    }

    /// Up-closure of simplices given as vertex tuples.
    pub fn star_of(parent: &Arc<SimplicialComplex>, generators: &[Simplex]) -> Result<Self> {
        let ids = generators
            .iter()
            .map(|s| parent.id_of(s).ok_or_else(|| Error::Validation(format!("{s:?} is not a simplex of the complex"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generated(parent, ids))
    }

    /// Checks up-closedness of an explicit member mask.
    pub fn from_mask(parent: &Arc<SimplicialComplex>, members: Vec<bool>) -> Result<Self> {
        if members.len() != parent.len() {
            return Err(Error::Validation("membership mask has the wrong length".into()));
        }
        for (s, &m) in members.iter().enumerate() {
            if m {
                if let Some(&c) = parent.cofaces(s).iter().find(|&&c| !members[c]) {
                    return Err(Error::Validation(format!(
                        "{:?} is a member but its coface {:?} is not",
                        parent.simplex(s),
                        parent.simplex(c)
                    )));
                }
            }
        }
        Ok(StarOpen { parent: parent.clone(), members })
    }

    pub fn parent(&self) -> &Arc<SimplicialComplex> {
        &self.parent
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members[id]
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    /// Member ids in increasing order.
    pub fn members(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    /// Member ids of dimension `n`.
    pub fn members_of_dim(&self, n: usize) -> Vec<usize> {
        self.parent.ids_of_dim(n).filter(|&i| self.members[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn is_whole(&self) -> bool {
        self.members.iter().all(|&m| m)
    }

    /// Members none of whose faces are members.
    pub fn minimal_members(&self) -> Vec<usize> {
        self.members().into_iter().filter(|&s| self.parent.faces(s).iter().all(|&(f, _)| !self.members[f])).collect()
    }

    /// Minimal members as vertex tuples, for reports.
    pub fn generators(&self) -> Vec<Simplex> {
        self.minimal_members().into_iter().map(|s| self.parent.simplex(s).to_vec()).collect()
    }

    fn combine(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Result<Self> {
        same_parent(&self.parent, &other.parent)?;
        let members = self.members.iter().zip(&other.members).map(|(&a, &b)| f(a, b)).collect();
        Ok(StarOpen { parent: self.parent.clone(), members })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a || b)
    }

    pub fn union_all<'a>(parent: &Arc<SimplicialComplex>, opens: impl IntoIterator<Item = &'a StarOpen>) -> Result<Self> {
        let mut acc = Self::empty(parent);
        for u in opens {
            acc = acc.union(u)?;
        }
        Ok(acc)
    }

    pub fn complement(&self) -> Subcomplex {
        Subcomplex { parent: self.parent.clone(), members: self.members.iter().map(|&m| !m).collect() }
    }

    /// First shared simplex, if any.
    pub fn overlap(&self, other: &Self) -> Result<Option<usize>> {
        same_parent(&self.parent, &other.parent)?;
        Ok((0..self.members.len()).find(|&i| self.members[i] && other.members[i]))
    }

    pub fn disjoint(&self, other: &Self) -> Result<bool> {
        Ok(self.overlap(other)?.is_none())
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        same_parent(&self.parent, &other.parent)?;
        Ok(self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b))
    }

    /// First member of `self` missing from `other`.
    pub fn first_outside(&self, other: &Self) -> Result<Option<usize>> {
        same_parent(&self.parent, &other.parent)?;
        Ok((0..self.members.len()).find(|&i| self.members[i] && !other.members[i]))
    }

    /// Whether every simplex of `k` is a member.
    pub fn contains_subcomplex(&self, k: &Subcomplex) -> Result<bool> {
        same_parent(&self.parent, &k.parent)?;
        Ok(k.members.iter().zip(&self.members).all(|(&a, &b)| !a || b))
    }

    /// The same open seen in the barycentric subdivision `sd` of the parent:
    /// chains whose largest simplex is a member.
    pub fn refine(&self, sd: &Arc<SimplicialComplex>) -> StarOpen {
        let members = sd.simplices().iter().map(|chain| self.members[*chain.last().expect("nonempty chain")]).collect();
        StarOpen { parent: sd.clone(), members }
    }
}

impl PartialEq for StarOpen {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent) && self.members == other.members
    }
}

impl Eq for StarOpen {}

impl fmt::Debug for StarOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StarOpen{:?}", self.generators())
    }
}

/// A down-closed set of simplices of a parent complex.
#[derive(Clone)]
pub struct Subcomplex {
    parent: Arc<SimplicialComplex>,
    members: Vec<bool>,
}

impl Subcomplex {
    /// Down-closure of the given simplex ids.
    pub fn closure(parent: &Arc<SimplicialComplex>, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut members = vec![false; parent.len()];
        let mut stack: Vec<usize> = Vec::new();
        for id in ids {
            if !members[id] {
                members[id] = true;
                stack.push(id);
            }
        }
        while let Some(s) = stack.pop() {
            for (f, _) in parent.faces(s) {
                if !members[f] {
                    members[f] = true;
                    stack.push(f);
                }
            }
        }
        Subcomplex { parent: parent.clone(), members }
    }

    /// Down-closure of simplices given as vertex tuples.
    pub fn spanned_by(parent: &Arc<SimplicialComplex>, facets: &[Simplex]) -> Result<Self> {
        let ids = facets
            .iter()
            .map(|s| parent.id_of(s).ok_or_else(|| Error::Validation(format!("{s:?} is not a simplex of the complex"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::closure(parent, ids))
    }

    /// All simplices whose vertices lie in `vertices`.
    pub fn full(parent: &Arc<SimplicialComplex>, vertices: &[usize]) -> Self {
        let members = parent.simplices().iter().map(|s| s.iter().all(|v| vertices.contains(v))).collect();
        Subcomplex { parent: parent.clone(), members }
    }

    pub fn empty(parent: &Arc<SimplicialComplex>) -> Self {
        Subcomplex { parent: parent.clone(), members: vec![false; parent.len()] }
    }

    pub fn parent(&self) -> &Arc<SimplicialComplex> {
        &self.parent
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members[id]
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn is_down_closed(&self) -> bool {
        self.members().into_iter().all(|s| self.parent.faces(s).iter().all(|&(f, _)| self.members[f]))
    }

    /// Regular open neighborhood: the up-closure of the members.
    pub fn star(&self) -> StarOpen {
        StarOpen::generated(&self.parent, self.members())
    }

    /// The complement, an open.
    pub fn complement(&self) -> StarOpen {
        StarOpen { parent: self.parent.clone(), members: self.members.iter().map(|&m| !m).collect() }
    }

    /// Standalone complex on the same vertex labels.
    pub fn to_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_closed(self.members().into_iter().map(|s| self.parent.simplex(s).to_vec()).collect())
    }

    /// Connected components as subcomplexes, ordered by least vertex.
    pub fn components(&self) -> Vec<Subcomplex> {
        self.to_complex()
            .components()
            .into_iter()
            .map(|vs| {
                let members = self
                    .parent
                    .simplices()
                    .iter()
                    .enumerate()
                    .map(|(i, s)| self.members[i] && vs.contains(&s[0]))
                    .collect();
                Subcomplex { parent: self.parent.clone(), members }
            })
            .collect()
    }
}

impl PartialEq for Subcomplex {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent) && self.members == other.members
    }
}

impl Eq for Subcomplex {}

impl fmt::Debug for Subcomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.to_complex();
        let facets: Vec<&[usize]> = k.facets().into_iter().map(|i| k.simplex(i)).collect();
        write!(f, "Subcomplex{facets:?}")
    }
}

/// Order complex of the member poset of `u`. Its vertex labels are simplex
/// ids of the parent. Homotopy equivalent to `u`.
pub fn nerve_model(u: &StarOpen) -> SimplicialComplex {
    let x = &u.parent;
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let mut chain: Vec<usize> = Vec::new();
    fn extend(x: &SimplicialComplex, chain: &mut Vec<usize>, facets: &mut Vec<Vec<usize>>) {
        let top = *chain.last().unwrap();
        let up = x.cofaces(top);
        if up.is_empty() {
            facets.push(chain.clone());
            return;
        }
        for &c in up {
            chain.push(c);
            extend(x, chain, facets);
            chain.pop();
        }
    }
    for m in u.minimal_members() {
        chain.push(m);
        extend(x, &mut chain, &mut facets);
        chain.pop();
    }
    SimplicialComplex::from_facets(facets).expect("chains are strictly increasing")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_of_simplex, library};
    use proptest::prelude::*;

    fn hexagon() -> Arc<SimplicialComplex> {
        Arc::new(library("S1hex").unwrap())
    }

    #[test]
    fn vertex_star_in_triangle() {
        let s1 = Arc::new(library("S1tri").unwrap());
        let u = StarOpen::star_of(&s1, &[vec![0]]).unwrap();
        let got: Vec<&[usize]> = u.members().into_iter().map(|i| s1.simplex(i)).collect();
        assert_eq!(got, vec![&[0][..], &[0, 1], &[0, 2]]);
        assert_eq!(u.generators(), vec![vec![0]]);
        assert!(StarOpen::star_of(&s1, &[vec![0, 5]]).is_err());
    }

    #[test]
    fn whole_and_empty() {
        let x = hexagon();
        let all: Vec<usize> = (0..x.len()).collect();
        assert!(StarOpen::generated(&x, all).is_whole());
        assert!(StarOpen::whole(&x).complement().is_empty());
        let u = StarOpen::star_of(&x, &[vec![2]]).unwrap();
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert!(u.disjoint(&StarOpen::empty(&x)).unwrap());
        assert!(!u.disjoint(&u).unwrap());
    }

    #[test]
    fn opposite_vertices_of_hexagon() {
        let x = hexagon();
        let a = StarOpen::star_of(&x, &[vec![0]]).unwrap();
        let b = StarOpen::star_of(&x, &[vec![3]]).unwrap();
        assert!(a.intersect(&b).unwrap().is_empty());
        assert!(a.disjoint(&b).unwrap());
        let c = StarOpen::star_of(&x, &[vec![1]]).unwrap();
        assert_eq!(a.overlap(&c).unwrap(), x.id_of(&[0, 1]));
    }

    #[test]
    fn parent_mismatch() {
        let a = StarOpen::whole(&hexagon());
        let b = StarOpen::whole(&Arc::new(boundary_of_simplex(2)));
        assert_eq!(a.intersect(&b), Err(Error::ParentMismatch));
    }

    #[test]
    fn mask_must_be_up_closed() {
        let x = hexagon();
        let mut m = vec![false; x.len()];
        m[0] = true;
        assert!(StarOpen::from_mask(&x, m).is_err());
    }

    #[test]
    fn nerve_of_vertex_star_is_cone() {
        let x = Arc::new(boundary_of_simplex(2));
        let u = StarOpen::star_of(&x, &[vec![0]]).unwrap();
        let n = nerve_model(&u);
        // apex [0] joined to the hexagon-like link of 3 edges and 3 triangles
        assert_eq!(n.f_vector(), vec![7, 12, 6]);
        assert_eq!(n.euler_characteristic(), 1);
    }

    #[test]
    fn components_of_subcomplex() {
        let x = Arc::new(library("T2grid").unwrap());
        let rows = Subcomplex::full(&x, &[0, 1, 2, 6, 7, 8]);
        let parts = rows.components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].to_complex().vertices(), vec![0, 1, 2]);
        assert_eq!(parts[1].to_complex().vertices(), vec![6, 7, 8]);
    }

    #[test]
    fn refine_keeps_open_edge_points() {
        let x = hexagon();
        let e = StarOpen::star_of(&x, &[vec![0, 1]]).unwrap();
        assert!(e.minimal_members().iter().all(|&s| x.dim_of(s) == 1));
        let sd = Arc::new(crate::complex::barycentric_subdivide(&x));
        let r = e.refine(&sd);
        // the barycenter vertex and the two half edges
        assert_eq!(r.len(), 3);
        assert_eq!(r.members_of_dim(0).len(), 1);
    }

    fn random_open(x: Arc<SimplicialComplex>) -> impl Strategy<Value = StarOpen> {
        let n = x.len();
        proptest::collection::vec(0..n, 0..4).prop_map(move |ids| StarOpen::generated(&x, ids))
    }

    fn three_opens() -> impl Strategy<Value = (StarOpen, StarOpen, StarOpen)> {
        prop_oneof![Just("S1hex"), Just("S2tet"), Just("T2")].prop_flat_map(|name| {
            let x = Arc::new(library(name).unwrap());
            (random_open(x.clone()), random_open(x.clone()), random_open(x))
        })
    }

    proptest! {
        #[test]
        fn lattice_laws((a, b, c) in three_opens()) {
            prop_assert_eq!(a.intersect(&a).unwrap(), a.clone());
            prop_assert_eq!(a.union(&a).unwrap(), a.clone());
            prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
            prop_assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
            prop_assert_eq!(
                a.intersect(&b).unwrap().intersect(&c).unwrap(),
                a.intersect(&b.intersect(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.union(&b).unwrap().union(&c).unwrap(), a.union(&b.union(&c).unwrap()).unwrap());
            prop_assert_eq!(a.union(&a.intersect(&b).unwrap()).unwrap(), a.clone());
            prop_assert_eq!(a.intersect(&a.union(&b).unwrap()).unwrap(), a.clone());
        }

        #[test]
        fn complement_and_generator_round_trip((a, b, _c) in three_opens()) {
            let u = a.intersect(&b).unwrap().union(&a).unwrap();
            prop_assert!(u.complement().is_down_closed());
            prop_assert!(StarOpen::from_mask(u.parent(), u.mask().to_vec()).is_ok());
            prop_assert_eq!(StarOpen::generated(u.parent(), u.minimal_members()), u.clone());
            prop_assert_eq!(u.complement().complement(), u);
        }
    }
}
