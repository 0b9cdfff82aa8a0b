use std::collections::VecDeque;

use super::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Signs of the top simplices relative to their sorted vertex order.
///
/// Stored by vertex tuple, so an orientation of a subcomplex can be read off
/// inside the parent complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    dim: usize,
    facets: Vec<Simplex>,
    signs: Vec<i64>,
}

impl Orientation {
    /// Pairs `(simplex, ±1)` of a common dimension.
    pub fn new(pairs: Vec<(Simplex, i64)>) -> Result<Self> {
        let mut pairs: Vec<(Simplex, i64)> = pairs
            .into_iter()
            .map(|(mut s, e)| {
                s.sort_unstable();
                (s, e)
            })
            .collect();
        pairs.sort();
        let dim = pairs.first().map_or(0, |(s, _)| s.len().saturating_sub(1));
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Validation(format!("simplex {:?} signed twice", w[0].0)));
            }
        }
        for (s, e) in &pairs {
            if s.len() != dim + 1 {
                return Err(Error::Validation("oriented simplices differ in dimension".into()));
            }
            if *e != 1 && *e != -1 {
                return Err(Error::Validation(format!("sign {e} is not ±1")));
            }
        }
        let (facets, signs) = pairs.into_iter().unzip();
        Ok(Orientation { dim, facets, signs })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn sign_of(&self, s: &[usize]) -> Option<i64> {
        self.facets.binary_search_by(|f| f.as_slice().cmp(s)).ok().map(|i| self.signs[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], i64)> {
        self.facets.iter().map(|f| f.as_slice()).zip(self.signs.iter().copied())
    }

    pub fn negated(&self) -> Self {
        Orientation { dim: self.dim, facets: self.facets.clone(), signs: self.signs.iter().map(|s| -s).collect() }
    }

    /// Whether the signed sum of the top simplices of `x` is a cycle and every
    /// top simplex is signed.
    pub fn is_fundamental_cycle_of(&self, x: &SimplicialComplex) -> bool {
        if x.dimension() != Some(self.dim) || x.count(self.dim) != self.facets.len() {
            return false;
        }
        if x.ids_of_dim(self.dim).any(|t| self.sign_of(x.simplex(t)).is_none()) {
            return false;
        }
        if self.dim == 0 {
            return true;
        }
        x.ids_of_dim(self.dim - 1).all(|f| {
            let total: i64 = x
                .cofaces(f)
                .iter()
                .map(|&t| {
                    let inc = x.faces(t).into_iter().find(|&(g, _)| g == f).map(|(_, e)| e).unwrap();
                    inc * self.sign_of(x.simplex(t)).unwrap()
                })
                .sum();
            total == 0
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrientOutcome {
    Oriented(Orientation),
    /// A closed chain of adjacent top simplices along which the signs cannot
    /// be chosen consistently.
    NonOrientable { witness: Vec<Simplex> },
}

impl OrientOutcome {
    pub fn orientation(self) -> Option<Orientation> {
        match self {
            OrientOutcome::Oriented(o) => Some(o),
            OrientOutcome::NonOrientable { .. } => None,
        }
    }
}

/// Every `(d-1)`-simplex lies in exactly two `d`-simplices, every simplex
/// lies in a `d`-simplex, and the top simplices are connected through shared
/// faces. For `d = 0` this means a single vertex.
pub fn check_closed_pseudomanifold(x: &SimplicialComplex, d: usize) -> bool {
    if x.dimension() != Some(d) {
        return false;
    }
    if d == 0 {
        return x.len() == 1;
    }
    if x.facets().iter().any(|&f| x.dim_of(f) != d) {
        return false;
    }
    if x.ids_of_dim(d - 1).any(|f| x.cofaces(f).len() != 2) {
        return false;
    }
    let tops = x.ids_of_dim(d);
    let mut seen = vec![false; x.len()];
    let mut queue = VecDeque::from([tops.start]);
    seen[tops.start] = true;
    let mut reached = 1;
    while let Some(t) = queue.pop_front() {
        for (f, _) in x.faces(t) {
            for &u in x.cofaces(f) {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
    }
    reached == tops.len()
}

/// Propagates signs across shared faces from the first top simplex.
pub fn orient(x: &SimplicialComplex) -> Result<OrientOutcome> {
    let d = x.dimension().ok_or_else(|| Error::Precondition("the empty complex has no orientation".into()))?;
    if !check_closed_pseudomanifold(x, d) {
        return Err(Error::Precondition("complex is not a closed connected pseudomanifold".into()));
    }
    let tops = x.ids_of_dim(d);
    if d == 0 {
        return Ok(OrientOutcome::Oriented(Orientation::new(vec![(x.simplex(tops.start).to_vec(), 1)])?));
    }
    let mut sign = vec![0i64; x.len()];
    let mut parent = vec![usize::MAX; x.len()];
    sign[tops.start] = 1;
    let mut queue = VecDeque::from([tops.start]);
    while let Some(t) = queue.pop_front() {
        for (f, inc) in x.faces(t) {
            let &u = x.cofaces(f).iter().find(|&&u| u != t).expect("two cofaces");
            let inc_u = x.faces(u).into_iter().find(|&(g, _)| g == f).map(|(_, e)| e).unwrap();
            let want = -sign[t] * inc * inc_u;
            if sign[u] == 0 {
                sign[u] = want;
                parent[u] = t;
                queue.push_back(u);
            } else if sign[u] != want {
                return Ok(OrientOutcome::NonOrientable { witness: witness_cycle(x, &parent, t, u) });
            }
        }
    }
    let pairs = tops.map(|t| (x.simplex(t).to_vec(), sign[t])).collect();
    let o = Orientation::new(pairs)?;
    debug_assert!(o.is_fundamental_cycle_of(x));
    Ok(OrientOutcome::Oriented(o))
}

fn witness_cycle(x: &SimplicialComplex, parent: &[usize], a: usize, b: usize) -> Vec<Simplex> {
    let path = |mut v: usize| {
        let mut p = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let pa = path(a);
    let pb = path(b);
    let common = pa.iter().find(|v| pb.contains(v)).copied().unwrap();
    let mut cycle: Vec<usize> = pa.iter().copied().take_while(|&v| v != common).collect();
    cycle.push(common);
    let back: Vec<usize> = pb.iter().copied().take_while(|&v| v != common).collect();
    cycle.extend(back.into_iter().rev());
    cycle.into_iter().map(|t| x.simplex(t).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_of_simplex, build_complex, library};

    #[test]
    fn spheres_orient() {
        for d in 1..=3 {
            let x = boundary_of_simplex(d);
            assert!(check_closed_pseudomanifold(&x, d));
            let o = orient(&x).unwrap().orientation().expect("sphere is orientable");
            assert!(o.is_fundamental_cycle_of(&x));
            assert!(o.negated().is_fundamental_cycle_of(&x));
        }
    }

    #[test]
    fn triangle_circle_signs() {
        let x = library("S1tri").unwrap();
        let o = orient(&x).unwrap().orientation().unwrap();
        // 0 -> 1 -> 2 -> 0 traverses [0,2] backwards
        assert_eq!(o.sign_of(&[0, 1]), Some(1));
        assert_eq!(o.sign_of(&[1, 2]), Some(1));
        assert_eq!(o.sign_of(&[0, 2]), Some(-1));
    }

    #[test]
    fn nonorientable_surfaces() {
        for name in ["K2", "RP2"] {
            let x = library(name).unwrap();
            assert!(check_closed_pseudomanifold(&x, 2));
            match orient(&x).unwrap() {
                OrientOutcome::NonOrientable { witness } => {
                    assert!(witness.len() >= 3);
                    for w in witness.windows(2) {
                        let shared = w[0].iter().filter(|v| w[1].contains(v)).count();
                        assert_eq!(shared, 2, "consecutive witness triangles share an edge");
                    }
                }
                OrientOutcome::Oriented(_) => panic!("{name} oriented"),
            }
        }
    }

    #[test]
    fn pseudomanifold_checks() {
        assert!(check_closed_pseudomanifold(&library("T2").unwrap(), 2));
        let tri = build_complex(&[vec![0, 1, 2]]).unwrap();
        assert!(!check_closed_pseudomanifold(&tri, 2));
        assert!(matches!(orient(&tri), Err(Error::Precondition(_))));
        let two_circles = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]]).unwrap();
        assert!(!check_closed_pseudomanifold(&two_circles, 1));
        assert!(check_closed_pseudomanifold(&build_complex(&[vec![4]]).unwrap(), 0));
        assert!(!check_closed_pseudomanifold(&build_complex(&[vec![0], vec![1]]).unwrap(), 0));
    }

    #[test]
    fn orientation_validation() {
        assert!(Orientation::new(vec![(vec![0, 1], 2)]).is_err());
        assert!(Orientation::new(vec![(vec![0, 1], 1), (vec![1, 0], 1)]).is_err());
        let o = Orientation::new(vec![(vec![1, 0], -1)]).unwrap();
        assert_eq!(o.sign_of(&[0, 1]), Some(-1));
    }
}
