//! Finite abstract simplicial complexes and the calculus of star-opens.
//!
//! Simplices are strictly increasing vertex tuples. Every complex assigns its
//! simplices global ids ordered by dimension and then lexicographically, so
//! boundary matrices and reports are deterministic.

mod library;
mod open;
mod orient;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use library::{boundary_of_simplex, library, library_names, torus_grid};
pub use open::{nerve_model, StarOpen, Subcomplex};
pub use orient::{check_closed_pseudomanifold, orient, OrientOutcome, Orientation};

/// A simplex as its sorted vertex tuple.
pub type Simplex = Vec<usize>;

#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    /// `dim_start[n]..dim_start[n + 1]` are the ids of the `n`-simplices.
    dim_start: Vec<usize>,
    index: HashMap<Simplex, usize>,
    cofaces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Face closure of a list of facets. Vertices are arbitrary labels.
    pub fn from_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        let mut all: BTreeSet<(usize, Simplex)> = BTreeSet::new();
        for (i, f) in facets.into_iter().enumerate() {
            let f = f.as_ref();
            if f.is_empty() {
                return Err(Error::Validation(format!("facet {i} is empty")));
            }
            let mut s = f.to_vec();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Validation(format!("facet {f:?} repeats a vertex")));
            }
            if s.len() > 20 {
                return Err(Error::Validation(format!("facet {f:?} has dimension above 19")));
            }
            if all.contains(&(s.len() - 1, s.clone())) {
                continue;
            }
            for mask in 1u32..(1u32 << s.len()) {
                let face: Simplex = s.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &v)| v).collect();
                all.insert((face.len() - 1, face));
            }
        }
        Ok(Self::from_closed(all.into_iter().map(|(_, s)| s).collect()))
    }

    /// `simplices` must be face closed and sorted by dimension then lexicographically.
    fn from_closed(simplices: Vec<Simplex>) -> Self {
        let mut dim_start = vec![0];
        for (i, s) in simplices.iter().enumerate() {
            while dim_start.len() < s.len() {
                dim_start.push(i);
            }
        }
        dim_start.push(simplices.len());
        if simplices.is_empty() {
            dim_start = vec![0];
        }
        let index: HashMap<Simplex, usize> = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut cofaces = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            for j in 0..s.len() {
                let mut f = s.clone();
                f.remove(j);
                cofaces[index[&f]].push(i);
            }
        }
        for c in &mut cofaces {
            c.sort_unstable();
        }
        SimplicialComplex { simplices, dim_start, index, cofaces }
    }

    pub fn empty() -> Self {
        Self::from_closed(Vec::new())
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        (self.dim_start.len() >= 2).then(|| self.dim_start.len() - 2)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    /// Vertex labels in increasing order.
    pub fn vertices(&self) -> Vec<usize> {
        self.ids_of_dim(0).map(|i| self.simplices[i][0]).collect()
    }

    pub fn count(&self, n: usize) -> usize {
        self.ids_of_dim(n).len()
    }

    pub fn ids_of_dim(&self, n: usize) -> Range<usize> {
        if n + 1 < self.dim_start.len() {
            self.dim_start[n]..self.dim_start[n + 1]
        } else {
            self.simplices.len()..self.simplices.len()
        }
    }

    pub fn simplex(&self, id: usize) -> &[usize] {
        &self.simplices[id]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn dim_of(&self, id: usize) -> usize {
        self.simplices[id].len() - 1
    }

    /// Id of a simplex given in any vertex order.
    pub fn id_of(&self, s: &[usize]) -> Option<usize> {
        let mut s = s.to_vec();
        s.sort_unstable();
        self.index.get(&s).copied()
    }

    /// Codimension-one faces with incidence signs `(-1)^j` for dropping vertex `j`.
    pub fn faces(&self, id: usize) -> Vec<(usize, i64)> {
        let s = &self.simplices[id];
        if s.len() < 2 {
            return Vec::new();
        }
        (0..s.len())
            .map(|j| {
                let mut f = s.clone();
                f.remove(j);
                (self.index[&f], if j % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    /// Codimension-one cofaces, in id order.
    pub fn cofaces(&self, id: usize) -> &[usize] {
        &self.cofaces[id]
    }

    /// Facets (simplices with no coface), in id order.
    pub fn facets(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.cofaces[i].is_empty()).collect()
    }

    /// Alternating simplex count.
    pub fn euler_characteristic(&self) -> i64 {
        (0..self.dim_start.len().saturating_sub(1)).map(|n| if n % 2 == 0 { 1 } else { -1 } * self.count(n) as i64).sum()
    }

    /// Simplex counts per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.dim_start.len().saturating_sub(1)).map(|n| self.count(n)).collect()
    }

    /// Vertex sets of the connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let verts = self.vertices();
        let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = crate::abelian::UnionFind::new(verts.len());
        for e in self.ids_of_dim(1) {
            let s = &self.simplices[e];
            uf.union(pos[&s[0]], pos[&s[1]]);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_slot: HashMap<usize, usize> = HashMap::new();
        for (i, &v) in verts.iter().enumerate() {
            let r = uf.find(i);
            let slot = *root_slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[slot].push(v);
        }
        groups
    }

    /// Whether two complexes agree after relabeling vertices by `map`.
    pub fn is_isomorphic_via(&self, other: &Self, map: &HashMap<usize, usize>) -> bool {
        if self.len() != other.len() {
            return false;
        }
        self.simplices.iter().all(|s| {
            let t: Option<Vec<usize>> = s.iter().map(|v| map.get(v).copied()).collect();
            t.is_some_and(|t| other.id_of(&t).is_some())
        })
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(f = {:?})", self.f_vector())
    }
}

/// Validated face closure; see [`SimplicialComplex::from_facets`].
pub fn build_complex(facets: &[Vec<usize>]) -> Result<SimplicialComplex> {
    SimplicialComplex::from_facets(facets)
}

/// Vertices of the subdivision are the simplex ids of `x`; simplices are
/// chains in the face poset.
pub fn barycentric_subdivide(x: &Arc<SimplicialComplex>) -> SimplicialComplex {
    nerve_model(&StarOpen::whole(x))
}
