//! Colimits of diagrams indexed by finite posets, in abelian groups and in
//! finite sets.
//!
//! A diagram is given by its values and the maps along the Hasse edges of the
//! poset. The colimit presentation only needs Hasse edges: relations for
//! composites follow from them.

use num_traits::One;

use super::group::{FGAbelianGroup, GroupHom};
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};

/// Something that can be composed and compared along a diagram.
pub trait Arrow: Clone {
    /// `after ∘ self`
    fn then(&self, after: &Self) -> Result<Self>;
    fn same(&self, other: &Self) -> bool;
}

impl Arrow for GroupHom {
    fn then(&self, after: &Self) -> Result<Self> {
        GroupHom::then(self, after)
    }

    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

/// A function between finite sets `{0..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetMap {
    pub source_size: usize,
    pub target_size: usize,
    pub images: Vec<usize>,
}

impl SetMap {
    pub fn new(source_size: usize, target_size: usize, images: Vec<usize>) -> Result<Self> {
        if images.len() != source_size || images.iter().any(|&i| i >= target_size) {
            return Err(Error::Validation("set map does not fit its source and target".into()));
        }
        Ok(SetMap { source_size, target_size, images })
    }
}

impl Arrow for SetMap {
    fn then(&self, after: &Self) -> Result<Self> {
        if self.target_size != after.source_size {
            return Err(Error::Validation("set maps do not compose".into()));
        }
        SetMap::new(self.source_size, after.target_size, self.images.iter().map(|&i| after.images[i]).collect())
    }

    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

#[derive(Clone, Debug)]
pub struct HasseEdge<A> {
    pub from: usize,
    pub to: usize,
    pub map: A,
}

/// Values on the nodes of a finite poset and maps along its Hasse edges.
#[derive(Clone, Debug)]
pub struct PosetDiagram<V, A> {
    pub values: Vec<V>,
    pub edges: Vec<HasseEdge<A>>,
    pub labels: Vec<String>,
}

impl<V, A: Arrow> PosetDiagram<V, A> {
    pub fn new(values: Vec<V>, edges: Vec<HasseEdge<A>>) -> Self {
        let labels = (0..values.len()).map(|i| i.to_string()).collect();
        PosetDiagram { values, edges, labels }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.values.len());
        self.labels = labels;
        self
    }

    /// Nodes in an order compatible with the edges.
    fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.values.len();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            if e.from >= n || e.to >= n || e.from == e.to {
                return Err(Error::Validation(format!("bad Hasse edge {} -> {}", e.from, e.to)));
            }
            indeg[e.to] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for e in self.edges.iter().filter(|e| e.from == v) {
                indeg[e.to] -= 1;
                if indeg[e.to] == 0 {
                    ready.push(e.to);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Validation("edges contain a cycle; not a poset".into()));
        }
        Ok(order)
    }

    /// Composites along all Hasse paths between each pair of nodes agree.
    ///
    /// For each source node the composite to every reachable node is built in
    /// topological order; every incoming edge must produce the same composite.
    pub fn check_functoriality(&self) -> Result<()> {
        let order = self.topological_order()?;
        let n = self.values.len();
        for &src in &order {
            let mut reach: Vec<Option<A>> = vec![None; n];
            for &node in order.iter().skip_while(|&&v| v != src).skip(1) {
                for e in self.edges.iter().filter(|e| e.to == node) {
                    let via = if e.from == src {
                        e.map.clone()
                    } else if let Some(prefix) = &reach[e.from] {
                        prefix.then(&e.map)?
                    } else {
                        continue;
                    };
                    match &reach[node] {
                        None => reach[node] = Some(via),
                        Some(existing) if existing.same(&via) => {}
                        Some(_) => {
                            return Err(Error::Functoriality {
                                square: format!(
                                    "paths {} -> {} disagree (through {})",
                                    self.labels[src], self.labels[node], self.labels[e.from]
                                ),
                            })
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Colimit in abelian groups with its canonical injections.
#[derive(Clone, Debug)]
pub struct AbelianColimit {
    pub group: FGAbelianGroup,
    pub injections: Vec<GroupHom>,
    offsets: Vec<usize>,
}

impl AbelianColimit {
    /// The unique map out of the colimit factoring the supplied cocone.
    /// Errors if the cocone is not compatible.
    pub fn universal_map(&self, cocone: &[GroupHom]) -> Result<GroupHom> {
        assert_eq!(cocone.len(), self.injections.len(), "one cocone leg per node");
        let target = cocone
            .first()
            .map(|f| f.target().clone())
            .ok_or_else(|| Error::Validation("empty cocone".into()))?;
        let total: usize = self.injections.iter().map(|i| i.source().num_generators()).sum();
        let mut block = IntMatrix::zeros(target.num_generators(), total);
        for (leg, &off) in cocone.iter().zip(&self.offsets) {
            if leg.target() != &target {
                return Err(Error::GroupMismatch("cocone legs have different targets".into()));
            }
            for r in 0..block.nrows() {
                for c in 0..leg.source().num_generators() {
                    block[(r, off + c)] = leg.matrix()[(r, c)].clone();
                }
            }
        }
        let relations = self.group.relations();
        for c in 0..relations.ncols() {
            if !target.is_zero(&block.mul_vec(&relations.column(c))) {
                return Err(Error::Functoriality { square: "cocone does not respect the diagram".into() });
            }
        }
        let u = GroupHom::new(self.group.clone(), target, block.mul(self.group.from_canonical_matrix()))?;
        for (leg, inj) in cocone.iter().zip(&self.injections) {
            if &inj.then(&u)? != leg {
                return Err(Error::Functoriality { square: "cocone leg does not factor".into() });
            }
        }
        Ok(u)
    }
}

/// Cokernel of `⊕_{p<p'} F(p) -> ⊕_p F(p)`, `x ↦ ι_{p'} f(x) - ι_p x`.
pub fn colimit_abelian(d: &PosetDiagram<FGAbelianGroup, GroupHom>) -> Result<AbelianColimit> {
    d.check_functoriality()?;
    for e in &d.edges {
        if e.map.source() != &d.values[e.from] || e.map.target() != &d.values[e.to] {
            return Err(Error::GroupMismatch(format!("edge {} -> {} has the wrong ends", e.from, e.to)));
        }
    }
    let mut offsets = Vec::with_capacity(d.values.len());
    let mut total = 0;
    for v in &d.values {
        offsets.push(total);
        total += v.num_generators();
    }
    let mut relations: Vec<Vec<Int>> = Vec::new();
    for (v, &off) in d.values.iter().zip(&offsets) {
        for (i, o) in v.orders().iter().enumerate() {
            let mut col = vec![Int::from(0); total];
            col[off + i] = o.clone();
            relations.push(col);
        }
    }
    for e in &d.edges {
        let src = &d.values[e.from];
        for g in 0..src.num_generators() {
            let mut col = vec![Int::from(0); total];
            col[offsets[e.from] + g] -= Int::one();
            for (r, v) in e.map.matrix().column(g).into_iter().enumerate() {
                col[offsets[e.to] + r] += v;
            }
            relations.push(col);
        }
    }
    let rel = IntMatrix::from_columns(&relations, total);
    let group = FGAbelianGroup::from_presentation(total, rel);
    let mut injections = Vec::with_capacity(d.values.len());
    for (v, &off) in d.values.iter().zip(&offsets) {
        let n = v.num_generators();
        let m = IntMatrix::from_fn(total, n, |r, c| if r == off + c { Int::one() } else { Int::from(0) });
        injections.push(GroupHom::new(v.clone(), group.clone(), group.to_canonical_matrix().mul(&m))?);
    }
    Ok(AbelianColimit { group, injections, offsets })
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Colimit of finite sets: the quotient of the disjoint union by `x ~ f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetColimit {
    pub size: usize,
    /// `classes[p][x]` is the class of element `x` of node `p`.
    pub classes: Vec<Vec<usize>>,
}

pub fn colimit_set(d: &PosetDiagram<usize, SetMap>) -> Result<SetColimit> {
    d.check_functoriality()?;
    let mut offsets = Vec::with_capacity(d.values.len());
    let mut total = 0usize;
    for &n in &d.values {
        offsets.push(total);
        total += n;
    }
    for e in &d.edges {
        if e.map.source_size != d.values[e.from] || e.map.target_size != d.values[e.to] {
            return Err(Error::Validation(format!("edge {} -> {} has the wrong ends", e.from, e.to)));
        }
    }
    let mut uf = UnionFind::new(total);
    for e in &d.edges {
        for (x, &y) in e.map.images.iter().enumerate() {
            uf.union(offsets[e.from] + x, offsets[e.to] + y);
        }
    }
    // classes numbered by first appearance
    let mut label = vec![usize::MAX; total];
    let mut next = 0;
    let mut classes = Vec::with_capacity(d.values.len());
    for (p, &n) in d.values.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for x in 0..n {
            let r = uf.find(offsets[p] + x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            row.push(label[r]);
        }
        classes.push(row);
    }
    Ok(SetColimit { size: next, classes })
}
