use super::CoverSpec;
use crate::abelian::{colimit_abelian, colimit_set, FGAbelianGroup, HasseEdge, PosetDiagram, SetMap};
use crate::complex::StarOpen;
use crate::error::{Error, Result};
use crate::symmetry::{Prefactorization, QFormAlgebra};

const NODE_LIMIT: usize = 4096;
const ELEMENT_LIMIT: usize = 1 << 22;
/// Presentations of the abelian colimit with more generators than this are
/// not reduced; dense Smith normal form over them does not fit in memory.
pub const ABELIAN_GENERATOR_LIMIT: usize = 256;

/// Outcome of comparing the colimit over a cover with the value on its
/// target, at the level of path components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    /// Distinct nonempty intersections plus the empty open.
    pub nodes: usize,
    pub colimit_size: usize,
    pub target_size: usize,
    pub injective: bool,
    pub surjective: bool,
    /// Two classes with the same image, or a class missed by the comparison.
    pub witness: Option<String>,
    /// The colimit taken in abelian groups, skipped past
    /// [`ABELIAN_GENERATOR_LIMIT`] generators.
    pub abelian_colimit: Option<FGAbelianGroup>,
    pub abelian_matches: Option<bool>,
}

impl DescentReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// The distinct intersections of nonempty subfamilies, with the empty open
/// first whether or not it occurs.
fn intersection_poset(c: &CoverSpec) -> Result<Vec<StarOpen>> {
    let mut nodes = vec![StarOpen::empty(c.parent())];
    for u in c.elements() {
        if !nodes.contains(u) {
            nodes.push(u.clone());
        }
    }
    let mut next = 1;
    while next < nodes.len() {
        for u in c.elements() {
            let w = nodes[next].intersect(u)?;
            if !nodes.contains(&w) {
                if nodes.len() == NODE_LIMIT {
                    return Err(Error::Budget { limit: NODE_LIMIT, context: "building the intersection poset".into() });
                }
                nodes.push(w);
            }
        }
        next += 1;
    }
    // a canonical order keeps reports independent of how the cover was listed
    nodes.sort_by_key(|u| (u.len(), u.members()));
    Ok(nodes)
}

fn hasse_pairs(nodes: &[StarOpen]) -> Result<Vec<(usize, usize)>> {
    let n = nodes.len();
    let mut below = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            below[a][b] = a != b && nodes[a].is_subset(&nodes[b])?;
        }
    }
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if below[a][b] && !(0..n).any(|c| below[a][c] && below[c][b]) {
                pairs.push((a, b));
            }
        }
    }
    Ok(pairs)
}

/// Compares `colim π₀ F` over the intersection poset of the cover with
/// `π₀ F(target)`.
pub fn descent_check(f: &QFormAlgebra, c: &CoverSpec) -> Result<DescentReport> {
    if !f.coefficients().is_finite() {
        return Err(Error::Unsupported("descent is compared on finite sets; the coefficient group must be finite".into()));
    }
    if **f.complex() != **c.parent() {
        return Err(Error::ParentMismatch);
    }
    c.require_cover()?;
    let nodes = intersection_poset(c)?;
    let groups = nodes.iter().map(|u| f.value(u)).collect::<Result<Vec<_>>>()?;
    let target_group = f.value(c.target())?;
    let sizes: Vec<usize> = groups
        .iter()
        .chain([&target_group])
        .map(|g| usize::try_from(g.order().expect("finite")).ok().filter(|&n| n <= ELEMENT_LIMIT))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Budget { limit: ELEMENT_LIMIT, context: "enumerating cohomology classes".into() })?;
    let (sizes, target_size) = (sizes[..nodes.len()].to_vec(), sizes[nodes.len()]);
    if sizes.iter().sum::<usize>() > ELEMENT_LIMIT {
        return Err(Error::Budget { limit: ELEMENT_LIMIT, context: "enumerating cohomology classes".into() });
    }
    let elements = groups.iter().map(|g| g.elements()).collect::<Result<Vec<_>>>()?;

    let mut set_edges = Vec::new();
    let mut group_edges = Vec::new();
    for (a, b) in hasse_pairs(&nodes)? {
        let h = f.extension(&nodes[a], &nodes[b])?;
        let images = elements[a].iter().map(|x| groups[b].element_index(&h.apply(x))).collect();
        set_edges.push(HasseEdge { from: a, to: b, map: SetMap::new(sizes[a], sizes[b], images)? });
        group_edges.push(HasseEdge { from: a, to: b, map: h });
    }
    let labels: Vec<String> = nodes.iter().map(|u| format!("{u:?}")).collect();
    let set_diagram = PosetDiagram::new(sizes.clone(), set_edges).with_labels(labels.clone());
    let colimit = colimit_set(&set_diagram)?;

    // the comparison map, read off one representative per class
    let mut image: Vec<Option<(usize, usize, usize)>> = vec![None; colimit.size];
    let mut hit: Vec<Option<usize>> = vec![None; target_size];
    let mut witness = None;
    let mut injective = true;
    for (p, u) in nodes.iter().enumerate() {
        let h = f.extension(u, c.target())?;
        for (x, el) in elements[p].iter().enumerate() {
            let class = colimit.classes[p][x];
            if image[class].is_some() {
                continue;
            }
            let t = target_group.element_index(&h.apply(el));
            image[class] = Some((p, x, t));
            match hit[t] {
                Some(other) if injective => {
                    injective = false;
                    let (q, y, _) = image[other].expect("seen");
                    witness = Some(format!(
                        "{:?} on {} and {:?} on {} are separate in the colimit but agree on the target",
                        elements[q][y], labels[q], el, labels[p]
                    ));
                }
                Some(_) => {}
                None => hit[t] = Some(class),
            }
        }
    }
    let missed = hit.iter().position(|h| h.is_none());
    let target_elements = target_group.elements()?;
    if let (None, Some(t)) = (&witness, missed) {
        witness = Some(format!("{:?} on the target is not extended from any intersection", target_elements[t]));
    }

    let generators: usize = groups.iter().map(|g| g.num_generators()).sum();
    let abelian_colimit = if generators <= ABELIAN_GENERATOR_LIMIT {
        Some(colimit_abelian(&PosetDiagram::new(groups, group_edges).with_labels(labels))?.group)
    } else {
        None
    };
    Ok(DescentReport {
        nodes: nodes.len(),
        colimit_size: colimit.size,
        target_size,
        injective,
        surjective: missed.is_none(),
        witness,
        abelian_matches: abelian_colimit.as_ref().map(|g| g.is_isomorphic(&target_group)),
        abelian_colimit,
    })
}
