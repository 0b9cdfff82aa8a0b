use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{structure_map, Prefactorization, QFormAlgebra};
use crate::abelian::lattice::mod_inverse;
use crate::abelian::scalar::reduce_mod;
use crate::abelian::{solve_congruence, FGAbelianGroup, GroupHom};
use crate::complex::{check_closed_pseudomanifold, Orientation, Simplex, StarOpen, Subcomplex};
use crate::error::{Error, Result};
use crate::homology::CompactCohomology;
use crate::{Int, IntMatrix};

/// The defect data an operator was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectLabel {
    /// Top simplices of the supporting submanifold `M`.
    pub support: Vec<Simplex>,
    pub label: Vec<Int>,
    pub orientation: Orientation,
}

/// A class in `H^{q+1}_c(U; A)` for one algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct SymmetryOperator {
    algebra: u64,
    open: StarOpen,
    group: FGAbelianGroup,
    coefficients: FGAbelianGroup,
    class: Vec<Int>,
    label: Option<DefectLabel>,
}

impl SymmetryOperator {
    /// The operator with a given class on `u`.
    pub fn from_class(f: &QFormAlgebra, u: &StarOpen, class: &[Int]) -> Result<Self> {
        let group = Prefactorization::value(f, u)?;
        if class.len() != group.num_generators() {
            return Err(Error::Validation(format!("class has {} coordinates, {group} needs {}", class.len(), group.num_generators())));
        }
        Ok(SymmetryOperator {
            algebra: f.id(),
            open: u.clone(),
            class: group.reduce(class),
            group,
            coefficients: f.coefficients().clone(),
            label: None,
        })
    }

    pub fn identity(f: &QFormAlgebra, u: &StarOpen) -> Result<Self> {
        let zero = Prefactorization::value(f, u)?.zero();
        Self::from_class(f, u, &zero)
    }

    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    pub fn open(&self) -> &StarOpen {
        &self.open
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn class(&self) -> &[Int] {
        &self.class
    }

    pub fn label(&self) -> Option<&DefectLabel> {
        self.label.as_ref()
    }

    pub fn is_identity(&self) -> bool {
        self.group.is_zero(&self.class)
    }
}

impl fmt::Debug for SymmetryOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetryOperator({:?} in {} on {:?})", self.class, self.group, self.open)
    }
}

fn same_algebra(f: &QFormAlgebra, op: &SymmetryOperator) -> Result<()> {
    if op.algebra == f.id() {
        Ok(())
    } else {
        Err(Error::GroupMismatch("operator belongs to a different algebra".into()))
    }
}

/// Signs of the top simplices of `u` forming a relative fundamental cycle.
fn top_signs(f: &QFormAlgebra, u: &StarOpen, modulus: &Int) -> Result<Vec<(usize, Int)>> {
    let x = u.parent();
    let d = f.dimension();
    let tops = u.members_of_dim(d);
    if let Some(o) = f.orientation() {
        return Ok(tops.into_iter().map(|t| (t, Int::from(o.sign_of(x.simplex(t)).expect("signed")))).collect());
    }
    if *modulus == Int::from(2) {
        return Ok(tops.into_iter().map(|t| (t, Int::one())).collect());
    }
    let mut sign: std::collections::HashMap<usize, i64> = std::collections::HashMap::new();
    for &root in &tops {
        if sign.contains_key(&root) {
            continue;
        }
        sign.insert(root, 1);
        let mut queue = VecDeque::from([root]);
        while let Some(t) = queue.pop_front() {
            for (face, inc) in x.faces(t) {
                if !u.contains(face) {
                    continue;
                }
                for &other in x.cofaces(face).iter().filter(|&&o| o != t) {
                    let inc_o = x.faces(other).into_iter().find(|&(g, _)| g == face).map(|(_, e)| e).unwrap();
                    let want = -sign[&t] * inc * inc_o;
                    match sign.get(&other) {
                        None => {
                            sign.insert(other, want);
                            queue.push_back(other);
                        }
                        Some(&s) if s != want => {
                            return Err(Error::Orientability(
                                "the neighborhood of the support is not orientable for this coefficient group".into(),
                            ))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(tops.into_iter().map(|t| (t, Int::from(sign[&t]))).collect())
}

/// The class on `U` pairing to 1 with `M`, for one cyclic factor.
fn thom_class(
    f: &QFormAlgebra,
    m: &Subcomplex,
    u: &StarOpen,
    h: &CompactCohomology,
    orient_m: &Orientation,
    factor: usize,
) -> Result<Vec<Int>> {
    let modulus = f.coefficients().orders()[factor].clone();
    let x = u.parent();
    let d = f.dimension();
    let c = f.degree();
    let k = d - c;
    let piece = h.factor_group(factor);
    if piece.orders() != [modulus.clone()] {
        return Err(Error::Orientability(format!(
            "H^{c}_c of the neighborhood with coefficients Z/{modulus} is {piece}, not cyclic of that order"
        )));
    }
    let g = h.inject_factor(factor, &[Int::one()]);
    let rep = &h.representative(&g)[factor];

    // a k-cocycle on the closed neighborhood evaluating to 1 on M
    let closed = Subcomplex::closure(x, u.members());
    let k_cells: Vec<usize> = x.ids_of_dim(k).filter(|&i| closed.contains(i)).collect();
    let k1_cells: Vec<usize> = x.ids_of_dim(k + 1).filter(|&i| closed.contains(i)).collect();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for &t in &k1_cells {
        let mut row = vec![Int::zero(); k_cells.len()];
        for (face, e) in x.faces(t) {
            if let Ok(p) = k_cells.binary_search(&face) {
                row[p] = Int::from(e);
            }
        }
        rows.push(row);
    }
    rows.push(k_cells.iter().map(|&s| Int::from(orient_m.sign_of(x.simplex(s)).unwrap_or(0))).collect());
    let mut rhs = vec![Int::zero(); rows.len()];
    *rhs.last_mut().unwrap() = Int::one();
    let system = IntMatrix::from_rows(rows, k_cells.len());
    let v = solve_congruence(&system, &rhs, &modulus).ok_or_else(|| {
        Error::Orientability(format!("no cocycle with Z/{modulus} coefficients detects the fundamental cycle of M"))
    })?;
    let _ = m;

    let mut pairing = Int::zero();
    for (t, sign) in top_signs(f, u, &modulus)? {
        let s = x.simplex(t);
        let front = x.id_of(&s[..=c]).expect("face");
        let back = x.id_of(&s[c..]).expect("face");
        let (Ok(fp), Ok(bp)) = (h.support().binary_search(&front), k_cells.binary_search(&back)) else {
            continue;
        };
        pairing += sign * &rep[fp] * &v[bp];
    }
    let pairing = reduce_mod(&pairing, &modulus);
    let inverse = if modulus.is_zero() {
        (pairing.abs() == Int::one()).then(|| pairing.clone())
    } else {
        mod_inverse(&pairing, &modulus)
    };
    let inverse = inverse.ok_or_else(|| {
        Error::Orientability(format!("the generator pairs to {pairing} with M, which is not a unit mod {modulus}"))
    })?;
    Ok(h.group().scale(&inverse, &g))
}

/// `U_a(M)`: the class on the tubular neighborhood of `M` dual to the
/// fundamental cycle of `(M, orient_m)`, scaled by `a`.
///
/// The identification of `H^{q+1}_c(U; A)` with `A` is pinned by requiring
/// that the cup product of the class with a cocycle evaluating to 1 on `M`
/// evaluates to 1 on the ambient fundamental cycle.
pub fn defect_operator(f: &QFormAlgebra, m: &Subcomplex, a: &[Int], orient_m: &Orientation) -> Result<SymmetryOperator> {
    let x = Prefactorization::complex(f);
    if !Arc::ptr_eq(x, m.parent()) && **x != **m.parent() {
        return Err(Error::ParentMismatch);
    }
    let a_group = f.coefficients();
    if a.len() != a_group.num_generators() {
        return Err(Error::Validation(format!("label {a:?} is not an element of {a_group}")));
    }
    let d = f.dimension();
    let k = d - f.degree();
    let mc = m.to_complex();
    if !check_closed_pseudomanifold(&mc, k) {
        return Err(Error::Precondition(format!("M must be a closed connected pseudomanifold of dimension {k}")));
    }
    if !orient_m.is_fundamental_cycle_of(&mc) {
        return Err(Error::Precondition("the orientation of M is not a fundamental cycle of M".into()));
    }
    let u = m.star();
    let h = f.cohomology(&u)?;
    if !h.group().is_isomorphic(a_group) {
        return Err(Error::Orientability(format!(
            "H^{}_c of the neighborhood of M is {}, not {a_group}",
            f.degree(),
            h.group()
        )));
    }
    let columns =
        (0..a_group.num_generators()).map(|j| thom_class(f, m, &u, &h, orient_m, j)).collect::<Result<Vec<_>>>()?;
    let hom = GroupHom::new(a_group.clone(), h.group().clone(), IntMatrix::from_columns(&columns, h.group().num_generators()))?;
    if !hom.is_isomorphism() {
        return Err(Error::Orientability("labels do not map isomorphically onto the neighborhood classes".into()));
    }
    let support = mc.facets().into_iter().map(|i| mc.simplex(i).to_vec()).collect();
    Ok(SymmetryOperator {
        algebra: f.id(),
        open: u,
        group: h.group().clone(),
        coefficients: a_group.clone(),
        class: hom.apply(a),
        label: Some(DefectLabel { support, label: a_group.reduce(a), orientation: orient_m.clone() }),
    })
}

/// Product of two operators on the same open: the sum of classes.
pub fn fuse(f: &QFormAlgebra, a: &SymmetryOperator, b: &SymmetryOperator) -> Result<SymmetryOperator> {
    same_algebra(f, a)?;
    same_algebra(f, b)?;
    if a.open != b.open {
        return Err(Error::Validation("fuse needs operators on the same open; use fuse_into".into()));
    }
    let label = match (&a.label, &b.label) {
        (Some(x), Some(y)) if x.support == y.support && x.orientation == y.orientation => Some(DefectLabel {
            support: x.support.clone(),
            label: a.coefficients.add(&x.label, &y.label),
            orientation: x.orientation.clone(),
        }),
        _ => None,
    };
    Ok(SymmetryOperator {
        algebra: a.algebra,
        open: a.open.clone(),
        group: a.group.clone(),
        coefficients: a.coefficients.clone(),
        class: a.group.add(&a.class, &b.class),
        label,
    })
}

/// Operators on disjoint opens inside `w`, combined by the structure map.
pub fn fuse_into(f: &QFormAlgebra, w: &StarOpen, a: &SymmetryOperator, b: &SymmetryOperator) -> Result<SymmetryOperator> {
    same_algebra(f, a)?;
    same_algebra(f, b)?;
    let m = structure_map(f, &[a.open.clone(), b.open.clone()], w)?;
    let class = m.apply_parts(&[a.class.clone(), b.class.clone()]);
    SymmetryOperator::from_class(f, w, &class)
}

/// Whether both operators extend to the same class on `w`.
pub fn compare_in(f: &QFormAlgebra, w: &StarOpen, a: &SymmetryOperator, b: &SymmetryOperator) -> Result<bool> {
    same_algebra(f, a)?;
    same_algebra(f, b)?;
    let ea = Prefactorization::extension(f, &a.open, w)?.apply(&a.class);
    let eb = Prefactorization::extension(f, &b.open, w)?.apply(&b.class);
    Ok(ea == eb)
}
