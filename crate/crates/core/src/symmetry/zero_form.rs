use std::sync::Arc;

use crate::abelian::FiniteGroup;
use crate::complex::Subcomplex;
use crate::error::{Error, Result};

/// Which side of the hypersurface the caller declares as the positive
/// collar direction. Nothing checks two-sidedness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CollarSide {
    Positive,
    Negative,
}

/// A `G`-valued function on the components of a hypersurface.
#[derive(Clone, Debug)]
pub struct ZeroFormOperator {
    group: Arc<FiniteGroup>,
    hypersurface: Subcomplex,
    collar: CollarSide,
    components: Vec<Subcomplex>,
    assignment: Vec<usize>,
}

impl PartialEq for ZeroFormOperator {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
            && self.hypersurface == other.hypersurface
            && self.collar == other.collar
            && self.assignment == other.assignment
    }
}

impl Eq for ZeroFormOperator {}

impl ZeroFormOperator {
    /// `assignment[i]` is the group element on the `i`-th component, with
    /// components ordered by their smallest simplex id.
    pub fn new(group: Arc<FiniteGroup>, hypersurface: Subcomplex, collar: CollarSide, assignment: Vec<usize>) -> Result<Self> {
        let d = hypersurface.parent().dimension().ok_or_else(|| Error::Validation("empty complex".into()))?;
        let m = hypersurface.to_complex();
        if d == 0 || m.dimension() != Some(d - 1) {
            return Err(Error::Validation(format!(
                "a hypersurface must have dimension {}, got {:?}",
                d.saturating_sub(1),
                m.dimension()
            )));
        }
        let components = hypersurface.components();
        if assignment.len() != components.len() {
            return Err(Error::Validation(format!(
                "{} components but {} assigned elements",
                components.len(),
                assignment.len()
            )));
        }
        if let Some(&g) = assignment.iter().find(|&&g| g >= group.order()) {
            return Err(Error::Validation(format!("{g} is not an element of a group of order {}", group.order())));
        }
        Ok(ZeroFormOperator { group, hypersurface, collar, components, assignment })
    }

    pub fn identity(group: Arc<FiniteGroup>, hypersurface: Subcomplex, collar: CollarSide) -> Result<Self> {
        let n = hypersurface.components().len();
        let e = group.identity();
        Self::new(group, hypersurface, collar, vec![e; n])
    }

    /// Every operator on the hypersurface, in lexicographic order of assignments.
    pub fn enumerate(group: Arc<FiniteGroup>, hypersurface: Subcomplex, collar: CollarSide) -> Result<Vec<Self>> {
        let base = Self::identity(group.clone(), hypersurface, collar)?;
        let n = base.components.len();
        let order = group.order();
        let total = order.checked_pow(n as u32).filter(|&t| t <= 1 << 20).ok_or_else(|| {
            Error::Budget { limit: 1 << 20, context: format!("enumerating {order}^{n} operators") }
        })?;
        Ok((0..total)
            .map(|mut k| {
                let mut assignment = vec![0; n];
                for slot in assignment.iter_mut().rev() {
                    *slot = k % order;
                    k /= order;
                }
                ZeroFormOperator { assignment, ..base.clone() }
            })
            .collect())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn hypersurface(&self) -> &Subcomplex {
        &self.hypersurface
    }

    pub fn collar(&self) -> CollarSide {
        self.collar
    }

    pub fn components(&self) -> &[Subcomplex] {
        &self.components
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn is_identity(&self) -> bool {
        self.assignment.iter().all(|&g| g == self.group.identity())
    }

    /// Pointwise inverse.
    pub fn inverse(&self) -> Self {
        let assignment = self.assignment.iter().map(|&g| self.group.inv(g)).collect();
        ZeroFormOperator { assignment, ..self.clone() }
    }

    /// `self` placed farther along the positive collar than `other`; the
    /// value on each component is `self(c) * other(c)`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.group, &other.group) && self.group.table() != other.group.table() {
            return Err(Error::GroupMismatch("operators take values in different groups".into()));
        }
        if self.hypersurface != other.hypersurface || self.collar != other.collar {
            return Err(Error::Validation("stacking needs the same collared hypersurface".into()));
        }
        let assignment = self.assignment.iter().zip(&other.assignment).map(|(&a, &b)| self.group.mul(a, b)).collect();
        Ok(ZeroFormOperator { assignment, ..self.clone() })
    }
}
