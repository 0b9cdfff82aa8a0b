use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::finite_group::FiniteGroup;
use super::lattice::solve_congruence;
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};

/// A finitely supported integer combination of elements of a finite group.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: BTreeMap<usize, Int>,
}

impl GroupRingElement {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupRingElement { group: group.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::delta(group, group.identity())
    }

    pub fn delta(group: &Arc<FiniteGroup>, g: usize) -> Self {
        Self::from_terms(group, [(g, Int::one())])
    }

    /// Sums coefficients of repeated elements and drops zeros.
    pub fn from_terms(group: &Arc<FiniteGroup>, terms: impl IntoIterator<Item = (usize, Int)>) -> Self {
        let mut coeffs: BTreeMap<usize, Int> = BTreeMap::new();
        for (g, c) in terms {
            assert!(g < group.order(), "element {g} not in the group");
            *coeffs.entry(g).or_insert_with(Int::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        GroupRingElement { group: group.clone(), coeffs }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coefficient(&self, g: usize) -> Int {
        self.coeffs.get(&g).cloned().unwrap_or_else(Int::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Int)> {
        self.coeffs.iter().map(|(&g, c)| (g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch("group ring elements over different groups".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        Ok(Self::from_terms(&self.group, self.coeffs.iter().chain(&other.coeffs).map(|(&g, c)| (g, c.clone()))))
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(&self.group, self.coeffs.iter().map(|(&g, c)| (g, -c)))
    }

    /// Convolution `(xy)(k) = Σ_{gh = k} x(g) y(h)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let terms = self.coeffs.iter().flat_map(|(&g, a)| {
            other.coeffs.iter().map(move |(&h, b)| (self.group.mul(g, h), a * b))
        });
        Ok(Self::from_terms(&self.group, terms))
    }

    /// Matrix of `y ↦ x y` on the basis of group elements.
    pub fn regular_matrix(&self) -> IntMatrix {
        let n = self.group.order();
        let mut m = IntMatrix::zeros(n, n);
        for h in 0..n {
            for (&g, c) in &self.coeffs {
                let k = self.group.mul(g, h);
                m[(k, h)] = &m[(k, h)] + c;
            }
        }
        m
    }

    /// Invertibility through the regular representation: a unit iff the
    /// determinant of left multiplication is ±1. The inverse is solved for
    /// exactly and checked on both sides.
    pub fn unit_test(&self) -> UnitVerdict {
        let m = self.regular_matrix();
        let det = m.determinant();
        if !det.abs().is_one() {
            return UnitVerdict { determinant: det, inverse: None };
        }
        let n = self.group.order();
        let mut e = vec![Int::zero(); n];
        e[self.group.identity()] = Int::one();
        let y = solve_congruence(&m, &e, &Int::zero()).expect("unimodular system is solvable");
        let inv = Self::from_terms(&self.group, y.into_iter().enumerate());
        let one = Self::one(&self.group);
        assert!(self.mul(&inv).unwrap() == one && inv.mul(self).unwrap() == one, "inverse check failed");
        UnitVerdict { determinant: det, inverse: Some(inv) }
    }

    pub fn is_unit(&self) -> Option<GroupRingElement> {
        self.unit_test().inverse
    }
}

#[derive(Clone, Debug)]
pub struct UnitVerdict {
    pub determinant: Int,
    pub inverse: Option<GroupRingElement>,
}

impl UnitVerdict {
    pub fn is_unit(&self) -> bool {
        self.inverse.is_some()
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> =
            self.coeffs.iter().map(|(&g, c)| format!("{c}*[{}]", self.group.name(g))).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement({self})")
    }
}
