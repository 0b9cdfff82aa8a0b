use std::sync::Arc;

use super::Prefactorization;
use crate::abelian::{FGAbelianGroup, GroupHom};
use crate::complex::{SimplicialComplex, StarOpen};
use crate::error::{Error, Result};
use crate::homology::{compactly_supported_cohomology, extension_map};
use crate::IntMatrix;

/// How the layers of the target are glued together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PostnikovKind {
    /// A product of Eilenberg-MacLane spaces.
    Split,
    /// A nontrivial k-invariant. Not supported.
    Twisted,
}

/// `U ↦ ⊕_j H^{n_j}_c(U; A_j)`: maps into a product of `B^{n_j} A_j`.
#[derive(Clone, Debug)]
pub struct ProductTargetAlgebra {
    complex: Arc<SimplicialComplex>,
    factors: Vec<(FGAbelianGroup, usize)>,
}

impl ProductTargetAlgebra {
    pub fn new(complex: Arc<SimplicialComplex>, factors: Vec<(FGAbelianGroup, usize)>, kind: PostnikovKind) -> Result<Self> {
        if kind == PostnikovKind::Twisted {
            return Err(Error::Unsupported("targets with nontrivial k-invariants".into()));
        }
        if let Some((a, _)) = factors.iter().find(|(_, n)| *n == 0) {
            return Err(Error::Validation(format!("factor {a} has degree 0; degrees start at 1")));
        }
        Ok(ProductTargetAlgebra { complex, factors })
    }

    pub fn factors(&self) -> &[(FGAbelianGroup, usize)] {
        &self.factors
    }

    fn check_open(&self, u: &StarOpen) -> Result<()> {
        if Arc::ptr_eq(&self.complex, u.parent()) || *self.complex == **u.parent() {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// `π_i` of the mapping space on `U`: the sum over factors of
    /// `H^{n_j - i}_c(U; A_j)`, dropping factors with `n_j < i`.
    pub fn homotopy_group(&self, u: &StarOpen, i: usize) -> Result<FGAbelianGroup> {
        self.check_open(u)?;
        let parts: Vec<FGAbelianGroup> = self
            .factors
            .iter()
            .filter(|(_, n)| *n >= i)
            .map(|(a, n)| compactly_supported_cohomology(u, n - i, a).group().clone())
            .collect();
        Ok(FGAbelianGroup::direct_sum(&parts).group)
    }
}

impl Prefactorization for ProductTargetAlgebra {
    fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    fn value(&self, u: &StarOpen) -> Result<FGAbelianGroup> {
        self.homotopy_group(u, 0)
    }

    fn extension(&self, u: &StarOpen, v: &StarOpen) -> Result<GroupHom> {
        self.check_open(u)?;
        self.check_open(v)?;
        let blocks = self.factors.iter().map(|(a, n)| extension_map(u, v, *n, a)).collect::<Result<Vec<_>>>()?;
        let matrix = IntMatrix::block_diagonal(&blocks.iter().map(|h| h.matrix().clone()).collect::<Vec<_>>());
        GroupHom::new(self.value(u)?, self.value(v)?, matrix)
    }
}
