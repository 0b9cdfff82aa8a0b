use super::{compactly_supported_cohomology, homology};
use crate::abelian::FGAbelianGroup;
use crate::complex::{check_closed_pseudomanifold, nerve_model, Orientation, StarOpen};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityDegree {
    pub degree: usize,
    /// `H^n_c(U; A)`
    pub compact: FGAbelianGroup,
    /// `H_{d-n}(U; A)` computed on the nerve model
    pub homology: FGAbelianGroup,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub dimension: usize,
    pub oriented: bool,
    pub degrees: Vec<DualityDegree>,
}

impl DualityReport {
    pub fn pass(&self) -> bool {
        self.degrees.iter().all(|d| d.pass)
    }
}

/// Compares `H^n_c(U; A)` with `H_{d-n}(U; A)` degree by degree.
///
/// With an orientation the duality isomorphism is expected to hold for every
/// `A`. Without one the comparison is still run, which is how a failure of
/// orientability shows up as a failing degree.
pub fn poincare_duality_check(
    u: &StarOpen,
    orientation: Option<&Orientation>,
    a: &FGAbelianGroup,
) -> Result<DualityReport> {
    let x = u.parent();
    let d = x.dimension().ok_or_else(|| Error::Precondition("empty complex".into()))?;
    if !check_closed_pseudomanifold(x, d) {
        return Err(Error::Precondition("duality needs a closed connected pseudomanifold".into()));
    }
    if let Some(o) = orientation {
        if !o.is_fundamental_cycle_of(x) {
            return Err(Error::Precondition("orientation is not a fundamental cycle of the complex".into()));
        }
    }
    let nerve = nerve_model(u);
    let degrees = (0..=d)
        .map(|n| {
            let compact = compactly_supported_cohomology(u, n, a).group().clone();
            let homology = homology(&nerve, d - n, a);
            let pass = compact.is_isomorphic(&homology);
            DualityDegree { degree: n, compact, homology, pass }
        })
        .collect();
    Ok(DualityReport { dimension: d, oriented: orientation.is_some(), degrees })
}

/// `π_i Map_c(U, B^n A) = H^{n-i}_c(U; A)` for `i <= n`, zero above.
pub fn homotopy_groups_of_symmetry_space(u: &StarOpen, n: usize, a: &FGAbelianGroup, i: usize) -> Result<FGAbelianGroup> {
    if n == 0 {
        return Err(Error::Validation("the classifying space degree must be at least 1".into()));
    }
    if i > n {
        return Ok(FGAbelianGroup::trivial());
    }
    Ok(compactly_supported_cohomology(u, n - i, a).group().clone())
}
