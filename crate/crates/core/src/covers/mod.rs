//! Covers of star-opens: supportiveness up to a bound and descent of the
//! symmetry algebra at the level of path components.

mod descent;
mod supportive;

use std::sync::Arc;

use crate::complex::{barycentric_subdivide, SimplicialComplex, StarOpen, Subcomplex};
use crate::error::{Error, Result};

pub use descent::{descent_check, DescentReport, ABELIAN_GENERATOR_LIMIT};
pub use supportive::{is_k_supportive, SupportVerdict, SupportiveParams, DEFAULT_LIMIT};

/// A finite family of star-opens inside a target open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    target: StarOpen,
    elements: Vec<StarOpen>,
}

impl CoverSpec {
    /// Checks that every element lies in the target. Whether the elements
    /// exhaust it is asked separately by [`CoverSpec::is_cover`].
    pub fn new(target: StarOpen, elements: Vec<StarOpen>) -> Result<Self> {
        for u in &elements {
            if let Some(s) = u.first_outside(&target)? {
                return Err(Error::NotNested(format!(
                    "cover element contains {:?}, which is outside the target",
                    u.parent().simplex(s)
                )));
            }
        }
        Ok(CoverSpec { target, elements })
    }

    pub fn parent(&self) -> &Arc<SimplicialComplex> {
        self.target.parent()
    }

    pub fn target(&self) -> &StarOpen {
        &self.target
    }

    pub fn elements(&self) -> &[StarOpen] {
        &self.elements
    }

    /// The first simplex of the target missed by every element.
    pub fn uncovered(&self) -> Option<usize> {
        self.target.members().into_iter().find(|&s| !self.elements.iter().any(|u| u.contains(s)))
    }

    pub fn is_cover(&self) -> bool {
        self.uncovered().is_none()
    }

    pub(crate) fn require_cover(&self) -> Result<()> {
        match self.uncovered() {
            Some(s) => Err(Error::NotACover(format!("no element contains {:?}", self.parent().simplex(s)))),
            None => Ok(()),
        }
    }

    /// The same cover over the barycentric subdivision `sd` of the parent.
    pub fn refine(&self, sd: &Arc<SimplicialComplex>) -> CoverSpec {
        CoverSpec { target: self.target.refine(sd), elements: self.elements.iter().map(|u| u.refine(sd)).collect() }
    }

    /// `times` rounds of barycentric subdivision.
    pub fn subdivide(&self, times: usize) -> CoverSpec {
        let mut c = self.clone();
        for _ in 0..times {
            let sd = Arc::new(barycentric_subdivide(c.parent()));
            c = c.refine(&sd);
        }
        c
    }

    /// Adds an element.
    pub fn with(mut self, u: StarOpen) -> Result<Self> {
        self.elements.push(u);
        Self::new(self.target, self.elements)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeissStyle {
    /// Complements of closed vertices.
    VertexComplements,
    /// Complements of closed top simplices.
    SimplexComplements,
}

/// Covers of the whole complex by complements of small closed pieces.
pub fn weiss_cover(x: &Arc<SimplicialComplex>, style: WeissStyle) -> Result<CoverSpec> {
    let pieces: Vec<usize> = match style {
        WeissStyle::VertexComplements => {
            if x.vertex_count() < 3 {
                return Err(Error::Validation(format!("{} vertices; vertex complements need at least 3", x.vertex_count())));
            }
            x.ids_of_dim(0).collect()
        }
        WeissStyle::SimplexComplements => {
            let d = x.dimension().ok_or_else(|| Error::Validation("empty complex".into()))?;
            let tops: Vec<usize> = x.ids_of_dim(d).collect();
            if tops.len() < 2 {
                return Err(Error::Validation("simplex complements need at least two top simplices".into()));
            }
            tops
        }
    };
    let elements = pieces.into_iter().map(|p| Subcomplex::closure(x, [p]).complement()).collect();
    CoverSpec::new(StarOpen::whole(x), elements)
}
