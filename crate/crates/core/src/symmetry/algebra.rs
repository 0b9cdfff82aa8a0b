use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use super::Prefactorization;
use crate::abelian::{FGAbelianGroup, GroupHom};
use crate::complex::{check_closed_pseudomanifold, orient, Orientation, SimplicialComplex, StarOpen};
use crate::error::{Error, Result};
use crate::homology::{compactly_supported_cohomology, CompactCohomology};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// The q-form symmetry algebra `U ↦ H^{q+1}_c(U; A)` on a complex of
/// dimension `d >= q + 1`.
pub struct QFormAlgebra {
    id: u64,
    complex: Arc<SimplicialComplex>,
    q: usize,
    coefficients: FGAbelianGroup,
    orientation: Option<Orientation>,
    cache: Mutex<HashMap<Vec<bool>, Arc<CompactCohomology>>>,
}

impl QFormAlgebra {
    /// The ambient orientation is computed when the complex is an orientable
    /// closed pseudomanifold.
    pub fn new(complex: Arc<SimplicialComplex>, q: usize, coefficients: FGAbelianGroup) -> Result<Self> {
        let d = complex.dimension().ok_or_else(|| Error::Validation("empty complex".into()))?;
        if q + 1 > d {
            return Err(Error::Validation(format!("q + 1 = {} exceeds the dimension {d}", q + 1)));
        }
        let orientation = if check_closed_pseudomanifold(&complex, d) { orient(&complex)?.orientation() } else { None };
        Ok(QFormAlgebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            complex,
            q,
            coefficients,
            orientation,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Replaces the ambient orientation, which fixes the sign convention of
    /// defect operators.
    pub fn with_orientation(mut self, orientation: Orientation) -> Result<Self> {
        if !orientation.is_fundamental_cycle_of(&self.complex) {
            return Err(Error::Precondition("orientation is not a fundamental cycle of the complex".into()));
        }
        self.orientation = Some(orientation);
        Ok(self)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Cohomological degree `q + 1`.
    pub fn degree(&self) -> usize {
        self.q + 1
    }

    pub fn dimension(&self) -> usize {
        self.complex.dimension().expect("nonempty")
    }

    pub fn coefficients(&self) -> &FGAbelianGroup {
        &self.coefficients
    }

    pub fn orientation(&self) -> Option<&Orientation> {
        self.orientation.as_ref()
    }

    fn check_open(&self, u: &StarOpen) -> Result<()> {
        if Arc::ptr_eq(&self.complex, u.parent()) || *self.complex == **u.parent() {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// `H^{q+1}_c(U; A)` with its cocycle data, memoized per open.
    pub fn cohomology(&self, u: &StarOpen) -> Result<Arc<CompactCohomology>> {
        self.check_open(u)?;
        if let Some(h) = self.cache.lock().expect("cache lock").get(u.mask()) {
            return Ok(h.clone());
        }
        let h = Arc::new(compactly_supported_cohomology(u, self.degree(), &self.coefficients));
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(cache.entry(u.mask().to_vec()).or_insert(h).clone())
    }

    pub fn cached_opens(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }
}

impl Prefactorization for QFormAlgebra {
    fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    fn value(&self, u: &StarOpen) -> Result<FGAbelianGroup> {
        Ok(self.cohomology(u)?.group().clone())
    }

    fn extension(&self, u: &StarOpen, v: &StarOpen) -> Result<GroupHom> {
        self.cohomology(u)?.extend_to(&*self.cohomology(v)?)
    }
}

impl fmt::Debug for QFormAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QFormAlgebra(q = {}, A = {}, X = {:?})", self.q, self.coefficients, self.complex)
    }
}
