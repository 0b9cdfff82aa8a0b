use super::CoverSpec;
use crate::complex::Simplex;
use crate::error::{Error, Result};

/// Default cap on the number of test subcomplexes examined.
pub const DEFAULT_LIMIT: usize = 1_000_000;

/// Bounds for the supportiveness search: subcomplexes of dimension at most
/// `k` with at most `s` facets, looked for in the `subdivisions`-fold
/// barycentric subdivision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportiveParams {
    pub k: usize,
    pub s: usize,
    pub subdivisions: usize,
    pub limit: usize,
}

impl SupportiveParams {
    pub fn new(k: usize, s: usize) -> Self {
        SupportiveParams { k, s, subdivisions: 0, limit: DEFAULT_LIMIT }
    }

    pub fn with_subdivisions(self, subdivisions: usize) -> Self {
        SupportiveParams { subdivisions, ..self }
    }

    pub fn with_limit(self, limit: usize) -> Self {
        SupportiveParams { limit, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportVerdict {
    /// Every test subcomplex within the bounds lies in some element.
    Verified { checked: usize },
    /// Facets of a subcomplex of the target contained in no element. Vertex
    /// labels refer to the subdivided complex the search ran on.
    Counterexample { facets: Vec<Simplex> },
}

impl SupportVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, SupportVerdict::Verified { .. })
    }
}

struct Search<'a> {
    candidates: &'a [(Simplex, Vec<u64>)],
    s: usize,
    limit: usize,
    checked: usize,
    chosen: Vec<usize>,
}

fn is_face(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

impl Search<'_> {
    /// Extends the current antichain by candidates after `from`. `holders`
    /// marks the elements containing everything chosen so far.
    fn run(&mut self, from: usize, holders: &[u64]) -> Result<Option<Vec<Simplex>>> {
        if self.chosen.len() == self.s {
            return Ok(None);
        }
        for i in from..self.candidates.len() {
            let (sigma, mask) = &self.candidates[i];
            if self.chosen.iter().any(|&j| is_face(&self.candidates[j].0, sigma)) {
                continue;
            }
            self.checked += 1;
            if self.checked > self.limit {
                return Err(Error::Budget { limit: self.limit, context: "enumerating test subcomplexes".into() });
            }
            let next: Vec<u64> = holders.iter().zip(mask).map(|(a, b)| a & b).collect();
            self.chosen.push(i);
            if next.iter().all(|&w| w == 0) {
                return Ok(Some(self.chosen.iter().map(|&j| self.candidates[j].0.clone()).collect()));
            }
            if let Some(k) = self.run(i + 1, &next)? {
                return Ok(Some(k));
            }
            self.chosen.pop();
        }
        Ok(None)
    }
}

/// Searches for a subcomplex of the target, within the bounds, that no single
/// element contains. The first one found in id order is returned.
pub fn is_k_supportive(c: &CoverSpec, params: SupportiveParams) -> Result<SupportVerdict> {
    c.require_cover()?;
    let d = c.parent().dimension().unwrap_or(0);
    if params.k > d || params.s == 0 {
        return Err(Error::Validation(format!("need k <= {d} and s >= 1, got k = {} and s = {}", params.k, params.s)));
    }
    let c = c.subdivide(params.subdivisions);
    let x = c.parent();
    let words = c.elements().len().div_ceil(64).max(1);
    // A closed simplex lies in an up-closed set iff its vertices do.
    let mut candidates = Vec::new();
    for n in 0..=params.k.min(x.dimension().unwrap_or(0)) {
        for id in x.ids_of_dim(n) {
            let sigma = x.simplex(id);
            let vertex_ids: Vec<usize> = sigma.iter().map(|&v| x.id_of(&[v]).expect("vertex")).collect();
            if !vertex_ids.iter().all(|&v| c.target().contains(v)) {
                continue;
            }
            let mut mask = vec![0u64; words];
            for (e, u) in c.elements().iter().enumerate() {
                if vertex_ids.iter().all(|&v| u.contains(v)) {
                    mask[e / 64] |= 1 << (e % 64);
                }
            }
            candidates.push((sigma.to_vec(), mask));
        }
    }
    let mut all = vec![u64::MAX; words];
    if c.elements().is_empty() {
        all = vec![0; words];
    }
    let mut search = Search { candidates: &candidates, s: params.s, limit: params.limit, checked: 0, chosen: Vec::new() };
    Ok(match search.run(0, &all)? {
        Some(facets) => SupportVerdict::Counterexample { facets },
        None => SupportVerdict::Verified { checked: search.checked },
    })
}
