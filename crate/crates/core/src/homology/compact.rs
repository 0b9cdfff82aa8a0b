use std::fmt;

use super::{sum_of, ChainComplex};
use crate::abelian::scalar::reduce_mod;
use crate::abelian::{DirectSum, FGAbelianGroup, GroupHom, Subquotient};
use crate::complex::StarOpen;
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};

/// `H^n_c(U; A)`, computed as the cohomology of `A`-valued cochains
/// supported on the simplices of `U`.
///
/// A cochain is a `Vec<Vec<Int>>` indexed `[factor][position]`: one integer
/// vector per cyclic factor of `A`, over the `n`-simplices of `U` listed in
/// [`Self::support`].
#[derive(Clone)]
pub struct CompactCohomology {
    open: StarOpen,
    degree: usize,
    coefficients: FGAbelianGroup,
    support: Vec<usize>,
    pieces: Vec<Subquotient>,
    sum: DirectSum,
}

pub fn compactly_supported_cohomology(u: &StarOpen, n: usize, a: &FGAbelianGroup) -> CompactCohomology {
    let x = u.parent();
    let complex = ChainComplex::supported_cochains(x, u.mask());
    let pieces = complex.homology_pieces(n, a).expect("supported coboundary squares to zero");
    let sum = sum_of(&pieces);
    CompactCohomology {
        open: u.clone(),
        degree: n,
        coefficients: a.clone(),
        support: u.members_of_dim(n),
        pieces,
        sum,
    }
}

impl CompactCohomology {
    pub fn group(&self) -> &FGAbelianGroup {
        &self.sum.group
    }

    pub fn open(&self) -> &StarOpen {
        &self.open
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &FGAbelianGroup {
        &self.coefficients
    }

    /// Ids of the `n`-simplices of `U`, the cochain positions.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn zero_cochain(&self) -> Vec<Vec<Int>> {
        vec![vec![Int::from(0); self.support.len()]; self.pieces.len()]
    }

    /// Cochain with the given `A`-values (canonical coordinates) on the listed
    /// simplex ids and zero elsewhere.
    pub fn cochain(&self, values: &[(usize, Vec<Int>)]) -> Result<Vec<Vec<Int>>> {
        let mut c = self.zero_cochain();
        for (id, v) in values {
            let pos = self.support.binary_search(id).map_err(|_| {
                Error::Validation(format!("simplex {:?} is not a degree-{} simplex of the open", self.open.parent().simplex(*id), self.degree))
            })?;
            if v.len() != self.pieces.len() {
                return Err(Error::Validation("coefficient value has the wrong length".into()));
            }
            for (j, x) in v.iter().enumerate() {
                c[j][pos] = &c[j][pos] + x;
            }
        }
        Ok(c)
    }

    /// Number of cyclic factors of the coefficient group.
    pub fn factor_count(&self) -> usize {
        self.pieces.len()
    }

    /// The summand computed with coefficients in the `j`-th cyclic factor.
    pub fn factor_group(&self, j: usize) -> &FGAbelianGroup {
        self.pieces[j].group()
    }

    /// Image of an element of the `j`-th summand in the whole group.
    pub fn inject_factor(&self, j: usize, x: &[Int]) -> Vec<Int> {
        self.sum.injections[j].apply(x)
    }

    /// Class of a cocycle.
    pub fn classify(&self, cochain: &[Vec<Int>]) -> Result<Vec<Int>> {
        if cochain.len() != self.pieces.len() {
            return Err(Error::Validation("cochain has the wrong number of factors".into()));
        }
        let parts = self
            .pieces
            .iter()
            .zip(cochain)
            .map(|(p, x)| p.classify(x).map_err(|_| Error::Validation("cochain is not a cocycle".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.sum.combine(&parts))
    }

    /// A cocycle representing `class`, entries reduced into `[0, a_j)` for
    /// torsion factors.
    pub fn representative(&self, class: &[Int]) -> Vec<Vec<Int>> {
        let class = self.group().reduce(class);
        self.pieces
            .iter()
            .zip(&self.sum.projections)
            .zip(self.coefficients.orders())
            .map(|((p, proj), m)| p.representative(&proj.apply(&class)).iter().map(|v| reduce_mod(v, m)).collect())
            .collect()
    }

    /// Representatives of the canonical generators.
    pub fn basis_cocycles(&self) -> Vec<Vec<Vec<Int>>> {
        (0..self.group().num_generators()).map(|i| self.representative(&self.group().generator(i))).collect()
    }

    /// Nonzero values of a cochain as `(simplex, A-element)` pairs.
    pub fn values(&self, cochain: &[Vec<Int>]) -> Vec<(Vec<usize>, Vec<Int>)> {
        let x = self.open.parent();
        (0..self.support.len())
            .filter_map(|pos| {
                let v: Vec<Int> = cochain.iter().map(|f| f[pos].clone()).collect();
                let v = self.coefficients.reduce(&v);
                (!self.coefficients.is_zero(&v)).then(|| (x.simplex(self.support[pos]).to_vec(), v))
            })
            .collect()
    }

    /// Extension by zero into a larger open.
    pub fn extend_to(&self, target: &CompactCohomology) -> Result<GroupHom> {
        if self.degree != target.degree || self.coefficients != target.coefficients {
            return Err(Error::GroupMismatch("extension between different degrees or coefficients".into()));
        }
        if let Some(s) = self.open.first_outside(&target.open)? {
            return Err(Error::NotNested(format!(
                "simplex {:?} is in the smaller open only",
                self.open.parent().simplex(s)
            )));
        }
        let positions: Vec<usize> =
            self.support.iter().map(|id| target.support.binary_search(id).expect("nested supports")).collect();
        let mut columns = Vec::new();
        for rep in self.basis_cocycles() {
            let mut ext = target.zero_cochain();
            for (j, factor) in rep.iter().enumerate() {
                for (pos, v) in factor.iter().enumerate() {
                    ext[j][positions[pos]] = v.clone();
                }
            }
            columns.push(target.classify(&ext)?);
        }
        let m = IntMatrix::from_columns(&columns, target.group().num_generators());
        GroupHom::new(self.group().clone(), target.group().clone(), m)
    }
}

impl fmt::Debug for CompactCohomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}_c({:?}; {}) = {}", self.degree, self.open, self.coefficients, self.group())
    }
}

/// The map `H^n_c(U; A) -> H^n_c(V; A)` induced by extending cochains by zero.
pub fn extension_map(u: &StarOpen, v: &StarOpen, n: usize, a: &FGAbelianGroup) -> Result<GroupHom> {
    if !u.is_subset(v)? {
        let s = u.first_outside(v)?.expect("not a subset");
        return Err(Error::NotNested(format!("simplex {:?} is in the smaller open only", u.parent().simplex(s))));
    }
    compactly_supported_cohomology(u, n, a).extend_to(&compactly_supported_cohomology(v, n, a))
}
