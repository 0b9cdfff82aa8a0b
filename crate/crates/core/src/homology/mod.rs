//! Simplicial (co)homology with finitely generated coefficients and
//! compactly supported cohomology of star-opens.
//!
//! A coefficient group `A = Z/a_1 + ... + Z/a_k` (with `a_j = 0` for a free
//! factor) is handled one cyclic factor at a time: the integral complex is
//! reduced modulo `a_j` and the answers are summed. Cochains with values in
//! `A` are therefore stored as one integer vector per factor.

mod compact;
mod duality;

use crate::abelian::{DirectSum, FGAbelianGroup, Subquotient};
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::{Int, IntMatrix};

pub use compact::{compactly_supported_cohomology, extension_map, CompactCohomology};
pub use duality::{homotopy_groups_of_symmetry_space, poincare_duality_check, DualityDegree, DualityReport};

/// `∂_n : C_n -> C_{n-1}`, rows indexed by `(n-1)`-simplices and columns by
/// `n`-simplices, both in id order. `∂_0` has no rows.
pub fn boundary_matrix(k: &SimplicialComplex, n: usize) -> IntMatrix {
    let cols: Vec<usize> = k.ids_of_dim(n).collect();
    if n == 0 {
        return IntMatrix::zeros(0, cols.len());
    }
    let rows = k.ids_of_dim(n - 1);
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (c, &s) in cols.iter().enumerate() {
        for (f, e) in k.faces(s) {
            m[(f - rows.start, c)] = Int::from(e);
        }
    }
    m
}

/// A finite complex of free abelian groups.
///
/// `out[n]` is the differential leaving degree `n`; it lands in degree
/// `n - 1` for a chain complex and `n + 1` for a cochain complex.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    out: Vec<IntMatrix>,
    descending: bool,
}

impl ChainComplex {
    /// The simplicial chain complex of `k`.
    pub fn chains(k: &SimplicialComplex) -> Self {
        let top = k.dimension().map_or(0, |d| d + 1);
        let ranks = (0..top).map(|n| k.count(n)).collect();
        let out = (0..top).map(|n| boundary_matrix(k, n)).collect();
        ChainComplex { ranks, out, descending: true }
    }

    /// The simplicial cochain complex of `k`.
    pub fn cochains(k: &SimplicialComplex) -> Self {
        let top = k.dimension().map_or(0, |d| d + 1);
        let ranks = (0..top).map(|n| k.count(n)).collect();
        let out = (0..top).map(|n| boundary_matrix(k, n + 1).transpose()).collect();
        ChainComplex { ranks, out, descending: false }
    }

    /// Cochains on `members` only, with the restricted coboundary. Meaningful
    /// when `members` is up-closed, so that the coboundary preserves support.
    pub fn supported_cochains(k: &SimplicialComplex, members: &[bool]) -> Self {
        let top = k.dimension().map_or(0, |d| d + 1);
        let support: Vec<Vec<usize>> = (0..top).map(|n| k.ids_of_dim(n).filter(|&i| members[i]).collect()).collect();
        let ranks = support.iter().map(Vec::len).collect();
        let out = (0..top)
            .map(|n| {
                let rows = support.get(n + 1).map_or(&[][..], |v| v.as_slice());
                let cols = &support[n];
                let mut m = IntMatrix::zeros(rows.len(), cols.len());
                for (r, &t) in rows.iter().enumerate() {
                    for (f, e) in k.faces(t) {
                        if let Ok(c) = cols.binary_search(&f) {
                            m[(r, c)] = Int::from(e);
                        }
                    }
                }
                m
            })
            .collect();
        ChainComplex { ranks, out, descending: false }
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn top(&self) -> usize {
        self.ranks.len()
    }

    /// The differential leaving degree `n`.
    pub fn outgoing(&self, n: usize) -> IntMatrix {
        match self.out.get(n) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(0, 0),
        }
    }

    /// The differential arriving in degree `n`.
    pub fn incoming(&self, n: usize) -> IntMatrix {
        let prev = if self.descending { Some(n + 1) } else { n.checked_sub(1) };
        match prev.and_then(|p| self.out.get(p)) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.rank(n), 0),
        }
    }

    /// Whether consecutive differentials compose to zero.
    pub fn squares_to_zero(&self) -> bool {
        (0..self.top()).all(|n| {
            let inc = self.incoming(n);
            let out = self.outgoing(n);
            inc.ncols() == 0 || out.nrows() == 0 || out.mul(&inc).is_zero()
        })
    }

    /// Homology at degree `n` with `Z/modulus` coefficients, with the lattice
    /// data needed to classify and represent cycles.
    pub fn homology_mod(&self, n: usize, modulus: &Int) -> Result<Subquotient> {
        let rank = self.rank(n);
        let out = match self.out.get(n) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(0, rank),
        };
        Subquotient::homology(&self.incoming(n), &out, modulus)
    }

    /// Homology at degree `n` with coefficients in `a`, one subquotient per
    /// cyclic factor of `a`.
    pub fn homology_pieces(&self, n: usize, a: &FGAbelianGroup) -> Result<Vec<Subquotient>> {
        a.orders().iter().map(|m| self.homology_mod(n, m)).collect()
    }

    pub fn homology(&self, n: usize, a: &FGAbelianGroup) -> Result<FGAbelianGroup> {
        let pieces = self.homology_pieces(n, a)?;
        Ok(sum_of(&pieces).group)
    }
}

pub(crate) fn sum_of(pieces: &[Subquotient]) -> DirectSum {
    let groups: Vec<FGAbelianGroup> = pieces.iter().map(|p| p.group().clone()).collect();
    FGAbelianGroup::direct_sum(&groups)
}

/// `H_n(K; A)`.
pub fn homology(k: &SimplicialComplex, n: usize, a: &FGAbelianGroup) -> FGAbelianGroup {
    ChainComplex::chains(k).homology(n, a).expect("boundary of a boundary vanishes")
}

/// `H^n(K; A)`.
pub fn cohomology(k: &SimplicialComplex, n: usize, a: &FGAbelianGroup) -> FGAbelianGroup {
    ChainComplex::cochains(k).homology(n, a).expect("coboundary of a coboundary vanishes")
}

/// Betti numbers over `Z`.
pub fn betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    let z = FGAbelianGroup::integers();
    let top = k.dimension().map_or(0, |d| d + 1);
    (0..top).map(|n| homology(k, n, &z).rank()).collect()
}

/// `Z`, the default coefficient group.
pub fn integers() -> FGAbelianGroup {
    FGAbelianGroup::integers()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{library, library_names};
    use crate::Int;

    fn zmod(n: u64) -> FGAbelianGroup {
        FGAbelianGroup::cyclic(n)
    }

    fn hs(name: &str, a: &FGAbelianGroup) -> Vec<String> {
        let k = library(name).unwrap();
        (0..=k.dimension().unwrap()).map(|n| homology(&k, n, a).to_string()).collect()
    }

    fn hcs(name: &str, a: &FGAbelianGroup) -> Vec<String> {
        let k = library(name).unwrap();
        (0..=k.dimension().unwrap()).map(|n| cohomology(&k, n, a).to_string()).collect()
    }

    #[test]
    fn library_homology_against_oracle() {
        let z = integers();
        assert_eq!(hs("S2tet", &z), ["Z", "0", "Z"]);
        assert_eq!(hs("T2", &z), ["Z", "Z^2", "Z"]);
        assert_eq!(hs("T2grid", &z), ["Z", "Z^2", "Z"]);
        assert_eq!(hs("K2", &z), ["Z", "Z + Z/2", "0"]);
        assert_eq!(hs("RP2", &z), ["Z", "Z/2", "0"]);
        assert_eq!(hs("K2", &zmod(2)), ["Z/2", "Z/2 + Z/2", "Z/2"]);
        assert_eq!(hcs("K2", &z), ["Z", "Z", "Z/2"]);
        assert_eq!(hcs("RP2", &z), ["Z", "0", "Z/2"]);
        assert_eq!(hs("S3", &z), ["Z", "0", "0", "Z"]);
    }

    #[test]
    fn mixed_coefficients() {
        let a = FGAbelianGroup::from_cyclic_orders(&[Int::from(0), Int::from(2)]);
        // H_1(RP2; Z + Z/2) = Z/2 + Z/2, H_2 = 0 + Z/2
        let k = library("RP2").unwrap();
        assert_eq!(homology(&k, 1, &a).to_string(), "Z/2 + Z/2");
        assert_eq!(homology(&k, 2, &a).to_string(), "Z/2");
        assert!(homology(&k, 5, &a).is_trivial());
    }

    #[test]
    fn boundaries_square_to_zero() {
        for name in library_names() {
            let k = library(name).unwrap();
            assert!(ChainComplex::chains(&k).squares_to_zero(), "{name}");
            assert!(ChainComplex::cochains(&k).squares_to_zero(), "{name}");
        }
    }

    #[test]
    fn euler_characteristic_from_betti_numbers() {
        for name in library_names() {
            let k = library(name).unwrap();
            let chi: i64 = betti_numbers(&k).iter().enumerate().map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
            assert_eq!(chi, k.euler_characteristic(), "{name}");
        }
    }
}
