//! Lattices of integer vectors and their quotients.
//!
//! Homology with coefficients in `Z/m` (with `m = 0` meaning `Z`) is computed
//! as a subquotient of `Z^n`: the lattice of vectors whose image under the
//! outgoing differential vanishes modulo `m`, divided by the image of the
//! incoming differential plus `m Z^n`.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::FGAbelianGroup;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};

/// `{x in Z^n : map * x ≡ 0 (mod m)}` with a basis and exact coordinates.
#[derive(Clone, Debug)]
pub struct KernelLattice {
    ambient: usize,
    /// Basis vectors as columns (`ambient x k`).
    basis: IntMatrix,
    /// Rows of a unimodular matrix; coordinate `i` of `x` is `(coords * x)_i / scales_i`.
    coords: IntMatrix,
    scales: Vec<Int>,
    /// Rows of `coords` that must vanish on lattice members.
    forbidden: IntMatrix,
}

impl KernelLattice {
    /// Kernel of `map` (`r x n`) modulo `modulus`.
    pub fn of(map: &IntMatrix, modulus: &Int) -> Self {
        let n = map.ncols();
        let snf = smith_normal_form(map);
        let rank = snf.rank();
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        let mut scales = Vec::new();
        for i in 0..n {
            let scale = if i < rank {
                if modulus.is_zero() {
                    Int::zero()
                } else {
                    modulus / modulus.gcd(&snf.diagonal[i])
                }
            } else {
                Int::one()
            };
            if scale.is_zero() {
                dropped.push(i);
            } else {
                kept.push(i);
                scales.push(scale);
            }
        }
        let mut basis = snf.right.select_columns(&kept);
        for (c, s) in scales.iter().enumerate() {
            for r in 0..n {
                basis[(r, c)] = &basis[(r, c)] * s;
            }
        }
        KernelLattice {
            ambient: n,
            basis,
            coords: snf.right_inverse.select_rows(&kept),
            scales,
            forbidden: snf.right_inverse.select_rows(&dropped),
        }
    }

    /// All of `Z^n`.
    pub fn full(n: usize) -> Self {
        KernelLattice::of(&IntMatrix::zeros(0, n), &Int::zero())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.scales.len()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates of a member in the lattice basis, or `None` if `x` is not
    /// in the lattice.
    pub fn coordinates(&self, x: &[Int]) -> Option<Vec<Int>> {
        if self.forbidden.mul_vec(x).iter().any(|v| !v.is_zero()) {
            return None;
        }
        let w = self.coords.mul_vec(x);
        w.iter()
            .zip(&self.scales)
            .map(|(v, s)| {
                let (q, r) = v.div_rem(s);
                r.is_zero().then_some(q)
            })
            .collect()
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn vector(&self, coords: &[Int]) -> Vec<Int> {
        self.basis.mul_vec(coords)
    }
}

/// `L / D` for a lattice `L` and generators of a sublattice `D ⊆ L`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    lattice: KernelLattice,
    group: FGAbelianGroup,
}

impl Subquotient {
    /// `denominators` holds generators of `D` as columns (`n x m`).
    pub fn new(lattice: KernelLattice, denominators: &IntMatrix) -> Result<Self> {
        let k = lattice.rank();
        let mut rel = IntMatrix::zeros(k, denominators.ncols());
        for c in 0..denominators.ncols() {
            let coords = lattice.coordinates(&denominators.column(c)).ok_or_else(|| {
                Error::Validation(format!("denominator generator {c} is not in the numerator lattice"))
            })?;
            for (r, v) in coords.into_iter().enumerate() {
                rel[(r, c)] = v;
            }
        }
        let group = FGAbelianGroup::from_presentation(k, rel);
        Ok(Subquotient { lattice, group })
    }

    /// Homology at the middle of `incoming` (`n x p`) and `outgoing`
    /// (`r x n`), with coefficients `Z/modulus`.
    pub fn homology(incoming: &IntMatrix, outgoing: &IntMatrix, modulus: &Int) -> Result<Self> {
        let n = outgoing.ncols();
        assert_eq!(incoming.nrows(), n, "differentials do not compose");
        let lattice = KernelLattice::of(outgoing, modulus);
        let mut denominators = incoming.clone();
        if !modulus.is_zero() {
            denominators = denominators.hcat(&crate::IntMatrix::identity(n).scale(modulus));
        }
        Subquotient::new(lattice, &denominators)
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn lattice(&self) -> &KernelLattice {
        &self.lattice
    }

    /// Class of a lattice member.
    pub fn classify(&self, x: &[Int]) -> Result<Vec<Int>> {
        let coords = self
            .lattice
            .coordinates(x)
            .ok_or_else(|| Error::Validation("vector is not a cycle of the complex".into()))?;
        Ok(self.group.from_presentation_coords(&coords))
    }

    /// A lattice vector representing a class.
    pub fn representative(&self, class: &[Int]) -> Vec<Int> {
        let coords = self.group.to_presentation_coords(&self.group.reduce(class));
        self.lattice.vector(&coords)
    }
}

/// Solve `a x ≡ b (mod m)`; `m = 0` asks for an exact integer solution.
pub fn solve_congruence(a: &IntMatrix, b: &[Int], modulus: &Int) -> Option<Vec<Int>> {
    assert_eq!(a.nrows(), b.len(), "right-hand side has wrong length");
    let snf = smith_normal_form(a);
    let pb = snf.left.mul_vec(b);
    let mut y = vec![Int::zero(); a.ncols()];
    for (i, target) in pb.iter().enumerate() {
        let d = snf.diagonal.get(i).cloned().unwrap_or_else(Int::zero);
        if modulus.is_zero() {
            if d.is_zero() {
                if !target.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = target.div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
        } else {
            // d y ≡ t (mod m) solvable iff gcd(d, m) | t
            let g = d.gcd(modulus);
            if !target.is_multiple_of(&g) {
                return None;
            }
            if d.is_zero() {
                continue;
            }
            let m_red = modulus / &g;
            let d_red = &d / &g;
            let t_red = target / &g;
            let inv = mod_inverse(&d_red, &m_red)?;
            y[i] = (t_red * inv).mod_floor(&m_red);
        }
    }
    let x = snf.right.mul_vec(&y);
    Some(if modulus.is_zero() { x } else { x.into_iter().map(|v| v.mod_floor(modulus)).collect() })
}

/// Inverse of `a` modulo `m` (`m >= 1`), if it exists.
pub fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    if m.is_one() {
        return Some(Int::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntMatrix;

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn circle_homology_over_z_and_z2() {
        // triangle boundary: d1 is 3 vertices x 3 edges
        let d1 = IntMatrix::from_i64_rows(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]]);
        let zero_in = IntMatrix::zeros(3, 0);
        let h1 = Subquotient::homology(&zero_in, &d1, &Int::zero()).unwrap();
        assert_eq!(h1.group().to_string(), "Z");
        let h0 = Subquotient::homology(&d1, &IntMatrix::zeros(0, 3), &Int::zero()).unwrap();
        assert_eq!(h0.group().to_string(), "Z");
        let h1_mod2 = Subquotient::homology(&zero_in, &d1, &Int::from(2)).unwrap();
        assert_eq!(h1_mod2.group().to_string(), "Z/2");
        // the cycle e01 - e02 + e12 generates
        let cls = h1.classify(&v(&[1, -1, 1])).unwrap();
        assert_eq!(cls.len(), 1);
        assert!(cls[0] == Int::from(1) || cls[0] == Int::from(-1));
        assert!(h1.classify(&v(&[1, 0, 0])).is_err());
    }

    #[test]
    fn representative_round_trip() {
        // Z^2 / <(2, 0)> = Z + Z/2
        let lat = KernelLattice::full(2);
        let sq = Subquotient::new(lat, &IntMatrix::from_i64_rows(&[&[2], &[0]])).unwrap();
        assert_eq!(sq.group().to_string(), "Z + Z/2");
        for e in [v(&[1, 0]), v(&[0, 1]), v(&[3, 1])] {
            let rep = sq.representative(&e);
            assert_eq!(sq.classify(&rep).unwrap(), sq.group().reduce(&e));
        }
    }

    #[test]
    fn kernel_mod_m() {
        // 2x ≡ 0 mod 4 -> x in 2Z
        let lat = KernelLattice::of(&IntMatrix::from_i64_rows(&[&[2]]), &Int::from(4));
        assert!(lat.contains(&v(&[2])));
        assert!(!lat.contains(&v(&[1])));
    }

    #[test]
    fn congruences() {
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let x = solve_congruence(&a, &v(&[1, 1]), &Int::from(5)).unwrap();
        let ax = a.mul_vec(&x);
        assert_eq!(ax[0].mod_floor(&Int::from(5)), Int::from(1));
        assert_eq!(ax[1].mod_floor(&Int::from(5)), Int::from(1));
        assert!(solve_congruence(&a, &v(&[1, 0]), &Int::from(4)).is_none());
        assert!(solve_congruence(&a, &v(&[1, 0]), &Int::zero()).is_none());
        assert_eq!(solve_congruence(&a, &v(&[4, 3]), &Int::zero()).unwrap(), v(&[2, 1]));
        assert_eq!(mod_inverse(&Int::from(3), &Int::from(7)), Some(Int::from(5)));
        assert_eq!(mod_inverse(&Int::from(2), &Int::from(4)), None);
    }
}
