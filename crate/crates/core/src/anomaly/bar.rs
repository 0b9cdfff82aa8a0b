use num_integer::Integer;

use crate::abelian::{FGAbelianGroup, FiniteGroup, Subquotient};
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};

/// Default cap on the entries of one dense coboundary matrix.
pub const DEFAULT_BAR_LIMIT: usize = 4_000_000;

/// Index of a tuple of non-identity elements among normalized cochain
/// arguments, most significant entry first.
pub(crate) struct BarIndex {
    rank: Vec<usize>,
    base: usize,
}

impl BarIndex {
    pub(crate) fn new(g: &FiniteGroup) -> Self {
        let e = g.identity();
        let mut rank = vec![usize::MAX; g.order()];
        let mut next = 0;
        for (x, r) in rank.iter_mut().enumerate() {
            if x != e {
                *r = next;
                next += 1;
            }
        }
        BarIndex { rank, base: next }
    }

    /// `None` if some entry is the identity.
    pub(crate) fn index(&self, tuple: &[usize]) -> Option<usize> {
        tuple.iter().try_fold(0, |acc, &x| (self.rank[x] != usize::MAX).then(|| acc * self.base + self.rank[x]))
    }

    pub(crate) fn count(&self, k: usize) -> usize {
        self.base.pow(k as u32)
    }

    /// The non-identity tuples of length `k`, in index order.
    pub(crate) fn tuples(&self, k: usize) -> Vec<Vec<usize>> {
        let elements: Vec<usize> = (0..self.rank.len()).filter(|&x| self.rank[x] != usize::MAX).collect();
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|t| {
                    elements.iter().map(move |&x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        out
    }
}

/// The normalized bar coboundary `C^k(G; Z) -> C^{k+1}(G; Z)` for the trivial
/// action, as a matrix with rows indexed by `(k+1)`-tuples.
pub fn bar_coboundary(g: &FiniteGroup, k: usize) -> IntMatrix {
    let idx = BarIndex::new(g);
    let mut m = IntMatrix::zeros(idx.count(k + 1), idx.count(k));
    for (row, t) in idx.tuples(k + 1).into_iter().enumerate() {
        let mut add = |arg: Vec<usize>, sign: i64| {
            if let Some(col) = idx.index(&arg) {
                m[(row, col)] += Int::from(sign);
            }
        };
        add(t[1..].to_vec(), 1);
        for i in 0..k {
            let mut arg = t[..i].to_vec();
            arg.push(g.mul(t[i], t[i + 1]));
            arg.extend_from_slice(&t[i + 2..]);
            add(arg, if (i + 1).is_even() { 1 } else { -1 });
        }
        add(t[..k].to_vec(), if (k + 1).is_even() { 1 } else { -1 });
    }
    m
}

/// `H^k(G; Z)` from the normalized bar complex.
pub fn group_cohomology_z(g: &FiniteGroup, k: usize) -> Result<FGAbelianGroup> {
    group_cohomology_z_with_limit(g, k, DEFAULT_BAR_LIMIT)
}

pub fn group_cohomology_z_with_limit(g: &FiniteGroup, k: usize, limit: usize) -> Result<FGAbelianGroup> {
    if k > 4 {
        return Err(Error::Validation(format!("degree {k} is above the supported range 0..=4")));
    }
    let idx = BarIndex::new(g);
    let entries = idx.count(k + 1).checked_mul(idx.count(k)).filter(|&n| n <= limit);
    if entries.is_none() {
        return Err(Error::Budget { limit, context: format!("building the bar complex of a group of order {} in degree {k}", g.order()) });
    }
    let outgoing = bar_coboundary(g, k);
    let incoming = if k == 0 { IntMatrix::zeros(1, 0) } else { bar_coboundary(g, k - 1) };
    Ok(Subquotient::homology(&incoming, &outgoing, &Int::from(0))?.group().clone())
}
