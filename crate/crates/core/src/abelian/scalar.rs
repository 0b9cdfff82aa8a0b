use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalar usable by the matrix and Smith normal form routines.
///
/// Machine integers are accepted for speed in tests and small inputs; the
/// topology layers always instantiate with [`BigInt`].
pub trait IntScalar:
    Clone
    + Debug
    + Display
    + Hash
    + Ord
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Compare absolute values without allocating.
    fn magnitude_cmp(&self, other: &Self) -> Ordering;

    fn of(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("scalar out of range")
    }
}

macro_rules! machine_scalar {
    ($($t:ty),*) => {$(
        impl IntScalar for $t {
            fn magnitude_cmp(&self, other: &Self) -> Ordering {
                self.unsigned_abs().cmp(&other.unsigned_abs())
            }
        }
    )*};
}

machine_scalar!(i32, i64, i128);

impl IntScalar for BigInt {
    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
}

/// Least nonnegative residue; a modulus of zero leaves the value untouched.
pub fn reduce_mod<T: IntScalar>(value: &T, modulus: &T) -> T {
    if modulus.is_zero() {
        value.clone()
    } else {
        value.mod_floor(&modulus.abs())
    }
}
