//! Common ring interface for exact scalars, polynomials and rational functions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::MultiPoly;
use crate::ratfunc::RatFunc;
use crate::scalar::CycloNumber;

/// Minimal ring interface shared by matrix entries.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_add(&self, o: &Self) -> Self;
    fn r_sub(&self, o: &Self) -> Self;
    fn r_mul(&self, o: &Self) -> Self;
    fn r_from_bigint(n: BigInt) -> Self;
}

macro_rules! impl_ring {
    ($t:ty, $from:expr) => {
        impl Ring for $t {
            fn r_zero() -> Self {
                <$t>::zero()
            }
            fn r_one() -> Self {
                <$t>::one()
            }
            fn r_is_zero(&self) -> bool {
                self.is_zero()
            }
            fn r_add(&self, o: &Self) -> Self {
                self + o
            }
            fn r_sub(&self, o: &Self) -> Self {
                self - o
            }
            fn r_mul(&self, o: &Self) -> Self {
                self * o
            }
            fn r_from_bigint(n: BigInt) -> Self {
                $from(CycloNumber::from_bigint(n))
            }
        }
    };
}
impl_ring!(CycloNumber, |c| c);
impl_ring!(MultiPoly, MultiPoly::constant);
impl_ring!(RatFunc, RatFunc::constant);
