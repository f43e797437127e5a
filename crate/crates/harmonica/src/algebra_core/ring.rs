use std::fmt;

use super::Rational;

/// Operations shared by every algebra in the engine. Zero and one depend on
/// the alphabet, so they are produced from an existing value.
///
/// Binary operations panic when the operands live in different algebras;
/// the concrete types also offer `checked_*` variants returning errors.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..n {
            acc = acc.times(self);
        }
        acc
    }
}

/// Rings where some elements are recognisably invertible (a nonzero scalar
/// times a group element, or a nonzero constant).
pub trait UnitRing: Ring {
    fn unit_inverse(&self) -> Option<Self>;
}

/// Implements `+ - * neg` on owned values and references through [`Ring`].
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl std::ops::Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $crate::algebra_core::Ring::plus(self, rhs)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::algebra_core::Ring::plus(&self, &rhs)
            }
        }
        impl std::ops::Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $crate::algebra_core::Ring::minus(self, rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::algebra_core::Ring::minus(&self, &rhs)
            }
        }
        impl std::ops::Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $crate::algebra_core::Ring::times(self, rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::algebra_core::Ring::times(&self, &rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::algebra_core::Ring::negated(self)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::algebra_core::Ring::negated(&self)
            }
        }
    };
}
pub(crate) use impl_ring_ops;
