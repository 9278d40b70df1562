use crate::surd::Surd;

/// Arithmetic needed by the elimination engine: a commutative semiring
/// with a cheap zero test for skipping.
pub trait Scalar: Clone + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    #[inline]
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Saturating: the engine only sees nonnegative values, so a result of
/// `i128::MAX` means some nonzero contribution overflowed.
impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn add_assign(&mut self, other: &Self) {
        *self = self.saturating_add(*other);
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        self.saturating_mul(*other)
    }
}

/// Saturating like the `i128` version; tried first because it is faster.
impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn add_assign(&mut self, other: &Self) {
        *self = self.saturating_add(*other);
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        self.saturating_mul(*other)
    }
}

impl Scalar for Surd {
    fn zero() -> Self {
        Surd::zero()
    }
    fn one() -> Self {
        Surd::one()
    }
    fn is_zero(&self) -> bool {
        Surd::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self = Surd::add(self, other);
    }
    fn mul(&self, other: &Self) -> Self {
        Surd::mul(self, other)
    }
}
