//! Gaussian rationals: the exact coefficient field Q(i).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of Q(i), stored as a pair of arbitrary-precision rationals.
///
/// Both parts are kept in lowest terms with a positive denominator
/// (guaranteed by `BigRational`), so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// Convenience constructor for `num/den` with `den != 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Returns the rational value if the imaginary part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_real().then_some(&self.re)
    }

    /// Returns the integer value if this is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.is_real() && self.re.is_integer()).then(|| self.re.to_integer())
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1/z = conj(z) / |z|^2
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        })
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("division by zero")
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

fn fmt_imaginary(im: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else if (-im).is_one() {
        write!(f, "-i")
    } else {
        write!(f, "{}*i", im)
    }
}

/// Canonical text form, no spaces: `0`, `3/2`, `-i`, `2*i`, `1/2-3/4*i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return fmt_imaginary(&self.im, f);
        }
        write!(f, "{}", self.re)?;
        if self.im.is_positive() {
            write!(f, "+")?;
            fmt_imaginary(&self.im, f)
        } else {
            write!(f, "-")?;
            fmt_imaginary(&-&self.im, f)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_field_arithmetic() {
        let a = GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer(3.into()),
        );
        let b = GaussianRational::new(
            BigRational::from_integer(2.into()),
            BigRational::new((-1).into(), 4.into()),
        );
        let prod = &a * &b;
        // (1/2 + 3i)(2 - i/4) = 1 + 3/4 + (6 - 1/8)i
        assert_eq!(
            prod,
            GaussianRational::new(
                BigRational::new(7.into(), 4.into()),
                BigRational::new(47.into(), 8.into()),
            )
        );
        assert_eq!(&prod / &b, a);
        assert_eq!(&a - &a, GaussianRational::zero());
    }

    #[test]
    fn test_inverse() {
        let z = GaussianRational::new(
            BigRational::from_integer(3.into()),
            BigRational::from_integer(4.into()),
        );
        let inv = z.inv();
        assert!((&z * &inv).is_one());
        assert!(GaussianRational::zero().checked_inv().is_none());
    }

    #[test]
    fn test_display_canonical() {
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::ratio(3, 2).to_string(), "3/2");
        assert_eq!(GaussianRational::ratio(-4, 2).to_string(), "-2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        let z = GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        );
        assert_eq!(z.to_string(), "1/2-3/4*i");
        let w = GaussianRational::new(
            BigRational::from_integer((-1).into()),
            BigRational::from_integer(2.into()),
        );
        assert_eq!(w.to_string(), "-1+2*i");
        assert_eq!(
            GaussianRational::new(BigRational::zero(), BigRational::new(2.into(), 3.into()))
                .to_string(),
            "2/3*i"
        );
    }

    #[test]
    fn test_pow() {
        let i = GaussianRational::i();
        assert_eq!(i.pow(2), -GaussianRational::one());
        assert_eq!(i.pow(4), GaussianRational::one());
    }
}
