use std::fmt;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A slope `d/h` in lowest terms with `h >= 1`.
///
/// Ordering is by rational value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope(BigRational);

impl Slope {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Slope(BigRational::new(num.into(), den)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Slope(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Slope(BigRational::zero())
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Slope(r)
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.denom().is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl Neg for Slope {
    type Output = Slope;
    fn neg(self) -> Slope {
        Slope(-self.0)
    }
}

impl Neg for &Slope {
    type Output = Slope;
    fn neg(self) -> Slope {
        Slope(-self.0.clone())
    }
}

impl Add for &Slope {
    type Output = Slope;
    fn add(self, rhs: &Slope) -> Slope {
        Slope(&self.0 + &rhs.0)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All reduced slopes `a/h` with `1 <= h <= max_den` in the closed interval
/// `[lo, hi]`, sorted ascending.
pub fn slopes_between(lo: &Slope, hi: &Slope, max_den: u32) -> Vec<Slope> {
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    for h in 1..=max_den {
        let h = BigInt::from(h);
        let lo_num = ceil_mul(lo.as_ratio(), &h);
        let hi_num = floor_mul(hi.as_ratio(), &h);
        let mut a = lo_num;
        while a <= hi_num {
            if num_integer::Integer::gcd(&a, &h).is_one() {
                out.push(Slope(BigRational::new(a.clone(), h.clone())));
            }
            a += 1;
        }
    }
    out.sort();
    out
}

fn floor_mul(r: &BigRational, h: &BigInt) -> BigInt {
    (r * BigRational::from_integer(h.clone())).floor().to_integer()
}

fn ceil_mul(r: &BigRational, h: &BigInt) -> BigInt {
    (r * BigRational::from_integer(h.clone())).ceil().to_integer()
}
