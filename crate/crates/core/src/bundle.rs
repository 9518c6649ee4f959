//! Isomorphism classes of vector bundles as sums of stable blocks `O(λ)^m`.
//!
//! Every bundle splits as a direct sum of its semistable HN pieces, and every
//! semistable bundle of slope `λ` is `O(λ)^m`. A [`Bundle`] is therefore a
//! finite list of `(slope, multiplicity)` pairs, stored in the canonical form
//! (reduced slopes, merged, strictly descending). Structural equality of
//! canonical forms is isomorphism.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::slope::Slope;

/// One isotypic block `O(λ)^m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StableSummand {
    slope: Slope,
    multiplicity: BigInt,
}

impl StableSummand {
    pub fn new(slope: Slope, multiplicity: impl Into<BigInt>) -> Result<Self> {
        let multiplicity = multiplicity.into();
        if !multiplicity.is_positive() {
            return Err(Error::NonPositiveMultiplicity(multiplicity.to_string()));
        }
        Ok(StableSummand {
            slope,
            multiplicity,
        })
    }

    pub fn slope(&self) -> &Slope {
        &self.slope
    }

    pub fn multiplicity(&self) -> &BigInt {
        &self.multiplicity
    }

    pub fn rank(&self) -> BigInt {
        &self.multiplicity * self.slope.den()
    }

    pub fn degree(&self) -> BigInt {
        &self.multiplicity * self.slope.num()
    }
}

/// Which slopes [`Bundle::truncate`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truncation {
    /// `E^{≥λ}`
    AtLeast,
    /// `E^{>λ}`
    Above,
    /// `E^{≤λ}`
    AtMost,
    /// `E^{<λ}`
    Below,
}

impl Truncation {
    fn keeps(self, slope: &Slope, lambda: &Slope) -> bool {
        match self {
            Truncation::AtLeast => slope >= lambda,
            Truncation::Above => slope > lambda,
            Truncation::AtMost => slope <= lambda,
            Truncation::Below => slope < lambda,
        }
    }
}

/// A vector bundle up to isomorphism, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bundle {
    summands: Vec<StableSummand>,
}

impl Bundle {
    pub fn zero() -> Self {
        Bundle::default()
    }

    /// The stable bundle `O(λ)`.
    pub fn stable(slope: Slope) -> Self {
        Bundle {
            summands: vec![StableSummand {
                slope,
                multiplicity: BigInt::from(1),
            }],
        }
    }

    /// The semistable bundle `O(λ)^m`.
    pub fn semistable(slope: Slope, multiplicity: impl Into<BigInt>) -> Result<Self> {
        Ok(Bundle {
            summands: vec![StableSummand::new(slope, multiplicity)?],
        })
    }

    /// The line bundle `O(d)`.
    pub fn line(degree: impl Into<BigInt>) -> Self {
        Bundle::stable(Slope::integer(degree))
    }

    /// Builds a canonical bundle from raw `(numerator, denominator, multiplicity)`
    /// triples: fractions are reduced, equal slopes merged, and the result
    /// sorted by strictly decreasing slope.
    pub fn from_raw<N, D, M, I>(raw: I) -> Result<Self>
    where
        N: Into<BigInt>,
        D: Into<BigInt>,
        M: Into<BigInt>,
        I: IntoIterator<Item = (N, D, M)>,
    {
        let mut blocks = Vec::new();
        for (num, den, mult) in raw {
            let den = den.into();
            if !den.is_positive() {
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                return Err(Error::Precondition(format!(
                    "denominator must be positive, got {den}"
                )));
            }
            blocks.push(StableSummand::new(Slope::new(num, den)?, mult)?);
        }
        Ok(Bundle::from_summands(blocks))
    }

    /// Canonicalizes an arbitrary list of blocks.
    pub fn from_summands(blocks: impl IntoIterator<Item = StableSummand>) -> Self {
        let mut merged: BTreeMap<Slope, BigInt> = BTreeMap::new();
        for b in blocks {
            *merged.entry(b.slope).or_insert_with(BigInt::zero) += b.multiplicity;
        }
        Bundle {
            summands: merged
                .into_iter()
                .rev()
                .map(|(slope, multiplicity)| StableSummand {
                    slope,
                    multiplicity,
                })
                .collect(),
        }
    }

    /// Blocks in order of strictly decreasing slope.
    pub fn summands(&self) -> &[StableSummand] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn rank(&self) -> BigInt {
        self.summands.iter().map(StableSummand::rank).sum()
    }

    pub fn degree(&self) -> BigInt {
        self.summands.iter().map(StableSummand::degree).sum()
    }

    /// `μ = deg / rank`, in lowest terms.
    pub fn mu(&self) -> Result<Slope> {
        if self.is_zero() {
            return Err(Error::ZeroBundle("slope"));
        }
        Slope::new(self.degree(), self.rank())
    }

    pub fn mu_max(&self) -> Option<&Slope> {
        self.summands.first().map(StableSummand::slope)
    }

    pub fn mu_min(&self) -> Option<&Slope> {
        self.summands.last().map(StableSummand::slope)
    }

    /// `O(λ)^m ↦ O(−λ)^m` blockwise.
    pub fn dual(&self) -> Bundle {
        Bundle {
            summands: self
                .summands
                .iter()
                .rev()
                .map(|b| StableSummand {
                    slope: -&b.slope,
                    multiplicity: b.multiplicity.clone(),
                })
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &Bundle) -> Bundle {
        Bundle::from_summands(self.summands.iter().chain(&other.summands).cloned())
    }

    /// Tensor product, bilinear over blocks:
    /// `O(r/s) ⊗ O(r'/s') = O(r/s + r'/s')^{gcd(ss', rs' + r's)}`.
    pub fn tensor(&self, other: &Bundle) -> Bundle {
        let mut blocks = Vec::with_capacity(self.summands.len() * other.summands.len());
        for a in &self.summands {
            for b in &other.summands {
                let (r, s) = (a.slope.num(), a.slope.den());
                let (r2, s2) = (b.slope.num(), b.slope.den());
                let rank = s * s2;
                let degree = r * s2 + r2 * s;
                let copies = rank.gcd(&degree);
                blocks.push(StableSummand {
                    slope: &a.slope + &b.slope,
                    multiplicity: &a.multiplicity * &b.multiplicity * copies,
                });
            }
        }
        Bundle::from_summands(blocks)
    }

    /// `Hom(self, other) = self^∨ ⊗ other`.
    pub fn hom(&self, other: &Bundle) -> Bundle {
        self.dual().tensor(other)
    }

    /// Slope truncation `E^{≥λ}`, `E^{>λ}`, `E^{≤λ}` or `E^{<λ}`.
    ///
    /// `E^{≤λ}` and `E^{<λ}` are quotients of `E`; since the HN filtration
    /// splits they are returned as the complementary direct summand.
    pub fn truncate(&self, lambda: &Slope, mode: Truncation) -> Bundle {
        Bundle {
            summands: self
                .summands
                .iter()
                .filter(|b| mode.keeps(&b.slope, lambda))
                .cloned()
                .collect(),
        }
    }

    pub fn is_semistable(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroBundle("semistability"));
        }
        Ok(self.summands.len() == 1)
    }

    pub fn is_stable(&self) -> Result<bool> {
        Ok(self.is_semistable()? && self.summands[0].multiplicity == BigInt::from(1))
    }

    /// Errors unless the bundle is nonzero and semistable.
    pub(crate) fn require_semistable(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::ZeroBundle("semistable input"));
        }
        if !self.is_semistable()? {
            return Err(Error::NotSemistable(self.to_string()));
        }
        Ok(())
    }

    /// Twist by the line bundle `O(n)`.
    pub fn twist(&self, n: impl Into<BigInt>) -> Bundle {
        self.tensor(&Bundle::line(n))
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        for (i, b) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "O({})", b.slope)?;
            if b.multiplicity != BigInt::from(1) {
                write!(f, "^{}", b.multiplicity)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bundle({self})")
    }
}
