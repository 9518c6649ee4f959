//! Closed-form dimensions of moduli of bundle maps and extensions.
//!
//! Every dimension is a combination of `deg(V^∨ ⊗ W)^{≥0}` terms, computed
//! from HN vectors. Nonemptiness of a stratum is tri-state: only facts backed
//! by a checkable criterion are reported as known.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bundle::{Bundle, Truncation};
use crate::error::{Error, Result};
use crate::extensions::exists_extension;
use crate::polygon::{deg_hom, deg_hom_nonneg, instability, Polygon};
use crate::slope::Slope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Nonempty {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Nonempty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Nonempty::Yes => "yes",
            Nonempty::No => "no",
            Nonempty::Unknown => "unknown",
        })
    }
}

/// A stratum dimension; `value` is meaningful unless `nonempty` is `No`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumDim {
    pub value: BigInt,
    pub nonempty: Nonempty,
}

/// `dim H⁰(E) = deg E^{≥0}`.
pub fn dim_h0(e: &Bundle) -> BigInt {
    e.truncate(&Slope::zero(), Truncation::AtLeast).degree()
}

/// `dim Hom(E, F) = deg(E^∨ ⊗ F)^{≥0}`.
pub fn dim_hom(e: &Bundle, f: &Bundle) -> BigInt {
    deg_hom_nonneg(e, f)
}

/// `dim Aut(E) = deg(E^∨ ⊗ E)^{≥0}`.
pub fn dim_aut(e: &Bundle) -> BigInt {
    deg_hom_nonneg(e, e)
}

/// Strip-slope test for `Q` being a quotient of `E`: with right endpoints
/// aligned, on every unit strip `[−i, −i+1]`, `1 ≤ i ≤ rank Q`, the slope of
/// `HN(Q)` is at least that of `HN(E)`.
pub fn quotient_necessary(e: &Bundle, q: &Bundle) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::ZeroBundle("quotient test"));
    }
    if q.rank() > e.rank() {
        return Err(Error::Precondition(format!(
            "rank of {q} exceeds rank of {e}"
        )));
    }
    let (qs, es) = (strip_slopes_from_right(q), strip_slopes_from_right(e));
    Ok(qs.iter().zip(&es).all(|(sq, se)| sq >= se))
}

/// Slopes of the unit strips counted from the right end of `HN(b)`.
fn strip_slopes_from_right(b: &Bundle) -> Vec<&Slope> {
    let mut out = Vec::new();
    for block in b.summands().iter().rev() {
        let width = block.rank();
        let mut i = BigInt::zero();
        while i < width {
            out.push(block.slope());
            i += 1;
        }
    }
    out
}

/// Whether a surjection `E ↠ Q` is certified to exist: `Q = E`, or `Q`
/// semistable of smaller rank with `μ_max(E) ≤ μ(Q)`.
fn surjection_certified(e: &Bundle, q: &Bundle) -> bool {
    if e == q {
        return true;
    }
    let (Ok(true), Ok(mu_q)) = (q.is_semistable(), q.mu()) else {
        return false;
    };
    e.rank() > q.rank() && e.mu_max().is_some_and(|m| *m <= mu_q)
}

/// Whether an injection `Q ↪ F` is certified to exist (dual of a surjection
/// `F^∨ ↠ Q^∨`).
fn injection_certified(q: &Bundle, f: &Bundle) -> bool {
    q == f || surjection_certified(&f.dual(), &q.dual())
}

/// Dimension of the locus of maps `E → F` with image `Q`:
/// `deg(E^∨⊗Q)^{≥0} + deg(Q^∨⊗F)^{≥0} − deg(Q^∨⊗Q)^{≥0}`.
pub fn dim_hom_stratum(e: &Bundle, f: &Bundle, q: &Bundle) -> Result<StratumDim> {
    if q.is_zero() {
        return Err(Error::ZeroBundle("image stratum"));
    }
    let value = deg_hom_nonneg(e, q) + deg_hom_nonneg(q, f) - deg_hom_nonneg(q, q);
    let mut ruled_out = q.rank() > e.rank() || !quotient_necessary(e, q)?;
    if let (Ok(true), Ok(mu_f)) = (f.is_semistable(), f.mu()) {
        ruled_out |= q.rank() > f.rank() || q.mu_max().is_some_and(|m| *m > mu_f);
    }
    let nonempty = if ruled_out {
        Nonempty::No
    } else if surjection_certified(e, q) && injection_certified(q, f) {
        Nonempty::Yes
    } else {
        Nonempty::Unknown
    };
    Ok(StratumDim { value, nonempty })
}

/// Dimension of surjections `E ↠ F` with kernel `K`, for semistable `F`:
/// `deg(K^∨ ⊗ E)^{≥0} − deg(K^∨ ⊗ K)^{≥0}`.
pub fn dim_surj_with_kernel(e: &Bundle, f: &Bundle, k: &Bundle) -> Result<StratumDim> {
    f.require_semistable()?;
    if k.rank() + f.rank() != e.rank() || k.degree() + f.degree() != e.degree() {
        return Err(Error::Precondition(format!(
            "rank/degree of {k} and {f} do not add up to {e}"
        )));
    }
    let value = deg_hom_nonneg(k, e) - deg_hom_nonneg(k, k);
    let nonempty = if k.is_zero() {
        if e == f {
            Nonempty::Yes
        } else {
            Nonempty::No
        }
    } else {
        // K's HN pieces followed by F give a filtration with semistable gradeds
        let below = Polygon::of(e).leq(&Polygon::of(&k.direct_sum(f)));
        let top_ok = k.mu_max() <= e.mu_max();
        if !below || !top_ok || !quotient_necessary(e, f)? {
            Nonempty::No
        } else if k.is_semistable()? && k.mu()? < f.mu()? {
            Nonempty::Yes
        } else {
            Nonempty::Unknown
        }
    };
    Ok(StratumDim { value, nonempty })
}

/// Dimension of extensions of `F₂` by `F₁` isomorphic to `E`:
/// `deg(F₁^∨ ⊗ F₂) − deg(E^∨ ⊗ E)^{≥0}`.
pub fn dim_ext_stratum(f1: &Bundle, f2: &Bundle, e: &Bundle) -> Result<StratumDim> {
    let exists = exists_extension(f1, f2, e)?;
    if e.rank() != f1.rank() + f2.rank() || e.degree() != f1.degree() + f2.degree() {
        return Err(Error::Precondition(format!(
            "HN({e}) does not share endpoints with HN({})",
            f1.direct_sum(f2)
        )));
    }
    Ok(StratumDim {
        value: deg_hom(f1, f2) - instability(e)?,
        nonempty: if exists { Nonempty::Yes } else { Nonempty::No },
    })
}
