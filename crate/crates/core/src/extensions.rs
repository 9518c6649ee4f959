//! Existence and enumeration of extensions and multi-step filtrations with
//! semistable graded pieces.
//!
//! For semistable `F₁, …, F_k` with strictly increasing slopes, a bundle `E`
//! admits a filtration with gradeds `F₁, …, F_k` exactly when
//! `HN(E) ≤ HN(F₁ ⊕ … ⊕ F_k)`. Everything here works on polygons; witnesses
//! are combinatorial chains, not actual extension classes.

use num_bigint::BigInt;

use crate::bundle::{Bundle, StableSummand};
use crate::enumerate::concave_paths_below;
use crate::error::{Error, Result};
use crate::polygon::{upper_hull, LatticePoint, Polygon};

/// A filtration `0 = E₀ ⊂ E₁ ⊂ … ⊂ E_k = E` with `E_i / E_{i−1} ≅ F_i`,
/// recorded up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationWitness {
    /// `E₀, …, E_k`.
    pub chain: Vec<Bundle>,
    /// `F₁, …, F_k`.
    pub graded: Vec<Bundle>,
}

impl FiltrationWitness {
    /// Checks the witness invariants: rank and degree increments match the
    /// gradeds, `E₀ = 0`, and `HN(E_i) ≤ HN(F₁ ⊕ … ⊕ F_i)` for every `i`.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Precondition(msg));
        if self.chain.len() != self.graded.len() + 1 {
            return fail(format!(
                "chain has {} terms for {} graded pieces",
                self.chain.len(),
                self.graded.len()
            ));
        }
        if !self.chain[0].is_zero() {
            return fail("chain must start at the zero bundle".into());
        }
        let mut partial = Bundle::zero();
        for (i, f) in self.graded.iter().enumerate() {
            let (lo, hi) = (&self.chain[i], &self.chain[i + 1]);
            if hi.rank() - lo.rank() != f.rank() || hi.degree() - lo.degree() != f.degree() {
                return fail(format!("step {} does not add rank/degree of {f}", i + 1));
            }
            partial = partial.direct_sum(f);
            if !Polygon::of(hi).leq(&Polygon::of(&partial)) {
                return fail(format!("HN({hi}) is not below HN({partial})"));
            }
        }
        Ok(())
    }

    /// The polygons `HN(E₀), …, HN(E_k)`.
    pub fn polygons(&self) -> Vec<Polygon> {
        self.chain.iter().map(Polygon::of).collect()
    }
}

fn check_extension_inputs(f1: &Bundle, f2: &Bundle) -> Result<()> {
    f1.require_semistable()?;
    f2.require_semistable()?;
    let (m1, m2) = (f1.mu()?, f2.mu()?);
    if m1 >= m2 {
        return Err(Error::SlopeOrder(format!(
            "need μ(F1) < μ(F2), got {m1} and {m2}"
        )));
    }
    Ok(())
}

fn check_graded(graded: &[Bundle], increasing: bool) -> Result<()> {
    if graded.is_empty() {
        return Err(Error::Precondition("at least one graded piece required".into()));
    }
    for f in graded {
        f.require_semistable()?;
    }
    if increasing {
        for w in graded.windows(2) {
            let (a, b) = (w[0].mu()?, w[1].mu()?);
            if a >= b {
                return Err(Error::SlopeOrder(format!(
                    "graded slopes {a} then {b} are not strictly increasing"
                )));
            }
        }
    }
    Ok(())
}

fn sum_all(bundles: &[Bundle]) -> Bundle {
    bundles
        .iter()
        .fold(Bundle::zero(), |acc, b| acc.direct_sum(b))
}

/// Whether `0 → F₁ → E → F₂ → 0` exists, for semistable `F₁, F₂` with
/// `μ(F₁) < μ(F₂)`. The equal-slope case is rejected.
pub fn exists_extension(f1: &Bundle, f2: &Bundle, e: &Bundle) -> Result<bool> {
    check_extension_inputs(f1, f2)?;
    Ok(Polygon::of(e).leq(&Polygon::of(&f1.direct_sum(f2))))
}

/// The necessary condition `HN(E) ≤ HN(⊕ gradeds)` for any filtration with
/// the given semistable gradeds, in any order.
pub fn necessary_condition(e: &Bundle, graded: &[Bundle]) -> Result<bool> {
    check_graded(graded, false)?;
    Ok(Polygon::of(e).leq(&Polygon::of(&sum_all(graded))))
}

/// Whether `E` admits a filtration with semistable gradeds `F₁, …, F_k` of
/// strictly increasing slope.
pub fn exists_filtration(e: &Bundle, graded: &[Bundle]) -> Result<bool> {
    check_graded(graded, true)?;
    Ok(Polygon::of(e).leq(&Polygon::of(&sum_all(graded))))
}

/// Builds a filtration chain by peeling off the top graded piece.
///
/// With `F_k` placed as the initial segment, the upper convex hull of
/// `HN(F_k)` and `HN(E)` is `HN(F_k ⊕ E_{k−1})`; the part of the hull after
/// `F_k` gives `E_{k−1}`, which satisfies the same hypothesis for
/// `F₁, …, F_{k−1}`.
pub fn build_filtration_witness(e: &Bundle, graded: &[Bundle]) -> Result<FiltrationWitness> {
    if !exists_filtration(e, graded)? {
        return Err(Error::Precondition(format!(
            "HN({e}) is not below HN({})",
            sum_all(graded)
        )));
    }
    let mut chain = vec![e.clone()];
    let mut current = Polygon::of(e);
    for f in graded.iter().skip(1).rev() {
        current = peel_top(&current, f)?;
        chain.push(current.to_bundle());
    }
    chain.push(Bundle::zero());
    chain.reverse();
    let witness = FiltrationWitness {
        chain,
        graded: graded.to_vec(),
    };
    witness.check()?;
    Ok(witness)
}

fn peel_top(current: &Polygon, top: &Bundle) -> Result<Polygon> {
    let corner = LatticePoint::new(top.rank(), top.degree());
    let mut points = current.vertices().to_vec();
    points.push(corner.clone());
    let hull = upper_hull(points);
    let on_hull = Polygon::from_path_merging(hull.clone())?
        .height_at(&corner.x.clone().into())
        .is_some_and(|h| h == corner.y.clone().into());
    if !on_hull {
        return Err(Error::Precondition(format!(
            "corner {corner} lies strictly below the hull"
        )));
    }
    let rest = std::iter::once(LatticePoint::origin()).chain(
        hull.into_iter()
            .filter(|p| p.x > corner.x)
            .map(|p| LatticePoint::new(p.x - &corner.x, p.y - &corner.y)),
    );
    Polygon::from_path_merging(rest.collect())
}

/// Every `E` fitting in `0 → F₁ → E → F₂ → 0`: all concave lattice paths
/// from the origin to `(rank, degree)` lying weakly below `HN(F₁ ⊕ F₂)`,
/// ordered by height profile, descending (the split bundle first).
pub fn enumerate_extensions(f1: &Bundle, f2: &Bundle) -> Result<Vec<Bundle>> {
    check_extension_inputs(f1, f2)?;
    let ceiling = Polygon::of(&f1.direct_sum(f2));
    Ok(concave_paths_below(ceiling.endpoint(), &ceiling)
        .iter()
        .map(Polygon::to_bundle)
        .collect())
}

/// Removes a top block shared by `E` and semistable `F₂`.
///
/// When `μ_max(E) = μ(F₂) = s` with `E = E' ⊕ O(s)^n` and `F₂ = O(s)^m`,
/// returns `(E', O(s)^{m−n})`; otherwise returns the inputs unchanged.
pub fn split_common_top(e: &Bundle, f2: &Bundle) -> Result<(Bundle, Bundle)> {
    f2.require_semistable()?;
    let f2_block = &f2.summands()[0];
    let Some(top) = e.summands().first() else {
        return Ok((e.clone(), f2.clone()));
    };
    if top.slope() != f2_block.slope() {
        return Ok((e.clone(), f2.clone()));
    }
    let (n, m) = (top.multiplicity(), f2_block.multiplicity());
    if n > m {
        return Err(Error::Precondition(format!(
            "{e} has more top-slope blocks than {f2}"
        )));
    }
    let e_rest = Bundle::from_summands(e.summands()[1..].iter().cloned());
    let left: BigInt = m - n;
    let f2_rest = if left == BigInt::from(0) {
        Bundle::zero()
    } else {
        Bundle::from_summands([StableSummand::new(f2_block.slope().clone(), left)?])
    };
    Ok((e_rest, f2_rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(raw: &[(i64, i64, i64)]) -> Bundle {
        Bundle::from_raw(raw.iter().copied()).unwrap()
    }

    fn challenge() -> (Bundle, Bundle, Bundle) {
        (b(&[(-1, 2, 2)]), b(&[(9, 4, 1)]), b(&[(1, 3, 1), (6, 5, 1)]))
    }

    #[test]
    fn extension_examples() {
        let (f1, f2, e) = challenge();
        assert!(exists_extension(&f1, &f2, &e).unwrap());
        assert!(exists_extension(&f1, &f2, &f1.direct_sum(&f2)).unwrap());
        assert!(!exists_extension(&f1, &f2, &b(&[(1, 3, 1), (7, 5, 1)])).unwrap());
    }

    #[test]
    fn extension_errors() {
        let (f1, f2, e) = challenge();
        assert!(matches!(exists_extension(&f2, &f1, &e), Err(Error::SlopeOrder(_))));
        assert!(matches!(exists_extension(&f1, &f1, &e), Err(Error::SlopeOrder(_))));
        assert!(matches!(exists_extension(&e, &f2, &e), Err(Error::NotSemistable(_))));
        assert!(exists_extension(&Bundle::zero(), &f2, &e).is_err());
    }

    #[test]
    fn necessary_condition_examples() {
        let (f1, f2, _) = challenge();
        let split = f1.direct_sum(&f2);
        assert!(necessary_condition(&split, &[f2.clone(), f1.clone()]).unwrap());
        let graded = [Bundle::line(0), Bundle::line(1)];
        assert!(necessary_condition(&b(&[(1, 2, 1)]), &graded).unwrap());
        assert!(!necessary_condition(&b(&[(1, 1, 2)]), &graded).unwrap());
        assert!(necessary_condition(&split, std::slice::from_ref(&split)).is_err());
    }

    #[test]
    fn filtration_examples() {
        let graded = [Bundle::line(-1), Bundle::line(0), Bundle::line(1)];
        assert!(exists_filtration(&b(&[(0, 1, 3)]), &graded).unwrap());
        let two = [Bundle::line(0), Bundle::line(1)];
        assert!(exists_filtration(&b(&[(1, 1, 1), (0, 1, 1)]), &two).unwrap());
        let bad = [Bundle::line(1), Bundle::line(0)];
        assert!(matches!(
            exists_filtration(&b(&[(1, 2, 1)]), &bad),
            Err(Error::SlopeOrder(_))
        ));
    }

    #[test]
    fn witness_for_challenge() {
        let (f1, f2, e) = challenge();
        let w = build_filtration_witness(&e, &[f1.clone(), f2]).unwrap();
        assert_eq!(w.chain, [Bundle::zero(), f1, e]);
    }

    #[test]
    fn witness_for_split_case() {
        let graded = [Bundle::line(-1), b(&[(1, 2, 1)]), Bundle::line(2)];
        let e = sum_all(&graded);
        let w = build_filtration_witness(&e, &graded).unwrap();
        assert_eq!(
            w.chain,
            [
                Bundle::zero(),
                graded[0].clone(),
                graded[0].direct_sum(&graded[1]),
                e
            ]
        );
    }

    #[test]
    fn witness_three_step() {
        let graded = [Bundle::line(-1), Bundle::line(0), Bundle::line(1)];
        let e = b(&[(0, 1, 3)]);
        let w = build_filtration_witness(&e, &graded).unwrap();
        assert_eq!(
            w.chain,
            [Bundle::zero(), Bundle::line(-1), b(&[(-1, 2, 1)]), e]
        );
        assert_eq!(w.chain[1].rank(), 1.into());
        assert_eq!(w.chain[2].rank(), 2.into());
        w.check().unwrap();
    }

    #[test]
    fn witness_rejects_infeasible() {
        let graded = [Bundle::line(0), Bundle::line(1)];
        assert!(build_filtration_witness(&b(&[(1, 1, 2)]), &graded).is_err());
        assert!(build_filtration_witness(&b(&[(2, 1, 1), (-1, 1, 1)]), &graded).is_err());
    }

    #[test]
    fn enumerate_small() {
        let got = enumerate_extensions(&Bundle::line(0), &Bundle::line(1)).unwrap();
        assert_eq!(got, [b(&[(1, 1, 1), (0, 1, 1)]), b(&[(1, 2, 1)])]);

        let got = enumerate_extensions(&b(&[(0, 1, 2)]), &Bundle::line(2)).unwrap();
        assert_eq!(
            got,
            [
                b(&[(2, 1, 1), (0, 1, 2)]),
                b(&[(1, 1, 2), (0, 1, 1)]),
                b(&[(1, 1, 1), (1, 2, 1)]),
                b(&[(2, 3, 1)]),
            ]
        );
    }

    #[test]
    fn enumerate_gap_one_line_bundles() {
        // O(a) and O(a+1): the split bundle and the semistable O(a + 1/2)
        for a in -3..3 {
            let got = enumerate_extensions(&Bundle::line(a), &Bundle::line(a + 1)).unwrap();
            assert_eq!(got.len(), 2);
            assert!(got[1].is_semistable().unwrap());
        }
    }

    #[test]
    fn split_common_top_examples() {
        let e = b(&[(1, 1, 2), (0, 1, 1)]);
        let (e2, f2) = split_common_top(&e, &b(&[(1, 1, 3)])).unwrap();
        assert_eq!((e2, f2), (Bundle::line(0), Bundle::line(1)));

        let e = b(&[(1, 2, 1), (0, 1, 1)]);
        let f = Bundle::line(1);
        assert_eq!(split_common_top(&e, &f).unwrap(), (e.clone(), f.clone()));

        let (e2, f2) = split_common_top(&Bundle::line(1), &Bundle::line(1)).unwrap();
        assert!(e2.is_zero() && f2.is_zero());

        assert!(split_common_top(&b(&[(1, 1, 2)]), &Bundle::line(1)).is_err());
        assert!(split_common_top(&e, &b(&[(1, 1, 1), (0, 1, 1)])).is_err());
    }
}
