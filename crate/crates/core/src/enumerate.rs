//! Finite enumeration of concave lattice paths and of bundles.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::bundle::{Bundle, StableSummand};
use crate::polygon::{LatticePoint, Polygon};
use crate::slope::{slopes_between, Slope};

/// An upper bound on vertex heights. Implementations must be concave in `x`
/// so that a segment between two admissible vertices stays admissible.
pub trait HeightBound {
    /// Largest admissible integer height at abscissa `x`.
    fn max_height(&self, x: &BigInt) -> Option<BigInt>;
}

impl HeightBound for Polygon {
    fn max_height(&self, x: &BigInt) -> Option<BigInt> {
        self.height_at(&BigRational::from_integer(x.clone()))
            .map(|h| h.floor().to_integer())
    }
}

/// The half-plane `y ≤ slope · x`.
#[derive(Clone, Debug)]
pub struct SlopeBound(pub Slope);

impl HeightBound for SlopeBound {
    fn max_height(&self, x: &BigInt) -> Option<BigInt> {
        Some((self.0.as_ratio() * BigRational::from_integer(x.clone())).floor().to_integer())
    }
}

/// The half-plane `y ≤ h`.
#[derive(Clone, Debug)]
pub struct HeightCap(pub BigInt);

impl HeightBound for HeightCap {
    fn max_height(&self, _x: &BigInt) -> Option<BigInt> {
        Some(self.0.clone())
    }
}

/// All HN polygons from the origin to `end` whose vertices satisfy `bound`,
/// ordered by height profile, descending lexicographically.
///
/// The search places one vertex at a time with strictly decreasing edge
/// slopes; every new vertex must lie strictly above the line from the current
/// vertex to `end` so the path can still close concavely.
pub fn concave_paths_below<B: HeightBound + ?Sized>(end: &LatticePoint, bound: &B) -> Vec<Polygon> {
    let mut out = Vec::new();
    if end.x < BigInt::zero() {
        return out;
    }
    match bound.max_height(&end.x) {
        Some(h) if end.y <= h => {}
        _ => return out,
    }
    if bound.max_height(&BigInt::zero()).is_none_or(|h| h < BigInt::zero()) {
        return out;
    }
    if end.x.is_zero() {
        if end.y.is_zero() {
            out.push(Polygon::new(vec![LatticePoint::origin()]).expect("origin"));
        }
        return out;
    }
    let mut path = vec![LatticePoint::origin()];
    search(end, bound, &mut path, None, &mut out);
    sort_by_profile(&mut out);
    out
}

fn search<B: HeightBound + ?Sized>(
    end: &LatticePoint,
    bound: &B,
    path: &mut Vec<LatticePoint>,
    prev: Option<(BigInt, BigInt)>,
    out: &mut Vec<Polygon>,
) {
    let cur = path.last().expect("path starts at origin").clone();
    let below_prev = |dx: &BigInt, dy: &BigInt| match &prev {
        // dy/dx < pdy/pdx with both widths positive
        Some((pdx, pdy)) => dy * pdx < pdy * dx,
        None => true,
    };

    let rest_x = &end.x - &cur.x;
    let rest_y = &end.y - &cur.y;
    if below_prev(&rest_x, &rest_y) {
        path.push(end.clone());
        out.push(Polygon::new(path.clone()).expect("search keeps slopes decreasing"));
        path.pop();
    }

    let mut x = &cur.x + 1;
    while x < end.x {
        let dx = &x - &cur.x;
        let Some(mut y_hi) = bound.max_height(&x) else {
            x += 1;
            continue;
        };
        if let Some((pdx, pdy)) = &prev {
            // cur.y + dy with dy·pdx < pdy·dx
            let num: BigInt = pdy * &dx - 1;
            let strict = num.div_floor(pdx);
            y_hi = y_hi.min(&cur.y + strict);
        }
        // strictly above the line to the endpoint
        let y_lo = &cur.y + (&rest_y * &dx).div_floor(&rest_x) + 1;
        let mut y = y_hi;
        while y >= y_lo {
            let dy = &y - &cur.y;
            path.push(LatticePoint::new(x.clone(), y.clone()));
            search(end, bound, path, Some((dx.clone(), dy)), out);
            path.pop();
            y -= 1;
        }
        x += 1;
    }
}

/// Sorts polygons of a common width by height profile, descending.
pub fn sort_by_profile(polys: &mut Vec<Polygon>) {
    let mut keyed: Vec<(Vec<BigRational>, Polygon)> =
        polys.drain(..).map(|p| (p.height_profile(), p)).collect();
    keyed.sort_by(|a, b| compare_profiles(&b.0, &a.0).then_with(|| b.1.width().cmp(a.1.width())));
    polys.extend(keyed.into_iter().map(|(_, p)| p));
}

fn compare_profiles(a: &[BigRational], b: &[BigRational]) -> Ordering {
    a.cmp(b)
}

/// All nonzero bundles with total rank at most `max_rank` whose slopes are
/// drawn from `slopes`.
pub fn bundles_with_slopes(slopes: &[Slope], max_rank: u32) -> Vec<Bundle> {
    let mut sorted: Vec<Slope> = slopes.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    sorted.dedup();
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    pick_blocks(&sorted, 0, max_rank, None, &mut blocks, &mut out);
    out
}

/// All bundles of exactly `rank` with every slope in `[lo, hi]`.
pub fn bundles_of_rank(rank: u32, lo: &Slope, hi: &Slope) -> Vec<Bundle> {
    if rank == 0 {
        return vec![Bundle::zero()];
    }
    let mut slopes = slopes_between(lo, hi, rank);
    slopes.reverse();
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    pick_blocks(&slopes, 0, rank, Some(rank), &mut blocks, &mut out);
    out
}

fn pick_blocks(
    slopes: &[Slope],
    idx: usize,
    budget: u32,
    exact: Option<u32>,
    blocks: &mut Vec<StableSummand>,
    out: &mut Vec<Bundle>,
) {
    if idx == slopes.len() {
        let used: u32 = blocks
            .iter()
            .map(|b| b.rank().to_u32().expect("small rank"))
            .sum();
        let keep = match exact {
            Some(r) => used == r,
            None => used > 0,
        };
        if keep {
            out.push(Bundle::from_summands(blocks.iter().cloned()));
        }
        return;
    }
    let slope = &slopes[idx];
    let h = slope.den().to_u32().unwrap_or(u32::MAX);
    pick_blocks(slopes, idx + 1, budget, exact, blocks, out);
    let mut m = 1u32;
    while h.saturating_mul(m) <= budget {
        blocks.push(StableSummand::new(slope.clone(), m).expect("positive"));
        pick_blocks(slopes, idx + 1, budget - h * m, exact, blocks, out);
        blocks.pop();
        m += 1;
    }
}
