//! HN polygons, HN vectors and the cross-product degree calculus.
//!
//! Polygons are concave lattice paths starting at the origin. Areas are kept
//! as *twice* the area so every quantity stays integral.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::bundle::{Bundle, StableSummand};
use crate::error::{Error, Result};
use crate::slope::Slope;

/// An integer vector `(rank, degree)`; for HN edges `x > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HnVector {
    pub x: BigInt,
    pub y: BigInt,
}

impl HnVector {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        HnVector {
            x: x.into(),
            y: y.into(),
        }
    }

    /// `v × w = v.x·w.y − v.y·w.x`.
    pub fn cross(&self, w: &HnVector) -> BigInt {
        &self.x * &w.y - &self.y * &w.x
    }

    /// Compares slopes `y/x`; both x-components must be nonzero.
    pub fn slope_cmp(&self, w: &HnVector) -> Result<Ordering> {
        if self.x.is_zero() || w.x.is_zero() {
            return Err(Error::ZeroXComponent);
        }
        // y1/x1 ? y2/x2  <=>  y1·x2 ? y2·x1, flipped when x1·x2 < 0
        let lhs = &self.y * &w.x;
        let rhs = &w.y * &self.x;
        let ord = lhs.cmp(&rhs);
        Ok(if self.x.is_negative() != w.x.is_negative() {
            ord.reverse()
        } else {
            ord
        })
    }

    /// `v ⪯ w`: slope of `v` not greater than slope of `w`.
    pub fn preceq(&self, w: &HnVector) -> Result<bool> {
        Ok(self.slope_cmp(w)? != Ordering::Greater)
    }

    /// `v ≺ w`: slope of `v` strictly less than slope of `w`.
    pub fn precedes(&self, w: &HnVector) -> Result<bool> {
        Ok(self.slope_cmp(w)? == Ordering::Less)
    }

    fn slope(&self) -> Slope {
        Slope::from_ratio(BigRational::new(self.y.clone(), self.x.clone()))
    }
}

impl fmt::Display for HnVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub fn vec_cross(v: &HnVector, w: &HnVector) -> BigInt {
    v.cross(w)
}

pub fn vec_preceq(v: &HnVector, w: &HnVector) -> Result<bool> {
    v.preceq(w)
}

pub fn vec_prec(v: &HnVector, w: &HnVector) -> Result<bool> {
    v.precedes(w)
}

/// A point of `Z²`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticePoint {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        LatticePoint {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn origin() -> Self {
        LatticePoint::new(0, 0)
    }

    fn to(&self, other: &LatticePoint) -> HnVector {
        HnVector {
            x: &other.x - &self.x,
            y: &other.y - &self.y,
        }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A Harder-Narasimhan polygon: concave lattice path from the origin whose
/// listed breakpoints are exactly its vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polygon {
    vertices: Vec<LatticePoint>,
}

impl Polygon {
    /// Validates the breakpoint list: starts at the origin, strictly
    /// increasing x, strictly decreasing segment slopes.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        match vertices.first() {
            None => return Err(Error::InvalidPolygon("no breakpoints".into())),
            Some(p) if *p != LatticePoint::origin() => {
                return Err(Error::InvalidPolygon(format!(
                    "must start at (0,0), starts at {p}"
                )))
            }
            _ => {}
        }
        for w in vertices.windows(2) {
            if w[1].x <= w[0].x {
                return Err(Error::InvalidPolygon(format!(
                    "x must increase strictly: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        for w in vertices.windows(3) {
            let a = w[0].to(&w[1]);
            let b = w[1].to(&w[2]);
            // slope(a) > slope(b)  <=>  a × b < 0 for positive x components
            if !a.cross(&b).is_negative() {
                return Err(Error::InvalidPolygon(format!(
                    "not strictly concave at {}",
                    w[1]
                )));
            }
        }
        Ok(Polygon { vertices })
    }

    pub fn from_pairs<X, Y, I>(pairs: I) -> Result<Self>
    where
        X: Into<BigInt>,
        Y: Into<BigInt>,
        I: IntoIterator<Item = (X, Y)>,
    {
        Polygon::new(
            pairs
                .into_iter()
                .map(|(x, y)| LatticePoint::new(x, y))
                .collect(),
        )
    }

    /// Builds a polygon from a concave path, dropping collinear interior points.
    pub(crate) fn from_path_merging(path: Vec<LatticePoint>) -> Result<Self> {
        let mut out: Vec<LatticePoint> = Vec::with_capacity(path.len());
        for p in path {
            if let Some(last) = out.last() {
                if p.x == last.x {
                    if p.y == last.y {
                        continue;
                    }
                    return Err(Error::InvalidPolygon(format!("vertical segment at {p}")));
                }
            }
            while out.len() >= 2 {
                let n = out.len();
                let a = out[n - 2].to(&out[n - 1]);
                let b = out[n - 1].to(&p);
                if a.cross(&b).is_zero() {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        Polygon::new(out)
    }

    /// The semistable polygon: one segment from the origin to `end`.
    pub fn chord(end: &LatticePoint) -> Result<Self> {
        if end.x.is_zero() && end.y.is_zero() {
            return Polygon::new(vec![LatticePoint::origin()]);
        }
        Polygon::new(vec![LatticePoint::origin(), end.clone()])
    }

    /// `HN(E)`: partial sums of the HN vectors.
    pub fn of(bundle: &Bundle) -> Self {
        let mut vertices = vec![LatticePoint::origin()];
        let mut cur = LatticePoint::origin();
        for v in hn_vectors(bundle) {
            cur = LatticePoint {
                x: &cur.x + v.x,
                y: &cur.y + v.y,
            };
            vertices.push(cur.clone());
        }
        Polygon { vertices }
    }

    /// The bundle whose HN polygon this is.
    pub fn to_bundle(&self) -> Bundle {
        Bundle::from_summands(self.edges().into_iter().map(|e| {
            let copies = e.x.gcd(&e.y);
            StableSummand::new(e.slope(), copies).expect("edges have positive width")
        }))
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn endpoint(&self) -> &LatticePoint {
        self.vertices.last().expect("polygons are nonempty")
    }

    pub fn width(&self) -> &BigInt {
        &self.endpoint().x
    }

    pub fn edges(&self) -> Vec<HnVector> {
        self.vertices.windows(2).map(|w| w[0].to(&w[1])).collect()
    }

    /// Height of the polygon at `x`, or `None` outside `[0, width]`.
    pub fn height_at(&self, x: &BigRational) -> Option<BigRational> {
        let first = &self.vertices[0];
        if *x < BigRational::from_integer(first.x.clone()) {
            return None;
        }
        for w in self.vertices.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let bx = BigRational::from_integer(b.x.clone());
            if *x <= bx {
                let ax = BigRational::from_integer(a.x.clone());
                let ay = BigRational::from_integer(a.y.clone());
                let slope = BigRational::new(&b.y - &a.y, &b.x - &a.x);
                return Some(ay + slope * (x - ax));
            }
        }
        if self.vertices.len() == 1 && x.is_zero() {
            return Some(BigRational::zero());
        }
        None
    }

    fn height_at_int(&self, x: &BigInt) -> Option<BigRational> {
        self.height_at(&BigRational::from_integer(x.clone()))
    }

    /// Heights at the interior integer abscissae `1, …, width − 1`.
    pub fn height_profile(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        let mut x = BigInt::from(1);
        while &x < self.width() {
            out.push(self.height_at_int(&x).expect("x within width"));
            x += 1;
        }
        out
    }

    /// `self ≤ other`: same endpoints and `self` lies on or below `other`.
    /// Mismatched endpoints give `false`.
    pub fn leq(&self, other: &Polygon) -> bool {
        if self.endpoint() != other.endpoint() {
            return false;
        }
        let below = |p: &LatticePoint, q: &Polygon| {
            q.height_at_int(&p.x)
                .is_some_and(|h| BigRational::from_integer(p.y.clone()) <= h)
        };
        let above = |p: &LatticePoint, q: &Polygon| {
            q.height_at_int(&p.x)
                .is_some_and(|h| BigRational::from_integer(p.y.clone()) >= h)
        };
        self.vertices.iter().all(|p| below(p, other))
            && other.vertices.iter().all(|p| above(p, self))
    }

    /// Shoelace sum `Σ xᵢ·yᵢ₊₁ − xᵢ₊₁·yᵢ` along the open path.
    fn shoelace(&self) -> BigInt {
        self.vertices
            .windows(2)
            .map(|w| &w[0].x * &w[1].y - &w[1].x * &w[0].y)
            .sum()
    }
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polygon{self}")
    }
}

/// `HNvec(E)`: one edge `(m·h, m·d)` per block, in decreasing slope order.
pub fn hn_vectors(bundle: &Bundle) -> Vec<HnVector> {
    bundle
        .summands()
        .iter()
        .map(|b| HnVector {
            x: b.rank(),
            y: b.degree(),
        })
        .collect()
}

pub fn polygon_of(bundle: &Bundle) -> Polygon {
    Polygon::of(bundle)
}

/// Inverse of [`polygon_of`] on raw breakpoints; rejects non-concave input.
pub fn bundle_of(points: Vec<LatticePoint>) -> Result<Bundle> {
    Ok(Polygon::new(points)?.to_bundle())
}

pub fn polygon_leq(p: &Polygon, q: &Polygon) -> bool {
    p.leq(q)
}

/// `deg(V^∨ ⊗ W) = Σ_{i,j} vᵢ × wⱼ`.
pub fn deg_hom(v: &Bundle, w: &Bundle) -> BigInt {
    let (vs, ws) = (hn_vectors(v), hn_vectors(w));
    let mut total = BigInt::zero();
    for a in &vs {
        for b in &ws {
            total += a.cross(b);
        }
    }
    total
}

/// `deg(V^∨ ⊗ W)^{≥0} = Σ_{vᵢ ⪯ wⱼ} vᵢ × wⱼ`.
pub fn deg_hom_nonneg(v: &Bundle, w: &Bundle) -> BigInt {
    let (vs, ws) = (hn_vectors(v), hn_vectors(w));
    let mut total = BigInt::zero();
    for a in &vs {
        for b in &ws {
            if a.preceq(b).expect("HN vectors have positive width") {
                total += a.cross(b);
            }
        }
    }
    total
}

/// `deg(V^∨ ⊗ V)^{≥0}`, twice the area between `HN(V)` and its chord.
pub fn instability(v: &Bundle) -> Result<BigInt> {
    if v.is_zero() {
        return Err(Error::ZeroBundle("instability"));
    }
    Ok(deg_hom_nonneg(v, v))
}

/// Twice the area enclosed between `lower ≤ upper`.
pub fn twice_area_between(lower: &Polygon, upper: &Polygon) -> Result<BigInt> {
    if !lower.leq(upper) {
        return Err(Error::Precondition(format!(
            "{lower} does not lie below {upper} with the same endpoints"
        )));
    }
    Ok(lower.shoelace() - upper.shoelace())
}

/// Upper convex hull of a point set, as a concave path sorted by x.
pub(crate) fn upper_hull(mut points: Vec<LatticePoint>) -> Vec<LatticePoint> {
    points.sort_by(|a, b| a.x.cmp(&b.x).then_with(|| b.y.cmp(&a.y)));
    points.dedup_by(|a, b| a.x == b.x);
    let mut hull: Vec<LatticePoint> = Vec::with_capacity(points.len());
    for p in points {
        while hull.len() >= 2 {
            let n = hull.len();
            let a = hull[n - 2].to(&hull[n - 1]);
            let b = hull[n - 1].to(&p);
            if a.cross(&b).is_negative() {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    hull
}
