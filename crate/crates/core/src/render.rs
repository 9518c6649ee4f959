//! Figures comparing two polygons with common endpoints: the lower one dashed,
//! the upper one solid, the region between them shaded.
//!
//! Output uses exact lattice coordinates and is byte-for-byte deterministic.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polygon::{LatticePoint, Polygon};

fn check_endpoints(lower: &Polygon, upper: &Polygon) -> Result<()> {
    if lower.endpoint() != upper.endpoint() {
        return Err(Error::Precondition(format!(
            "cannot compare polygons ending at {} and {}",
            lower.endpoint(),
            upper.endpoint()
        )));
    }
    Ok(())
}

/// Boundary of the region between the polygons: along `upper`, back along `lower`.
fn region(lower: &Polygon, upper: &Polygon) -> Vec<LatticePoint> {
    let mut pts = upper.vertices().to_vec();
    pts.extend(lower.vertices().iter().rev().skip(1).take(lower.vertices().len().saturating_sub(2)).cloned());
    pts
}

fn svg_points(pts: &[LatticePoint]) -> String {
    pts.iter()
        .map(|p| format!("{},{}", p.x, -&p.y))
        .collect::<Vec<_>>()
        .join(" ")
}

/// SVG with y pointing up (the figure is flipped by negating y).
pub fn render_svg(lower: &Polygon, upper: &Polygon) -> Result<String> {
    check_endpoints(lower, upper)?;
    let all = || lower.vertices().iter().chain(upper.vertices());
    let min_x = all().map(|p| &p.x).min().expect("nonempty").clone() - 1;
    let max_x = all().map(|p| &p.x).max().expect("nonempty").clone() + 1;
    let min_y = all().map(|p| &p.y).min().expect("nonempty").clone() - 1;
    let max_y = all().map(|p| &p.y).max().expect("nonempty").clone() + 1;
    let (w, h) = (&max_x - &min_x, &max_y - &min_y);
    let px = BigInt::from(40);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"##,
        min_x,
        -&max_y,
        w,
        h,
        &w * &px,
        &h * &px
    );
    let _ = writeln!(
        out,
        r##"  <polygon points="{}" fill="#d0d0d0" stroke="none"/>"##,
        svg_points(&region(lower, upper))
    );
    let _ = writeln!(
        out,
        r##"  <polyline points="{}" fill="none" stroke="black" stroke-width="2" vector-effect="non-scaling-stroke"/>"##,
        svg_points(upper.vertices())
    );
    let _ = writeln!(
        out,
        r##"  <polyline points="{}" fill="none" stroke="black" stroke-width="2" stroke-dasharray="6 4" vector-effect="non-scaling-stroke"/>"##,
        svg_points(lower.vertices())
    );
    let mut dots: Vec<&LatticePoint> = all().collect();
    dots.sort();
    dots.dedup();
    for p in dots {
        let _ = writeln!(
            out,
            r##"  <circle cx="{}" cy="{}" r="0.12" fill="black"/>"##,
            p.x, -&p.y
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn tikz_path(pts: &[LatticePoint]) -> String {
    pts.iter()
        .map(|p| format!("({},{})", p.x, p.y))
        .collect::<Vec<_>>()
        .join(" -- ")
}

/// A standalone `tikzpicture` environment.
pub fn render_tikz(lower: &Polygon, upper: &Polygon) -> Result<String> {
    check_endpoints(lower, upper)?;
    let mut out = String::from("\\begin{tikzpicture}[scale=0.5]\n");
    let _ = writeln!(out, "  \\fill[gray!30] {} -- cycle;", tikz_path(&region(lower, upper)));
    let _ = writeln!(out, "  \\draw[thick] {};", tikz_path(upper.vertices()));
    let _ = writeln!(out, "  \\draw[thick, dashed] {};", tikz_path(lower.vertices()));
    let mut dots: Vec<&LatticePoint> = lower.vertices().iter().chain(upper.vertices()).collect();
    dots.sort();
    dots.dedup();
    for p in dots {
        let _ = writeln!(out, "  \\fill ({},{}) circle (2pt);", p.x, p.y);
    }
    out.push_str("\\end{tikzpicture}\n");
    Ok(out)
}
