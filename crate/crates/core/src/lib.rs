//! Exact combinatorics of Harder–Narasimhan polygons of vector bundles on the
//! Fargues–Fontaine curve.
//!
//! A bundle is a sum of stable blocks `O(λ)^m` ([`Bundle`]); its HN polygon
//! ([`Polygon`]) is the concave path of its blocks in decreasing slope order.
//! On top of that the crate provides the degree calculus of `Hom` bundles,
//! the extension criterion with filtration witnesses, dimension formulas for
//! moduli of maps and extensions, the closure order on strata, and exhaustive
//! small-case sweeps of the two degree inequalities.
//!
//! All arithmetic is arbitrary precision; every value is immutable.
//!
//! ```
//! use hnpoly::{exists_extension, parse_bundle};
//!
//! let f1 = parse_bundle("O(-1/2)^2").unwrap();
//! let f2 = parse_bundle("O(9/4)").unwrap();
//! let e = parse_bundle("O(1/3) + O(6/5)").unwrap();
//! assert!(exists_extension(&f1, &f2, &e).unwrap());
//! ```

mod bundle;
mod enumerate;
mod error;
mod extensions;
mod io;
mod moduli;
mod polygon;
pub mod render;
mod slope;
mod strata;
pub mod verify;

pub use bundle::{Bundle, StableSummand, Truncation};
pub use enumerate::{
    bundles_of_rank, bundles_with_slopes, concave_paths_below, sort_by_profile, HeightBound,
    HeightCap, SlopeBound,
};
pub use error::{Error, ParseError, Result};
pub use extensions::{
    build_filtration_witness, enumerate_extensions, exists_extension, exists_filtration,
    necessary_condition, split_common_top, FiltrationWitness,
};
pub use io::{
    bundle_from_json, bundle_to_json, bundle_to_text, int_to_json, parse_bundle,
    parse_bundle_any, polygon_from_json, polygon_to_json,
};
pub use moduli::{
    dim_aut, dim_ext_stratum, dim_h0, dim_hom, dim_hom_stratum, dim_surj_with_kernel,
    quotient_necessary, Nonempty, StratumDim,
};
pub use polygon::{
    bundle_of, deg_hom, deg_hom_nonneg, hn_vectors, instability, polygon_leq, polygon_of,
    twice_area_between, vec_cross, vec_prec, vec_preceq, HnVector, LatticePoint, Polygon,
};
pub use slope::{slopes_between, Slope};
pub use strata::{down_set, in_closure, StrataPoset};
pub use verify::SweepReport;
