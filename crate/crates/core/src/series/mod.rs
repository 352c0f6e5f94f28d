//! Truncated power series with exact coefficients, and the composition
//! generating functions built from them.

pub mod gf;
pub mod marker;
pub mod rational_gf;
pub mod ring;
pub mod trunc;

pub use gf::{
    build_composition_series, build_dsv_series, build_family_series, build_hsp_series,
    build_sp_series, build_sv_series, marker_moment, marker_moment_by_parts, parts_grid, Series,
};
pub use marker::{Marker, MarkerPoly};
pub use rational_gf::{rational_gf_coeffs, GfTable, RationalGf};
pub use ring::Ring;
pub use trunc::TruncSeries;
