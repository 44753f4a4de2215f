//! Exact-rational realization of cubillages: frames, cube placement,
//! spectra, the tiling oracle, barrel fragments and the core map.

pub mod core_map;
pub mod frame;
pub mod oracle;
pub mod placement;
pub mod svg;

pub use core_map::{core, core_placement, symmetric_cube_types};
pub use frame::{frame_default, Frame, Rational};
pub use oracle::{verify_placement, verify_tiling, Clause, TilingReport};
pub use placement::{barrel_fragment_exists, cube_base, expected_vertex_count, spectrum, Placement, Spectrum};
pub use svg::render_svg;
