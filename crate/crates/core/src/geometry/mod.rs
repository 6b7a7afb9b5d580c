//! Planar point sets: Θ-graphs, the sector-walk constant-factor algorithm and
//! the pixel-grid approximation scheme.

mod grid;
mod pixel;
mod sweep;
mod theta;

pub use grid::{geo_ptas, geo_ptas_with, GridOptions, GridReport, C_B, C_EXP, C_GP, C_M};
pub use pixel::{pixelize, Pixel, PixelGrid};
pub use sweep::{geo_o1, geo_o1_with, SweepOptions, C_DIAM, C_GEO, MIN_SECTORS};
pub use theta::{build_theta_graph, build_theta_graph_brute, ThetaGraph};
