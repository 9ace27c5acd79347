//! Gauss rules for the classical weights and polar quadrature against radial Bessel-type densities.

mod gauss;
mod plane;

pub use gauss::{gauss_rule, golub_welsch, jacobi_matrix, node_residual, GolubWelsch, QuadRule};
pub use plane::{
    integrate_plane, integrate_plane_multi, integrate_radial, radial_k_moment, radial_k_moment_exact,
    PlaneIntegral, RadialDensity, RadialIntegral,
};
