//! Shared numerical kernels: Bessel functions, adaptive quadrature,
//! root refinement, fixed-step RK4, and 2D sample grids.

pub mod bessel;
pub mod grid;
pub mod ode;
pub mod quad;
pub mod roots;
