//! Exact dynamics of the pentagonal piecewise rotation on the golden lozenge.

pub mod cyclo;
pub mod dynamics;
pub mod fractal;
pub mod nfold;
pub mod odometer;
pub mod regions;
pub mod render;
pub mod suites;
pub mod symbolic;
