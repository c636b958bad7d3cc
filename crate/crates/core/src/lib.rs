pub mod cli;
pub mod iet;
pub mod rauzy;
pub mod scalar;
pub mod spectral;
pub mod symbolic;
