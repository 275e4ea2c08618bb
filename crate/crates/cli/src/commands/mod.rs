pub mod check;
pub mod curvature;
pub mod envelope;
pub mod heights;
pub mod profile;
pub mod stability;
pub mod translation;
