//! Geometry of m-simplices in R^n.
//!
//! * [`simplex`]: points, simplices, edge profiles, barycenters, faces, regular simplices
//! * [`apollonius`]: median lengths and the identities relating them to edge lengths
//! * [`enclosing`]: barycentric circumradius, Jung's bound, exact minimum enclosing ball
//! * [`metrics`]: barycentric and exact in-radii, thickness, width bounds
//! * [`bisection`]: longest-edge bisection and a sign-based root finder

pub mod apollonius;
pub mod bisection;
pub mod corpus;
pub mod enclosing;
pub mod error;
pub mod io;
pub mod metrics;
pub mod point;
pub mod simplex;

pub use apollonius::MedianReport;
pub use bisection::{BisectionStep, BisectionTrace, SystemFunction};
pub use enclosing::{Ball, EnclosureReport};
pub use error::{GeomError, Result};
pub use metrics::MetricsReport;
pub use point::Point;
pub use simplex::{regular_simplex, EdgeProfile, Simplex};
