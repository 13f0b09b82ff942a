//! Spatial network traffic simulator and scaling-law toolkit.

pub mod emst;
pub mod error;
pub mod fit;
pub mod geometry;
pub mod io;
pub mod numeric;
pub mod random;
pub mod synthesis;
pub mod theory;
pub mod traffic;

pub use emst::{emst_kruskal, emst_prim, EmstResult};
pub use error::{Error, Result};
pub use fit::{fit, rank_models, FitModel};
pub use geometry::{nearest_node, torus_distance, GridIndex, Point, TorusDomain};
pub use random::{lambda_eval, ExponentParams, LambdaClass};
pub use synthesis::{generate_network, generate_session, Network, Session};
pub use theory::{classify_law, ln_order, ratio_slope, AsymptoticOrder, Bound, LawKind};
pub use traffic::{simulate, SimConfig, TrafficSample};
