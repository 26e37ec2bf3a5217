//! Self-approaching paths inside simple polygons.

pub mod corpus;
pub mod gen;
pub mod geodesic;
pub mod geom;
pub mod hull;
pub mod involute;
pub mod io;
pub mod path;
pub mod polygon_sa;
pub mod shortest;
pub mod solve;
pub mod svg;
pub mod tangent;
