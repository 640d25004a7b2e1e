//! Extremal convex polygons inscribed in (and circumscribed about) a
//! strictly convex polygon: minimum-area and minimum-perimeter inscribed
//! solvers, the U/N contact-sequence machinery, circumscribed diameter and
//! perimeter tools, and independent verification oracles.

pub mod circumscribed;
pub mod cli;
pub mod doc;
pub mod gen;
pub mod geom;
pub mod min_area;
pub mod min_perimeter;
pub mod oracles;
pub mod sequences;
pub mod svg;

pub use geom::{Anchor, ConvexPolygon, InscribedPolygon, Point};
pub use min_area::{min_area_inscribed, MinAreaResult};
pub use min_perimeter::{min_perimeter_inscribed, FagnanoSolution, MinPerimResult};
