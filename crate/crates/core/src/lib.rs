//! Engine for planar convex bodies with the origin interior: piecewise
//! support representation, structural polar/dual construction, the
//! face/normal-cone calculus (Φ, Ψ, pos, closures, conjugation), boundary
//! classification with census identities, self-dual constructions by
//! half-gluing, a machine-verification suite, and a CLI with JSON body
//! specs and SVG rendering.

pub mod angle;
pub mod body;
pub mod calculus;
mod error;
pub mod face;
pub mod geom;
pub mod interp;
mod numeric;
pub mod piece;
pub mod polarity;
pub mod selfdual;
pub mod spec;
pub mod svg;
pub mod verify;

pub use angle::{Angle, AngleInterval, ANGLE_EPS};
pub use body::{PlanarBody, Junction};
pub use error::{Error, Result};
pub use face::{Cone, Face};
pub use geom::{pt, Point2};
pub use piece::{PieceKind, SupportPiece};
