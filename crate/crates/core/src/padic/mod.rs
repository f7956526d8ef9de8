//! Local analysis at a prime: Newton polygons, root counts in unramified
//! extensions of `Q_p` and the per-prime profile built from them.

mod count;
mod newton;
mod okring;
mod profile;

pub use count::{count_roots_unramified, UnramifiedLevelStats};
pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use okring::{OkElem, OkPoly, UnramifiedRing};
pub use profile::{local_profile, local_profile_seeded, local_profile_with_disc, subfield_partition, LocalProfile, Partition};

