//! Archimedean side: certified complex roots, Mahler measure and Weil
//! height, torsion detection and sector counts.

mod fixed;
mod mahler;
mod roots;
mod sector;
mod torsion;

pub use mahler::{log_mahler_fast, mahler_height, mahler_height_at_precision, mahler_height_tol, HeightEstimate, DEFAULT_TOLERANCE};
pub use roots::{complex_roots, ComplexApprox};
pub use sector::{mignotte_check, mignotte_rhs, mignotte_with_roots, sector_count, sector_supremum, MignotteReport, SectorSpec};
pub use torsion::{is_torsion, totient_preimages};
