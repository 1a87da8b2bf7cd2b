//! Exact little-cubes geometry, the fiberwise filtration of configuration
//! spaces in `I^k × I^m`, scanning maps, and an F₂ homology engine that checks
//! the filtration's first page against a Dyer–Lashof count.

pub mod config;
pub mod cubes;
pub mod gen;
pub mod homology;
pub mod perm;
pub mod rational;
pub mod scanning;
pub mod spectral;
pub mod verify;
