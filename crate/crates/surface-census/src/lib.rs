//! Machinery for classifying Riemann surfaces of genus p + 1 (p prime) that
//! admit automorphism groups of order at least 4(g - 1): exact arithmetic on
//! Fuchsian signatures, finite group models, surface-kernel epimorphism
//! searches, and the census routines that tie them together.

pub mod arith;
pub mod census;
pub mod groups;
pub mod presentations;
pub mod signatures;
pub mod ske;
