//! The moduli space Hom(Π₁(Σ, V), G): points, holonomy functions, invariant
//! derivatives, and the quasi-Poisson / quasi-BV structures on it.

pub mod expr;
pub mod geometric;
pub mod group;
pub mod ops;
pub mod point;

pub use expr::{eval, Atom, Chord, Endpoint, Evaluator, Expr, InvFn, ModuliFunction, Slot, Target};
pub use geometric::{intersection_delta_rhs, RealizedSystem};
pub use group::{GElem, GroupSpec};
pub use ops::{
    cartan_trivector, fock_rosly_bracket, fused_delta, fused_fock_rosly, jacobiator, phi_action, phi_total, quasi_bv_delta,
    quasi_poisson_phi, rho,
};
pub use point::ModuliPoint;
