//! Finite enriched categories, functors, natural transformations and the
//! brute-force machinery (enumeration, isomorphism search, adjoint search)
//! the other modules use as their oracle.

pub mod adjoint;
pub mod assemble;
pub mod category;
pub mod coreflect;
pub mod enumerate;
pub mod functor;
pub mod instances;
pub mod iso;

pub use adjoint::{find_left_adjoint, Adjunction};
pub use category::{Arrow, CategoryBuilder, Elem, Enrichment, FiniteCategory, MorId, ObjId, ValidationReport, Violation};
pub use enumerate::{enumerate_functors, EnumLimits};
pub use functor::{Endofunctor, Functor, FunctorReport, FunctorViolation, NatTransformation};
pub use iso::{check_equivalence, find_nat_iso, inverse, is_iso, EquivalenceReport, EquivalenceWitness};
