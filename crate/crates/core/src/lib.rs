//! Exact arithmetic in graph inverse semigroups and polycyclic monoids.
//!
//! The crate provides, over any finite directed multigraph:
//!
//! - normal-form element arithmetic in the graph inverse semigroup G(E)
//!   ([`gis`]) on top of paths and the prefix order ([`graph`]);
//! - the polycyclic monoid as a standalone normal-form calculus with a
//!   letter-word reduction engine and the prefix-code embedding of
//!   unbounded-index elements into two generators ([`poly`]);
//! - the canonical embedding of G(E) into a polycyclic monoid, in closed
//!   form and as a generator product, with an exhaustive brute-force
//!   verifier ([`embed`]);
//! - filter-generated topologies on G(E): neighborhood bases at zero,
//!   continuity witnesses, the coarsest-topology identity, and the
//!   topological-embedding identities, all checked at a truncation bound
//!   ([`topology`]);
//! - batch verification suites with machine-readable reports ([`verify`]).
//!
//! Everything is immutable after construction and all operations are pure,
//! so the whole API is safe for unrestricted concurrent use; the
//! verification sweeps parallelize internally.

pub mod embed;
pub mod expr;
pub mod gis;
pub mod graph;
pub mod poly;
pub mod report;
pub mod topology;
pub mod verify;
