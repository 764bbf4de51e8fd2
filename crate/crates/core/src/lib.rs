//! Exact computation on finite generalized metric spaces: approach
//! distances, the weight calculus, formal balls and the topologies they
//! induce.
//!
//! Everything is evaluated in exact rational arithmetic over `[0, ∞]`;
//! there is no floating point anywhere in the library, so every law is
//! checked at tolerance zero. The main pieces:
//!
//! * [`costs`] — the value domain `[0, ∞]` with truncated minus.
//! * [`spaces`] — finite generalized metric spaces, canonical carriers,
//!   finitely presented forward Cauchy nets and their Yoneda limits.
//! * [`weights`] — weights, coweights, the sup metric on weight space,
//!   flat/Cauchy/Scott classification, colimits and Kan extensions.
//! * [`approach`] — point–set distance tables, Alexandroff and Scott
//!   distances, regular functions, topological coreflection.
//! * [`balls`] — formal balls, directed joins and the four topologies
//!   (open-ball, c-Scott, d-Scott, generalized Scott).
//! * [`algebraic`] — compact elements, the explicit Scott distance on
//!   algebraic carriers with certified truncation, and the case study
//!   on the unit interval where c-Scott and d-Scott differ.
//! * [`harness`] — seeded instance generation, the theorem battery and
//!   counterexample search.
//! * [`io`] — text formats for spaces, weights, tables and reports.

pub mod algebraic;
pub mod approach;
pub mod balls;
pub mod costs;
pub mod harness;
pub mod io;
pub mod mutation;
pub mod spaces;
pub mod weights;
