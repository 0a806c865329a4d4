//! Exact homological algebra for quiver representations with coefficients in
//! finite `Z/N`-modules.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactlin`] — exact integer and modular linear algebra (Smith normal
//!   form over `Z`, kernels and linear solving over `Z/N`),
//! * [`zmod`] — the category of finite `Z/N`-modules in invariant-factor
//!   form (Hom, kernel, cokernel, biproduct, covers, Ext),
//! * [`quiver`] — finite quiver combinatorics, path enumeration, and the
//!   rootedness fixpoint sequences,
//! * [`repcat`] — representations of a quiver valued in finite modules and
//!   their morphisms, with the canonical per-vertex maps `phi` and `psi`,
//! * [`functors`] — the six functors `e`, `s`, `f`, `g`, `c`, `k`, their
//!   adjunction witnesses, covers/envelopes, and the cone construction,
//! * [`extcalc`] — Ext groups of representations and the Ext-isomorphism
//!   checkers,
//! * [`cotorsion`] — class operators, finite verification universes,
//!   cotorsion-pair checks, and (co)filtration machinery.
//!
//! Universe sweeps are data-parallel through [`exec`]; the `parallel`
//! feature (enabled by default) backs them with rayon, without it they run
//! sequentially on the same code path.

pub mod exactlin;
pub mod exec;
pub mod zmod;

pub mod quiver;
pub mod repcat;

pub mod cotorsion;
pub mod extcalc;
pub mod functors;
