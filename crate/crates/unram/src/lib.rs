//! Exact and numerical harmonic analysis on GL(n): the unramified Hecke
//! algebra over Q_p and its Satake transform, Plancherel-measure moments,
//! explicit GL(2) orbital integrals with a lattice-counting oracle, the
//! Cartan/Iwasawa geometry of GL(n,R)^1, Harish-Chandra c-functions and
//! elementary spherical functions, and the limiting level-density kernels
//! of the classical compact ensembles.
//!
//! Every quantity with an exact formula is computed by at least two
//! independent routes (closed form vs. enumeration, algebraic identity vs.
//! quadrature) so that the identities relating them are executable tests.

pub mod archgeo;
pub mod ensembles;
pub mod hecke;
pub mod orbital;
pub mod plancherel;
pub mod spherical;
pub mod symfunc;
