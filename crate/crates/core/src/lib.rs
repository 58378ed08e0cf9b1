//! Exact computation of spectral sequences of filtered complexes and
//! bicomplexes over computable commutative rings, with the induced
//! filtrations on total (co)homology: purity filtrations, double-Ext and
//! Tor-Ext filtrations, and upper-triangular presentations with explicit
//! isomorphisms.

pub mod error;
pub mod poly;
pub mod ring;
pub mod mat;
pub mod parse;
pub mod kernel;
pub mod fpmod;
pub mod genmor;
pub mod functors;
pub mod complexes;
pub mod bicomplex;
pub mod spectral;
pub mod cartan;
pub mod derived;

pub use error::{Error, Result};
pub use mat::Mat;
pub use ring::{Ring, RingKind};
