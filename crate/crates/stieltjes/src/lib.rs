//! Exact-arithmetic toolkit for Stieltjes continued fractions whose partial
//! quotients come from automatic +/-1 sequences (paperfolding, Rudin-Shapiro,
//! or custom substitution systems).
//!
//! The crate provides:
//!
//! - [`seq`]: sequence generators, substitution systems, and k-kernel probes;
//! - [`ring`]: dense polynomials and truncated power series over Z, Z/mZ, and Q;
//! - [`cfrac`]: convergents, block convergents, series expansion, and the
//!   two-dimensional coefficient table of the convergent polynomials;
//! - [`closedform`]: Catalan numbers mod 4, the Catalan generating function,
//!   the S/T auxiliary families, and the closed-form series the identity
//!   checks compare against;
//! - [`verify`]: the identity-checking harness (convergent closed forms,
//!   exact factorizations, Hankel determinants, column automaticity probes);
//! - [`render`]: deterministic portable-pixmap rendering of coefficient
//!   tables mod m.
//!
//! See the `examples/` directory for one runnable program per capability and
//! the `stieltjes` binary for the command-line front end.

pub mod cfrac;
pub mod closedform;
mod error;
pub mod render;
pub mod ring;
pub mod seq;
pub mod verify;

pub use error::{Error, Result};

use std::sync::OnceLock;

/// Default cap on generated word and prefix lengths.
pub const DEFAULT_MAX_WORK: usize = 1 << 20;

/// Resource cap for word expansion, prefix generation, and table sizes.
/// `STIELTJES_MAX_WORK` overrides the default; read once per process.
pub fn max_work() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("STIELTJES_MAX_WORK")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_WORK)
    })
}
