//! Primitive n-th roots of unity constructed from `z^n = 1` with real
//! arithmetic and square roots only, certified by a monotone descent along
//! the unit circle.

pub mod dft;
pub mod error;
pub mod oracle;
pub mod phi;
pub mod precision;
pub mod primitivity;
pub mod solver;
pub mod zeta;

pub use dft::{dft_forward, dft_inverse, twiddle_table, TwiddleTable};
pub use error::{Error, Result};
pub use oracle::{agrees_with_trig, trig_root, OracleRoot};
pub use phi::{build_certificate, iterate_sequence, phi, phi_derivative, psi, Descent, ZetaCertificate};
pub use precision::{HpComplex, HpReal};
pub use primitivity::{gcd_primitivity, multiplicative_order, prime_shortcut, roots_of, PrimitivityReport};
pub use solver::{solve_binomial, solve_unity, RootSet};
pub use zeta::{construct_zeta, select_zeta, Zeta};
