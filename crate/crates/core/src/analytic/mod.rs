//! Pseudo-polynomials, Descartes sign counting and numerical checks of the
//! analytic lemmas.

pub mod functions;
pub mod lemmas;
pub mod pseudo;

pub use functions::{f_big, ln_f_big, ln_g, ln_geometric_sum};
pub use lemmas::{check_lemma, check_lemma_by_name, Grid, LemmaConfig, LemmaId, LemmaReport};
pub use pseudo::{build_h, log_derivative_polynomial, subtle_polynomial, PseudoPolynomial, Term};
