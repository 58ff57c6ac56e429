//! Classical special functions as enclosures.

pub mod bernoulli;
pub mod bessel;
pub mod gamma;
pub mod zeta;

pub use bernoulli::bernoulli_2k;
pub use bessel::{bessel_k, bessel_k_half, bessel_k_upper};
pub use gamma::{
    digamma_half, digamma_int, double_factorial, euler_gamma, gamma_continued, gamma_fn,
    gen_binomial, gen_binomial_exact, harmonic, log_2pi_half, log_gamma_closed, log_gamma_series,
    BinomialTaylor, ConstantTag, SpecialConstant,
};
pub use zeta::{
    dirichlet_beta, hurwitz_zeta, hurwitz_zeta_continued, rational_pow_neg, riemann_zeta,
    riemann_zeta_continued,
};
