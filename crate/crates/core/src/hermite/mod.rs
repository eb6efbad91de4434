//! Hermite-Gaussian functions, the polynomial families p_n, q_n and the generalized L̂_n.

mod functions;
mod inner;
mod lhat;
mod mellin;
mod poly;
mod zeros;


pub use functions::{hermite_coefficients, HermiteGaussian};
pub use inner::{inner_product_cutoff, mp_inner_product, normalized_inner_product};
pub use lhat::{lhat_n, lhat_n_fe_residual, lhat_n_quadrature, raising_constant};
pub use mellin::{fourier_residual, hermite_mellin, mellin_difference_check, MellinInput, MellinResiduals};
pub use poly::{poly_family, poly_family_three_term, Family, IntPolynomial};
pub use zeros::{aberth_zeros, critical_line_form, critical_zeros, poly_zeros, real_roots, CriticalZero};
