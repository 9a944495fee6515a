//! Closed-form ingredients of the asymptotic formulas.

mod circulant;
mod gamma;
mod phi;
mod transform;

pub use circulant::{
    bareiss_det, circulant_build, circulant_det, circulant_reduced_det, CirculantSpec,
};
pub use gamma::{gamma, gamma_complex, ln_gamma, ln_gamma_complex};
pub use phi::{phi, phi_hessian_ones, phi_unchecked, psi, PhiInput};
pub use transform::{kernel_fourier, kernel_fourier_envelope, kernel_j, kernel_moment};
