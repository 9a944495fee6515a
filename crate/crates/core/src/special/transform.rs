//! The transformed kernel `j(u)`, its Fourier transform `J(v)` and the moment `J(0)`.

use super::gamma::gamma_complex;
use crate::model::{Kernel, Tau};
use crate::quadrature::PowerEnvelope;
use crate::scalar::Scalar;
use num_complex::Complex;

/// `j(u) = exp(-(tau-1) u / 2) f(e^u)`.
pub fn kernel_j<T: Scalar>(u: T, tau: Tau<T>, kernel: Kernel) -> T {
    let half = T::lit(0.5);
    (-(tau.value() - T::one()) * half * u + ln_f_exp(kernel, u)).exp()
}

/// `ln f(e^u)`, accurate for large `|u|`.
fn ln_f_exp<T: Scalar>(kernel: Kernel, u: T) -> T {
    match kernel {
        Kernel::MinOne => u.min(T::zero()),
        Kernel::Ratio => {
            if u >= T::zero() {
                -(-u).exp().ln_1p()
            } else {
                u - u.exp().ln_1p()
            }
        }
        Kernel::ExpComplement => {
            let x = u.exp();
            if x < T::lit(1e-8) {
                u - x * T::lit(0.5)
            } else {
                (-(-x).exp_m1()).ln()
            }
        }
    }
}

/// `int_0^inf x^{-(tau+1)/2} f(x) dx`, which equals `int_R j(u) du`.
pub fn kernel_moment<T: Scalar>(tau: Tau<T>, kernel: Kernel) -> T {
    let t = tau.value();
    let half = T::lit(0.5);
    let a = (T::lit(3.0) - t) * half;
    let b = (t - T::one()) * half;
    match kernel {
        Kernel::MinOne => T::lit(4.0) / ((T::lit(3.0) - t) * (t - T::one())),
        Kernel::Ratio => T::PI() / (T::PI() * b).sin(),
        Kernel::ExpComplement => super::gamma::gamma(a) / b,
    }
}

/// `J(v) = int_0^inf x^{-2 pi i v - (tau+1)/2} f(x) dx = int_R j(u) e^{-2 pi i u v} du`.
pub fn kernel_fourier<T: Scalar>(v: T, tau: Tau<T>, kernel: Kernel) -> Complex<T> {
    let t = tau.value();
    let pi = T::PI();
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    match kernel {
        Kernel::MinOne => {
            let w = T::lit(4.0) * pi * v;
            let d = Complex::new(T::lit(3.0) - t, -w) * Complex::new(t - T::one(), w);
            Complex::new(T::lit(4.0), T::zero()) / d
        }
        Kernel::Ratio => {
            let z = Complex::new(pi * (t - T::one()) * half, two * pi * pi * v);
            Complex::new(pi, T::zero()) / z.sin()
        }
        Kernel::ExpComplement => {
            let z = Complex::new((T::lit(3.0) - t) * half, -two * pi * v);
            gamma_complex(z) / Complex::new((t - T::one()) * half, two * pi * v)
        }
    }
}

/// A bound `|J(v)| <= coef |v|^{-power}` valid for every `v != 0`.
pub fn kernel_fourier_envelope<T: Scalar>(tau: Tau<T>, kernel: Kernel) -> PowerEnvelope<T> {
    let pi = T::PI();
    let two = T::lit(2.0);
    match kernel {
        // 4 / (|3-tau-4 pi i v| |tau-1+4 pi i v|) <= 4 / (4 pi v)^2
        Kernel::MinOne => PowerEnvelope {
            coef: T::one() / (T::lit(4.0) * pi * pi),
            power: two,
        },
        // |sin(x+iy)| >= sinh|y| >= y^2/2
        Kernel::Ratio => PowerEnvelope {
            coef: T::one() / (two * pi * pi * pi),
            power: two,
        },
        // |Gamma(a+iy)| <= Gamma(a+2) / y^2 and the denominator is at least |y|
        Kernel::ExpComplement => {
            let a = (T::lit(3.0) - tau.value()) / two;
            PowerEnvelope {
                coef: super::gamma::gamma(a + two) / (two * pi).powi(3),
                power: T::lit(3.0),
            }
        }
    }
}
