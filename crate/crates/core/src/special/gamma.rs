//! Lanczos approximation (g = 7, n = 9) of the gamma function, real and complex.

use crate::scalar::Scalar;
use num_complex::Complex;

const G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln |Gamma(x)|` for real `x` that is not a nonpositive integer.
pub fn ln_gamma<T: Scalar>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        let s = (T::PI() * x).sin().abs();
        return T::PI().ln() - s.ln() - ln_gamma(T::one() - x);
    }
    let z = x - T::one();
    let mut sum = T::lit(COEF[0]);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        sum = sum + T::lit(c) / (z + T::of_usize(i));
    }
    let t = z + T::lit(G) + half;
    half * (T::lit(2.0) * T::PI()).ln() + (z + half) * t.ln() - t + sum.ln()
}

pub fn gamma<T: Scalar>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        return T::PI() / ((T::PI() * x).sin() * gamma(T::one() - x));
    }
    let z = x - T::one();
    let mut sum = T::lit(COEF[0]);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        sum = sum + T::lit(c) / (z + T::of_usize(i));
    }
    let t = z + T::lit(G) + half;
    (T::lit(2.0) * T::PI()).sqrt() * t.powf(z + half) * (-t).exp() * sum
}

/// A logarithm of `Gamma(z)` (the branch is not normalized; `exp` of it is `Gamma(z)`).
pub fn ln_gamma_complex<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let one = Complex::new(T::one(), T::zero());
    if z.re < half {
        let pi = Complex::new(T::PI(), T::zero());
        return pi.ln() - (pi * z).sin().ln() - ln_gamma_complex(one - z);
    }
    let z = z - one;
    let mut sum = Complex::new(T::lit(COEF[0]), T::zero());
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        sum = sum + Complex::new(T::lit(c), T::zero()) / (z + T::of_usize(i));
    }
    let t = z + T::lit(G) + half;
    let c0 = half * (T::lit(2.0) * T::PI()).ln();
    (z + half) * t.ln() - t + sum.ln() + c0
}

pub fn gamma_complex<T: Scalar>(z: Complex<T>) -> Complex<T> {
    ln_gamma_complex(z).exp()
}
