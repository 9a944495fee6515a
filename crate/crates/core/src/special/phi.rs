//! The functions `Phi_m` on the unit cube that carry the clique integrals.

use crate::error::{Error, Result};
use crate::model::Tau;
use crate::scalar::Scalar;

/// Argument of [`phi`]: `m` coordinates in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiInput<T: Scalar = f64> {
    tau: Tau<T>,
    t: Vec<T>,
}

impl<T: Scalar> PhiInput<T> {
    pub fn new(tau: Tau<T>, t: Vec<T>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::Parameter("phi needs at least one coordinate".into()));
        }
        if let Some((i, x)) = t
            .iter()
            .enumerate()
            .find(|(_, x)| !(**x >= T::zero() && **x <= T::one()))
        {
            return Err(Error::Domain(format!(
                "coordinate t_{} = {x} lies outside [0, 1]",
                i + 1
            )));
        }
        Ok(Self { tau, t })
    }

    pub fn m(&self) -> usize {
        self.t.len()
    }

    pub fn tau(&self) -> Tau<T> {
        self.tau
    }

    pub fn t(&self) -> &[T] {
        &self.t
    }
}

/// `Phi_m(t)`; the result lies in `[0, 1]`.
pub fn phi<T: Scalar>(input: &PhiInput<T>) -> T {
    phi_unchecked(input.tau, &input.t)
}

/// The bracket `Psi_m` with `Phi_m = t_1 t_2^{tau-1} ... t_m^{tau-1} Psi_m`.
///
/// Bounded on the cube, with `Psi_m(1,...,1) = 1`. No domain checks, so it can
/// also be evaluated just outside the cube (finite differences).
pub fn psi<T: Scalar>(tau: Tau<T>, t: &[T]) -> T {
    let tau = tau.value();
    let one = T::one();
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let c = tau - one;
    let m = t.len();
    let first = t[0].powf(tau - two) / (tau - two);
    if m == 1 {
        return c / (tau - two) - first;
    }
    let mut total = c / ((three - tau) * (tau - two)) - first;
    // prefix = t_2^{3-tau} t_3^{4-tau} ... t_{j-1}^{j-tau}
    let mut prefix = one;
    for (idx, &ti) in t.iter().enumerate().skip(1) {
        let i = T::of_usize(idx + 1);
        prefix = prefix * ti.powf(i + one - tau);
        let j = i + one;
        if idx + 1 < m {
            total = total - c / ((j + one - tau) * (j - tau)) * prefix;
        }
    }
    total - c / (T::of_usize(m) + one - tau) * prefix
}

/// `Phi_m` without domain checks.
pub fn phi_unchecked<T: Scalar>(tau: Tau<T>, t: &[T]) -> T {
    let e = tau.value() - T::one();
    let lead = t.iter().skip(1).fold(t[0], |acc, &ti| acc * ti.powf(e));
    lead * psi(tau, t)
}

/// Hessian of `Phi_m` at `(1,...,1)`: entry `(i,j) = -(tau-1) min(i,j)`, 1-based.
pub fn phi_hessian_ones<T: Scalar>(m: usize, tau: Tau<T>) -> Vec<Vec<T>> {
    let c = tau.value() - T::one();
    (1..=m)
        .map(|i| (1..=m).map(|j| -c * T::of_usize(i.min(j))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_1d_with, Options};
    use proptest::prelude::*;

    const TAUS: [f64; 3] = [2.2, 2.5, 2.8];

    fn tau(x: f64) -> Tau {
        Tau::new(x).unwrap()
    }

    #[test]
    fn corners() {
        for &tv in &TAUS {
            for m in 1..=6 {
                let ones = PhiInput::new(tau(tv), vec![1.0; m]).unwrap();
                assert!((phi(&ones) - 1.0).abs() < 1e-13, "m={m} tau={tv}");
                let zeros = PhiInput::new(tau(tv), vec![0.0; m]).unwrap();
                assert_eq!(phi(&zeros), 0.0);
            }
        }
    }

    #[test]
    fn single_coordinate_value() {
        let p = PhiInput::new(tau(2.5), vec![0.25]).unwrap();
        assert!((phi(&p) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn two_coordinates_match_closed_form() {
        let tv = 2.5;
        let (t1, t2) = (0.3f64, 0.7f64);
        let expected = t1
            * t2.powf(tv - 1.0)
            * ((tv - 1.0) / ((3.0 - tv) * (tv - 2.0))
                - t1.powf(tv - 2.0) / (tv - 2.0)
                - (tv - 1.0) / (3.0 - tv) * t2.powf(3.0 - tv));
        let p = PhiInput::new(tau(tv), vec![t1, t2]).unwrap();
        assert!((phi(&p) - expected).abs() < 1e-15);
    }

    #[test]
    fn rejects_outside_cube() {
        assert!(matches!(
            PhiInput::new(tau(2.5), vec![0.5, 1.2]),
            Err(Error::Domain(_))
        ));
        assert!(PhiInput::new(tau(2.5), vec![-0.1]).is_err());
        assert!(PhiInput::new(tau(2.5), vec![f64::NAN]).is_err());
    }

    /// `(tau-1) int_1^inf x^{-tau} prod_i min(1, v_i x) dx` with `v_i = t_i ... t_m`.
    fn phi_by_quadrature(tv: f64, t: &[f64]) -> f64 {
        let m = t.len();
        let mut v = vec![0.0; m];
        let mut acc = 1.0;
        for i in (0..m).rev() {
            acc *= t[i];
            v[i] = acc;
        }
        let breaks: Vec<f64> = v.iter().map(|x| 1.0 / x).filter(|b| *b > 1.0).collect();
        let f = |x: f64| x.powf(-tv) * v.iter().map(|vi| (vi * x).min(1.0)).product::<f64>();
        let r = integrate_1d_with(
            f,
            1.0,
            f64::INFINITY,
            &Options::new(1e-13).with_breakpoints(breaks),
        );
        (tv - 1.0) * r.value
    }

    #[test]
    fn agrees_with_defining_integral() {
        let points: [&[f64]; 5] = [
            &[0.4],
            &[0.3, 0.8],
            &[0.5, 0.6, 0.9],
            &[0.2, 0.9, 0.7, 0.95],
            &[0.9, 0.5, 0.8, 0.6, 0.75],
        ];
        for &tv in &TAUS {
            for t in points {
                let q = phi_by_quadrature(tv, t);
                let p = phi_unchecked(tau(tv), t);
                assert!((p - q).abs() < 1e-10, "tau={tv} t={t:?}: {p} vs {q}");
            }
        }
    }

    #[test]
    fn gradient_vanishes_at_ones() {
        let h = 1e-4;
        for &tv in &TAUS {
            for m in 1..=6 {
                for i in 0..m {
                    let mut up = vec![1.0; m];
                    let mut dn = vec![1.0; m];
                    up[i] += h;
                    dn[i] -= h;
                    let g = (phi_unchecked(tau(tv), &up) - phi_unchecked(tau(tv), &dn)) / (2.0 * h);
                    assert!(g.abs() <= 1e-6, "m={m} i={i} tau={tv}: {g}");
                }
            }
        }
    }

    #[test]
    fn hessian_examples() {
        assert_eq!(
            phi_hessian_ones(2, tau(2.5)),
            vec![vec![-1.5, -1.5], vec![-1.5, -3.0]]
        );
        assert_eq!(phi_hessian_ones(1, tau(2.5)), vec![vec![-1.5]]);
    }

    #[test]
    fn hessian_matches_finite_differences() {
        let h = 1e-3;
        for &tv in &TAUS {
            for m in 1..=6 {
                let hess = phi_hessian_ones(m, tau(tv));
                let f = |d: &[(usize, f64)]| {
                    let mut t = vec![1.0; m];
                    for &(i, s) in d {
                        t[i] += s;
                    }
                    phi_unchecked(tau(tv), &t)
                };
                for i in 0..m {
                    for j in 0..m {
                        let fd =
                            (f(&[(i, h), (j, h)]) - f(&[(i, h), (j, -h)]) - f(&[(i, -h), (j, h)])
                                + f(&[(i, -h), (j, -h)]))
                                / (4.0 * h * h);
                        let exact = hess[i][j];
                        assert!(
                            (fd - exact).abs() <= 1e-4 * exact.abs(),
                            "m={m} ({i},{j}) tau={tv}: {fd} vs {exact}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn f32_instantiation() {
        let t32 = Tau::new(2.5f32).unwrap();
        let p = PhiInput::new(t32, vec![1.0f32; 4]).unwrap();
        assert!((phi(&p) - 1.0).abs() < 1e-5);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn monotone_in_each_coordinate(
            m in 1usize..=6,
            ti in 0usize..3,
            base in proptest::collection::vec(0.0f64..=1.0, 6),
            bump in proptest::collection::vec(0.0f64..=1.0, 6),
        ) {
            let tv = TAUS[ti];
            let lo: Vec<f64> = base[..m].to_vec();
            let hi: Vec<f64> = lo.iter().zip(&bump).map(|(x, b)| x + (1.0 - x) * b).collect();
            let a = phi(&PhiInput::new(tau(tv), lo).unwrap());
            let b = phi(&PhiInput::new(tau(tv), hi).unwrap());
            prop_assert!(a <= b + 1e-12);
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&a));
        }
    }
}
