//! Second and third Hankel determinants, directly from coefficients and in
//! the Grunsky-reduced forms valid when `a_2 = 0` or `a_3 = 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grunsky::{CoefficientVector, GrunskyMatrix, OddEntries, DEFAULT_MAX_DEGREE};
use crate::scalar::{Real, C};

/// `H_2(2) = a_2 a_4 - a_3^2`.
pub fn hankel2<T: Real>(f: &CoefficientVector<T>) -> C<T> {
    f.a(2) * f.a(4) - f.a(3) * f.a(3)
}

/// `H_3(1) = a_3 (a_2 a_4 - a_3^2) - a_4 (a_4 - a_2 a_3) + a_5 (a_3 - a_2^2)`.
pub fn hankel3<T: Real>(f: &CoefficientVector<T>) -> C<T> {
    let (a2, a3, a4, a5) = (f.a(2), f.a(3), f.a(4), f.a(5));
    a3 * (a2 * a4 - a3 * a3) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2)
}

/// `H_3(1)` under `a_2 = 0` (`w11 = 0`, hence `w33 = w15`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct A2ZeroH3<T: Real> {
    /// `2 w13^3 + 4 w13 w35 - 4 w33^2`.
    pub value: C<T>,
    /// `w13 w35 - w15^2`.
    pub e1: C<T>,
}

/// `H_3(1)` under `a_3 = 0` (`w13 = -3/2 w11^2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct A3ZeroH3<T: Real> {
    /// `-12 w11^2 (w11 w15 + 2/3 w35) - 4 w15^2 - 30 w11^6`.
    pub value: C<T>,
    /// `12 |w11|^2 |w11 w15 + 2/3 w35|`.
    pub d1: T,
    /// `4 |w15|^2 + 30 |w11|^6`.
    pub d2: T,
}

fn side_tol<T: Real>() -> T {
    T::identity_tol()
}

fn check_a2_zero<T: Real>(w: &OddEntries<T>) -> Result<()> {
    if w.w11.norm() > side_tol() {
        return Err(Error::Precondition(format!(
            "a2 = 0 reduction needs w11 = 0, got |w11| = {:e}",
            w.w11.norm()
        )));
    }
    Ok(())
}

fn check_a3_zero<T: Real>(w: &OddEntries<T>) -> Result<()> {
    let defect = (w.w13 + w.w11 * w.w11 * T::lit(1.5)).norm();
    if defect > side_tol() {
        return Err(Error::Precondition(format!(
            "a3 = 0 reduction needs w13 = -3/2 w11^2, defect {defect:e}"
        )));
    }
    Ok(())
}

pub fn hankel3_reduced_a2zero_entries<T: Real>(w: &OddEntries<T>) -> Result<A2ZeroH3<T>> {
    check_a2_zero(w)?;
    let OddEntries {
        w13, w15, w33, w35, ..
    } = *w;
    let value = w13 * w13 * w13 * T::lit(2.0) + w13 * w35 * T::lit(4.0) - w33 * w33 * T::lit(4.0);
    Ok(A2ZeroH3 {
        value,
        e1: w13 * w35 - w15 * w15,
    })
}

pub fn hankel3_reduced_a2zero<T: Real>(w: &GrunskyMatrix<T>) -> Result<A2ZeroH3<T>> {
    hankel3_reduced_a2zero_entries(&w.odd_entries()?)
}

pub fn hankel2_reduced_a3zero_entries<T: Real>(w: &OddEntries<T>) -> Result<C<T>> {
    check_a3_zero(w)?;
    let w11_4 = w.w11 * w.w11 * w.w11 * w.w11;
    Ok(w.w11 * w.w33 * T::lit(4.0) - w11_4 * (T::lit(52.0) / T::lit(3.0)))
}

/// `4 w11 w33 - 52/3 w11^4`.
pub fn hankel2_reduced_a3zero<T: Real>(w: &GrunskyMatrix<T>) -> Result<C<T>> {
    hankel2_reduced_a3zero_entries(&w.odd_entries()?)
}

pub fn hankel3_reduced_a3zero_entries<T: Real>(w: &OddEntries<T>) -> Result<A3ZeroH3<T>> {
    check_a3_zero(w)?;
    let OddEntries { w11, w15, w35, .. } = *w;
    let w11_2 = w11 * w11;
    let w11_6 = w11_2 * w11_2 * w11_2;
    let inner = w11 * w15 + w35 * (T::lit(2.0) / T::lit(3.0));
    let value = -(w11_2 * inner * T::lit(12.0)) - w15 * w15 * T::lit(4.0) - w11_6 * T::lit(30.0);
    Ok(A3ZeroH3 {
        value,
        d1: w11.norm_sqr() * inner.norm() * T::lit(12.0),
        d2: w15.norm_sqr() * T::lit(4.0) + w11_6.norm() * T::lit(30.0),
    })
}

/// Uses `w33 = w15 + 11/6 w11^3`, which follows from the vanishing
/// identity once `w13 = -3/2 w11^2`, so `w33` itself is not read.
pub fn hankel3_reduced_a3zero<T: Real>(w: &GrunskyMatrix<T>) -> Result<A3ZeroH3<T>> {
    hankel3_reduced_a3zero_entries(&w.odd_entries()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    None,
    A2Zero,
    A3Zero,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HankelReport<T: Real> {
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub h22: C<T>,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub h31: C<T>,
    #[serde(serialize_with = "crate::report::ser_opt_complex")]
    pub reduced_h22: Option<C<T>>,
    #[serde(serialize_with = "crate::report::ser_opt_complex")]
    pub reduced_h31: Option<C<T>>,
    pub reduction: Reduction,
}

/// Direct determinants plus, when `a_2` or `a_3` vanishes (to the identity
/// tolerance), the matching Grunsky-reduced values. `a_2 = 0` wins when both
/// vanish.
pub fn hankel_report<T: Real>(f: &CoefficientVector<T>) -> Result<HankelReport<T>> {
    if f.degree() < 5 {
        return Err(Error::InsufficientOrder {
            what: "third Hankel determinant",
            required: 5,
            actual: f.degree(),
        });
    }
    let h22 = hankel2(f);
    let h31 = hankel3(f);
    let tol = side_tol::<T>();
    let mut report = HankelReport {
        h22,
        h31,
        reduced_h22: None,
        reduced_h31: None,
        reduction: Reduction::None,
    };
    if f.a(2).norm() <= tol {
        let w = f.odd_grunsky(DEFAULT_MAX_DEGREE)?.odd_entries()?;
        report.reduced_h31 = Some(hankel3_reduced_a2zero_entries(&w)?.value);
        report.reduction = Reduction::A2Zero;
    } else if f.a(3).norm() <= tol {
        let w = f.odd_grunsky(DEFAULT_MAX_DEGREE)?.odd_entries()?;
        report.reduced_h22 = Some(hankel2_reduced_a3zero_entries(&w)?);
        report.reduced_h31 = Some(hankel3_reduced_a3zero_entries(&w)?.value);
        report.reduction = Reduction::A3Zero;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    type Cf = C<f64>;

    fn real(a: &[f64]) -> CoefficientVector<f64> {
        CoefficientVector::from_tail(a.iter().map(|&x| Cf::new(x, 0.0)))
    }

    #[test]
    fn direct_values() {
        let id = CoefficientVector::<f64>::identity(5);
        assert_eq!(hankel2(&id), Cf::zero());
        assert_eq!(hankel3(&id), Cf::zero());

        let koebe = real(&[2.0, 3.0, 4.0, 5.0]);
        assert_eq!(hankel2(&koebe), Cf::new(-1.0, 0.0));
        assert_eq!(hankel3(&koebe), Cf::zero());

        let odd_koebe = real(&[0.0, 1.0, 0.0, 1.0]);
        assert_eq!(hankel2(&odd_koebe), Cf::new(-1.0, 0.0));
        assert_eq!(hankel3(&odd_koebe), Cf::zero());
    }

    #[test]
    fn a2zero_reduction_on_odd_koebe() {
        let f = real(&[0.0, 1.0, 0.0, 1.0]);
        let w = f.odd_grunsky(8).unwrap();
        let e = w.odd_entries().unwrap();
        assert!((e.w13 - Cf::new(0.5, 0.0)).norm() < 1e-15);
        assert!((e.w35 - Cf::new(-0.125, 0.0)).norm() < 1e-15);
        let r = hankel3_reduced_a2zero(&w).unwrap();
        assert!((r.value - hankel3(&f)).norm() < 1e-14);
    }

    #[test]
    fn zero_matrix_reductions() {
        let w = CoefficientVector::<f64>::identity(5)
            .odd_grunsky(8)
            .unwrap();
        assert_eq!(hankel3_reduced_a2zero(&w).unwrap().value, Cf::zero());
        assert_eq!(hankel2_reduced_a3zero(&w).unwrap(), Cf::zero());
        assert_eq!(hankel3_reduced_a3zero(&w).unwrap().value, Cf::zero());
    }

    #[test]
    fn a2_and_a3_zero_reductions_coincide() {
        let f = CoefficientVector::from_tail([
            Cf::zero(),
            Cf::zero(),
            Cf::new(0.3, -0.4),
            Cf::new(-0.7, 0.2),
        ]);
        let w = f.odd_grunsky(8).unwrap();
        let e = w.odd_entries().unwrap();
        let via_a2 = hankel3_reduced_a2zero(&w).unwrap().value;
        let via_a3 = hankel3_reduced_a3zero(&w).unwrap().value;
        assert!((via_a3 + e.w15 * e.w15 * 4.0).norm() < 1e-14);
        assert!((e.w15 - e.w33).norm() < 1e-14);
        assert!((via_a2 - via_a3).norm() < 1e-14);
        assert!((hankel2_reduced_a3zero(&w).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn preconditions_are_checked() {
        let koebe = real(&[2.0, 3.0, 4.0, 5.0]).odd_grunsky(8).unwrap();
        assert!(matches!(
            hankel3_reduced_a2zero(&koebe),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            hankel2_reduced_a3zero(&koebe),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            hankel3_reduced_a3zero(&koebe),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn report_picks_reduction() {
        let r = hankel_report(&real(&[2.0, 3.0, 4.0, 5.0])).unwrap();
        assert_eq!(r.reduction, Reduction::None);
        assert!(r.reduced_h31.is_none());

        let r = hankel_report(&real(&[0.0, 1.0, 0.0, 1.0])).unwrap();
        assert_eq!(r.reduction, Reduction::A2Zero);
        assert!((r.reduced_h31.unwrap() - r.h31).norm() < 1e-12);

        let r = hankel_report(&real(&[0.5, 0.0, 0.2, -0.3])).unwrap();
        assert_eq!(r.reduction, Reduction::A3Zero);
        assert!((r.reduced_h31.unwrap() - r.h31).norm() < 1e-12);
        assert!((r.reduced_h22.unwrap() - r.h22).norm() < 1e-12);

        assert!(hankel_report(&real(&[1.0, 1.0, 1.0])).is_err());
    }
}
