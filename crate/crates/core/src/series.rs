//! Truncated univariate and bivariate complex power series.
//!
//! A [`Series1`] of order `N` holds `c_0..=c_N`; a [`Series2`] of order `M`
//! holds every `c_{p,q}` with `p + q <= M`. All arithmetic is exact below the
//! truncation degree and silently discards anything above it.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cre, Real, C};

/// Truncated univariate series `c_0 + c_1 z + ... + c_N z^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series1<T: Real> {
    coeffs: Vec<C<T>>,
}

impl<T: Real> Series1<T> {
    /// Builds a series of order `order`, padding with zeros or dropping
    /// coefficients past `order`.
    pub fn new(order: usize, coeffs: impl IntoIterator<Item = C<T>>) -> Self {
        let mut coeffs: Vec<C<T>> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, C::zero());
        Series1 { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series1 {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    /// Builds a series from real coefficients.
    pub fn from_real(order: usize, coeffs: &[T]) -> Self {
        Self::new(order, coeffs.iter().map(|&x| cre(x)))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero above the truncation order.
    pub fn coeff(&self, k: usize) -> C<T> {
        self.coeffs.get(k).copied().unwrap_or_else(C::zero)
    }

    /// Re-truncates (or zero-extends) to a new order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order, self.coeffs.iter().copied())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    fn check_unit_constant(&self) -> Result<()> {
        let c0 = self.coeffs[0];
        if (c0 - C::one()).norm() > T::unit_tol() {
            return Err(Error::ConstantTermNotOne {
                re: c0.re.to_f64().unwrap_or(f64::NAN),
                im: c0.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Series1 {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Series1 {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, k: C<T>) -> Self {
        Series1 {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Ok(Series1 { coeffs: out })
    }

    /// Formal derivative, kept at the same order (top coefficient zero).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for k in 1..=n {
            out[k - 1] = self.coeffs[k] * T::int(k);
        }
        Series1 { coeffs: out }
    }

    /// Logarithm of a series with unit constant term.
    ///
    /// Solved from `L' a = a'` with `L(0) = 0`:
    /// `k L_k = k a_k - sum_{j=1}^{k-1} j L_j a_{k-j}`.
    pub fn log(&self) -> Result<Self> {
        self.check_unit_constant()?;
        let n = self.order();
        let a = &self.coeffs;
        let mut l = vec![C::zero(); n + 1];
        for k in 1..=n {
            let mut acc = a[k] * T::int(k);
            for j in 1..k {
                acc = acc - l[j] * a[k - j] * T::int(j);
            }
            l[k] = acc / T::int(k);
        }
        Ok(Series1 { coeffs: l })
    }

    /// Exponential of a series with zero constant term, from `E' = L' E`.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0].norm() > T::unit_tol() {
            return Err(Error::Precondition(
                "exp requires a zero constant term".into(),
            ));
        }
        let n = self.order();
        let l = &self.coeffs;
        let mut e = vec![C::zero(); n + 1];
        e[0] = C::one();
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc + l[j] * e[k - j] * T::int(j);
            }
            e[k] = acc / T::int(k);
        }
        Ok(Series1 { coeffs: e })
    }

    /// Principal square root of a series with unit constant term:
    /// `2 s_k = a_k - sum_{j=1}^{k-1} s_j s_{k-j}`.
    pub fn sqrt(&self) -> Result<Self> {
        self.check_unit_constant()?;
        let n = self.order();
        let a = &self.coeffs;
        let mut s = vec![C::zero(); n + 1];
        s[0] = C::one();
        let half = T::lit(0.5);
        for k in 1..=n {
            let mut acc = a[k];
            for j in 1..k {
                acc = acc - s[j] * s[k - j];
            }
            s[k] = acc * half;
        }
        Ok(Series1 { coeffs: s })
    }

    /// `f(z^stride)` at order `order`.
    pub fn substitute_power(&self, stride: usize, order: usize) -> Self {
        let mut out = vec![C::zero(); order + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            let d = k * stride;
            if d > order {
                break;
            }
            out[d] = *c;
        }
        Series1 { coeffs: out }
    }

    /// `f(z) * z^shift` at order `order`.
    pub fn shift_up(&self, shift: usize, order: usize) -> Self {
        let mut out = vec![C::zero(); order + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k + shift > order {
                break;
            }
            out[k + shift] = *c;
        }
        Series1 { coeffs: out }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let n = self.order().max(other.order());
        (0..=n).fold(T::zero(), |m, k| {
            m.max((self.coeff(k) - other.coeff(k)).norm())
        })
    }

    /// Whether `c_0 = 0` and `c_1 = 1` within the unit tolerance.
    pub fn is_normalized(&self) -> bool {
        self.coeff(0).norm() <= T::unit_tol()
            && self.order() >= 1
            && (self.coeff(1) - C::one()).norm() <= T::unit_tol()
    }
}

/// Truncated bivariate series `sum_{p+q<=M} c_{p,q} t^p z^q`.
///
/// Storage is row-major over `p`, row `p` holding `q = 0..=M-p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series2<T: Real> {
    order: usize,
    coeffs: Vec<C<T>>,
}

#[inline]
fn tri_index(order: usize, p: usize, q: usize) -> usize {
    // rows 0..p hold (M+1) + M + ... + (M-p+2) entries
    p * (order + 1) - p * p.saturating_sub(1) / 2 + q
}

#[inline]
fn tri_len(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

impl<T: Real> Series2<T> {
    pub fn zero(order: usize) -> Self {
        Series2 {
            order,
            coeffs: vec![C::zero(); tri_len(order)],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    /// Builds a series from `(p, q, value)` triples; terms of total degree
    /// above `order` are dropped, repeated indices accumulate.
    pub fn from_terms(order: usize, terms: impl IntoIterator<Item = (usize, usize, C<T>)>) -> Self {
        let mut s = Self::zero(order);
        for (p, q, c) in terms {
            if p + q <= order {
                let i = tri_index(order, p, q);
                s.coeffs[i] = s.coeffs[i] + c;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `t^p z^q`, or `None` past the truncation degree.
    pub fn get(&self, p: usize, q: usize) -> Option<C<T>> {
        (p + q <= self.order).then(|| self.coeffs[tri_index(self.order, p, q)])
    }

    /// Iterates `(p, q, c_{p,q})` in lexicographic `(p, q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, C<T>)> + '_ {
        let m = self.order;
        (0..=m).flat_map(move |p| (0..=m - p).map(move |q| (p, q, self.coeffs[tri_index(m, p, q)])))
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Series2 {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, k: C<T>) -> Self {
        Series2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Product truncated at total degree `M`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let m = self.order;
        let mut out = Self::zero(m);
        for (p1, q1, a) in self.terms() {
            if a.is_zero() {
                continue;
            }
            let budget = m - p1 - q1;
            for p2 in 0..=budget {
                for q2 in 0..=budget - p2 {
                    let b = other.coeffs[tri_index(m, p2, q2)];
                    let i = tri_index(m, p1 + p2, q1 + q2);
                    out.coeffs[i] = out.coeffs[i] + a * b;
                }
            }
        }
        Ok(out)
    }

    /// Logarithm of a series with unit constant term, via
    /// `sum_{k=1}^{M} (-1)^{k+1} (h-1)^k / k`. The sum is exact because
    /// `(h-1)^k` starts at total degree `k`.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if (c0 - C::one()).norm() > T::unit_tol() {
            return Err(Error::ConstantTermNotOne {
                re: c0.re.to_f64().unwrap_or(f64::NAN),
                im: c0.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        let m = self.order;
        let mut u = self.clone();
        u.coeffs[0] = C::zero();
        let mut power = u.clone();
        let mut out = Self::zero(m);
        for k in 1..=m {
            let sign = if k % 2 == 1 { T::one() } else { -T::one() };
            out = out.try_add(&power.scale(cre(sign / T::int(k))))?;
            if k < m {
                power = power.try_mul(&u)?;
            }
        }
        Ok(out)
    }

    /// Swaps the roles of `t` and `z`.
    pub fn transpose(&self) -> Self {
        Self::from_terms(self.order, self.terms().map(|(p, q, c)| (q, p, c)))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let m = self.order.max(other.order);
        let mut d = T::zero();
        for p in 0..=m {
            for q in 0..=m - p {
                let a = self.get(p, q).unwrap_or_else(C::zero);
                let b = other.get(p, q).unwrap_or_else(C::zero);
                d = d.max((a - b).norm());
            }
        }
        d
    }
}

/// The difference quotient `(f(t) - f(z)) / (t - z)` of a normalized `f`,
/// i.e. `sum_n a_n (t^{n-1} + t^{n-2} z + ... + z^{n-1})`, truncated at total
/// degree `f.order() - 1`.
pub fn difference_quotient<T: Real>(f: &Series1<T>) -> Result<Series2<T>> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let m = f.order() - 1;
    let mut out = Series2::zero(m);
    for (n, a) in f.coeffs().iter().enumerate().skip(1) {
        if a.is_zero() {
            continue;
        }
        for p in 0..n {
            let i = tri_index(m, p, n - 1 - p);
            out.coeffs[i] = out.coeffs[i] + a;
        }
    }
    // exact unit constant regardless of rounding in the caller's a_1
    out.coeffs[0] = C::one();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(order: usize, c: &[f64]) -> Series1<f64> {
        Series1::from_real(order, c)
    }

    #[test]
    fn tri_index_is_dense() {
        for m in 0..7 {
            let mut seen = vec![false; tri_len(m)];
            for p in 0..=m {
                for q in 0..=m - p {
                    let i = tri_index(m, p, q);
                    assert!(!seen[i]);
                    seen[i] = true;
                }
            }
            assert!(seen.iter().all(|&x| x));
        }
    }

    #[test]
    fn mul_examples() {
        let a = s(2, &[1.0, 1.0]);
        let b = s(2, &[1.0, -1.0]);
        assert_eq!(a.try_mul(&b).unwrap(), s(2, &[1.0, 0.0, -1.0]));

        let one = Series1::one(4);
        let c = s(4, &[0.3, -1.0, 2.0, 0.5, 7.0]);
        assert_eq!(one.try_mul(&c).unwrap(), c);

        let q = s(2, &[1.0, 1.0, 1.0]);
        assert_eq!(q.try_mul(&q).unwrap(), s(2, &[1.0, 2.0, 3.0]));
    }

    #[test]
    fn mul_order_mismatch() {
        let err = s(2, &[1.0]).try_mul(&s(3, &[1.0])).unwrap_err();
        assert_eq!(err, Error::OrderMismatch { left: 2, right: 3 });
    }

    #[test]
    fn log_examples() {
        assert_eq!(Series1::<f64>::one(5).log().unwrap(), Series1::zero(5));

        let l = s(3, &[1.0, -1.0]).log().unwrap();
        assert!(l.max_abs_diff(&s(3, &[0.0, -1.0, -0.5, -1.0 / 3.0])) < 1e-15);

        let p = s(6, &[1.0, 1.0]);
        let m = s(6, &[1.0, -1.0]);
        let lhs = p.try_mul(&m).unwrap().log().unwrap();
        let rhs = p.log().unwrap().try_add(&m.log().unwrap()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) <= 1e-13);
    }

    #[test]
    fn log_rejects_bad_constant() {
        assert!(matches!(
            s(3, &[2.0, 1.0]).log(),
            Err(Error::ConstantTermNotOne { .. })
        ));
        assert!(s(3, &[1.0 + 1e-15, 1.0]).log().is_ok());
        assert!(s(3, &[1.0 + 1e-12, 1.0]).log().is_err());
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(Series1::<f64>::one(4).sqrt().unwrap(), Series1::one(4));
        let sq = s(2, &[1.0, -2.0, 1.0]).sqrt().unwrap();
        assert!(sq.max_abs_diff(&s(2, &[1.0, -1.0])) < 1e-15);

        // (1-z)^{-2} = sum (k+1) z^k
        let inv_sq = s(3, &[1.0, 2.0, 3.0, 4.0]);
        let r = inv_sq.sqrt().unwrap();
        assert!(r.max_abs_diff(&s(3, &[1.0, 1.0, 1.0, 1.0])) < 1e-15);
        assert!(r.try_mul(&r).unwrap().max_abs_diff(&inv_sq) < 1e-15);

        assert!(s(3, &[0.0, 1.0]).sqrt().is_err());
    }

    #[test]
    fn exp_inverts_log() {
        let a = s(8, &[1.0, 0.5, -0.25, 2.0, 0.0, 1.0, -1.0, 0.3, 0.2]);
        let back = a.log().unwrap().exp().unwrap();
        assert!(back.max_abs_diff(&a) < 1e-12);
        assert!(a.exp().is_err());
    }

    #[test]
    fn s2_log_examples() {
        assert_eq!(Series2::<f64>::one(4).log().unwrap(), Series2::zero(4));

        let h = Series2::from_terms(4, [(0, 0, cre(1.0)), (1, 1, cre(1.0))]);
        let l = h.log().unwrap();
        let want = Series2::from_terms(4, [(1, 1, cre(1.0)), (2, 2, cre(-0.5))]);
        assert!(l.max_abs_diff(&want) < 1e-15);

        let bad = Series2::<f64>::zero(3);
        assert!(bad.log().is_err());
    }

    #[test]
    fn s2_log_of_half_plane_quotient() {
        // f(z) = z/(1-z): the quotient is 1/((1-t)(1-z)), whose log
        // -log(1-t) - log(1-z) has no mixed terms
        let f = s(9, &[0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let w = difference_quotient(&f).unwrap().log().unwrap();
        for (p, q, c) in w.terms() {
            let want = match (p, q) {
                (0, 0) => 0.0,
                (p, 0) => 1.0 / p as f64,
                (0, q) => 1.0 / q as f64,
                _ => 0.0,
            };
            assert!((c - cre(want)).norm() < 1e-14, "({p},{q})");
        }
        assert!(w.max_abs_diff(&w.transpose()) < 1e-15);
    }

    #[test]
    fn difference_quotient_examples() {
        let id = s(5, &[0.0, 1.0]);
        assert_eq!(difference_quotient(&id).unwrap(), Series2::one(4));

        let a2 = 0.7;
        let f = s(3, &[0.0, 1.0, a2]);
        let want = Series2::from_terms(2, [(0, 0, cre(1.0)), (1, 0, cre(a2)), (0, 1, cre(a2))]);
        assert_eq!(difference_quotient(&f).unwrap(), want);

        let koebe = s(6, &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let dq = difference_quotient(&koebe).unwrap();
        assert_eq!(dq.order(), 5);
        assert_eq!(dq.get(1, 1).unwrap(), cre(3.0));
        assert_eq!(dq.get(2, 0).unwrap(), cre(3.0));
        assert_eq!(dq.get(3, 2), Some(cre(6.0)));
        assert_eq!(dq.get(3, 3), None);

        assert_eq!(
            difference_quotient(&s(3, &[0.0, 2.0])).unwrap_err(),
            Error::NotNormalized
        );
    }

    #[test]
    fn substitution_helpers() {
        let a = s(3, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(a.substitute_power(2, 5), s(5, &[1.0, 0.0, 2.0, 0.0, 3.0]));
        assert_eq!(a.shift_up(1, 3), s(3, &[0.0, 1.0, 2.0, 3.0]));
        assert_eq!(a.derivative(), s(3, &[2.0, 6.0, 12.0]));
    }
}
