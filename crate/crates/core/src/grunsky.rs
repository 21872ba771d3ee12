//! Grunsky coefficients of the odd square-root transform and the
//! inequality functionals they satisfy.
//!
//! For a normalized `f(z) = z + a_2 z^2 + ...` the odd transform is
//! `f_2(z) = sqrt(f(z^2)) = z + c_3 z^3 + c_5 z^5 + ...`, and its Grunsky
//! coefficients are read off
//!
//! ```text
//! log((f_2(t) - f_2(z)) / (t - z)) = sum_{p,q >= 0} w_{p,q} t^p z^q.
//! ```
//!
//! Every theorem-level `w_{p,q}` in this crate refers to the matrix of
//! `f_2`, never to that of `f` itself.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
#[cfg(test)]
use crate::scalar::clit;
use crate::scalar::{Real, C};
use crate::series::{difference_quotient, Series1};

/// Total degree needed to expose every entry used by the coefficient
/// identities: all `w_{p,q}` with `p, q` odd and `p + q <= 8`.
pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Coefficients `a_1 = 1, a_2, ..., a_N` of a normalized analytic function.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector<T: Real> {
    coeffs: Vec<C<T>>,
}

impl<T: Real> CoefficientVector<T> {
    /// Builds `f` from `a_2..a_N`.
    pub fn from_tail(tail: impl IntoIterator<Item = C<T>>) -> Self {
        let mut coeffs = vec![C::one()];
        coeffs.extend(tail);
        CoefficientVector { coeffs }
    }

    /// Builds `f` from `a_1..a_N`; `a_1` must equal 1.
    pub fn from_full(coeffs: Vec<C<T>>) -> Result<Self> {
        match coeffs.first() {
            Some(a1) if (*a1 - C::one()).norm() <= T::unit_tol() => {
                let mut coeffs = coeffs;
                coeffs[0] = C::one();
                Ok(CoefficientVector { coeffs })
            }
            _ => Err(Error::NotNormalized),
        }
    }

    /// The identity `f(z) = z`, known through `a_n`.
    pub fn identity(n: usize) -> Self {
        Self::from_tail(std::iter::repeat_n(C::zero(), n.saturating_sub(1)))
    }

    /// Index of the last known coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_n` for `n >= 1`, or `None` if unknown.
    pub fn get(&self, n: usize) -> Option<C<T>> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i).copied())
    }

    /// `a_n`, zero when `n` is past the known range.
    pub fn a(&self, n: usize) -> C<T> {
        self.get(n).unwrap_or_else(C::zero)
    }

    /// `a_1..a_N`.
    pub fn as_slice(&self) -> &[C<T>] {
        &self.coeffs
    }

    /// `f` as a series of order `N`.
    pub fn to_series(&self) -> Series1<T> {
        Series1::new(
            self.degree(),
            std::iter::once(C::zero()).chain(self.coeffs.iter().copied()),
        )
    }

    /// `e^{-i theta} f(e^{i theta} z)`, i.e. `a_n -> a_n e^{i (n-1) theta}`.
    pub fn rotate(&self, theta: T) -> Self {
        CoefficientVector {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a * C::from_polar(T::one(), theta * T::int(k)))
                .collect(),
        }
    }

    fn require(&self, n: usize, what: &'static str) -> Result<()> {
        if self.degree() < n {
            return Err(Error::InsufficientOrder {
                what,
                required: n,
                actual: self.degree(),
            });
        }
        Ok(())
    }

    /// Grunsky matrix of the odd transform at total degree `max_degree`.
    pub fn odd_grunsky(&self, max_degree: usize) -> Result<GrunskyMatrix<T>> {
        // f_2 of order 2K-1 must reach max_degree + 1
        let needed = max_degree / 2 + 1;
        self.require(needed, "odd-transform Grunsky matrix")?;
        grunsky_matrix(&odd_transform(self), max_degree)
    }
}

/// `f_2(z) = sqrt(f(z^2)) = z sqrt(g(z^2))` with `g(w) = f(w)/w`, truncated
/// at degree `2K - 1` when `f` is known through `a_K`. Even coefficients are
/// identically zero.
pub fn odd_transform<T: Real>(f: &CoefficientVector<T>) -> Series1<T> {
    let k = f.degree();
    let g = Series1::new(k - 1, f.as_slice().iter().copied());
    let root = g.sqrt().expect("g(0) = a_1 = 1 by construction");
    root.substitute_power(2, 2 * k - 2).shift_up(1, 2 * k - 1)
}

/// Symmetric array of Grunsky coefficients `w_{p,q}`, `p + q <= M`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrunskyMatrix<T: Real> {
    entries: crate::series::Series2<T>,
}

impl<T: Real> GrunskyMatrix<T> {
    pub fn max_degree(&self) -> usize {
        self.entries.order()
    }

    pub fn get(&self, p: usize, q: usize) -> Option<C<T>> {
        self.entries.get(p, q)
    }

    pub fn entry(&self, p: usize, q: usize) -> Result<C<T>> {
        self.get(p, q).ok_or(Error::MissingEntry {
            p,
            q,
            max_degree: self.max_degree(),
        })
    }

    /// `(p, q, w_{p,q})` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C<T>)> + '_ {
        self.entries.terms()
    }

    /// Largest `|w_{p,q} - w_{q,p}|`.
    pub fn asymmetry(&self) -> T {
        self.entries.max_abs_diff(&self.entries.transpose())
    }

    /// Largest modulus over entries with `p + q` odd.
    pub fn odd_parity_defect(&self) -> T {
        self.entries()
            .filter(|(p, q, _)| (p + q) % 2 == 1)
            .fold(T::zero(), |m, (_, _, c)| m.max(c.norm()))
    }

    /// The five entries the coefficient identities use.
    pub fn odd_entries(&self) -> Result<OddEntries<T>> {
        Ok(OddEntries {
            w11: self.entry(1, 1)?,
            w13: self.entry(1, 3)?,
            w15: self.entry(1, 5)?,
            w33: self.entry(3, 3)?,
            w35: self.entry(3, 5)?,
        })
    }
}

/// Grunsky matrix of a normalized `g` from `log` of its difference quotient.
pub fn grunsky_matrix<T: Real>(g: &Series1<T>, max_degree: usize) -> Result<GrunskyMatrix<T>> {
    if !g.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if g.order() < max_degree + 1 {
        return Err(Error::InsufficientOrder {
            what: "Grunsky matrix (input series order must be max degree + 1)",
            required: max_degree + 1,
            actual: g.order(),
        });
    }
    let dq = difference_quotient(&g.truncate(max_degree + 1))?;
    Ok(GrunskyMatrix { entries: dq.log()? })
}

/// The odd-indexed entries `w_11, w_13, w_15, w_33, w_35` of the odd
/// transform's matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct OddEntries<T: Real> {
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub w11: C<T>,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub w13: C<T>,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub w15: C<T>,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub w33: C<T>,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub w35: C<T>,
}

impl<T: Real> OddEntries<T> {
    /// `a_2..a_5` from the coefficient identities
    ///
    /// ```text
    /// a2 = 2 w11
    /// a3 = 2 w13 + 3 w11^2
    /// a4 = 2 w33 + 8 w11 w13 + 10/3 w11^3
    /// a5 = 2 w35 + 8 w11 w33 + 5 w13^2 + 18 w11^2 w13 + 7/3 w11^4
    /// ```
    pub fn coefficients(&self) -> [C<T>; 4] {
        let OddEntries {
            w11, w13, w33, w35, ..
        } = *self;
        let two = T::lit(2.0);
        let w11_2 = w11 * w11;
        let w11_3 = w11_2 * w11;
        let a2 = w11 * two;
        let a3 = w13 * two + w11_2 * T::lit(3.0);
        let a4 = w33 * two + w11 * w13 * T::lit(8.0) + w11_3 * (T::lit(10.0) / T::lit(3.0));
        let a5 = w35 * two
            + w11 * w33 * T::lit(8.0)
            + w13 * w13 * T::lit(5.0)
            + w11_2 * w13 * T::lit(18.0)
            + w11_3 * w11 * (T::lit(7.0) / T::lit(3.0));
        [a2, a3, a4, a5]
    }

    /// `3 w15 - 3 w11 w13 + w11^3 - 3 w33`, which vanishes identically.
    pub fn constraint(&self) -> C<T> {
        let three = T::lit(3.0);
        self.w15 * three - self.w11 * self.w13 * three + self.w11 * self.w11 * self.w11
            - self.w33 * three
    }

    /// `w33` forced by the vanishing constraint given the other four entries.
    pub fn solve_w33(w11: C<T>, w13: C<T>, w15: C<T>) -> C<T> {
        w15 - w11 * w13 + w11 * w11 * w11 / T::lit(3.0)
    }

    /// Truncated weighted inequality with `x = (x1, x3)`:
    /// `|x1|^2 + |x3|^2/3 - (|w11 x1 + w13 x3|^2 + 3|w13 x1 + w33 x3|^2 + 5|w15 x1 + w35 x3|^2)`.
    pub fn weighted_gap(&self, x1: C<T>, x3: C<T>) -> T {
        let three = T::lit(3.0);
        let lhs = (self.w11 * x1 + self.w13 * x3).norm_sqr()
            + (self.w13 * x1 + self.w33 * x3).norm_sqr() * three
            + (self.w15 * x1 + self.w35 * x3).norm_sqr() * T::lit(5.0);
        x1.norm_sqr() + x3.norm_sqr() / three - lhs
    }

    /// Truncated bilinear inequality with `x = (x1, x3)`:
    /// `|x1|^2 + |x3|^2/3 - |w11 x1^2 + 2 w13 x1 x3 + w33 x3^2|`.
    pub fn bilinear_gap(&self, x1: C<T>, x3: C<T>) -> T {
        let three = T::lit(3.0);
        let form = self.w11 * x1 * x1 + self.w13 * x1 * x3 * T::lit(2.0) + self.w33 * x3 * x3;
        x1.norm_sqr() + x3.norm_sqr() / three - form.norm()
    }

    /// Smallest eigenvalue of `diag(1, 1/3) - A` where `A` is the Hermitian
    /// form behind [`weighted_gap`](Self::weighted_gap). Non-negative iff the
    /// weighted inequality holds for every `(x1, x3)`.
    pub fn weighted_min_gap(&self) -> T {
        let three = T::lit(3.0);
        let five = T::lit(5.0);
        let a11 = self.w11.norm_sqr() + self.w13.norm_sqr() * three + self.w15.norm_sqr() * five;
        let a22 = self.w13.norm_sqr() + self.w33.norm_sqr() * three + self.w35.norm_sqr() * five;
        let a12 = self.w11.conj() * self.w13
            + self.w13.conj() * self.w33 * three
            + self.w15.conj() * self.w35 * five;
        let m11 = T::one() - a11;
        let m22 = T::one() / three - a22;
        let half = T::lit(0.5);
        let mid = (m11 + m22) * half;
        let rad = (((m11 - m22) * half).powi(2) + a12.norm_sqr()).sqrt();
        mid - rad
    }

    /// `1 - sigma_max(S)` with `S = [[w11, sqrt3 w13], [sqrt3 w13, 3 w33]]`:
    /// the bilinear inequality holds for every `(x1, x3)` iff this is
    /// non-negative, because `max |y^T S y|` over unit `y` is the largest
    /// singular value of the complex-symmetric `S`.
    pub fn bilinear_min_gap(&self) -> T {
        let s3 = T::lit(3.0).sqrt();
        let s11 = self.w11;
        let s12 = self.w13 * s3;
        let s22 = self.w33 * T::lit(3.0);
        let fro = s11.norm_sqr() + s12.norm_sqr() * T::lit(2.0) + s22.norm_sqr();
        let det = (s11 * s22 - s12 * s12).norm_sqr();
        let half = fro * T::lit(0.5);
        let disc = (half * half - det).max(T::zero());
        T::one() - (half + disc.sqrt()).sqrt()
    }
}

/// Residuals (left minus right) of the five coefficient identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityResidual<T: Real> {
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub r2: C<T>,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub r3: C<T>,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub r4: C<T>,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub r5: C<T>,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub r0: C<T>,
}

impl<T: Real> IdentityResidual<T> {
    pub fn max_abs(&self) -> T {
        [self.r2, self.r3, self.r4, self.r5, self.r0]
            .iter()
            .fold(T::zero(), |m, r| m.max(r.norm()))
    }

    pub fn holds(&self) -> bool {
        self.max_abs() <= T::identity_tol()
    }
}

/// Checks the coefficient identities on `f`, which must be known through
/// `a_5`. They are formal: any normalized coefficient vector satisfies them,
/// univalent or not.
pub fn verify_identities<T: Real>(f: &CoefficientVector<T>) -> Result<IdentityResidual<T>> {
    f.require(5, "coefficient identities")?;
    let w = f.odd_grunsky(DEFAULT_MAX_DEGREE)?.odd_entries()?;
    let [a2, a3, a4, a5] = w.coefficients();
    Ok(IdentityResidual {
        r2: f.a(2) - a2,
        r3: f.a(3) - a3,
        r4: f.a(4) - a4,
        r5: f.a(5) - a5,
        r0: -w.constraint(),
    })
}

/// Finitely supported weights `x_1, x_3, x_5, ...`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InequalityWeights<T: Real> {
    // sorted by index, odd indices only
    support: Vec<(usize, C<T>)>,
}

impl<T: Real> InequalityWeights<T> {
    /// Builds weights from `(index, x_index)` pairs; indices must be odd.
    /// Repeated indices accumulate.
    pub fn new(pairs: impl IntoIterator<Item = (usize, C<T>)>) -> Result<Self> {
        let mut support: Vec<(usize, C<T>)> = Vec::new();
        for (p, x) in pairs {
            if p % 2 == 0 {
                return Err(Error::EvenWeightIndex(p));
            }
            match support.iter_mut().find(|(q, _)| *q == p) {
                Some(slot) => slot.1 = slot.1 + x,
                None => support.push((p, x)),
            }
        }
        support.sort_by_key(|(p, _)| *p);
        Ok(InequalityWeights { support })
    }

    /// `(x_1, x_3)`.
    pub fn pair(x1: C<T>, x3: C<T>) -> Self {
        Self::new([(1, x1), (3, x3)]).expect("odd indices")
    }

    pub fn x(&self, p: usize) -> C<T> {
        self.support
            .iter()
            .find(|(q, _)| *q == p)
            .map(|(_, x)| *x)
            .unwrap_or_else(C::zero)
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, C<T>)> + '_ {
        self.support.iter().copied().filter(|(_, x)| !x.is_zero())
    }

    /// `sum_p |x_p|^2 / p`.
    pub fn rhs(&self) -> T {
        self.nonzero()
            .fold(T::zero(), |s, (p, x)| s + x.norm_sqr() / T::int(p))
    }

    pub fn scale(&self, k: C<T>) -> Self {
        InequalityWeights {
            support: self.support.iter().map(|&(p, x)| (p, x * k)).collect(),
        }
    }
}

/// `RHS - LHS` of the weighted Grunsky inequality of the odd transform,
/// with the outer sum truncated to the first `q_terms` odd indices
/// `q = 1, 3, ..., 2 q_terms - 1`:
///
/// ```text
/// sum_q q |sum_p w_{p,q} x_p|^2 <= sum_p |x_p|^2 / p
/// ```
///
/// Dropping outer terms only shrinks the left side, so a negative gap on a
/// truncation is a genuine violation while a non-negative one is partial.
pub fn weighted_inequality_gap<T: Real>(
    w: &GrunskyMatrix<T>,
    x: &InequalityWeights<T>,
    q_terms: usize,
) -> Result<T> {
    let mut lhs = T::zero();
    for j in 0..q_terms {
        let q = 2 * j + 1;
        let mut inner: C<T> = C::zero();
        for (p, xp) in x.nonzero() {
            inner = inner + w.entry(p, q)? * xp;
        }
        lhs = lhs + inner.norm_sqr() * T::int(q);
    }
    Ok(x.rhs() - lhs)
}

/// `RHS - |sum_{p,q} w_{p,q} x_p x_q|` of the bilinear Grunsky inequality.
/// Every weight index pair must be stored in `w`.
pub fn bilinear_inequality_gap<T: Real>(
    w: &GrunskyMatrix<T>,
    x: &InequalityWeights<T>,
) -> Result<T> {
    let mut form = C::zero();
    for (p, xp) in x.nonzero() {
        for (q, xq) in x.nonzero() {
            form = form + w.entry(p, q)? * xp * xq;
        }
    }
    Ok(x.rhs() - form.norm())
}

/// Weight vectors used when reporting inequality gaps for an input:
/// `(1, 0)`, `(0, 1)` and `(w11/sqrt6, 1)`.
pub fn standard_probes<T: Real>(w11: C<T>) -> Vec<(C<T>, C<T>)> {
    vec![
        (C::one(), C::zero()),
        (C::zero(), C::one()),
        (w11 / T::lit(6.0).sqrt(), C::one()),
    ]
}

#[cfg(test)]
pub(crate) fn koebe_entries<T: Real>() -> OddEntries<T> {
    OddEntries {
        w11: C::one(),
        w13: C::zero(),
        w15: C::zero(),
        w33: clit(1.0 / 3.0),
        w35: C::zero(),
    }
}
