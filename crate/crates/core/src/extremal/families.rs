use serde::Serialize;

use crate::error::{Error, Result};
use crate::grunsky::{
    standard_probes, verify_identities, CoefficientVector, InequalityWeights, DEFAULT_MAX_DEGREE,
};
use crate::hankel::{hankel2, hankel3};
use crate::scalar::{Real, C};

/// Analytically univalent functions with exact coefficient formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// `z`.
    Identity,
    /// `z / (1 - z^t)^{2/t}`; `t = 1` is the Koebe function itself. Univalent
    /// for every positive `t` as the `t`-th root transform of the Koebe map.
    Koebe,
    /// `z / (1 - z)`, the conformal map onto the half-plane `Re w > -1/2`.
    HalfPlane,
}

/// A family member, rotated as `e^{-i theta} f(e^{i theta} z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMember {
    pub name: String,
    pub kind: FamilyKind,
    pub theta: f64,
    /// Symmetry order `t`; only meaningful for [`FamilyKind::Koebe`].
    pub symmetry: usize,
}

impl FamilyMember {
    pub fn new(kind: FamilyKind, theta: f64, symmetry: usize) -> Self {
        let base = match kind {
            FamilyKind::Identity => "identity".to_string(),
            FamilyKind::HalfPlane => "halfplane".to_string(),
            FamilyKind::Koebe if symmetry == 1 => "koebe".to_string(),
            FamilyKind::Koebe => format!("koebe_t{symmetry}"),
        };
        let name = if theta == 0.0 {
            base
        } else {
            format!("{base}@{theta}")
        };
        FamilyMember {
            name,
            kind,
            theta,
            symmetry: symmetry.max(1),
        }
    }

    /// Looks a family up by the CLI name: `identity`, `koebe` (with `t`) or
    /// `halfplane`.
    pub fn by_name(name: &str, theta: f64, t: usize) -> Result<Self> {
        let kind = match name {
            "identity" => FamilyKind::Identity,
            "koebe" => FamilyKind::Koebe,
            "halfplane" => FamilyKind::HalfPlane,
            _ => return Err(Error::UnknownFamily(name.to_string())),
        };
        if kind == FamilyKind::Koebe && t == 0 {
            return Err(Error::Precondition(
                "symmetry order t must be positive".into(),
            ));
        }
        Ok(Self::new(kind, theta, t))
    }

    /// `a_1..a_n`.
    pub fn coefficients<T: Real>(&self, n: usize) -> CoefficientVector<T> {
        let mut a = vec![C::new(T::zero(), T::zero()); n];
        if n == 0 {
            return CoefficientVector::from_tail([]);
        }
        a[0] = C::new(T::one(), T::zero());
        match self.kind {
            FamilyKind::Identity => {}
            FamilyKind::HalfPlane => {
                for c in a.iter_mut() {
                    *c = C::new(T::one(), T::zero());
                }
            }
            FamilyKind::Koebe => {
                // (1 - w)^{-2/t} = sum_k b_k w^k, b_k = prod_{j<k} (2/t + j)/(j + 1)
                let t = self.symmetry;
                let alpha = T::lit(2.0) / T::int(t);
                let mut b = T::one();
                let mut k = 0;
                while k * t < n {
                    a[k * t] = C::new(b, T::zero());
                    b = b * (alpha + T::int(k)) / T::int(k + 1);
                    k += 1;
                }
            }
        }
        let f = CoefficientVector::from_full(a).expect("a_1 = 1");
        if self.theta == 0.0 {
            f
        } else {
            f.rotate(T::lit(self.theta))
        }
    }
}

/// Sharpness witnesses and standard extremal functions.
pub fn family_catalog() -> Vec<FamilyMember> {
    vec![
        FamilyMember::new(FamilyKind::Identity, 0.0, 1),
        FamilyMember::new(FamilyKind::Koebe, 0.0, 1),
        FamilyMember::new(FamilyKind::Koebe, 0.7, 1),
        FamilyMember::new(FamilyKind::Koebe, std::f64::consts::PI, 1),
        FamilyMember::new(FamilyKind::Koebe, 0.0, 2),
        FamilyMember::new(FamilyKind::Koebe, 0.0, 3),
        FamilyMember::new(FamilyKind::Koebe, 0.4, 3),
        FamilyMember::new(FamilyKind::Koebe, 0.0, 4),
        FamilyMember::new(FamilyKind::HalfPlane, 0.0, 1),
        FamilyMember::new(FamilyKind::HalfPlane, 1.3, 1),
    ]
}

/// Coefficient quantities of one family member.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemberEvaluation {
    pub name: String,
    /// `|a_2|, |a_3|, |a_4|, |a_5|`.
    pub abs_a: [f64; 4],
    pub a4_minus_a3: f64,
    pub h22_abs: f64,
    pub h31_abs: f64,
    /// Largest coefficient-identity residual.
    pub identity_residual: f64,
    /// Smallest gap of the inequality functionals over the standard probes.
    pub min_inequality_gap: f64,
}

pub fn evaluate_member(m: &FamilyMember) -> Result<MemberEvaluation> {
    let f = m.coefficients::<f64>(5);
    let res = verify_identities(&f)?;
    let w = f.odd_grunsky(DEFAULT_MAX_DEGREE)?;
    let e = w.odd_entries()?;
    let mut min_gap = f64::INFINITY;
    for (x1, x3) in standard_probes(e.w11) {
        let x = InequalityWeights::pair(x1, x3);
        min_gap = min_gap
            .min(crate::grunsky::weighted_inequality_gap(&w, &x, 3)?)
            .min(crate::grunsky::bilinear_inequality_gap(&w, &x)?);
    }
    let abs_a = [f.a(2).norm(), f.a(3).norm(), f.a(4).norm(), f.a(5).norm()];
    Ok(MemberEvaluation {
        name: m.name.clone(),
        abs_a,
        a4_minus_a3: abs_a[2] - abs_a[1],
        h22_abs: hankel2(&f).norm(),
        h31_abs: hankel3(&f).norm(),
        identity_residual: res.max_abs(),
        min_inequality_gap: min_gap,
    })
}
