use std::path::Path;

use grunskylab::extremal::FamilyMember;
use grunskylab::CoefficientVectorF64;
use num_complex::Complex64;
use serde::Deserialize;

use crate::CliError;

/// Input file: exactly one of an explicit coefficient list `a_2..a_N` (as
/// `[re, im]` pairs) or a family reference.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub coefficients: Option<Vec<[f64; 2]>>,
    pub family: Option<FamilySpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub name: String,
    #[serde(default)]
    pub theta: f64,
    #[serde(default = "one")]
    pub t: usize,
    pub order: Option<usize>,
}

fn one() -> usize {
    1
}

pub enum Source {
    Coefficients(Vec<Complex64>),
    Family(FamilySpec),
}

impl InputSpec {
    pub fn parse(text: &str) -> Result<Source, CliError> {
        let spec: InputSpec =
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("input: {e}")))?;
        match (spec.coefficients, spec.family) {
            (Some(c), None) => {
                if c.iter().flatten().any(|x| !x.is_finite()) {
                    return Err(CliError::Parse("input: non-finite coefficient".into()));
                }
                Ok(Source::Coefficients(
                    c.into_iter()
                        .map(|[re, im]| Complex64::new(re, im))
                        .collect(),
                ))
            }
            (None, Some(f)) => Ok(Source::Family(f)),
            _ => Err(CliError::Parse(
                "input: exactly one of `coefficients` or `family` is required".into(),
            )),
        }
    }

    pub fn read(path: &Path) -> Result<Source, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

impl Source {
    /// Resolves to `a_1..a_N`. Families are expanded through
    /// `order.unwrap_or(default_order)`.
    pub fn resolve(
        self,
        order: Option<usize>,
        default_order: usize,
    ) -> Result<CoefficientVectorF64, CliError> {
        match self {
            Source::Coefficients(c) => Ok(CoefficientVectorF64::from_tail(c)),
            Source::Family(f) => {
                let member = FamilyMember::by_name(&f.name, f.theta, f.t)?;
                let n = order.or(f.order).unwrap_or(default_order);
                Ok(member.coefficients(n))
            }
        }
    }
}
