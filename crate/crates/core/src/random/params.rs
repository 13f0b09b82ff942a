use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The exponents of the four generating distributions.
///
/// `g` (geography clustering) is carried for completeness; only `g = 0`
/// (uniform placement) is supported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentParams {
    pub g: f64,
    /// Node influence: `Pr(q) ~ q^-i`.
    pub i: f64,
    /// Relationship separation: anchor density `~ (E[N] + 1)^-s`.
    pub s: f64,
    /// Data destination: `Pr(r | q) ~ r^-d`.
    pub d: f64,
}

impl ExponentParams {
    pub fn new(i: f64, s: f64, d: f64) -> Result<Self> {
        let p = Self { g: 0.0, i, s, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("g", self.g), ("i", self.i), ("s", self.s), ("d", self.d)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::param(format!("exponent {name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(())
    }

    pub fn require_uniform(&self) -> Result<()> {
        self.validate()?;
        if self.g != 0.0 {
            return Err(Error::NonUniformGeography(self.g));
        }
        Ok(())
    }
}

/// Growth class of the per-session data arrival rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LambdaClass {
    Const,
    SqrtN,
    LinearN,
}

impl LambdaClass {
    pub fn eval(self, n: usize) -> f64 {
        lambda_eval(self, n)
    }

    pub fn name(self) -> &'static str {
        match self {
            LambdaClass::Const => "const",
            LambdaClass::SqrtN => "sqrt",
            LambdaClass::LinearN => "linear",
        }
    }
}

impl std::str::FromStr for LambdaClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "const" | "1" => Ok(LambdaClass::Const),
            "sqrt" | "sqrtn" => Ok(LambdaClass::SqrtN),
            "linear" | "n" | "linearn" => Ok(LambdaClass::LinearN),
            other => Err(Error::param(format!("unknown lambda class {other:?} (const|sqrt|linear)"))),
        }
    }
}

impl std::fmt::Display for LambdaClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub fn lambda_eval(cls: LambdaClass, n: usize) -> f64 {
    match cls {
        LambdaClass::Const => 1.0,
        LambdaClass::SqrtN => (n as f64).sqrt(),
        LambdaClass::LinearN => n as f64,
    }
}
