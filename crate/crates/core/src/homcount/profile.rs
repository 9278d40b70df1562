//! Partial profiles: densities with some pattern vertices held fixed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Mode, Value};
use crate::error::{Error, Result};
use crate::surd::Surd;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "values", rename_all = "snake_case")]
pub enum ProfileValues {
    Exact(Vec<Surd>),
    Float(Vec<f64>),
}

/// A nonnegative function on `V^S`, stored row-major in the order of `s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub s: Vec<usize>,
    pub n: usize,
    pub values: ProfileValues,
}

impl Profile {
    pub fn mode(&self) -> Mode {
        match self.values {
            ProfileValues::Exact(_) => Mode::Exact,
            ProfileValues::Float(_) => Mode::Float,
        }
    }

    pub fn len(&self) -> usize {
        match &self.values {
            ProfileValues::Exact(v) => v.len(),
            ProfileValues::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn index(&self, xs: &[usize]) -> usize {
        assert_eq!(xs.len(), self.s.len(), "one host vertex per profile vertex");
        xs.iter().fold(0, |acc, &x| {
            assert!(x < self.n, "host vertex out of range");
            acc * self.n + x
        })
    }

    /// Value at the host tuple `xs`, listed in the order of `s`.
    pub fn get(&self, xs: &[usize]) -> Value {
        let i = self.index(xs);
        match &self.values {
            ProfileValues::Exact(v) => Value::Exact(v[i].clone()),
            ProfileValues::Float(v) => Value::Float(v[i]),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match &self.values {
            ProfileValues::Exact(v) => v.iter().map(Surd::to_f64).collect(),
            ProfileValues::Float(v) => v.clone(),
        }
    }

    fn normalizer(&self) -> BigRational {
        let d = BigInt::from(self.n).pow(self.s.len() as u32);
        BigRational::new(BigInt::from(1), d)
    }

    /// `∫ p(x_S) dx_S` under the uniform measure.
    pub fn integral(&self) -> Value {
        self.integral_of(|v| v.clone(), |v| v)
    }

    /// `∫ p(x_S)² dx_S`.
    pub fn integral_of_square(&self) -> Value {
        self.integral_of(|v| v.mul(v), |v| v * v)
    }

    fn integral_of(&self, exact: impl Fn(&Surd) -> Surd, float: impl Fn(f64) -> f64) -> Value {
        match &self.values {
            ProfileValues::Exact(v) => {
                let mut s = Surd::zero();
                for x in v {
                    s = s.add(&exact(x));
                }
                Value::Exact(s.scale(&self.normalizer()))
            }
            ProfileValues::Float(v) => {
                let s: f64 = v.iter().map(|&x| float(x)).sum();
                Value::Float(s / (self.n as f64).powi(self.s.len() as i32))
            }
        }
    }

    /// `∫ p_{>t}`: the mass removed by truncating at `t`.
    pub fn tail_mass(&self, t: f64) -> Result<Value> {
        let kept = truncate_profile(self, t)?;
        Ok(match (self.integral(), kept.integral()) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a.sub(&b)),
            (a, b) => Value::Float(a.to_f64() - b.to_f64()),
        })
    }
}

/// Sets every value above `t` to zero; `t = ∞` is the identity. Exact
/// profiles compare against the exact binary value of `t`.
pub fn truncate_profile(p: &Profile, t: f64) -> Result<Profile> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::InvalidArgument(format!("truncation threshold must be positive, got {t}")));
    }
    let values = match &p.values {
        ProfileValues::Float(v) => ProfileValues::Float(v.iter().map(|&x| if x > t { 0.0 } else { x }).collect()),
        ProfileValues::Exact(v) if t.is_infinite() => ProfileValues::Exact(v.clone()),
        ProfileValues::Exact(v) => {
            let tr = Surd::rational(BigRational::from_float(t).expect("finite threshold"));
            ProfileValues::Exact(
                v.iter().map(|x| if *x > tr { Surd::zero() } else { x.clone() }).collect(),
            )
        }
    };
    Ok(Profile { s: p.s.clone(), n: p.n, values })
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(v) => v.is_zero(),
            Value::Float(v) => v.is_zero(),
        }
    }
}
