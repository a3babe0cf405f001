//! Internal dynamics `f: R^k -> R^k` available to coupled systems.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{DynamicsError, RealMatrix};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Preset {
    /// `(v, ε(1 - u²)v - u)`: for `ε > 0` the origin repels and a limit
    /// cycle attracts. `ε < 0` gives the time-reversed oscillator.
    Vanderpol { epsilon: f64 },
    /// `(σ(v - u), u(ρ - w) - v, uv - βw)`.
    Lorenz { sigma: f64, rho: f64, beta: f64 },
    /// `(v, -v - u + 1/u)`; undefined on `u = 0`.
    SingularOsc,
    /// `f = 0` on `R^k`.
    Zero { k: usize },
    /// `x - x³` in every component of `R^k`.
    CubicOdd { k: usize },
}

impl Preset {
    pub fn vanderpol(epsilon: f64) -> Self {
        Preset::Vanderpol { epsilon }
    }

    pub fn lorenz() -> Self {
        Preset::Lorenz {
            sigma: 10.0,
            rho: 28.0,
            beta: 8.0 / 3.0,
        }
    }

    /// Builds a preset from its name and positional parameters; missing
    /// parameters take their defaults.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Self, DynamicsError> {
        let get = |i: usize, default: f64| params.get(i).copied().unwrap_or(default);
        let dim = |default: usize| -> Result<usize, DynamicsError> {
            match params.first() {
                None => Ok(default),
                Some(&v) if v >= 1.0 && v.fract() == 0.0 => Ok(v as usize),
                Some(&v) => Err(DynamicsError::InvalidParameter(format!("cell dimension {v}"))),
            }
        };
        let preset = match name.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "vanderpol" | "van_der_pol" | "vdp" => Preset::Vanderpol { epsilon: get(0, 2.0) },
            "lorenz" => Preset::Lorenz {
                sigma: get(0, 10.0),
                rho: get(1, 28.0),
                beta: get(2, 8.0 / 3.0),
            },
            "singular_osc" | "singular" => Preset::SingularOsc,
            "zero" => Preset::Zero { k: dim(1)? },
            "cubic_odd" | "cubic" => Preset::CubicOdd { k: dim(1)? },
            other => return Err(DynamicsError::UnknownPreset(other.to_string())),
        };
        Ok(preset)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Vanderpol { .. } => "vanderpol",
            Preset::Lorenz { .. } => "lorenz",
            Preset::SingularOsc => "singular_osc",
            Preset::Zero { .. } => "zero",
            Preset::CubicOdd { .. } => "cubic_odd",
        }
    }

    /// Cell dimension.
    pub fn k(&self) -> usize {
        match self {
            Preset::Vanderpol { .. } | Preset::SingularOsc => 2,
            Preset::Lorenz { .. } => 3,
            Preset::Zero { k } | Preset::CubicOdd { k } => *k,
        }
    }

    /// `f(-x) = -f(x)` on the domain.
    pub fn is_odd(&self) -> bool {
        !matches!(self, Preset::Lorenz { .. })
    }

    /// `0` is in the domain and `f(0) = 0`.
    pub fn fixes_origin(&self) -> bool {
        !matches!(self, Preset::SingularOsc)
    }

    /// Matrices `N ≠ I` with `f(Nx) = N f(x)`, as recorded for the preset.
    pub fn equivariances(&self) -> Vec<RealMatrix> {
        let minus = RealMatrix::identity(self.k()).scaled(-1.0);
        match self {
            Preset::Lorenz { .. } => vec![RealMatrix::diagonal(&[-1.0, -1.0, 1.0])],
            _ => vec![minus],
        }
    }

    /// Writes `f(x)` into `out`.
    pub fn eval(&self, x: &[f64], out: &mut [f64]) {
        match *self {
            Preset::Vanderpol { epsilon } => {
                let (u, v) = (x[0], x[1]);
                out[0] = v;
                out[1] = epsilon * (1.0 - u * u) * v - u;
            }
            Preset::Lorenz { sigma, rho, beta } => {
                let (u, v, w) = (x[0], x[1], x[2]);
                out[0] = sigma * (v - u);
                out[1] = u * (rho - w) - v;
                out[2] = u * v - beta * w;
            }
            Preset::SingularOsc => {
                let (u, v) = (x[0], x[1]);
                out[0] = v;
                out[1] = -v - u + 1.0 / u;
            }
            Preset::Zero { .. } => out.iter_mut().for_each(|o| *o = 0.0),
            Preset::CubicOdd { .. } => {
                for (o, &xi) in out.iter_mut().zip(x) {
                    *o = xi - xi * xi * xi;
                }
            }
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.k()];
        self.eval(x, &mut out);
        out
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Vanderpol { epsilon } => write!(f, "vanderpol(epsilon={epsilon})"),
            Preset::Lorenz { sigma, rho, beta } => write!(f, "lorenz(sigma={sigma}, rho={rho}, beta={beta})"),
            Preset::SingularOsc => write!(f, "singular_osc"),
            Preset::Zero { k } => write!(f, "zero(k={k})"),
            Preset::CubicOdd { k } => write!(f, "cubic_odd(k={k})"),
        }
    }
}

impl FromStr for Preset {
    type Err = DynamicsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::from_name(s, &[])
    }
}
