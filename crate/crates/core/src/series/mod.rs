//! Exact integer arithmetic on truncated multivariate power series and on
//! formal products of factors `(1 − x^e)^m`.

mod factor;
mod poly;
mod truncated;

use std::fmt;

pub use factor::{gl_class, q_factorial, q_factorial_in, FactorProduct};
pub use poly::UniPoly;
pub use truncated::{Difference, TruncatedSeries};

/// The closed alphabet of series variables, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    T,
    S,
    /// The class of the affine line.
    L,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Q, Var::T, Var::S, Var::L];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::T => "t",
            Var::S => "s",
            Var::L => "L",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector indexed by [`Var::index`].
pub type Exponents = [u32; 4];

/// Builds an exponent vector from `(variable, exponent)` pairs.
pub fn exps(pairs: &[(Var, u32)]) -> Exponents {
    let mut e = [0; 4];
    for &(v, k) in pairs {
        e[v.index()] += k;
    }
    e
}

/// Per-variable maximum exponents. Variables without a cap may not appear.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TruncationProfile {
    caps: [Option<u32>; 4],
}

impl TruncationProfile {
    pub fn new(pairs: &[(Var, u32)]) -> Self {
        let mut caps = [None; 4];
        for &(v, c) in pairs {
            caps[v.index()] = Some(c);
        }
        TruncationProfile { caps }
    }

    pub fn with(mut self, var: Var, cap: u32) -> Self {
        self.caps[var.index()] = Some(cap);
        self
    }

    pub fn without(mut self, var: Var) -> Self {
        self.caps[var.index()] = None;
        self
    }

    pub fn cap(&self, var: Var) -> Option<u32> {
        self.caps[var.index()]
    }

    pub fn contains(&self, var: Var) -> bool {
        self.caps[var.index()].is_some()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        Var::ALL.into_iter().filter(|v| self.contains(*v))
    }

    /// Whether every exponent lies within its cap (absent variables must be zero).
    pub fn admits(&self, e: &Exponents) -> bool {
        Var::ALL.iter().all(|&v| match self.cap(v) {
            Some(c) => e[v.index()] <= c,
            None => e[v.index()] == 0,
        })
    }

    /// Number of exponent vectors within the caps.
    pub fn size(&self) -> usize {
        self.caps
            .iter()
            .flatten()
            .map(|&c| c as usize + 1)
            .product()
    }
}
