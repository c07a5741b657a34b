use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_traits::One;

use super::{Exponents, TruncatedSeries, TruncationProfile, UniPoly, Var};
use crate::error::{Error, Result};

/// `± x^c · ∏ (1 − x^e)^m` with integer multiplicities.
///
/// Products and quotients merge multiplicities, so common numerator and
/// denominator factors cancel before anything is expanded. Equality is
/// equality of the normalized multiset.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactorProduct {
    negative: bool,
    monomial: [i64; 4],
    factors: BTreeMap<Exponents, i64>,
}

impl FactorProduct {
    pub fn one() -> Self {
        FactorProduct::default()
    }

    /// `(1 − x^e)^m`.
    pub fn atom_pow(e: Exponents, m: i64) -> Result<Self> {
        if e == [0; 4] {
            return Err(Error::ZeroFactor);
        }
        let mut f = Self::one();
        f.push(e, m);
        Ok(f)
    }

    /// `(1 − x^e)`.
    pub fn atom(e: Exponents) -> Result<Self> {
        Self::atom_pow(e, 1)
    }

    /// `± x^c`; exponents may be negative.
    pub fn monomial(c: [i64; 4], negative: bool) -> Self {
        FactorProduct {
            negative,
            monomial: c,
            factors: BTreeMap::new(),
        }
    }

    fn push(&mut self, e: Exponents, m: i64) {
        if m == 0 {
            return;
        }
        let entry = self.factors.entry(e).or_insert(0);
        *entry += m;
        if *entry == 0 {
            self.factors.remove(&e);
        }
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.monomial == [0; 4] && self.factors.is_empty()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn monomial_exponents(&self) -> [i64; 4] {
        self.monomial
    }

    /// Atomic factors and their nonzero multiplicities, in key order.
    pub fn factors(&self) -> impl Iterator<Item = (&Exponents, i64)> {
        self.factors.iter().map(|(e, &m)| (e, m))
    }

    pub fn multiplicity(&self, e: &Exponents) -> i64 {
        self.factors.get(e).copied().unwrap_or(0)
    }

    /// Whether any factor has a negative multiplicity.
    pub fn has_denominator(&self) -> bool {
        self.factors.values().any(|&m| m < 0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for v in Var::ALL {
            if self.monomial[v.index()] != 0 || self.factors.keys().any(|e| e[v.index()] > 0) {
                out.insert(v);
            }
        }
        out
    }

    pub fn inv(&self) -> Self {
        FactorProduct {
            negative: self.negative,
            monomial: self.monomial.map(|c| -c),
            factors: self.factors.iter().map(|(e, &m)| (*e, -m)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        FactorProduct {
            negative: self.negative && k % 2 != 0,
            monomial: self.monomial.map(|c| c * k),
            factors: self.factors.iter().map(|(e, &m)| (*e, m * k)).collect(),
        }
    }

    /// Sets `var` to zero: factors involving `var` become 1. Fails when the
    /// monomial prefactor involves `var`.
    pub fn specialize_zero(&self, var: Var) -> Result<Self> {
        if self.monomial[var.index()] != 0 {
            return Err(Error::VanishingSpecialization(var));
        }
        Ok(FactorProduct {
            negative: self.negative,
            monomial: self.monomial,
            factors: self
                .factors
                .iter()
                .filter(|(e, _)| e[var.index()] == 0)
                .map(|(e, &m)| (*e, m))
                .collect(),
        })
    }

    /// Renames `from` to `to`, merging exponents if `to` is already present.
    pub fn rename(&self, from: Var, to: Var) -> Self {
        if from == to {
            return self.clone();
        }
        let mut monomial = self.monomial;
        monomial[to.index()] += monomial[from.index()];
        monomial[from.index()] = 0;
        let mut out = FactorProduct::monomial(monomial, self.negative);
        for (e, &m) in &self.factors {
            let mut k = *e;
            k[to.index()] += k[from.index()];
            k[from.index()] = 0;
            out.push(k, m);
        }
        out
    }

    /// Expands to a truncated series. Factors whose exponent leaves the
    /// truncation box contribute 1.
    pub fn expand(&self, profile: &TruncationProfile) -> Result<TruncatedSeries> {
        if let Some(v) = self.vars().into_iter().find(|v| !profile.contains(*v)) {
            return Err(Error::UnknownVariable(v));
        }
        if let Some(v) = Var::ALL.into_iter().find(|v| self.monomial[v.index()] < 0) {
            return Err(Error::NegativeExponent(v));
        }
        let mono = self.monomial.map(|c| c as u32);
        let sign = if self.negative {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let mut s = TruncatedSeries::monomial(*profile, mono, sign)?;
        if s.is_zero() {
            return Ok(s);
        }
        for (e, &m) in &self.factors {
            s.mul_one_minus_pow(e, m);
        }
        Ok(s)
    }

    /// Certifies that the product is a polynomial in `var` and returns it.
    ///
    /// The numerator and denominator are multiplied out and divided exactly;
    /// a nonzero remainder means the product is a genuine rational function.
    pub fn to_unipoly(&self, var: Var) -> Result<UniPoly> {
        if let Some(v) = self.vars().into_iter().find(|&v| v != var) {
            return Err(Error::UnknownVariable(v));
        }
        let k = var.index();
        let c = self.monomial[k];
        let mut num = UniPoly::monomial(
            c.max(0) as usize,
            if self.negative {
                -BigInt::one()
            } else {
                BigInt::one()
            },
        );
        let mut den = UniPoly::monomial((-c).max(0) as usize, BigInt::one());
        for (e, &m) in &self.factors {
            let atom = UniPoly::one_minus(e[k] as usize);
            for _ in 0..m.unsigned_abs() {
                if m > 0 {
                    num = num.mul(&atom);
                } else {
                    den = den.mul(&atom);
                }
            }
        }
        num.div_exact(&den).map_err(|err| match err {
            Error::NotPolynomial(why) => Error::NotPolynomial(format!("{self}: {why}")),
            other => other,
        })
    }

    /// Value at `L = x` of a product in `L` alone; the denominator must divide out.
    pub fn evaluate_at_integer(&self, x: i64) -> Result<BigInt> {
        Ok(self.to_unipoly(Var::L)?.eval(&BigInt::from(x)))
    }
}

impl Mul<&FactorProduct> for &FactorProduct {
    type Output = FactorProduct;

    fn mul(self, rhs: &FactorProduct) -> FactorProduct {
        let mut out = self.clone();
        out.negative ^= rhs.negative;
        for (a, b) in out.monomial.iter_mut().zip(rhs.monomial) {
            *a += b;
        }
        for (e, &m) in &rhs.factors {
            out.push(*e, m);
        }
        out
    }
}

impl Mul for FactorProduct {
    type Output = FactorProduct;

    fn mul(self, rhs: FactorProduct) -> FactorProduct {
        &self * &rhs
    }
}

impl Div<&FactorProduct> for &FactorProduct {
    type Output = FactorProduct;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &FactorProduct) -> FactorProduct {
        self * &rhs.inv()
    }
}

impl Div for FactorProduct {
    type Output = FactorProduct;

    fn div(self, rhs: FactorProduct) -> FactorProduct {
        &self / &rhs
    }
}

impl std::iter::Product for FactorProduct {
    fn product<I: Iterator<Item = FactorProduct>>(iter: I) -> Self {
        iter.fold(FactorProduct::one(), |acc, f| &acc * &f)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: impl Fn(Var) -> i64) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let k = e(v);
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for FactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        let has_mono = self.monomial != [0; 4];
        if !has_mono && self.factors.is_empty() {
            return f.write_str("1");
        }
        if has_mono {
            write_monomial(f, |v| self.monomial[v.index()])?;
        }
        for (i, (e, &m)) in self.factors.iter().enumerate() {
            if has_mono || i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("(1-")?;
            write_monomial(f, |v| e[v.index()] as i64)?;
            f.write_str(")")?;
            if m != 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// `[n]!_q = ∏_{i=1}^{n} (1 − q^i)`.
pub fn q_factorial(n: u32) -> FactorProduct {
    q_factorial_in(Var::Q, n)
}

/// The q-factorial in an arbitrary variable.
pub fn q_factorial_in(var: Var, n: u32) -> FactorProduct {
    let mut f = FactorProduct::one();
    for i in 1..=n {
        let mut e = [0; 4];
        e[var.index()] = i;
        f.push(e, 1);
    }
    f
}

/// `[GL_n] = ∏_{i=0}^{n−1} (L^n − L^i) = (−1)^n L^{n(n−1)/2} [n]!_L`.
pub fn gl_class(n: u32) -> FactorProduct {
    let mut mono = [0i64; 4];
    mono[Var::L.index()] = (n as i64) * (n as i64 - 1) / 2;
    &FactorProduct::monomial(mono, n % 2 == 1) * &q_factorial_in(Var::L, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::exps;

    fn q(k: u32) -> Exponents {
        exps(&[(Var::Q, k)])
    }

    #[test]
    fn zero_factor_rejected() {
        assert_eq!(FactorProduct::atom([0; 4]), Err(Error::ZeroFactor));
    }

    #[test]
    fn q_factorial_literal() {
        assert!(q_factorial(0).is_one());
        assert_eq!(q_factorial(1), FactorProduct::atom(q(1)).unwrap());
        let expected: FactorProduct = (1..=3)
            .map(|i| FactorProduct::atom(q(i)).unwrap())
            .product();
        assert_eq!(q_factorial(3), expected);
    }

    #[test]
    fn cancellation_is_multiset_subtraction() {
        let f = &q_factorial(4) / &q_factorial(2);
        assert_eq!(f.factors().count(), 2);
        assert_eq!(f.multiplicity(&q(3)), 1);
        assert!((&f / &f).is_one());
    }

    #[test]
    fn expand_simple_products() {
        let p = TruncationProfile::new(&[(Var::Q, 3)]);
        assert_eq!(
            FactorProduct::one().expand(&p).unwrap(),
            TruncatedSeries::one(p)
        );
        let geo = FactorProduct::atom_pow(q(1), -1)
            .unwrap()
            .expand(&p)
            .unwrap();
        assert!((0..=3).all(|k| geo.coeff(&q(k)) == BigInt::one()));

        let p = TruncationProfile::new(&[(Var::Q, 2), (Var::T, 2)]);
        let f = &FactorProduct::atom(exps(&[(Var::T, 1)])).unwrap()
            / &FactorProduct::atom(q(1)).unwrap();
        let got = f.expand(&p).unwrap();
        for k in 0..=2 {
            assert_eq!(got.coeff(&q(k)), BigInt::one());
            assert_eq!(
                got.coeff(&exps(&[(Var::Q, k), (Var::T, 1)])),
                -BigInt::one()
            );
        }
        assert_eq!(got.terms().count(), 6);
    }

    #[test]
    fn expand_rejects_unknown_variables_and_laurent_terms() {
        let p = TruncationProfile::new(&[(Var::Q, 2)]);
        let f = FactorProduct::atom(exps(&[(Var::T, 1)])).unwrap();
        assert_eq!(f.expand(&p), Err(Error::UnknownVariable(Var::T)));
        let m = FactorProduct::monomial([-1, 0, 0, 0], false);
        assert_eq!(m.expand(&p), Err(Error::NegativeExponent(Var::Q)));
    }

    #[test]
    fn gl_classes() {
        assert!(gl_class(0).is_one());
        assert_eq!(
            gl_class(1).to_unipoly(Var::L).unwrap(),
            UniPoly::from_i64(&[-1, 1])
        );
        assert_eq!(gl_class(1).evaluate_at_integer(3).unwrap(), BigInt::from(2));
        assert_eq!(gl_class(2).evaluate_at_integer(2).unwrap(), BigInt::from(6));
        assert_eq!(
            gl_class(3).evaluate_at_integer(2).unwrap(),
            BigInt::from(168)
        );
        assert_eq!(
            FactorProduct::one().evaluate_at_integer(5).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn certification_rejects_rational_functions() {
        let f = FactorProduct::atom_pow(exps(&[(Var::L, 1)]), -1).unwrap();
        assert!(matches!(f.to_unipoly(Var::L), Err(Error::NotPolynomial(_))));
        let g = &q_factorial_in(Var::L, 3) / &q_factorial_in(Var::L, 1);
        assert_eq!(g.to_unipoly(Var::L).unwrap().degree(), Some(5));
    }

    #[test]
    fn t_zero_specialization_drops_t_factors() {
        let t = exps(&[(Var::T, 1)]);
        let qt = exps(&[(Var::Q, 1), (Var::T, 1)]);
        let f = &(&FactorProduct::atom(t).unwrap() * &FactorProduct::atom_pow(qt, -3).unwrap())
            / &FactorProduct::atom(q(2)).unwrap();
        assert_eq!(
            f.specialize_zero(Var::T).unwrap(),
            FactorProduct::atom_pow(q(2), -1).unwrap()
        );
        let m = FactorProduct::monomial([0, 1, 0, 0], false);
        assert_eq!(
            m.specialize_zero(Var::T),
            Err(Error::VanishingSpecialization(Var::T))
        );
    }

    #[test]
    fn display_is_readable() {
        let f = &gl_class(2) / &FactorProduct::atom(exps(&[(Var::Q, 1), (Var::T, 2)])).unwrap();
        assert_eq!(f.to_string(), "L (1-L) (1-L^2) (1-q*t^2)^-1");
    }
}
