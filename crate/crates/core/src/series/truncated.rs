use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Exponents, TruncationProfile, UniPoly, Var};
use crate::error::{Error, Result};

/// A power series with integer coefficients, truncated per variable.
///
/// Coefficients live in a dense mixed-radix array over the exponent box
/// allowed by the profile, with `q` the most significant digit, so index
/// order coincides with lexicographic order of exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    profile: TruncationProfile,
    strides: [usize; 4],
    coeffs: Vec<BigInt>,
}

/// First exponent vector at which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub exponents: Exponents,
    pub left: BigInt,
    pub right: BigInt,
}

impl TruncatedSeries {
    pub fn zero(profile: TruncationProfile) -> Self {
        let mut strides = [0usize; 4];
        let mut stride = 1usize;
        for v in Var::ALL.into_iter().rev() {
            if let Some(c) = profile.cap(v) {
                strides[v.index()] = stride;
                stride *= c as usize + 1;
            }
        }
        TruncatedSeries {
            profile,
            strides,
            coeffs: vec![BigInt::zero(); stride],
        }
    }

    pub fn one(profile: TruncationProfile) -> Self {
        Self::constant(profile, BigInt::one())
    }

    pub fn constant(profile: TruncationProfile, c: BigInt) -> Self {
        let mut s = Self::zero(profile);
        s.coeffs[0] = c;
        s
    }

    /// `c · x^e`; zero when `e` exceeds a cap.
    pub fn monomial(profile: TruncationProfile, e: Exponents, c: BigInt) -> Result<Self> {
        check_vars(&profile, &e)?;
        let mut s = Self::zero(profile);
        if let Some(idx) = s.index(&e) {
            s.coeffs[idx] = c;
        }
        Ok(s)
    }

    /// Builds a series from explicit terms; terms beyond the caps are dropped.
    pub fn from_terms<I>(profile: TruncationProfile, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut s = Self::zero(profile);
        for (e, c) in terms {
            check_vars(&profile, &e)?;
            if let Some(idx) = s.index(&e) {
                s.coeffs[idx] += c;
            }
        }
        Ok(s)
    }

    pub fn profile(&self) -> &TruncationProfile {
        &self.profile
    }

    fn index(&self, e: &Exponents) -> Option<usize> {
        if !self.profile.admits(e) {
            return None;
        }
        Some(
            e.iter()
                .zip(&self.strides)
                .map(|(&k, &s)| k as usize * s)
                .sum(),
        )
    }

    fn exponents_at(&self, idx: usize) -> Exponents {
        let mut e = [0u32; 4];
        for v in self.profile.vars() {
            let radix = self.profile.cap(v).unwrap() as usize + 1;
            e[v.index()] = ((idx / self.strides[v.index()]) % radix) as u32;
        }
        e
    }

    pub fn coeff(&self, e: &Exponents) -> BigInt {
        self.index(e)
            .map_or_else(BigInt::zero, |i| self.coeffs[i].clone())
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Nonzero terms in lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exponents_at(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_profile(&self, other: &Self) -> Result<()> {
        if self.profile == other.profile {
            Ok(())
        } else {
            Err(Error::ProfileMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_profile(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_profile(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = -std::mem::take(c);
        }
        out
    }

    pub(crate) fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.same_profile(other)?;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(())
    }

    fn nonzero_entries(&self) -> Vec<(usize, Exponents, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, self.exponents_at(i), c))
            .collect()
    }

    fn fits(&self, a: &Exponents, b: &Exponents) -> bool {
        self.profile
            .vars()
            .all(|v| a[v.index()] + b[v.index()] <= self.profile.cap(v).unwrap())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_profile(other)?;
        let mut out = Self::zero(self.profile);
        let rhs = other.nonzero_entries();
        for (i, ei, a) in self.nonzero_entries() {
            for (j, ej, b) in &rhs {
                if self.fits(&ei, ej) {
                    out.coeffs[i + j] += a * *b;
                }
            }
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`; the divisor's constant term must be ±1.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.same_profile(divisor)?;
        let c0 = divisor.constant_term();
        if c0.abs() != BigInt::one() {
            return Err(Error::NonUnitConstant(c0.to_string()));
        }
        let c0 = c0.clone();
        let tail: Vec<_> = divisor
            .nonzero_entries()
            .into_iter()
            .filter(|(i, _, _)| *i != 0)
            .collect();
        let mut out = Self::zero(self.profile);
        for idx in 0..self.coeffs.len() {
            let ev = self.exponents_at(idx);
            let mut acc = self.coeffs[idx].clone();
            for (j, ew, b) in &tail {
                if ew.iter().zip(&ev).all(|(w, v)| w <= v) {
                    acc -= *b * &out.coeffs[idx - j];
                }
            }
            out.coeffs[idx] = acc * &c0;
        }
        Ok(out)
    }

    /// Multiplies in place by `(1 − x^e)^m` for any integer `m`.
    pub(crate) fn mul_one_minus_pow(&mut self, e: &Exponents, m: i64) {
        let Some(shift) = self.index(e) else {
            return;
        };
        if shift == 0 {
            return;
        }
        let len = self.coeffs.len();
        for _ in 0..m.unsigned_abs() {
            if m > 0 {
                for idx in (shift..len).rev() {
                    if self.dominates(idx, e) {
                        let prev = self.coeffs[idx - shift].clone();
                        self.coeffs[idx] -= prev;
                    }
                }
            } else {
                for idx in shift..len {
                    if self.dominates(idx, e) {
                        let prev = self.coeffs[idx - shift].clone();
                        self.coeffs[idx] += prev;
                    }
                }
            }
        }
    }

    fn dominates(&self, idx: usize, e: &Exponents) -> bool {
        let ev = self.exponents_at(idx);
        ev.iter().zip(e).all(|(v, w)| v >= w)
    }

    /// Multiplies by `sign · x^e`, dropping terms pushed past the caps.
    pub fn shift(&self, e: &Exponents, negate: bool) -> Result<Self> {
        check_vars(&self.profile, e)?;
        let mut out = Self::zero(self.profile);
        for (i, ei, c) in self.nonzero_entries() {
            if self.fits(&ei, e) {
                let j = i + e
                    .iter()
                    .zip(&self.strides)
                    .map(|(&k, &s)| k as usize * s)
                    .sum::<usize>();
                out.coeffs[j] = if negate { -c.clone() } else { c.clone() };
            }
        }
        Ok(out)
    }

    /// Renames `from` to `to`; `to` must not already be in the profile.
    pub fn rename(&self, from: Var, to: Var) -> Result<Self> {
        if from == to {
            return Ok(self.clone());
        }
        let cap = self.profile.cap(from).ok_or(Error::UnknownVariable(from))?;
        if self.profile.contains(to) {
            return Err(Error::ProfileMismatch);
        }
        let profile = self.profile.without(from).with(to, cap);
        let terms = self.terms().map(|(mut e, c)| {
            e.swap(from.index(), to.index());
            (e, c.clone())
        });
        Self::from_terms(profile, terms.collect::<Vec<_>>())
    }

    /// The coefficient of `var^k`, as a series in the remaining variables.
    pub fn coefficient_of(&self, var: Var, k: u32) -> Result<Self> {
        if !self.profile.contains(var) {
            return Err(Error::UnknownVariable(var));
        }
        let profile = self.profile.without(var);
        let terms = self
            .terms()
            .filter(|(e, _)| e[var.index()] == k)
            .map(|(mut e, c)| {
                e[var.index()] = 0;
                (e, c.clone())
            });
        Self::from_terms(profile, terms.collect::<Vec<_>>())
    }

    /// Reads a series in `var` alone as a polynomial.
    pub fn to_unipoly(&self, var: Var) -> Result<UniPoly> {
        if let Some(other) = self.profile.vars().find(|&v| v != var) {
            return Err(Error::UnknownVariable(other));
        }
        let mut coeffs = vec![BigInt::zero(); self.profile.cap(var).map_or(1, |c| c as usize + 1)];
        for (e, c) in self.terms() {
            coeffs[e[var.index()] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    /// The first (lexicographic) exponent vector where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<Difference>> {
        self.same_profile(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
            .map(|i| Difference {
                exponents: self.exponents_at(i),
                left: self.coeffs[i].clone(),
                right: other.coeffs[i].clone(),
            }))
    }
}

fn check_vars(profile: &TruncationProfile, e: &Exponents) -> Result<()> {
    match Var::ALL
        .into_iter()
        .find(|v| e[v.index()] > 0 && !profile.contains(*v))
    {
        Some(v) => Err(Error::UnknownVariable(v)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::exps;

    fn q_profile(cap: u32) -> TruncationProfile {
        TruncationProfile::new(&[(Var::Q, cap)])
    }

    fn poly(profile: TruncationProfile, terms: &[(Exponents, i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(profile, terms.iter().map(|(e, c)| (*e, BigInt::from(*c))))
            .unwrap()
    }

    fn q(k: u32) -> Exponents {
        exps(&[(Var::Q, k)])
    }

    #[test]
    fn difference_of_squares() {
        let p = q_profile(2);
        let a = poly(p, &[(q(0), 1), (q(1), 1)]);
        let b = poly(p, &[(q(0), 1), (q(1), -1)]);
        assert_eq!(a.mul(&b).unwrap(), poly(p, &[(q(0), 1), (q(2), -1)]));
        assert_eq!(a.add(&TruncatedSeries::zero(p)).unwrap(), a);
    }

    #[test]
    fn mixed_product_coefficient() {
        let p = TruncationProfile::new(&[(Var::Q, 3), (Var::T, 3)]);
        let a = poly(p, &[(q(0), 1), (q(1), 1), (q(2), 1)]);
        let b = poly(p, &[(q(0), 1), (exps(&[(Var::T, 1)]), 1)]);
        let prod = a.mul(&b).unwrap();
        assert_eq!(
            prod.coeff(&exps(&[(Var::Q, 1), (Var::T, 1)])),
            BigInt::from(1)
        );
    }

    #[test]
    fn geometric_series() {
        let p = q_profile(4);
        let one = TruncatedSeries::one(p);
        let d = poly(p, &[(q(0), 1), (q(1), -1)]);
        let expected = poly(p, &[(q(0), 1), (q(1), 1), (q(2), 1), (q(3), 1), (q(4), 1)]);
        assert_eq!(one.div(&d).unwrap(), expected);

        let p = q_profile(3);
        let num = poly(p, &[(q(0), 1), (q(2), -1)]);
        let den = poly(p, &[(q(0), 1), (q(1), -1)]);
        assert_eq!(num.div(&den).unwrap(), poly(p, &[(q(0), 1), (q(1), 1)]));
    }

    #[test]
    fn rational_in_three_variables() {
        let p = TruncationProfile::new(&[(Var::Q, 2), (Var::T, 2), (Var::S, 2)]);
        let tsq = exps(&[(Var::T, 1), (Var::S, 1), (Var::Q, 1)]);
        let sq = exps(&[(Var::S, 1), (Var::Q, 1)]);
        let s2q2 = exps(&[(Var::S, 2), (Var::Q, 2)]);
        let ts2q2 = exps(&[(Var::T, 1), (Var::S, 2), (Var::Q, 2)]);
        let num = poly(p, &[([0; 4], 1), (tsq, -1)]);
        let den = poly(p, &[([0; 4], 1), (sq, -1)]);
        let expected = poly(
            p,
            &[([0; 4], 1), (sq, 1), (tsq, -1), (s2q2, 1), (ts2q2, -1)],
        );
        assert_eq!(num.div(&den).unwrap(), expected);
    }

    #[test]
    fn division_requires_unit_constant() {
        let p = q_profile(2);
        let a = TruncatedSeries::one(p);
        let b = poly(p, &[(q(0), 2), (q(1), 1)]);
        assert!(matches!(a.div(&b), Err(Error::NonUnitConstant(_))));
        let z = poly(p, &[(q(1), 1)]);
        assert!(matches!(a.div(&z), Err(Error::NonUnitConstant(_))));
    }

    #[test]
    fn profile_mismatch_is_an_error() {
        let a = TruncatedSeries::one(q_profile(2));
        let b = TruncatedSeries::one(q_profile(3));
        assert_eq!(a.add(&b), Err(Error::ProfileMismatch));
        assert_eq!(a.mul(&b), Err(Error::ProfileMismatch));
    }

    #[test]
    fn unknown_variable_in_monomial() {
        let r = TruncatedSeries::monomial(q_profile(2), exps(&[(Var::T, 1)]), BigInt::one());
        assert_eq!(r, Err(Error::UnknownVariable(Var::T)));
    }

    #[test]
    fn in_place_factor_matches_division() {
        let p = TruncationProfile::new(&[(Var::Q, 4), (Var::T, 3)]);
        let e = exps(&[(Var::Q, 1), (Var::T, 1)]);
        let mut s = TruncatedSeries::one(p);
        s.mul_one_minus_pow(&e, -2);
        let base = poly(p, &[([0; 4], 1), (e, -1)]);
        let expected = TruncatedSeries::one(p)
            .div(&base.mul(&base).unwrap())
            .unwrap();
        assert_eq!(s, expected);
        s.mul_one_minus_pow(&e, 2);
        assert_eq!(s, TruncatedSeries::one(p));
    }

    #[test]
    fn coefficient_extraction_and_rename() {
        let p = TruncationProfile::new(&[(Var::Q, 2), (Var::T, 2)]);
        let s = poly(p, &[(q(1), 3), (exps(&[(Var::Q, 2), (Var::T, 1)]), 5)]);
        let c = s.coefficient_of(Var::T, 1).unwrap();
        assert_eq!(c, poly(q_profile(2), &[(q(2), 5)]));
        let r = c.rename(Var::Q, Var::L).unwrap();
        assert_eq!(r.coeff(&exps(&[(Var::L, 2)])), BigInt::from(5));
        assert_eq!(r.to_unipoly(Var::L).unwrap().coeffs()[2], BigInt::from(5));
    }

    #[test]
    fn first_difference_reports_lexicographic_first() {
        let p = q_profile(3);
        let a = poly(p, &[(q(1), 1), (q(3), 2)]);
        let b = poly(p, &[(q(1), 1), (q(2), 1), (q(3), 4)]);
        let d = a.first_difference(&b).unwrap().unwrap();
        assert_eq!(d.exponents, q(2));
        assert_eq!((d.left, d.right), (BigInt::zero(), BigInt::one()));
        assert!(a.first_difference(&a).unwrap().is_none());
    }
}
