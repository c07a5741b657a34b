//! The two-parameter weight `F_π(q, t)` and both sides of the generalized
//! MacMahon identity
//!
//! ```text
//! Σ_π F_π(q,t) s^{|π|} = ∏_{n≥1} ∏_{k≥0} ((1 − t s^n q^k) / (1 − s^n q^k))^n
//! ```

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{plane_partitions_up_to, PlanePartition, YoungDiagram};
use crate::series::{exps, FactorProduct, TruncatedSeries, TruncationProfile, Var};

/// `f(n, m) = ∏_{i=0}^{n−1} (1 − q^i t^{m+1}) / (1 − q^{i+1} t^m)`, and 1 for `n = 0`.
pub fn little_f(n: u32, m: u32) -> FactorProduct {
    let mut f = FactorProduct::one();
    for i in 0..n {
        let num = FactorProduct::atom(exps(&[(Var::Q, i), (Var::T, m + 1)]))
            .expect("t exponent is positive");
        let den = FactorProduct::atom(exps(&[(Var::Q, i + 1), (Var::T, m)]))
            .expect("q exponent is positive");
        f = &(&f * &num) / &den;
    }
    f
}

/// The weight attached to one box of a plane partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxWeight {
    pub cell: (usize, usize),
    pub factor: FactorProduct,
}

fn part(y: &YoungDiagram, k: usize) -> u32 {
    // 1-based, as in λ_1 ≥ λ_2 ≥ …
    y.row(k - 1)
}

fn box_term(
    lambda: &YoungDiagram,
    mu: &YoungDiagram,
    nu: &YoungDiagram,
    m: usize,
) -> FactorProduct {
    let l1 = part(lambda, 1);
    let mm = m as u32;
    let num = &little_f(l1 - part(mu, m + 1), mm) * &little_f(l1 - part(nu, m + 1), mm);
    let den = &little_f(l1 - part(lambda, m + 1), mm) * &little_f(l1 - part(lambda, m + 2), mm);
    &num / &den
}

/// `F_π(i, j) = ∏_{m≥0} f(λ₁−μ_{m+1}, m) f(λ₁−ν_{m+1}, m) / (f(λ₁−λ_{m+1}, m) f(λ₁−λ_{m+2}, m))`.
///
/// The product stops at `m = max(len λ, len μ, len ν)`; past that point the
/// four factors coincide. The next term is checked to be 1.
pub fn box_weight(pi: &PlanePartition, i: usize, j: usize) -> Result<BoxWeight> {
    let (lambda, mu, nu) = pi.diagonal_partitions(i, j)?;
    let m_max = lambda.len().max(mu.len()).max(nu.len());
    let factor: FactorProduct = (0..m_max).map(|m| box_term(&lambda, &mu, &nu, m)).product();
    if !box_term(&lambda, &mu, &nu, m_max).is_one() {
        return Err(Error::Internal(format!(
            "m-product for box ({i}, {j}) of {pi} does not terminate at {m_max}"
        )));
    }
    Ok(BoxWeight {
        cell: (i, j),
        factor,
    })
}

/// `F_π(q, t)`, the product of all box weights.
pub fn weight(pi: &PlanePartition) -> FactorProduct {
    pi.support()
        .map(|(i, j)| {
            box_weight(pi, i, j)
                .expect("support boxes are valid")
                .factor
        })
        .product()
}

/// `F_π(q, 0)`.
pub fn weight_at_t0(pi: &PlanePartition) -> FactorProduct {
    weight(pi)
        .specialize_zero(Var::T)
        .expect("the weight has no monomial prefactor")
}

fn require(profile: &TruncationProfile, vars: &[Var]) -> Result<()> {
    match vars.iter().find(|v| !profile.contains(**v)) {
        Some(v) => Err(Error::UnknownVariable(*v)),
        None => Ok(()),
    }
}

/// `Σ_{|π| ≤ N} F_π(q, t) s^{|π|}` with `N` the `s` cap of the profile.
pub fn lhs(profile: &TruncationProfile) -> Result<TruncatedSeries> {
    require(profile, &[Var::Q, Var::T, Var::S])?;
    let n = profile.cap(Var::S).unwrap();
    let parts = plane_partitions_up_to(n, None);
    let terms = parts
        .par_iter()
        .map(|pi| {
            let shift = FactorProduct::monomial([0, 0, pi.weight() as i64, 0], false);
            (&weight(pi) * &shift).expand(profile)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = TruncatedSeries::zero(*profile);
    for t in &terms {
        total.add_assign(t)?;
    }
    Ok(total)
}

/// The right-hand product restricted to `1 ≤ n ≤ s_order`, `0 ≤ k ≤ q_order`.
/// Factors outside that range are 1 modulo the corresponding caps.
pub fn rhs_factors(s_order: u32, q_order: u32) -> FactorProduct {
    let mut f = FactorProduct::one();
    for n in 1..=s_order {
        for k in 0..=q_order {
            let num =
                FactorProduct::atom_pow(exps(&[(Var::T, 1), (Var::S, n), (Var::Q, k)]), n as i64)
                    .expect("nonzero exponent");
            let den = FactorProduct::atom_pow(exps(&[(Var::S, n), (Var::Q, k)]), n as i64)
                .expect("nonzero exponent");
            f = &(&f * &num) / &den;
        }
    }
    f
}

/// The right-hand product expanded under the profile's caps.
pub fn rhs(profile: &TruncationProfile) -> Result<TruncatedSeries> {
    require(profile, &[Var::Q, Var::T, Var::S])?;
    rhs_factors(profile.cap(Var::S).unwrap(), profile.cap(Var::Q).unwrap()).expand(profile)
}

/// `∏_{k=1}^{N} (1 − s^k)^{−k}`, the MacMahon product through `s^N`.
pub fn macmahon_factors(s_order: u32) -> FactorProduct {
    (1..=s_order)
        .map(|k| FactorProduct::atom_pow(exps(&[(Var::S, k)]), -(k as i64)).expect("k ≥ 1"))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::plane_partitions;
    use num_bigint::BigInt;

    fn pp(s: &str) -> PlanePartition {
        s.parse().unwrap()
    }

    fn atom(pairs: &[(Var, u32)], m: i64) -> FactorProduct {
        FactorProduct::atom_pow(exps(pairs), m).unwrap()
    }

    fn single_box() -> FactorProduct {
        &atom(&[(Var::T, 1)], 1) * &atom(&[(Var::Q, 1)], -1)
    }

    #[test]
    fn little_f_examples() {
        assert!(little_f(0, 5).is_one());
        assert_eq!(little_f(1, 0), single_box());
        let expected: FactorProduct = [
            atom(&[(Var::T, 2)], 1),
            atom(&[(Var::Q, 1), (Var::T, 2)], 1),
            atom(&[(Var::Q, 1), (Var::T, 1)], -1),
            atom(&[(Var::Q, 2), (Var::T, 1)], -1),
        ]
        .into_iter()
        .product();
        assert_eq!(little_f(2, 1), expected);
    }

    #[test]
    fn box_weight_examples() {
        assert_eq!(box_weight(&pp("[[1]]"), 0, 0).unwrap().factor, single_box());
        assert_eq!(
            box_weight(&pp("[[1,1]]"), 0, 1).unwrap().factor,
            single_box()
        );
        assert_eq!(
            box_weight(&pp("[[1]]"), 1, 0),
            Err(Error::BoxOutsideSupport(1, 0))
        );
        // λ = ν = (1), μ = ∅: numerator and denominator pair off
        assert!(box_weight(&pp("[[1,1]]"), 0, 0).unwrap().factor.is_one());
    }

    #[test]
    fn weight_examples() {
        assert!(weight(&PlanePartition::empty()).is_one());
        assert_eq!(weight(&pp("[[1]]")), single_box());
        assert!(weight_at_t0(&PlanePartition::empty()).is_one());
        assert_eq!(weight_at_t0(&pp("[[1]]")), atom(&[(Var::Q, 1)], -1));
        // box (0,0) has λ = ν = (1), μ = ∅ and cancels; box (0,1) is a lone box
        assert_eq!(weight_at_t0(&pp("[[1,1]]")), atom(&[(Var::Q, 1)], -1));
    }

    #[test]
    fn weight_is_one_at_the_origin() {
        let p = TruncationProfile::new(&[(Var::Q, 2), (Var::T, 2)]);
        for n in 0..=5 {
            for pi in plane_partitions(n, None) {
                assert_eq!(
                    *weight(&pi).expand(&p).unwrap().constant_term(),
                    BigInt::from(1)
                );
            }
        }
    }

    #[test]
    fn t_zero_reduces_f_to_inverse_factorials() {
        for n in 0..=5 {
            for m in 0..=3 {
                let got = little_f(n, m).specialize_zero(Var::T).unwrap();
                let expected = if m == 0 {
                    crate::series::q_factorial(n).inv()
                } else {
                    FactorProduct::one()
                };
                assert_eq!(got, expected, "f({n},{m}) at t=0");
            }
        }
    }

    #[test]
    fn transpose_symmetry() {
        for pi in plane_partitions_up_to(6, None) {
            assert_eq!(weight(&pi.transpose()), weight(&pi), "{pi}");
        }
    }

    #[test]
    fn rhs_at_t_zero_is_the_plain_product() {
        let f = rhs_factors(3, 3).specialize_zero(Var::T).unwrap();
        let expected: FactorProduct = (1..=3)
            .flat_map(|n| (0..=3).map(move |k| atom(&[(Var::S, n), (Var::Q, k)], -(n as i64))))
            .product();
        assert_eq!(f, expected);
    }

    #[test]
    fn rhs_at_q_t_zero_gives_macmahon_numbers() {
        let f = rhs_factors(6, 6)
            .specialize_zero(Var::T)
            .unwrap()
            .specialize_zero(Var::Q)
            .unwrap();
        let s = f.expand(&TruncationProfile::new(&[(Var::S, 6)])).unwrap();
        let got: Vec<BigInt> = (0..=6).map(|k| s.coeff(&exps(&[(Var::S, k)]))).collect();
        let expected: Vec<BigInt> = [1, 1, 3, 6, 13, 24, 48]
            .into_iter()
            .map(BigInt::from)
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn low_order_coefficients() {
        let p = TruncationProfile::new(&[(Var::Q, 3), (Var::T, 3), (Var::S, 1)]);
        let l = lhs(&p).unwrap();
        assert_eq!(
            l.coefficient_of(Var::S, 0).unwrap(),
            TruncatedSeries::one(p.without(Var::S))
        );
        let expected = single_box().expand(&p.without(Var::S)).unwrap();
        assert_eq!(l.coefficient_of(Var::S, 1).unwrap(), expected);
    }

    #[test]
    fn identity_at_small_caps() {
        let p = TruncationProfile::new(&[(Var::Q, 4), (Var::T, 4), (Var::S, 4)]);
        assert_eq!(lhs(&p).unwrap(), rhs(&p).unwrap());
    }

    #[test]
    fn missing_variable_is_rejected() {
        let p = TruncationProfile::new(&[(Var::Q, 2), (Var::S, 2)]);
        assert_eq!(lhs(&p), Err(Error::UnknownVariable(Var::T)));
    }
}
