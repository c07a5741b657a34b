//! Classes in the Grothendieck ring of varieties, written in `L`, for the
//! torus-fixed components of framed moduli of sheaves on the plane and for
//! the quiver varieties used to build them; plus the identities they satisfy.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{plane_partitions, plane_partitions_up_to, PlanePartition, YoungDiagram};
use crate::series::{
    exps, gl_class, q_factorial_in, Difference, FactorProduct, TruncatedSeries, TruncationProfile,
    UniPoly, Var,
};
use crate::torus::d_plus_formula;
use crate::vuletic;

/// Framing rank; the infinite rank is the stable limit, not a large number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rank {
    Finite(u32),
    Infinite,
}

impl Rank {
    pub fn admits(self, pi: &PlanePartition) -> bool {
        match self {
            Rank::Finite(r) => pi.corner() <= r,
            Rank::Infinite => true,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(r) => write!(f, "{r}"),
            Rank::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Rank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Rank::Infinite),
            _ => s
                .parse::<u32>()
                .ok()
                .filter(|&r| r >= 1)
                .map(Rank::Finite)
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "rank must be a positive integer or 'inf', got {s:?}"
                    ))
                }),
        }
    }
}

/// A class in `L`, kept in factored form. Finite classes also carry the
/// polynomial obtained by exact division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotivicClass {
    value: FactorProduct,
    polynomial: Option<UniPoly>,
}

impl MotivicClass {
    fn certified(value: FactorProduct) -> Result<Self> {
        let polynomial = value.to_unipoly(Var::L)?;
        Ok(MotivicClass {
            value,
            polynomial: Some(polynomial),
        })
    }

    fn series(value: FactorProduct) -> Self {
        MotivicClass {
            value,
            polynomial: None,
        }
    }

    pub fn factors(&self) -> &FactorProduct {
        &self.value
    }

    /// The certified polynomial, present for finite classes.
    pub fn polynomial(&self) -> Option<&UniPoly> {
        self.polynomial.as_ref()
    }

    pub fn expand(&self, l_order: u32) -> Result<TruncatedSeries> {
        self.value
            .expand(&TruncationProfile::new(&[(Var::L, l_order)]))
    }

    /// Point count over the field with `p` elements.
    pub fn evaluate(&self, p: i64) -> Result<BigInt> {
        match &self.polynomial {
            Some(poly) => Ok(poly.eval(&BigInt::from(p))),
            None => self.value.evaluate_at_integer(p),
        }
    }
}

fn lfact(n: u32) -> FactorProduct {
    q_factorial_in(Var::L, n)
}

/// `∏_{i,j} [π_{i,j} − π_{i+1,j+1}]! / ([π_{i,j} − π_{i+1,j}]! [π_{i,j} − π_{i,j+1}]!)` in `var`.
fn diagonal_product(pi: &PlanePartition, var: Var) -> FactorProduct {
    pi.support()
        .map(|(i, j)| {
            let v = pi.get(i, j);
            let num = q_factorial_in(var, v - pi.get(i + 1, j + 1));
            let den = &q_factorial_in(var, v - pi.get(i + 1, j))
                * &q_factorial_in(var, v - pi.get(i, j + 1));
            &num / &den
        })
        .product()
}

fn falling_prefactor(r: u32, corner: u32, var: Var) -> FactorProduct {
    &q_factorial_in(var, r) / &q_factorial_in(var, r - corner)
}

/// Class of the fixed component `M^T_{r,n}(π)`:
/// `[r]! / [r − π_{0,0}]! · ∏ [π_{i,j} − π_{i+1,j+1}]! / ([π_{i,j} − π_{i+1,j}]! [π_{i,j} − π_{i,j+1}]!)`.
pub fn class_fixed_component(r: u32, pi: &PlanePartition) -> Result<MotivicClass> {
    if pi.corner() > r {
        return Err(Error::CornerExceedsRank {
            corner: pi.corner(),
            rank: r,
        });
    }
    MotivicClass::certified(
        &falling_prefactor(r, pi.corner(), Var::L) * &diagonal_product(pi, Var::L),
    )
}

/// The stable class as `r → ∞`, a power series in `L`.
pub fn limit_class(pi: &PlanePartition) -> MotivicClass {
    MotivicClass::series(diagonal_product(pi, Var::L))
}

/// Class of the variety of chains of surjections `N_{μ,ν,h}` (independent of `h`):
///
/// ```text
/// [μ₁]! [GL_{ν₁}] / ([ν₁]! [μ₁−ν₁]!) · ∏_{i<k} [μ_i−ν_{i+1}]! [GL_{μ_{i+1}}] / ([μ_i−μ_{i+1}]! [μ_{i+1}−ν_{i+1}]!)
/// ```
///
/// `ν` is padded with zeros to the length of `μ`.
pub fn class_surjective_chain(mu: &YoungDiagram, nu: &YoungDiagram) -> Result<MotivicClass> {
    let k = mu.len();
    if k == 0 {
        return Err(Error::InvalidChain("μ must have at least one part".into()));
    }
    if nu.len() > k {
        return Err(Error::InvalidChain(format!(
            "ν = {nu} is longer than μ = {mu}"
        )));
    }
    if let Some(i) = (0..k).find(|&i| mu.row(i) < nu.row(i)) {
        return Err(Error::InvalidChain(format!(
            "μ_{0} = {1} < ν_{0} = {2}",
            i + 1,
            mu.row(i),
            nu.row(i)
        )));
    }
    let (m1, n1) = (mu.row(0), nu.row(0));
    let mut value = &(&lfact(m1) * &gl_class(n1)) / &(&lfact(n1) * &lfact(m1 - n1));
    for i in 0..k - 1 {
        let (mi, mn, nn) = (mu.row(i), mu.row(i + 1), nu.row(i + 1));
        let num = &lfact(mi - nn) * &gl_class(mn);
        let den = &lfact(mi - mn) * &lfact(mn - nn);
        value = &value * &(&num / &den);
    }
    MotivicClass::certified(value)
}

/// Class of `N(π)`, the commuting grids of surjections:
/// `[π_{0,0}]! / [GL_{π_{0,0}}] · ∏ [π_{i,j}−π_{i+1,j+1}]! [GL_{π_{i,j}}] / ([π_{i,j}−π_{i+1,j}]! [π_{i,j}−π_{i,j+1}]!)`.
pub fn class_grid(pi: &PlanePartition) -> Result<MotivicClass> {
    let c = pi.corner();
    let gl: FactorProduct = pi.support().map(|(i, j)| gl_class(pi.get(i, j))).product();
    let value = &(&(&lfact(c) / &gl_class(c)) * &diagonal_product(pi, Var::L)) * &gl;
    MotivicClass::certified(value)
}

/// `[N(π)] · [surjections C^r → C^{π_{0,0}}] / ∏ [GL_{π_{i,j}}]`, the quotient
/// description of the fixed component; equal to [`class_fixed_component`].
pub fn fixed_component_from_grid(r: u32, pi: &PlanePartition) -> Result<FactorProduct> {
    let c = pi.corner();
    if c > r {
        return Err(Error::CornerExceedsRank { corner: c, rank: r });
    }
    let surj = if r == 0 {
        FactorProduct::one()
    } else {
        class_surjective_chain(
            &YoungDiagram::new(vec![r]).expect("single row"),
            &YoungDiagram::new(vec![c]).expect("single row"),
        )?
        .factors()
        .clone()
    };
    let gl: FactorProduct = pi.support().map(|(i, j)| gl_class(pi.get(i, j))).product();
    Ok(&(class_grid(pi)?.factors() * &surj) / &gl)
}

/// `∏_{m=1}^{r} ∏_{k=1}^{n} (1 − L^{rk+m} t^k)^{-1}`.
fn moduli_generating_factors(r: u32, t_order: u32) -> FactorProduct {
    (1..=r)
        .flat_map(|m| (1..=t_order).map(move |k| (m, k)))
        .map(|(m, k)| {
            FactorProduct::atom_pow(exps(&[(Var::L, r * k + m), (Var::T, k)]), -1).expect("nonzero")
        })
        .product()
}

/// `[M_{r,n}]`, read off the known generating product; degree `2rn`.
pub fn class_moduli(r: u32, n: u32) -> Result<UniPoly> {
    let profile = TruncationProfile::new(&[(Var::L, 2 * r * n), (Var::T, n)]);
    moduli_generating_factors(r, n)
        .expand(&profile)?
        .coefficient_of(Var::T, n)?
        .to_unipoly(Var::L)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BbReport {
    pub r: u32,
    pub n: u32,
    pub components: usize,
    pub lhs: UniPoly,
    pub rhs: UniPoly,
}

impl BbReport {
    pub fn matches(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Compares `[M_{r,n}]` with `Σ_π [M^T_{r,n}(π)] L^{d⁺(π)}`.
pub fn bb_identity_check(r: u32, n: u32) -> Result<BbReport> {
    let lhs = class_moduli(r, n)?;
    let parts = plane_partitions(n, Some(r));
    let mut rhs = UniPoly::zero();
    for pi in &parts {
        let class = class_fixed_component(r, pi)?;
        let d = d_plus_formula(pi, r)?;
        rhs = rhs.add(&class.polynomial().expect("finite class").shift(d as usize));
    }
    Ok(BbReport {
        r,
        n,
        components: parts.len(),
        lhs,
        rhs,
    })
}

/// Outcome of comparing two truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesComparison {
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
    pub first_difference: Option<Difference>,
    pub terms: usize,
}

impl SeriesComparison {
    pub fn new(lhs: TruncatedSeries, rhs: TruncatedSeries, terms: usize) -> Result<Self> {
        let first_difference = lhs.first_difference(&rhs)?;
        Ok(SeriesComparison {
            lhs,
            rhs,
            first_difference,
            terms,
        })
    }

    pub fn matches(&self) -> bool {
        self.first_difference.is_none()
    }
}

fn sum_series(parts: &[TruncatedSeries], profile: TruncationProfile) -> Result<TruncatedSeries> {
    let mut total = TruncatedSeries::zero(profile);
    for s in parts {
        total.add_assign(s)?;
    }
    Ok(total)
}

/// `Σ_{π_{0,0} ≤ r} t^{|π|} [r]!_q/[r−π_{0,0}]!_q q^{χ(π)} F_π(q, 0)` through `t^{t_order}`.
pub fn theorem3_lhs(rank: Rank, t_order: u32, q_order: u32) -> Result<TruncatedSeries> {
    let profile = TruncationProfile::new(&[(Var::Q, q_order), (Var::T, t_order)]);
    let parts: Vec<_> = plane_partitions_up_to(t_order, None)
        .into_iter()
        .filter(|pi| rank.admits(pi))
        .collect();
    let terms = parts
        .par_iter()
        .map(|pi| {
            let prefactor = match rank {
                Rank::Finite(r) => falling_prefactor(r, pi.corner(), Var::Q),
                Rank::Infinite => FactorProduct::one(),
            };
            let mono = FactorProduct::monomial([pi.chi() as i64, pi.weight() as i64, 0, 0], false);
            (&(&prefactor * &mono) * &vuletic::weight_at_t0(pi)).expand(&profile)
        })
        .collect::<Result<Vec<_>>>()?;
    sum_series(&terms, profile)
}

/// `∏_{n≥1, 1≤m≤r} (1 − q^m t^n)^{−1}`; every `m ≥ 1` for the infinite rank.
pub fn theorem3_rhs(rank: Rank, t_order: u32, q_order: u32) -> Result<TruncatedSeries> {
    let profile = TruncationProfile::new(&[(Var::Q, q_order), (Var::T, t_order)]);
    let m_max = match rank {
        Rank::Finite(r) => r.min(q_order),
        Rank::Infinite => q_order,
    };
    let f: FactorProduct = (1..=t_order)
        .flat_map(|n| (1..=m_max).map(move |m| (n, m)))
        .map(|(n, m)| {
            FactorProduct::atom_pow(exps(&[(Var::Q, m), (Var::T, n)]), -1).expect("nonzero")
        })
        .product();
    f.expand(&profile)
}

pub fn theorem3_check(rank: Rank, t_order: u32, q_order: u32) -> Result<SeriesComparison> {
    let count = plane_partitions_up_to(t_order, None)
        .iter()
        .filter(|pi| rank.admits(pi))
        .count();
    SeriesComparison::new(
        theorem3_lhs(rank, t_order, q_order)?,
        theorem3_rhs(rank, t_order, q_order)?,
        count,
    )
}

/// `Σ_n t^n Σ_{|π|=n} [M^T_{∞,n}(π)]` through `t^{t_order}`, `L^{l_order}`.
pub fn corollary_lhs(t_order: u32, l_order: u32) -> Result<TruncatedSeries> {
    let profile = TruncationProfile::new(&[(Var::T, t_order), (Var::L, l_order)]);
    let parts = plane_partitions_up_to(t_order, None);
    let terms = parts
        .par_iter()
        .map(|pi| {
            let mono = FactorProduct::monomial([0, pi.weight() as i64, 0, 0], false);
            (&mono * limit_class(pi).factors()).expand(&profile)
        })
        .collect::<Result<Vec<_>>>()?;
    sum_series(&terms, profile)
}

/// `∏_{i≥0, j≥1} (1 − L^i t^j)^{−j}` through `t^{t_order}`, `L^{l_order}`.
pub fn corollary_rhs(t_order: u32, l_order: u32) -> Result<TruncatedSeries> {
    let profile = TruncationProfile::new(&[(Var::T, t_order), (Var::L, l_order)]);
    let f: FactorProduct = (0..=l_order)
        .flat_map(|i| (1..=t_order).map(move |j| (i, j)))
        .map(|(i, j)| {
            FactorProduct::atom_pow(exps(&[(Var::L, i), (Var::T, j)]), -(j as i64)).expect("j ≥ 1")
        })
        .product();
    f.expand(&profile)
}

pub fn corollary_check(t_order: u32, l_order: u32) -> Result<SeriesComparison> {
    SeriesComparison::new(
        corollary_lhs(t_order, l_order)?,
        corollary_rhs(t_order, l_order)?,
        plane_partitions_up_to(t_order, None).len(),
    )
}

/// Per-partition comparison of `F_π(L, 0)` with the stable class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableClassEntry {
    pub partition: PlanePartition,
    pub factored_equal: bool,
    pub first_difference: Option<Difference>,
}

impl StableClassEntry {
    pub fn matches(&self) -> bool {
        self.first_difference.is_none()
    }
}

pub fn stable_class_check(max_weight: u32, l_order: u32) -> Result<Vec<StableClassEntry>> {
    let profile = TruncationProfile::new(&[(Var::L, l_order)]);
    plane_partitions_up_to(max_weight, None)
        .into_par_iter()
        .map(|pi| {
            let weight = vuletic::weight_at_t0(&pi).rename(Var::Q, Var::L);
            let class = limit_class(&pi);
            let first_difference = weight
                .expand(&profile)?
                .first_difference(&class.expand(l_order)?)?;
            Ok(StableClassEntry {
                factored_equal: &weight == class.factors(),
                partition: pi,
                first_difference,
            })
        })
        .collect()
}
