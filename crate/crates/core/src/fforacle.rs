//! Brute-force point counts over prime fields for the quiver varieties whose
//! classes are computed in [`crate::motivic`].
//!
//! Every tuple of matrices is visited. A partial tuple is abandoned only when
//! one of its completed maps already fails surjectivity or a commutation
//! constraint whose maps are all assigned; no completion of such a prefix can
//! be a point, so the count is the exhaustive one.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::motivic::{class_grid, class_surjective_chain};
use crate::partitions::{PlanePartition, YoungDiagram};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

fn check_prime(p: u32) -> Result<u8> {
    let prime = p >= 2
        && p <= u8::MAX as u32
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d));
    if prime {
        Ok(p as u8)
    } else {
        Err(Error::NotPrime(p))
    }
}

impl FpMatrix {
    pub fn zeros(p: u8, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Entries are reduced mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let p = check_prime(p)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("matrix rows have different lengths".into()));
        }
        Ok(FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .flatten()
                .map(|&v| (v % p as u32) as u8)
                .collect(),
        })
    }

    /// `[I | 0]`, the coordinate projection onto the first `rows` coordinates.
    pub fn projection(p: u8, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows.min(cols) {
            m.data[i * cols + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    /// Rank by Gaussian elimination mod `p`.
    pub fn rank(&self) -> usize {
        let p = self.p as u32;
        let mut a: Vec<u32> = self.data.iter().map(|&v| v as u32).collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
                continue;
            };
            for k in 0..cols {
                a.swap(rank * cols + k, pivot * cols + k);
            }
            let inv = mod_inverse(a[rank * cols + c], p);
            for k in 0..cols {
                a[rank * cols + k] = a[rank * cols + k] * inv % p;
            }
            for r in 0..rows {
                let factor = a[r * cols + c];
                if r != rank && factor != 0 {
                    for k in 0..cols {
                        a[r * cols + k] =
                            (a[r * cols + k] + p * p - factor * a[rank * cols + k]) % p;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Surjective as a map `F_p^cols → F_p^rows`.
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let p = self.p as u32;
        let mut out = FpMatrix::zeros(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let s: u32 = (0..self.cols)
                    .map(|k| self.get(i, k) as u32 * rhs.get(k, j) as u32)
                    .sum();
                out.data[i * rhs.cols + j] = (s % p) as u8;
            }
        }
        out
    }
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|&x| a * x % p == 1)
        .expect("nonzero residue mod a prime")
}

/// Every `rows × cols` matrix over `F_p`, odometer order on row-major entries.
pub fn all_matrices(p: u8, rows: usize, cols: usize) -> Vec<FpMatrix> {
    let n = rows * cols;
    let total = (p as usize).pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut data = vec![0u8; n];
    for _ in 0..total {
        out.push(FpMatrix {
            p,
            rows,
            cols,
            data: data.clone(),
        });
        for d in data.iter_mut().rev() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// Surjective `rows × cols` matrices over `F_p`, in odometer order.
pub fn surjective_matrices(p: u8, rows: usize, cols: usize) -> Vec<FpMatrix> {
    all_matrices(p, rows, cols)
        .into_iter()
        .filter(FpMatrix::is_surjective)
        .collect()
}

#[derive(Clone, Copy, Debug)]
enum Operand {
    Slot(usize),
    Fixed(usize),
}

/// `lhs.0 · lhs.1 == rhs.0 · rhs.1`.
#[derive(Clone, Copy, Debug)]
struct Constraint {
    lhs: (Operand, Operand),
    rhs: (Operand, Operand),
}

impl Constraint {
    fn ready_at(&self) -> usize {
        [self.lhs.0, self.lhs.1, self.rhs.0, self.rhs.1]
            .iter()
            .filter_map(|o| match o {
                Operand::Slot(k) => Some(*k),
                Operand::Fixed(_) => None,
            })
            .max()
            .unwrap_or(0)
    }
}

/// Tuples of surjective matrices of given shapes subject to commutation
/// constraints.
#[derive(Clone, Debug)]
struct Problem {
    p: u8,
    shapes: Vec<(usize, usize)>,
    fixed: Vec<FpMatrix>,
    constraints: Vec<Constraint>,
}

impl Problem {
    fn free_entries(&self) -> u64 {
        self.shapes.iter().map(|(r, c)| (r * c) as u64).sum()
    }

    fn raw_size(&self) -> u128 {
        (self.p as u128)
            .checked_pow(self.free_entries() as u32)
            .unwrap_or(u128::MAX)
    }

    fn check_budget(&self, budget: u64) -> Result<()> {
        let size = self.raw_size();
        if size > budget as u128 {
            return Err(Error::BudgetExceeded {
                size: if size == u128::MAX {
                    "overflowing".into()
                } else {
                    size.to_string()
                },
                budget,
            });
        }
        Ok(())
    }

    fn holds(&self, c: &Constraint, assigned: &[&FpMatrix]) -> bool {
        let get = |o: Operand| -> &FpMatrix {
            match o {
                Operand::Slot(k) => assigned[k],
                Operand::Fixed(k) => &self.fixed[k],
            }
        };
        get(c.lhs.0).mul(get(c.lhs.1)) == get(c.rhs.0).mul(get(c.rhs.1))
    }

    /// Exhaustive count with per-map rejection, parallel over the first map.
    fn count(&self, budget: u64) -> Result<u64> {
        self.check_budget(budget)?;
        if self.shapes.is_empty() {
            return Ok(1);
        }
        let candidates: Vec<Vec<FpMatrix>> = self
            .shapes
            .iter()
            .map(|&(r, c)| surjective_matrices(self.p, r, c))
            .collect();
        let mut by_slot: Vec<Vec<Constraint>> = vec![Vec::new(); self.shapes.len()];
        for c in &self.constraints {
            by_slot[c.ready_at()].push(*c);
        }
        Ok(candidates[0]
            .par_iter()
            .map(|first| {
                let mut assigned = vec![first];
                if by_slot[0].iter().all(|c| self.holds(c, &assigned)) {
                    self.descend(&candidates, &by_slot, &mut assigned)
                } else {
                    0
                }
            })
            .sum())
    }

    fn descend<'a>(
        &self,
        candidates: &'a [Vec<FpMatrix>],
        by_slot: &[Vec<Constraint>],
        assigned: &mut Vec<&'a FpMatrix>,
    ) -> u64 {
        let k = assigned.len();
        if k == candidates.len() {
            return 1;
        }
        let mut total = 0;
        for m in &candidates[k] {
            assigned.push(m);
            if by_slot[k].iter().all(|c| self.holds(c, assigned)) {
                total += self.descend(candidates, by_slot, assigned);
            }
            assigned.pop();
        }
        total
    }

    /// Plain odometer over every entry of every map; no early rejection.
    fn count_naive(&self, budget: u64) -> Result<u64> {
        self.check_budget(budget)?;
        let n = self.free_entries() as usize;
        let total = self.raw_size() as u64;
        let mut digits = vec![0u8; n];
        let mut count = 0;
        for _ in 0..total {
            let mut offset = 0;
            let maps: Vec<FpMatrix> = self
                .shapes
                .iter()
                .map(|&(r, c)| {
                    let m = FpMatrix {
                        p: self.p,
                        rows: r,
                        cols: c,
                        data: digits[offset..offset + r * c].to_vec(),
                    };
                    offset += r * c;
                    m
                })
                .collect();
            let refs: Vec<&FpMatrix> = maps.iter().collect();
            if maps.iter().all(FpMatrix::is_surjective)
                && self.constraints.iter().all(|c| self.holds(c, &refs))
            {
                count += 1;
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < self.p {
                    break;
                }
                *d = 0;
            }
        }
        Ok(count)
    }
}

/// The chain variety: maps `f_i: F^{μ_i} → F^{μ_{i+1}}`, `g_i: F^{μ_i} → F^{ν_i}`,
/// all surjective, with `g_{i+1} f_i = h_i g_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainInstance {
    p: u8,
    mu: YoungDiagram,
    nu: YoungDiagram,
    h: Vec<FpMatrix>,
}

impl ChainInstance {
    /// `h[i]` is the `ν_{i+2} × ν_{i+1}` matrix of `h_{i+1}`; it must be surjective.
    pub fn new(p: u32, mu: YoungDiagram, nu: YoungDiagram, h: Vec<FpMatrix>) -> Result<Self> {
        let p = check_prime(p)?;
        class_surjective_chain(&mu, &nu)?;
        let k = mu.len();
        if h.len() != k - 1 {
            return Err(Error::InvalidChain(format!(
                "expected {} maps h, got {}",
                k - 1,
                h.len()
            )));
        }
        for (i, m) in h.iter().enumerate() {
            let shape = (nu.row(i + 1) as usize, nu.row(i) as usize);
            if m.p != p || (m.rows, m.cols) != shape {
                return Err(Error::InvalidChain(format!(
                    "h_{} must be a {}×{} matrix over F_{p}",
                    i + 1,
                    shape.0,
                    shape.1
                )));
            }
            if !m.is_surjective() {
                return Err(Error::InvalidChain(format!(
                    "h_{} is not surjective",
                    i + 1
                )));
            }
        }
        Ok(ChainInstance { p, mu, nu, h })
    }

    /// Uses coordinate projections for every `h_i`.
    pub fn with_projections(p: u32, mu: YoungDiagram, nu: YoungDiagram) -> Result<Self> {
        let pp = check_prime(p)?;
        let h = (0..mu.len().saturating_sub(1))
            .map(|i| FpMatrix::projection(pp, nu.row(i + 1) as usize, nu.row(i) as usize))
            .collect();
        Self::new(p, mu, nu, h)
    }

    pub fn prime(&self) -> u32 {
        self.p as u32
    }

    pub fn mu(&self) -> &YoungDiagram {
        &self.mu
    }

    pub fn nu(&self) -> &YoungDiagram {
        &self.nu
    }

    pub fn h(&self) -> &[FpMatrix] {
        &self.h
    }

    /// Maps in canonical order `g_1, f_1, g_2, f_2, …, g_k`.
    fn problem(&self) -> Problem {
        let k = self.mu.len();
        let mu = |i: usize| self.mu.row(i) as usize;
        let nu = |i: usize| self.nu.row(i) as usize;
        let g = |i: usize| Operand::Slot(2 * i);
        let f = |i: usize| Operand::Slot(2 * i + 1);
        let mut shapes = Vec::new();
        for i in 0..k {
            shapes.push((nu(i), mu(i)));
            if i + 1 < k {
                shapes.push((mu(i + 1), mu(i)));
            }
        }
        let constraints = (0..k - 1)
            .map(|i| Constraint {
                lhs: (g(i + 1), f(i)),
                rhs: (Operand::Fixed(i), g(i)),
            })
            .collect();
        Problem {
            p: self.p,
            shapes,
            fixed: self.h.clone(),
            constraints,
        }
    }

    pub fn raw_size(&self) -> u128 {
        self.problem().raw_size()
    }
}

/// The grid variety `N(π)`: maps `B1_{i,j}: V_{i,j} → V_{i+1,j}` and
/// `B2_{i,j}: V_{i,j} → V_{i,j+1}` with `dim V_{i,j} = π_{i,j}`, all
/// surjective and commuting.
fn grid_problem(pi: &PlanePartition, p: u8) -> Problem {
    let support: Vec<(usize, usize)> = pi.support().collect();
    let slot_of = |i: usize, j: usize, which: usize| -> Operand {
        let pos = support
            .iter()
            .position(|&b| b == (i, j))
            .expect("box in support");
        Operand::Slot(2 * pos + which)
    };
    let mut shapes = Vec::new();
    for &(i, j) in &support {
        let v = pi.get(i, j) as usize;
        shapes.push((pi.get(i + 1, j) as usize, v));
        shapes.push((pi.get(i, j + 1) as usize, v));
    }
    let constraints = support
        .iter()
        .filter(|&&(i, j)| pi.get(i + 1, j + 1) > 0)
        .map(|&(i, j)| Constraint {
            lhs: (slot_of(i, j + 1, 0), slot_of(i, j, 1)),
            rhs: (slot_of(i + 1, j, 1), slot_of(i, j, 0)),
        })
        .collect();
    Problem {
        p,
        shapes,
        fixed: Vec::new(),
        constraints,
    }
}

/// A quiver variety to be counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverInstance {
    Chain(ChainInstance),
    Grid { partition: PlanePartition, p: u32 },
}

impl QuiverInstance {
    pub fn prime(&self) -> u32 {
        match self {
            QuiverInstance::Chain(c) => c.prime(),
            QuiverInstance::Grid { p, .. } => *p,
        }
    }

    fn problem(&self) -> Result<Problem> {
        Ok(match self {
            QuiverInstance::Chain(c) => c.problem(),
            QuiverInstance::Grid { partition, p } => grid_problem(partition, check_prime(*p)?),
        })
    }

    /// Size of the unconstrained search space, `p^(number of matrix entries)`.
    pub fn raw_size(&self) -> Result<u128> {
        Ok(self.problem()?.raw_size())
    }

    /// Exhaustive count of points.
    pub fn count(&self, budget: u64) -> Result<u64> {
        self.problem()?.count(budget)
    }

    /// The same count by a plain odometer with no early rejection.
    pub fn count_naive(&self, budget: u64) -> Result<u64> {
        self.problem()?.count_naive(budget)
    }

    /// The class formula evaluated at `L = p`.
    pub fn predicted(&self) -> Result<BigInt> {
        let class = match self {
            QuiverInstance::Chain(c) => class_surjective_chain(&c.mu, &c.nu)?,
            QuiverInstance::Grid { partition, .. } => class_grid(partition)?,
        };
        class.evaluate(self.prime() as i64)
    }
}

pub fn count_chain_points(inst: &ChainInstance, budget: u64) -> Result<u64> {
    inst.problem().count(budget)
}

pub fn count_grid_points(pi: &PlanePartition, p: u32, budget: u64) -> Result<u64> {
    grid_problem(pi, check_prime(p)?).count(budget)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub count: u64,
    pub predicted: BigInt,
}

impl OracleReport {
    pub fn matches(&self) -> bool {
        BigInt::from(self.count) == self.predicted
    }
}

pub fn oracle_vs_class(inst: &QuiverInstance, budget: u64) -> Result<OracleReport> {
    Ok(OracleReport {
        count: inst.count(budget)?,
        predicted: inst.predicted()?,
    })
}
