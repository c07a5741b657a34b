//! Young diagrams, plane partitions and r-tuples of diagrams.
//!
//! Coordinates are `(row, column)` with the origin at the top-left box. A
//! Young diagram is stored by its row lengths, so `(i, j)` is a box iff
//! `j < rows[i]`. Reads outside a plane partition return `0`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    /// Builds a diagram from row lengths. Trailing zeros are dropped; any
    /// increase between consecutive rows is rejected.
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if let Some(w) = rows.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(format!(
                "row lengths must be weakly decreasing, found {} before {}",
                w[0], w[1]
            )));
        }
        Ok(YoungDiagram { rows })
    }

    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.rows.iter().map(|&r| r as u64).sum()
    }

    /// Length of row `i`, zero past the last row.
    pub fn row(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Number of boxes in column `j`.
    pub fn column(&self, j: usize) -> u32 {
        self.rows.iter().take_while(|&&r| r as usize > j).count() as u32
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        (j as u64) < self.row(i) as u64
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (0..len as usize).map(move |j| (i, j)))
    }

    /// Signed arm length `row(i) - j - 1`; negative when `(i, j)` is not a box.
    pub fn arm(&self, i: usize, j: usize) -> i64 {
        self.row(i) as i64 - j as i64 - 1
    }

    /// Signed leg length `column(j) - i - 1`; negative when `(i, j)` is not a box.
    pub fn leg(&self, i: usize, j: usize) -> i64 {
        self.column(j) as i64 - i as i64 - 1
    }

    pub fn conjugate(&self) -> YoungDiagram {
        let width = self.row(0) as usize;
        YoungDiagram {
            rows: (0..width).map(|j| self.column(j)).collect(),
        }
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.rows)
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;

    /// Parses a flat JSON array such as `[3,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<u32> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        YoungDiagram::new(rows)
    }
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: u32) -> Vec<YoungDiagram> {
    partitions_bounded(n, n)
}

/// Partitions of `n` with every part at most `max_part`, decreasing lexicographic order.
pub fn partitions_bounded(n: u32, max_part: u32) -> Vec<YoungDiagram> {
    fn rec(remaining: u32, max_part: u32, acc: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if remaining == 0 {
            out.push(YoungDiagram { rows: acc.clone() });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            acc.push(part);
            rec(remaining - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, &mut Vec::new(), &mut out);
    out
}

/// A plane partition stored as a trimmed rectangular array.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePartition {
    nrows: usize,
    ncols: usize,
    entries: Vec<u32>,
}

impl PlanePartition {
    pub fn empty() -> Self {
        PlanePartition::default()
    }

    /// Builds a plane partition from (possibly ragged) rows. Missing entries are
    /// zero; rows and columns must be nonincreasing.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut entries = vec![0u32; nrows * ncols];
        for (i, row) in rows.iter().enumerate() {
            entries[i * ncols..i * ncols + row.len()].copy_from_slice(row);
        }
        let raw = PlanePartition {
            nrows,
            ncols,
            entries,
        };
        for i in 0..nrows {
            for j in 0..ncols {
                let v = raw.get(i, j);
                if v < raw.get(i, j + 1) || v < raw.get(i + 1, j) {
                    return Err(Error::InvalidPlanePartition(format!(
                        "entries must be nonincreasing along rows and columns (at box ({i}, {j}))"
                    )));
                }
            }
        }
        Ok(raw.trimmed())
    }

    fn trimmed(self) -> Self {
        let nrows = (0..self.nrows)
            .rev()
            .find(|&i| self.get(i, 0) > 0)
            .map_or(0, |i| i + 1);
        let ncols = (0..self.ncols)
            .rev()
            .find(|&j| self.get(0, j) > 0)
            .map_or(0, |j| j + 1);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                entries.push(self.get(i, j));
            }
        }
        PlanePartition {
            nrows,
            ncols,
            entries,
        }
    }

    /// Entry `π_{i,j}`; zero outside the stored array.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i < self.nrows && j < self.ncols {
            self.entries[i * self.ncols + j]
        } else {
            0
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// The entry `π_{0,0}`.
    pub fn corner(&self) -> u32 {
        self.get(0, 0)
    }

    pub fn weight(&self) -> u64 {
        self.entries.iter().map(|&v| v as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.nrows == 0
    }

    /// Boxes with a positive entry, row-major.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.nrows)
            .flat_map(move |i| (0..self.ncols).map(move |j| (i, j)))
            .filter(move |&(i, j)| self.get(i, j) > 0)
    }

    /// Rows with trailing zeros removed.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.nrows)
            .map(|i| {
                (0..self.ncols)
                    .map(|j| self.get(i, j))
                    .take_while(|&v| v > 0)
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> PlanePartition {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.ncols {
            for i in 0..self.nrows {
                entries.push(self.get(i, j));
            }
        }
        PlanePartition {
            nrows: self.ncols,
            ncols: self.nrows,
            entries,
        }
    }

    /// True when every entry is 0 or 1, i.e. the partition is a Young diagram.
    pub fn is_flat(&self) -> bool {
        self.entries.iter().all(|&v| v <= 1)
    }

    fn diagonal_from(&self, i: usize, j: usize) -> YoungDiagram {
        let rows = (0..)
            .map(|k| self.get(i + k, j + k))
            .take_while(|&v| v > 0)
            .collect();
        YoungDiagram { rows }
    }

    /// The diagonal slices `(λ, μ, ν)` through box `(i, j)`:
    /// `λ` starts at `(i, j)`, `μ` at `(i+1, j)` and `ν` at `(i, j+1)`.
    pub fn diagonal_partitions(
        &self,
        i: usize,
        j: usize,
    ) -> Result<(YoungDiagram, YoungDiagram, YoungDiagram)> {
        if self.get(i, j) == 0 {
            return Err(Error::BoxOutsideSupport(i, j));
        }
        Ok((
            self.diagonal_from(i, j),
            self.diagonal_from(i + 1, j),
            self.diagonal_from(i, j + 1),
        ))
    }

    /// `Σ π_{i,j} (π_{i,j} − π_{i,j+1})`.
    pub fn chi(&self) -> u64 {
        self.support()
            .map(|(i, j)| {
                let v = self.get(i, j) as u64;
                v * (v - self.get(i, j + 1) as u64)
            })
            .sum()
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write_list(f, row)?;
        }
        f.write_str("]")
    }
}

impl FromStr for PlanePartition {
    type Err = Error;

    /// Parses row-major nested JSON arrays such as `[[2,1],[1]]`.
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<Vec<u32>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        PlanePartition::new(rows)
    }
}

/// Every plane partition of weight `n`, optionally with `π_{0,0} ≤ max_first_entry`.
///
/// Output is in decreasing lexicographic order of the row-major entry
/// sequence (rows padded with zeros to a common width), so `[[2]]` precedes
/// `[[1,1]]`, which precedes `[[1],[1]]`.
pub fn plane_partitions(n: u32, max_first_entry: Option<u32>) -> Vec<PlanePartition> {
    let cap = max_first_entry.map_or(n, |m| m.min(n));
    let mut out = Vec::new();
    let first_bound = vec![cap; n as usize];
    let mut acc = Vec::new();
    plane_rec(&first_bound, n, &mut acc, &mut out);
    out
}

/// Plane partitions of every weight `0..=max_weight`, grouped by weight.
pub fn plane_partitions_up_to(
    max_weight: u32,
    max_first_entry: Option<u32>,
) -> Vec<PlanePartition> {
    (0..=max_weight)
        .flat_map(|n| plane_partitions(n, max_first_entry))
        .collect()
}

fn plane_rec(
    bound: &[u32],
    remaining: u32,
    acc: &mut Vec<Vec<u32>>,
    out: &mut Vec<PlanePartition>,
) {
    if remaining == 0 {
        out.push(PlanePartition::new(acc.clone()).expect("rows generated under their bounds"));
        return;
    }
    for row in bounded_rows(bound, remaining) {
        let sum: u32 = row.iter().sum();
        acc.push(row);
        let next_bound = acc.last().unwrap().clone();
        plane_rec(&next_bound, remaining - sum, acc, out);
        acc.pop();
    }
}

/// Nonempty weakly decreasing rows with `row[j] ≤ bound[j]` and sum at most
/// `budget`, in decreasing lexicographic order.
fn bounded_rows(bound: &[u32], budget: u32) -> Vec<Vec<u32>> {
    fn rec(bound: &[u32], budget: u32, prev: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let j = acc.len();
        if j < bound.len() {
            let hi = bound[j].min(prev).min(budget);
            for v in (1..=hi).rev() {
                acc.push(v);
                rec(bound, budget - v, v, acc, out);
                acc.pop();
            }
        }
        if !acc.is_empty() {
            out.push(acc.clone());
        }
    }
    let mut out = Vec::new();
    rec(bound, budget, u32::MAX, &mut Vec::new(), &mut out);
    out
}

/// An ordered r-tuple of Young diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramTuple {
    diagrams: Vec<YoungDiagram>,
}

impl DiagramTuple {
    pub fn new(diagrams: Vec<YoungDiagram>) -> Self {
        DiagramTuple { diagrams }
    }

    pub fn diagrams(&self) -> &[YoungDiagram] {
        &self.diagrams
    }

    /// The framing rank r.
    pub fn rank(&self) -> usize {
        self.diagrams.len()
    }

    pub fn weight(&self) -> u64 {
        self.diagrams.iter().map(YoungDiagram::weight).sum()
    }

    /// The plane partition whose entry at `(i, j)` counts the diagrams
    /// containing box `(i, j)`.
    pub fn plane_partition(&self) -> Result<PlanePartition> {
        let nrows = self
            .diagrams
            .iter()
            .map(YoungDiagram::len)
            .max()
            .unwrap_or(0);
        let ncols = self
            .diagrams
            .iter()
            .map(|d| d.row(0) as usize)
            .max()
            .unwrap_or(0);
        let mut rows = vec![vec![0u32; ncols]; nrows];
        for d in &self.diagrams {
            for (i, j) in d.boxes() {
                rows[i][j] += 1;
            }
        }
        PlanePartition::new(rows).map_err(|e| {
            Error::Internal(format!(
                "box counts of {self} do not form a plane partition: {e}"
            ))
        })
    }
}

impl fmt::Display for DiagramTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, d) in self.diagrams.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for DiagramTuple {
    type Err = Error;

    /// Parses a JSON array of row-length arrays such as `[[2],[1,1],[]]`.
    fn from_str(s: &str) -> Result<Self> {
        let raw: Vec<Vec<u32>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let diagrams = raw
            .into_iter()
            .map(YoungDiagram::new)
            .collect::<Result<_>>()?;
        Ok(DiagramTuple { diagrams })
    }
}

/// `π_{i,j} = |{α : (i, j) ∈ D_α}|`.
pub fn partition_of_tuple(tuple: &DiagramTuple) -> Result<PlanePartition> {
    tuple.plane_partition()
}

/// All r-tuples of diagrams with total weight `n`.
///
/// Ordered first by the weight vector `(|D_1|, …, |D_r|)` in decreasing
/// lexicographic order, then by each diagram in turn in the order of
/// [`partitions`].
pub fn diagram_tuples(r: usize, n: u32) -> Vec<DiagramTuple> {
    assert!(r >= 1, "a diagram tuple needs at least one diagram");
    let mut out = Vec::new();
    for weights in compositions(n, r) {
        let mut tuples: Vec<Vec<YoungDiagram>> = vec![Vec::new()];
        for &w in &weights {
            let parts = partitions(w);
            tuples = tuples
                .into_iter()
                .flat_map(|prefix| {
                    parts.iter().map(move |p| {
                        let mut t = prefix.clone();
                        t.push(p.clone());
                        t
                    })
                })
                .collect();
        }
        out.extend(tuples.into_iter().map(DiagramTuple::new));
    }
    out
}

/// Weak compositions of `n` into `parts` parts, decreasing lexicographic order.
fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .rev()
        .flat_map(|first| {
            compositions(n - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

fn write_list(f: &mut fmt::Formatter<'_>, values: &[u32]) -> fmt::Result {
    f.write_str("[")?;
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("]")
}
