//! Young diagrams, hook lengths and k-cores.
//!
//! Boxes are addressed `(r, c)` starting from `(1, 1)`; the diagonal index
//! of a box is `c − r` and its residue is taken in `1..=k`, with `k`
//! standing for `0 mod k` so that residue `j` matches the generator `s_j`.
//!
//! Boundary segments are indexed as follows: the horizontal segment closing
//! column `c` (height `h_c`) has index `c − h_c`, and the vertical segment
//! closing row `r` has index `λ_r + 1 − r`. A k-core is then determined by
//! the smallest horizontal index in each residue class, which is the
//! sorted window [`TVector`] of its coset representative.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residue of an integer in `1..=k`.
pub fn residue(x: i64, k: usize) -> usize {
    let r = x.rem_euclid(k as i64) as usize;
    if r == 0 {
        k
    } else {
        r
    }
}

/// Weakly decreasing positive row lengths; the empty vector is the empty
/// diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Diagram {
    rows: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Diagram {
    type Error = Error;

    fn try_from(rows: Vec<usize>) -> Result<Self> {
        Diagram::new(rows)
    }
}

impl From<Diagram> for Vec<usize> {
    fn from(d: Diagram) -> Self {
        d.rows
    }
}

impl Diagram {
    /// Validates that rows are weakly decreasing. Trailing zero rows are
    /// dropped; a zero row followed by a positive one is rejected.
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Diagram(format!("rows {rows:?} are not weakly decreasing")));
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses `"5,2,1"` or `"[5,2,1]"`; an empty string or `[]` is the
    /// empty diagram.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let rows = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Diagram(format!("cannot parse row {p:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Length of row `r` (1-based); zero below the diagram.
    pub fn row(&self, r: usize) -> usize {
        if r == 0 {
            return usize::MAX;
        }
        self.rows.get(r - 1).copied().unwrap_or(0)
    }

    /// Height of column `c` (1-based).
    pub fn col(&self, c: usize) -> usize {
        self.rows.iter().take_while(|&&l| l >= c).count()
    }

    pub fn contains_box(&self, r: usize, c: usize) -> bool {
        r >= 1 && c >= 1 && self.row(r) >= c
    }

    /// True if every box of `self` is a box of `other`.
    pub fn is_subdiagram_of(&self, other: &Diagram) -> bool {
        self.rows.len() <= other.rows.len() && self.rows.iter().zip(&other.rows).all(|(a, b)| a <= b)
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, &len)| (1..=len).map(move |c| (i + 1, c)))
    }

    /// Cells `(r, c)` that can be added keeping a Young diagram.
    pub fn addable_corners(&self) -> Vec<(usize, usize)> {
        (1..=self.rows.len() + 1).filter(|&r| self.row(r - 1) > self.row(r)).map(|r| (r, self.row(r) + 1)).collect()
    }

    /// Cells `(r, c)` whose removal keeps a Young diagram.
    pub fn removable_corners(&self) -> Vec<(usize, usize)> {
        (1..=self.rows.len()).filter(|&r| self.row(r) > self.row(r + 1)).map(|r| (r, self.row(r))).collect()
    }

    /// Transposed diagram.
    pub fn conjugate(&self) -> Diagram {
        Diagram { rows: (1..=self.num_cols()).map(|c| self.col(c)).collect() }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// Residue of the diagonal index of box `(r, c)`.
pub fn box_residue(r: usize, c: usize, k: usize) -> usize {
    residue(c as i64 - r as i64, k)
}

pub fn hook_length(diagram: &Diagram, r: usize, c: usize) -> Result<usize> {
    if !diagram.contains_box(r, c) {
        return Err(Error::OutsideDiagram { r, c });
    }
    let arm = diagram.row(r) - c;
    let leg = diagram.col(c) - r;
    Ok(arm + leg + 1)
}

/// Hook lengths of all boxes, computed in one pass over the columns.
fn hooks(diagram: &Diagram) -> Vec<usize> {
    let cols: Vec<usize> = (1..=diagram.num_cols()).map(|c| diagram.col(c)).collect();
    diagram.boxes().map(|(r, c)| diagram.row(r) - c + cols[c - 1] - r + 1).collect()
}

/// No hook length divisible by `k`.
pub fn is_k_core(diagram: &Diagram, k: usize) -> bool {
    assert!(k >= 2, "k must be at least 2");
    hooks(diagram).into_iter().all(|h| h % k != 0)
}

/// Number of boxes with hook length less than `k`.
pub fn u_core(diagram: &Diagram, k: usize) -> usize {
    hooks(diagram).into_iter().filter(|&h| h < k).count()
}

/// Sorted window of an affine Grassmannian element: `k` integers with
/// distinct residues mod `k` summing to `k(k+1)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct TVector {
    values: Vec<i64>,
}

impl TryFrom<Vec<i64>> for TVector {
    type Error = Error;

    fn try_from(values: Vec<i64>) -> Result<Self> {
        TVector::new(values)
    }
}

impl From<TVector> for Vec<i64> {
    fn from(t: TVector) -> Self {
        t.values
    }
}

pub(crate) fn check_window(values: &[i64]) -> Result<()> {
    let k = values.len();
    if k < 2 {
        return Err(Error::Window(format!("need at least two entries, got {values:?}")));
    }
    let mut seen = vec![false; k];
    for &v in values {
        let r = v.rem_euclid(k as i64) as usize;
        if std::mem::replace(&mut seen[r], true) {
            return Err(Error::Window(format!("{values:?} repeats residue {r} mod {k}")));
        }
    }
    let sum: i64 = values.iter().sum();
    let expected = (k * (k + 1) / 2) as i64;
    if sum != expected {
        return Err(Error::Window(format!("{values:?} sums to {sum}, expected {expected}")));
    }
    Ok(())
}

impl TVector {
    /// Validates and sorts.
    pub fn new(mut values: Vec<i64>) -> Result<Self> {
        check_window(&values)?;
        values.sort_unstable();
        Ok(Self { values })
    }

    pub(crate) fn from_sorted_unchecked(values: Vec<i64>) -> Self {
        debug_assert!(check_window(&values).is_ok() && values.windows(2).all(|w| w[0] < w[1]));
        Self { values }
    }

    pub fn identity(k: usize) -> Self {
        Self { values: (1..=k as i64).collect() }
    }

    pub fn k(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().zip(1..).all(|(&v, i)| v == i)
    }

    /// Entry congruent to `j` mod `k`.
    pub fn with_residue(&self, j: usize) -> i64 {
        let k = self.k() as i64;
        *self.values.iter().find(|&&v| (v - j as i64).rem_euclid(k) == 0).expect("every residue occurs once")
    }

    /// Effect of `s_j` on the associated core, read off the window.
    pub fn generator_effect(&self, j: usize) -> CoreStep {
        let low = self.with_residue(j);
        let high = self.with_residue(j + 1);
        if low > high {
            CoreStep::Added
        } else if high - low >= 2 {
            CoreStep::Removed
        } else {
            CoreStep::Fixed
        }
    }

    /// `s_j` applied to the values, re-sorted.
    pub fn apply(&self, j: usize) -> TVector {
        let k = self.k() as i64;
        let mut values: Vec<i64> = self
            .values
            .iter()
            .map(|&x| {
                if (x - j as i64).rem_euclid(k) == 0 {
                    x + 1
                } else if (x - j as i64 - 1).rem_euclid(k) == 0 {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        values.sort_unstable();
        TVector { values }
    }
}

impl fmt::Display for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// How a generator acts on a k-core.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreStep {
    Added,
    Removed,
    Fixed,
}

/// First horizontal boundary index in each residue class, sorted.
pub fn window_from_core(diagram: &Diagram, k: usize) -> Result<TVector> {
    if !is_k_core(diagram, k) {
        return Err(Error::NotCore { rows: diagram.rows().to_vec(), k });
    }
    let mut first: Vec<Option<i64>> = vec![None; k];
    // Horizontal indices c − h_c strictly increase with c, so the first hit
    // per residue is the minimum.
    let mut found = 0;
    let mut c = 1usize;
    while found < k {
        let idx = c as i64 - diagram.col(c) as i64;
        let slot = &mut first[idx.rem_euclid(k as i64) as usize];
        if slot.is_none() {
            *slot = Some(idx);
            found += 1;
        }
        c += 1;
    }
    TVector::new(first.into_iter().map(Option::unwrap).collect())
}

/// Inverse of [`window_from_core`]: vertical boundary indices `v_1 > v_2 > ⋯`
/// give rows `λ_r = v_r + r − 1`.
pub fn core_from_window(t: &TVector) -> Diagram {
    let mut rows = Vec::new();
    let mut x = *t.values().last().unwrap() - 1;
    loop {
        let first = t.with_residue(residue(x, t.k()));
        if x < first {
            let len = x + rows.len() as i64;
            if len <= 0 {
                break;
            }
            rows.push(len as usize);
        }
        x -= 1;
    }
    Diagram { rows }
}

/// Adds every addable corner of residue `j`, or else removes every
/// removable one, or else leaves the core unchanged.
pub fn apply_generator(diagram: &Diagram, k: usize, j: usize) -> Diagram {
    apply_generator_step(diagram, k, j).0
}

pub fn apply_generator_step(diagram: &Diagram, k: usize, j: usize) -> (Diagram, CoreStep) {
    let j = residue(j as i64, k);
    let add: Vec<_> = diagram.addable_corners().into_iter().filter(|&(r, c)| box_residue(r, c, k) == j).collect();
    if !add.is_empty() {
        let mut rows = diagram.rows.clone();
        for (r, _) in add {
            if r > rows.len() {
                rows.push(1);
            } else {
                rows[r - 1] += 1;
            }
        }
        return (Diagram { rows }, CoreStep::Added);
    }
    let remove: Vec<_> = diagram.removable_corners().into_iter().filter(|&(r, c)| box_residue(r, c, k) == j).collect();
    if !remove.is_empty() {
        let mut rows = diagram.rows.clone();
        for (r, _) in remove {
            rows[r - 1] -= 1;
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        return (Diagram { rows }, CoreStep::Removed);
    }
    (diagram.clone(), CoreStep::Fixed)
}

/// Residues (in `1..=k`) of the removable corners.
pub fn removable_residues(diagram: &Diagram, k: usize) -> Vec<usize> {
    let mut v: Vec<usize> = diagram.removable_corners().into_iter().map(|(r, c)| box_residue(r, c, k)).collect();
    v.sort_unstable();
    v.dedup();
    v
}
