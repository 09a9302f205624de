//! Efficient k-regular fillings of k-cores, realized from reduced words.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::{AffineWindow, Letter};
use crate::counting::{count_window, lower_interval, MemoCache};
use crate::error::{Error, Result};
use crate::splitting::{chi, staircase, SplittingType};
use crate::young::{apply_generator_step, box_residue, window_from_core, CoreStep, Diagram, TVector};

/// A filling of a k-core by symbols `1..=g`, one per word letter.
/// Symbols of `*` letters occupy no boxes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FillingJson", into = "FillingJson")]
pub struct Filling {
    k: usize,
    word: Vec<Letter>,
    boxes: BTreeMap<(usize, usize), usize>,
    shape: Diagram,
}

#[derive(Serialize, Deserialize)]
struct BoxJson {
    r: usize,
    c: usize,
    symbol: usize,
}

#[derive(Serialize, Deserialize)]
struct FillingJson {
    k: usize,
    word: Vec<Letter>,
    boxes: Vec<BoxJson>,
}

impl From<Filling> for FillingJson {
    fn from(f: Filling) -> Self {
        let boxes = f.boxes.iter().map(|(&(r, c), &symbol)| BoxJson { r, c, symbol }).collect();
        FillingJson { k: f.k, word: f.word, boxes }
    }
}

impl TryFrom<FillingJson> for Filling {
    type Error = Error;

    fn try_from(j: FillingJson) -> Result<Self> {
        let f = word_to_filling(&j.word, j.k)?;
        let boxes: BTreeMap<_, _> = j.boxes.iter().map(|b| ((b.r, b.c), b.symbol)).collect();
        if boxes != f.boxes {
            return Err(Error::Diagram("boxes do not match the word".into()));
        }
        Ok(f)
    }
}

impl Filling {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    /// Number of symbols `g`, including those of `*` letters.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn boxes(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.boxes
    }

    pub fn shape(&self) -> &Diagram {
        &self.shape
    }

    pub fn symbol_at(&self, r: usize, c: usize) -> Option<usize> {
        self.boxes.get(&(r, c)).copied()
    }

    /// Boxes holding symbol `t`, in row order.
    pub fn boxes_of(&self, t: usize) -> Vec<(usize, usize)> {
        self.boxes.iter().filter(|&(_, &s)| s == t).map(|(&rc, _)| rc).collect()
    }

    /// Sorted window of the coset element the filling realizes.
    pub fn window(&self) -> TVector {
        window_from_core(&self.shape, self.k).expect("realized shapes are cores")
    }

    /// Builds a filling from its boxes. Symbols `1..=g` missing from the map
    /// become `*` letters.
    pub fn from_boxes(k: usize, g: usize, boxes: BTreeMap<(usize, usize), usize>) -> Result<Self> {
        let mut word = vec![Letter::Identity; g];
        for (&(r, c), &t) in &boxes {
            if t == 0 || t > g {
                return Err(Error::Diagram(format!("symbol {t} at ({r}, {c}) outside 1..={g}")));
            }
            let res = box_residue(r, c, k);
            match word[t - 1] {
                Letter::Identity => word[t - 1] = Letter::Gen(res),
                Letter::Gen(j) if j == res => {}
                Letter::Gen(j) => {
                    return Err(Error::Diagram(format!("symbol {t} sits on residues {j} and {res}")));
                }
            }
        }
        let f = word_to_filling(&word, k)?;
        if f.boxes != boxes {
            return Err(Error::Diagram("boxes are not the filling of their own word".into()));
        }
        Ok(f)
    }

    /// Strictly increasing along rows and columns, one residue per symbol.
    pub fn is_k_regular(&self) -> bool {
        let mut residue_of: BTreeMap<usize, usize> = BTreeMap::new();
        self.boxes.iter().all(|(&(r, c), &t)| {
            let right = self.boxes.get(&(r, c + 1)).is_none_or(|&s| s > t);
            let below = self.boxes.get(&(r + 1, c)).is_none_or(|&s| s > t);
            let res = box_residue(r, c, self.k);
            right && below && *residue_of.entry(t).or_insert(res) == res
        })
    }

    /// The diagram with one row of symbols per line.
    pub fn render(&self) -> String {
        let width = self.len().to_string().len();
        self.shape
            .rows()
            .iter()
            .enumerate()
            .map(|(r, &len)| {
                (1..=len)
                    .map(|c| format!("{:>width$}", self.boxes[&(r + 1, c)]))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.word.iter().map(Letter::to_string).collect();
        write!(f, "({})", letters.join(","))
    }
}

/// Realizes a word, applied oldest letter first, as a filling. Every
/// non-`*` letter must add boxes.
pub fn word_to_filling(word: &[Letter], k: usize) -> Result<Filling> {
    if k < 2 {
        return Err(Error::Window(format!("fillings need k ≥ 2, got {k}")));
    }
    let mut shape = Diagram::empty();
    let mut boxes = BTreeMap::new();
    for (i, &letter) in word.iter().enumerate() {
        let Letter::Gen(j) = letter else { continue };
        if j == 0 || j > k {
            return Err(Error::Window(format!("letter {j} at step {} is not in 1..={k}", i + 1)));
        }
        let (next, step) = apply_generator_step(&shape, k, j);
        let reason = match step {
            CoreStep::Added => None,
            CoreStep::Removed => Some("removes boxes"),
            CoreStep::Fixed => Some("fixes the core"),
        };
        if let Some(reason) = reason {
            return Err(Error::NotReduced { step: i + 1, letter: j.to_string(), reason });
        }
        for (r, c) in next.boxes() {
            if !shape.contains_box(r, c) {
                boxes.insert((r, c), i + 1);
            }
        }
        shape = next;
    }
    Ok(Filling { k, word: word.to_vec(), boxes, shape })
}

/// Parses a word such as `4,3,1,*,2`.
pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

/// Common residue of the boxes holding `t`, or `*` when there are none.
pub fn residue_of_symbol(filling: &Filling, t: usize) -> Letter {
    match filling.boxes.iter().find(|&(_, &s)| s == t) {
        Some((&(r, c), _)) => Letter::Gen(box_residue(r, c, filling.k)),
        None => Letter::Identity,
    }
}

/// `T^{≤t}(ℓ)` for `0 ≤ t ≤ g`, `1 ≤ ℓ ≤ k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Truncations {
    k: usize,
    rows: Vec<Vec<i64>>,
}

impl Truncations {
    pub fn new(filling: &Filling) -> Self {
        let mut w = AffineWindow::identity(filling.k);
        let mut rows = vec![w.values().to_vec()];
        for &letter in &filling.word {
            w = w.left_multiply_generator(letter);
            rows.push(w.values().to_vec());
        }
        Self { k: filling.k, rows }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of steps `g`.
    pub fn steps(&self) -> usize {
        self.rows.len() - 1
    }

    /// `T^{≤t}(ℓ)`, with `ℓ` 1-based.
    pub fn get(&self, t: usize, ell: usize) -> i64 {
        self.rows[t][ell - 1]
    }

    pub fn row(&self, t: usize) -> &[i64] {
        &self.rows[t]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }
}

pub fn truncations(filling: &Filling) -> Truncations {
    Truncations::new(filling)
}

/// Tables `a^i_{(j,n)}` and `b^i_{(j,n)}` for nodes `1 ≤ i ≤ g−1`, stored by
/// the flat layer index `ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ramification {
    pub g: usize,
    pub d: i64,
    pub layers: Vec<(i64, usize)>,
    a: Vec<Vec<i64>>,
    b: Vec<Vec<i64>>,
}

impl Ramification {
    /// `a^i_ℓ` for `1 ≤ i ≤ g−1`.
    pub fn a(&self, i: usize, ell: usize) -> i64 {
        self.a[i - 1][ell - 1]
    }

    pub fn b(&self, i: usize, ell: usize) -> i64 {
        self.b[i - 1][ell - 1]
    }

    /// Flat index of layer coordinates `(j, n)`, both 1-based.
    pub fn index(&self, j: usize, n: usize) -> usize {
        self.layers[..j - 1].iter().map(|&(_, m)| m).sum::<usize>() + n
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.g.saturating_sub(1)
    }
}

pub fn ramification_indices(filling: &Filling, e: &SplittingType) -> Result<Ramification> {
    let expected = staircase(e);
    if filling.k != e.k() || filling.shape != expected {
        return Err(Error::ShapeMismatch { expected: expected.rows().to_vec(), found: filling.shape.rows().to_vec() });
    }
    let trunc = truncations(filling);
    let g = filling.len();
    let k = e.k() as i64;
    let d = g as i64 - 1 + chi(e, 0);
    let layers = e.layers();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 1..g {
        let mut a_row = Vec::with_capacity(e.k());
        let mut b_row = Vec::with_capacity(e.k());
        for ell in 1..=e.k() {
            let (j, _) = e.layer_of(ell);
            let ai = trunc.get(i, ell) + i as i64 - 1;
            a_row.push(ai);
            b_row.push(d - layers[j - 1].0 * k - ai);
        }
        a.push(a_row);
        b.push(b_row);
    }
    Ok(Ramification { g, d, layers, a, b })
}

/// Every reduced word of the coset element of `diagram`, lexicographic in
/// `(j_1, …, j_u)`. With `limit = Some(n)`, more than `n` words is an error.
pub fn enumerate_reduced_words(diagram: &Diagram, k: usize, limit: Option<u64>) -> Result<Vec<Vec<Letter>>> {
    let target = window_from_core(diagram, k)?;
    let total = count_window(&target, &mut MemoCache::new(k))?;
    if let Some(limit) = limit {
        if total > limit.into() {
            return Err(Error::ResourceLimit { what: "efficient fillings", needed: total.to_string(), limit });
        }
    }
    let interval = lower_interval(&target);
    let mut words = Vec::new();
    let mut prefix: Vec<Letter> = Vec::new();
    // Each frame is a state and the next letter to try from it.
    let mut stack = vec![(TVector::identity(k), 1usize)];
    while let Some((state, next)) = stack.last_mut() {
        if *state == target {
            words.push(prefix.clone());
            stack.pop();
            prefix.pop();
            continue;
        }
        if *next > k {
            stack.pop();
            prefix.pop();
            continue;
        }
        let j = *next;
        *next += 1;
        if state.generator_effect(j) != CoreStep::Added {
            continue;
        }
        let child = state.apply(j);
        if interval.contains(&child) {
            prefix.push(Letter::Gen(j));
            stack.push((child, 1));
        }
    }
    Ok(words)
}

/// All efficient fillings of a k-core, ordered by word.
pub fn enumerate_efficient_fillings(diagram: &Diagram, k: usize, limit: Option<u64>) -> Result<Vec<Filling>> {
    let words = enumerate_reduced_words(diagram, k, limit)?;
    words.par_iter().map(|w| word_to_filling(w, k)).collect()
}

/// Outcome of the structural checks on the truncations of one filling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct TruncationCheck {
    pub floor_monotone: bool,
    pub sorted: bool,
    pub same_layer_gap: bool,
    pub layer_order: bool,
    pub swap_mod_k: bool,
    pub endpoint: bool,
    pub layer_lag: bool,
    pub ramification_monotone: bool,
}

impl TruncationCheck {
    pub fn all(&self) -> bool {
        self.floor_monotone
            && self.sorted
            && self.same_layer_gap
            && self.layer_order
            && self.swap_mod_k
            && self.endpoint
            && self.layer_lag
            && self.ramification_monotone
    }
}

/// Runs the truncation and ramification invariants for an efficient
/// filling of `staircase(e)`.
pub fn check_truncations(filling: &Filling, e: &SplittingType) -> Result<TruncationCheck> {
    let ram = ramification_indices(filling, e)?;
    let tr = truncations(filling);
    let k = e.k();
    let ki = k as i64;
    let g = tr.steps();
    let layer: Vec<(usize, usize)> = (1..=k).map(|l| e.layer_of(l)).collect();
    let mut out = TruncationCheck { layer_order: true, swap_mod_k: true, ..Default::default() };

    out.sorted = tr.rows().iter().all(|row| row.windows(2).all(|w| w[0] < w[1]));
    out.floor_monotone = (1..=k).all(|l1| {
        (1..l1).all(|l2| {
            (1..=g).all(|t| {
                (tr.get(t, l1) - tr.get(t, l2)).div_euclid(ki) >= (tr.get(t - 1, l1) - tr.get(t - 1, l2)).div_euclid(ki)
            })
        })
    });
    out.same_layer_gap = (0..=g).all(|t| {
        (1..=k).all(|l1| {
            (1..=k).all(|l2| layer[l1 - 1].0 != layer[l2 - 1].0 || layer[l1 - 1].1 < layer[l2 - 1].1 || tr.get(t, l1) - tr.get(t, l2) < ki)
        })
    });
    for (t, letter) in filling.word().iter().enumerate() {
        let Letter::Gen(j) = *letter else { continue };
        let before = tr.row(t);
        let find = |r: usize| before.iter().position(|&v| (v - r as i64).rem_euclid(ki) == 0).unwrap() + 1;
        let plus = find(j);
        let minus = find(j % k + 1);
        if layer[minus - 1].0 >= layer[plus - 1].0 {
            out.layer_order = false;
        }
        if (tr.get(t + 1, plus) - tr.get(t + 1, minus)).rem_euclid(ki) != 1 % ki {
            out.swap_mod_k = false;
        }
    }
    let layers = e.layers();
    out.endpoint = (1..=k).all(|l| {
        let (j, n) = layer[l - 1];
        let m_sum: usize = layers[..j].iter().map(|&(_, m)| m).sum();
        tr.get(g, l) == chi(e, -layers[j - 1].0) - m_sum as i64 + n as i64
    });
    out.layer_lag = (0..=g).all(|t| {
        (1..=k).all(|l1| {
            (1..=k).all(|l2| {
                layer[l1 - 1].0 <= layer[l2 - 1].0
                    || tr.get(g, l1) - tr.get(t, l1) >= tr.get(g, l2) - tr.get(t, l2)
            })
        })
    });
    out.ramification_monotone = ram.nodes().all(|i| {
        (1..k).all(|l| ram.a(i, l) < ram.a(i, l + 1))
            && (1..=k).all(|l1| {
                (1..=k).all(|l2| {
                    let (j1, n1) = layer[l1 - 1];
                    let (j2, n2) = layer[l2 - 1];
                    if j1 < j2 {
                        ram.b(i, l1) < ram.b(i, l2)
                    } else if j1 == j2 && n1 < n2 {
                        ram.b(i, l1) > ram.b(i, l2)
                    } else {
                        true
                    }
                })
            })
    });
    Ok(out)
}
