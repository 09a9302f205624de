//! The affine symmetric group of type Ã_{k−1}, with elements stored as
//! windows `(w(1), …, w(k))` and extended by `w(x + k) = w(x) + k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::splitting::{chi, SplittingType};
use crate::young::{check_window, TVector};

/// A generator label: `s_j` for a residue `j ∈ 1..=k`, or the identity `*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Gen(usize),
    Identity,
}

impl Letter {
    pub fn residue(self) -> Option<usize> {
        match self {
            Letter::Gen(j) => Some(j),
            Letter::Identity => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gen(j) => write!(f, "{j}"),
            Letter::Identity => f.write_str("*"),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "*" => Ok(Letter::Identity),
            t => t.parse::<usize>().map(Letter::Gen).map_err(|_| Error::Window(format!("bad generator label {s:?}"))),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Letter::Gen(j) => serializer.serialize_u64(*j as u64),
            Letter::Identity => serializer.serialize_str("*"),
        }
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(usize),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(j) => Ok(Letter::Gen(j)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// An element of the affine symmetric group. Windows are not sorted;
/// sortedness marks the distinguished coset representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWindow {
    k: usize,
    values: Vec<i64>,
}

impl AffineWindow {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        check_window(&values)?;
        Ok(Self { k: values.len(), values })
    }

    pub fn identity(k: usize) -> Self {
        assert!(k >= 2);
        Self { k, values: (1..=k as i64).collect() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_sorted(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// The sorted window, i.e. the coset representative as a [`TVector`].
    pub fn to_tvector(&self) -> TVector {
        let mut v = self.values.clone();
        v.sort_unstable();
        TVector::from_sorted_unchecked(v)
    }

    /// `w(x)` for any integer `x`.
    pub fn evaluate(&self, x: i64) -> i64 {
        let k = self.k as i64;
        let idx = (x - 1).rem_euclid(k);
        let shift = (x - 1).div_euclid(k);
        self.values[idx as usize] + shift * k
    }

    /// `s_j ∘ w`; the identity letter leaves `w` unchanged.
    pub fn left_multiply_generator(&self, letter: Letter) -> AffineWindow {
        let Letter::Gen(j) = letter else {
            return self.clone();
        };
        let k = self.k as i64;
        let j = j as i64;
        let values = self
            .values
            .iter()
            .map(|&x| {
                if (x - j).rem_euclid(k) == 0 {
                    x + 1
                } else if (x - j - 1).rem_euclid(k) == 0 {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        AffineWindow { k: self.k, values }
    }

    /// Number of inversions `(i, j)` with `1 ≤ i ≤ k`, `j > i`, `w(i) > w(j)`.
    pub fn length(&self) -> u64 {
        let k = self.k as i64;
        let mut total = 0u64;
        for (a, &wa) in self.values.iter().enumerate() {
            for (b, &wb) in self.values.iter().enumerate() {
                // Positions b + 1 + nk with nk > a − b and wb + nk < wa.
                let lo = (a as i64 - b as i64).div_euclid(k) + 1;
                let hi = (wa - wb - 1).div_euclid(k);
                if hi >= lo {
                    total += (hi - lo + 1) as u64;
                }
            }
        }
        total
    }

    /// Left descents: residues `j` with `ℓ(s_j w) = ℓ(w) − 1`.
    pub fn descents(&self) -> Vec<usize> {
        let len = self.length();
        (1..=self.k)
            .filter(|&j| self.left_multiply_generator(Letter::Gen(j)).length() + 1 == len)
            .collect()
    }

    /// Applies the letters of a word in order, oldest first.
    pub fn apply_word(&self, word: &[Letter]) -> AffineWindow {
        word.iter().fold(self.clone(), |w, &l| w.left_multiply_generator(l))
    }
}

impl fmt::Display for AffineWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `w(ē)`: position `ℓ` goes to
/// `χ(O(ē)(−e_{k+1−ℓ})) − #{ℓ' : e_ℓ' ≥ e_{k+1−ℓ}} + #{ℓ' ≥ k+1−ℓ : e_ℓ' = e_{k+1−ℓ}}`.
/// For `k = 1` there is no affine group; callers need `k ≥ 2`.
pub fn w_of_splitting(e: &SplittingType) -> Result<AffineWindow> {
    let p = e.parts();
    let k = p.len();
    if k < 2 {
        return Err(Error::SplittingType(format!("need k ≥ 2 parts, got {e}")));
    }
    let values = (1..=k)
        .map(|ell| {
            let idx = k - ell;
            let v = p[idx];
            let at_least = p.iter().filter(|&&x| x >= v).count() as i64;
            let equal_after = p[idx..].iter().filter(|&&x| x == v).count() as i64;
            chi(e, -v) - at_least + equal_after
        })
        .collect::<Vec<_>>();
    let mut w = AffineWindow::new(values)?;
    w.values.sort_unstable();
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::{imbalance_u, staircase};
    use crate::young::window_from_core;

    fn w(v: &[i64]) -> AffineWindow {
        AffineWindow::new(v.to_vec()).unwrap()
    }

    /// Direct inversion count with `j` truncated where `w(j)` exceeds every
    /// window value.
    fn brute_length(w: &AffineWindow) -> u64 {
        let k = w.k() as i64;
        let spread = w.values().iter().max().unwrap() - w.values().iter().min().unwrap();
        let mut count = 0;
        for i in 1..=k {
            let bound = i + k * ((spread + k - 1) / k) + k;
            for j in (i + 1)..=bound {
                if w.evaluate(i) > w.evaluate(j) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(AffineWindow::identity(4).evaluate(7), 7);
        let x = w(&[-4, 2, 3, 9]);
        assert_eq!(x.evaluate(1), -4);
        assert_eq!(x.evaluate(5), 0);
        assert_eq!(x.evaluate(-3), -8);
    }

    #[test]
    fn generator_examples() {
        let id = AffineWindow::identity(4);
        assert_eq!(id.left_multiply_generator(Letter::Gen(4)).values(), &[0, 2, 3, 5]);
        let x = w(&[-4, 2, 3, 9]);
        assert_eq!(x.left_multiply_generator(Letter::Identity), x);
        for j in 1..=4 {
            let g = Letter::Gen(j);
            assert_eq!(x.left_multiply_generator(g).left_multiply_generator(g), x);
        }
    }

    #[test]
    fn length_examples() {
        assert_eq!(AffineWindow::identity(5).length(), 0);
        assert_eq!(w(&[-4, 2, 3, 9]).length(), 7);
        assert_eq!(w(&[-1, 0, 7]).length(), 4);
        // s_1 ∈ S_3 inside the affine group
        assert_eq!(w(&[2, 1, 3]).length(), 1);
        assert_eq!(w(&[3, 2, 1]).length(), 3);
    }

    #[test]
    fn descent_examples() {
        assert!(AffineWindow::identity(4).descents().is_empty());
        assert_eq!(w(&[-4, 2, 3, 9]).descents(), vec![4]);
        let core = staircase(&"-3,0,0".parse().unwrap());
        assert_eq!(w(&[-1, 0, 7]).descents(), crate::young::removable_residues(&core, 3));
    }

    fn reduced_word_count(x: &AffineWindow) -> u64 {
        if x.length() == 0 {
            return 1;
        }
        x.descents().into_iter().map(|j| reduced_word_count(&x.left_multiply_generator(Letter::Gen(j)))).sum()
    }

    #[test]
    fn longest_finite_element_has_two_words() {
        let w0 = w(&[3, 2, 1]);
        assert_eq!(w0.length(), 3);
        assert_eq!(reduced_word_count(&w0), 2);
        // its coset is the identity coset
        assert!(w0.to_tvector().is_identity());
    }

    #[test]
    fn splitting_window_examples() {
        let st = |s: &str| s.parse::<SplittingType>().unwrap();
        assert_eq!(w_of_splitting(&st("-2,0,0,2")).unwrap().values(), &[-4, 2, 3, 9]);
        assert_eq!(w_of_splitting(&st("0,0,0,0")).unwrap(), AffineWindow::identity(4));
        assert_eq!(w_of_splitting(&st("-3,0,0")).unwrap().values(), &[-1, 0, 7]);
        assert_eq!(w_of_splitting(&st("2,7,18,18,28,28")).unwrap().values(), &[-62, -61, -4, -3, 61, 90]);
        assert!(w_of_splitting(&st("3")).is_err());
    }

    #[test]
    fn splitting_scan_two_routes() {
        for k in 2..=4usize {
            for parts in small_types(k, 4) {
                let e = SplittingType::new(parts).unwrap();
                let win = w_of_splitting(&e).unwrap();
                assert_eq!(win.length(), imbalance_u(&e), "{e}");
                assert_eq!(window_from_core(&staircase(&e), k).unwrap(), win.to_tvector(), "{e}");
            }
        }
    }

    fn small_types(k: usize, spread: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0]];
        for _ in 1..k {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    let last = *p.last().unwrap();
                    (last..=spread).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn window(k: usize) -> impl Strategy<Value = AffineWindow> {
            prop::collection::vec(1..=k, 0..25).prop_map(move |word| {
                let letters: Vec<Letter> = word.into_iter().map(Letter::Gen).collect();
                AffineWindow::identity(k).apply_word(&letters)
            })
        }

        fn any_window() -> impl Strategy<Value = AffineWindow> {
            (2usize..6).prop_flat_map(window)
        }

        proptest! {
            #[test]
            fn closed_form_length_matches_truncated_count(x in any_window()) {
                prop_assert_eq!(x.length(), brute_length(&x));
            }

            #[test]
            fn windows_stay_valid(x in any_window(), y in -30i64..30) {
                prop_assert!(check_window(x.values()).is_ok());
                let k = x.k() as i64;
                prop_assert_eq!(x.evaluate(y + k), x.evaluate(y) + k);
            }

            #[test]
            fn braid_relations(x in any_window(), a in 1usize..6, b in 1usize..6) {
                let k = x.k();
                let (a, b) = ((a - 1) % k + 1, (b - 1) % k + 1);
                let (sa, sb) = (Letter::Gen(a), Letter::Gen(b));
                let diff = (a as i64 - b as i64).rem_euclid(k as i64);
                if a != b && diff != 1 && diff != k as i64 - 1 {
                    prop_assert_eq!(x.apply_word(&[sa, sb]), x.apply_word(&[sb, sa]));
                }
                if k >= 3 {
                    let next = Letter::Gen(a % k + 1);
                    prop_assert_eq!(x.apply_word(&[sa, next, sa, next, sa, next]), x.clone());
                }
            }

            #[test]
            fn descents_shorten(x in any_window()) {
                let len = x.length();
                for j in 1..=x.k() {
                    let y = x.left_multiply_generator(Letter::Gen(j)).length();
                    prop_assert!(y + 1 == len || y == len + 1);
                }
            }
        }
    }
}
