//! Splitting types of pushforward bundles on the projective line and the
//! Brill–Noether numerics built on them.
//!
//! A splitting type `ē = (e_1 ≤ … ≤ e_k)` stands for `O(e_1) ⊕ ⋯ ⊕ O(e_k)`.
//! Everything here is a closed-form function of the parts; the staircase
//! diagram `Γ(ē)` is the bridge into the k-core combinatorics of
//! [`crate::young`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::young::Diagram;

/// A sorted integer k-tuple `e_1 ≤ … ≤ e_k` with `k ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType {
    parts: Vec<i64>,
}

impl SplittingType {
    /// Builds a splitting type, sorting the parts.
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::SplittingType("a splitting type needs at least one part".into()));
        }
        parts.sort_unstable();
        Ok(Self { parts })
    }

    /// The balanced type `(0, …, 0)` with `k` parts.
    pub fn balanced(k: usize) -> Result<Self> {
        Self::new(vec![0; k])
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Number of parts, i.e. the cover degree.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn min_part(&self) -> i64 {
        self.parts[0]
    }

    pub fn max_part(&self) -> i64 {
        self.parts[self.parts.len() - 1]
    }

    pub fn degree(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Distinct parts in *decreasing* order with their multiplicities,
    /// `(d_1, m_1), …, (d_s, m_s)` with `d_1 > ⋯ > d_s`.
    pub fn layers(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &e in self.parts.iter().rev() {
            match out.last_mut() {
                Some((d, m)) if *d == e => *m += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    /// Lexicographic layer coordinate `(j, n)` (both 1-based) of the
    /// window position `ℓ ∈ 1..=k`.
    pub fn layer_of(&self, ell: usize) -> (usize, usize) {
        assert!((1..=self.k()).contains(&ell), "position {ell} out of range");
        let mut seen = 0;
        for (j, (_, m)) in self.layers().into_iter().enumerate() {
            if ell <= seen + m {
                return (j + 1, ell - seen);
            }
            seen += m;
        }
        unreachable!("layers cover 1..=k")
    }

    /// Shifts every part by `c`; corresponds to twisting by `O(c)`.
    pub fn shifted(&self, c: i64) -> Self {
        Self { parts: self.parts.iter().map(|e| e + c).collect() }
    }

    /// True when `e_k − e_1 ≤ 1`, i.e. `u(ē) = 0`.
    pub fn is_balanced(&self) -> bool {
        self.max_part() - self.min_part() <= 1
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for SplittingType {
    type Err = Error;

    /// Parses `"-2,0,0,2"`; whitespace and surrounding parentheses or
    /// brackets are ignored, and the parts are sorted.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::SplittingType(format!("cannot parse part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl Serialize for SplittingType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SplittingType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `h⁰`, `h¹` and `χ` of `O(ē)(m)` on the projective line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub h0: u64,
    pub h1: u64,
    pub chi: i64,
}

pub fn cohomology(e: &SplittingType, m: i64) -> Cohomology {
    let mut h0 = 0u64;
    let mut h1 = 0u64;
    let mut chi = 0i64;
    for &p in e.parts() {
        let t = p + m + 1;
        chi += t;
        if t > 0 {
            h0 += t as u64;
        } else {
            h1 += (-t) as u64;
        }
    }
    Cohomology { h0, h1, chi }
}

pub fn h0(e: &SplittingType, m: i64) -> u64 {
    cohomology(e, m).h0
}

pub fn chi(e: &SplittingType, m: i64) -> i64 {
    cohomology(e, m).chi
}

/// `u(ē) = h¹(End O(ē)) = Σ_{e_i < e_j} (e_j − e_i − 1)`, the expected
/// codimension of the splitting locus.
pub fn imbalance_u(e: &SplittingType) -> u64 {
    let p = e.parts();
    let mut u = 0u64;
    for (i, &a) in p.iter().enumerate() {
        for &b in &p[i + 1..] {
            if b - a > 1 {
                u += (b - a - 1) as u64;
            }
        }
    }
    u
}

/// The range of twists `m ∈ [−e_k, −e_1 − 2]` where both `h⁰` and `h¹`
/// of `O(ē)(m)` can be nonzero. Empty for balanced types.
pub fn twist_window(e: &SplittingType) -> std::ops::RangeInclusive<i64> {
    -e.max_part()..=(-e.min_part() - 2)
}

/// The nonincreasing, finitely supported column profile `h(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyProfile {
    /// `values[n - 1] = h(n)`; trailing zeros are trimmed.
    values: Vec<u64>,
}

impl CohomologyProfile {
    pub fn new(mut values: Vec<u64>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Diagram(format!("profile {values:?} is not nonincreasing")));
        }
        while values.last() == Some(&0) {
            values.pop();
        }
        Ok(Self { values })
    }

    /// `h(n)` for `n ≥ 1`.
    pub fn get(&self, n: usize) -> u64 {
        assert!(n >= 1, "profile is indexed from 1");
        self.values.get(n - 1).copied().unwrap_or(0)
    }

    /// Number of columns with `h(n) > 0`.
    pub fn support(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// `h(n) = max{ h¹(O(ē)(m)) : h⁰(O(ē)(m)) ≥ n }`.
pub fn h_profile(e: &SplittingType) -> CohomologyProfile {
    let window: Vec<Cohomology> = twist_window(e).map(|m| cohomology(e, m)).collect();
    let support = window.iter().map(|c| c.h0).max().unwrap_or(0);
    let values = (1..=support)
        .map(|n| window.iter().filter(|c| c.h0 >= n).map(|c| c.h1).max().unwrap_or(0))
        .collect();
    CohomologyProfile::new(values).expect("h(n) is nonincreasing by construction")
}

/// The k-staircase `Γ(ē)`: column `n` holds `h(n)` boxes.
pub fn staircase(e: &SplittingType) -> Diagram {
    let profile = h_profile(e);
    let height = profile.get(1) as usize;
    let rows = (1..=height)
        .map(|r| profile.values().iter().filter(|&&h| h as usize >= r).count())
        .collect();
    Diagram::new(rows).expect("transpose of a nonincreasing profile is a diagram")
}

/// Genus, rank, degree and gonality of a Brill–Noether problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnParams {
    pub g: i64,
    pub r: i64,
    pub d: i64,
    pub k: usize,
}

impl BnParams {
    pub fn rho(&self) -> i64 {
        rho(self.g, self.r, self.d)
    }

    pub fn rho_k(&self) -> i64 {
        rho_k(self.g, self.r, self.d, self.k)
    }

    pub fn splitting_types(&self) -> Vec<SplittingType> {
        enumerate_splitting_types(self.g, self.r, self.d, self.k)
    }
}

/// Classical Brill–Noether number `g − (r+1)(g − d + r)`.
pub fn rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

/// `max_{ℓ ∈ 0..=r'} ρ(g, r−ℓ, d) − ℓk` with `r' = min(r, g−d+r−1)`;
/// only `ℓ = 0` when `r' < 0`.
pub fn rho_k(g: i64, r: i64, d: i64, k: usize) -> i64 {
    let r_prime = r.min(g - d + r - 1).max(0);
    (0..=r_prime).map(|l| rho(g, r - l, d) - l * k as i64).max().expect("ℓ = 0 is always present")
}

/// Scalar coefficient of the class `[W^r_d] = c · θ^{exponent}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCoefficient {
    pub coefficient: BigRational,
    pub exponent: u64,
}

impl ClassCoefficient {
    /// `exponent! · coefficient`, the point count when `ρ = 0`.
    pub fn point_count(&self) -> BigRational {
        BigRational::from_integer(factorial(self.exponent)) * &self.coefficient
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `∏_{α=0}^{r} α! / (g−d+r+α)!` together with the exponent `(r+1)(g−d+r)`.
pub fn bn_class_coefficient(g: i64, r: i64, d: i64) -> Result<ClassCoefficient> {
    let excess = g - d + r;
    if excess < 0 {
        return Err(Error::NegativeExponent(excess));
    }
    if r < 0 {
        return Err(Error::SplittingType(format!("rank must be nonnegative, got {r}")));
    }
    let mut c = BigRational::one();
    for alpha in 0..=r as u64 {
        c *= BigRational::new(factorial(alpha), factorial(excess as u64 + alpha));
    }
    Ok(ClassCoefficient { coefficient: c, exponent: ((r + 1) * excess) as u64 })
}

/// All splitting types contributing to `W^r_d` on a general k-gonal curve of
/// genus `g`: sorted k-tuples with `Σe = d − g + 1 − k`, `h⁰(O(ē)) ≥ r+1`
/// and `u(ē) ≤ g`, in lexicographic order.
pub fn enumerate_splitting_types(g: i64, r: i64, d: i64, k: usize) -> Vec<SplittingType> {
    assert!(k >= 1, "k must be positive");
    if g < 0 {
        return Vec::new();
    }
    let total = d - g + 1 - k as i64;
    let kk = k as i64;
    // u(ē) ≥ e_k − e_1 − 1, so the spread is at most g + 1.
    let spread = g + 1;
    let lo = total.div_euclid(kk) + i64::from(total.rem_euclid(kk) != 0) - spread;
    let hi = total.div_euclid(kk);

    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(k);
    for first in lo..=hi {
        parts.clear();
        parts.push(first);
        extend_parts(&mut parts, k, total - first, first, first + spread, &mut out);
    }
    out.into_iter()
        .filter_map(|p| SplittingType::new(p).ok())
        .filter(|e| h0(e, 0) as i64 > r && imbalance_u(e) as i64 <= g)
        .collect()
}

fn extend_parts(parts: &mut Vec<i64>, k: usize, remaining: i64, min: i64, max: i64, out: &mut Vec<Vec<i64>>) {
    let left = (k - parts.len()) as i64;
    if left == 0 {
        if remaining == 0 {
            out.push(parts.clone());
        }
        return;
    }
    for v in min..=max {
        if v * left > remaining {
            break;
        }
        if remaining - v > max * (left - 1) {
            continue;
        }
        parts.push(v);
        extend_parts(parts, k, remaining - v, v, max, out);
        parts.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> SplittingType {
        s.parse().unwrap()
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(cohomology(&st("-2,0,0,2"), 0), Cohomology { h0: 5, h1: 1, chi: 4 });
        assert_eq!(cohomology(&st("0,0,0"), -1), Cohomology { h0: 0, h1: 0, chi: 0 });
        // max-sum formula: twists -5,-3,-1,-1
        assert_eq!(cohomology(&st("-4,-2,0,0"), -2), Cohomology { h0: 0, h1: 10, chi: -10 });
    }

    #[test]
    fn parse_sorts_and_rejects_garbage() {
        assert_eq!(st("2,0,-2,0").parts(), &[-2, 0, 0, 2]);
        assert_eq!(st("(1, -1)").parts(), &[-1, 1]);
        assert!("1,,2".parse::<SplittingType>().is_err());
        assert!("".parse::<SplittingType>().is_err());
        assert_eq!(st("-2,0,0,2").to_string(), "-2,0,0,2");
    }

    #[test]
    fn imbalance_examples() {
        assert_eq!(imbalance_u(&st("-2,0,0,2")), 7);
        assert_eq!(imbalance_u(&st("0,0,0")), 0);
        assert_eq!(imbalance_u(&st("-4,-2,0,0")), 9);
        assert_eq!(imbalance_u(&st("2,7,18,18,28,28")), 180);
    }

    #[test]
    fn profile_examples() {
        assert_eq!(h_profile(&st("-4,-2,0,0")).values(), &[4, 4, 2, 2, 1, 1, 1]);
        assert_eq!(h_profile(&st("0,0,0")).support(), 0);
        let p = h_profile(&st("-2,0,0,2"));
        assert_eq!(p.values(), &[5, 2, 1, 1, 1]);
        assert_eq!(p.get(6), 0);
    }

    #[test]
    fn staircase_examples() {
        assert_eq!(staircase(&st("-2,0,0,2")).rows(), &[5, 2, 1, 1, 1]);
        assert!(staircase(&st("0,0")).is_empty());
        assert_eq!(staircase(&st("-3,0,0")).rows(), &[4, 2]);
        assert_eq!(staircase(&st("-4,-2,0,0")).rows(), &[7, 4, 2, 2]);
    }

    #[test]
    fn layers_and_coordinates() {
        let e = st("-2,0,0,2");
        assert_eq!(e.layers(), vec![(2, 1), (0, 2), (-2, 1)]);
        assert_eq!((1..=4).map(|l| e.layer_of(l)).collect::<Vec<_>>(), vec![(1, 1), (2, 1), (2, 2), (3, 1)]);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(4, 1, 3), 0);
        assert_eq!(rho_k(4, 1, 3, 3), 0);
        for g in 0..6 {
            for d in -3..8 {
                assert_eq!(rho(g, 0, d), d);
            }
        }
        // r' < 0 keeps only ℓ = 0
        assert_eq!(rho_k(2, 1, 10, 3), rho(2, 1, 10));
    }

    #[test]
    fn class_coefficient_examples() {
        let c = bn_class_coefficient(4, 1, 3).unwrap();
        assert_eq!(c.coefficient, BigRational::new(1.into(), 12.into()));
        assert_eq!(c.exponent, 4);
        assert_eq!(c.point_count(), BigRational::from_integer(2.into()));

        let c = bn_class_coefficient(5, 0, 5).unwrap();
        assert_eq!(c.coefficient, BigRational::one());
        assert_eq!(c.exponent, 0);

        let c = bn_class_coefficient(2, 0, 1).unwrap();
        assert_eq!(c.coefficient, BigRational::one());
        assert_eq!(c.exponent, 1);

        assert!(matches!(bn_class_coefficient(2, 0, 5), Err(Error::NegativeExponent(-3))));
    }

    /// Unfiltered scan over a generous box; independent of the spread bound.
    fn brute_types(g: i64, r: i64, d: i64, k: usize) -> Vec<SplittingType> {
        let total = d - g + 1 - k as i64;
        let lo = total.div_euclid(k as i64) - g - 3;
        let hi = lo + 2 * g + 8;
        let mut out = Vec::new();
        let mut cur = vec![lo; k];
        loop {
            if cur.windows(2).all(|w| w[0] <= w[1]) && cur.iter().sum::<i64>() == total {
                let e = SplittingType::new(cur.clone()).unwrap();
                if h0(&e, 0) as i64 > r && imbalance_u(&e) as i64 <= g {
                    out.push(e);
                }
            }
            let mut i = k;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if cur[i] < hi {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = lo;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn genus_four_trigonal_decomposition() {
        let types = enumerate_splitting_types(4, 1, 3, 3);
        assert_eq!(types, vec![st("-3,0,0"), st("-2,-2,1")]);
        assert_eq!(types, brute_types(4, 1, 3, 3));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for k in 2..=3 {
            for g in 0..=4 {
                for r in 0..=2 {
                    for d in 0..=(2 * g + 2) {
                        let mut fast = enumerate_splitting_types(g, r, d, k);
                        fast.sort();
                        assert_eq!(fast, brute_types(g, r, d, k), "g={g} r={r} d={d} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_membership_and_empty_case() {
        assert!(enumerate_splitting_types(7, 4, 10, 4).contains(&st("-2,0,0,2")));
        assert!(!enumerate_splitting_types(7, 5, 10, 4).contains(&st("-2,0,0,2")));
        // degree far too negative for any section
        assert!(enumerate_splitting_types(3, 0, -20, 3).is_empty());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn splitting_type() -> impl Strategy<Value = SplittingType> {
            prop::collection::vec(-6i64..6, 1..6).prop_map(|v| SplittingType::new(v).unwrap())
        }

        proptest! {
            #[test]
            fn euler_characteristic_identity(e in splitting_type(), m in -10i64..10) {
                let c = cohomology(&e, m);
                prop_assert_eq!(c.h0 as i64 - c.h1 as i64, c.chi);
                prop_assert_eq!(c.chi, e.degree() + e.k() as i64 * (m + 1));
            }

            #[test]
            fn u_is_twist_invariant(e in splitting_type(), c in -5i64..5) {
                prop_assert_eq!(imbalance_u(&e), imbalance_u(&e.shifted(c)));
            }

            #[test]
            fn profile_is_nonincreasing_and_finite(e in splitting_type()) {
                let p = h_profile(&e);
                prop_assert!(p.values().windows(2).all(|w| w[0] >= w[1]));
                prop_assert_eq!(p.get(p.support() + 1), 0);
            }
        }
    }
}
