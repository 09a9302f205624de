//! Brute-force model of limit line bundles on a chain of `g` elliptic
//! curves, used to cross-check the tableau side independently.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::Letter;
use crate::error::{Error, Result};
use crate::filling::Filling;
use crate::splitting::{chi, h0, h_profile, imbalance_u, SplittingType};

/// Component `i` carries `O(c·p^{i−1} + (d−c)·p^i)` with `p^{i−1} − p^i`
/// of order exactly `k` (`Special(c)`, `c` mod `k`), or a bundle with no
/// trivial degree-0 twist (`Generic`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentState {
    Special(usize),
    Generic,
}

impl fmt::Display for ComponentState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentState::Special(c) => write!(f, "c:{c}"),
            ComponentState::Generic => f.write_str("generic"),
        }
    }
}

impl FromStr for ComponentState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "generic" {
            return Ok(ComponentState::Generic);
        }
        s.strip_prefix("c:")
            .and_then(|c| c.parse().ok())
            .map(ComponentState::Special)
            .ok_or_else(|| Error::ChainModel(format!("bad component state {s:?}")))
    }
}

impl Serialize for ComponentState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ComponentState {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ChainModelJson")]
pub struct ChainModel {
    k: usize,
    g: usize,
    d: i64,
    states: Vec<ComponentState>,
}

#[derive(Deserialize)]
struct ChainModelJson {
    k: usize,
    g: usize,
    d: i64,
    states: Vec<ComponentState>,
}

impl TryFrom<ChainModelJson> for ChainModel {
    type Error = Error;

    fn try_from(j: ChainModelJson) -> Result<Self> {
        let m = ChainModel::new(j.k, j.d, j.states)?;
        if m.g != j.g {
            return Err(Error::ChainModel(format!("g = {} but {} states", j.g, m.g)));
        }
        Ok(m)
    }
}

impl ChainModel {
    pub fn new(k: usize, d: i64, states: Vec<ComponentState>) -> Result<Self> {
        if k < 2 {
            return Err(Error::ChainModel(format!("torsion order must be at least 2, got {k}")));
        }
        if let Some(ComponentState::Special(c)) = states.iter().find(|s| matches!(s, ComponentState::Special(c) if *c >= k)) {
            return Err(Error::ChainModel(format!("residue {c} is not reduced mod {k}")));
        }
        Ok(Self { k, g: states.len(), d, states })
    }

    /// The `W^T` model: `c_i ≡ T[i] + i − 1`, generic where `T[i] = *`.
    pub fn from_filling(filling: &Filling, e: &SplittingType) -> Result<Self> {
        let g = filling.len();
        let k = filling.k();
        let states = filling
            .word()
            .iter()
            .enumerate()
            .map(|(i, l)| match l {
                Letter::Gen(j) => ComponentState::Special((j + i) % k),
                Letter::Identity => ComponentState::Generic,
            })
            .collect();
        ChainModel::new(k, expected_degree(e, g), states)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn states(&self) -> &[ComponentState] {
        &self.states
    }

    /// Residues of an all-special model.
    pub fn residues(&self) -> Option<Vec<usize>> {
        self.states
            .iter()
            .map(|s| match s {
                ComponentState::Special(c) => Some(*c),
                ComponentState::Generic => None,
            })
            .collect()
    }
}

impl fmt::Display for ChainModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let states: Vec<String> = self.states.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", states.join(" "))
    }
}

/// `d = g − 1 + χ(O(ē))`.
pub fn expected_degree(e: &SplittingType, g: usize) -> i64 {
    g as i64 - 1 + chi(e, 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDistribution(Vec<i64>);

impl DegreeDistribution {
    pub fn new(degrees: Vec<i64>, total: i64) -> Result<Self> {
        let found = degrees.iter().sum();
        if found != total {
            return Err(Error::DistributionSum { expected: total, found });
        }
        Ok(Self(degrees))
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// Section data of one component bundle `O(x·p + y·q)` of degree `deg`.
#[derive(Debug, Clone, Copy)]
struct Local {
    h0: i64,
    /// some section is nonzero at `p`
    at_p: bool,
    /// some section is nonzero at `q`
    at_q: bool,
    /// some section vanishing at `p` is nonzero at `q`
    at_q_given_p: bool,
}

fn local_h0(state: ComponentState, k: usize, x: i64, deg: i64) -> i64 {
    match deg {
        d if d >= 1 => d,
        0 => match state {
            ComponentState::Special(_) => i64::from(x.rem_euclid(k as i64) == 0),
            ComponentState::Generic => 0,
        },
        _ => 0,
    }
}

fn local(state: ComponentState, k: usize, x: i64, deg: i64) -> Local {
    let h = local_h0(state, k, x, deg);
    let hp = local_h0(state, k, x - 1, deg - 1);
    let hq = local_h0(state, k, x, deg - 1);
    let hpq = local_h0(state, k, x - 1, deg - 2);
    Local { h0: h, at_p: h > hp, at_q: h > hq, at_q_given_p: hp > hpq }
}

/// `x` for component `i` given the degree already placed on earlier ones.
fn twist_coefficient(state: ComponentState, before: i64) -> i64 {
    match state {
        ComponentState::Special(c) => c as i64 - before,
        ComponentState::Generic => 0,
    }
}

/// Folds one component into `(h⁰ so far, some section nonzero at the last node)`.
fn glue(acc: Option<(i64, bool)>, loc: Local) -> (i64, bool) {
    match acc {
        None => (loc.h0, loc.at_q),
        Some((dim, open)) => {
            let lost = i64::from(open || loc.at_p);
            (dim + loc.h0 - lost, if open { loc.at_q } else { loc.at_q_given_p })
        }
    }
}

/// `h⁰` of the limit bundle with distribution `dist`. The total must be
/// `d + mk` for some twist `m`.
pub fn h0_chain(model: &ChainModel, dist: &DegreeDistribution) -> Result<u64> {
    let total = dist.total();
    if dist.degrees().len() != model.g {
        return Err(Error::ChainModel(format!("{} degrees for {} components", dist.degrees().len(), model.g)));
    }
    if (total - model.d).rem_euclid(model.k as i64) != 0 {
        return Err(Error::DistributionSum { expected: model.d, found: total });
    }
    Ok(h0_prefix(model, dist.degrees()))
}

fn h0_prefix(model: &ChainModel, degrees: &[i64]) -> u64 {
    let mut acc = None;
    let mut before = 0;
    for (&state, &deg) in model.states.iter().zip(degrees) {
        acc = Some(glue(acc, local(state, model.k, twist_coefficient(state, before), deg)));
        before += deg;
    }
    acc.map_or(0, |(dim, _)| dim.max(0) as u64)
}

/// Minimum of `h⁰(X^{≤i})` over distributions of `total` on the first `i`
/// components, each of degree at least −1.
pub fn min_h0_prefix(model: &ChainModel, i: usize, total: i64) -> u64 {
    let i_len = i as i64;
    if i == 0 || total < -i_len {
        return 0;
    }
    let mut layer: HashMap<(i64, bool), i64> = HashMap::new();
    for (idx, &state) in model.states[..i].iter().enumerate() {
        let remaining = i_len - idx as i64 - 1;
        let mut next: HashMap<(i64, bool), i64> = HashMap::new();
        let mut relax = |key: (i64, bool), dim: i64| {
            next.entry(key).and_modify(|v| *v = (*v).min(dim)).or_insert(dim);
        };
        let mut step = |before: i64, acc: Option<(i64, bool)>| {
            for deg in -1..=total - before + remaining {
                let loc = local(state, model.k, twist_coefficient(state, before), deg);
                let (dim, open) = glue(acc, loc);
                relax((before + deg, open), dim);
            }
        };
        if idx == 0 {
            step(0, None);
        } else {
            for (&(before, open), &dim) in &layer {
                step(before, Some((dim, open)));
            }
        }
        layer = next;
    }
    layer
        .iter()
        .filter(|&(&(s, _), _)| s == total)
        .map(|(_, &dim)| dim.max(0) as u64)
        .min()
        .expect("a distribution with all degrees ≥ −1 exists")
}

/// Minimum `h⁰` over all distributions of `total` on the whole chain.
pub fn min_h0(model: &ChainModel, total: i64) -> u64 {
    min_h0_prefix(model, model.g, total)
}

/// `a^i_n`.
pub fn a_value(model: &ChainModel, i: usize, n: usize) -> i64 {
    assert!(n >= 1 && i <= model.g);
    let n_i = n as i64;
    if i == 0 {
        return n_i - 1;
    }
    if i < model.g {
        return (n_i - 1..=n_i + i as i64 - 1)
            .find(|&alpha| min_h0_prefix(model, i, alpha) >= n as u64)
            .expect("the Euler bound is met at n + i − 1");
    }
    let (d, k, g) = (model.d, model.k as i64, model.g as i64);
    let mut best: Option<i64> = None;
    let mut m = (-d).div_euclid(k) + i64::from((-d).rem_euclid(k) != 0);
    loop {
        let total = d + m * k;
        let h = min_h0(model, total) as i64;
        if h >= n_i {
            let candidate = total - h + n_i;
            best = Some(best.map_or(candidate, |b| b.min(candidate)));
            if total >= g {
                break;
            }
        }
        m += 1;
    }
    best.expect("loop ends with a candidate")
}

/// `f_n(i) = i + n − 1 − a^i_n`.
pub fn f_value(model: &ChainModel, i: usize, n: usize) -> i64 {
    (i + n) as i64 - 1 - a_value(model, i, n)
}

/// For every `m` in `[−e_k, −e_1 − 2]`, every distribution of `d + mk`
/// has `h⁰ ≥ h⁰(O(ē)(m))`.
pub fn is_e_positive(model: &ChainModel, e: &SplittingType) -> bool {
    if model.k != e.k() || model.d != expected_degree(e, model.g) {
        return false;
    }
    let k = model.k as i64;
    (-e.max_part()..=-e.min_part() - 2).all(|m| min_h0(model, model.d + m * k) >= h0(e, m))
}

/// Places `min{i : f_c(i) = r}` in box `(r, c)` of `staircase(ē)`.
pub fn extract_filling(model: &ChainModel, e: &SplittingType) -> Result<Filling> {
    if model.k != e.k() {
        return Err(Error::ChainModel(format!("model has k = {}, splitting type has k = {}", model.k, e.k())));
    }
    let profile = h_profile(e);
    let mut boxes = BTreeMap::new();
    for c in 1..=profile.support() {
        let height = profile.get(c) as i64;
        let f: Vec<i64> = (0..=model.g).map(|i| f_value(model, i, c)).collect();
        for r in 1..=height {
            let i = f.iter().position(|&v| v == r).ok_or_else(|| {
                Error::NotPositive(format!("f_{c} reaches {} < h({c}) = {height}", f[model.g]))
            })?;
            boxes.insert((r as usize, c), i);
        }
    }
    Filling::from_boxes(model.k, model.g, boxes)
        .map_err(|err| Error::ChainModel(format!("extracted tableau is not an efficient filling: {err}")))
}

/// All-special models on `g = u(ē)` components that are ē-positive, in
/// lexicographic order of `(c_1, …, c_g)`.
pub fn enumerate_positive(e: &SplittingType, limit: Option<u64>) -> Result<Vec<ChainModel>> {
    let k = e.k();
    if k < 2 {
        return Err(Error::SplittingType(format!("need k ≥ 2 parts, got {e}")));
    }
    let g = imbalance_u(e) as usize;
    let size = (k as u64).checked_pow(g as u32);
    if let Some(limit) = limit {
        if size.is_none_or(|s| s > limit) {
            return Err(Error::ResourceLimit { what: "chain models", needed: format!("{k}^{g}"), limit });
        }
    }
    let size = size.ok_or_else(|| Error::ResourceLimit {
        what: "chain models",
        needed: format!("{k}^{g}"),
        limit: u64::MAX,
    })?;
    let d = expected_degree(e, g);
    let found: Vec<ChainModel> = (0..size)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut states = vec![ComponentState::Generic; g];
            for slot in states.iter_mut().rev() {
                *slot = ComponentState::Special((code % k as u64) as usize);
                code /= k as u64;
            }
            let model = ChainModel { k, g, d, states };
            is_e_positive(&model, e).then_some(model)
        })
        .collect();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filling::{enumerate_efficient_fillings, parse_word, word_to_filling};
    use crate::splitting::staircase;
    use proptest::prelude::*;

    fn st(s: &str) -> SplittingType {
        s.parse().unwrap()
    }

    fn special(cs: &[usize], k: usize, d: i64) -> ChainModel {
        ChainModel::new(k, d, cs.iter().map(|&c| ComponentState::Special(c)).collect()).unwrap()
    }

    fn distributions(g: usize, total: i64, lo: i64) -> Vec<Vec<i64>> {
        if g == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        if g == 1 {
            return if total >= lo { vec![vec![total]] } else { vec![] };
        }
        (lo..=total - lo * (g as i64 - 1))
            .flat_map(|a| {
                distributions(g - 1, total - a, lo).into_iter().map(move |mut rest| {
                    rest.insert(0, a);
                    rest
                })
            })
            .collect()
    }

    fn brute_min(model: &ChainModel, i: usize, total: i64, lo: i64) -> u64 {
        distributions(i, total, lo).iter().map(|d| h0_prefix(model, d)).min().unwrap()
    }

    fn intro() -> Filling {
        word_to_filling(&parse_word("4,3,1,2,1,3,4").unwrap(), 4).unwrap()
    }

    #[test]
    fn h0_examples() {
        let m = special(&[1, 3, 0], 4, 5);
        let dist = DegreeDistribution::new(vec![2, 1, 2], 5).unwrap();
        assert_eq!(h0_chain(&m, &dist).unwrap(), 5 - 2);

        let trivial = special(&[0, 0], 3, 0);
        assert_eq!(h0_chain(&trivial, &DegreeDistribution::new(vec![0, 0], 0).unwrap()).unwrap(), 1);
        let generic = ChainModel::new(3, 0, vec![ComponentState::Generic; 2]).unwrap();
        assert_eq!(h0_chain(&generic, &DegreeDistribution::new(vec![0, 0], 0).unwrap()).unwrap(), 0);

        assert!(matches!(DegreeDistribution::new(vec![1, 1], 3), Err(Error::DistributionSum { .. })));
        let off = DegreeDistribution::new(vec![1, 0], 1).unwrap();
        assert!(matches!(h0_chain(&trivial, &off), Err(Error::DistributionSum { .. })));
    }

    #[test]
    fn dp_matches_brute_force() {
        let models = [
            special(&[0, 1, 2], 3, 2),
            special(&[1, 1, 0, 2], 4, 3),
            ChainModel::new(2, 1, vec![ComponentState::Special(1), ComponentState::Generic, ComponentState::Special(0)])
                .unwrap(),
            special(&[0, 2, 1, 1], 3, 0),
            intro_model(),
        ];
        for m in &models {
            for i in 1..=m.g().min(5) {
                for total in -(i as i64)..=8 {
                    let dp = min_h0_prefix(m, i, total);
                    assert_eq!(dp, brute_min(m, i, total, -1), "{m} i={i} total={total}");
                    if i <= 3 {
                        assert_eq!(dp, brute_min(m, i, total, -3), "{m} i={i} total={total} wide");
                    }
                }
            }
        }
    }

    fn intro_model() -> ChainModel {
        ChainModel::from_filling(&intro(), &st("-2,0,0,2")).unwrap()
    }

    #[test]
    fn w_t_model_of_intro_filling() {
        let m = intro_model();
        assert_eq!(m.residues().unwrap(), vec![0, 0, 3, 1, 1, 0, 2]);
        assert_eq!(m.d(), 10);
        assert!(is_e_positive(&m, &st("-2,0,0,2")));
        assert_eq!(extract_filling(&m, &st("-2,0,0,2")).unwrap(), intro());
    }

    #[test]
    fn shifted_residue_is_not_positive() {
        let e = st("-2,0,0,2");
        let base = intro_model().residues().unwrap();
        for pos in 0..base.len() {
            let mut cs = base.clone();
            cs[pos] = (cs[pos] + 1) % 4;
            assert!(!is_e_positive(&special(&cs, 4, 10), &e), "position {pos}");
        }
    }

    #[test]
    fn a_value_examples() {
        let m = special(&[0], 2, 2);
        assert_eq!(a_value(&m, 1, 1), 0);
        let m = intro_model();
        for n in 1..6 {
            assert_eq!(a_value(&m, 0, n), n as i64 - 1);
        }
    }

    #[test]
    fn positive_enumeration_examples() {
        let one = enumerate_positive(&st("-1,1"), None).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].residues().unwrap(), vec![0]);

        assert_eq!(enumerate_positive(&st("-3,0,0"), None).unwrap()[0].residues().unwrap(), vec![0, 2, 1, 0]);
        assert_eq!(enumerate_positive(&st("-2,-2,1"), None).unwrap().len(), 1);

        let balanced = enumerate_positive(&st("0,0,1"), None).unwrap();
        assert_eq!(balanced.len(), 1);
        assert_eq!(balanced[0].g(), 0);

        assert!(enumerate_positive(&st("-2,0,0,2"), Some(100)).unwrap_err().is_resource_limit());
    }

    #[test]
    fn intro_oracle_equivalence() {
        let e = st("-2,0,0,2");
        let models = enumerate_positive(&e, None).unwrap();
        assert_eq!(models.len(), 6);
        let fillings = enumerate_efficient_fillings(&staircase(&e), 4, None).unwrap();
        let mut expected: Vec<ChainModel> = fillings.iter().map(|f| ChainModel::from_filling(f, &e).unwrap()).collect();
        expected.sort_by(|a, b| a.states().cmp(b.states()));
        assert_eq!(models, expected);
        for m in &models {
            let f = extract_filling(m, &e).unwrap();
            assert!(fillings.contains(&f));
            assert_eq!(&ChainModel::from_filling(&f, &e).unwrap(), m);
        }
    }

    #[test]
    fn balanced_generic_models() {
        for (e, g) in [("0,0,1", 3), ("1,1", 2), ("2,2,3,3", 4)] {
            let e = st(e);
            let m = ChainModel::new(e.k(), expected_degree(&e, g), vec![ComponentState::Generic; g]).unwrap();
            assert!(is_e_positive(&m, &e));
            let f = extract_filling(&m, &e).unwrap();
            assert!(f.shape().is_empty());
            assert_eq!(f.len(), g);
        }
    }

    #[test]
    fn json_shape() {
        let m = ChainModel::new(3, 4, vec![ComponentState::Special(2), ComponentState::Generic]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"k":3,"g":2,"d":4,"states":["c:2","generic"]}"#);
        assert_eq!(serde_json::from_str::<ChainModel>(&text).unwrap(), m);
        assert!(serde_json::from_str::<ChainModel>(r#"{"k":3,"g":2,"d":4,"states":["c:3","generic"]}"#).is_err());
        assert!(serde_json::from_str::<ChainModel>(r#"{"k":3,"g":3,"d":4,"states":["c:1"]}"#).is_err());
    }

    fn model_strategy() -> impl Strategy<Value = ChainModel> {
        (2usize..5, 1usize..5, -2i64..8).prop_flat_map(|(k, g, d)| {
            prop::collection::vec(prop_oneof![(0..k).prop_map(ComponentState::Special), Just(ComponentState::Generic)], g)
                .prop_map(move |states| ChainModel::new(k, d, states).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn a_values_monotone(m in model_strategy()) {
            for i in 0..=m.g() {
                for n in 1..5 {
                    let a = a_value(&m, i, n);
                    if n > 1 {
                        prop_assert!(a > a_value(&m, i, n - 1), "{} i={} n={}", m, i, n);
                    }
                    if i > 0 {
                        prop_assert!(a >= a_value(&m, i - 1, n), "{} i={} n={}", m, i, n);
                    }
                }
            }
        }

        #[test]
        fn euler_bound(m in model_strategy(), shift in -1i64..3) {
            let total = m.d() + shift * m.k() as i64;
            for dist in distributions(m.g(), total, -1) {
                let dist = DegreeDistribution::new(dist, total).unwrap();
                let h = h0_chain(&m, &dist).unwrap() as i64;
                prop_assert!(h > total - m.g() as i64);
            }
        }
    }
}
