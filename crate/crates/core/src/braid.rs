//! Flip and shuffle moves on reduced words, and the graph they span.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::affine::Letter;
use crate::error::{Error, Result};
use crate::filling::{enumerate_efficient_fillings, word_to_filling, Filling};
use crate::young::Diagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Flip(usize),
    Shuffle(usize),
}

impl Move {
    pub fn tag(&self) -> String {
        match self {
            Move::Flip(i) => format!("F{i}"),
            Move::Shuffle(i) => format!("S{i}"),
        }
    }
}

impl Serialize for Move {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.tag())
    }
}

fn letters_at(word: &[Letter], i: usize, span: usize, tag: char) -> Result<Vec<i64>> {
    if i == 0 || i + span - 1 > word.len() {
        return Err(Error::UndefinedMove {
            tag,
            position: i,
            reason: format!("positions {i}..{} lie outside a word of length {}", i + span - 1, word.len()),
        });
    }
    word[i - 1..i - 1 + span]
        .iter()
        .map(|l| {
            l.residue().map(|j| j as i64).ok_or_else(|| Error::UndefinedMove {
                tag,
                position: i,
                reason: "involves a * letter".into(),
            })
        })
        .collect()
}

/// `F^i`: swaps the letters at positions `i`, `i+1` (1-based) when they
/// commute, i.e. their difference is not `±1` mod `k`.
pub fn flip_word(word: &[Letter], i: usize, k: usize) -> Result<Vec<Letter>> {
    let v = letters_at(word, i, 2, 'F')?;
    let diff = (v[0] - v[1]).rem_euclid(k as i64);
    if diff == 1 || diff == k as i64 - 1 {
        return Err(Error::UndefinedMove {
            tag: 'F',
            position: i,
            reason: format!("letters {} and {} differ by ±1 mod {k}", v[0], v[1]),
        });
    }
    let mut out = word.to_vec();
    out.swap(i - 1, i);
    Ok(out)
}

/// `S^i`: rewrites `(a, b, a)` at positions `i..i+2` as `(b, a, b)` when
/// `b ≡ a ± 1` mod `k`. Needs `k ≥ 3`.
pub fn shuffle_word(word: &[Letter], i: usize, k: usize) -> Result<Vec<Letter>> {
    let undefined = |reason: String| Error::UndefinedMove { tag: 'S', position: i, reason };
    if k < 3 {
        return Err(undefined(format!("no braid relation of length three for k = {k}")));
    }
    let v = letters_at(word, i, 3, 'S')?;
    let ki = k as i64;
    if (v[0] - v[2]).rem_euclid(ki) != 0 {
        return Err(undefined(format!("outer letters {} and {} differ", v[0], v[2])));
    }
    let diff = (v[1] - v[0]).rem_euclid(ki);
    if diff != 1 && diff != ki - 1 {
        return Err(undefined(format!("letters {} and {} are not adjacent mod {k}", v[0], v[1])));
    }
    let mut out = word.to_vec();
    out[i - 1] = word[i];
    out[i] = word[i - 1];
    out[i + 1] = word[i];
    Ok(out)
}

pub fn apply_move_word(word: &[Letter], mv: Move, k: usize) -> Result<Vec<Letter>> {
    match mv {
        Move::Flip(i) => flip_word(word, i, k),
        Move::Shuffle(i) => shuffle_word(word, i, k),
    }
}

pub fn flip(filling: &Filling, i: usize) -> Result<Filling> {
    word_to_filling(&flip_word(filling.word(), i, filling.k())?, filling.k())
}

pub fn shuffle(filling: &Filling, i: usize) -> Result<Filling> {
    word_to_filling(&shuffle_word(filling.word(), i, filling.k())?, filling.k())
}

/// Every move defined on `word`, flips first, by position.
pub fn defined_moves(word: &[Letter], k: usize) -> Vec<(Move, Vec<Letter>)> {
    let flips = (1..word.len()).map(Move::Flip);
    let shuffles = (1..word.len().saturating_sub(1)).map(Move::Shuffle);
    flips
        .chain(shuffles)
        .filter_map(|mv| apply_move_word(word, mv, k).ok().map(|w| (mv, w)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    #[serde(rename = "move")]
    pub mv: Move,
}

/// Efficient fillings joined by every defined move. Edges are undirected
/// and listed once, with `from < to`.
#[derive(Debug, Clone)]
pub struct BraidGraph {
    pub k: usize,
    pub nodes: Vec<Filling>,
    pub edges: Vec<Edge>,
}

impl BraidGraph {
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        let mut seen = vec![false; self.nodes.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !std::mem::replace(&mut seen[w], true) {
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.nodes.len()
    }

    pub fn to_json(&self) -> BraidGraphJson {
        BraidGraphJson {
            k: self.k,
            nodes: self.nodes.iter().map(|f| f.word().to_vec()).collect(),
            edges: self.edges.clone(),
            connected: self.is_connected(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidGraphJson {
    pub k: usize,
    pub nodes: Vec<Vec<Letter>>,
    pub edges: Vec<Edge>,
    pub connected: bool,
}

pub fn braid_graph(diagram: &Diagram, k: usize, limit: Option<u64>) -> Result<BraidGraph> {
    let nodes = enumerate_efficient_fillings(diagram, k, limit)?;
    let index: HashMap<&[Letter], usize> = nodes.iter().enumerate().map(|(i, f)| (f.word(), i)).collect();
    let mut edges = Vec::new();
    for (from, f) in nodes.iter().enumerate() {
        for (mv, w) in defined_moves(f.word(), k) {
            let to = *index.get(w.as_slice()).expect("moves stay within the reduced words of one element");
            if from < to {
                edges.push(Edge { from, to, mv });
            }
        }
    }
    Ok(BraidGraph { k, nodes, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filling::{parse_word, truncations};
    use crate::splitting::staircase;

    fn word(s: &str) -> Vec<Letter> {
        parse_word(s).unwrap()
    }

    #[test]
    fn flip_examples() {
        assert_eq!(flip_word(&word("1,3"), 1, 4).unwrap(), word("3,1"));
        // s_1 and s_4 are neighbours on the affine cycle when k = 4
        assert!(flip_word(&word("1,4"), 1, 4).is_err());
        assert_eq!(flip_word(&word("1,4"), 1, 5).unwrap(), word("4,1"));
        assert!(matches!(flip_word(&word("3,2,1,2,3"), 1, 3), Err(Error::UndefinedMove { tag: 'F', .. })));
        let w = word("1,3,2");
        assert_eq!(flip_word(&flip_word(&w, 1, 4).unwrap(), 1, 4).unwrap(), w);
        assert!(flip_word(&word("1,*"), 1, 4).is_err());
        assert!(flip_word(&word("1,3"), 2, 4).is_err());
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle_word(&word("3,2,1,2,3"), 2, 3).unwrap(), word("3,1,2,1,3"));
        assert_eq!(shuffle_word(&word("2,1,2"), 1, 3).unwrap(), word("1,2,1"));
        let w = word("3,2,1,2,3");
        assert_eq!(shuffle_word(&shuffle_word(&w, 2, 3).unwrap(), 2, 3).unwrap(), w);
        assert!(shuffle_word(&word("1,2,1"), 1, 2).is_err());
        assert!(shuffle_word(&word("1,3,1"), 1, 5).is_err());
        assert!(shuffle_word(&word("1,2,3"), 1, 5).is_err());
    }

    #[test]
    fn filling_moves_keep_the_element() {
        let f = word_to_filling(&word("3,2,1,2,3"), 3).unwrap();
        let g = shuffle(&f, 2).unwrap();
        assert_eq!(g.word(), word("3,1,2,1,3").as_slice());
        assert_eq!(g.shape(), f.shape());
        assert_eq!(truncations(&g).row(5), truncations(&f).row(5));
        assert!(flip(&f, 1).is_err());
    }

    #[test]
    fn graph_examples() {
        let g = braid_graph(&Diagram::new(vec![4, 2, 1, 1]).unwrap(), 3, None).unwrap();
        assert_eq!(g.nodes.len(), 2);
        assert_eq!(g.edges, vec![Edge { from: 0, to: 1, mv: Move::Shuffle(2) }]);
        assert!(g.is_connected());

        let g = braid_graph(&Diagram::empty(), 3, None).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len()), (1, 0));
        assert!(g.is_connected());

        let e = "-2,0,0,2".parse().unwrap();
        let g = braid_graph(&staircase(&e), 4, None).unwrap();
        assert_eq!(g.nodes.len(), 6);
        assert!(g.is_connected());
        let json = serde_json::to_value(g.to_json()).unwrap();
        assert_eq!(json["connected"], true);
        assert!(json["edges"][0]["move"].as_str().unwrap().starts_with(['F', 'S']));
    }

    #[test]
    fn graphs_connected_and_moves_sound() {
        for k in 2..=4usize {
            for e in crate::splitting::enumerate_splitting_types(6, 1, 6, k)
                .into_iter()
                .chain(crate::splitting::enumerate_splitting_types(6, 2, 8, k))
            {
                let d = staircase(&e);
                let g = braid_graph(&d, k, Some(1000)).unwrap();
                assert!(g.is_connected(), "{e}");
                for edge in &g.edges {
                    let (a, b) = (&g.nodes[edge.from], &g.nodes[edge.to]);
                    assert_eq!(apply_move_word(a.word(), edge.mv, k).unwrap(), b.word());
                    assert_eq!(truncations(a).row(a.len()), truncations(b).row(b.len()));
                }
            }
        }
    }
}
