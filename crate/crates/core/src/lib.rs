//! Exact combinatorics of splitting loci on k-gonal curves.
//!
//! Counts `N(ē)` as the number of reduced words of an affine permutation,
//! enumerates the corresponding efficient fillings of k-staircase diagrams,
//! checks braid-move connectivity, and compares everything against a
//! brute-force model of limit line bundles on chains of elliptic curves.
//!
//! ```
//! use bnk::{n_of_splitting, MemoCache, SplittingType};
//!
//! let e: SplittingType = "-2,0,0,2".parse().unwrap();
//! let n = n_of_splitting(&e, &mut MemoCache::new(e.k())).unwrap();
//! assert_eq!(n.to_string(), "6");
//! ```

pub mod affine;
pub mod braid;
pub mod chain;
pub mod cli;
pub mod counting;
pub mod error;
pub mod filling;
pub mod splitting;
pub mod young;

pub use affine::{w_of_splitting, AffineWindow, Letter};
pub use braid::{braid_graph, flip, shuffle, BraidGraph, Move};
pub use chain::{
    a_value, enumerate_positive, extract_filling, h0_chain, is_e_positive, ChainModel, ComponentState,
    DegreeDistribution,
};
pub use counting::{cache_load, cache_save, count_reduced_words, count_window, n_of_splitting, MemoCache};
pub use error::{Error, Result};
pub use filling::{
    enumerate_efficient_fillings, parse_word, ramification_indices, residue_of_symbol, truncations, word_to_filling,
    Filling, Truncations,
};
pub use splitting::{
    bn_class_coefficient, cohomology, enumerate_splitting_types, h_profile, imbalance_u, rho, rho_k, staircase,
    BnParams, SplittingType,
};
pub use young::{core_from_window, is_k_core, window_from_core, Diagram, TVector};
