//! N(ē) for ē = (2,7,18,18,28,28): a 68-digit count of reduced words,
//! computed exactly by the memoized corner recursion.

use std::time::Instant;

use bnk::{imbalance_u, n_of_splitting, MemoCache, SplittingType};

fn main() -> bnk::Result<()> {
    let e: SplittingType = "2,7,18,18,28,28".parse()?;
    let mut cache = MemoCache::new(e.k());
    let start = Instant::now();
    let n = n_of_splitting(&e, &mut cache)?;
    println!("e = ({e}), u = {}", imbalance_u(&e));
    println!("N = {n}");
    println!("{} digits, {} memo states, {:.2?}", n.to_string().len(), cache.len(), start.elapsed());
    Ok(())
}
