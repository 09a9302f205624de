//! The running example ē = (−2,0,0,2) with k = 4: staircase, window,
//! count, and all six efficient fillings.

use bnk::{
    enumerate_efficient_fillings, imbalance_u, n_of_splitting, staircase, w_of_splitting, MemoCache, SplittingType,
};

fn main() -> bnk::Result<()> {
    let e: SplittingType = "-2,0,0,2".parse()?;
    let gamma = staircase(&e);
    println!("staircase rows {gamma}, u = {}", imbalance_u(&e));
    println!("w(e) = ({})", w_of_splitting(&e)?);
    println!("N = {}", n_of_splitting(&e, &mut MemoCache::new(4))?);

    for f in enumerate_efficient_fillings(&gamma, 4, None)? {
        println!("\nword {f}\n{}", f.render());
    }
    Ok(())
}
