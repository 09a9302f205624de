//! Brute-force check on a chain of elliptic curves: the ē-positive limit
//! line bundles at g = u(ē) are exactly the models read off the efficient
//! fillings, and each one gives its filling back.

use bnk::chain::a_value;
use bnk::{enumerate_efficient_fillings, enumerate_positive, extract_filling, staircase, ChainModel, SplittingType};

fn main() -> bnk::Result<()> {
    for text in ["-1,1", "-3,0,0", "-2,-2,1", "-2,0,0,2"] {
        let e: SplittingType = text.parse()?;
        let positive = enumerate_positive(&e, None)?;
        let fillings = enumerate_efficient_fillings(&staircase(&e), e.k(), None)?;
        let mut expected = fillings.iter().map(|f| ChainModel::from_filling(f, &e)).collect::<bnk::Result<Vec<_>>>()?;
        expected.sort_by(|a, b| a.states().cmp(b.states()));
        println!("({e}): {} positive models, match = {}", positive.len(), positive == expected);
        for m in &positive {
            println!("  {m} -> filling {}", extract_filling(m, &e)?);
        }
    }

    let e: SplittingType = "-2,0,0,2".parse()?;
    let m = &enumerate_positive(&e, None)?[0];
    println!("\na^i_n for {m}:");
    for i in 0..=m.g() {
        let row: Vec<i64> = (1..=4).map(|n| a_value(m, i, n)).collect();
        println!("  i = {i}: {row:?}");
    }
    Ok(())
}
