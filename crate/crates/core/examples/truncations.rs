//! Truncation table and ramification indices of the introductory filling
//! (word 4,3,1,2,1,3,4 on the staircase of (−2,0,0,2)).

use bnk::filling::check_truncations;
use bnk::{parse_word, ramification_indices, truncations, word_to_filling, SplittingType};

fn main() -> bnk::Result<()> {
    let e: SplittingType = "-2,0,0,2".parse()?;
    let f = word_to_filling(&parse_word("4,3,1,2,1,3,4")?, 4)?;
    println!("{}\n", f.render());

    let tr = truncations(&f);
    for t in 0..=tr.steps() {
        println!("T^<={t}: {:?}", tr.row(t));
    }

    let ram = ramification_indices(&f, &e)?;
    println!("\nd = {}, layers (d_j, m_j) = {:?}", ram.d, ram.layers);
    for i in ram.nodes() {
        let a: Vec<i64> = (1..=4).map(|l| ram.a(i, l)).collect();
        let b: Vec<i64> = (1..=4).map(|l| ram.b(i, l)).collect();
        println!("node {i}: a = {a:?}, b = {b:?}");
    }
    println!("\ninvariants: {:?}", check_truncations(&f, &e)?);
    Ok(())
}
