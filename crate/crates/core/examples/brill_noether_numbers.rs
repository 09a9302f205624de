//! ρ, ρ_k, the class coefficient of W^r_d, and the splitting types that
//! make up W^r_d on a general k-gonal curve.

use bnk::splitting::factorial;
use bnk::{bn_class_coefficient, imbalance_u, n_of_splitting, BnParams, MemoCache};

fn main() -> bnk::Result<()> {
    for p in [
        BnParams { g: 4, r: 1, d: 3, k: 3 },
        BnParams { g: 6, r: 1, d: 4, k: 3 },
        BnParams { g: 8, r: 2, d: 7, k: 4 },
    ] {
        println!("g = {}, r = {}, d = {}, k = {}: rho = {}, rho_k = {}", p.g, p.r, p.d, p.k, p.rho(), p.rho_k());
        if let Ok(c) = bn_class_coefficient(p.g, p.r, p.d) {
            println!("  class coefficient {} on theta^{}", c.coefficient, c.exponent);
        }
        for e in p.splitting_types() {
            let u = imbalance_u(&e);
            let n = n_of_splitting(&e, &mut MemoCache::new(e.k()))?;
            println!("  ({e}): dim {}, N = {n}, u! = {}", p.g - u as i64, factorial(u));
        }
    }
    Ok(())
}
