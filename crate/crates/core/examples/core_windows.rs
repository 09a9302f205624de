//! k-cores and their sorted windows: the bijection in both directions and
//! the action of the generators s_j.

use bnk::young::{apply_generator_step, core_from_window, is_k_core, u_core, window_from_core, Diagram};

fn main() -> bnk::Result<()> {
    let k = 3;
    let mut core = Diagram::empty();
    for j in [3, 2, 1, 2, 3, 1] {
        let (next, step) = apply_generator_step(&core, k, j);
        let t = window_from_core(&next, k)?;
        println!("s_{j}: {step:?} -> rows {next}, window {t}, u = {}", u_core(&next, k));
        assert_eq!(core_from_window(&t), next);
        core = next;
    }

    let not_core = Diagram::new(vec![2, 1])?;
    println!("{not_core} is a 3-core: {}", is_k_core(&not_core, 3));
    Ok(())
}
