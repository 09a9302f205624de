//! Persisting the word-count memo table and reusing it.

use bnk::{cache_load, cache_save, n_of_splitting, MemoCache, SplittingType};

fn main() -> bnk::Result<()> {
    let dir = std::env::temp_dir().join(format!("bnk-memo-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|source| bnk::Error::Io { path: dir.clone(), source })?;
    let path = dir.join("k6.json");

    let e: SplittingType = "2,7,18,18,28,28".parse()?;
    let mut cold = MemoCache::new(6);
    let n = n_of_splitting(&e, &mut cold)?;
    cache_save(&cold, &path)?;
    println!("cold: {} new states, saved to {}", cold.new_states(), path.display());

    let mut warm = cache_load(&path, Some(6))?;
    assert_eq!(n_of_splitting(&e, &mut warm)?, n);
    println!("warm: {} new states", warm.new_states());

    match cache_load(&path, Some(4)) {
        Ok(_) => println!("unexpected: loaded with the wrong k"),
        Err(err) => println!("wrong k: {err}"),
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}
