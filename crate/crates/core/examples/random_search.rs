//! A seeded random search written to a resumable JSON Lines file.

use curvesing::explorer::{load_results, search_to_path, SearchConfig};

fn main() -> curvesing::Result<()> {
    let cfg = SearchConfig { samples: 12, ..SearchConfig::default() };
    let dir = std::env::temp_dir().join("curvesing-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("search.jsonl");
    search_to_path(&cfg, 7, &path, false)?;
    let (header, res) = load_results(&path)?;
    println!("seed {} support {:?}", header.seed, header.config.support);
    for e in &res.entries {
        let rho = e.rho().map_or("-".into(), |r| r.to_string());
        println!("  {:>2}: rho {rho:<6} {}", e.id, e.input);
    }
    println!("max rho {:?}, candidates {:?}", res.summary.max_rho.map(|r| r.to_string()), res.summary.candidates);
    println!("written to {}", path.display());
    Ok(())
}
