//! Scans a short window at levels 1 and 9, stores the results in a JSONL
//! archive and labels the level-9 forms against the level-one form.

use modspec::maass::{classify, find_eigenvalues, Archive, ArchiveRecord, Parity, SolverConfig};

fn main() -> modspec::Result<()> {
    let dir = std::env::temp_dir().join("modspec-example");
    std::fs::create_dir_all(&dir)?;
    let archive = Archive::new(dir.join("spectrum.jsonl"));
    let _ = std::fs::remove_file(archive.path());
    let cfg = SolverConfig::default();

    let mut found = find_eigenvalues(1, 9.45, 9.6, Parity::Odd, &cfg)?;
    for parity in [Parity::Even, Parity::Odd] {
        found.extend(find_eigenvalues(9, 9.53, 9.54, parity, &cfg)?);
    }
    let context = found.clone();
    for c in &mut found {
        c.labels = classify(c, &context);
    }
    let records: Vec<ArchiveRecord> = found.iter().map(ArchiveRecord::from_candidate).collect();
    archive.append(&records)?;

    for r in archive.load()? {
        println!("level {} R={:.10} {:?} {:?}", r.level, r.r, r.parity, r.labels);
    }
    println!("archive at {}", archive.path().display());
    Ok(())
}
