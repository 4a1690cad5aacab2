//! Runs every acceptance criterion and prints one line per criterion.

use std::io::Write;

#[test]
fn acceptance_criteria() {
    let outcomes = lch::acceptance::run_all();
    // Written to the handle directly so the lines show without --nocapture.
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for o in &outcomes {
        writeln!(out, "{}", o.line()).unwrap();
    }
    out.flush().unwrap();
    assert_eq!(outcomes.len(), 11);
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
