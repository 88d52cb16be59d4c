use simplegames::harness::{run_criterion, HarnessOptions};

#[test]
fn acceptance() {
    let opts = HarnessOptions::default();
    let mut failed = Vec::new();
    for id in 1..=11u8 {
        let report = run_criterion(id, &opts).expect("criterion runs");
        println!("{report}");
        for note in &report.notes {
            println!("    note: {note}");
        }
        for f in &report.failures {
            println!(
                "    failure: {}{}",
                f.what,
                f.game.as_ref().map_or(String::new(), |g| format!(" [{g}]"))
            );
        }
        if !report.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
