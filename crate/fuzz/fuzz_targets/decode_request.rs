#![no_main]

use hirzebruch::cli::{run, Invocation, Subcommand};
use libfuzzer_sys::fuzz_target;

// First byte picks the subcommand and surface; the rest is the stdin payload.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let subs: Vec<Subcommand> = Subcommand::ALL
        .into_iter()
        .filter(|s| *s != Subcommand::Verify)
        .collect();
    let mut inv = Invocation::new(subs[head as usize % subs.len()]);
    inv.n = u32::from(head >> 4);
    inv.depth = 2;
    inv.tower_max = 4;
    let out = run(&inv, text);
    assert!(matches!(out.exit_code, 0..=2));
    assert!(out.stdout.ends_with('\n'));
});
