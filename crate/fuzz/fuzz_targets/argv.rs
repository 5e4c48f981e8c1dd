#![no_main]

use libfuzzer_sys::fuzz_target;

// Arguments are NUL-separated. Large windows are capped so a run stays
// bounded; the parser itself still sees every other byte.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let args: Vec<&str> = s.split('\0').collect();
    if args.len() > 24 || args.iter().any(|a| a.len() > 64) {
        return;
    }
    let heavy = ["--qmax", "--depth", "--e-max", "--n-max", "--m-max", "--exp-max", "--count"];
    for w in args.windows(2) {
        if heavy.contains(&w[0]) && w[1].len() > 1 {
            return;
        }
    }
    let out = wmin_cli::run(std::iter::once("wmin").chain(args.iter().copied()));
    assert!(matches!(out.code, 0..=2));
    if out.code != 0 {
        assert!(out.stdout.is_empty());
    }
});
