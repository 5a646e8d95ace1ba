#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fractile"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Golden invocations: arguments, with `{dir}` standing for an output
/// directory, and the files each one writes there.
pub const GOLDEN: &[(&[&str], &[&str])] = &[
    (&["validate", "gasket"], &[]),
    (&["validate", "tileset_counterexample"], &[]),
    (&["hull", "koch_nonlattice"], &[]),
    (&["tiles", "gasket", "--depth", "4", "--out", "{dir}/tiles.json", "--svg", "{dir}/tiles.svg"], &["tiles.json", "tiles.svg"]),
    (&["tiles", "pentagasket", "--r-min", "0.002"], &[]),
    (&["dims", "gasket"], &[]),
    (&["dims", "koch_nonlattice", "--window-re=-1,2", "--window-im", "30"], &[]),
    (&["zeta-eval", "pentagasket", "--s", "2.5,-4"], &[]),
    (&["tube", "gasket", "--mc", "--samples", "20000", "--seed", "7", "--eps-min", "0.01", "--out", "{dir}/tube.csv"], &["tube.csv", "tube.csv.json"]),
    (&["tube", "carpet", "--eps-min", "1e-3", "--ppd", "8"], &[]),
    (&["render", "harmonic_gasket", "--depth", "3", "--out", "{dir}/harmonic.svg"], &["harmonic.svg"]),
];

/// Runs every golden command with `threads` worker threads and returns
/// (label, exit code, bytes) for stdout and every written file.
pub fn golden_outputs(dir: &Path, threads: usize) -> Vec<(String, i32, Vec<u8>)> {
    let mut out = Vec::new();
    let d = dir.to_str().unwrap();
    for (i, (args, files)) in GOLDEN.iter().enumerate() {
        let args: Vec<String> = args.iter().map(|a| a.replace("{dir}", d)).collect();
        let o = bin()
            .args(&args)
            .env("RAYON_NUM_THREADS", threads.to_string())
            .env_remove("FRACTILE_BUDGET")
            .output()
            .unwrap();
        let code = o.status.code().unwrap_or(-1);
        out.push((format!("{i}:{}:stdout", args[0]), code, o.stdout));
        for f in files.iter() {
            let bytes = std::fs::read(dir.join(f)).unwrap_or_default();
            out.push((format!("{i}:{f}"), code, bytes));
        }
    }
    out
}
