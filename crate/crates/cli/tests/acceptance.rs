//! CLI acceptance: repeated runs with a fixed configuration must produce
//! byte-identical data files and sidecars.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"))
        .join("acceptance")
        .join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(dir: &Path, args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cohstate"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!(
            "{args:?} exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        ))
    }
}

const RUNS: &[&[&str]] = &[
    &["verify", "--output", "verify.json", "--max-degree", "12"],
    &[
        "cs-eval",
        "--potential",
        "morse",
        "--beta",
        "1.5",
        "--lambda",
        "3",
    ],
    &[
        "cs-eval",
        "--potential",
        "pt",
        "--gamma",
        "2,1",
        "--format",
        "json",
    ],
    &[
        "weights",
        "--potential",
        "spt",
        "--gamma",
        "10",
        "--rho",
        "2",
        "--nmax",
        "20",
    ],
    &[
        "autocorr",
        "--potential",
        "pt",
        "--gamma",
        "10",
        "--nmax",
        "20",
    ],
    &[
        "carpet",
        "--potential",
        "spt",
        "--rho",
        "2",
        "--gamma",
        "10",
        "--nmax",
        "20",
    ],
    &[
        "carpet",
        "--nmax",
        "20",
        "--xpoints",
        "16",
        "--tpoints",
        "9",
        "--format",
        "json",
    ],
];

fn determinism() -> Result<usize, String> {
    let (a, b) = (scratch("a"), scratch("b"));
    for args in RUNS {
        run(&a, args)?;
        run(&b, args)?;
    }
    let mut files: Vec<_> = fs::read_dir(&a)
        .map_err(|e| e.to_string())?
        .map(|e| e.map(|e| e.file_name()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    files.sort();
    if files.len() != 2 * RUNS.len() {
        return Err(format!(
            "expected {} files, found {}",
            2 * RUNS.len(),
            files.len()
        ));
    }
    for f in &files {
        let x = fs::read(a.join(f)).map_err(|e| e.to_string())?;
        let y = fs::read(b.join(f)).map_err(|e| e.to_string())?;
        if x != y {
            return Err(format!("{} differs between runs", f.to_string_lossy()));
        }
    }
    Ok(files.len())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let result = determinism();
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(n) => {
            println!(
                "PASS criterion 10 (CLI determinism): {n} outputs byte-identical across two runs of {} commands [{secs:.2} s]",
                RUNS.len()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("FAIL criterion 10 (CLI determinism): {e} [{secs:.2} s]");
            ExitCode::FAILURE
        }
    }
}
