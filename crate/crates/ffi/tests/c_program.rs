//! Compile and run a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "sgn_whitham.h"

int main(void) {
    SgnWave *wave = NULL;
    if (sgn_wave_new(1.0, 1.5, 2.0, 10.0, -1, &wave) != SGN_STATUS_OK) return 1;
    SgnWaveSummary s;
    if (sgn_wave_summary(wave, &s) != SGN_STATUS_OK) return 2;
    sgn_wave_free(wave);
    if (fabs(s.wavelength - 7.4163) > 5e-4) return 3;

    if (sgn_wave_new(1.0, 2.0, 1.5, 10.0, -1, &wave) != SGN_STATUS_INVALID_ARGUMENT) return 4;
    char msg[256];
    if (sgn_last_error_message(msg, sizeof msg) > sizeof msg) return 5;

    SgnEigen e;
    if (sgn_eigen(1.0, 1.5, 2.0, 10.0, -1, 0.0, &e) != SGN_STATUS_OK) return 6;
    if (!e.all_real || !e.distinct || e.n_positive != 3) return 7;

    SgnSolver *solver = NULL;
    if (sgn_solver_new_wavetrain(1.0, 1.5, 2.0, 10.0, -1, 1, 0.0, 32, 0.45, &solver) != SGN_STATUS_OK) return 8;
    if (sgn_solver_advance_to(solver, 0.1) != SGN_STATUS_OK) return 9;
    if (sgn_solver_time(solver) != 0.1) return 10;
    sgn_solver_free(solver);
    printf("L=%.6f D=%.6f\n", s.wavelength, s.phase_speed);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps/<name>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libsgn_whitham_ffi.a");
    assert!(
        lib.exists(),
        "static library not found at {}",
        lib.display()
    );

    let work = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = work.join("sgn_ffi_smoke.c");
    let bin = work.join("sgn_ffi_smoke");
    std::fs::write(&src, PROGRAM).unwrap();

    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler available");
    assert!(status.success(), "C compilation failed");

    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "C program exited with {:?}",
        out.status.code()
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("L=7.416299 D=3.168823"), "{text}");
}
