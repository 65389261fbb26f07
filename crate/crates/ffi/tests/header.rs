//! The generated header, and a C program linked against the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/lxebkit.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for sym in [
        "typedef struct LxebState LxebState;",
        "typedef struct LxebUnitary LxebUnitary;",
        "LXEB_STATUS_GUARD = 3",
        "lxeb_last_error(void)",
        "lxeb_string_free(char *s)",
        "lxeb_state_from_json(",
        "lxeb_swap_expectation(",
        "lxeb_n_particle_norm(",
        "lxeb_ref_general(",
        "lxeb_ref_bs(",
        "lxeb_ref_sbs(",
        "lxeb_ref_gbs_uniform(",
        "lxeb_ac_bs(",
        "lxeb_ac_sbs(",
        "lxeb_ac_gbs(",
        "lxeb_hunter_jones(",
        "lxeb_c_coeff(",
        "lxeb_unitary_haar(",
        "lxeb_bs_probability(",
        "lxeb_permanent(",
        "lxeb_experiment(",
    ] {
        assert!(text.contains(sym), "header lacks {sym}");
    }
    assert!(!text.contains("ProductState"));
}

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "lxebkit.h"

int main(void) {
    double x = 0.0;
    char *exact = NULL;
    if (lxeb_ref_bs(2, 2, &x, &exact) != LXEB_STATUS_OK) return 1;
    if (strcmp(exact, "7/15") != 0) return 2;
    lxeb_string_free(exact);
    if (lxeb_ref_bs(2, 3, &x, NULL) != LXEB_STATUS_VALIDATION) return 3;
    if (lxeb_last_error() == NULL) return 4;
    LxebState *s = NULL;
    const char *doc = "{\"modes\": [{\"kind\": \"fock\", \"n\": 1}, {\"kind\": \"fock\", \"n\": 1}]}";
    if (lxeb_state_from_json(doc, 2, &s) != LXEB_STATUS_OK) return 5;
    if (lxeb_ref_general(s, 2, &x) != LXEB_STATUS_OK) return 6;
    lxeb_state_free(s);
    printf("%.17g\n", x);
    return 0;
}
"#;

fn lib_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let lib = lib_dir().join("liblxebkit_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = header().parent().unwrap().to_path_buf();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let x: f64 = String::from_utf8(out.stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((x - 7.0 / 15.0).abs() < 1e-15);
}
