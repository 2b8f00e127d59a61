//! Compiles and runs a small C program against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "qseries.h"

int main(void) {
    QsContext *ctx = NULL;
    QsComplex q = {0.5, 0.0}, a = {0.5, 0.0};
    if (qs_context_new(q, 0.0, 0, &ctx) != QS_STATUS_OK) return 10;
    QsValue v;
    if (qs_qpoch(ctx, a, 3, &v) != QS_STATUS_OK) return 11;
    if (v.value.re != 0.328125 || v.terms != 3) return 12;
    QsComplex bad = {1.5, 0.0};
    QsContext *none = NULL;
    if (qs_context_new(bad, 0.0, 0, &none) != QS_STATUS_INVALID_ARGUMENT) return 13;
    if (strlen(qs_last_error()) == 0) return 14;
    qs_context_free(ctx);
    QsReport *rep = NULL;
    if (qs_verify("q-binomial", 5, 42, 1e-9, NULL, &rep) != QS_STATUS_OK) return 15;
    if (qs_report_failed(rep)) return 16;
    qs_report_free(rep);
    printf("ok\n");
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps/
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libqseries_ffi.a");
    let compiler = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&compiler).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("qseries-ffi-c-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let bin = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(&compiler)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
    let _ = std::fs::remove_dir_all(&dir);
}
