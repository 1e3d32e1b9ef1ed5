use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use golab_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { golab_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(golab_last_error_message()) }.to_str().unwrap().to_string()
}

#[test]
fn root_system_round_trip() {
    let mut rs = ptr::null_mut();
    let t = CString::new("B").unwrap();
    assert_eq!(unsafe { golab_rootsys_new(t.as_ptr(), 3, &mut rs) }, GolabError::Ok);
    let mut n = 0;
    assert_eq!(unsafe { golab_rootsys_num_positive(rs, &mut n) }, GolabError::Ok);
    assert_eq!(n, 9);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { golab_rootsys_to_json(rs, &mut json) }, GolabError::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["num_positive"], 9);

    let painted = [3u32];
    let mut flag = ptr::null_mut();
    assert_eq!(unsafe { golab_flag_describe_json(rs, painted.as_ptr(), 1, &mut flag) }, GolabError::Ok);
    let f: serde_json::Value = serde_json::from_str(&take_string(flag)).unwrap();
    assert_eq!(f["rk_plus"], serde_json::json!([[1, 0, 0], [0, 1, 0], [1, 1, 0]]));

    let bad = [7u32];
    assert_eq!(unsafe { golab_flag_describe_json(rs, bad.as_ptr(), 1, &mut flag) }, GolabError::InvalidInput);
    assert!(last_error().contains("out of range"));
    unsafe { golab_rootsys_free(rs) };
}

#[test]
fn invalid_inputs() {
    let mut rs = ptr::null_mut();
    let d = CString::new("D").unwrap();
    assert_eq!(unsafe { golab_rootsys_new(d.as_ptr(), 2, &mut rs) }, GolabError::InvalidInput);
    assert!(rs.is_null());
    assert!(last_error().contains("invalid rank"));
    assert_eq!(unsafe { golab_rootsys_new(ptr::null(), 2, &mut rs) }, GolabError::NullPointer);
    let mut n = 0;
    assert_eq!(unsafe { golab_rootsys_num_positive(ptr::null(), &mut n) }, GolabError::NullPointer);
    let junk = CString::new("factors = [").unwrap();
    let mut sp = ptr::null_mut();
    assert_eq!(unsafe { golab_space_from_toml(junk.as_ptr(), &mut sp) }, GolabError::InvalidInput);
    let neg = CString::new("torus = [[1]]\n[[factors]]\ntype = \"A\"\nrank = 1\n[metric]\nmu = [-1]\n").unwrap();
    assert_eq!(unsafe { golab_space_from_toml(neg.as_ptr(), &mut sp) }, GolabError::InvalidMetric);
    unsafe { golab_space_free(ptr::null_mut()) };
}

#[test]
fn space_checks() {
    let cfg = CString::new(
        "torus = [[1, 0], [0, 1]]\n[[factors]]\ntype = \"A\"\nrank = 2\n[metric]\nmatrix = [[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,2,0,0,0],[0,0,0,2,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]]\n",
    )
    .unwrap();
    let mut sp = ptr::null_mut();
    assert_eq!(unsafe { golab_space_from_toml(cfg.as_ptr(), &mut sp) }, GolabError::Ok);
    let mut dim = 0;
    assert_eq!(unsafe { golab_space_dim_m(sp, &mut dim) }, GolabError::Ok);
    assert_eq!(dim, 6);
    for which in [GolabCheck::Go, GolabCheck::Normal, GolabCheck::Necform] {
        let mut holds = true;
        let mut rep = ptr::null_mut();
        assert_eq!(unsafe { golab_space_check(sp, which, &mut holds, &mut rep) }, GolabError::Ok);
        assert!(!holds);
        assert!(!take_string(rep).is_empty());
    }
    let mut holds = true;
    assert_eq!(unsafe { golab_space_check(sp, GolabCheck::Go, &mut holds, ptr::null_mut()) }, GolabError::Ok);
    unsafe { golab_space_free(sp) };
}

const C_SMOKE: &str = r#"
#include <stdio.h>
#include "golab.h"
int main(void) {
    GolabRootSystem *rs = NULL;
    if (golab_rootsys_new("G", 2, &rs) != GOLAB_ERROR_OK) return 1;
    uint32_t n = 0;
    golab_rootsys_num_positive(rs, &n);
    golab_rootsys_free(rs);
    if (golab_rootsys_new("D", 2, &rs) != GOLAB_ERROR_INVALID_INPUT) return 2;
    GolabSpace *sp = NULL;
    if (golab_space_from_toml("torus = [[1]]\n[[factors]]\ntype = \"A\"\nrank = 1\n", &sp) != GOLAB_ERROR_OK) return 3;
    bool holds = false;
    char *rep = NULL;
    golab_space_check(sp, GOLAB_CHECK_GO, &holds, &rep);
    printf("%u %d %s\n", n, holds, rep);
    golab_string_free(rep);
    golab_space_free(sp);
    return 0;
}
"#;

#[test]
fn c_program_links_against_header() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipped");
        return;
    }
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/ffi-<hash> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libgolab_ffi.a");
    if !lib.exists() {
        eprintln!("static library not found at {}; skipped", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(&src, C_SMOKE).unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke program failed to build");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("6 1 {\"verdict\":\"GO\""), "{text}");
}
