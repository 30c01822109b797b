use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use seriesring_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    sr_string_free(s);
    out
}

fn last_error() -> Option<String> {
    let p = sr_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
}

unsafe fn ring(ext: &str, group: &str, precision: Option<&str>) -> *mut SrRing {
    let p = precision.map(c);
    let mut out = ptr::null_mut();
    let status = sr_ring_new(
        c(ext).as_ptr(),
        c(group).as_ptr(),
        p.as_ref().map_or(ptr::null(), |p| p.as_ptr()),
        &mut out,
    );
    assert_eq!(status, SrStatus::Ok, "{:?}", last_error());
    out
}

unsafe fn series(r: *const SrRing, lit: &str) -> *mut SrSeries {
    let mut out = ptr::null_mut();
    assert_eq!(sr_series_parse(r, c(lit).as_ptr(), &mut out), SrStatus::Ok, "{:?}", last_error());
    out
}

#[test]
fn arithmetic_and_formatting() {
    unsafe {
        let r = ring("gf(4)/gf(2)", "z", Some("5"));
        let f = series(r, "1 + a*t");
        let mut inv = ptr::null_mut();
        assert_eq!(sr_series_invert(f, &mut inv), SrStatus::Ok);
        let mut prod = ptr::null_mut();
        assert_eq!(sr_series_mul(f, inv, &mut prod), SrStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(sr_series_to_string(prod, &mut s), SrStatus::Ok);
        assert_eq!(take(s), "1 + O(t^5)");

        let mut sum = ptr::null_mut();
        assert_eq!(sr_series_add(f, f, &mut sum), SrStatus::Ok);
        assert_eq!(sr_series_to_string(sum, &mut s), SrStatus::Ok);
        assert_eq!(take(s), "0 + O(t^5)");

        let t = series(r, "t");
        let mut bad = ptr::null_mut();
        assert_eq!(sr_series_invert(t, &mut bad), SrStatus::Invalid);
        assert!(bad.is_null());
        assert!(last_error().is_some());

        for h in [f, inv, prod, sum, t] {
            sr_series_free(h);
        }
        sr_ring_free(r);
    }
}

#[test]
fn precision_loss_is_status_three() {
    unsafe {
        let r = ring("gf(4)/gf(2)", "z*z", Some("(1,0)"));
        let f = series(r, "1 + t^(0,1)");
        let mut inv = ptr::null_mut();
        assert_eq!(sr_series_invert(f, &mut inv), SrStatus::Limit, "{:?}", last_error());
        assert!(inv.is_null());
        sr_series_free(f);
        sr_ring_free(r);
    }
}

#[test]
fn divisibility_and_psi() {
    unsafe {
        let r = ring("gf(4)/gf(2)", "z", None);
        let f = series(r, "a*t");
        let g = series(r, "t + a*t^2");
        let mut d = false;
        assert_eq!(sr_divides(f, g, SrRingChoice::R as u32, &mut d), SrStatus::Ok);
        assert!(d);
        assert_eq!(sr_divides(f, g, SrRingChoice::S as u32, &mut d), SrStatus::Ok);
        assert!(!d);
        assert_eq!(sr_divides(f, g, 7, &mut d), SrStatus::BadArgument);

        let mut s = ptr::null_mut();
        assert_eq!(sr_psi(g, f, &mut s), SrStatus::Ok);
        assert_eq!(take(s), "(0,(a+1)K♯)");

        let mut n = 0usize;
        let mut atoms = ptr::null_mut();
        let sq = series(r, "a*t^2");
        assert_eq!(sr_factor(sq, &mut n, &mut atoms), SrStatus::Ok);
        assert_eq!(n, 2);
        assert_eq!(take(atoms), "a*t, t");
        assert_eq!(sr_factor(sq, &mut n, ptr::null_mut()), SrStatus::Ok);

        for h in [f, g, sq] {
            sr_series_free(h);
        }
        sr_ring_free(r);
    }
}

#[test]
fn lattices() {
    unsafe {
        let ext = c("gf(4)/gf(2)");
        let mut p = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(sr_lattice_predicted(ext.as_ptr(), 3, &mut p), SrStatus::Ok);
        assert_eq!(sr_lattice_brute(ext.as_ptr(), 3, &mut b), SrStatus::Ok);
        let (mut nodes, mut covers) = (0usize, 0usize);
        assert_eq!(sr_lattice_size(b, &mut nodes, &mut covers), SrStatus::Ok);
        assert_eq!((nodes, covers), (10, 13));
        let mut iso = false;
        assert_eq!(sr_lattice_isomorphic(p, b, &mut iso), SrStatus::Ok);
        assert!(iso);
        let mut dot = ptr::null_mut();
        assert_eq!(sr_lattice_to_dot(p, &mut dot), SrStatus::Ok);
        let golden = include_str!("../../core/tests/golden/gf4_gf2_depth3.dot");
        assert_eq!(take(dot), golden);

        let mut big = ptr::null_mut();
        assert_eq!(sr_lattice_brute(ext.as_ptr(), 9, &mut big), SrStatus::Limit);
        assert!(big.is_null());
        assert_eq!(sr_lattice_predicted(c("q/q").as_ptr(), 2, &mut big), SrStatus::Invalid);

        sr_lattice_free(p);
        sr_lattice_free(b);
    }
}

#[test]
fn run_matches_cli_exit_codes() {
    unsafe {
        let cases = [
            ("lattice gf(4)/gf(2) --depth 3 --mode both", 0),
            ("check gf(4)/gf(2) --group z*z --property atomic", 1),
            ("info gf(4)/gf(3)", 2),
            ("lattice gf(4)/gf(2) --depth 9 --mode brute", 3),
        ];
        for (line, expected) in cases {
            let mut code = -1;
            let mut out = ptr::null_mut();
            let mut err = ptr::null_mut();
            assert_eq!(sr_run(c(line).as_ptr(), &mut code, &mut out, &mut err), SrStatus::Ok);
            assert_eq!(code, expected, "{line}");
            let (out, err) = (take(out), take(err));
            if expected >= 2 {
                assert!(out.is_empty() && err.starts_with("error: "), "{line}");
            }
        }
        let mut code = -1;
        assert_eq!(sr_run(c("info 'gf(4)/gf(2)").as_ptr(), &mut code, ptr::null_mut(), ptr::null_mut()), SrStatus::Invalid);
        assert_eq!(code, -1);
    }
}

#[test]
fn null_and_bad_arguments() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(sr_ring_new(ptr::null(), c("z").as_ptr(), ptr::null(), &mut r), SrStatus::BadArgument);
        assert_eq!(last_error().as_deref(), Some("NULL string argument"));
        assert_eq!(sr_ring_new(c("gf(4)/gf(2)").as_ptr(), c("z").as_ptr(), ptr::null(), ptr::null_mut()), SrStatus::BadArgument);
        let bytes = [0xffu8, 0];
        assert_eq!(sr_ring_new(bytes.as_ptr().cast(), c("z").as_ptr(), ptr::null(), &mut r), SrStatus::BadArgument);
        let mut s = ptr::null_mut();
        assert_eq!(sr_series_to_string(ptr::null(), &mut s), SrStatus::BadArgument);
        assert_eq!(sr_ring_new(c("gf(4)/gf(2)").as_ptr(), c("w").as_ptr(), ptr::null(), &mut r), SrStatus::Invalid);

        let good = ring("gf(4)/gf(2)", "z", None);
        assert!(last_error().is_none());
        sr_ring_free(good);
        sr_ring_free(ptr::null_mut());
        sr_series_free(ptr::null_mut());
        sr_lattice_free(ptr::null_mut());
        sr_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/seriesring.h");
    let src = include_str!("../src/lib.rs");
    let exported: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split_once("extern \"C\" fn "))
        .map(|(_, rest)| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 20, "{exported:?}");
    for name in exported {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("SR_STATUS_LIMIT = 3"));
    assert!(header.contains("typedef struct SrRing SrRing;"));
}

/// Compiles `tests/c/smoke.c` against the static library and runs it.
#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = target.join("libseriesring_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let exe = target.join("seriesring_ffi_smoke");
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{stdout}{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout, "atoms: t, t\nok\n");
}
