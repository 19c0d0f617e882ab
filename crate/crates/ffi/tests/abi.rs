use std::ffi::{CStr, CString};
use std::ptr;

use wellpoint_ffi::*;

fn corpus(name: &str) -> CString {
    let path = format!("{}/../core/corpus/{name}.cat", env!("CARGO_MANIFEST_DIR"));
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(wp_last_error()) }.to_str().unwrap().to_string()
}

fn endo(name: &str) -> (*mut WpWorkspace, *mut WpEndo) {
    let text = corpus(name);
    let mut ws = ptr::null_mut();
    let mut e = ptr::null_mut();
    unsafe {
        assert_eq!(wp_workspace_parse(text.as_ptr(), &mut ws), WpStatus::Ok);
        assert_eq!(wp_workspace_endo(ws, ptr::null(), ptr::null(), &mut e), WpStatus::Ok);
    }
    assert_eq!(last_error(), "");
    (ws, e)
}

fn release(ws: *mut WpWorkspace, e: *mut WpEndo) {
    unsafe {
        wp_endo_free(e);
        wp_workspace_free(ws);
    }
}

#[test]
fn chain_localises_to_a_point() {
    let (ws, e) = endo("chain3-shift");
    unsafe {
        assert_eq!(wp_endo_object_count(e), 3);
        let mut n = 0usize;
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(wp_endo_localised_hom_size(e, x, y, &mut n), WpStatus::Ok);
                assert_eq!(n, 1);
            }
        }
        let mut alg = false;
        assert_eq!(wp_endo_is_algebra(e, 2, &mut alg), WpStatus::Ok);
        assert!(alg);
        assert_eq!(wp_endo_is_algebra(e, 0, &mut alg), WpStatus::Ok);
        assert!(!alg);
        let mut wp = false;
        assert_eq!(wp_endo_is_well_pointed(e, &mut wp), WpStatus::Ok);
        assert!(wp);
    }
    release(ws, e);
}

#[test]
fn monoid_comparison_verdict_is_negative() {
    let (ws, e) = endo("monoid-e");
    let mut verdict = true;
    unsafe {
        assert_eq!(wp_endo_compare(e, 0, &mut verdict), WpStatus::Ok);
    }
    assert!(!verdict);
    release(ws, e);
}

#[test]
fn diagnostics_map_to_status_codes() {
    let cases = [
        ("category c : set {", WpStatus::Syntax),
        ("functor F : a -> b {\n}\n", WpStatus::Undefined),
        ("category a : set {\n  objects x;\n}\ncategory a : set {\n  objects x;\n}\n", WpStatus::Duplicate),
        ("category a : vect {\n  objects x;\n  morphism e : x -> x;\n}\n", WpStatus::Incomplete),
    ];
    for (text, status) in cases {
        let text = CString::new(text).unwrap();
        let mut ws = ptr::dangling_mut();
        assert_eq!(unsafe { wp_workspace_parse(text.as_ptr(), &mut ws) }, status, "{text:?}");
        assert!(ws.is_null());
        assert!(last_error().contains("error[E00"), "{}", last_error());
    }
}

#[test]
fn misuse_is_reported_not_fatal() {
    let (ws, e) = endo("swap");
    unsafe {
        let mut n = 0usize;
        assert_eq!(wp_endo_localised_hom_size(e, 99, 0, &mut n), WpStatus::OutOfRange);
        assert!(last_error().contains("99"));
        assert_eq!(wp_endo_localised_hom_size(ptr::null(), 0, 0, &mut n), WpStatus::NullArgument);
        assert_eq!(wp_endo_is_algebra(e, 0, ptr::null_mut()), WpStatus::NullArgument);
        assert_eq!(wp_workspace_parse(ptr::null(), &mut ptr::null_mut()), WpStatus::NullArgument);
        let bad = [0xffu8, 0];
        let mut out = ptr::null_mut();
        assert_eq!(wp_workspace_endo(ws, bad.as_ptr().cast(), ptr::null(), &mut out), WpStatus::InvalidUtf8);
        let missing = CString::new("Nope").unwrap();
        assert_eq!(wp_workspace_endo(ws, missing.as_ptr(), ptr::null(), &mut out), WpStatus::Invalid);
        assert!(out.is_null());
        assert_eq!(wp_endo_object_count(ptr::null()), 0);
        wp_endo_free(ptr::null_mut());
        wp_workspace_free(ptr::null_mut());
    }
    release(ws, e);
}

#[test]
fn not_well_pointed_is_its_own_status() {
    let mut s = String::from("category c : set {\n  objects p;\n  morphism x : p -> p;\n  morphism y : p -> p;\n  morphism z : p -> p;\n");
    for g in ["x", "y", "z"] {
        for f in ["x", "y", "z"] {
            s += &format!("  compose {g} . {f} = z;\n");
        }
    }
    s += "}\nfunctor Om : c -> c {\n  object p -> p;\n  morphism x -> y;\n  morphism y -> y;\n  morphism z -> z;\n}\nnat th : id => Om {\n  p : x;\n}\n";
    let text = CString::new(s).unwrap();
    let mut ws = ptr::null_mut();
    let mut e = ptr::null_mut();
    unsafe {
        assert_eq!(wp_workspace_parse(text.as_ptr(), &mut ws), WpStatus::Ok);
        assert_eq!(wp_workspace_endo(ws, ptr::null(), ptr::null(), &mut e), WpStatus::NotWellPointed);
        assert!(e.is_null());
        wp_workspace_free(ws);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/wellpoint.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|l| l.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 10);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "{f}");
    }
    assert_eq!(wp_schema_version(), 1);
}
