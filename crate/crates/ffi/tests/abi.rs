use std::ffi::{c_char, CStr, CString};
use std::ptr;

use dhyper_ffi::*;

const A: &str = r#"{"rows":2,"cols":4,"entries":[[3,2,1,0],[0,1,2,3]]}"#;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { dh_string_free(s) };
    out
}

fn last_error() -> String {
    let p = dh_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn matrix_handle_and_toric_ideal() {
    let mut m = ptr::null_mut();
    let text = cstr(A);
    assert_eq!(unsafe { dh_matrix_from_json(text.as_ptr(), &mut m) }, DhStatus::Ok);
    assert_eq!(unsafe { (dh_matrix_rows(m), dh_matrix_cols(m)) }, (2, 4));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dh_toric_ideal(m, &mut out) }, DhStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    unsafe { dh_matrix_free(m) };
}

#[test]
fn operator_product_matches_commutation() {
    let d = cstr(r#"{"nvars":1,"terms":[{"coeff":"1","x":[0],"dx":[1]}]}"#);
    let x = cstr(r#"{"nvars":1,"terms":[{"coeff":"1","x":[1],"dx":[0]}]}"#);
    let (mut pd, mut px, mut prod) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(dh_operator_from_json(d.as_ptr(), &mut pd), DhStatus::Ok);
        assert_eq!(dh_operator_from_json(x.as_ptr(), &mut px), DhStatus::Ok);
        assert_eq!(dh_operator_mul(pd, px, &mut prod), DhStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(dh_operator_to_json(prod, &mut out), DhStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["text"], "x1*d1 + 1");
        dh_operator_free(pd);
        dh_operator_free(px);
        dh_operator_free(prod);
    }
}

#[test]
fn membership_certificate() {
    let gens = cstr(r#"[{"nvars":1,"terms":[{"coeff":"1","dx":[1]}]}]"#);
    let op = cstr(r#"{"nvars":1,"terms":[{"coeff":"1","x":[1],"dx":[1]}]}"#);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dh_membership(gens.as_ptr(), op.as_ptr(), 10, &mut out) }, DhStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["member"], true);
    assert_eq!(v["basis_status"], "complete");
}

#[test]
fn errors_set_status_and_message() {
    let mut m = ptr::null_mut();
    let bad = cstr("{\"rows\":");
    assert_eq!(unsafe { dh_matrix_from_json(bad.as_ptr(), &mut m) }, DhStatus::Parse);
    assert!(m.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { dh_matrix_from_json(ptr::null(), &mut m) }, DhStatus::NullArgument);
    let ragged = cstr(r#"{"rows":2,"cols":2,"entries":[[1,2]]}"#);
    assert_eq!(unsafe { dh_matrix_from_json(ragged.as_ptr(), &mut m) }, DhStatus::DimensionMismatch);
    assert_eq!(unsafe { dh_toric_ideal(ptr::null(), &mut ptr::null_mut()) }, DhStatus::NullArgument);
    unsafe { dh_string_free(ptr::null_mut()) };
}

#[test]
fn run_reports_verdicts() {
    let args = cstr(&serde_json::json!(["nonresonant", "--A", A, "--beta", "0,0"]).to_string());
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dh_run(args.as_ptr(), &mut out) }, DhStatus::VerdictFailed);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["exit_code"], 1);

    let args = cstr(r#"["example-erdelyi"]"#);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dh_run(args.as_ptr(), &mut out) }, DhStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["exit_code"], 0);
}

#[test]
fn header_declares_the_api_and_compiles() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/dhyper.h")).unwrap();
    for name in ["dh_matrix_from_json", "dh_toric_ideal", "dh_membership", "dh_run", "dh_string_free", "DH_STATUS_OK"] {
        assert!(header.contains(name), "{name} missing from header");
    }
    let src = std::env::temp_dir().join(format!("dhyper_header_{}.c", std::process::id()));
    std::fs::write(&src, "#include \"dhyper.h\"\nint main(void) { return dh_last_error() == 0 ? DH_STATUS_OK : 1; }\n").unwrap();
    let status = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status();
    let _ = std::fs::remove_file(&src);
    if let Ok(status) = status {
        assert!(status.success(), "header does not compile as C");
    }
}
