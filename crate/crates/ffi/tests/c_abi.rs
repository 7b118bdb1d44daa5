use std::ffi::{CStr, CString};
use std::ptr;

use qrdesign_ffi::*;

fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { qrd_string_free(s) };
    out
}

fn last_error() -> String {
    let p = qrd_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn single_thread() -> QrdOptions {
    QrdOptions {
        threads: 1,
        ..qrd_default_options()
    }
}

#[test]
fn build_length_dimension_and_dual() {
    let mut code = ptr::null_mut();
    assert_eq!(
        unsafe { qrd_code_quadratic_residue(17, true, &mut code) },
        QrdStatus::Ok
    );
    assert_eq!(unsafe { qrd_code_length(code) }, 18);
    assert_eq!(unsafe { qrd_code_dimension(code) }, 9);
    let mut dual = ptr::null_mut();
    assert_eq!(unsafe { qrd_code_dual(code, &mut dual) }, QrdStatus::Ok);
    assert_eq!(unsafe { qrd_code_dimension(dual) }, 9);
    unsafe {
        qrd_code_free(dual);
        qrd_code_free(code);
    }
}

#[test]
fn weight_distribution_of_extended_golay_like_code() {
    let mut code = ptr::null_mut();
    assert_eq!(
        unsafe { qrd_code_quadratic_residue(23, true, &mut code) },
        QrdStatus::Ok
    );
    let mut counts = [0u64; 25];
    let opts = single_thread();
    assert_eq!(
        unsafe { qrd_code_weight_distribution(code, &opts, counts.as_mut_ptr(), counts.len()) },
        QrdStatus::Ok
    );
    let nonzero: Vec<(usize, u64)> = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(l, &c)| (l, c))
        .collect();
    assert_eq!(nonzero, [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]);
    let mut short = [0u64; 3];
    assert_eq!(
        unsafe { qrd_code_weight_distribution(code, &opts, short.as_mut_ptr(), short.len()) },
        QrdStatus::InvalidArgument
    );
    unsafe { qrd_code_free(code) };
}

#[test]
fn text_round_trip() {
    let mut code = ptr::null_mut();
    assert_eq!(
        unsafe { qrd_code_quadratic_residue(7, false, &mut code) },
        QrdStatus::Ok
    );
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { qrd_code_to_text(code, &mut text) }, QrdStatus::Ok);
    let text = take_string(text);
    assert!(text.starts_with("7 4\n"));
    let c_text = CString::new(text).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { qrd_code_from_text(c_text.as_ptr(), &mut back) },
        QrdStatus::Ok
    );
    assert_eq!(unsafe { qrd_code_dimension(back) }, 4);
    unsafe {
        qrd_code_free(back);
        qrd_code_free(code);
    }
}

#[test]
fn jacobi_coefficients_and_json() {
    let mut code = ptr::null_mut();
    assert_eq!(
        unsafe { qrd_code_quadratic_residue(17, true, &mut code) },
        QrdStatus::Ok
    );
    let labels = [0i64, 1, QRD_INFINITY];
    let mut j = ptr::null_mut();
    let opts = single_thread();
    assert_eq!(
        unsafe { qrd_jacobi_new(code, labels.as_ptr(), 3, &opts, &mut j) },
        QrdStatus::Ok
    );
    assert_eq!(unsafe { qrd_jacobi_mass(j) }, 512);
    // the zero word: w^3 x^15
    assert_eq!(unsafe { qrd_jacobi_coeff(j, 0, 0) }, 1);
    // the all-ones word: z^3 y^15
    assert_eq!(unsafe { qrd_jacobi_coeff(j, 3, 15) }, 1);
    assert_eq!(unsafe { qrd_jacobi_coeff(j, 9, 0) }, 0);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qrd_jacobi_to_json(j, &mut json) }, QrdStatus::Ok);
    let json = take_string(json);
    assert!(json.contains("\"T\":[0,1,\"inf\"]"), "{json}");
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { qrd_jacobi_to_text(j, &mut text) }, QrdStatus::Ok);
    assert!(take_string(text).starts_with("w^3x^15 + "));
    unsafe {
        qrd_jacobi_free(j);
        qrd_code_free(code);
    }
}

#[test]
fn orbit_labels() {
    let mut o = ptr::null_mut();
    assert_eq!(unsafe { qrd_orbits_new(17, &mut o) }, QrdStatus::Ok);
    assert_eq!(unsafe { qrd_orbits_size(o, 1) }, 408);
    assert_eq!(unsafe { qrd_orbits_size(o, 2) }, 408);
    assert_eq!(unsafe { qrd_orbits_size(o, 3) }, 0);
    let mut orbit = 0u8;
    assert_eq!(
        unsafe { qrd_orbits_label(o, 0, 1, QRD_INFINITY, &mut orbit) },
        QrdStatus::Ok
    );
    assert_eq!(orbit, 1);
    // 3 is the smallest primitive root mod 17
    assert_eq!(
        unsafe { qrd_orbits_label(o, 0, 3, QRD_INFINITY, &mut orbit) },
        QrdStatus::Ok
    );
    assert_eq!(orbit, 2);
    assert_eq!(
        unsafe { qrd_orbits_label(o, 0, 0, 1, &mut orbit) },
        QrdStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { qrd_orbits_label(o, 0, -5, 1, &mut orbit) },
        QrdStatus::InvalidArgument
    );
    unsafe { qrd_orbits_free(o) };
}

#[test]
fn design_report_for_union_shell() {
    let mut json = ptr::null_mut();
    let opts = single_thread();
    let st = unsafe { qrd_design_report_json(17, QrdBlockSet::Union, 6, 3, &opts, &mut json) };
    assert_eq!(st, QrdStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["code"], "union");
    assert_eq!(v["blocks"], 204);
    assert_eq!(v["verdicts"][2]["status"], "design");
    assert_eq!(v["verdicts"][2]["lambda"], 5);
}

#[test]
fn reproduce_counts() {
    let (mut passed, mut total) = (0usize, 0usize);
    let mut json = ptr::null_mut();
    let st = unsafe { qrd_reproduce(17, ptr::null(), &mut passed, &mut total, &mut json) };
    assert_eq!(st, QrdStatus::Ok);
    assert!(total > 0);
    assert_eq!(passed, total);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), total);
}

#[test]
fn errors_are_reported() {
    let mut code = ptr::null_mut();
    assert_eq!(
        unsafe { qrd_code_quadratic_residue(13, true, &mut code) },
        QrdStatus::InvalidArgument
    );
    assert!(code.is_null());
    assert!(last_error().contains("13"));

    assert_eq!(
        unsafe { qrd_code_quadratic_residue(17, true, ptr::null_mut()) },
        QrdStatus::NullPointer
    );
    assert_eq!(
        unsafe { qrd_code_dual(ptr::null(), &mut code) },
        QrdStatus::NullPointer
    );

    assert_eq!(
        unsafe { qrd_code_quadratic_residue(73, true, &mut code) },
        QrdStatus::Ok
    );
    let mut counts = vec![0u64; 75];
    let st = unsafe {
        qrd_code_weight_distribution(code, ptr::null(), counts.as_mut_ptr(), counts.len())
    };
    assert_eq!(st, QrdStatus::BudgetExceeded);
    assert!(last_error().contains("37"));
    unsafe { qrd_code_free(code) };

    let bad = CString::new("3 2\n110\n").unwrap();
    let mut parsed = ptr::null_mut();
    assert_eq!(
        unsafe { qrd_code_from_text(bad.as_ptr(), &mut parsed) },
        QrdStatus::InvalidArgument
    );
    assert_eq!(unsafe { qrd_code_length(ptr::null()) }, 0);
}
