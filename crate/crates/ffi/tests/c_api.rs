use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cremona_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = cremona_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn poly(src: &str, n: usize) -> *mut CremonaPoly {
    let mut out = ptr::null_mut();
    let s = unsafe { cremona_poly_parse(c(src).as_ptr(), n, &mut out) };
    assert_eq!(s, CremonaStatus::Ok, "{src}");
    out
}

const FILE: &str = "n = 4\n\
map a1 = [X0*X2 : X1*X2 : X2^2 : X1*X3 : X2*X4]\n\
map a1_inv = [X0*X1 : X1^2 : X1*X2 : X2*X3 : X1*X4]\n\
map odd = [X1*X2 : X0*X2 : X0*X1 : X3*X0 : X4*X0]\n";

fn map(name: &str) -> *mut CremonaMap {
    let mut out = ptr::null_mut();
    let s = unsafe { cremona_map_from_file(c(FILE).as_ptr(), c(name).as_ptr(), &mut out) };
    assert_eq!(s, CremonaStatus::Ok, "{name}");
    out
}

#[test]
fn polynomial_round_trip_and_buffer_sizes() {
    let p = poly("(X0 + 2*X1)^2 - 1/2*X2^2", 2);
    let mut needed = 0usize;
    let s = unsafe { cremona_poly_to_string(p, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(s, CremonaStatus::BufferTooSmall);
    let mut buf = vec![0 as c_char; needed];
    let s = unsafe { cremona_poly_to_string(p, buf.as_mut_ptr(), buf.len(), &mut needed) };
    assert_eq!(s, CremonaStatus::Ok);
    let text = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
    assert_eq!(text, "X0^2 + 4*X0*X1 + 4*X1^2 - 1/2*X2^2");
    assert_eq!(text.len() + 1, needed);
    unsafe { cremona_poly_free(p) };
}

#[test]
fn parse_errors_set_the_message() {
    let mut out = ptr::null_mut();
    let s = unsafe { cremona_poly_parse(c("X0^-1").as_ptr(), 2, &mut out) };
    assert_eq!(s, CremonaStatus::Input);
    assert!(out.is_null());
    assert!(
        last_error().contains("line 1, column 4"),
        "{}",
        last_error()
    );
    let s = unsafe { cremona_poly_parse(ptr::null(), 2, &mut out) };
    assert_eq!(s, CremonaStatus::NullPointer);
    let bad = [0xffu8 as c_char, 0];
    let s = unsafe { cremona_poly_parse(bad.as_ptr(), 2, &mut out) };
    assert_eq!(s, CremonaStatus::InvalidUtf8);
    let s = unsafe {
        cremona_map_from_file(c(FILE).as_ptr(), c("nope").as_ptr(), &mut ptr::null_mut())
    };
    assert_eq!(s, CremonaStatus::Input);
    assert!(last_error().contains("a1_inv"));
    let p = poly("X0", 1);
    assert!(cremona_last_error_message().is_null());
    unsafe { cremona_poly_free(p) };
}

#[test]
fn compose_equality_and_rho() {
    let (a, b) = (map("a1"), map("a1_inv"));
    let mut id = ptr::null_mut();
    assert_eq!(
        unsafe { cremona_map_compose(a, b, true, &mut id) },
        CremonaStatus::Ok
    );
    let x: Vec<*mut CremonaPoly> = (0..=4).map(|i| poly(&format!("X{i}"), 4)).collect();
    let consts: Vec<*const CremonaPoly> = x.iter().map(|&p| p as *const _).collect();
    let mut expected = ptr::null_mut();
    let s = unsafe { cremona_map_from_components(consts.as_ptr(), consts.len(), &mut expected) };
    assert_eq!(s, CremonaStatus::Ok);
    let mut eq = false;
    assert_eq!(
        unsafe { cremona_map_equals_projectively(id, expected, &mut eq) },
        CremonaStatus::Ok
    );
    assert!(eq);
    assert_eq!(
        unsafe { cremona_map_equals_projectively(a, expected, &mut eq) },
        CremonaStatus::Ok
    );
    assert!(!eq);

    let mut n = 0usize;
    assert_eq!(
        unsafe { cremona_map_ambient_n(a, &mut n) },
        CremonaStatus::Ok
    );
    assert_eq!(n, 4);
    let mut entries = [0i64; 16];
    let mut needed = 0usize;
    let s = unsafe { cremona_map_rho(a, entries.as_mut_ptr(), 3, &mut needed) };
    assert_eq!((s, needed), (CremonaStatus::BufferTooSmall, 16));
    let s = unsafe { cremona_map_rho(a, entries.as_mut_ptr(), 16, &mut needed) };
    assert_eq!(s, CremonaStatus::Ok);
    let column2: Vec<i64> = (0..4).map(|r| entries[r * 4 + 2]).collect();
    assert_eq!(column2, vec![1, -1, 1, 0]);

    let mut buf = [0 as c_char; 128];
    let s = unsafe { cremona_map_to_string(id, buf.as_mut_ptr(), buf.len(), ptr::null_mut()) };
    assert_eq!(s, CremonaStatus::Ok);
    assert_eq!(
        unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap(),
        "[X0 : X1 : X2 : X3 : X4]"
    );

    let odd = map("odd");
    let s = unsafe { cremona_map_rho(odd, entries.as_mut_ptr(), 16, &mut needed) };
    assert_eq!(s, CremonaStatus::Precondition);
    assert!(last_error().contains("G-form"));

    unsafe {
        for p in x {
            cremona_poly_free(p);
        }
        for m in [a, b, id, expected, odd] {
            cremona_map_free(m);
        }
    }
}

#[test]
fn mismatched_components_are_rejected() {
    let p = poly("X0^2", 1);
    let q = poly("X1", 1);
    let comps = [p as *const CremonaPoly, q as *const CremonaPoly];
    let mut out = ptr::null_mut();
    let s = unsafe { cremona_map_from_components(comps.as_ptr(), 2, &mut out) };
    assert_eq!(s, CremonaStatus::Precondition);
    assert!(out.is_null());
    assert!(last_error().contains("homogeneous"));
    unsafe {
        cremona_poly_free(p);
        cremona_poly_free(q);
    }
}

#[test]
fn certificates() {
    let a = [1i64, 2, 0, 1];
    let b = [1i64, 0, -2, 1];
    let (mut holds, mut words) = (false, 0u64);
    let s =
        unsafe { cremona_sl2_certificate(a.as_ptr(), b.as_ptr(), 8, 2, &mut holds, &mut words) };
    assert_eq!(s, CremonaStatus::Ok);
    assert!(holds);
    assert_eq!(words, 1 + 2 * (3u64.pow(8) - 1));

    let one = [1i64, 1, 0, 1];
    let low = [1i64, 0, -1, 1];
    let s = unsafe {
        cremona_sl2_certificate(
            one.as_ptr(),
            low.as_ptr(),
            6,
            1,
            &mut holds,
            ptr::null_mut(),
        )
    };
    assert_eq!(s, CremonaStatus::Ok);
    assert!(!holds);

    let singular = [1i64, 1, 1, 1];
    let s = unsafe {
        cremona_sl2_certificate(
            singular.as_ptr(),
            b.as_ptr(),
            4,
            1,
            &mut holds,
            ptr::null_mut(),
        )
    };
    assert_ne!(s, CremonaStatus::Ok);

    let s = unsafe { cremona_rho_certificate(4, 6, 2, &mut holds, &mut words) };
    assert_eq!(s, CremonaStatus::Ok);
    assert!(holds);
    let s = unsafe { cremona_rho_certificate(3, 6, 2, &mut holds, &mut words) };
    assert_ne!(s, CremonaStatus::Ok);
}
