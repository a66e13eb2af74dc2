//! C interface to `cremona-core`.
//!
//! Objects are opaque heap handles released with their `*_free` function.
//! Every fallible call returns a [`CremonaStatus`]; on failure a message is
//! available from [`cremona_last_error_message`] on the same thread until the
//! next call. Strings are copied into caller buffers: `needed` receives the
//! length including the terminating NUL, and `CREMONA_STATUS_BUFFER_TOO_SMALL`
//! is returned when `capacity` is short.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cremona_core::group::{free_generator_matrices, no_relation_certificate, Sl2Matrix};
use cremona_core::leading::rho;
use cremona_core::maps::ProjectiveMap;
use cremona_core::poly::Polynomial;
use cremona_core::text::{parse_polynomial, render_map, MapFile};
use cremona_core::{Error, ErrorKind};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CremonaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed input or an unknown name.
    Input = 3,
    /// A precondition of the operation does not hold.
    Precondition = 4,
    /// An exact check failed.
    Verification = 5,
    BufferTooSmall = 6,
    /// A bug: the library panicked.
    Internal = 7,
}

/// A polynomial over the rationals in `X0..Xn`.
pub struct CremonaPoly(Polynomial);

/// A rational self-map of projective `n`-space.
pub struct CremonaMap(ProjectiveMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(CremonaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.kind() {
            ErrorKind::Input => CremonaStatus::Input,
            ErrorKind::Precondition => CremonaStatus::Precondition,
            ErrorKind::Verification => CremonaStatus::Verification,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CremonaStatus::NullPointer, format!("{what} is null"))
}

fn set_last_error(msg: Option<String>) {
    let msg = msg.map(|m| CString::new(m.replace('\0', " ")).expect("NUL bytes removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CremonaStatus {
    set_last_error(None);
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(Failure(CremonaStatus::Internal, msg))
    });
    match result {
        Ok(()) => CremonaStatus::Ok,
        Err(Failure(status, msg)) => {
            set_last_error(Some(msg));
            status
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(CremonaStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn copy_string(
    s: &str,
    buf: *mut c_char,
    capacity: usize,
    needed: *mut usize,
) -> Result<(), Failure> {
    let len = s.len() + 1;
    if !needed.is_null() {
        needed.write(len);
    }
    if len > capacity {
        return Err(Failure(
            CremonaStatus::BufferTooSmall,
            format!("buffer holds {capacity} bytes, {len} needed"),
        ));
    }
    if buf.is_null() {
        return Err(null("buf"));
    }
    ptr::copy_nonoverlapping(s.as_ptr().cast::<c_char>(), buf, s.len());
    buf.add(s.len()).write(0);
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn cremona_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Parses a polynomial in `X0..Xn`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cremona_poly_parse(
    src: *const c_char,
    n: usize,
    out: *mut *mut CremonaPoly,
) -> CremonaStatus {
    guard(|| {
        let text = read_str(src, "src")?;
        let p = parse_polynomial(text, n)?;
        write_out(out, Box::into_raw(Box::new(CremonaPoly(p))), "out")
    })
}

/// Canonical text of a polynomial.
///
/// # Safety
/// `poly` must come from this library; `buf` must hold `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn cremona_poly_to_string(
    poly: *const CremonaPoly,
    buf: *mut c_char,
    capacity: usize,
    needed: *mut usize,
) -> CremonaStatus {
    guard(|| copy_string(&deref(poly, "poly")?.0.to_string(), buf, capacity, needed))
}

/// # Safety
/// `poly` must be null or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cremona_poly_free(poly: *mut CremonaPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Loads the projective map `name` from map-file text.
///
/// # Safety
/// `src` and `name` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_from_file(
    src: *const c_char,
    name: *const c_char,
    out: *mut *mut CremonaMap,
) -> CremonaStatus {
    guard(|| {
        let file = MapFile::parse(read_str(src, "src")?)?;
        let map = file.map(read_str(name, "name")?)?.clone();
        write_out(out, Box::into_raw(Box::new(CremonaMap(map))), "out")
    })
}

/// Builds a map from `count` homogeneous components of one degree.
///
/// # Safety
/// `components` must point to `count` polynomial handles from this library.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_from_components(
    components: *const *const CremonaPoly,
    count: usize,
    out: *mut *mut CremonaMap,
) -> CremonaStatus {
    guard(|| {
        if components.is_null() {
            return Err(null("components"));
        }
        let comps = std::slice::from_raw_parts(components, count)
            .iter()
            .map(|&p| deref(p, "component").map(|p| p.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let map = ProjectiveMap::new(comps)?;
        write_out(out, Box::into_raw(Box::new(CremonaMap(map))), "out")
    })
}

/// # Safety
/// `map` must come from this library and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_ambient_n(
    map: *const CremonaMap,
    out: *mut usize,
) -> CremonaStatus {
    guard(|| write_out(out, deref(map, "map")?.0.ambient_n(), "out"))
}

/// `g ∘ f`, optionally reduced to the coprime representative.
///
/// # Safety
/// `g` and `f` must come from this library and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_compose(
    g: *const CremonaMap,
    f: *const CremonaMap,
    normalize: bool,
    out: *mut *mut CremonaMap,
) -> CremonaStatus {
    guard(|| {
        let h = deref(g, "g")?.0.compose(&deref(f, "f")?.0, normalize)?;
        write_out(out, Box::into_raw(Box::new(CremonaMap(h))), "out")
    })
}

/// Whether two maps agree as rational maps.
///
/// # Safety
/// `a` and `b` must come from this library and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_equals_projectively(
    a: *const CremonaMap,
    b: *const CremonaMap,
    out: *mut bool,
) -> CremonaStatus {
    guard(|| {
        let eq = deref(a, "a")?.0.equals_projectively(&deref(b, "b")?.0);
        write_out(out, eq, "out")
    })
}

/// Text `[f0 : ... : fn]` of a map.
///
/// # Safety
/// `map` must come from this library; `buf` must hold `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_to_string(
    map: *const CremonaMap,
    buf: *mut c_char,
    capacity: usize,
    needed: *mut usize,
) -> CremonaStatus {
    guard(|| copy_string(&render_map(&deref(map, "map")?.0), buf, capacity, needed))
}

/// The exponent matrix `rho(map)`, row-major, `n * n` entries. `needed`
/// receives the entry count.
///
/// # Safety
/// `map` must come from this library; `out` must hold `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_rho(
    map: *const CremonaMap,
    out: *mut i64,
    capacity: usize,
    needed: *mut usize,
) -> CremonaStatus {
    guard(|| {
        let m = rho(&deref(map, "map")?.0)?;
        let entries: Vec<i64> = m.rows().concat();
        if !needed.is_null() {
            needed.write(entries.len());
        }
        if entries.len() > capacity {
            return Err(Failure(
                CremonaStatus::BufferTooSmall,
                format!("buffer holds {capacity} entries, {} needed", entries.len()),
            ));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(entries.as_ptr(), out, entries.len());
        Ok(())
    })
}

/// # Safety
/// `map` must be null or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_free(map: *mut CremonaMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

unsafe fn report_certificate<M: cremona_core::group::GroupElement>(
    a: &M,
    b: &M,
    max_len: usize,
    workers: usize,
    holds: *mut bool,
    words_checked: *mut u64,
) -> Result<(), Failure> {
    let cert = no_relation_certificate(a, b, max_len, workers.max(1))?;
    write_out(holds, cert.holds(), "holds")?;
    if !words_checked.is_null() {
        words_checked.write(cert.words_checked);
    }
    Ok(())
}

/// Checks that all reduced words of length `<= max_len` in two `SL2(Z)`
/// matrices (row-major `[a, b, c, d]`) have distinct images.
///
/// # Safety
/// `a` and `b` must point to four integers each; `holds` must be writable;
/// `words_checked` may be null.
#[no_mangle]
pub unsafe extern "C" fn cremona_sl2_certificate(
    a: *const i64,
    b: *const i64,
    max_len: usize,
    workers: usize,
    holds: *mut bool,
    words_checked: *mut u64,
) -> CremonaStatus {
    guard(|| {
        let read = |p: *const i64, what| -> Result<Sl2Matrix, Failure> {
            if p.is_null() {
                return Err(null(what));
            }
            let e = std::slice::from_raw_parts(p, 4);
            Ok(Sl2Matrix::new(e[0], e[1], e[2], e[3])?)
        };
        let (a, b) = (read(a, "a")?, read(b, "b")?);
        report_certificate(&a, &b, max_len, workers, holds, words_checked)
    })
}

/// The same check for `rho(a1)^2, rho(a2)^2` in dimension `n >= 4`.
///
/// # Safety
/// `holds` must be writable; `words_checked` may be null.
#[no_mangle]
pub unsafe extern "C" fn cremona_rho_certificate(
    n: usize,
    max_len: usize,
    workers: usize,
    holds: *mut bool,
    words_checked: *mut u64,
) -> CremonaStatus {
    guard(|| {
        let (a, b) = free_generator_matrices(n)?;
        report_certificate(&a, &b, max_len, workers, holds, words_checked)
    })
}
