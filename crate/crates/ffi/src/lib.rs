//! C interface to `ihgenera`.
//!
//! Spaces and maps cross the boundary as opaque handles created by a
//! `*_parse` or `*_example` function and released with the matching
//! `*_free`. Every fallible function returns an [`IhgStatus`]; on failure a
//! message is available from [`ihg_last_error`] on the same thread.
//! Strings returned through `out` parameters are owned by the caller and
//! must be released with [`ihg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ihgenera::classes::ty_projective;
use ihgenera::genus::{chi_vs_ichi, pushforward, pushforward_chi, pushforward_ichi, FiberMode, StratifiedMapData};
use ihgenera::ring::{parse_rational, qy_series, BiLaurentPoly, LaurentPoly};
use ihgenera::strata::StratifiedSpace;
use ihgenera::toric::standard_space;
use ihgenera::Error;

/// Result of a call across the C interface.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IhgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Input text could not be parsed.
    Syntax = 3,
    /// Input parsed but is not usable: invalid space, missing data, bad parameter.
    InvalidInput = 4,
    /// A `(1 + y)` denominator survived where the result must be a Laurent polynomial.
    DenominatorSurvives = 5,
    /// The library panicked. This is a bug.
    Panic = 6,
}

/// A parsed stratified space.
pub struct IhgSpace(StratifiedSpace);

/// A stratified map: target space with fiber and cone preimage data.
pub struct IhgMap(StratifiedMapData);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(IhgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Poly(_) | Error::Syntax { .. } => IhgStatus::Syntax,
            Error::DenominatorSurvives(_) => IhgStatus::DenominatorSurvives,
            _ => IhgStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(IhgStatus::NullArgument, format!("`{what}` is null"))
}

/// Runs `f`, recording its error message and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> IhgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IhgStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {message}"));
            IhgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(IhgStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(IhgStatus::Panic, e.to_string()))?;
    write(out, c.into_raw(), "out")
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message describing the last failed call on this thread, or null. The
/// pointer stays valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn ihg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ihg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ihg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a stratified-space file.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_space_parse(text: *const c_char, out: *mut *mut IhgSpace) -> IhgStatus {
    guard(|| {
        let space: StratifiedSpace = read_str(text, "text")?.parse()?;
        write(out, Box::into_raw(Box::new(IhgSpace(space))), "out")
    })
}

/// # Safety
/// `space` must be null or a handle from [`ihg_space_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ihg_space_free(space: *mut IhgSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Writes whether the space has no error diagnostics.
///
/// # Safety
/// `space` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_space_is_valid(space: *const IhgSpace, out: *mut bool) -> IhgStatus {
    guard(|| write(out, handle(space, "space")?.0.is_valid(), "out"))
}

/// All diagnostics of the space, one per line.
///
/// # Safety
/// `space` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_space_diagnostics(space: *const IhgSpace, out: *mut *mut c_char) -> IhgStatus {
    guard(|| {
        let lines: Vec<String> = handle(space, "space")?.0.diagnostics().iter().map(ToString::to_string).collect();
        write_string(out, lines.join("\n"))
    })
}

/// `chi_y` of the space computed from the intersection genera of its
/// stratum closures.
///
/// # Safety
/// `space` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_space_chi_y(space: *const IhgSpace, out: *mut *mut c_char) -> IhgStatus {
    guard(|| write_string(out, chi_vs_ichi(&handle(space, "space")?.0)?.to_string()))
}

/// Parses a map file. The map's `space = ...` entry is ignored and
/// `space_text` is used as the target space instead.
///
/// # Safety
/// Both strings must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_map_parse(
    map_text: *const c_char,
    space_text: *const c_char,
    out: *mut *mut IhgMap,
) -> IhgStatus {
    guard(|| {
        let map_text = read_str(map_text, "map_text")?;
        let space_text = read_str(space_text, "space_text")?;
        let map = StratifiedMapData::parse_with(map_text, |_| Ok(space_text.to_string()))?;
        write(out, Box::into_raw(Box::new(IhgMap(map))), "out")
    })
}

/// Builds one of the standard examples, e.g. `"blowup_linear"` with
/// parameters `{4, 1}`. `params` may be null when `len` is 0.
///
/// # Safety
/// `kind` must be nul-terminated; `params` must point to `len` values;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_map_example(
    kind: *const c_char,
    params: *const i64,
    len: usize,
    out: *mut *mut IhgMap,
) -> IhgStatus {
    guard(|| {
        let kind = read_str(kind, "kind")?;
        let params = if len == 0 {
            &[][..]
        } else if params.is_null() {
            return Err(null("params"));
        } else {
            std::slice::from_raw_parts(params, len)
        };
        let ex = standard_space(kind, params)?;
        write(out, Box::into_raw(Box::new(IhgMap(ex.map))), "out")
    })
}

/// # Safety
/// `map` must be null or a live handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ihg_map_free(map: *mut IhgMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// `chi_y` of the source of the map, pushed forward through the fibers.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_map_chi_y(map: *const IhgMap, out: *mut *mut c_char) -> IhgStatus {
    guard(|| write_string(out, pushforward_chi(&handle(map, "map")?.0)?.to_string()))
}

/// `Ichi_y` of the source, from the cone preimages.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_map_ichi_y(map: *const IhgMap, out: *mut *mut c_char) -> IhgStatus {
    guard(|| write_string(out, pushforward_ichi(&handle(map, "map")?.0)?.to_string()))
}

/// E-polynomial of the source in `u`, `v`. Needs Hodge-level data.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_map_e_poly(map: *const IhgMap, out: *mut *mut c_char) -> IhgStatus {
    guard(|| {
        let e = pushforward::<BiLaurentPoly>(&handle(map, "map")?.0, FiberMode::Fibers)?;
        write_string(out, e.to_string())
    })
}

/// Evaluates a Laurent polynomial in `y` at a rational such as `"-1"` or `"1/2"`.
///
/// # Safety
/// Both strings must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_eval_y(poly: *const c_char, y: *const c_char, out: *mut *mut c_char) -> IhgStatus {
    guard(|| {
        let p: LaurentPoly = read_str(poly, "poly")?.parse().map_err(Error::from)?;
        let y = parse_rational(read_str(y, "y")?.trim()).map_err(Error::from)?;
        let v = p
            .eval(&y)
            .ok_or_else(|| Failure(IhgStatus::InvalidInput, format!("{p} has a pole at y = {y}")))?;
        write_string(out, v.to_string())
    })
}

/// Degree of `T_y(P^n)`, that is `chi_y(P^n)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_ty_projective_degree(n: u32, out: *mut *mut c_char) -> IhgStatus {
    guard(|| write_string(out, ty_projective(n).degree()?.to_string()))
}

/// Coefficients of `Q_y(a)` up to `a^order`, one per line.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ihg_qy_series(order: usize, out: *mut *mut c_char) -> IhgStatus {
    guard(|| {
        let lines: Vec<String> = qy_series(order).coeffs().iter().map(ToString::to_string).collect();
        write_string(out, lines.join("\n"))
    })
}
