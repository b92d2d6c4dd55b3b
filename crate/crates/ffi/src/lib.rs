//! C ABI for `eulerian-kit`.
//!
//! Complexes are opaque [`EkComplex`] handles created by one of the
//! `ek_complex_from_*` / `ek_complex_generate` constructors and released with
//! [`ek_complex_free`]. Every other function returns an [`EkStatus`]; on
//! failure a description is available from [`ek_last_error_message`] on the
//! same thread. Strings returned through `char **` are owned by the caller
//! and must be released with [`ek_string_free`].
//!
//! Vector getters take a buffer and its capacity and always store the
//! required length in `*len`. Pass a null buffer with capacity 0 to query
//! the length; a short buffer yields `EK_STATUS_BUFFER_TOO_SMALL` and is
//! left untouched.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eulerian_kit::checks::{self, SearchMode};
use eulerian_kit::generators::GeneratorSpec;
use eulerian_kit::invariants;
use eulerian_kit::io::{self, FacetFormat};
use eulerian_kit::report::{InputDoc, ReportDocument, Selection};
use eulerian_kit::SimplicialComplex;

/// Result codes. `EK_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EkStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Facet text, JSON, or a generator expression failed to parse.
    ParseError = 3,
    /// The arguments were well-formed but not acceptable, e.g. an unknown
    /// check name or a check whose precondition fails.
    InvalidInput = 4,
    /// The output buffer is shorter than the value written to `*len`.
    BufferTooSmall = 5,
    /// A value does not fit the output integer type.
    Overflow = 6,
    /// An internal error; the library caught a panic.
    Panic = 7,
}

/// An immutable simplicial complex.
pub struct EkComplex {
    complex: SimplicialComplex,
    input: InputDoc,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', "\\0")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Failure = (EkStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EkStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EkStatus::Ok,
        Ok(Err((status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_owned());
            set_last_error(format!("internal error: {message}"));
            EkStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    (EkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (EkStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn complex_arg<'a>(k: *const EkComplex) -> Result<&'a EkComplex, Failure> {
    k.as_ref().ok_or_else(|| null("complex"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_slice<T: Copy>(
    values: &[T],
    buf: *mut T,
    cap: usize,
    len: *mut usize,
) -> Result<(), Failure> {
    write_out(len, values.len(), "len")?;
    if cap < values.len() {
        return Err((
            EkStatus::BufferTooSmall,
            format!("buffer holds {cap} values, {} needed", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

unsafe fn new_handle(
    out: *mut *mut EkComplex,
    complex: SimplicialComplex,
    input: InputDoc,
) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(EkComplex { complex, input })), "out")
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|e| (EkStatus::Panic, format!("string contains nul: {e}")))?;
    write_out(out, s.into_raw(), "out")
}

unsafe fn from_facet_text(text: *const c_char, format: FacetFormat, out: *mut *mut EkComplex) -> EkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let text = str_arg(text, "text")?;
        let k = io::parse(text, format).map_err(|e| (EkStatus::ParseError, e.to_string()))?;
        new_handle(out, k, InputDoc::Inline)
    })
}

/// Parses the plain facet format: one facet per line, whitespace-separated
/// labels, `#` comments.
#[no_mangle]
pub unsafe extern "C" fn ek_complex_from_text(text: *const c_char, out: *mut *mut EkComplex) -> EkStatus {
    from_facet_text(text, FacetFormat::Plain, out)
}

/// Parses `{"facets": [["a", "b"], ...]}`.
#[no_mangle]
pub unsafe extern "C" fn ek_complex_from_json(text: *const c_char, out: *mut *mut EkComplex) -> EkStatus {
    from_facet_text(text, FacetFormat::Json, out)
}

/// Builds a complex from a generator expression such as
/// `suspension(torus7)` or `simplex_boundary:3`.
#[no_mangle]
pub unsafe extern "C" fn ek_complex_generate(spec: *const c_char, out: *mut *mut EkComplex) -> EkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let spec: GeneratorSpec = str_arg(spec, "spec")?
            .parse()
            .map_err(|e| (EkStatus::ParseError, format!("{e}")))?;
        let k = spec
            .build()
            .map_err(|e| (EkStatus::InvalidInput, e.to_string()))?;
        new_handle(
            out,
            k,
            InputDoc::Generator {
                spec: spec.to_string(),
            },
        )
    })
}

/// Releases a handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ek_complex_free(k: *mut EkComplex) {
    if !k.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(k))));
    }
}

/// Dimension; -1 for the empty complex.
#[no_mangle]
pub unsafe extern "C" fn ek_complex_dim(k: *const EkComplex, out: *mut i64) -> EkStatus {
    guard(|| write_out(out, complex_arg(k)?.complex.dim(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn ek_complex_num_vertices(k: *const EkComplex, out: *mut usize) -> EkStatus {
    guard(|| write_out(out, complex_arg(k)?.complex.num_vertices(), "out"))
}

/// `(f_0, ..., f_{dim})`; `*len` is `dim + 1`.
#[no_mangle]
pub unsafe extern "C" fn ek_complex_f_vector(
    k: *const EkComplex,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> EkStatus {
    guard(|| write_slice(&complex_arg(k)?.complex.face_counts(), buf, cap, len))
}

/// `(h_0, ..., h_d)` with `d = dim + 1`; `*len` is `d + 1`.
/// `EK_STATUS_OVERFLOW` if an entry does not fit in 64 bits.
#[no_mangle]
pub unsafe extern "C" fn ek_complex_h_vector(
    k: *const EkComplex,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> EkStatus {
    guard(|| {
        let h = invariants::h_vector(&complex_arg(k)?.complex);
        let values = h
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                i64::try_from(v)
                    .map_err(|_| (EkStatus::Overflow, format!("h_{i} = {v} does not fit in 64 bits")))
            })
            .collect::<Result<Vec<i64>, _>>()?;
        write_slice(&values, buf, cap, len)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ek_complex_euler_characteristic(k: *const EkComplex, out: *mut i64) -> EkStatus {
    guard(|| {
        write_out(
            out,
            invariants::euler_characteristic(&complex_arg(k)?.complex),
            "out",
        )
    })
}

/// Whether every link has the Euler characteristic of a sphere of the
/// matching dimension. The empty complex does not pass.
#[no_mangle]
pub unsafe extern "C" fn ek_check_eulerian(k: *const EkComplex, holds: *mut bool) -> EkStatus {
    guard(|| {
        let r = checks::is_eulerian(&complex_arg(k)?.complex, SearchMode::FirstFailure);
        write_out(holds, r.holds, "holds")
    })
}

/// Whether every Dehn–Sommerville row holds. `EK_STATUS_INVALID_INPUT` for
/// the empty complex.
#[no_mangle]
pub unsafe extern "C" fn ek_check_dehn_sommerville(k: *const EkComplex, holds: *mut bool) -> EkStatus {
    guard(|| {
        let ds = checks::ds_residuals(&complex_arg(k)?.complex)
            .map_err(|e| (EkStatus::InvalidInput, e.to_string()))?;
        write_out(holds, ds.report.holds, "holds")
    })
}

/// Compares χ with `Σ (-1/2)^i f_i`. `parity_warning` is set for odd
/// dimensions and may be null.
#[no_mangle]
pub unsafe extern "C" fn ek_check_main_formula(
    k: *const EkComplex,
    holds: *mut bool,
    parity_warning: *mut bool,
) -> EkStatus {
    guard(|| {
        let mf = checks::check_main_formula(&complex_arg(k)?.complex)
            .map_err(|e| (EkStatus::InvalidInput, e.to_string()))?;
        write_out(holds, mf.holds, "holds")?;
        if !parity_warning.is_null() {
            parity_warning.write(mf.parity_warning);
        }
        Ok(())
    })
}

/// Whether every clique of the 1-skeleton is a face.
#[no_mangle]
pub unsafe extern "C" fn ek_check_flag(k: *const EkComplex, holds: *mut bool) -> EkStatus {
    guard(|| write_out(holds, complex_arg(k)?.complex.is_flag(), "holds"))
}

/// The JSON report for the checks named in `checks`, comma- or
/// space-separated from eulerian, ds, formula, proof, flag and all. A null
/// or empty `checks` is the same as `all`: every check except flag.
/// `exhaustive` collects every failing face.
#[no_mangle]
pub unsafe extern "C" fn ek_report_json(
    k: *const EkComplex,
    checks: *const c_char,
    exhaustive: bool,
    out: *mut *mut c_char,
) -> EkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let k = complex_arg(k)?;
        let names: Vec<&str> = if checks.is_null() {
            Vec::new()
        } else {
            str_arg(checks, "checks")?
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect()
        };
        let selection = Selection::parse(&names).map_err(|e| (EkStatus::InvalidInput, e))?;
        let mode = if exhaustive {
            SearchMode::Exhaustive
        } else {
            SearchMode::FirstFailure
        };
        let doc = ReportDocument::check(&k.complex, k.input.clone(), &selection, mode);
        write_string(out, doc.to_json())
    })
}

/// The facets in the plain format, one per line.
#[no_mangle]
pub unsafe extern "C" fn ek_complex_to_text(k: *const EkComplex, out: *mut *mut c_char) -> EkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        write_string(out, io::to_plain(&complex_arg(k)?.complex))
    })
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ek_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failed call on this thread, or null after a
/// successful call. Valid until the next call into the library on this
/// thread.
#[no_mangle]
pub extern "C" fn ek_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn ek_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
