//! C ABI for `seriesring`.
//!
//! Every fallible function returns an [`SrStatus`] and writes its result
//! through an out-pointer. Status values match the command-line exit codes.
//! On failure a message is kept per thread and can be read with
//! [`sr_last_error`]. Strings returned through `char**` are owned by the
//! caller and released with [`sr_string_free`]. Handles are released with
//! their `*_free` function; passing NULL to a free function is a no-op.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use seriesring::cli::{self, emit_dot, parse, run_args};
use seriesring::divisibility::{divides, factor_atoms, psi, RingChoice};
use seriesring::lattices::{enumerate_ideals, predicted_ideal_lattice, quotient_ring, FinitePoset};
use seriesring::series::{QuotientElement, Series, SeriesRing, DEFAULT_BUDGET};
use seriesring::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrStatus {
    Ok = 0,
    /// A checked property does not hold.
    Falsified = 1,
    /// Malformed or inconsistent input.
    Invalid = 2,
    /// Precision ran out, or a structure is too large to enumerate.
    Limit = 3,
    /// A required pointer was NULL or a string was not UTF-8.
    BadArgument = 4,
    /// The library panicked; the handle arguments should be treated as unusable.
    Internal = 5,
}

/// Which ring divisibility is decided in.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrRingChoice {
    /// All series with exponents in the positive cone.
    R = 0,
    /// Series whose constant term lies in the small field.
    S = 1,
}

/// A series ring: extension, exponent group and default precision.
pub struct SrRing {
    inner: Arc<SeriesRing>,
}

pub struct SrSeries {
    inner: Series,
}

/// A finite lattice with display labels.
pub struct SrLattice {
    inner: FinitePoset<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SrStatus {
    match cli::exit_code(e) {
        3 => SrStatus::Limit,
        _ => SrStatus::Invalid,
    }
}

enum Failure {
    Lib(Error),
    Arg(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SrStatus::Ok
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Arg(what))) => {
            set_error(what.to_string());
            SrStatus::BadArgument
        }
        Err(_) => {
            set_error("internal panic".into());
            SrStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Arg("NULL string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Arg("string argument is not UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Arg("NULL handle argument"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Arg("NULL out-pointer"));
    }
    out.write(value);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NUL bytes removed").into_raw()
}

/// Message for the most recent failure on this thread, or NULL after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a series ring from an extension literal such as `gf(4)/gf(2)`, a
/// group literal (`z`, `q`, `z*z`) and an optional precision literal (NULL
/// for the default).
///
/// # Safety
/// String arguments must be NULL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_ring_new(
    extension: *const c_char,
    group: *const c_char,
    precision: *const c_char,
    out: *mut *mut SrRing,
) -> SrStatus {
    guard(|| {
        let ext = Arc::new(parse::parse_extension(text(extension)?)?);
        let g = parse::parse_group(text(group)?)?;
        let tau = if precision.is_null() {
            cli::default_precision(&g)?
        } else {
            parse::parse_exponent(&g, text(precision)?)?
        };
        let ring = SeriesRing::new(ext, g, tau, DEFAULT_BUDGET)?;
        put(out, Box::into_raw(Box::new(SrRing { inner: ring })))
    })
}

/// # Safety
/// `ring` must be NULL or a handle from [`sr_ring_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_ring_free(ring: *mut SrRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Parses a series literal such as `1 + a*t^2 + O(t^5)` in `ring`.
///
/// # Safety
/// `ring` must be a live handle; `literal` NULL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sr_series_parse(ring: *const SrRing, literal: *const c_char, out: *mut *mut SrSeries) -> SrStatus {
    guard(|| {
        let s = parse::parse_series(&handle(ring)?.inner, text(literal)?)?;
        put(out, Box::into_raw(Box::new(SrSeries { inner: s })))
    })
}

/// # Safety
/// `series` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_series_free(series: *mut SrSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// The series as a literal including its `O(t^τ)` term.
///
/// # Safety
/// `series` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sr_series_to_string(series: *const SrSeries, out: *mut *mut c_char) -> SrStatus {
    guard(|| put(out, owned(handle(series)?.inner.to_string())))
}

unsafe fn binary(
    a: *const SrSeries,
    b: *const SrSeries,
    out: *mut *mut SrSeries,
    op: impl FnOnce(&Series, &Series) -> seriesring::Result<Series>,
) -> SrStatus {
    guard(|| {
        let s = op(&handle(a)?.inner, &handle(b)?.inner)?;
        put(out, Box::into_raw(Box::new(SrSeries { inner: s })))
    })
}

/// # Safety
/// `a` and `b` must be live handles from the same ring; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sr_series_add(a: *const SrSeries, b: *const SrSeries, out: *mut *mut SrSeries) -> SrStatus {
    binary(a, b, out, Series::add)
}

/// # Safety
/// `a` and `b` must be live handles from the same ring; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sr_series_mul(a: *const SrSeries, b: *const SrSeries, out: *mut *mut SrSeries) -> SrStatus {
    binary(a, b, out, Series::mul)
}

/// Multiplicative inverse of a series with nonzero constant term.
///
/// # Safety
/// `series` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sr_series_invert(series: *const SrSeries, out: *mut *mut SrSeries) -> SrStatus {
    guard(|| {
        let s = handle(series)?.inner.invert()?;
        put(out, Box::into_raw(Box::new(SrSeries { inner: s })))
    })
}

/// Whether `divisor` divides `dividend` in the ring named by `ring`, one of
/// the [`SrRingChoice`] values.
///
/// # Safety
/// Handles must be live and from the same ring; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sr_divides(
    divisor: *const SrSeries,
    dividend: *const SrSeries,
    ring: u32,
    out: *mut bool,
) -> SrStatus {
    guard(|| {
        let choice = match ring {
            x if x == SrRingChoice::R as u32 => RingChoice::R,
            x if x == SrRingChoice::S as u32 => RingChoice::S,
            _ => return Err(Failure::Arg("ring choice is not an SrRingChoice value")),
        };
        let d = divides(&handle(divisor)?.inner, &handle(dividend)?.inner, choice)?;
        put(out, d)
    })
}

/// ψ(num/den) in `(γ,cK♯)` notation.
///
/// # Safety
/// Handles must be live and from the same ring; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sr_psi(num: *const SrSeries, den: *const SrSeries, out: *mut *mut c_char) -> SrStatus {
    guard(|| {
        let num = &handle(num)?.inner;
        let q = QuotientElement::new(num.clone(), handle(den)?.inner.clone())?;
        let class = psi(&q)?;
        put(out, owned(class.format(&num.ring().value_group())))
    })
}

/// Number of atoms in a factorization of `series`, written to `count`, and
/// the atoms as a comma-separated list written to `atoms` (which may be NULL).
///
/// # Safety
/// `series` must be a live handle; `count` writable; `atoms` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sr_factor(series: *const SrSeries, count: *mut usize, atoms: *mut *mut c_char) -> SrStatus {
    guard(|| {
        let f = factor_atoms(&handle(series)?.inner)?;
        put(count, f.len())?;
        if !atoms.is_null() {
            let list: Vec<String> = f.atoms.iter().map(Series::format_terms).collect();
            put(atoms, owned(list.join(", ")))?;
        }
        Ok(())
    })
}

/// The predicted ideal lattice of the depth-`depth` truncation.
///
/// # Safety
/// `extension` NULL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sr_lattice_predicted(extension: *const c_char, depth: u32, out: *mut *mut SrLattice) -> SrStatus {
    guard(|| {
        let ext = Arc::new(parse::parse_extension(text(extension)?)?);
        let l = predicted_ideal_lattice(ext, depth)?.labeled();
        put(out, Box::into_raw(Box::new(SrLattice { inner: l })))
    })
}

/// Ideals of the depth-`depth` truncation found by exhaustive search.
///
/// # Safety
/// `extension` NULL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sr_lattice_brute(extension: *const c_char, depth: u32, out: *mut *mut SrLattice) -> SrStatus {
    guard(|| {
        let ext = Arc::new(parse::parse_extension(text(extension)?)?);
        let ring = quotient_ring(ext.clone(), depth)?;
        let l = enumerate_ideals(&ring)?.classified(&ring).map(|n| n.label(&ext));
        put(out, Box::into_raw(Box::new(SrLattice { inner: l })))
    })
}

/// # Safety
/// `lattice` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_lattice_free(lattice: *mut SrLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Node and cover counts.
///
/// # Safety
/// `lattice` must be a live handle; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn sr_lattice_size(lattice: *const SrLattice, nodes: *mut usize, covers: *mut usize) -> SrStatus {
    guard(|| {
        let l = &handle(lattice)?.inner;
        put(nodes, l.len())?;
        put(covers, l.covers().len())
    })
}

/// Whether the two lattices are isomorphic as posets.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sr_lattice_isomorphic(a: *const SrLattice, b: *const SrLattice, out: *mut bool) -> SrStatus {
    guard(|| {
        let iso = handle(a)?.inner.isomorphic(&handle(b)?.inner).is_iso();
        put(out, iso)
    })
}

/// Hasse diagram in DOT.
///
/// # Safety
/// `lattice` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sr_lattice_to_dot(lattice: *const SrLattice, out: *mut *mut c_char) -> SrStatus {
    guard(|| put(out, owned(emit_dot(&handle(lattice)?.inner))))
}

/// Runs a command line such as `check gf(4)/gf(2) --property atomic`. The
/// exit code is written to `code`; output streams go to `out` and `err`
/// (either may be NULL). The status reports failures of the call itself.
///
/// # Safety
/// `command` NULL-terminated; `code` writable; `out`, `err` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sr_run(command: *const c_char, code: *mut i32, out: *mut *mut c_char, err: *mut *mut c_char) -> SrStatus {
    guard(|| {
        let line = text(command)?;
        let args = shlex_split(line)?;
        let outcome = run_args(&args);
        put(code, i32::from(outcome.code))?;
        if !out.is_null() {
            put(out, owned(outcome.stdout))?;
        }
        if !err.is_null() {
            put(err, owned(outcome.stderr))?;
        }
        Ok(())
    })
}

fn shlex_split(line: &str) -> Result<Vec<String>, Failure> {
    shlex::split(line).ok_or_else(|| {
        Failure::Lib(Error::Validation("unbalanced quotes or trailing escape in command line".into()))
    })
}
