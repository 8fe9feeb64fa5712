//! C interface to `odesign`.
//!
//! Designs are opaque [`OdDesign`] handles. Every function returns an
//! [`OdStatus`]; on failure, [`od_last_error_message`] describes the most
//! recent error on the calling thread. Handles are released with
//! [`od_design_free`] and strings with [`od_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use odesign::io::{Construction, DesignDocument};
use odesign::{Error, Family};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Unsupported = 3,
    Parse = 4,
    InvalidDesign = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OdFamily {
    R = 0,
    AlpO = 1,
    AlpQ = 2,
    Gp = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OdRate1Variant {
    W = 0,
    WHat = 1,
}

/// One design cell. `sign` is 0 for a zero cell, in which case the other
/// fields are unspecified.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OdCell {
    pub sign: i8,
    pub var: u32,
    pub conj: bool,
    pub scaled: bool,
}

/// An immutable design and how it was made.
pub struct OdDesign {
    matrix: odesign::DesignMatrix,
    construction: Construction,
    family: Option<Family>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("NULs removed"));
}

fn status_of(e: &Error) -> OdStatus {
    match e {
        Error::InvalidDesign(_) | Error::Schema { .. } | Error::NotMonomial { .. } => {
            OdStatus::InvalidDesign
        }
        Error::Parse { .. } => OdStatus::Parse,
        Error::Unsupported(_) | Error::TooLarge(_) | Error::TooManyColumns { .. } => {
            OdStatus::Unsupported
        }
        _ => OdStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic and mapping it to a status.
fn guard(f: impl FnOnce() -> Result<(), (OdStatus, String)>) -> OdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OdStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            OdStatus::Internal
        }
    }
}

fn lib<T>(r: odesign::Result<T>) -> Result<T, (OdStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), (OdStatus, String)> {
    if p.is_null() {
        Err((OdStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn family(f: OdFamily) -> Family {
    match f {
        OdFamily::R => Family::R,
        OdFamily::AlpO => Family::AlpO,
        OdFamily::AlpQ => Family::AlpQ,
        OdFamily::Gp => Family::Gp,
    }
}

/// # Safety
/// `out` must be valid for a pointer write.
unsafe fn emit(out: *mut *mut OdDesign, d: OdDesign) {
    *out = Box::into_raw(Box::new(d));
}

/// # Safety
/// `d` must be null or a live handle from this library.
unsafe fn design<'a>(d: *const OdDesign) -> Result<&'a OdDesign, (OdStatus, String)> {
    non_null(d, "design")?;
    Ok(&*d)
}

/// The message for the most recent failure on this thread, or "" if there
/// was none. Successful calls leave it alone. The pointer stays valid until
/// the next failing call on this thread.
#[no_mangle]
pub extern "C" fn od_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Square ROD of order `t` (a power of two).
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn od_square(
    t: u64,
    fam: OdFamily,
    recursive: bool,
    out: *mut *mut OdDesign,
) -> OdStatus {
    guard(|| {
        non_null(out, "out")?;
        let f = family(fam);
        let (matrix, construction) = if recursive {
            (lib(odesign::build_square_recursive(t, f))?, Construction::SquareRecursive)
        } else {
            (lib(odesign::build_square(t, f))?, Construction::Square)
        };
        emit(out, OdDesign { matrix, construction, family: Some(f) });
        Ok(())
    })
}

/// Rate-1 ROD `W_n` or its companion.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn od_rate1(
    n: usize,
    variant: OdRate1Variant,
    fam: OdFamily,
    out: *mut *mut OdDesign,
) -> OdStatus {
    guard(|| {
        non_null(out, "out")?;
        let f = family(fam);
        let (v, construction) = match variant {
            OdRate1Variant::W => (odesign::Rate1Variant::W, Construction::Rate1W),
            OdRate1Variant::WHat => (odesign::Rate1Variant::WHat, Construction::Rate1What),
        };
        let rod = lib(odesign::build_rate1_for(n, v, f))?;
        emit(out, OdDesign { matrix: rod.matrix, construction, family: Some(f) });
        Ok(())
    })
}

/// Rate-½ scaled COD `RH_n` (`n ≥ 5`), optionally post-multiplied by `Q_n`.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn od_rh(
    n: usize,
    fam: OdFamily,
    zero_free: bool,
    out: *mut *mut OdDesign,
) -> OdStatus {
    guard(|| {
        non_null(out, "out")?;
        let mut cod = lib(odesign::build_rh(n, family(fam)))?;
        let mut construction = Construction::Rh;
        if zero_free {
            let q = lib(odesign::PostMultiplier::q(n))?;
            cod = lib(odesign::post_multiply(&cod, &q))?;
            construction = Construction::RhZeroFree;
        }
        emit(out, OdDesign { matrix: cod.matrix, construction, family: cod.family });
        Ok(())
    })
}

/// Rate-½ scaled COD `TJC_n`.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn od_tjc(n: usize, fam: OdFamily, out: *mut *mut OdDesign) -> OdStatus {
    guard(|| {
        non_null(out, "out")?;
        let cod = lib(odesign::build_tjc(n, family(fam)))?;
        emit(out, OdDesign { matrix: cod.matrix, construction: Construction::Tjc, family: cod.family });
        Ok(())
    })
}

/// Parses a JSON design document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writing
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn od_design_from_json(json: *const c_char, out: *mut *mut OdDesign) -> OdStatus {
    guard(|| {
        non_null(json, "json")?;
        non_null(out, "out")?;
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (OdStatus::Parse, format!("not UTF-8: {e}")))?;
        let doc = lib(DesignDocument::parse(text))?;
        let matrix = lib(doc.to_design())?;
        emit(out, OdDesign {
            matrix,
            construction: doc.params.construction,
            family: doc.family(),
        });
        Ok(())
    })
}

/// Serializes a design; free the result with [`od_string_free`].
///
/// # Safety
/// `d` must be a live handle; `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn od_design_to_json(d: *const OdDesign, out: *mut *mut c_char) -> OdStatus {
    guard(|| {
        let d = design(d)?;
        non_null(out, "out")?;
        let json = DesignDocument::from_design(&d.matrix, d.construction, d.family).to_json();
        *out = CString::new(json).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn od_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `d` must be null or a live handle, which must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn od_design_free(d: *mut OdDesign) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Rows, columns and variable count. Any output pointer may be null.
///
/// # Safety
/// `d` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn od_design_shape(
    d: *const OdDesign,
    rows: *mut usize,
    cols: *mut usize,
    num_vars: *mut usize,
) -> OdStatus {
    guard(|| {
        let d = &design(d)?.matrix;
        for (p, v) in [(rows, d.rows()), (cols, d.cols()), (num_vars, d.num_vars())] {
            if !p.is_null() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn od_design_cell(
    d: *const OdDesign,
    row: usize,
    col: usize,
    out: *mut OdCell,
) -> OdStatus {
    guard(|| {
        let d = &design(d)?.matrix;
        non_null(out, "out")?;
        if row >= d.rows() || col >= d.cols() {
            return Err((OdStatus::InvalidArgument, format!("cell ({row}, {col}) out of range")));
        }
        *out = match d.get(row, col).literal() {
            None => OdCell::default(),
            Some(l) => OdCell {
                sign: l.sign(),
                var: l.var as u32,
                conj: l.conj,
                scaled: l.is_scaled(),
            },
        };
        Ok(())
    })
}

/// Checks the orthogonality identity exactly. `*ok` is set either way;
/// the status is `Ok` unless the arguments are bad. When `*ok` is false the
/// failing Gram cell is described by [`od_last_error_message`].
///
/// # Safety
/// `d` must be a live handle; `ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn od_verify(d: *const OdDesign, ok: *mut bool) -> OdStatus {
    guard(|| {
        let d = design(d)?;
        non_null(ok, "ok")?;
        let rep = odesign::verify(&d.matrix);
        *ok = rep.ok;
        if !rep.ok {
            set_error(rep.to_string());
        }
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn od_rho(n: u64, out: *mut u64) -> OdStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = lib(odesign::rho(n))?.rho as u64;
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn od_nu(n: u64, out: *mut u64) -> OdStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = lib(odesign::nu(n))?.nu;
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn od_hopf_stiefel(n: u64, k: u64, out: *mut u64) -> OdStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = lib(odesign::hopf_stiefel(n, k))?;
        Ok(())
    })
}
