//! C ABI over `semiwedge`.
//!
//! Sets and Fock vectors cross the boundary as opaque handles owned by the
//! caller and released with the matching `*_free` function. Every fallible
//! call returns an [`SwStatus`]; on failure a message is available from
//! [`sw_last_error`] until the next call on the same thread. Strings handed
//! out by the library are released with [`sw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use semiwedge::crystal::{self, CeilingCache};
use semiwedge::fock::{self, FockVector};
use semiwedge::roof;
use semiwedge::{Error, IntegerSet};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidModulus = 4,
    ResidueOutOfRange = 5,
    ModulusMismatch = 6,
    OrderMismatch = 7,
    NotBounded = 8,
    AlreadyStable = 9,
    NotStable = 10,
    NotReduced = 11,
    NonMonotonePartition = 12,
    InvalidOperator = 13,
    NotPrime = 14,
    InexactDivision = 15,
    /// A crystal operator is not defined on the given set.
    Undefined = 16,
    /// The buffer passed in is too small; the required length is reported.
    BufferTooSmall = 17,
    Panic = 99,
}

impl From<&Error> for SwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidModulus(_) => SwStatus::InvalidModulus,
            Error::ResidueOutOfRange { .. } => SwStatus::ResidueOutOfRange,
            Error::ModulusMismatch { .. } => SwStatus::ModulusMismatch,
            Error::OrderMismatch { .. } => SwStatus::OrderMismatch,
            Error::NotBounded => SwStatus::NotBounded,
            Error::AlreadyStable => SwStatus::AlreadyStable,
            Error::NotStable => SwStatus::NotStable,
            Error::NotReduced(_) => SwStatus::NotReduced,
            Error::NonMonotonePartition => SwStatus::NonMonotonePartition,
            Error::InvalidOperator { .. } => SwStatus::InvalidOperator,
            Error::NotPrime(_) => SwStatus::NotPrime,
            Error::InexactDivision => SwStatus::InexactDivision,
            Error::Parse(_) => SwStatus::Parse,
        }
    }
}

/// Opaque handle to an integer set.
pub struct SwSet(IntegerSet);

/// Opaque handle to a Fock-space vector with integer coefficients.
pub struct SwFockVector(FockVector);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Fail(SwStatus);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Fail(SwStatus::from(&e))
    }
}

fn fail(status: SwStatus, message: &str) -> Fail {
    set_error(message);
    Fail(status)
}

/// Runs `body`, mapping errors and panics to status codes.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> SwStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SwStatus::Ok,
        Ok(Err(Fail(status))) => status,
        Err(_) => {
            set_error("internal panic");
            SwStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| fail(SwStatus::NullPointer, "null pointer argument"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| fail(SwStatus::NullPointer, "null output pointer"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(fail(SwStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(SwStatus::InvalidUtf8, "string is not UTF-8"))
}

fn give_string(text: String) -> *mut c_char {
    CString::new(text).expect("no interior nul").into_raw()
}

fn give_set(set: IntegerSet) -> *mut SwSet {
    Box::into_raw(Box::new(SwSet(set)))
}

fn give_vector(v: FockVector) -> *mut SwFockVector {
    Box::into_raw(Box::new(SwFockVector(v)))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn sw_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn sw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a set literal such as `n=5;<=0;3,4,7`.
///
/// # Safety
/// `literal` must be a nul-terminated string and `out_set` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_set_parse(literal: *const c_char, out_set: *mut *mut SwSet) -> SwStatus {
    guard(|| {
        let text = read_str(literal)?;
        let slot = out(out_set)?;
        *slot = give_set(text.parse::<IntegerSet>()?);
        Ok(())
    })
}

/// `L_m = {k ≤ m}` for modulus `n`.
///
/// # Safety
/// `out_set` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_set_vacuum(n: u32, m: i64, out_set: *mut *mut SwSet) -> SwStatus {
    guard(|| {
        let slot = out(out_set)?;
        *slot = give_set(IntegerSet::vacuum(n, m)?);
        Ok(())
    })
}

/// # Safety
/// `set` must be NULL or a handle from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn sw_set_free(set: *mut SwSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be a live handle and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_set_to_string(set: *const SwSet, out_text: *mut *mut c_char) -> SwStatus {
    guard(|| {
        let set = borrow(set)?;
        *out(out_text)? = give_string(set.0.to_string());
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must be live handles and `out_equal` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_set_equal(a: *const SwSet, b: *const SwSet, out_equal: *mut bool) -> SwStatus {
    guard(|| {
        *out(out_equal)? = borrow(a)?.0 == borrow(b)?.0;
        Ok(())
    })
}

/// # Safety
/// `set` must be a live handle and `out_order` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_set_order(set: *const SwSet, out_order: *mut i64) -> SwStatus {
    guard(|| {
        *out(out_order)? = borrow(set)?.0.order();
        Ok(())
    })
}

/// # Safety
/// `set` must be a live handle and `out_height` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_set_height(set: *const SwSet, out_height: *mut u64) -> SwStatus {
    guard(|| {
        *out(out_height)? = borrow(set)?.0.height();
        Ok(())
    })
}

/// # Safety
/// `set` must be a live handle and `out_flag` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_set_is_bounded(set: *const SwSet, out_flag: *mut bool) -> SwStatus {
    guard(|| {
        *out(out_flag)? = borrow(set)?.0.is_n_bounded();
        Ok(())
    })
}

/// # Safety
/// `set` must be a live handle and `out_flag` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_set_is_stable(set: *const SwSet, out_flag: *mut bool) -> SwStatus {
    guard(|| {
        *out(out_flag)? = borrow(set)?.0.is_n_stable();
        Ok(())
    })
}

/// The roof of `set` and the number of up steps taken.
///
/// # Safety
/// `set` must be a live handle; `out_roof` and `out_steps` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sw_roof(set: *const SwSet, out_roof: *mut *mut SwSet, out_steps: *mut usize) -> SwStatus {
    guard(|| {
        let r = roof::roof(&borrow(set)?.0)?;
        *out(out_steps)? = r.trace.len();
        *out(out_roof)? = give_set(r.set);
        Ok(())
    })
}

/// Copies the up trace into `ps` and `qs`, each of capacity `capacity`.
/// `out_len` receives the trace length; if it exceeds `capacity` nothing is
/// copied and `BufferTooSmall` is returned. A zero capacity with NULL
/// buffers queries the length.
///
/// # Safety
/// `ps` and `qs` must point to at least `capacity` elements each.
#[no_mangle]
pub unsafe extern "C" fn sw_roof_trace(
    set: *const SwSet,
    ps: *mut i64,
    qs: *mut i64,
    capacity: usize,
    out_len: *mut usize,
) -> SwStatus {
    guard(|| {
        let r = roof::roof(&borrow(set)?.0)?;
        *out(out_len)? = r.trace.len();
        if r.trace.len() > capacity {
            return Err(fail(SwStatus::BufferTooSmall, "trace longer than buffers"));
        }
        if r.trace.is_empty() {
            return Ok(());
        }
        if ps.is_null() || qs.is_null() {
            return Err(fail(SwStatus::NullPointer, "null trace buffer"));
        }
        for (idx, step) in r.trace.iter().enumerate() {
            *ps.add(idx) = step.p;
            *qs.add(idx) = step.q;
        }
        Ok(())
    })
}

/// # Safety
/// `set` must be a live handle and `out_set` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_ceiling(set: *const SwSet, out_set: *mut *mut SwSet) -> SwStatus {
    guard(|| {
        let set = &borrow(set)?.0;
        if !set.is_n_bounded() {
            return Err(Error::NotBounded.into());
        }
        *out(out_set)? = give_set(CeilingCache::new().ceiling(set));
        Ok(())
    })
}

/// Comma-separated reduced word for a stable set, in the order
/// `y = s_{r_1} s_{r_2} ⋯`.
///
/// # Safety
/// `set` must be a live handle and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_reduced_word(set: *const SwSet, out_text: *mut *mut c_char) -> SwStatus {
    guard(|| {
        let word = roof::reduced_word_from_extremal(&borrow(set)?.0)?;
        *out(out_text)? = give_string(word.to_string());
        Ok(())
    })
}

unsafe fn crystal_op(
    set: *const SwSet,
    i: u32,
    out_set: *mut *mut SwSet,
    op: fn(u32, &IntegerSet) -> Option<IntegerSet>,
) -> SwStatus {
    guard(|| {
        let set = &borrow(set)?.0;
        let slot = out(out_set)?;
        if i >= set.n() {
            return Err(Error::ResidueOutOfRange { residue: i, n: set.n() }.into());
        }
        match op(i, set) {
            Some(image) => {
                *slot = give_set(image);
                Ok(())
            }
            None => Err(fail(SwStatus::Undefined, "operator undefined on this set")),
        }
    })
}

/// Lowering operator `f_i`; `Undefined` when it does not act.
///
/// # Safety
/// `set` must be a live handle and `out_set` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_crystal_f(set: *const SwSet, i: u32, out_set: *mut *mut SwSet) -> SwStatus {
    crystal_op(set, i, out_set, crystal::f)
}

/// Raising operator `e_i`; `Undefined` when it does not act.
///
/// # Safety
/// `set` must be a live handle and `out_set` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_crystal_e(set: *const SwSet, i: u32, out_set: *mut *mut SwSet) -> SwStatus {
    crystal_op(set, i, out_set, crystal::e)
}

/// Whether `set` lies in the Demazure crystal with extremal set `top`.
///
/// # Safety
/// `set`, `top` must be live handles and `out_member` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_member(set: *const SwSet, top: *const SwSet, out_member: *mut bool) -> SwStatus {
    guard(|| {
        *out(out_member)? = roof::member(&borrow(set)?.0, &borrow(top)?.0)?;
        Ok(())
    })
}

/// The standard vector `v_J`.
///
/// # Safety
/// `set` must be a live handle and `out_vec` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_standard_vector(set: *const SwSet, out_vec: *mut *mut SwFockVector) -> SwStatus {
    guard(|| {
        *out(out_vec)? = give_vector(fock::standard_vector(&borrow(set)?.0)?);
        Ok(())
    })
}

/// The divided-power vector `v′_J`.
///
/// # Safety
/// `set` must be a live handle and `out_vec` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_divided_vector(set: *const SwSet, out_vec: *mut *mut SwFockVector) -> SwStatus {
    guard(|| {
        *out(out_vec)? = give_vector(fock::divided_vector(&borrow(set)?.0)?);
        Ok(())
    })
}

/// # Safety
/// `v` must be NULL or a handle from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn sw_fock_free(v: *mut SwFockVector) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Number of nonzero terms.
///
/// # Safety
/// `v` must be a live handle and `out_len` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_fock_len(v: *const SwFockVector, out_len: *mut usize) -> SwStatus {
    guard(|| {
        *out(out_len)? = borrow(v)?.0.len();
        Ok(())
    })
}

/// Term dump, one `<coefficient> * <set literal>` line per term.
///
/// # Safety
/// `v` must be a live handle and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_fock_to_dump(v: *const SwFockVector, out_text: *mut *mut c_char) -> SwStatus {
    guard(|| {
        *out(out_text)? = give_string(borrow(v)?.0.to_dump());
        Ok(())
    })
}

/// Coefficient of `ε_K` in `v` as a decimal string.
///
/// # Safety
/// `v`, `k` must be live handles and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_fock_coefficient(
    v: *const SwFockVector,
    k: *const SwSet,
    out_text: *mut *mut c_char,
) -> SwStatus {
    guard(|| {
        let c = borrow(v)?.0.coefficient(&borrow(k)?.0);
        *out(out_text)? = give_string(c.to_string());
        Ok(())
    })
}

/// Coefficient of `ε_K` in `v_J` as a decimal string, without expanding
/// `v_J` in full.
///
/// # Safety
/// `j`, `k` must be live handles and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_standard_coefficient(
    j: *const SwSet,
    k: *const SwSet,
    out_text: *mut *mut c_char,
) -> SwStatus {
    guard(|| {
        let c = fock::standard_coefficient(&borrow(j)?.0, &borrow(k)?.0)?;
        *out(out_text)? = give_string(c.to_string());
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping_covers_errors() {
        assert_eq!(SwStatus::from(&Error::NotBounded), SwStatus::NotBounded);
        assert_eq!(SwStatus::from(&Error::Parse("x".into())), SwStatus::Parse);
        assert_eq!(SwStatus::from(&Error::NotPrime(4)), SwStatus::NotPrime);
    }

    #[test]
    fn panics_become_status() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, SwStatus::Panic);
        let message = unsafe { CStr::from_ptr(sw_last_error()) };
        assert_eq!(message.to_str().unwrap(), "internal panic");
    }

    #[test]
    fn success_clears_error() {
        set_error("stale");
        assert_eq!(guard(|| Ok(())), SwStatus::Ok);
        assert!(sw_last_error().is_null());
    }
}
