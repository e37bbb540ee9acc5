//! C ABI over su2su2. Every call returns an `Su2Status`; results go through
//! out-pointers. Handles are opaque and released with the matching `_free`.
//! On failure, `su2_last_error()` holds a message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use su2su2::entanglement::eigenstate_concurrence_closed_form;
use su2su2::graphene::{map_to_su2su2, GrapheneParams, KPoint};
use su2su2::hamiltonian::{classify, Branch, Case, CoefficientSet, DEFAULT_TOL};
use su2su2::quartic::solve_quartic;
use su2su2::solver::{solve, Eigensystem, Method};
use su2su2::thermo::{log_partition, purity, thermal_concurrence, ThermalBranch};
use su2su2::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Su2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NonHermitian = 3,
    Precondition = 4,
    NegativeRadicand = 5,
    Degenerate = 6,
    InvalidDensity = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Su2Case {
    SeparableDyadic = 0,
    DiagonalOmega = 1,
    EntangledAlphaNull = 2,
    EntangledBetaNull = 3,
    EntangledBoth = 4,
    General = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Su2Method {
    SeparableClosedForm = 0,
    EntangledClosedForm = 1,
    QuarticPlusOracleVectors = 2,
    OracleNumeric = 3,
}

/// Opaque coefficient set (υ, α, β, ω).
pub struct Su2Coefficients(CoefficientSet);

/// Opaque eigensystem.
pub struct Su2Eigensystem(Eigensystem);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> Su2Status {
    match e {
        Error::NonHermitian(_) | Error::ComplexCoefficient { .. } => Su2Status::NonHermitian,
        Error::InvalidDensity(_) => Su2Status::InvalidDensity,
        Error::Precondition(_) => Su2Status::Precondition,
        Error::InvalidArgument(_) => Su2Status::InvalidArgument,
        Error::NegativeRadicand(_) => Su2Status::NegativeRadicand,
        Error::Degenerate(_) => Su2Status::Degenerate,
    }
}

struct Fail(Su2Status, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null() -> Fail {
    Fail(Su2Status::NullPointer, "null pointer argument".into())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> Su2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Su2Status::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            Su2Status::Panic
        }
    }
}

unsafe fn read<const N: usize>(p: *const f64) -> Result<[f64; N], Fail> {
    if p.is_null() {
        return Err(null());
    }
    Ok(std::array::from_fn(|i| *p.add(i)))
}

unsafe fn set<'a>(c: *const Su2Coefficients) -> Result<&'a CoefficientSet, Fail> {
    c.as_ref().map(|c| &c.0).ok_or_else(null)
}

unsafe fn store<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = v;
    Ok(())
}

fn branch(positive: bool) -> ThermalBranch {
    if positive {
        ThermalBranch::PositiveOnly
    } else {
        ThermalBranch::Full
    }
}

/// Message for the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn su2_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `alpha`, `beta`: 3 doubles each. `omega`: 9 doubles, row-major.
///
/// # Safety
/// Pointers must be valid for the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn su2_coefficients_new(
    upsilon: f64,
    alpha: *const f64,
    beta: *const f64,
    omega: *const f64,
    out: *mut *mut Su2Coefficients,
) -> Su2Status {
    guard(|| {
        let w: [f64; 9] = read(omega)?;
        let c = CoefficientSet {
            upsilon,
            alpha: read(alpha)?,
            beta: read(beta)?,
            omega: [[w[0], w[1], w[2]], [w[3], w[4], w[5]], [w[6], w[7], w[8]]],
        };
        c.validate()?;
        store(out, Box::into_raw(Box::new(Su2Coefficients(c))))
    })
}

/// Coefficient set of the biased bilayer graphene model at (kx, ky).
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn su2_graphene_coefficients(
    t: f64,
    t3: f64,
    tperp: f64,
    m: f64,
    bias: f64,
    lattice: f64,
    kx: f64,
    ky: f64,
    out: *mut *mut Su2Coefficients,
) -> Su2Status {
    guard(|| {
        let p = GrapheneParams { t, t3, tperp, m, lambda_bias: bias, lattice };
        p.validate()?;
        if !(kx.is_finite() && ky.is_finite()) {
            return Err(Fail(Su2Status::InvalidArgument, "non-finite k".into()));
        }
        store(out, Box::into_raw(Box::new(Su2Coefficients(map_to_su2su2(&p, KPoint::new(kx, ky))))))
    })
}

/// # Safety
/// `c` must come from a constructor above and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn su2_coefficients_free(c: *mut Su2Coefficients) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle, `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn su2_classify(c: *const Su2Coefficients, out: *mut Su2Case) -> Su2Status {
    guard(|| {
        let case = match classify(set(c)?, DEFAULT_TOL).case {
            Case::SeparableDyadic => Su2Case::SeparableDyadic,
            Case::DiagonalOmega => Su2Case::DiagonalOmega,
            Case::EntangledConstrained(Branch::AlphaNull) => Su2Case::EntangledAlphaNull,
            Case::EntangledConstrained(Branch::BetaNull) => Su2Case::EntangledBetaNull,
            Case::EntangledConstrained(Branch::Both) => Su2Case::EntangledBoth,
            Case::General => Su2Case::General,
        };
        store(out, case)
    })
}

/// # Safety
/// `c` must be a live handle, `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn su2_solve(c: *const Su2Coefficients, out: *mut *mut Su2Eigensystem) -> Su2Status {
    guard(|| {
        let es = solve(set(c)?)?;
        store(out, Box::into_raw(Box::new(Su2Eigensystem(es))))
    })
}

/// # Safety
/// `es` must come from `su2_solve` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn su2_eigensystem_free(es: *mut Su2Eigensystem) {
    if !es.is_null() {
        drop(Box::from_raw(es));
    }
}

/// Eigenvalues in label order (1,1), (1,2), (2,1), (2,2); `values` holds 4 doubles.
///
/// # Safety
/// `es` must be a live handle, `values` valid for 4 writes.
#[no_mangle]
pub unsafe extern "C" fn su2_eigensystem_values(es: *const Su2Eigensystem, values: *mut f64) -> Su2Status {
    guard(|| {
        let es = &es.as_ref().ok_or_else(null)?.0;
        if values.is_null() {
            return Err(null());
        }
        for (k, p) in es.eigenvalues.iter().enumerate() {
            *values.add(k) = p.value;
        }
        Ok(())
    })
}

/// Projector of level `k` (0..4) as 16 real and 16 imaginary parts, row-major.
///
/// # Safety
/// `es` must be a live handle, `re` and `im` valid for 16 writes each.
#[no_mangle]
pub unsafe extern "C" fn su2_eigensystem_state(es: *const Su2Eigensystem, k: u32, re: *mut f64, im: *mut f64) -> Su2Status {
    guard(|| {
        let es = &es.as_ref().ok_or_else(null)?.0;
        if re.is_null() || im.is_null() {
            return Err(null());
        }
        let s = es.states.get(k as usize).ok_or_else(|| Fail(Su2Status::InvalidArgument, format!("level {k} out of range")))?;
        for i in 0..4 {
            for j in 0..4 {
                *re.add(4 * i + j) = s.0[i][j].re;
                *im.add(4 * i + j) = s.0[i][j].im;
            }
        }
        Ok(())
    })
}

/// # Safety
/// `es` must be a live handle, `method` and `degenerate` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn su2_eigensystem_method(
    es: *const Su2Eigensystem,
    method: *mut Su2Method,
    degenerate: *mut bool,
) -> Su2Status {
    guard(|| {
        let es = &es.as_ref().ok_or_else(null)?.0;
        let m = match es.method {
            Method::SeparableClosedForm => Su2Method::SeparableClosedForm,
            Method::EntangledClosedForm => Su2Method::EntangledClosedForm,
            Method::QuarticPlusOracleVectors => Su2Method::QuarticPlusOracleVectors,
            Method::OracleNumeric => Su2Method::OracleNumeric,
        };
        store(method, m)?;
        store(degenerate, es.degenerate)
    })
}

/// ln Z at temperature `t`; `positive` keeps the two highest levels only.
///
/// # Safety
/// `c` must be a live handle, `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn su2_log_partition(c: *const Su2Coefficients, t: f64, positive: bool, out: *mut f64) -> Su2Status {
    guard(|| store(out, log_partition(set(c)?, t, branch(positive))?.0))
}

/// Tr ρ² of the thermal state.
///
/// # Safety
/// `c` must be a live handle, `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn su2_purity(c: *const Su2Coefficients, t: f64, positive: bool, out: *mut f64) -> Su2Status {
    guard(|| store(out, purity(set(c)?, t, branch(positive))?))
}

/// Closed-form concurrence of eigenstate (m, n) of a constrained set.
///
/// # Safety
/// `c` must be a live handle, `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn su2_concurrence(c: *const Su2Coefficients, m: u8, n: u8, out: *mut f64) -> Su2Status {
    guard(|| store(out, eigenstate_concurrence_closed_form(set(c)?, m, n)?))
}

/// Closed-form thermal concurrence; `verified` reports whether it is exact
/// for this set.
///
/// # Safety
/// `c` must be a live handle, `out` and `verified` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn su2_thermal_concurrence(
    c: *const Su2Coefficients,
    t: f64,
    out: *mut f64,
    verified: *mut bool,
) -> Su2Status {
    guard(|| {
        let tc = thermal_concurrence(set(c)?, t)?;
        store(out, tc.closed_form)?;
        store(verified, tc.verified)
    })
}

/// Roots of c[0] x⁴ + c[1] x³ + c[2] x² + c[3] x + c[4].
///
/// # Safety
/// `coeffs` valid for 5 reads, `re` and `im` for 4 writes each.
#[no_mangle]
pub unsafe extern "C" fn su2_quartic(coeffs: *const f64, re: *mut f64, im: *mut f64) -> Su2Status {
    guard(|| {
        let c: [f64; 5] = read(coeffs)?;
        if re.is_null() || im.is_null() {
            return Err(null());
        }
        let roots = solve_quartic(c[0], c[1], c[2], c[3], c[4])?;
        for (k, z) in roots.iter().enumerate() {
            *re.add(k) = z.re;
            *im.add(k) = z.im;
        }
        Ok(())
    })
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::ComplexCoefficient { index: 3, imag: 1.0 }), Su2Status::NonHermitian);
        assert_eq!(status_of(&Error::Degenerate("x".into())), Su2Status::Degenerate);
        assert_eq!(status_of(&Error::NegativeRadicand(-1.0)), Su2Status::NegativeRadicand);
    }

    #[test]
    fn panics_are_caught() {
        let prev = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        let s = guard(|| panic!("boom"));
        std::panic::set_hook(prev);
        assert_eq!(s, Su2Status::Panic);
        let msg = unsafe { std::ffi::CStr::from_ptr(su2_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }
}
