//! C ABI for `qes2d`.
//!
//! Every function returns a [`Qes2dStatus`]; results go through out-pointers.
//! Solutions live behind an opaque [`Qes2dSolutionSet`] handle that the caller
//! releases with [`qes2d_solution_set_free`]. The text of the most recent
//! error on the calling thread is available from [`qes2d_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qes2d::oracle::{fd_spectrum, ode_residual, Grid};
use qes2d::quantization::{
    mixed_coulomb_solve_with, sextic_constraint_solve, singular_b_solve_with, solve, SexticUnknown, SolveOptions,
};
use qes2d::wavefunction::{normalize, RadialState};
use qes2d::{Family, FormulaSet, PotentialSpec, QesError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qes2dStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ConstraintViolated = 3,
    NoRealRoots = 4,
    NoSolution = 5,
    NonRealEnergy = 6,
    NumericalFailure = 7,
    BufferTooSmall = 8,
    IndexOutOfRange = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qes2dFamily {
    /// `a r² + b r⁴ + c r⁶`, coefficients `[a, b, c]`
    Sextic = 0,
    /// `a r + b r² + c/r`, coefficients `[a, b, c]`
    Mixed = 1,
    /// `a r² + b/r² + c/r⁴ + d/r⁶`, coefficients `[a, b, c, d]`
    Singular = 2,
}

impl From<Qes2dFamily> for Family {
    fn from(f: Qes2dFamily) -> Self {
        match f {
            Qes2dFamily::Sextic => Family::Sextic,
            Qes2dFamily::Mixed => Family::Mixed,
            Qes2dFamily::Singular => Family::SingularEvenPower,
        }
    }
}

fn family_from(raw: u32) -> Result<Qes2dFamily, Qes2dStatus> {
    match raw {
        0 => Ok(Qes2dFamily::Sextic),
        1 => Ok(Qes2dFamily::Mixed),
        2 => Ok(Qes2dFamily::Singular),
        _ => Err(fail(Qes2dStatus::InvalidArgument, format!("unknown family {raw}"))),
    }
}

/// Normalized closed-form states for one configuration, ordered by energy.
pub struct Qes2dSolutionSet {
    states: Vec<RadialState>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn remember(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn status_of(e: &QesError) -> Qes2dStatus {
    match e {
        QesError::InvalidParameter { .. }
        | QesError::Domain(_)
        | QesError::FamilyMismatch { .. }
        | QesError::Grid(_) => Qes2dStatus::InvalidArgument,
        QesError::ConstraintViolated { .. } => Qes2dStatus::ConstraintViolated,
        QesError::NoRealRoots => Qes2dStatus::NoRealRoots,
        QesError::NoSolution(_) => Qes2dStatus::NoSolution,
        QesError::NonRealEnergy { .. } => Qes2dStatus::NonRealEnergy,
        QesError::SingularRecurrence(_) | QesError::QuadratureFailure { .. } => Qes2dStatus::NumericalFailure,
    }
}

fn fail(status: Qes2dStatus, message: impl Into<String>) -> Qes2dStatus {
    remember(message.into());
    status
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Qes2dStatus>) -> Qes2dStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            remember(String::new());
            Qes2dStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(Qes2dStatus::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, Qes2dStatus>;
}

impl<T> OrStatus<T> for qes2d::Result<T> {
    fn or_status(self) -> Result<T, Qes2dStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn slice<'a>(data: *const f64, len: usize) -> Result<&'a [f64], Qes2dStatus> {
    if len == 0 {
        Ok(&[])
    } else if data.is_null() {
        Err(fail(Qes2dStatus::NullPointer, "coefficient pointer is null"))
    } else {
        Ok(std::slice::from_raw_parts(data, len))
    }
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Qes2dStatus> {
    if out.is_null() {
        return Err(fail(Qes2dStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

/// Copies `values` into `buf` and stores the full length in `out_len`.
/// A null `buf` only queries the length.
unsafe fn write_array(values: &[f64], buf: *mut f64, len: usize, out_len: *mut usize) -> Result<(), Qes2dStatus> {
    write(out_len, values.len())?;
    if buf.is_null() {
        return Ok(());
    }
    if len < values.len() {
        return Err(fail(Qes2dStatus::BufferTooSmall, format!("need {} values, got {len}", values.len())));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

unsafe fn state<'a>(set: *const Qes2dSolutionSet, index: usize) -> Result<&'a RadialState, Qes2dStatus> {
    let set = set.as_ref().ok_or_else(|| fail(Qes2dStatus::NullPointer, "solution set is null"))?;
    set.states
        .get(index)
        .ok_or_else(|| fail(Qes2dStatus::IndexOutOfRange, format!("index {index} of {}", set.states.len())))
}

fn formulas(use_printed: bool) -> FormulaSet {
    if use_printed {
        FormulaSet::Printed
    } else {
        FormulaSet::Corrected
    }
}

/// Solves one configuration and stores a new handle in `*out`.
/// `family` takes a [`Qes2dFamily`] value.
/// On failure `*out` is set to null.
///
/// # Safety
/// `coeffs` must point to `n_coeffs` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qes2d_solve(
    family: u32,
    coeffs: *const f64,
    n_coeffs: usize,
    m: u32,
    p: usize,
    use_printed: bool,
    out: *mut *mut Qes2dSolutionSet,
) -> Qes2dStatus {
    guard(|| {
        write(out, ptr::null_mut())?;
        let spec =
            PotentialSpec::from_coefficients(family_from(family)?.into(), slice(coeffs, n_coeffs)?).or_status()?;
        let options = SolveOptions { formulas: formulas(use_printed), ..SolveOptions::default() };
        let states = solve(&spec, m, p, options)
            .or_status()?
            .into_iter()
            .map(normalize)
            .collect::<qes2d::Result<Vec<_>>>()
            .or_status()?;
        out.write(Box::into_raw(Box::new(Qes2dSolutionSet { states })));
        Ok(())
    })
}

/// Releases a handle from [`qes2d_solve`]. Null is ignored.
///
/// # Safety
/// `set` must come from [`qes2d_solve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qes2d_solution_set_free(set: *mut Qes2dSolutionSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qes2d_solution_count(set: *const Qes2dSolutionSet, out: *mut usize) -> Qes2dStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| fail(Qes2dStatus::NullPointer, "solution set is null"))?;
        write(out, set.states.len())
    })
}

/// # Safety
/// `set` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qes2d_solution_energy(
    set: *const Qes2dSolutionSet,
    index: usize,
    out: *mut f64,
) -> Qes2dStatus {
    guard(|| write(out, state(set, index)?.solution.energy))
}

/// Series coefficients `a₀…a_p` (with `a₀ = 1`).
///
/// # Safety
/// `buf` must hold `len` doubles or be null; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qes2d_solution_coefficients(
    set: *const Qes2dSolutionSet,
    index: usize,
    buf: *mut f64,
    len: usize,
    out_len: *mut usize,
) -> Qes2dStatus {
    guard(|| write_array(state(set, index)?.solution.coefficients.values(), buf, len, out_len))
}

/// # Safety
/// `set` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qes2d_solution_normalization(
    set: *const Qes2dSolutionSet,
    index: usize,
    out: *mut f64,
) -> Qes2dStatus {
    guard(|| write(out, state(set, index)?.normalization))
}

/// # Safety
/// `set` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qes2d_solution_node_count(
    set: *const Qes2dSolutionSet,
    index: usize,
    out: *mut usize,
) -> Qes2dStatus {
    guard(|| write(out, state(set, index)?.node_count))
}

/// # Safety
/// `set` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qes2d_solution_ode_residual(
    set: *const Qes2dSolutionSet,
    index: usize,
    out: *mut f64,
) -> Qes2dStatus {
    guard(|| write(out, ode_residual(&state(set, index)?.solution)))
}

/// Normalized `R(r)` for `r > 0`.
///
/// # Safety
/// `set` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qes2d_radial_value(
    set: *const Qes2dSolutionSet,
    index: usize,
    r: f64,
    out: *mut f64,
) -> Qes2dStatus {
    guard(|| write(out, state(set, index)?.value(r).or_status()?))
}

/// Coefficient values that make a configuration solvable at order `p`.
/// `known` holds `[b, c]` (sextic, returns `a`), `[a, b]` (mixed, returns `c`)
/// or `[a, c, d]` (singular, returns `b`).
///
/// # Safety
/// `known` must point to `n_known` doubles; `buf`/`out_len` as in
/// [`qes2d_solution_coefficients`].
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn qes2d_constraint_roots(
    family: u32,
    known: *const f64,
    n_known: usize,
    m: u32,
    p: usize,
    use_printed: bool,
    buf: *mut f64,
    len: usize,
    out_len: *mut usize,
) -> Qes2dStatus {
    guard(|| {
        let family = family_from(family)?;
        let k = slice(known, n_known)?;
        let expected = if family == Qes2dFamily::Singular { 3 } else { 2 };
        if k.len() != expected {
            return Err(fail(Qes2dStatus::InvalidArgument, format!("expected {expected} known coefficients")));
        }
        let roots = match family {
            Qes2dFamily::Sextic => sextic_constraint_solve(m, p, SexticUnknown::A { b: k[0], c: k[1] }),
            Qes2dFamily::Mixed => mixed_coulomb_solve_with(k[0], k[1], m, p, formulas(use_printed)),
            Qes2dFamily::Singular => singular_b_solve_with(k[0], k[1], k[2], m, p, formulas(use_printed)),
        }
        .or_status()?;
        write_array(&roots, buf, len, out_len)
    })
}

/// Lowest `k` eigenvalues of the discretized radial problem on
/// `n_points` cells of `[r_min, r_max]`. `buf` must hold `k` doubles.
///
/// # Safety
/// `coeffs` must point to `n_coeffs` doubles; `buf` to `k` doubles.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn qes2d_fd_spectrum(
    family: u32,
    coeffs: *const f64,
    n_coeffs: usize,
    m: u32,
    r_min: f64,
    r_max: f64,
    n_points: usize,
    k: usize,
    buf: *mut f64,
) -> Qes2dStatus {
    guard(|| {
        if buf.is_null() && k > 0 {
            return Err(fail(Qes2dStatus::NullPointer, "output buffer is null"));
        }
        let spec =
            PotentialSpec::from_coefficients(family_from(family)?.into(), slice(coeffs, n_coeffs)?).or_status()?;
        let grid = Grid::new(r_min, r_max, n_points).or_status()?;
        let values = fd_spectrum(&spec, m, &grid, k).or_status()?;
        if values.len() < k {
            return Err(fail(Qes2dStatus::InvalidArgument, format!("grid has only {} levels", values.len())));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, k);
        Ok(())
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn qes2d_status_message(status: Qes2dStatus) -> *const c_char {
    let text: &'static CStr = match status {
        Qes2dStatus::Ok => c"ok",
        Qes2dStatus::NullPointer => c"null pointer",
        Qes2dStatus::InvalidArgument => c"invalid argument",
        Qes2dStatus::ConstraintViolated => c"solvability constraint violated",
        Qes2dStatus::NoRealRoots => c"no real roots",
        Qes2dStatus::NoSolution => c"no solution",
        Qes2dStatus::NonRealEnergy => c"non-real energy",
        Qes2dStatus::NumericalFailure => c"numerical failure",
        Qes2dStatus::BufferTooSmall => c"buffer too small",
        Qes2dStatus::IndexOutOfRange => c"index out of range",
        Qes2dStatus::Panic => c"internal panic",
    };
    text.as_ptr()
}

/// Detail for the most recent failing call on this thread; empty after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qes2d_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn qes2d_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
