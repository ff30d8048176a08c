//! C ABI over the `hardwall` library.
//!
//! Every function returns an [`HwStatus`]; results go through out-pointers.
//! On failure a message is kept per thread and can be copied out with
//! [`hw_last_error_message`]. Handles are opaque and must be released with
//! their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hardwall::identities::{identity_suite, IdentityTag};
use hardwall::oracle::fd_eigenvalues_richardson;
use hardwall::physical::{dimensionless, zero_point_energy, AdsorptionSystem};
use hardwall::specfun::{recip_gamma, weber_d, SeriesControl};
use hardwall::spectrum::{
    asymptotic_epsilon0, asymptotic_epsilon1, characteristic, eigenstate, eigenvalues, Eigenstate,
    WellConfig, DEFAULT_TOL,
};
use hardwall::variational::{ritz_values, RitzProblem, RitzResult};
use hardwall::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnsupportedRange = 3,
    NonConvergence = 4,
    RootNotFound = 5,
    IllConditioned = 6,
    GridTooCoarse = 7,
    DomainError = 8,
    InvalidZeroIndex = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HwIdentity {
    Virial = 0,
    Hypervirial = 1,
    BoundaryDerivative = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HwEigenInfo {
    pub n: usize,
    pub epsilon: f64,
    pub weber_order: f64,
    pub norm: f64,
    pub node_count: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwIdentityReport {
    pub n: usize,
    pub q0: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub identity: HwIdentity,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HwDimensionless {
    pub length_unit: f64,
    pub omega: f64,
    pub q0: f64,
    pub energy_unit: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HwZeroPoint {
    pub epsilon0: f64,
    pub joule: f64,
    pub mev: f64,
    pub from_oracle: bool,
}

/// Opaque eigenstate handle.
pub struct HwEigenstate(Eigenstate);

/// Opaque Rayleigh–Ritz result handle.
pub struct HwRitz(RitzResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(HwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NonConvergence { .. } => HwStatus::NonConvergence,
            Error::UnsupportedRange { .. } => HwStatus::UnsupportedRange,
            Error::RootNotFound { .. } => HwStatus::RootNotFound,
            Error::DomainError { .. } => HwStatus::DomainError,
            Error::IllConditioned { .. } => HwStatus::IllConditioned,
            Error::GridTooCoarse(_) => HwStatus::GridTooCoarse,
            Error::InvalidZeroIndex { .. } => HwStatus::InvalidZeroIndex,
            Error::InvalidInput(_) => HwStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            HwStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {msg}"));
            HwStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(HwStatus::NullPointer, format!("{what} is null"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn fill(out: *mut f64, len: usize, values: &[f64]) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    if len < values.len() {
        return Err(Failure(
            HwStatus::BufferTooSmall,
            format!("buffer holds {len} values, need {}", values.len()),
        ));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

unsafe fn label_arg<'a>(label: *const c_char) -> Result<&'a str, Failure> {
    if label.is_null() {
        return Err(null("label"));
    }
    CStr::from_ptr(label)
        .to_str()
        .map_err(|_| Failure(HwStatus::InvalidArgument, "label is not UTF-8".into()))
}

fn preset(label: &str) -> Result<AdsorptionSystem, Failure> {
    AdsorptionSystem::preset(label).ok_or_else(|| {
        Failure(
            HwStatus::InvalidArgument,
            format!("unknown preset {label:?}"),
        )
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `len > 0`). Returns the length the full message
/// needs including the NUL, or 0 when there is no error.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn hw_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let slot = slot.borrow();
        let Some(msg) = slot.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_recip_gamma(x: f64, out: *mut f64) -> HwStatus {
    guard(|| write(out, recip_gamma(x), "out"))
}

/// Parabolic cylinder function `D_m(z)`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_weber_d(m: f64, z: f64, out: *mut f64) -> HwStatus {
    guard(|| write(out, weber_d(m, z, &SeriesControl::default())?, "out"))
}

/// Wall condition whose roots in `m` give the levels `ε = m + 1/2`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_characteristic(m: f64, q0: f64, out: *mut f64) -> HwStatus {
    guard(|| write(out, characteristic(m, &WellConfig::new(q0)?)?, "out"))
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_asymptotic_epsilon0(q0: f64, out: *mut f64) -> HwStatus {
    guard(|| write(out, asymptotic_epsilon0(&WellConfig::new(q0)?), "out"))
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_asymptotic_epsilon1(q0: f64, out: *mut f64) -> HwStatus {
    guard(|| write(out, asymptotic_epsilon1(&WellConfig::new(q0)?), "out"))
}

/// Levels `0..=n_max` into `out[0..n_max+1]`.
///
/// # Safety
/// `out` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hw_eigenvalues(
    q0: f64,
    n_max: usize,
    out: *mut f64,
    len: usize,
) -> HwStatus {
    guard(|| {
        let levels = eigenvalues(n_max, &WellConfig::new(q0)?, DEFAULT_TOL)?;
        let eps: Vec<f64> = levels.iter().map(|s| s.epsilon).collect();
        fill(out, len, &eps)
    })
}

/// Richardson-extrapolated finite-difference levels `0..=n_max`.
///
/// # Safety
/// `out` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hw_fd_eigenvalues(
    q0: f64,
    n_max: usize,
    out: *mut f64,
    len: usize,
) -> HwStatus {
    guard(|| {
        let levels = fd_eigenvalues_richardson(&WellConfig::new(q0)?, n_max)?;
        fill(out, len, &levels)
    })
}

/// # Safety
/// `out` must be valid for a write. The handle is released with
/// [`hw_eigenstate_free`].
#[no_mangle]
pub unsafe extern "C" fn hw_eigenstate_new(
    n: usize,
    q0: f64,
    out: *mut *mut HwEigenstate,
) -> HwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let state = eigenstate(n, &WellConfig::new(q0)?, DEFAULT_TOL)?;
        out.write(Box::into_raw(Box::new(HwEigenstate(state))));
        Ok(())
    })
}

/// # Safety
/// `state` must be null or come from [`hw_eigenstate_new`] and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn hw_eigenstate_free(state: *mut HwEigenstate) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// # Safety
/// `state` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_eigenstate_info(
    state: *const HwEigenstate,
    out: *mut HwEigenInfo,
) -> HwStatus {
    guard(|| {
        let s = state.as_ref().ok_or_else(|| null("state"))?.0.solution();
        let info = HwEigenInfo {
            n: s.n,
            epsilon: s.epsilon,
            weber_order: s.weber_order,
            norm: s.norm,
            node_count: s.node_count,
        };
        write(out, info, "out")
    })
}

/// Normalized eigenfunction at `q >= -q0`.
///
/// # Safety
/// `state` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_eigenstate_phi(
    state: *const HwEigenstate,
    q: f64,
    out: *mut f64,
) -> HwStatus {
    guard(|| {
        let s = &state.as_ref().ok_or_else(|| null("state"))?.0;
        let wall = -s.q0();
        if q.is_nan() || q < wall {
            return Err(Error::DomainError { q, wall }.into());
        }
        write(out, s.phi(q), "out")
    })
}

/// Virial, hypervirial and boundary-derivative reports for levels
/// `0..=n_max`, three per level. `written` receives the count.
///
/// # Safety
/// `out` must be valid for `len` writes; `written` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_identity_suite(
    q0: f64,
    n_max: usize,
    out: *mut HwIdentityReport,
    len: usize,
    written: *mut usize,
) -> HwStatus {
    guard(|| {
        if out.is_null() || written.is_null() {
            return Err(null("out"));
        }
        let needed = 3 * (n_max + 1);
        if len < needed {
            written.write(needed);
            return Err(Failure(
                HwStatus::BufferTooSmall,
                format!("buffer holds {len} reports, need {needed}"),
            ));
        }
        let reports = identity_suite(n_max, &WellConfig::new(q0)?)?;
        for (i, r) in reports.iter().enumerate() {
            out.add(i).write(HwIdentityReport {
                n: r.n,
                q0: r.q0,
                lhs: r.lhs,
                rhs: r.rhs,
                residual: r.residual,
                identity: match r.identity_tag {
                    IdentityTag::Virial => HwIdentity::Virial,
                    IdentityTag::Hypervirial => HwIdentity::Hypervirial,
                    IdentityTag::BoundaryDerivative => HwIdentity::BoundaryDerivative,
                },
            });
        }
        written.write(reports.len());
        Ok(())
    })
}

/// # Safety
/// `out` must be valid for a write. The handle is released with
/// [`hw_ritz_free`].
#[no_mangle]
pub unsafe extern "C" fn hw_ritz_new(
    basis_size: usize,
    q0: f64,
    out: *mut *mut HwRitz,
) -> HwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let result = ritz_values(&RitzProblem::new(basis_size, q0)?)?;
        out.write(Box::into_raw(Box::new(HwRitz(result))));
        Ok(())
    })
}

/// # Safety
/// `ritz` must be null or come from [`hw_ritz_new`] and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn hw_ritz_free(ritz: *mut HwRitz) {
    if !ritz.is_null() {
        drop(Box::from_raw(ritz));
    }
}

/// Number of Ritz values, or 0 for a null handle.
///
/// # Safety
/// `ritz` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hw_ritz_len(ritz: *const HwRitz) -> usize {
    ritz.as_ref().map_or(0, |r| r.0.values.len())
}

/// Ascending Ritz values into `out`.
///
/// # Safety
/// `ritz` must be a live handle; `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hw_ritz_values(
    ritz: *const HwRitz,
    out: *mut f64,
    len: usize,
) -> HwStatus {
    guard(|| {
        fill(
            out,
            len,
            &ritz.as_ref().ok_or_else(|| null("ritz"))?.0.values,
        )
    })
}

/// Basis coefficients of root `k`, normalized to `cᵀSc = 1`.
///
/// # Safety
/// `ritz` must be a live handle; `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hw_ritz_coefficients(
    ritz: *const HwRitz,
    k: usize,
    out: *mut f64,
    len: usize,
) -> HwStatus {
    guard(|| {
        let r = &ritz.as_ref().ok_or_else(|| null("ritz"))?.0;
        if k >= r.values.len() {
            return Err(Failure(
                HwStatus::InvalidArgument,
                format!("root {k} out of range (have {})", r.values.len()),
            ));
        }
        let c: Vec<f64> = r.coefficients.column(k).iter().copied().collect();
        fill(out, len, &c)
    })
}

/// # Safety
/// `ritz` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_ritz_overlap_condition(ritz: *const HwRitz, out: *mut f64) -> HwStatus {
    guard(|| {
        let r = &ritz.as_ref().ok_or_else(|| null("ritz"))?.0;
        write(out, r.overlap_condition, "out")
    })
}

fn lab_system(mass_amu: f64, k_npm: f64, d_angstrom: f64) -> Result<AdsorptionSystem, Failure> {
    Ok(AdsorptionSystem::from_lab_units(
        mass_amu, k_npm, d_angstrom, "custom",
    )?)
}

fn to_hw_form(sys: &AdsorptionSystem) -> HwDimensionless {
    let f = dimensionless(sys);
    HwDimensionless {
        length_unit: f.length_unit,
        omega: f.omega,
        q0: f.q0,
        energy_unit: f.energy_unit,
    }
}

fn to_hw_zpe(sys: &AdsorptionSystem) -> Result<HwZeroPoint, Failure> {
    let z = zero_point_energy(sys)?;
    Ok(HwZeroPoint {
        epsilon0: z.epsilon0,
        joule: z.joule,
        mev: z.mev,
        from_oracle: z.from_oracle,
    })
}

/// Mass in u, force constant in N/m, wall distance in Å.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_dimensionless(
    mass_amu: f64,
    k_npm: f64,
    d_angstrom: f64,
    out: *mut HwDimensionless,
) -> HwStatus {
    guard(|| {
        write(
            out,
            to_hw_form(&lab_system(mass_amu, k_npm, d_angstrom)?),
            "out",
        )
    })
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_zero_point_energy(
    mass_amu: f64,
    k_npm: f64,
    d_angstrom: f64,
    out: *mut HwZeroPoint,
) -> HwStatus {
    guard(|| {
        write(
            out,
            to_hw_zpe(&lab_system(mass_amu, k_npm, d_angstrom)?)?,
            "out",
        )
    })
}

/// Presets: `"H-Pd100"`, `"D-Pd100"`.
///
/// # Safety
/// `label` must be a NUL-terminated string; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_preset_dimensionless(
    label: *const c_char,
    out: *mut HwDimensionless,
) -> HwStatus {
    guard(|| write(out, to_hw_form(&preset(label_arg(label)?)?), "out"))
}

/// # Safety
/// `label` must be a NUL-terminated string; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hw_preset_zero_point_energy(
    label: *const c_char,
    out: *mut HwZeroPoint,
) -> HwStatus {
    guard(|| write(out, to_hw_zpe(&preset(label_arg(label)?)?)?, "out"))
}
