//! C ABI over the workbench.
//!
//! Every fallible function returns a [`GolabError`] and writes its result
//! through an out-pointer. Strings handed out are owned by the caller and
//! must be released with [`golab_string_free`]; handles with their `_free`
//! function. [`golab_last_error_message`] describes the last failure on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use golab::config::SpaceConfig;
use golab::flagstruct::PaintedDiagram;
use golab::gometric::{check_normal, is_go_linear, necform_check, MetricEndo};
use golab::homspace::SpaceGS;
use golab::rootsys::{RootSystem, RootType};
use golab::Error;

/// Status codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GolabError {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Bad type, rank, painting, torus or config text.
    InvalidInput = 3,
    /// Metric not symmetric, positive or equivariant.
    InvalidMetric = 4,
    Internal = 5,
    Panic = 6,
}

/// Which property [`golab_space_check`] decides.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GolabCheck {
    Go = 0,
    Normal = 1,
    Necform = 2,
}

/// Opaque root system handle.
pub struct GolabRootSystem {
    rs: RootSystem,
}

/// Opaque handle for a space `G/S` with its configured metric.
pub struct GolabSpace {
    space: SpaceGS,
    metric: MetricEndo,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(e: &Error) -> GolabError {
    match e {
        Error::InvalidRank { .. }
        | Error::UnknownType(_)
        | Error::InvalidPainting(_)
        | Error::InvalidTorus(_)
        | Error::Parse(_)
        | Error::DimensionMismatch { .. }
        | Error::BadFactorIndex { .. }
        | Error::VacuousInput(_)
        | Error::GradingUndefined
        | Error::ProportionalRoots => GolabError::InvalidInput,
        Error::NotPositiveDefinite(_) | Error::NotPositive(_) | Error::InvariantViolation(_) => GolabError::InvalidMetric,
        _ => GolabError::Internal,
    }
}

fn fail(code: GolabError, msg: &str) -> GolabError {
    set_error(msg);
    code
}

fn guard(f: impl FnOnce() -> Result<(), GolabError>) -> GolabError {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GolabError::Ok
        }
        Ok(Err(code)) => code,
        Err(_) => fail(GolabError::Panic, "panic inside the library"),
    }
}

fn lift(e: Error) -> GolabError {
    fail(code_of(&e), &e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, GolabError> {
    if p.is_null() {
        return Err(fail(GolabError::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(GolabError::InvalidUtf8, "argument is not UTF-8"))
}

fn out_string(json: String, out: *mut *mut c_char) -> Result<(), GolabError> {
    let c = CString::new(json).map_err(|_| fail(GolabError::Internal, "report contains a nul byte"))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn null_check<T>(p: *const T, what: &str) -> Result<(), GolabError> {
    if p.is_null() {
        Err(fail(GolabError::NullPointer, &format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// Message of the last failure on this thread; empty after a success.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn golab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn golab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the root system of type `"A"`..`"D"`, `"G"` and the given rank.
///
/// # Safety
/// `type_label` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn golab_rootsys_new(
    type_label: *const c_char,
    rank: u32,
    out: *mut *mut GolabRootSystem,
) -> GolabError {
    guard(|| {
        null_check(out, "out")?;
        let t = RootType::parse(str_arg(type_label)?).map_err(lift)?;
        let rs = RootSystem::build(t, rank as usize).map_err(lift)?;
        *out = Box::into_raw(Box::new(GolabRootSystem { rs }));
        Ok(())
    })
}

/// # Safety
/// `rs` must come from [`golab_rootsys_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn golab_rootsys_free(rs: *mut GolabRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// # Safety
/// `rs` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn golab_rootsys_num_positive(rs: *const GolabRootSystem, out: *mut u32) -> GolabError {
    guard(|| {
        null_check(rs, "root system")?;
        null_check(out, "out")?;
        *out = (*rs).rs.num_positive() as u32;
        Ok(())
    })
}

/// JSON description: simple roots, positive roots and Cartan matrix.
///
/// # Safety
/// `rs` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn golab_rootsys_to_json(rs: *const GolabRootSystem, out: *mut *mut c_char) -> GolabError {
    guard(|| {
        null_check(rs, "root system")?;
        null_check(out, "out")?;
        out_string(serde_json::to_string(&(*rs).rs.to_report()).expect("report serializes"), out)
    })
}

/// Root partition of a painted diagram as JSON; nodes are numbered from 1.
///
/// # Safety
/// `rs` must be a live handle, `painted` must point to `count` values and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn golab_flag_describe_json(
    rs: *const GolabRootSystem,
    painted: *const u32,
    count: usize,
    out: *mut *mut c_char,
) -> GolabError {
    guard(|| {
        null_check(rs, "root system")?;
        null_check(out, "out")?;
        null_check(painted, "painted")?;
        let nodes: Vec<usize> = std::slice::from_raw_parts(painted, count).iter().map(|&n| n as usize).collect();
        let pd = PaintedDiagram::from_one_based(&(*rs).rs, &nodes).map_err(lift)?;
        out_string(serde_json::to_string(&pd.report()).expect("report serializes"), out)
    })
}

/// Builds a space and its metric from TOML config text.
///
/// # Safety
/// `toml` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn golab_space_from_toml(toml: *const c_char, out: *mut *mut GolabSpace) -> GolabError {
    guard(|| {
        null_check(out, "out")?;
        let cfg = SpaceConfig::from_toml(str_arg(toml)?).map_err(lift)?;
        let space = cfg.space().map_err(lift)?;
        let metric = cfg.metric(&space).map_err(lift)?;
        *out = Box::into_raw(Box::new(GolabSpace { space, metric }));
        Ok(())
    })
}

/// # Safety
/// `sp` must come from [`golab_space_from_toml`] or be null.
#[no_mangle]
pub unsafe extern "C" fn golab_space_free(sp: *mut GolabSpace) {
    if !sp.is_null() {
        drop(Box::from_raw(sp));
    }
}

/// # Safety
/// `sp` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn golab_space_dim_m(sp: *const GolabSpace, out: *mut u32) -> GolabError {
    guard(|| {
        null_check(sp, "space")?;
        null_check(out, "out")?;
        *out = (*sp).space.dim_m() as u32;
        Ok(())
    })
}

/// Runs one decider on the configured metric. `holds` receives the verdict;
/// when `report` is not null it receives the JSON certificate.
///
/// # Safety
/// `sp` must be a live handle, `holds` writable, `report` writable or null.
#[no_mangle]
pub unsafe extern "C" fn golab_space_check(
    sp: *const GolabSpace,
    which: GolabCheck,
    holds: *mut bool,
    report: *mut *mut c_char,
) -> GolabError {
    guard(|| {
        null_check(sp, "space")?;
        null_check(holds, "holds")?;
        let GolabSpace { space, metric } = &*sp;
        let (ok, json) = match which {
            GolabCheck::Go => {
                let v = is_go_linear(space, metric);
                (v.is_go(), serde_json::to_string(&v.report()))
            }
            GolabCheck::Normal => {
                let v = check_normal(space, metric);
                (v.is_normal(), serde_json::to_string(&v.report()))
            }
            GolabCheck::Necform => {
                let v = necform_check(space, metric);
                (v.holds, serde_json::to_string(&v))
            }
        };
        *holds = ok;
        if !report.is_null() {
            out_string(json.expect("report serializes"), report)?;
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes_map() {
        assert_eq!(code_of(&Error::GradingUndefined), GolabError::InvalidInput);
        assert_eq!(code_of(&Error::NotPositive("x".into())), GolabError::InvalidMetric);
        assert_eq!(code_of(&Error::ConsistencyFailure("x".into())), GolabError::Internal);
    }

    #[test]
    fn last_error_is_thread_local() {
        set_error("boom");
        let other = std::thread::spawn(|| unsafe { CStr::from_ptr(golab_last_error_message()).to_str().unwrap().to_string() })
            .join()
            .unwrap();
        assert_eq!(other, "");
        let here = unsafe { CStr::from_ptr(golab_last_error_message()) };
        assert_eq!(here.to_str().unwrap(), "boom");
    }
}
