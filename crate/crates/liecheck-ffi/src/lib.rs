//! C ABI over the `liecheck` library.
//!
//! Handles are opaque pointers created and destroyed by this layer;
//! vectors cross the boundary as plain `uint64_t` coefficient arrays of
//! length `liecheck_algebra_dim`.  Every fallible call returns a status
//! code and records a message retrievable through `liecheck_last_error`.
//! The generated header lands in `include/liecheck.h`.

use liecheck::algebra::{build_algebra, Algebra, GVec};
use liecheck::cone::{enumerate_cone_with_budget, spanning_rank, ConePoints};
use liecheck::forms::{build_form, InvForm};
use liecheck::fp::Prime;
use liecheck::roots::RootKind;
use liecheck::scenario::{default_params, run_scenario};
use liecheck::LieError;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result codes shared by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LiecheckStatus {
    /// The call succeeded.
    Ok = 0,
    /// The call failed; `liecheck_last_error` has the reason.
    Error = 1,
    /// The arguments were malformed or out of range.
    Usage = 2,
    /// An enumeration exceeded its point budget.
    Budget = 3,
    /// A required pointer argument was null.
    NullArg = 4,
}

/// Opaque algebra handle.
pub struct LiecheckAlgebra {
    inner: Algebra,
    form: InvForm,
}

/// Opaque handle to an enumerated long-root cone.
pub struct LiecheckCone {
    cone: ConePoints,
    dim: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(e: &LieError) -> LiecheckStatus {
    match e.exit_code() {
        2 => LiecheckStatus::Usage,
        3 => LiecheckStatus::Budget,
        _ => LiecheckStatus::Error,
    }
}

fn fail(e: &LieError) -> LiecheckStatus {
    set_error(&e.to_string());
    status_of(e)
}

/// Run a closure, converting panics into `Error` so unwinding never
/// crosses the C boundary.
fn guarded(f: impl FnOnce() -> LiecheckStatus) -> LiecheckStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            LiecheckStatus::Error
        }
    }
}

unsafe fn gvec_from_raw(a: &Algebra, ptr: *const u64) -> GVec {
    let n = a.dim();
    let p = a.p().get();
    let coeffs: Vec<u64> = std::slice::from_raw_parts(ptr, n)
        .iter()
        .map(|&c| c % p)
        .collect();
    GVec::new(a.p(), coeffs)
}

unsafe fn gvec_to_raw(x: &GVec, out: *mut u64) {
    let coeffs = x.coeffs();
    std::ptr::copy_nonoverlapping(coeffs.as_ptr(), out, coeffs.len());
}

/// Latest error message for this thread; the pointer stays valid until
/// the next failing call from the same thread.
#[no_mangle]
pub extern "C" fn liecheck_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Version of the underlying library as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn liecheck_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Build the algebra of the given root system type (letter `A`–`G`),
/// rank and odd-or-even prime `p`, storing a handle through `out`.
///
/// # Safety
/// `out` must be a valid pointer; on `Ok` the caller owns the handle and
/// must release it with `liecheck_algebra_free`.
#[no_mangle]
pub unsafe extern "C" fn liecheck_algebra_new(
    kind: c_char,
    rank: usize,
    p: u64,
    out: *mut *mut LiecheckAlgebra,
) -> LiecheckStatus {
    if out.is_null() {
        return LiecheckStatus::NullArg;
    }
    guarded(|| {
        let build = || -> Result<Algebra, LieError> {
            let kind = RootKind::from_char(kind as u8 as char)?;
            build_algebra(kind, rank, Prime::new(p)?)
        };
        match build() {
            Ok(a) => {
                let form = build_form(&a);
                *out = Box::into_raw(Box::new(LiecheckAlgebra { inner: a, form }));
                LiecheckStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release an algebra handle.  A null pointer is ignored.
///
/// # Safety
/// The handle must come from `liecheck_algebra_new` and not be used
/// again afterwards.
#[no_mangle]
pub unsafe extern "C" fn liecheck_algebra_free(a: *mut LiecheckAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the algebra (the length of coefficient arrays); 0 for a
/// null handle.
///
/// # Safety
/// `a` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn liecheck_algebra_dim(a: *const LiecheckAlgebra) -> usize {
    if a.is_null() {
        0
    } else {
        (*a).inner.dim()
    }
}

/// Rank of the root system; 0 for a null handle.
///
/// # Safety
/// `a` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn liecheck_algebra_rank(a: *const LiecheckAlgebra) -> usize {
    if a.is_null() {
        0
    } else {
        (*a).inner.rank()
    }
}

/// Field characteristic; 0 for a null handle.
///
/// # Safety
/// `a` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn liecheck_algebra_p(a: *const LiecheckAlgebra) -> u64 {
    if a.is_null() {
        0
    } else {
        (*a).inner.p().get()
    }
}

/// Number of roots; 0 for a null handle.
///
/// # Safety
/// `a` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn liecheck_algebra_num_roots(a: *const LiecheckAlgebra) -> usize {
    if a.is_null() {
        0
    } else {
        (*a).inner.num_roots()
    }
}

/// Lie bracket `[x, y]` of two coefficient vectors of length `dim`.
///
/// # Safety
/// `x`, `y` and `out` must point to `dim` readable (resp. writable)
/// `uint64_t` slots; `out` may alias `x` or `y`.
#[no_mangle]
pub unsafe extern "C" fn liecheck_bracket(
    a: *const LiecheckAlgebra,
    x: *const u64,
    y: *const u64,
    out: *mut u64,
) -> LiecheckStatus {
    if a.is_null() || x.is_null() || y.is_null() || out.is_null() {
        return LiecheckStatus::NullArg;
    }
    guarded(|| {
        let alg = &(*a).inner;
        let r = alg.bracket(&gvec_from_raw(alg, x), &gvec_from_raw(alg, y));
        gvec_to_raw(&r, out);
        LiecheckStatus::Ok
    })
}

/// Apply the exponentiated root generator `x_root(t)` to a vector.
///
/// # Safety
/// As for `liecheck_bracket`; `root` must be below
/// `liecheck_algebra_num_roots`.
#[no_mangle]
pub unsafe extern "C" fn liecheck_adexp(
    a: *const LiecheckAlgebra,
    root: usize,
    t: u64,
    x: *const u64,
    out: *mut u64,
) -> LiecheckStatus {
    if a.is_null() || x.is_null() || out.is_null() {
        return LiecheckStatus::NullArg;
    }
    guarded(|| {
        let alg = &(*a).inner;
        if root >= alg.num_roots() {
            set_error("root index out of range");
            return LiecheckStatus::Usage;
        }
        let r = alg.adexp(root, t % alg.p().get(), &gvec_from_raw(alg, x));
        gvec_to_raw(&r, out);
        LiecheckStatus::Ok
    })
}

/// Restricted p-th power `x^[p]` of a coefficient vector.
///
/// # Safety
/// As for `liecheck_bracket`.
#[no_mangle]
pub unsafe extern "C" fn liecheck_p_power(
    a: *const LiecheckAlgebra,
    x: *const u64,
    out: *mut u64,
) -> LiecheckStatus {
    if a.is_null() || x.is_null() || out.is_null() {
        return LiecheckStatus::NullArg;
    }
    guarded(|| {
        let alg = &(*a).inner;
        match alg.p_power(&gvec_from_raw(alg, x)) {
            Ok(r) => {
                gvec_to_raw(&r, out);
                LiecheckStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Normalized invariant form `<x, y>`, written to `out_value`.
///
/// # Safety
/// As for `liecheck_bracket`, with `out_value` pointing to one slot.
#[no_mangle]
pub unsafe extern "C" fn liecheck_form_value(
    a: *const LiecheckAlgebra,
    x: *const u64,
    y: *const u64,
    out_value: *mut u64,
) -> LiecheckStatus {
    if a.is_null() || x.is_null() || y.is_null() || out_value.is_null() {
        return LiecheckStatus::NullArg;
    }
    guarded(|| {
        let h = &*a;
        let v = h
            .form
            .value(&gvec_from_raw(&h.inner, x), &gvec_from_raw(&h.inner, y));
        *out_value = v;
        LiecheckStatus::Ok
    })
}

/// Enumerate the long-root cone, up to `budget` points (0 selects the
/// built-in default), storing a handle through `out`.
///
/// # Safety
/// `out` must be valid; on `Ok` release the handle with
/// `liecheck_cone_free`.  The cone may outlive the algebra handle.
#[no_mangle]
pub unsafe extern "C" fn liecheck_cone_new(
    a: *const LiecheckAlgebra,
    budget: usize,
    out: *mut *mut LiecheckCone,
) -> LiecheckStatus {
    if a.is_null() || out.is_null() {
        return LiecheckStatus::NullArg;
    }
    guarded(|| {
        let alg = &(*a).inner;
        let budget = if budget == 0 {
            liecheck::cone::DEFAULT_CONE_BUDGET
        } else {
            budget
        };
        match enumerate_cone_with_budget(alg, budget) {
            Ok(cone) => {
                *out = Box::into_raw(Box::new(LiecheckCone {
                    cone,
                    dim: alg.dim(),
                }));
                LiecheckStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a cone handle.  A null pointer is ignored.
///
/// # Safety
/// The handle must come from `liecheck_cone_new` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn liecheck_cone_free(c: *mut LiecheckCone) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of cone points (the zero vector included); 0 for null.
///
/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn liecheck_cone_len(c: *const LiecheckCone) -> usize {
    if c.is_null() {
        0
    } else {
        (*c).cone.len()
    }
}

/// Copy cone point `i` into `out` (length `dim`).
///
/// # Safety
/// `out` must have room for `dim` slots; `i` must be below
/// `liecheck_cone_len`.
#[no_mangle]
pub unsafe extern "C" fn liecheck_cone_get(
    c: *const LiecheckCone,
    i: usize,
    out: *mut u64,
) -> LiecheckStatus {
    if c.is_null() || out.is_null() {
        return LiecheckStatus::NullArg;
    }
    let handle = &*c;
    if i >= handle.cone.len() {
        set_error("cone index out of range");
        return LiecheckStatus::Usage;
    }
    gvec_to_raw(&handle.cone.points()[i], out);
    LiecheckStatus::Ok
}

/// Does `x` lie in the enumerated cone?  Returns 1, 0, or -1 on error.
///
/// # Safety
/// `x` must point to `dim` readable slots matching the cone's algebra.
#[no_mangle]
pub unsafe extern "C" fn liecheck_cone_contains(
    a: *const LiecheckAlgebra,
    c: *const LiecheckCone,
    x: *const u64,
) -> i32 {
    if a.is_null() || c.is_null() || x.is_null() {
        return -1;
    }
    let alg = &(*a).inner;
    let handle = &*c;
    if handle.dim != alg.dim() {
        set_error("cone and algebra dimensions disagree");
        return -1;
    }
    handle.cone.contains(&gvec_from_raw(alg, x)) as i32
}

/// Rank of the span of the cone inside the algebra.
///
/// # Safety
/// Both handles must be live and built from the same algebra.
#[no_mangle]
pub unsafe extern "C" fn liecheck_cone_spanning_rank(
    a: *const LiecheckAlgebra,
    c: *const LiecheckCone,
) -> usize {
    if a.is_null() || c.is_null() {
        return 0;
    }
    spanning_rank(&(*a).inner, &(*c).cone)
}

#[derive(serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FfiParams {
    #[serde(rename = "type")]
    kind: Option<char>,
    rank: Option<usize>,
    p: Option<u64>,
    seed: Option<u64>,
    samples: Option<usize>,
    budget: Option<usize>,
}

/// Run a named scenario.  `params_json` may be null or a JSON object
/// with optional fields `type`, `rank`, `p`, `seed`, `samples`,
/// `budget`; omitted fields use the scenario's defaults.  On `Ok`,
/// `*out_json` holds the report as a JSON line; free it with
/// `liecheck_string_free`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn liecheck_run_scenario(
    name: *const c_char,
    params_json: *const c_char,
    out_json: *mut *mut c_char,
) -> LiecheckStatus {
    if name.is_null() || out_json.is_null() {
        return LiecheckStatus::NullArg;
    }
    guarded(|| {
        let name = match CStr::from_ptr(name).to_str() {
            Ok(s) => s,
            Err(_) => {
                set_error("scenario name is not valid UTF-8");
                return LiecheckStatus::Usage;
            }
        };
        let mut params = match default_params(name) {
            Ok(p) => p,
            Err(e) => return fail(&e),
        };
        if !params_json.is_null() {
            let raw = match CStr::from_ptr(params_json).to_str() {
                Ok(s) => s,
                Err(_) => {
                    set_error("parameter JSON is not valid UTF-8");
                    return LiecheckStatus::Usage;
                }
            };
            let overlay: FfiParams = match serde_json::from_str(raw) {
                Ok(v) => v,
                Err(e) => {
                    set_error(&format!("parameter JSON: {e}"));
                    return LiecheckStatus::Usage;
                }
            };
            if let Some(c) = overlay.kind {
                params.kind = match RootKind::from_char(c) {
                    Ok(k) => k,
                    Err(e) => return fail(&e),
                };
            }
            if let Some(r) = overlay.rank {
                params.rank = r;
            }
            if let Some(p) = overlay.p {
                params.p = p;
            }
            if let Some(s) = overlay.seed {
                params.seed = s;
            }
            if let Some(k) = overlay.samples {
                params.samples = k;
            }
            if let Some(b) = overlay.budget {
                params.budget = b;
            }
        }
        match run_scenario(name, &params) {
            Ok(report) => match CString::new(report.to_json_line()) {
                Ok(s) => {
                    *out_json = s.into_raw();
                    LiecheckStatus::Ok
                }
                Err(_) => {
                    set_error("report contained an interior NUL byte");
                    LiecheckStatus::Error
                }
            },
            Err(e) => fail(&e),
        }
    })
}

/// Free a string returned by this library.  A null pointer is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn liecheck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn new_alg(kind: char, rank: usize, p: u64) -> *mut LiecheckAlgebra {
        let mut h: *mut LiecheckAlgebra = ptr::null_mut();
        let st = liecheck_algebra_new(kind as c_char, rank, p, &mut h);
        assert_eq!(st, LiecheckStatus::Ok);
        assert!(!h.is_null());
        h
    }

    fn last_error() -> String {
        unsafe {
            CStr::from_ptr(liecheck_last_error())
                .to_string_lossy()
                .into_owned()
        }
    }

    #[test]
    fn algebra_round_trip_and_bracket() {
        unsafe {
            let h = new_alg('C', 2, 3);
            assert_eq!(liecheck_algebra_dim(h), 10);
            assert_eq!(liecheck_algebra_rank(h), 2);
            assert_eq!(liecheck_algebra_p(h), 3);
            assert_eq!(liecheck_algebra_num_roots(h), 8);

            // [e_theta, e_{-theta}] through the C surface equals the
            // library's answer.
            let alg = &(*h).inner;
            let theta = alg.rs().highest_root();
            let x = alg.e(theta);
            let y = alg.e(alg.rs().neg(theta));
            let mut out = vec![0u64; 10];
            let st = liecheck_bracket(h, x.coeffs().as_ptr(), y.coeffs().as_ptr(), out.as_mut_ptr());
            assert_eq!(st, LiecheckStatus::Ok);
            assert_eq!(out, alg.bracket(&x, &y).coeffs());

            // adexp matches too, and rejects an out-of-range root.
            let st = liecheck_adexp(h, theta, 2, y.coeffs().as_ptr(), out.as_mut_ptr());
            assert_eq!(st, LiecheckStatus::Ok);
            assert_eq!(out, alg.adexp(theta, 2, &y).coeffs());
            let st = liecheck_adexp(h, 99, 1, y.coeffs().as_ptr(), out.as_mut_ptr());
            assert_eq!(st, LiecheckStatus::Usage);

            // Invariant form pairing of e_theta with its opposite.
            let mut v = 0u64;
            let st = liecheck_form_value(h, x.coeffs().as_ptr(), y.coeffs().as_ptr(), &mut v);
            assert_eq!(st, LiecheckStatus::Ok);
            assert_eq!(v, (*h).form.value(&x, &y));

            // p-th power of a root vector vanishes.
            let st = liecheck_p_power(h, x.coeffs().as_ptr(), out.as_mut_ptr());
            assert_eq!(st, LiecheckStatus::Ok);
            assert!(out.iter().all(|&c| c == 0));

            liecheck_algebra_free(h);
        }
    }

    #[test]
    fn error_paths_set_messages() {
        unsafe {
            let mut h: *mut LiecheckAlgebra = ptr::null_mut();
            assert_eq!(
                liecheck_algebra_new('Z' as c_char, 2, 3, &mut h),
                LiecheckStatus::Usage
            );
            assert!(last_error().contains("type"));
            assert_eq!(
                liecheck_algebra_new('C' as c_char, 2, 4, &mut h),
                LiecheckStatus::Error
            );
            assert!(last_error().contains("prime"));
            assert_eq!(
                liecheck_algebra_new('C' as c_char, 2, 3, ptr::null_mut()),
                LiecheckStatus::NullArg
            );
            assert_eq!(liecheck_algebra_dim(ptr::null()), 0);
            assert_eq!(
                liecheck_bracket(ptr::null(), ptr::null(), ptr::null(), ptr::null_mut()),
                LiecheckStatus::NullArg
            );
        }
    }

    #[test]
    fn cone_enumeration_over_c() {
        unsafe {
            let h = new_alg('C', 2, 3);
            let mut c: *mut LiecheckCone = ptr::null_mut();
            assert_eq!(liecheck_cone_new(h, 0, &mut c), LiecheckStatus::Ok);
            assert_eq!(liecheck_cone_len(c), 81);
            assert_eq!(liecheck_cone_spanning_rank(h, c), 10);

            let mut pt = vec![0u64; 10];
            assert_eq!(liecheck_cone_get(c, 0, pt.as_mut_ptr()), LiecheckStatus::Ok);
            assert_eq!(liecheck_cone_contains(h, c, pt.as_ptr()), 1);
            assert_eq!(
                liecheck_cone_get(c, 10_000, pt.as_mut_ptr()),
                LiecheckStatus::Usage
            );

            // A Cartan element is not a long-root element.
            let alg = &(*h).inner;
            let h1 = alg.h(0);
            assert_eq!(liecheck_cone_contains(h, c, h1.coeffs().as_ptr()), 0);

            // A starved budget is a budget error.
            let mut c2: *mut LiecheckCone = ptr::null_mut();
            assert_eq!(liecheck_cone_new(h, 5, &mut c2), LiecheckStatus::Budget);

            liecheck_cone_free(c);
            liecheck_algebra_free(h);
        }
    }

    #[test]
    fn scenario_round_trip_through_json() {
        unsafe {
            let name = CString::new("span").unwrap();
            let params = CString::new(r#"{"p": 2, "seed": 9}"#).unwrap();
            let mut out: *mut c_char = ptr::null_mut();
            let st = liecheck_run_scenario(name.as_ptr(), params.as_ptr(), &mut out);
            assert_eq!(st, LiecheckStatus::Ok);
            let line = CStr::from_ptr(out).to_str().unwrap().to_string();
            liecheck_string_free(out);
            let v: serde_json::Value = serde_json::from_str(&line).unwrap();
            assert_eq!(v["scenario"], "span");
            assert_eq!(v["status"], "pass");
            assert_eq!(v["p"], 2);
            assert_eq!(v["seed"], 9);

            // Defaults apply when no parameters are given.
            let st = liecheck_run_scenario(name.as_ptr(), ptr::null(), &mut out);
            assert_eq!(st, LiecheckStatus::Ok);
            liecheck_string_free(out);

            // Unknown scenarios and malformed JSON are usage errors.
            let bad = CString::new("nope").unwrap();
            assert_eq!(
                liecheck_run_scenario(bad.as_ptr(), ptr::null(), &mut out),
                LiecheckStatus::Usage
            );
            let junk = CString::new("{").unwrap();
            assert_eq!(
                liecheck_run_scenario(name.as_ptr(), junk.as_ptr(), &mut out),
                LiecheckStatus::Usage
            );
        }
    }

    #[test]
    fn version_and_header_exist() {
        unsafe {
            let v = CStr::from_ptr(liecheck_version()).to_str().unwrap();
            assert_eq!(v, env!("CARGO_PKG_VERSION"));
        }
        let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("include/liecheck.h");
        let text = std::fs::read_to_string(header).expect("generated header");
        for symbol in [
            "liecheck_algebra_new",
            "liecheck_bracket",
            "liecheck_cone_new",
            "liecheck_run_scenario",
            "liecheck_last_error",
            "LiecheckStatus",
            "LIECHECK_H",
        ] {
            assert!(text.contains(symbol), "header lacks {symbol}");
        }
    }
}
