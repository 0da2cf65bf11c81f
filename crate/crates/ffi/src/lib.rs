//! C interface to the linkage engine.
//!
//! Rings and modules are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`LkStatus`]; on failure [`lk_last_error`] describes the problem.
//! Strings returned by the library are released with [`lk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use linkage::harness::{run_corpus, suite_names, RunFlags};
use linkage::linkage::{horizontal_linkage_check, lambda_wrt, transpose_wrt, LinkageOptions, LinkageVerdict};
use linkage::module::FPModule;
use linkage::parse::{module_definition, parse_module, parse_ring};
use linkage::ring::QRing;
use linkage::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    RingMismatch = 4,
    Engine = 5,
    Io = 6,
    Panic = 7,
}

/// Outcome of a horizontal linkage check.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LkVerdict {
    Linked = 0,
    NotLinked = 1,
    Inconclusive = 2,
}

/// A quotient of a weighted polynomial ring.
pub struct LkRing(QRing);

/// A finitely presented graded module.
pub struct LkModule(FPModule);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LkStatus {
    match e {
        Error::Parse { .. } | Error::UnknownVariable(_) | Error::UnknownGenerator(_) | Error::Definition(_) => {
            LkStatus::Parse
        }
        Error::RingMismatch | Error::AmbientMismatch => LkStatus::RingMismatch,
        Error::Io(_) => LkStatus::Io,
        _ => LkStatus::Engine,
    }
}

struct Fail(LkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LkStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            LkStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(LkStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(LkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(LkStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(LkStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn lk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a `ring NAME { ... }` definition.
///
/// # Safety
/// `src` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lk_ring_parse(src: *const c_char, out: *mut *mut LkRing) -> LkStatus {
    guard(|| {
        let r = parse_ring(text(src, "ring source")?)?;
        put(out, LkRing(r))
    })
}

/// # Safety
/// `ring` must come from [`lk_ring_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lk_ring_free(ring: *mut LkRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Krull dimension of the ring.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lk_ring_dim(ring: *const LkRing, out: *mut i64) -> LkStatus {
    guard(|| {
        let r = get(ring, "ring")?;
        if out.is_null() {
            return Err(Fail(LkStatus::NullPointer, "output pointer is null".into()));
        }
        *out = r.0.dim();
        Ok(())
    })
}

/// Parses a `module NAME over R { ... }` definition over `ring`.
///
/// # Safety
/// `ring` must be a live handle, `src` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lk_module_parse(ring: *const LkRing, src: *const c_char, out: *mut *mut LkModule) -> LkStatus {
    guard(|| {
        let r = get(ring, "ring")?;
        let (_, m) = parse_module(text(src, "module source")?, &r.0)?;
        put(out, LkModule(m))
    })
}

/// The ring itself as a module.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lk_module_ring(ring: *const LkRing, out: *mut *mut LkModule) -> LkStatus {
    guard(|| {
        let r = get(ring, "ring")?;
        put(out, LkModule(FPModule::free(r.0.clone(), vec![0])))
    })
}

/// The canonical module of a Cohen-Macaulay ring.
///
/// # Safety
/// `ring` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lk_module_canonical(ring: *const LkRing, out: *mut *mut LkModule) -> LkStatus {
    guard(|| {
        let r = get(ring, "ring")?;
        put(out, LkModule(linkage::semidual::canonical_module(&r.0)?))
    })
}

/// # Safety
/// `module` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lk_module_free(module: *mut LkModule) {
    if !module.is_null() {
        drop(Box::from_raw(module));
    }
}

/// Writes `dim M_d` for `d = lo..=hi` into `out`, which must hold
/// `hi - lo + 1` values.
///
/// # Safety
/// `module` must be a live handle and `out` valid for `hi - lo + 1` writes.
#[no_mangle]
pub unsafe extern "C" fn lk_module_hilbert_function(module: *const LkModule, lo: i64, hi: i64, out: *mut i64) -> LkStatus {
    guard(|| {
        let m = get(module, "module")?;
        if out.is_null() {
            return Err(Fail(LkStatus::NullPointer, "output pointer is null".into()));
        }
        if hi < lo {
            return Err(Fail(LkStatus::Engine, format!("empty degree range {lo}..={hi}")));
        }
        let hs = m.0.hilbert_series();
        for (k, d) in (lo..=hi).enumerate() {
            *out.add(k) = hs.hf(d);
        }
        Ok(())
    })
}

/// A module definition in the input syntax, released with [`lk_string_free`].
///
/// # Safety
/// `module` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lk_module_definition(module: *const LkModule, out: *mut *mut c_char) -> LkStatus {
    guard(|| {
        let m = get(module, "module")?;
        if out.is_null() {
            return Err(Fail(LkStatus::NullPointer, "output pointer is null".into()));
        }
        *out = owned_string(module_definition("M", &m.0));
        Ok(())
    })
}

/// `λ(C, M)`.
///
/// # Safety
/// `c` and `m` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lk_lambda(c: *const LkModule, m: *const LkModule, out: *mut *mut LkModule) -> LkStatus {
    guard(|| {
        let (c, m) = (get(c, "C")?, get(m, "module")?);
        put(out, LkModule(lambda_wrt(&c.0, &m.0)?))
    })
}

/// `Tr_C M`.
///
/// # Safety
/// `c` and `m` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lk_transpose(c: *const LkModule, m: *const LkModule, out: *mut *mut LkModule) -> LkStatus {
    guard(|| {
        let (c, m) = (get(c, "C")?, get(m, "module")?);
        put(out, LkModule(transpose_wrt(&c.0, &m.0)?))
    })
}

/// `Ext^i(M, N)`.
///
/// # Safety
/// `m` and `n` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lk_ext(i: usize, m: *const LkModule, n: *const LkModule, out: *mut *mut LkModule) -> LkStatus {
    guard(|| {
        let (m, n) = (get(m, "module")?, get(n, "module")?);
        put(out, LkModule(linkage::functors::ext(i, &m.0, &n.0)?))
    })
}

/// Horizontal linkage of `M` with respect to `C`. `c_is_canonical` declares
/// that `C` is the canonical module of its ring.
///
/// # Safety
/// `c` and `m` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lk_linkage_check(
    c: *const LkModule,
    m: *const LkModule,
    bound: usize,
    trials: usize,
    seed: u64,
    c_is_canonical: bool,
    out: *mut LkVerdict,
) -> LkStatus {
    guard(|| {
        let (c, m) = (get(c, "C")?, get(m, "module")?);
        if out.is_null() {
            return Err(Fail(LkStatus::NullPointer, "output pointer is null".into()));
        }
        let opts = LinkageOptions { bound, trials, c_is_canonical, hypotheses: false };
        let rep = horizontal_linkage_check(&c.0, &m.0, &opts, &mut ChaCha8Rng::seed_from_u64(seed))?;
        *out = match rep.verdict {
            LinkageVerdict::HorizontallyLinked => LkVerdict::Linked,
            LinkageVerdict::NotLinked { .. } => LkVerdict::NotLinked,
            LinkageVerdict::Inconclusive => LkVerdict::Inconclusive,
        };
        Ok(())
    })
}

/// Runs the named suites (`A`, `B`, `C`, `L`, a comma list or `all`) over a
/// corpus directory. The JSON report is stored in `report`; `success` is set
/// when no result failed.
///
/// # Safety
/// String arguments must be NUL-terminated; `report` and `success` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lk_suite_run(
    corpus: *const c_char,
    suites: *const c_char,
    bound: usize,
    trials: usize,
    seed: u64,
    report: *mut *mut c_char,
    success: *mut bool,
) -> LkStatus {
    guard(|| {
        let dir = text(corpus, "corpus directory")?;
        let names = suite_names(text(suites, "suite names")?)?;
        if report.is_null() || success.is_null() {
            return Err(Fail(LkStatus::NullPointer, "output pointer is null".into()));
        }
        let r = run_corpus(Path::new(dir), &names, RunFlags { bound, trials, seed, timings: false })?;
        *success = r.is_success();
        *report = owned_string(r.to_json());
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
