//! C interface to `vknot`.
//!
//! Diagrams live behind opaque handles created by the `*_parse` and
//! `vk_lattice` functions and released by the matching `*_free`. Every
//! fallible function returns a [`VkStatus`]; on failure a description is
//! available from [`vk_last_error`]. Text results are written into
//! caller-provided buffers as NUL-terminated UTF-8; when the buffer is too
//! small the call returns `VK_STATUS_BUFFER_TOO_SMALL` and reports the
//! required size, terminator included.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use vknot::indices::{carter_genus, ind, ind_flat};
use vknot::invariants::{
    flat_module_invariant, flat_writhe, writhe_polynomial, F_invariant, L_invariant,
    SmoothingMode, Weight,
};
use vknot::moves::{canonical_code, equivalent, Budget, Orientation, Verdict};
use vknot::{lattice_diagram, ChordDiagram, ChordId, Error, FlatDiagram, GaussDiagram};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownChord = 4,
    InvalidArgument = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// Outcome of [`vk_flat_compare`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VkVerdict {
    Equal = 0,
    Distinct = 1,
    Unknown = 2,
}

/// Opaque signed Gauss diagram.
pub struct VkGaussDiagram(GaussDiagram);

/// Opaque oriented flat diagram.
pub struct VkFlatDiagram(FlatDiagram);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: VkStatus, message: impl Into<String>) -> VkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = message.into());
    status
}

fn status_of(e: &Error) -> VkStatus {
    match e {
        Error::Parse(_) => VkStatus::Parse,
        Error::UnknownChord(_) => VkStatus::UnknownChord,
        _ => VkStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (VkStatus, String)>) -> VkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VkStatus::Ok,
        Ok(Err((s, m))) => fail(s, m),
        Err(_) => fail(VkStatus::Internal, "internal panic"),
    }
}

type Outcome<T> = Result<T, (VkStatus, String)>;

fn lib<T>(r: vknot::Result<T>) -> Outcome<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (VkStatus, String) {
    (VkStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| (VkStatus::InvalidUtf8, "input is not UTF-8".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Outcome<&'a mut T> {
    p.as_mut().ok_or_else(null)
}

unsafe fn handle<'a, T>(p: *const T) -> Outcome<&'a T> {
    p.as_ref().ok_or_else(null)
}

/// Copies `s` with a terminator into `buf` of size `len`, storing the size
/// needed in `needed` when it is not null.
unsafe fn write_text(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Outcome<()> {
    let size = s.len() + 1;
    if let Some(n) = needed.as_mut() {
        *n = size;
    }
    if buf.is_null() || len < size {
        return Err((VkStatus::BufferTooSmall, format!("{size} bytes needed")));
    }
    std::ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

fn budget(max_nodes: usize, max_extra: usize) -> Budget {
    let d = Budget::default();
    Budget::new(
        if max_nodes == 0 { d.max_nodes } else { max_nodes },
        if max_extra == 0 { d.max_extra } else { max_extra },
    )
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn vk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread.
///
/// # Safety
/// `buf` must point to `len` writable bytes or be null; `needed` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn vk_last_error(buf: *mut c_char, len: usize, needed: *mut usize) -> VkStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match write_text(&msg, buf, len, needed) {
        Ok(()) => VkStatus::Ok,
        Err((s, _)) => s,
    }
}

/// Parses a signed Gauss code such as `O1+O2+U1+U2+`.
///
/// # Safety
/// `code` must be a NUL-terminated string; `out_diagram` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_gauss_parse(
    code: *const c_char,
    out_diagram: *mut *mut VkGaussDiagram,
) -> VkStatus {
    guard(|| {
        let d = lib(GaussDiagram::parse(text(code)?))?;
        *out(out_diagram)? = Box::into_raw(Box::new(VkGaussDiagram(d)));
        Ok(())
    })
}

/// Releases a diagram; null is ignored.
///
/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vk_gauss_free(d: *mut VkGaussDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Normalized Gauss code.
///
/// # Safety
/// See [`vk_last_error`] for the buffer contract; `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn vk_gauss_code(
    d: *const VkGaussDiagram,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> VkStatus {
    guard(|| write_text(&handle(d)?.0.to_string(), buf, len, needed))
}

/// Number of chords.
///
/// # Safety
/// `d` must be a live handle; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_gauss_chord_count(d: *const VkGaussDiagram, out_count: *mut usize) -> VkStatus {
    guard(|| {
        *out(out_count)? = handle(d)?.0.chord_count();
        Ok(())
    })
}

/// Sum of the crossing signs.
///
/// # Safety
/// `d` must be a live handle; `out_writhe` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_gauss_writhe(d: *const VkGaussDiagram, out_writhe: *mut i64) -> VkStatus {
    guard(|| {
        *out(out_writhe)? = handle(d)?.0.writhe();
        Ok(())
    })
}

/// Index of the chord labeled `chord` in the parsed code.
///
/// # Safety
/// `d` must be a live handle; `out_index` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_gauss_index(
    d: *const VkGaussDiagram,
    chord: u32,
    out_index: *mut i64,
) -> VkStatus {
    guard(|| {
        *out(out_index)? = lib(ind(&handle(d)?.0, ChordId(chord)))?;
        Ok(())
    })
}

/// Writhe polynomial as text, for example `t^-1 - 2 + t`.
///
/// # Safety
/// See [`vk_gauss_code`].
#[no_mangle]
pub unsafe extern "C" fn vk_gauss_writhe_polynomial(
    d: *const VkGaussDiagram,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> VkStatus {
    guard(|| write_text(&writhe_polynomial(&handle(d)?.0).to_string(), buf, len, needed))
}

/// Which module invariant [`vk_gauss_module_invariant`] computes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VkModuleInvariant {
    /// Sum over 0-smoothings, in unoriented flat knots.
    F = 0,
    /// Sum over 1-smoothings, in flat two-component links.
    L = 1,
}

/// Module-valued invariant as text, for example `2*[O1|U1] - 2*[|]`. A zero
/// budget field selects the default.
///
/// # Safety
/// See [`vk_gauss_code`].
#[no_mangle]
pub unsafe extern "C" fn vk_gauss_module_invariant(
    d: *const VkGaussDiagram,
    which: VkModuleInvariant,
    max_nodes: usize,
    max_extra: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> VkStatus {
    guard(|| {
        let d = &handle(d)?.0;
        let b = budget(max_nodes, max_extra);
        let e = lib(match which {
            VkModuleInvariant::F => F_invariant(d, b),
            VkModuleInvariant::L => L_invariant(d, b),
        })?;
        write_text(&e.to_string(), buf, len, needed)
    })
}

/// Parses a flat Gauss code such as `O1O2U1U2`.
///
/// # Safety
/// `code` must be a NUL-terminated string; `out_diagram` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_flat_parse(
    code: *const c_char,
    out_diagram: *mut *mut VkFlatDiagram,
) -> VkStatus {
    guard(|| {
        let d = lib(FlatDiagram::parse(text(code)?))?;
        *out(out_diagram)? = Box::into_raw(Box::new(VkFlatDiagram(d)));
        Ok(())
    })
}

/// The lattice flat diagram with `p` horizontal and `q` vertical chords.
///
/// # Safety
/// `out_diagram` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_lattice(p: usize, q: usize, out_diagram: *mut *mut VkFlatDiagram) -> VkStatus {
    guard(|| {
        let d = lib(lattice_diagram(p, q))?;
        *out(out_diagram)? = Box::into_raw(Box::new(VkFlatDiagram(d)));
        Ok(())
    })
}

/// Releases a flat diagram; null is ignored.
///
/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vk_flat_free(d: *mut VkFlatDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Canonical code of a flat diagram.
///
/// # Safety
/// See [`vk_gauss_code`].
#[no_mangle]
pub unsafe extern "C" fn vk_flat_canonical_code(
    d: *const VkFlatDiagram,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> VkStatus {
    guard(|| write_text(&canonical_code(&handle(d)?.0, Orientation::Oriented), buf, len, needed))
}

/// Sum of the flat signs of the chords.
///
/// # Safety
/// `d` must be a live handle; `out_writhe` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_flat_writhe(d: *const VkFlatDiagram, out_writhe: *mut i64) -> VkStatus {
    guard(|| {
        *out(out_writhe)? = flat_writhe(&handle(d)?.0);
        Ok(())
    })
}

/// Index of a flat chord.
///
/// # Safety
/// `d` must be a live handle; `out_index` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_flat_index(d: *const VkFlatDiagram, chord: u32, out_index: *mut i64) -> VkStatus {
    guard(|| {
        *out(out_index)? = lib(ind_flat(&handle(d)?.0, ChordId(chord)))?;
        Ok(())
    })
}

/// Genus of the surface carrying the diagram.
///
/// # Safety
/// `d` must be a live handle; `out_genus` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_flat_carter_genus(d: *const VkFlatDiagram, out_genus: *mut usize) -> VkStatus {
    guard(|| {
        *out(out_genus)? = carter_genus(&handle(d)?.0);
        Ok(())
    })
}

/// Sign-weighted sum of the oriented 0-smoothings, as text.
///
/// # Safety
/// See [`vk_gauss_code`].
#[no_mangle]
pub unsafe extern "C" fn vk_flat_smoothing_invariant(
    d: *const VkFlatDiagram,
    max_nodes: usize,
    max_extra: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> VkStatus {
    guard(|| {
        let b = budget(max_nodes, max_extra);
        let e = lib(flat_module_invariant(&handle(d)?.0, Weight::Sign, SmoothingMode::Knot, b))?;
        write_text(&e.to_string(), buf, len, needed)
    })
}

/// Compares two flat diagrams as oriented classes, or up to reversal when
/// `unoriented` is nonzero.
///
/// # Safety
/// `a` and `b` must be live handles; `out_verdict` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vk_flat_compare(
    a: *const VkFlatDiagram,
    b: *const VkFlatDiagram,
    unoriented: i32,
    max_nodes: usize,
    max_extra: usize,
    out_verdict: *mut VkVerdict,
) -> VkStatus {
    guard(|| {
        let mode = if unoriented != 0 { Orientation::Unoriented } else { Orientation::Oriented };
        let v = equivalent(&handle(a)?.0, &handle(b)?.0, mode, budget(max_nodes, max_extra));
        *out(out_verdict)? = match v {
            Verdict::Equal(_) => VkVerdict::Equal,
            Verdict::Distinct(_) => VkVerdict::Distinct,
            Verdict::Unknown => VkVerdict::Unknown,
        };
        Ok(())
    })
}
