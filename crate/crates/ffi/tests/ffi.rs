use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use vknot_ffi::*;

fn read(f: impl Fn(*mut c_char, usize, *mut usize) -> VkStatus) -> String {
    let mut needed = 0usize;
    assert_eq!(f(ptr::null_mut(), 0, &mut needed), VkStatus::BufferTooSmall);
    let mut buf = vec![0 as c_char; needed];
    assert_eq!(f(buf.as_mut_ptr(), buf.len(), ptr::null_mut()), VkStatus::Ok);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap().to_owned()
}

fn gauss(code: &str) -> *mut VkGaussDiagram {
    let c = CString::new(code).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { vk_gauss_parse(c.as_ptr(), &mut d) }, VkStatus::Ok);
    d
}

#[test]
fn virtual_trefoil_through_the_c_interface() {
    let d = gauss("O1+O2+U1+U2+");
    let mut n = 0;
    assert_eq!(unsafe { vk_gauss_chord_count(d, &mut n) }, VkStatus::Ok);
    assert_eq!(n, 2);
    let mut w = 0;
    assert_eq!(unsafe { vk_gauss_writhe(d, &mut w) }, VkStatus::Ok);
    assert_eq!(w, 2);
    let (mut a, mut b) = (0, 0);
    unsafe {
        assert_eq!(vk_gauss_index(d, 1, &mut a), VkStatus::Ok);
        assert_eq!(vk_gauss_index(d, 2, &mut b), VkStatus::Ok);
    }
    assert_eq!(a, -b);
    assert_eq!(read(|p, l, n| unsafe { vk_gauss_writhe_polynomial(d, p, l, n) }), "t^-1 - 2 + t");
    assert_eq!(read(|p, l, n| unsafe { vk_gauss_code(d, p, l, n) }), "O1+O2+U1+U2+");
    let l = read(|p, len, n| unsafe { vk_gauss_module_invariant(d, VkModuleInvariant::L, 0, 0, p, len, n) });
    assert_eq!(l, "2*[O1|U1] - 2*[|]");
    let f = read(|p, len, n| unsafe { vk_gauss_module_invariant(d, VkModuleInvariant::F, 0, 0, p, len, n) });
    assert_eq!(f, "0");
    unsafe { vk_gauss_free(d) };
}

#[test]
fn lattice_through_the_c_interface() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { vk_lattice(2, 1, &mut f) }, VkStatus::Ok);
    assert_eq!(read(|p, l, n| unsafe { vk_flat_canonical_code(f, p, l, n) }), "O1O2O3U1U3U2");
    let mut w = 0;
    assert_eq!(unsafe { vk_flat_writhe(f, &mut w) }, VkStatus::Ok);
    assert_eq!(w, -1);
    let mut i = 0;
    assert_eq!(unsafe { vk_flat_index(f, 3, &mut i) }, VkStatus::Ok);
    assert_eq!(i, 2);
    let mut g = 0;
    assert_eq!(unsafe { vk_flat_carter_genus(f, &mut g) }, VkStatus::Ok);
    let s = read(|p, l, n| unsafe { vk_flat_smoothing_invariant(f, 0, 0, p, l, n) });
    assert_eq!(s, "-[]");
    let code = CString::new("").unwrap();
    let mut u = ptr::null_mut();
    assert_eq!(unsafe { vk_flat_parse(code.as_ptr(), &mut u) }, VkStatus::Ok);
    let mut v = VkVerdict::Equal;
    assert_eq!(unsafe { vk_flat_compare(f, u, 0, 0, 0, &mut v) }, VkStatus::Ok);
    assert_eq!(v, VkVerdict::Distinct);
    assert_eq!(unsafe { vk_flat_compare(f, f, 0, 0, 0, &mut v) }, VkStatus::Ok);
    assert_eq!(v, VkVerdict::Equal);
    unsafe {
        vk_flat_free(f);
        vk_flat_free(u);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("O1+U2+").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { vk_gauss_parse(bad.as_ptr(), &mut d) }, VkStatus::Parse);
    assert!(d.is_null());
    assert!(read(|p, l, n| unsafe { vk_last_error(p, l, n) }).contains("label"));
    assert_eq!(unsafe { vk_gauss_parse(ptr::null(), &mut d) }, VkStatus::NullPointer);
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { vk_lattice(0, 2, &mut f) }, VkStatus::InvalidArgument);
    let mut w = 0;
    assert_eq!(unsafe { vk_flat_writhe(ptr::null(), &mut w) }, VkStatus::NullPointer);
    unsafe { vk_gauss_free(ptr::null_mut()) };
    let v = unsafe { CStr::from_ptr(vk_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_interface() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/vknot.h")).unwrap();
    for name in ["vk_gauss_parse", "vk_gauss_free", "vk_lattice", "vk_flat_compare", "VK_STATUS_OK", "typedef struct VkGaussDiagram"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles a C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let lib = profile_dir.join("libvknot_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let out = std::env::temp_dir().join(format!("vknot_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
