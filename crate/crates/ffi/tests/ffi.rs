use std::ffi::{c_char, CStr};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use hardwall_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 512];
    let needed = unsafe { hw_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(needed > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn scalar_functions() {
    let mut x = f64::NAN;
    unsafe {
        assert_eq!(hw_recip_gamma(5.0, &mut x), HwStatus::Ok);
        assert!((x - 1.0 / 24.0).abs() < 1e-15);
        assert_eq!(hw_weber_d(1.0, 1.0, &mut x), HwStatus::Ok);
        assert!((x - (-0.25f64).exp()).abs() < 1e-12);
        assert_eq!(hw_asymptotic_epsilon0(3.0, &mut x), HwStatus::Ok);
        assert!((x - 0.5).abs() < 1e-3);
        assert_eq!(hw_asymptotic_epsilon1(3.0, &mut x), HwStatus::Ok);
        assert!((x - 1.5).abs() < 1e-2);
        assert_eq!(hw_characteristic(1.0, 0.0, &mut x), HwStatus::Ok);
        assert!(x.abs() < 1e-12);
        assert_eq!(
            hw_characteristic(0.5, 5.0, &mut x),
            HwStatus::UnsupportedRange
        );
        assert!(last_error().contains("oracle"));
    }
}

#[test]
fn null_pointers_and_buffers() {
    let mut small = [0.0; 2];
    let mut written = 0usize;
    unsafe {
        assert_eq!(hw_recip_gamma(1.0, ptr::null_mut()), HwStatus::NullPointer);
        assert_eq!(
            hw_eigenvalues(1.0, 3, small.as_mut_ptr(), 2),
            HwStatus::BufferTooSmall
        );
        assert_eq!(
            hw_identity_suite(1.0, 1, ptr::null_mut(), 0, &mut written),
            HwStatus::NullPointer
        );
        assert_eq!(
            hw_eigenstate_info(ptr::null(), ptr::null_mut()),
            HwStatus::NullPointer
        );
        assert_eq!(hw_ritz_len(ptr::null()), 0);
        hw_eigenstate_free(ptr::null_mut());
        hw_ritz_free(ptr::null_mut());
        assert_eq!(
            hw_eigenvalues(-1.0, 0, small.as_mut_ptr(), 2),
            HwStatus::InvalidArgument
        );
        assert!(last_error().contains("q0"));
    }
}

#[test]
fn success_clears_error() {
    let mut x = 0.0;
    unsafe {
        assert_ne!(hw_recip_gamma(1.0, ptr::null_mut()), HwStatus::Ok);
        assert_eq!(hw_recip_gamma(1.0, &mut x), HwStatus::Ok);
        assert_eq!(hw_last_error_message(ptr::null_mut(), 0), 0);
    }
}

#[test]
fn error_message_truncation() {
    unsafe {
        hw_recip_gamma(1.0, ptr::null_mut());
        let mut buf = [1 as c_char; 4];
        let needed = hw_last_error_message(buf.as_mut_ptr(), buf.len());
        assert!(needed > 4);
        assert_eq!(buf[3], 0);
    }
}

#[test]
fn spectrum_and_oracle() {
    let mut exact = [0.0; 4];
    let mut fd = [0.0; 4];
    unsafe {
        assert_eq!(hw_eigenvalues(1.55, 3, exact.as_mut_ptr(), 4), HwStatus::Ok);
        assert_eq!(hw_fd_eigenvalues(1.55, 3, fd.as_mut_ptr(), 4), HwStatus::Ok);
    }
    for n in 0..4 {
        assert!((exact[n] - fd[n]).abs() < 5e-6);
    }
    assert!((exact[0] - 0.57).abs() < 0.005);
}

#[test]
fn eigenstate_handle() {
    let mut h: *mut HwEigenstate = ptr::null_mut();
    let mut info = HwEigenInfo::default();
    let mut phi = 0.0;
    unsafe {
        assert_eq!(hw_eigenstate_new(2, 0.0, &mut h), HwStatus::Ok);
        assert_eq!(hw_eigenstate_info(h, &mut info), HwStatus::Ok);
        assert_eq!(hw_eigenstate_phi(h, 0.0, &mut phi), HwStatus::Ok);
        assert!(phi.abs() < 1e-12);
        assert_eq!(hw_eigenstate_phi(h, -0.1, &mut phi), HwStatus::DomainError);
        hw_eigenstate_free(h);
    }
    assert_eq!(info.n, 2);
    assert_eq!(info.node_count, 2);
    assert!((info.epsilon - 5.5).abs() < 1e-9);
    assert_eq!(info.weber_order, info.epsilon - 0.5);
}

#[test]
fn ritz_handle() {
    let mut h: *mut HwRitz = ptr::null_mut();
    let mut values = [0.0; 4];
    let mut coef = [0.0; 4];
    let mut cond = 0.0;
    unsafe {
        assert_eq!(hw_ritz_new(4, 1.0, &mut h), HwStatus::Ok);
        assert_eq!(hw_ritz_len(h), 4);
        assert_eq!(hw_ritz_values(h, values.as_mut_ptr(), 4), HwStatus::Ok);
        assert_eq!(
            hw_ritz_coefficients(h, 0, coef.as_mut_ptr(), 4),
            HwStatus::Ok
        );
        assert_eq!(
            hw_ritz_coefficients(h, 4, coef.as_mut_ptr(), 4),
            HwStatus::InvalidArgument
        );
        assert_eq!(hw_ritz_overlap_condition(h, &mut cond), HwStatus::Ok);
        hw_ritz_free(h);
        assert_eq!(hw_ritz_new(15, 0.0, &mut h), HwStatus::IllConditioned);
        assert_eq!(hw_ritz_new(0, 0.0, &mut h), HwStatus::InvalidArgument);
    }
    assert!(values.windows(2).all(|w| w[0] < w[1]));
    assert!(values[0] > 0.734_233_871_733 && values[0] < 0.7351);
    assert!(cond >= 1.0);
}

#[test]
fn identity_reports() {
    let blank = HwIdentityReport {
        n: 0,
        q0: 0.0,
        lhs: 0.0,
        rhs: 0.0,
        residual: 0.0,
        identity: HwIdentity::Virial,
    };
    let mut reports = [blank; 6];
    let mut written = 0;
    unsafe {
        assert_eq!(
            hw_identity_suite(1.0, 2, reports.as_mut_ptr(), 6, &mut written),
            HwStatus::BufferTooSmall
        );
        assert_eq!(written, 9);
        assert_eq!(
            hw_identity_suite(1.0, 1, reports.as_mut_ptr(), 6, &mut written),
            HwStatus::Ok
        );
    }
    assert_eq!(written, 6);
    assert!(reports.iter().all(|r| r.residual < 1e-6 && r.q0 == 1.0));
    assert_eq!(reports[1].identity, HwIdentity::Hypervirial);
    assert_eq!(reports[5].identity, HwIdentity::BoundaryDerivative);
}

#[test]
fn physical_units() {
    let mut form = HwDimensionless::default();
    let mut zpe = HwZeroPoint::default();
    unsafe {
        assert_eq!(
            hw_preset_dimensionless(c"D-Pd100".as_ptr(), &mut form),
            HwStatus::Ok
        );
        assert!((form.q0 - 2.0).abs() < 0.1);
        assert_eq!(
            hw_dimensionless(1.00784, 15.0, 0.4, &mut form),
            HwStatus::Ok
        );
        assert!((form.q0 - 1.55).abs() < 0.02);
        assert_eq!(
            hw_zero_point_energy(1.00784, 15.0, 0.4, &mut zpe),
            HwStatus::Ok
        );
        assert!((zpe.epsilon0 - 0.57).abs() < 0.005 && !zpe.from_oracle);
        assert_eq!(
            hw_preset_zero_point_energy(c"Li-Pd100".as_ptr(), &mut zpe),
            HwStatus::InvalidArgument
        );
        assert_eq!(
            hw_dimensionless(-1.0, 15.0, 0.4, &mut form),
            HwStatus::InvalidArgument
        );
        assert_eq!(
            hw_preset_dimensionless(ptr::null(), &mut form),
            HwStatus::NullPointer
        );
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(hw_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hardwall.h")
}

#[test]
fn header_declares_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for symbol in [
        "HARDWALL_H",
        "typedef struct HwEigenstate HwEigenstate;",
        "typedef struct HwRitz HwRitz;",
        "HW_STATUS_OK = 0",
        "HW_STATUS_PANIC",
        "hw_last_error_message(",
        "hw_recip_gamma(",
        "hw_weber_d(",
        "hw_characteristic(",
        "hw_eigenvalues(",
        "hw_fd_eigenvalues(",
        "hw_eigenstate_new(",
        "hw_eigenstate_free(",
        "hw_identity_suite(",
        "hw_ritz_new(",
        "hw_ritz_coefficients(",
        "hw_preset_zero_point_energy(",
    ] {
        assert!(text.contains(symbol), "missing {symbol}");
    }
}

/// Builds the static library, then compiles and runs the C smoke test
/// against it. Skipped when no C compiler is available.
#[test]
fn c_smoke_test() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no cc");
        return;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let mut build = Command::new(cargo);
    build.args(["build", "-q", "-p", "hardwall-ffi"]);
    if !cfg!(debug_assertions) {
        build.arg("--release");
    }
    let built = build.current_dir(dir).status().unwrap();
    assert!(built.success());
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let archive = profile_dir.join("libhardwall_ffi.a");
    assert!(archive.exists(), "{}", archive.display());
    let out = std::env::temp_dir().join(format!("hardwall_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&archive)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
