use std::ffi::CStr;
use std::f64::consts::FRAC_PI_4;
use std::ptr;

use entx_ffi::*;

fn last_error() -> String {
    let p = entx_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn pair(g_xx: f64, g_zz: f64) -> *mut EntxDensityMatrix {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { entx_pair_state(g_xx, g_zz, &mut h) }, EntxStatus::Ok);
    h
}

#[test]
fn singlet_round_trip() {
    let rho = pair(-0.25, -0.25);
    assert_eq!(unsafe { entx_density_n_qubits(rho) }, 2);
    let mut c = f64::NAN;
    assert_eq!(unsafe { entx_concurrence(rho, &mut c) }, EntxStatus::Ok);
    assert!((c - 1.0).abs() < 1e-12);
    assert!(entx_last_error_message().is_null());

    let (mut re, mut im) = ([0.0; 16], [0.0; 16]);
    assert_eq!(unsafe { entx_density_entries(rho, re.as_mut_ptr(), im.as_mut_ptr(), 16) }, EntxStatus::Ok);
    assert!((re[5] - 0.5).abs() < 1e-15 && (re[6] + 0.5).abs() < 1e-15);
    let mut copy = ptr::null_mut();
    let st = unsafe { entx_density_from_entries(2, re.as_ptr(), im.as_ptr(), 16, &mut copy) };
    assert_eq!(st, EntxStatus::Ok);
    assert_eq!(unsafe { entx_concurrence(copy, &mut c) }, EntxStatus::Ok);
    assert!((c - 1.0).abs() < 1e-12);
    unsafe {
        entx_density_free(copy);
        entx_density_free(rho);
        entx_density_free(ptr::null_mut());
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { entx_pair_state(0.2, 0.2, &mut h) }, EntxStatus::InvalidState);
    assert!(h.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { entx_pair_state(0.5, 0.0, &mut h) }, EntxStatus::InvalidArgument);
    assert_eq!(unsafe { entx_pair_state(0.0, 0.0, ptr::null_mut()) }, EntxStatus::NullPointer);
    assert!(last_error().contains("null"));

    let mut c = 0.0;
    assert_eq!(unsafe { entx_concurrence(ptr::null(), &mut c) }, EntxStatus::NullPointer);
    let one = {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { entx_basis_state(1, 0, &mut p) }, EntxStatus::Ok);
        p
    };
    assert_eq!(unsafe { entx_concurrence(one, &mut c) }, EntxStatus::InvalidArgument);
    let (mut re, mut im) = ([0.0; 3], [0.0; 3]);
    assert_eq!(unsafe { entx_density_entries(one, re.as_mut_ptr(), im.as_mut_ptr(), 3) }, EntxStatus::InvalidArgument);
    unsafe { entx_density_free(one) };

    // not Hermitian
    let re = [0.5, 0.3, 0.0, 0.5];
    let im = [0.0; 4];
    assert_eq!(unsafe { entx_density_from_entries(1, re.as_ptr(), im.as_ptr(), 4, &mut h) }, EntxStatus::InvalidState);
    assert!(last_error().contains("Hermitian"));

    let (mut gx, mut gz) = (0.0, 0.0);
    assert_eq!(unsafe { entx_ground_state_correlations(1.0, 3, false, &mut gx, &mut gz) }, EntxStatus::InvalidArgument);
    assert!(last_error().contains("even"));
}

#[test]
fn collision_and_optimizer() {
    let chain = pair(-0.25, -0.25);
    let mut probes = ptr::null_mut();
    assert_eq!(unsafe { entx_basis_state(2, 0b01, &mut probes) }, EntxStatus::Ok);
    let (mut c, mut after) = (0.0, ptr::null_mut());
    assert_eq!(unsafe { entx_collide_once(chain, probes, 1.0, FRAC_PI_4, &mut c, &mut after) }, EntxStatus::Ok);
    assert!((c - 1.0).abs() < 1e-9);
    assert_eq!(unsafe { entx_density_n_qubits(after) }, 2);
    assert_eq!(unsafe { entx_collide_once(chain, probes, 1.0, 0.3, &mut c, ptr::null_mut()) }, EntxStatus::Ok);

    let mut best = EntxProbeOptimum {
        theta_left: 0.0,
        phi_left: 0.0,
        theta_right: 0.0,
        phi_right: 0.0,
        concurrence: 0.0,
        evaluations: 0,
    };
    assert_eq!(unsafe { entx_optimize_probes(chain, 1.0, 0.3, &mut best) }, EntxStatus::Ok);
    assert!((best.concurrence - 0.6f64.sin().powi(2)).abs() < 1e-6);
    assert!(best.concurrence >= c - 1e-12 && best.evaluations > 0);
    unsafe {
        entx_density_free(after);
        entx_density_free(probes);
        entx_density_free(chain);
    }
}

#[test]
fn fixed_point_summary() {
    let chain = pair(-0.2, -0.2);
    let mut fp = EntxFixedPoint { concurrence: 0.0, residual: 1.0, iterations: 0, cross_check_distance: 1.0 };
    let mut state = ptr::null_mut();
    assert_eq!(unsafe { entx_channel_fixed_point(chain, 1.0, 0.6, &mut fp, &mut state) }, EntxStatus::Ok);
    assert!((fp.concurrence - 0.28).abs() < 0.02);
    assert!(fp.residual < 1e-10 && fp.cross_check_distance < 1e-8 && fp.iterations > 0);
    let mut c = 0.0;
    assert_eq!(unsafe { entx_concurrence(state, &mut c) }, EntxStatus::Ok);
    assert!((c - fp.concurrence).abs() < 1e-12);
    let st = unsafe { entx_channel_fixed_point(chain, 1.0, std::f64::consts::FRAC_PI_2, &mut fp, ptr::null_mut()) };
    assert_eq!(st, EntxStatus::InvalidArgument);
    unsafe {
        entx_density_free(state);
        entx_density_free(chain);
    }
}

#[test]
fn many_spin_protocols() {
    let (mut numeric, mut analytic) = (0.0, 0.0);
    assert_eq!(unsafe { entx_spin_star(4, 1, 0.0, FRAC_PI_4, &mut numeric, &mut analytic) }, EntxStatus::Ok);
    assert!((numeric - 0.5).abs() < 1e-9 && (analytic - 0.5).abs() < 1e-12);
    assert_eq!(unsafe { entx_spin_star(4, 1, 1.0, 0.3, &mut numeric, &mut analytic) }, EntxStatus::Ok);
    assert!(analytic.is_nan());

    let (mut gx, mut gz) = (0.0, 0.0);
    assert_eq!(unsafe { entx_ground_state_correlations(1.0, 2, false, &mut gx, &mut gz) }, EntxStatus::Ok);
    assert!((gx + 0.25).abs() < 1e-12 && (gz + 0.25).abs() < 1e-12);

    let mut w = ptr::null_mut();
    assert_eq!(unsafe { entx_w_extraction(3, FRAC_PI_4, &mut w) }, EntxStatus::Ok);
    assert_eq!(unsafe { entx_density_n_qubits(w) }, 3);
    unsafe { entx_density_free(w) };
}

#[test]
fn version_is_package_version() {
    let v = unsafe { CStr::from_ptr(entx_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn committed_header_is_current() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let config = cbindgen::Config::from_file(format!("{dir}/cbindgen.toml")).unwrap();
    let mut generated = Vec::new();
    cbindgen::generate_with_config(dir, config).unwrap().write(&mut generated);
    let committed = std::fs::read(format!("{dir}/include/entx.h")).unwrap();
    assert!(
        generated == committed,
        "include/entx.h is stale; run `cargo build -p entx-ffi --features cbindgen`"
    );
}
