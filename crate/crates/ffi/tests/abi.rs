use std::ffi::{CStr, CString};
use std::ptr;

use lxebkit_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { lxeb_string_free(p) };
    s
}

fn last_error() -> String {
    let p = lxeb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn reference_values() {
    let mut x = 0.0;
    let mut exact = ptr::null_mut();
    assert_eq!(
        unsafe { lxeb_ref_bs(2, 2, &mut x, &mut exact) },
        LxebStatus::Ok
    );
    assert_eq!(take_string(exact), "7/15");
    assert!((x - 7.0 / 15.0).abs() < 1e-15);
    assert_eq!(
        unsafe { lxeb_ref_bs(6, 3, &mut x, ptr::null_mut()) },
        LxebStatus::Ok
    );

    let mut ac = 0.0;
    assert_eq!(unsafe { lxeb_ac_bs(2, 2, &mut ac) }, LxebStatus::Ok);
    assert!((ac - 1.4).abs() < 1e-12);
    assert_eq!(unsafe { lxeb_ac_sbs(6, 12, 6, &mut ac) }, LxebStatus::Ok);
    assert_eq!(unsafe { lxeb_ac_gbs(4, 4, 1, &mut ac) }, LxebStatus::Ok);
    assert_eq!(unsafe { lxeb_ref_sbs(4, 2, 4, &mut x) }, LxebStatus::Ok);
    assert_eq!(
        unsafe { lxeb_ref_gbs_uniform(4, 2, 4, &mut x) },
        LxebStatus::Ok
    );
    assert!(x > 0.0);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { lxeb_hunter_jones(2, &mut s) }, LxebStatus::Ok);
    assert_eq!(take_string(s), "9/5");
    assert_eq!(unsafe { lxeb_c_coeff(1, 0, 0, &mut s) }, LxebStatus::Ok);
    assert_eq!(take_string(s), "1/2");
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut x = 0.0;
    assert_eq!(
        unsafe { lxeb_ref_bs(2, 3, &mut x, ptr::null_mut()) },
        LxebStatus::Validation
    );
    assert!(!last_error().is_empty());
    assert_eq!(
        unsafe { lxeb_ref_bs(2, 2, ptr::null_mut(), ptr::null_mut()) },
        LxebStatus::NullPointer
    );
    assert!(last_error().contains("out"));
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { lxeb_c_coeff(2, 3, 0, &mut s) },
        LxebStatus::Validation
    );
    assert!(s.is_null());
    let mut est = LxebEstimate::default();
    assert_eq!(
        unsafe { lxeb_experiment(40, 20, 2, 10, 0, &mut est) },
        LxebStatus::Guard
    );
    let bad = [0x66u8, 0xff, 0];
    let mut state = ptr::null_mut();
    assert_eq!(
        unsafe { lxeb_state_from_json(bad.as_ptr().cast(), 2, &mut state) },
        LxebStatus::InvalidUtf8
    );
    unsafe { lxeb_string_free(ptr::null_mut()) };
}

#[test]
fn state_handle_round_trip() {
    let doc =
        CString::new(r#"{"modes": [{"kind": "fock", "n": 1}, {"kind": "fock", "n": 1}]}"#).unwrap();
    let mut state = ptr::null_mut();
    let status = unsafe { lxeb_state_from_json(doc.as_ptr(), 2, &mut state) };
    assert_eq!(status, LxebStatus::Ok, "{}", last_error());
    assert_eq!(unsafe { lxeb_state_mode_count(state) }, 2);
    let (mut v, mut norm, mut r) = (0.0, 0.0, 0.0);
    assert_eq!(
        unsafe { lxeb_swap_expectation(state, 2, 1, &mut v) },
        LxebStatus::Ok
    );
    assert!((v - 0.5).abs() < 1e-14);
    assert_eq!(
        unsafe { lxeb_n_particle_norm(state, 2, &mut norm) },
        LxebStatus::Ok
    );
    assert!((norm - 1.0).abs() < 1e-14);
    assert_eq!(
        unsafe { lxeb_ref_general(state, 2, &mut r) },
        LxebStatus::Ok
    );
    assert!((r - 7.0 / 15.0).abs() < 1e-14);
    unsafe { lxeb_state_free(state) };
    assert_eq!(unsafe { lxeb_state_mode_count(ptr::null()) }, 0);

    let bad = CString::new(r#"{"modes": [{"kind": "fock", "n": 1, "phase": 0.5}]}"#).unwrap();
    assert_eq!(
        unsafe { lxeb_state_from_json(bad.as_ptr(), 2, &mut state) },
        LxebStatus::Validation
    );
    assert!(last_error().contains("$.modes[0]"));
}

#[test]
fn unitary_and_permanent() {
    let mut u = ptr::null_mut();
    assert_eq!(
        unsafe { lxeb_unitary_haar(3, 11, 0, &mut u) },
        LxebStatus::Ok
    );
    assert_eq!(unsafe { lxeb_unitary_dim(u) }, 3);
    let (mut re, mut im) = (0.0, 0.0);
    let mut col_norm = 0.0;
    for i in 0..3 {
        assert_eq!(
            unsafe { lxeb_unitary_entry(u, i, 0, &mut re, &mut im) },
            LxebStatus::Ok
        );
        col_norm += re * re + im * im;
    }
    assert!((col_norm - 1.0).abs() < 1e-12);
    assert_eq!(
        unsafe { lxeb_unitary_entry(u, 3, 0, &mut re, &mut im) },
        LxebStatus::Validation
    );

    let input = [1u32, 1, 0];
    let mut total = 0.0;
    for out in [
        [2u32, 0, 0],
        [0, 2, 0],
        [0, 0, 2],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
    ] {
        let mut p = 0.0;
        assert_eq!(
            unsafe { lxeb_bs_probability(u, input.as_ptr(), out.as_ptr(), 3, &mut p) },
            LxebStatus::Ok
        );
        total += p;
    }
    assert!((total - 1.0).abs() < 1e-12);
    let mut p = 0.0;
    assert_eq!(
        unsafe { lxeb_bs_probability(u, input.as_ptr(), input.as_ptr(), 2, &mut p) },
        LxebStatus::Validation
    );
    unsafe { lxeb_unitary_free(u) };

    // per [[1, 2], [3, 4]] = 10
    let a = [1.0, 2.0, 3.0, 4.0];
    let z = [0.0; 4];
    assert_eq!(
        unsafe { lxeb_permanent(a.as_ptr(), z.as_ptr(), 2, &mut re, &mut im) },
        LxebStatus::Ok
    );
    assert_eq!((re, im), (10.0, 0.0));
    assert_eq!(
        unsafe { lxeb_permanent(ptr::null(), ptr::null(), 0, &mut re, &mut im) },
        LxebStatus::Ok
    );
    assert_eq!(re, 1.0);
}

#[test]
fn experiment_matches_core() {
    let mut est = LxebEstimate::default();
    assert_eq!(
        unsafe { lxeb_experiment(5, 2, 4, 100, 3, &mut est) },
        LxebStatus::Ok
    );
    let core = lxebkit::sampler::lxeb_experiment(5, 2, 4, 100, 3).unwrap();
    assert_eq!(est.fidelity_mean, core.fidelity_mean);
    assert_eq!(est.fidelity_stderr, core.fidelity_stderr);
    assert_eq!((est.trials, est.samples_per_trial), (4, 100));
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(lxeb_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
