//! Reference values frozen from `oracle/bounds_oracle.py` (mpmath at 40
//! digits, direct unsimplified formulas, golden search at full precision,
//! and a Fock-basis Kraus computation for the fidelity).

// Values are kept exactly as the oracle printed them.
#![allow(clippy::excessive_precision)]

use boson_bounds::bounds::{
    coherent_info_amp, coherent_info_thermal, gaussian_c_distance, p_bounds, penalty, q_u1, q_u2,
    q_u3, q_u4, ud_closed_form, PenaltyParams, PrivateBound,
};
use boson_bounds::gaussian_core::{binary_entropy, g_entropy};
use boson_bounds::PhaseInsensitiveChannel;

fn close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got:.17e}, want {want:.17e}"
    );
}

fn thermal(eta: f64, nb: f64) -> PhaseInsensitiveChannel {
    PhaseInsensitiveChannel::thermal(eta, nb).unwrap()
}

#[test]
fn entropies() {
    close(g_entropy(0.5).unwrap(), 1.3774437510817343, 1e-15, "g(0.5)");
    close(
        binary_entropy(0.11).unwrap(),
        0.499915958164528,
        1e-15,
        "h2(0.11)",
    );
}

#[test]
fn penalty_value() {
    let p = PenaltyParams::new(0.1, 0.3, 5.0, 1).unwrap();
    close(penalty(&p), 10.136160448543973, 1e-13, "penalty");
}

#[test]
fn coherent_information() {
    close(
        coherent_info_thermal(0.7, 0.2, 4.0).unwrap(),
        0.34907586430854457,
        1e-13,
        "Q_L thermal",
    );
    close(
        coherent_info_amp(1.5, 0.3, 8.0).unwrap(),
        0.50510923360887276,
        1e-13,
        "Q_L amp",
    );
}

#[test]
fn data_processing_and_decomposition() {
    let amp = PhaseInsensitiveChannel::amplifier(2.0, 0.5).unwrap();
    let u1 = q_u1(&amp, 10.0).unwrap();
    close(u1.raw_bits, 0.37687610416829146, 1e-13, "Q_U1 amp");
    assert!(u1.raw_bits >= coherent_info_amp(2.0, 0.5, 10.0).unwrap());

    let u4 = q_u4(&thermal(0.6, 0.4), 3.0).unwrap();
    close(u4.raw_bits, -0.28697727345418295, 1e-13, "Q_U4 raw");
    assert_eq!(u4.value_bits, 0.0);
}

#[test]
fn ud_value() {
    close(
        ud_closed_form(&thermal(0.8, 0.3), 2.0).unwrap(),
        0.60496253190224183,
        1e-13,
        "U_D",
    );
}

#[test]
fn optimized_penalty_bounds() {
    let r = q_u2(&thermal(0.75, 0.2), 5.0, None).unwrap();
    close(r.raw_bits, 6.2186067931689944, 1e-9, "Q_U2");
    close(r.arg_opt.unwrap(), 0.23926940843577717, 1e-6, "Q_U2 eps'");

    let r = q_u3(&thermal(0.75, 0.1), 5.0, None).unwrap();
    close(r.raw_bits, 7.0458764271387056, 1e-9, "Q_U3");
    close(r.arg_opt.unwrap(), 0.094325910508085427, 1e-6, "Q_U3 eps'");

    let r = p_bounds(&thermal(0.7, 0.2), 5.0, PrivateBound::PU3, None).unwrap();
    close(r.raw_bits, 20.104422388661091, 1e-9, "P_U3");
    close(r.arg_opt.unwrap(), 0.17408629212745103, 1e-6, "P_U3 eps'");
}

#[test]
fn c_distance() {
    let d = gaussian_c_distance(&thermal(0.8, 0.3), &thermal(0.8, 0.1), 2.0).unwrap();
    close(d, 0.14826926717660052, 1e-9, "C-distance");
}
