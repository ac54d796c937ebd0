//! Randomized invariants: physicality closure of the symplectic operations,
//! loss-channel structure, codec round trips, and decoder monotonicity.

use proptest::prelude::*;
use sqzlink::codec::{decode, decode_bits, encode};
use sqzlink::receiver::correlation_mean;
use sqzlink::{
    beam_splitter, Alphabet, ChannelParams, CovMat1, MeasurementModel, OperatingPoint,
    SqueezeConvention, SqueezeSpec, ThermalOccupation,
};

/// A random physical single-mode state built from its Williamson form:
/// thermal occupation, then phase-aligned squeezing. Covers the pure
/// boundary (nbar = 0) and deep squeezing.
fn physical_state() -> impl Strategy<Value = CovMat1> {
    (0.0..1e5f64, 1e-4..=1.0f64).prop_map(|(nbar, s)| {
        CovMat1::thermal(ThermalOccupation::new(nbar).unwrap())
            .apply_squeeze(&SqueezeSpec::variance_factor(s).unwrap())
            .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2500))]

    // every branch of squeeze/loss/BS stays physical: with four generated
    // operations per case this exercises the closure 10^4 times
    #[test]
    fn physicality_closure(
        v in physical_state(),
        s in 1e-4..=1.0f64,
        eta in 0.0..=1.0f64,
        vb in physical_state(),
    ) {
        let spec = SqueezeSpec::variance_factor(s).unwrap();
        let squeezed = v.apply_squeeze(&spec).unwrap();
        prop_assert!(squeezed.is_physical());

        let lossy = squeezed.apply_loss(eta).unwrap();
        prop_assert!(lossy.is_physical());

        let split = beam_splitter(&lossy, &vb).unwrap();
        prop_assert!(split.is_physical());

        let split_vac = beam_splitter(&lossy, &CovMat1::vacuum()).unwrap();
        prop_assert!(split_vac.is_physical());
    }

    #[test]
    fn squeeze_preserves_determinant(v in physical_state(), s in 1e-4..=1.0f64) {
        let out = v.apply_squeeze(&SqueezeSpec::variance_factor(s).unwrap()).unwrap();
        let rel = (out.det() - v.det()).abs() / v.det();
        prop_assert!(rel <= 1e-9, "determinant drifted by {rel}");
    }

    #[test]
    fn beam_splitter_output_blocks_symmetric(v in physical_state()) {
        let out = beam_splitter(&v, &CovMat1::vacuum()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((out.entry(i, j) - out.entry(i + 2, j + 2)).abs() <= 1e-12);
            }
        }
    }

    // loss after squeeze equals the closed form eta (nbar + 1/2) s + (1 - eta)/2
    #[test]
    fn composition_closed_form(
        nbar in 0.0..1e5f64,
        s in 1e-4..=1.0f64,
        eta in 0.0..=1.0f64,
    ) {
        let spec = SqueezeSpec::variance_factor(s).unwrap();
        let out = CovMat1::thermal(ThermalOccupation::new(nbar).unwrap())
            .apply_squeeze(&spec).unwrap()
            .apply_loss(eta).unwrap();
        let want_xx = eta * (nbar + 0.5) * s + (1.0 - eta) * 0.5;
        let want_pp = eta * (nbar + 0.5) / s + (1.0 - eta) * 0.5;
        prop_assert!((out.vxx() - want_xx).abs() <= 1e-12 * want_xx.abs().max(1.0));
        prop_assert!((out.vpp() - want_pp).abs() <= 1e-12 * want_pp.abs().max(1.0));
    }

    #[test]
    fn loss_semigroup(v in physical_state(), la in 0.0..20.0f64, lb in 0.0..20.0f64) {
        let one = sqzlink::propagate(&v, &ChannelParams::from_length_ratio(la + lb).unwrap()).unwrap();
        let two = sqzlink::propagate(
            &sqzlink::propagate(&v, &ChannelParams::from_length_ratio(la).unwrap()).unwrap(),
            &ChannelParams::from_length_ratio(lb).unwrap(),
        ).unwrap();
        prop_assert!((one.vxx() - two.vxx()).abs() <= 1e-12 * one.vxx().max(1.0));
        prop_assert!((one.vpp() - two.vpp()).abs() <= 1e-12 * one.vpp().max(1.0));
    }

    // |vxx(L) - 1/2| contracts monotonically toward vacuum with distance
    #[test]
    fn loss_contracts_toward_vacuum(v in physical_state(), steps in 1usize..6) {
        let mut last_x = (v.vxx() - 0.5).abs();
        let mut last_p = (v.vpp() - 0.5).abs();
        for k in 1..=steps {
            let out = sqzlink::propagate(
                &v,
                &ChannelParams::from_length_ratio(k as f64 * 1.3).unwrap(),
            ).unwrap();
            let dx = (out.vxx() - 0.5).abs();
            let dp = (out.vpp() - 0.5).abs();
            prop_assert!(dx <= last_x + 1e-12);
            prop_assert!(dp <= last_p + 1e-12);
            last_x = dx;
            last_p = dp;
        }
    }

    // |C| grows strictly with each of nbar, eta, and squeezing magnitude
    #[test]
    fn correlation_magnitude_monotone(
        nbar in 1.0..1e4f64,
        r in 0.05..0.5f64,
        eta in 0.01..0.9f64,
    ) {
        let c = |nbar: f64, r: f64, eta: f64| {
            let pt = OperatingPoint::new(
                ThermalOccupation::new(nbar).unwrap(),
                ChannelParams::from_transmittance(eta).unwrap(),
            );
            correlation_mean(&pt.output_covariance(&SqueezeSpec::paper(r).unwrap()).unwrap()).abs()
        };
        let base = c(nbar, r, eta);
        prop_assert!(c(nbar * 1.5 + 1.0, r, eta) > base);
        prop_assert!(c(nbar, r + 0.05, eta) > base);
        prop_assert!(c(nbar, r, (eta * 1.1).min(1.0)) > base);
    }

    // framing round trip recovers every payload exactly
    #[test]
    fn codec_round_trip(
        bits in proptest::collection::vec(0u8..=1, 0..=256),
        k_exp in 1u32..=4,
    ) {
        let k = 1usize << k_exp;
        let levels: Vec<f64> = (0..k).map(|i| i as f64 * 0.1).collect();
        let alphabet = Alphabet::from_values(&levels, SqueezeConvention::Paper).unwrap();
        let framed = encode(&bits, &alphabet).unwrap();
        prop_assert_eq!(framed.bit_len, bits.len());
        prop_assert!(framed.dits.iter().all(|&d| d < k));
        let back = decode_bits(&framed.dits, framed.bit_len, &alphabet).unwrap();
        prop_assert_eq!(back, bits);
    }

    // decoding is monotone: a smaller estimate never yields a smaller label
    #[test]
    fn decode_monotone(a in -10.0..10.0f64, b in -10.0..10.0f64) {
        let bounds = [-0.1, -0.4, -0.9];
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(decode(lo, &bounds) >= decode(hi, &bounds));
    }
}

// one long payload round trip at the spec scale, outside proptest
#[test]
fn codec_round_trip_long_payload() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(41);
    let alphabet =
        Alphabet::from_values(&[0.0, 0.1, 0.2, 0.3], SqueezeConvention::Paper).unwrap();
    for _ in 0..8 {
        let len = rng.gen_range(9_000..10_000);
        let bits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..=1)).collect();
        let framed = encode(&bits, &alphabet).unwrap();
        assert_eq!(decode_bits(&framed.dits, framed.bit_len, &alphabet).unwrap(), bits);
    }
}

// swapping the squeezed and anti-squeezed quadratures flips C exactly
#[test]
fn correlation_sign_odd_under_quadrature_swap() {
    for s in [0.05, 0.3, 0.9] {
        let sq = CovMat1::thermal(ThermalOccupation::new(500.0).unwrap())
            .apply_squeeze(&SqueezeSpec::variance_factor(s).unwrap())
            .unwrap();
        let swapped = CovMat1::new(sq.vpp(), sq.vxx(), 0.0).unwrap();
        let c = correlation_mean(&beam_splitter(&sq, &CovMat1::vacuum()).unwrap());
        let c_swapped = correlation_mean(&beam_splitter(&swapped, &CovMat1::vacuum()).unwrap());
        assert_eq!(c, -c_swapped);
        assert!(c < 0.0);
    }
}

// MeasurementModel is plumbing shared by several suites; keep its labels pinned
#[test]
fn model_names_stable() {
    assert_eq!(MeasurementModel::JointPhaseSpace.name(), "joint");
    assert_eq!(MeasurementModel::AlternatingHomodyne.name(), "alt-homodyne");
    assert_eq!(MeasurementModel::Heterodyne.name(), "heterodyne");
}
