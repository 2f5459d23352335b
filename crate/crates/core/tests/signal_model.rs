use nlwt_core::signal_model::{
    add_awgn, estimate_sigma, mse, normalize, power, prd, snr_improvement, synth_ecg, GaussianNoise,
};
use nlwt_core::{NoiseSpec, Signal, WaveletFilter, WaveletName};
use proptest::prelude::*;

fn samples() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0f64..100.0, 2..200).prop_filter("nonzero", |v| v.iter().any(|x| *x != 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normalize_is_idempotent(v in samples()) {
        let once = normalize(&Signal::new(v, 360.0).unwrap()).unwrap();
        let twice = normalize(&once).unwrap();
        prop_assert_eq!(once.samples(), twice.samples());
        prop_assert_eq!(once.peak_abs(), 1.0);
    }

    #[test]
    fn noisy_as_denoised_is_zero_db(v in samples(), snr in -5.0f64..40.0, seed in any::<u64>()) {
        let clean = Signal::new(v, 360.0).unwrap();
        let (noisy, _) = add_awgn(&clean, &NoiseSpec::new(snr, seed)).unwrap();
        let imp = snr_improvement(clean.samples(), noisy.samples(), noisy.samples()).unwrap();
        prop_assert_eq!(imp, 0.0);
    }

    #[test]
    fn prd_mse_identity(v in samples(), seed in any::<u64>()) {
        let d: Vec<f64> = v.iter().zip(GaussianNoise::new(seed)).map(|(x, z)| x + 0.3 * z).collect();
        let m = mse(&v, &d).unwrap();
        let p = prd(&v, &d).unwrap();
        let lhs = p * p * power(&v) / 1e4;
        prop_assert!((lhs - m).abs() <= 1e-12 * m.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn metrics_are_pure(v in samples(), seed in any::<u64>()) {
        let n: Vec<f64> = v.iter().zip(GaussianNoise::new(seed)).map(|(x, z)| x + z).collect();
        let d: Vec<f64> = v.iter().zip(&n).map(|(x, y)| 0.5 * (x + y)).collect();
        prop_assert_eq!(snr_improvement(&v, &n, &d), snr_improvement(&v, &n, &d));
        prop_assert_eq!(prd(&v, &d), prd(&v, &d));
    }
}

#[test]
fn sigma_estimate_converges() {
    let f = WaveletFilter::new(WaveletName::Haar);
    for seed in 0..20u64 {
        let sigma = 0.05 + 0.01 * seed as f64;
        let v: Vec<f64> = GaussianNoise::new(seed).take(100_000).map(|z| sigma * z).collect();
        let est = estimate_sigma(&v, &f).unwrap();
        assert!((est / sigma - 1.0).abs() <= 0.05, "seed {seed}: {est} vs {sigma}");
    }
}

#[test]
fn awgn_calibration_on_synth() {
    let clean = normalize(&synth_ecg(40, 360.0, 72.0, 3).unwrap()).unwrap();
    assert!(clean.len() >= 10_000);
    for snr in [6.0, 10.0, 15.0, 20.0] {
        let (noisy, sigma) = add_awgn(&clean, &NoiseSpec::new(snr, 11)).unwrap();
        let noise: Vec<f64> = noisy.samples().iter().zip(clean.samples()).map(|(a, b)| a - b).collect();
        let measured = 10.0 * (clean.power() / power(&noise)).log10();
        assert!((measured - snr).abs() <= 0.5, "{snr}: {measured}");
        assert!((sigma * sigma - clean.power() / 10f64.powf(snr / 10.0)).abs() < 1e-15);
    }
}
