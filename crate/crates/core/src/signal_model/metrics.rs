use crate::error::{Error, Result};

fn check_len(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

fn sum_sq_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Mean power `(1/N) * sum(u^2)`; zero for an empty slice.
pub fn power(u: &[f64]) -> f64 {
    if u.is_empty() {
        return 0.0;
    }
    u.iter().map(|v| v * v).sum::<f64>() / u.len() as f64
}

/// `10 log10( sum (v-u)^2 / sum (u_hat-u)^2 )` in dB.
///
/// Returns [`Error::ZeroDenominator`] when the denoised signal equals the clean one.
pub fn snr_improvement(clean: &[f64], noisy: &[f64], denoised: &[f64]) -> Result<f64> {
    check_len(clean, noisy)?;
    check_len(clean, denoised)?;
    let num = sum_sq_diff(noisy, clean);
    let den = sum_sq_diff(denoised, clean);
    if den == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(10.0 * libm::log10(num / den))
}

/// `(1/N) * sum (u_hat - u)^2`.
pub fn mse(clean: &[f64], denoised: &[f64]) -> Result<f64> {
    check_len(clean, denoised)?;
    if clean.is_empty() {
        return Ok(0.0);
    }
    Ok(sum_sq_diff(denoised, clean) / clean.len() as f64)
}

/// Percent root-mean-square difference, `100 * sqrt(MSE / power(clean))`.
pub fn prd(clean: &[f64], denoised: &[f64]) -> Result<f64> {
    let m = mse(clean, denoised)?;
    let p = power(clean);
    if p == 0.0 {
        return Err(Error::AllZeroSignal);
    }
    Ok(100.0 * libm::sqrt(m / p))
}
