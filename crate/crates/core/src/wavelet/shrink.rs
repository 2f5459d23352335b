use super::Dwt2Coeffs;

/// Keeps detail coefficients with `|t| >= lambda`, zeroes the rest. The coarsest
/// LL subband passes through. Returns the number of nonzero coefficients left
/// across all subbands, LL included.
pub fn hard_threshold(coeffs: &Dwt2Coeffs, lambda: f64) -> (Dwt2Coeffs, usize) {
    let mut out = coeffs.clone();
    let retained = hard_threshold_in_place(&mut out, lambda);
    (out, retained)
}

pub fn hard_threshold_in_place(coeffs: &mut Dwt2Coeffs, lambda: f64) -> usize {
    let mut retained = coeffs.approx.as_slice().iter().filter(|&&v| v != 0.0).count();
    for t in coeffs.details_mut() {
        if libm::fabs(*t) >= lambda {
            if *t != 0.0 {
                retained += 1;
            }
        } else {
            *t = 0.0;
        }
    }
    retained
}

/// `sign(t) * max(|t| - lambda, 0)` on detail coefficients; LL untouched.
pub fn soft_threshold(coeffs: &Dwt2Coeffs, lambda: f64) -> Dwt2Coeffs {
    let mut out = coeffs.clone();
    soft_threshold_in_place(&mut out, lambda);
    out
}

pub fn soft_threshold_in_place(coeffs: &mut Dwt2Coeffs, lambda: f64) {
    for t in coeffs.details_mut() {
        let mag = libm::fabs(*t) - lambda;
        *t = if mag > 0.0 { libm::copysign(mag, *t) } else { 0.0 };
    }
}
