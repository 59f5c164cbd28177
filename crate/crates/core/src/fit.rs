//! Least-squares line fits.

/// `(intercept, slope)` of the least-squares line through `(x_i, y_i)`.
///
/// # Panics
/// Panics if the slices differ in length or hold fewer than two points.
#[must_use]
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len(), "x and y differ in length");
    assert!(x.len() >= 2, "a line needs two points");
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

/// `(prefactor, exponent)` of `y ≈ c xᵖ`, fitted in log–log coordinates.
#[must_use]
pub fn power_law_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let (c, p) = linear_fit(&lx, &ly);
    (c.exp(), p)
}
