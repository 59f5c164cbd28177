use crate::spectral::GapSet;

/// Gap-geometry quantities entering the Craig-type conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct CraigReport {
    pub gamma: Vec<f64>,
    pub eta: Vec<f64>,
    /// `C_j = ((Ē − E̲) − η_j)^{1/2} exp(½ Σ_{k≠j} γ_k/η_{j,k})`.
    pub c: Vec<f64>,
    /// `η_{j,l}`, symmetric, zero on the diagonal.
    pub eta_pair: Vec<Vec<f64>>,
    /// `sup_j γ_j C_j`.
    pub s1: f64,
    /// `sup_j (γ_j/η_j) C_j`.
    pub s2: f64,
    /// `sup_j Σ_{k≠j} ((γ_j γ_k)^{1/2}/η_{j,k}) C_j`.
    pub s3: f64,
    /// Bound on the Lipschitz constant of Ψ in the weighted sup metric:
    /// `sup_j [(γ_j/η_j + Σ_{k≠j} γ_jγ_k/η_{j,k}²) C_j + Σ_{k≠j} (γ_jγ_k)^{1/2}/η_{j,k} C_j]`.
    pub lipschitz_bound: f64,
}

/// Sups over an empty gap list are zero.
#[must_use]
pub fn craig_report(e: &GapSet) -> CraigReport {
    let g = e.len();
    let gamma: Vec<f64> = (0..g).map(|j| e.gamma(j)).collect();
    let eta: Vec<f64> = (0..g).map(|j| e.eta(j)).collect();
    let eta_pair: Vec<Vec<f64>> = (0..g)
        .map(|j| (0..g).map(|l| if j == l { 0.0 } else { e.eta_pair(j, l) }).collect())
        .collect();
    let c: Vec<f64> = (0..g)
        .map(|j| {
            let s: f64 = (0..g).filter(|&k| k != j).map(|k| gamma[k] / eta_pair[j][k]).sum();
            (e.span() - eta[j]).sqrt() * (0.5 * s).exp()
        })
        .collect();
    let (mut s1, mut s2, mut s3, mut lip) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for j in 0..g {
        let cross: f64 = (0..g)
            .filter(|&k| k != j)
            .map(|k| (gamma[j] * gamma[k]).sqrt() / eta_pair[j][k])
            .sum();
        let cross_sq: f64 = (0..g)
            .filter(|&k| k != j)
            .map(|k| gamma[j] * gamma[k] / eta_pair[j][k].powi(2))
            .sum();
        s1 = s1.max(gamma[j] * c[j]);
        s2 = s2.max(gamma[j] / eta[j] * c[j]);
        s3 = s3.max(cross * c[j]);
        lip = lip.max((gamma[j] / eta[j] + cross_sq) * c[j] + cross * c[j]);
    }
    CraigReport {
        gamma,
        eta,
        c,
        eta_pair,
        s1,
        s2,
        s3,
        lipschitz_bound: lip,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Gap;

    #[test]
    fn one_gap_values() {
        let e = GapSet::new(-1.0, 1.0, vec![Gap::new(-0.2, 0.2)]).unwrap();
        let r = craig_report(&e);
        assert!((r.eta[0] - 0.8).abs() < 1e-15);
        assert!((r.c[0] - 1.2f64.sqrt()).abs() < 1e-15);
        assert!((r.s1 - 0.4 * 1.2f64.sqrt()).abs() < 1e-15);
        assert_eq!(r.s3, 0.0);
    }

    #[test]
    fn no_gaps_gives_zero_sups() {
        let r = craig_report(&GapSet::interval(-1.0, 1.0).unwrap());
        assert_eq!((r.s1, r.s2, r.s3, r.lipschitz_bound), (0.0, 0.0, 0.0, 0.0));
    }
}
