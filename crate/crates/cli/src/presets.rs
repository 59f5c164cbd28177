//! Named operators and gap sets.

use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;
use toda_core::spectral::{periodic_spectrum, Gap};
use toda_core::{GapSet, JacobiOperator};

use crate::error::{LabError, Result};

pub const DEFAULT_DYADIC_SIZE: usize = 20;

const SIX_GAP: [(f64, f64); 6] = [
    (-0.7, 0.2),
    (-0.35, 0.1),
    (0.0, 0.05),
    (0.3, 0.025),
    (0.55, 0.0125),
    (0.8, 0.00625),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Free,
    P2Gap,
    P4Seed0,
    OneGap,
    TwoGap,
    Synthetic6Gap,
    SyntheticDyadic,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Self::Free,
        Self::P2Gap,
        Self::P4Seed0,
        Self::OneGap,
        Self::TwoGap,
        Self::Synthetic6Gap,
        Self::SyntheticDyadic,
    ];

    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::Free => "free",
            Self::P2Gap => "p2-gap",
            Self::P4Seed0 => "p4-seed0",
            Self::OneGap => "one-gap",
            Self::TwoGap => "two-gap",
            Self::Synthetic6Gap => "synthetic-6gap",
            Self::SyntheticDyadic => "synthetic-dyadic",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| LabError::UnknownPreset(name.to_string()))
    }

    /// The defining numbers, as printed by `list-presets`.
    #[must_use]
    pub fn definition(self) -> String {
        match self {
            Self::Free => "operator a=(0.5), b=(0); set [-1,1]".into(),
            Self::P2Gap => "operator a=(0.6,0.4), b=(0,0); set [-1,1] minus (-0.2,0.2)".into(),
            Self::P4Seed0 => {
                let op = self.operator().expect("p4-seed0 is an operator");
                format!(
                    "operator Pcg64 seed 0, a~U[0.5,1.5) x4 then b~U[-0.5,0.5) x4: a=({}), b=({})",
                    join(op.a_values()),
                    join(op.b_values())
                )
            }
            Self::OneGap => "set [-1,1] minus (-0.2,0.2)".into(),
            Self::TwoGap => "set [-1,1] minus (-0.5,-0.3), (0.2,0.35)".into(),
            Self::Synthetic6Gap => format!(
                "set [-1,1] minus gaps centred at ({}) with widths ({})",
                join(&SIX_GAP.map(|g| g.0)),
                join(&SIX_GAP.map(|g| g.1))
            ),
            Self::SyntheticDyadic => format!(
                "set [-1,1] minus gaps centred at 1-2^-j with widths 4^-(j+2), j=1..size (default size {DEFAULT_DYADIC_SIZE})"
            ),
        }
    }

    /// `None` for presets that are only gap sets.
    #[must_use]
    pub fn operator(self) -> Option<JacobiOperator> {
        match self {
            Self::Free => Some(JacobiOperator::free()),
            Self::P2Gap => Some(JacobiOperator::periodic(vec![0.6, 0.4], vec![0.0, 0.0]).expect("valid")),
            Self::P4Seed0 => Some(random_periodic(4, 0).expect("valid")),
            _ => None,
        }
    }

    /// `size` applies to `synthetic-dyadic` and truncates the others.
    pub fn gap_set(self, size: Option<usize>) -> Result<GapSet> {
        let set = match self {
            Self::Free => GapSet::interval(-1.0, 1.0)?,
            Self::P2Gap | Self::OneGap => GapSet::new(-1.0, 1.0, vec![Gap::new(-0.2, 0.2)])?,
            Self::P4Seed0 => periodic_spectrum(&self.operator().expect("operator preset"))?,
            Self::TwoGap => GapSet::new(-1.0, 1.0, vec![Gap::new(-0.5, -0.3), Gap::new(0.2, 0.35)])?,
            Self::Synthetic6Gap => GapSet::new(
                -1.0,
                1.0,
                SIX_GAP
                    .iter()
                    .map(|&(c, w)| Gap::new(c - w / 2.0, c + w / 2.0))
                    .collect(),
            )?,
            Self::SyntheticDyadic => return dyadic(size.unwrap_or(DEFAULT_DYADIC_SIZE)),
        };
        Ok(match size {
            Some(n) if n < set.len() => set.truncated(n).set,
            _ => set,
        })
    }
}

/// Gaps centred at `1 − 2^{−j}` of width `4^{−j−2}`, `j = 1..=n`.
pub fn dyadic(n: usize) -> Result<GapSet> {
    let gaps = (1..=n as i32)
        .map(|j| {
            let c = 1.0 - 2f64.powi(-j);
            let w = 4f64.powi(-j - 2);
            Gap::new(c - w / 2.0, c + w / 2.0)
        })
        .collect();
    Ok(GapSet::new(-1.0, 1.0, gaps)?)
}

/// Periodic operator with `a ~ U[0.5, 1.5)` drawn first, then `b ~ U[−0.5, 0.5)`.
pub fn random_periodic(period: usize, seed: u64) -> Result<JacobiOperator> {
    let mut rng = Pcg64::seed_from_u64(seed);
    let a: Vec<f64> = (0..period).map(|_| rng.random_range(0.5..1.5)).collect();
    let b: Vec<f64> = (0..period).map(|_| rng.random_range(-0.5..0.5)).collect();
    Ok(JacobiOperator::periodic(a, b)?)
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",")
}
