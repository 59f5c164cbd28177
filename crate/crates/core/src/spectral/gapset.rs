use crate::error::{Error, Result};

/// An open gap `(lower, upper)` in the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gap {
    pub lower: f64,
    pub upper: f64,
}

impl Gap {
    #[must_use]
    pub fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    /// `γ = E⁺ − E⁻`.
    #[must_use]
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    #[must_use]
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// A closed band `[lower, upper]` of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub lower: f64,
    pub upper: f64,
}

impl Band {
    #[must_use]
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    #[must_use]
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// `E = [E̲, Ē] ∖ ⋃ (E_j⁻, E_j⁺)` with finitely many gaps, ordered left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct GapSet {
    lower: f64,
    upper: f64,
    gaps: Vec<Gap>,
}

/// A gap set keeping only some of the gaps of a parent set.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncation {
    pub set: GapSet,
    /// Parent index of each kept gap, in the order of `set.gaps()`.
    pub kept: Vec<usize>,
}

impl GapSet {
    pub fn new(lower: f64, upper: f64, gaps: Vec<Gap>) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower < upper) {
            return Err(Error::InvalidGapSet(format!(
                "hull [{lower}, {upper}] is not a nondegenerate finite interval"
            )));
        }
        let mut left = lower;
        for (j, g) in gaps.iter().enumerate() {
            if !(g.lower.is_finite() && g.upper.is_finite() && g.lower < g.upper) {
                return Err(Error::InvalidGapSet(format!(
                    "gap {j} ({}, {}) is empty or not finite",
                    g.lower, g.upper
                )));
            }
            if g.lower <= left {
                return Err(Error::InvalidGapSet(format!(
                    "gap {j} ({}, {}) overlaps the band or gap to its left ending at {left}",
                    g.lower, g.upper
                )));
            }
            left = g.upper;
        }
        if left >= upper && !gaps.is_empty() {
            let j = gaps.len() - 1;
            return Err(Error::InvalidGapSet(format!(
                "gap {j} ({}, {}) reaches the upper edge {upper}",
                gaps[j].lower, gaps[j].upper
            )));
        }
        Ok(Self { lower, upper, gaps })
    }

    /// The interval `[lower, upper]` without gaps.
    pub fn interval(lower: f64, upper: f64) -> Result<Self> {
        Self::new(lower, upper, Vec::new())
    }

    /// `E̲`.
    #[must_use]
    pub fn lower(&self) -> f64 {
        self.lower
    }

    /// `Ē`.
    #[must_use]
    pub fn upper(&self) -> f64 {
        self.upper
    }

    #[must_use]
    pub fn span(&self) -> f64 {
        self.upper - self.lower
    }

    #[must_use]
    pub fn gaps(&self) -> &[Gap] {
        &self.gaps
    }

    /// Number of gaps (the genus).
    #[must_use]
    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    #[must_use]
    pub fn gap(&self, j: usize) -> Gap {
        self.gaps[j]
    }

    #[must_use]
    pub fn gamma(&self, j: usize) -> f64 {
        self.gaps[j].width()
    }

    /// `η_j = min(|E_j⁺ − Ē|, |E_j⁻ − E̲|)`.
    #[must_use]
    pub fn eta(&self, j: usize) -> f64 {
        let g = self.gaps[j];
        (g.upper - self.upper).abs().min((g.lower - self.lower).abs())
    }

    /// `η_{j,l} = min(|E_j⁺ − E_l⁻|, |E_j⁻ − E_l⁺|)`.
    #[must_use]
    pub fn eta_pair(&self, j: usize, l: usize) -> f64 {
        let (gj, gl) = (self.gaps[j], self.gaps[l]);
        (gj.upper - gl.lower).abs().min((gj.lower - gl.upper).abs())
    }

    /// Bands in increasing order; there are `len() + 1` of them.
    #[must_use]
    pub fn bands(&self) -> Vec<Band> {
        let mut out = Vec::with_capacity(self.gaps.len() + 1);
        let mut left = self.lower;
        for g in &self.gaps {
            out.push(Band {
                lower: left,
                upper: g.lower,
            });
            left = g.upper;
        }
        out.push(Band {
            lower: left,
            upper: self.upper,
        });
        out
    }

    /// Whether `x ∈ E`.
    #[must_use]
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper && !self.gaps.iter().any(|g| x > g.lower && x < g.upper)
    }

    /// Index of the gap containing `x` in its interior.
    #[must_use]
    pub fn gap_containing(&self, x: f64) -> Option<usize> {
        self.gaps.iter().position(|g| x > g.lower && x < g.upper)
    }

    /// Keeps the `n` largest gaps (ties broken by left edge), clamped to the
    /// gap count.
    #[must_use]
    pub fn truncated(&self, n: usize) -> Truncation {
        let mut order: Vec<usize> = (0..self.gaps.len()).collect();
        order.sort_by(|&i, &j| {
            self.gamma(j)
                .total_cmp(&self.gamma(i))
                .then(self.gaps[i].lower.total_cmp(&self.gaps[j].lower))
        });
        let mut kept: Vec<usize> = order.into_iter().take(n).collect();
        kept.sort_unstable();
        let set = Self {
            lower: self.lower,
            upper: self.upper,
            gaps: kept.iter().map(|&j| self.gaps[j]).collect(),
        };
        Truncation { set, kept }
    }
}
