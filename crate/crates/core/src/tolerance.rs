/// Relative tolerance threaded through every tolerance-dependent operation.
///
/// Thresholds are formed by multiplying `relative` with a length scale taken
/// from the configuration at hand (a diameter, a radius, a longest side). For
/// dimensionless quantities such as ratios, disc coordinates and angles the
/// relative value is used as is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub relative: f64,
}

impl Tolerance {
    pub const DEFAULT_RELATIVE: f64 = 1e-9;

    pub const fn new(relative: f64) -> Self {
        Self { relative }
    }

    /// Absolute threshold for a quantity of size `scale`.
    #[inline]
    pub fn at_scale(&self, scale: f64) -> f64 {
        self.relative * scale
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(Self::DEFAULT_RELATIVE)
    }
}
