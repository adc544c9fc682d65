use super::FuzzyError;

/// A piecewise-linear membership function.
///
/// Breakpoint ordering is checked by the constructors, so every value of this
/// type evaluates to a grade in `[0, 1]` for any finite input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MembershipFunction {
    /// Rises from `left` to a peak of 1 at `peak`, falls back to 0 at `right`.
    Triangular { left: f64, peak: f64, right: f64 },
    /// Flat at 1 below `a`, falls linearly to 0 at `b`.
    ///
    /// This is the shape the original formulation calls "rightmost trapezoidal".
    LeftShoulder { a: f64, b: f64 },
    /// Zero below `c`, rises linearly to 1 at `d`, flat at 1 above.
    RightShoulder { c: f64, d: f64 },
}

fn check_finite(values: &[f64]) -> Result<(), FuzzyError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(FuzzyError::Breakpoints(format!("non-finite breakpoint in {values:?}")))
    }
}

impl MembershipFunction {
    pub fn triangular(left: f64, peak: f64, right: f64) -> Result<Self, FuzzyError> {
        check_finite(&[left, peak, right])?;
        if !(left < peak && peak < right) {
            return Err(FuzzyError::Breakpoints(format!(
                "triangular requires left < peak < right, got ({left}, {peak}, {right})"
            )));
        }
        Ok(Self::Triangular { left, peak, right })
    }

    pub fn left_shoulder(a: f64, b: f64) -> Result<Self, FuzzyError> {
        check_finite(&[a, b])?;
        if a >= b {
            return Err(FuzzyError::Breakpoints(format!("left shoulder requires a < b, got ({a}, {b})")));
        }
        Ok(Self::LeftShoulder { a, b })
    }

    pub fn right_shoulder(c: f64, d: f64) -> Result<Self, FuzzyError> {
        check_finite(&[c, d])?;
        if c >= d {
            return Err(FuzzyError::Breakpoints(format!("right shoulder requires c < d, got ({c}, {d})")));
        }
        Ok(Self::RightShoulder { c, d })
    }

    /// Membership grade of `m`.
    pub fn eval(&self, m: f64) -> f64 {
        let grade = match *self {
            Self::Triangular { left, peak, right } => {
                if m <= left || m >= right {
                    0.0
                } else if m <= peak {
                    (m - left) / (peak - left)
                } else {
                    (right - m) / (right - peak)
                }
            }
            Self::LeftShoulder { a, b } => {
                if m <= a {
                    1.0
                } else if m >= b {
                    0.0
                } else {
                    (b - m) / (b - a)
                }
            }
            Self::RightShoulder { c, d } => {
                if m <= c {
                    0.0
                } else if m >= d {
                    1.0
                } else {
                    (m - c) / (d - c)
                }
            }
        };
        grade.clamp(0.0, 1.0)
    }

    /// The abscissae where the function changes slope.
    pub fn breakpoints(&self) -> Vec<f64> {
        match *self {
            Self::Triangular { left, peak, right } => vec![left, peak, right],
            Self::LeftShoulder { a, b } => vec![a, b],
            Self::RightShoulder { c, d } => vec![c, d],
        }
    }

    /// Points where the function crosses `level`, for `0 < level < 1`.
    pub(crate) fn level_crossings(&self, level: f64) -> Vec<f64> {
        if !(level > 0.0 && level < 1.0) {
            return Vec::new();
        }
        match *self {
            Self::Triangular { left, peak, right } => {
                vec![left + level * (peak - left), right - level * (right - peak)]
            }
            Self::LeftShoulder { a, b } => vec![b - level * (b - a)],
            Self::RightShoulder { c, d } => vec![c + level * (d - c)],
        }
    }

    /// The abscissa of full membership: the peak, or the saturation edge of a shoulder.
    pub fn core_point(&self) -> f64 {
        match *self {
            Self::Triangular { peak, .. } => peak,
            Self::LeftShoulder { a, .. } => a,
            Self::RightShoulder { d, .. } => d,
        }
    }
}
