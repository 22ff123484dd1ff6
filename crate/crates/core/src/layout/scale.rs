use crate::layout::LayoutError;

/// Fraction of the data span added on each side of a column's domain.
pub const DOMAIN_PAD: f64 = 0.05;

/// Affine map from a data domain onto a pixel span.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearScale {
    pub domain_min: f64,
    pub domain_max: f64,
    pub range_min: f64,
    pub range_max: f64,
}

impl LinearScale {
    /// The range may run in either direction (y axes map upward).
    pub fn new(domain: (f64, f64), range: (f64, f64)) -> Result<Self, LayoutError> {
        let finite = [domain.0, domain.1, range.0, range.1].iter().all(|v| v.is_finite());
        if !finite || domain.0 >= domain.1 {
            return Err(LayoutError::EmptyDomain(domain.0, domain.1));
        }
        Ok(LinearScale {
            domain_min: domain.0,
            domain_max: domain.1,
            range_min: range.0,
            range_max: range.1,
        })
    }

    pub fn map(&self, v: f64) -> f64 {
        let t = (v - self.domain_min) / (self.domain_max - self.domain_min);
        self.range_min + t * (self.range_max - self.range_min)
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.domain_min && v <= self.domain_max
    }

    /// Same domain, different pixel span.
    pub fn with_range(&self, range: (f64, f64)) -> LinearScale {
        LinearScale {
            range_min: range.0,
            range_max: range.1,
            ..*self
        }
    }
}

/// Shared scale for one glyph column.
///
/// The domain is `[min, max]` over the finite values and `refval`, widened by
/// 5% of the span on each side. When every value is equal the domain becomes
/// `v ± max(1, |v| * 0.05)`.
pub fn column_scale(
    values: impl IntoIterator<Item = f64>,
    refval: Option<f64>,
    range: (f64, f64),
) -> Result<LinearScale, LayoutError> {
    let mut bounds: Option<(f64, f64)> = None;
    for v in values.into_iter().filter(|v| v.is_finite()) {
        bounds = Some(bounds.map_or((v, v), |(lo, hi)| (lo.min(v), hi.max(v))));
    }
    let (mut lo, mut hi) = bounds.ok_or(LayoutError::NoFiniteValues)?;
    if let Some(r) = refval.filter(|r| r.is_finite()) {
        lo = lo.min(r);
        hi = hi.max(r);
    }
    let span = hi - lo;
    let domain = if span > 0.0 {
        (lo - span * DOMAIN_PAD, hi + span * DOMAIN_PAD)
    } else {
        let half = (lo.abs() * DOMAIN_PAD).max(1.0);
        (lo - half, hi + half)
    };
    LinearScale::new(domain, range)
}
