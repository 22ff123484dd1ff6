use crate::model::{BoxStats, MIN_BOX_COLUMNS};
use crate::region::RegionId;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("a box needs at least {MIN_BOX_COLUMNS} values, got {0}")]
    TooFewValues(usize),
    #[error("sample contains a non-finite value")]
    NonFinite,
}

/// Quartiles by linear interpolation at position `p * (n - 1)` of the sorted
/// sample; whiskers reach the most extreme values inside the 1.5 IQR fences.
pub fn five_number_summary(sample: &[f64]) -> Result<BoxStats, StatsError> {
    if sample.len() < MIN_BOX_COLUMNS {
        return Err(StatsError::TooFewValues(sample.len()));
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);

    let quantile = |p: f64| {
        let pos = p * (sorted.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let frac = pos - lo as f64;
        if frac == 0.0 {
            sorted[lo]
        } else {
            sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
        }
    };
    let (q1, median, q3) = (quantile(0.25), quantile(0.5), quantile(0.75));
    let iqr = q3 - q1;
    let (lo_fence, hi_fence) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);

    let inside = || sorted.iter().copied().filter(|v| *v >= lo_fence && *v <= hi_fence);
    let low_whisker = inside().next().unwrap_or(q1);
    let high_whisker = inside().next_back().unwrap_or(q3);
    let outliers = sorted
        .iter()
        .copied()
        .filter(|v| *v < lo_fence || *v > hi_fence)
        .collect();

    Ok(BoxStats {
        low_whisker,
        q1,
        median,
        q3,
        high_whisker,
        outliers,
    })
}

/// Finite values of `region` across the sample columns, in column order.
pub fn box_sample(columns: &[&[Option<f64>]], region: RegionId) -> Vec<f64> {
    columns
        .iter()
        .filter_map(|c| c[region.index()])
        .filter(|v| v.is_finite())
        .collect()
}
