use crate::layout::LinearScale;

/// Step mantissas in tenths: 1, 2, 2.5 and 5 times a power of ten.
const MANTISSA_TENTHS: [i64; 4] = [10, 20, 25, 50];

#[derive(Debug, Clone, Copy)]
struct Step {
    tenths: i64,
    exp: i32,
}

impl Step {
    fn size(self) -> f64 {
        decimal(self.tenths, self.exp - 1)
    }

    /// The `n`th multiple, rounded once from its exact decimal value.
    fn multiple(self, n: i64) -> f64 {
        decimal(n * self.tenths, self.exp - 1)
    }
}

fn decimal(digits: i64, exp: i32) -> f64 {
    if exp >= 0 {
        digits as f64 * 10f64.powi(exp)
    } else {
        digits as f64 / 10f64.powi(-exp)
    }
}

/// Tick positions for an axis.
///
/// Ticks are the multiples of a step from {1, 2, 2.5, 5} x 10^k that lie inside
/// the scale's domain. Among candidate steps the one producing the most ticks
/// without exceeding `max_ticks` wins (larger step on ties). Always at least two
/// ticks; when no step fits within `max_ticks`, the sparsest larger set is cut
/// down to its first `max_ticks` entries.
pub fn nice_ticks(scale: &LinearScale, max_ticks: usize) -> Vec<f64> {
    let max_ticks = max_ticks.max(2);
    let (lo, hi) = (scale.domain_min, scale.domain_max);
    let rough = (hi - lo) / (max_ticks - 1) as f64;
    let mag = rough.log10().floor() as i32;

    let ticks_for = |step: Step| -> Vec<f64> {
        let size = step.size();
        let first = (lo / size - 1e-9).ceil() as i64;
        let last = (hi / size + 1e-9).floor() as i64;
        (first..=last)
            .map(|n| step.multiple(n))
            .filter(|t| *t >= lo && *t <= hi)
            .collect()
    };

    let mut best: Option<(usize, f64, Vec<f64>)> = None;
    let mut fallback: Option<(usize, Vec<f64>)> = None;
    for exp in mag - 1..=mag + 2 {
        for tenths in MANTISSA_TENTHS {
            let step = Step { tenths, exp };
            let ticks = ticks_for(step);
            let n = ticks.len();
            if n < 2 {
                continue;
            }
            if n <= max_ticks {
                let better = match &best {
                    None => true,
                    Some((bn, bs, _)) => n > *bn || (n == *bn && step.size() > *bs),
                };
                if better {
                    best = Some((n, step.size(), ticks));
                }
            } else if fallback.as_ref().map_or(true, |(fn_, _)| n < *fn_) {
                fallback = Some((n, ticks));
            }
        }
    }
    match (best, fallback) {
        (Some((_, _, ticks)), _) => ticks,
        (None, Some((_, mut ticks))) => {
            ticks.truncate(max_ticks);
            ticks
        }
        (None, None) => vec![lo, hi],
    }
}

/// Decimal places needed to print ticks spaced `step` apart.
pub fn tick_decimals(ticks: &[f64]) -> usize {
    let step = match ticks {
        [a, b, ..] => (b - a).abs(),
        _ => return 0,
    };
    (0..=6)
        .find(|&d| {
            let scaled = step * 10f64.powi(d);
            (scaled - scaled.round()).abs() < 1e-6
        })
        .unwrap_or(6) as usize
}

/// Formats a tick value with the precision shared by its axis.
pub fn format_tick(value: f64, decimals: usize) -> String {
    let s = format!("{value:.decimals$}");
    // "-0" and friends
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_owned()
    } else {
        s
    }
}
