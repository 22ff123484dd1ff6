use crate::layout::LayoutError;
use crate::model::{GroupPartition, GROUP_SIZES, MEDIAN_GROUP};
use crate::region::{RegionId, REGION_COUNT};

/// Cuts a full sorted order into perceptual groups of sizes
/// `[5, 5, 5, 5, 5, 1, 5, 5, 5, 5, 5]`; rank 26 is the median singleton.
pub fn perceptual_groups(order: &[RegionId]) -> Result<GroupPartition, LayoutError> {
    if order.len() != REGION_COUNT {
        return Err(LayoutError::WrongOrderLength(order.len()));
    }
    let mut seen = [false; REGION_COUNT];
    for &r in order {
        if std::mem::replace(&mut seen[r.index()], true) {
            return Err(LayoutError::RepeatedRegion(r));
        }
    }
    let mut ranked = order.iter().copied().enumerate().map(|(i, r)| (i + 1, r));
    let groups = GROUP_SIZES
        .iter()
        .map(|&n| ranked.by_ref().take(n).collect())
        .collect();
    Ok(GroupPartition {
        groups,
        median_index: MEDIAN_GROUP,
    })
}
