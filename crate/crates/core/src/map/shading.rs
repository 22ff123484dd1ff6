use crate::model::{GroupPartition, ShadingMode, MEDIAN_GROUP};
use crate::palette::ColorRole;
use crate::region::REGION_COUNT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShadingClass {
    Slot(u8),
    Median,
    Tail,
    Base,
    BandAbove,
    BandBelow,
}

impl ShadingClass {
    pub fn role(self) -> ColorRole {
        match self {
            ShadingClass::Slot(i) => ColorRole::Slot(i),
            ShadingClass::Median => ColorRole::Median,
            ShadingClass::Tail => ColorRole::Tail,
            ShadingClass::Base => ColorRole::Base,
            ShadingClass::BandAbove => ColorRole::AboveBand,
            ShadingClass::BandBelow => ColorRole::BelowBand,
        }
    }
}

/// Shading class of every region in the map panel for group `group_index`,
/// indexed by [`RegionId::index`](crate::region::RegionId::index).
///
/// # Panics
///
/// If `group_index` is not a group of `partition`.
pub fn shaded_sets(
    mode: ShadingMode,
    group_index: usize,
    partition: &GroupPartition,
) -> [ShadingClass; REGION_COUNT] {
    let groups = partition.groups();
    assert!(group_index < groups.len(), "group index {group_index} out of range");
    let mut classes = [ShadingClass::Base; REGION_COUNT];

    let tail_groups = match mode {
        ShadingMode::Maptail if group_index < MEDIAN_GROUP => 0..group_index,
        ShadingMode::Maptail if group_index > MEDIAN_GROUP => group_index + 1..groups.len(),
        ShadingMode::Mapcum => 0..group_index,
        _ => 0..0,
    };
    // the median singleton separates the halves and never joins a tail
    for g in tail_groups.filter(|&g| g != partition.median_index()) {
        for &(_, r) in &groups[g] {
            classes[r.index()] = ShadingClass::Tail;
        }
    }

    if mode == ShadingMode::Mapmedian {
        let median_rank = partition.group(partition.median_index())[0].0;
        for &(rank, r) in groups.iter().flatten() {
            if rank < median_rank {
                classes[r.index()] = ShadingClass::BandAbove;
            } else if rank > median_rank {
                classes[r.index()] = ShadingClass::BandBelow;
            }
        }
    }

    for (slot, &(_, r)) in groups[group_index].iter().enumerate() {
        classes[r.index()] = if group_index == partition.median_index() {
            ShadingClass::Median
        } else {
            ShadingClass::Slot(slot as u8)
        };
    }
    classes
}
