use std::cmp::Ordering;

use crate::model::{RegionTable, SortDirection, SortSpec};
use crate::region::RegionId;

/// Orders all 51 regions by the sort column.
///
/// Present values follow `direction`; missing values (or an absent column) go
/// last whatever the direction; ties are broken by ascending region code.
pub fn sort_regions(table: &RegionTable, sort: &SortSpec) -> Vec<RegionId> {
    let values = table.column(&sort.column);
    let value = |r: RegionId| values.and_then(|v| v[r.index()]);
    let mut order: Vec<RegionId> = RegionId::all().collect();
    order.sort_by(|&a, &b| {
        let by_value = match (value(a), value(b)) {
            (Some(x), Some(y)) => {
                let o = x.partial_cmp(&y).unwrap_or(Ordering::Equal);
                match sort.direction {
                    SortDirection::Ascending => o,
                    SortDirection::Descending => o.reverse(),
                }
            }
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        };
        by_value.then(a.cmp(&b))
    });
    order
}
