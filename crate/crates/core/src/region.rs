//! The closed universe of 51 regions (50 states + DC) and label linking.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Number of regions in the universe.
pub const REGION_COUNT: usize = 51;

struct RegionInfo {
    code: &'static str,
    name: &'static str,
    display: &'static str,
    fips: &'static str,
}

macro_rules! regions {
    ($( ($code:literal, $name:literal, $display:literal, $fips:literal) ),* $(,)?) => {
        const REGIONS: [RegionInfo; REGION_COUNT] = [
            $( RegionInfo { code: $code, name: $name, display: $display, fips: $fips } ),*
        ];
    };
}

// Sorted by USPS code; `RegionId` ordering relies on it.
regions! {
    ("AK", "Alaska", "Alaska", "02"),
    ("AL", "Alabama", "Alabama", "01"),
    ("AR", "Arkansas", "Arkansas", "05"),
    ("AZ", "Arizona", "Arizona", "04"),
    ("CA", "California", "California", "06"),
    ("CO", "Colorado", "Colorado", "08"),
    ("CT", "Connecticut", "Connecticut", "09"),
    ("DC", "District of Columbia", "Dist. of Columbia", "11"),
    ("DE", "Delaware", "Delaware", "10"),
    ("FL", "Florida", "Florida", "12"),
    ("GA", "Georgia", "Georgia", "13"),
    ("HI", "Hawaii", "Hawaii", "15"),
    ("IA", "Iowa", "Iowa", "19"),
    ("ID", "Idaho", "Idaho", "16"),
    ("IL", "Illinois", "Illinois", "17"),
    ("IN", "Indiana", "Indiana", "18"),
    ("KS", "Kansas", "Kansas", "20"),
    ("KY", "Kentucky", "Kentucky", "21"),
    ("LA", "Louisiana", "Louisiana", "22"),
    ("MA", "Massachusetts", "Massachusetts", "25"),
    ("MD", "Maryland", "Maryland", "24"),
    ("ME", "Maine", "Maine", "23"),
    ("MI", "Michigan", "Michigan", "26"),
    ("MN", "Minnesota", "Minnesota", "27"),
    ("MO", "Missouri", "Missouri", "29"),
    ("MS", "Mississippi", "Mississippi", "28"),
    ("MT", "Montana", "Montana", "30"),
    ("NC", "North Carolina", "North Carolina", "37"),
    ("ND", "North Dakota", "North Dakota", "38"),
    ("NE", "Nebraska", "Nebraska", "31"),
    ("NH", "New Hampshire", "New Hampshire", "33"),
    ("NJ", "New Jersey", "New Jersey", "34"),
    ("NM", "New Mexico", "New Mexico", "35"),
    ("NV", "Nevada", "Nevada", "32"),
    ("NY", "New York", "New York", "36"),
    ("OH", "Ohio", "Ohio", "39"),
    ("OK", "Oklahoma", "Oklahoma", "40"),
    ("OR", "Oregon", "Oregon", "41"),
    ("PA", "Pennsylvania", "Pennsylvania", "42"),
    ("RI", "Rhode Island", "Rhode Island", "44"),
    ("SC", "South Carolina", "South Carolina", "45"),
    ("SD", "South Dakota", "South Dakota", "46"),
    ("TN", "Tennessee", "Tennessee", "47"),
    ("TX", "Texas", "Texas", "48"),
    ("UT", "Utah", "Utah", "49"),
    ("VA", "Virginia", "Virginia", "51"),
    ("VT", "Vermont", "Vermont", "50"),
    ("WA", "Washington", "Washington", "53"),
    ("WI", "Wisconsin", "Wisconsin", "55"),
    ("WV", "West Virginia", "West Virginia", "54"),
    ("WY", "Wyoming", "Wyoming", "56"),
}

/// A canonical region key: one of the 51 USPS codes.
///
/// Ordering follows the code alphabetically, which is the tie-break order used
/// when sorting regions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegionId(u8);

impl RegionId {
    /// All 51 regions in code order.
    pub fn all() -> impl ExactSizeIterator<Item = RegionId> + DoubleEndedIterator + Clone {
        (0..REGION_COUNT as u8).map(RegionId)
    }

    /// Position of this region in code order, `0..51`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Option<RegionId> {
        (index < REGION_COUNT).then_some(RegionId(index as u8))
    }

    /// Strict constructor: an uppercase USPS code from the closed set.
    pub fn from_code(code: &str) -> Option<RegionId> {
        REGIONS
            .binary_search_by(|r| r.code.cmp(code))
            .ok()
            .map(|i| RegionId(i as u8))
    }

    pub fn code(self) -> &'static str {
        REGIONS[self.index()].code
    }

    /// Full official name, e.g. "District of Columbia".
    pub fn name(self) -> &'static str {
        REGIONS[self.index()].name
    }

    /// Short label used in the id column, e.g. "Dist. of Columbia".
    pub fn display_name(self) -> &'static str {
        REGIONS[self.index()].display
    }

    /// Two-digit state FIPS code.
    pub fn fips(self) -> &'static str {
        REGIONS[self.index()].fips
    }
}

impl fmt::Debug for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinkError {
    #[error("unknown region label {0:?}")]
    Unknown(String),
    #[error("region label {label:?} matches both {first} and {second}")]
    Ambiguous {
        label: String,
        first: RegionId,
        second: RegionId,
    },
}

impl FromStr for RegionId {
    type Err = LinkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RegionId::from_code(s).ok_or_else(|| LinkError::Unknown(s.to_owned()))
    }
}

impl Serialize for RegionId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for RegionId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Resolves a free-form label to its canonical region.
///
/// Matching is case-insensitive against the USPS code, the full name, the short
/// display name and the FIPS code (a leading zero may be omitted, so "6" is CA).
/// Surrounding whitespace and interior runs of whitespace are normalized.
pub fn link_region(label: &str) -> Result<RegionId, LinkError> {
    let key = normalize(label);
    if key.is_empty() {
        return Err(LinkError::Unknown(label.to_owned()));
    }
    let fips_key = if key.len() == 1 && key.as_bytes()[0].is_ascii_digit() {
        format!("0{key}")
    } else {
        key.clone()
    };

    let mut found: Option<RegionId> = None;
    for id in RegionId::all() {
        let info = &REGIONS[id.index()];
        let hit = info.code.eq_ignore_ascii_case(&key)
            || normalize(info.name) == key
            || normalize(info.display) == key
            || info.fips == fips_key;
        if hit {
            match found {
                None => found = Some(id),
                Some(first) => {
                    return Err(LinkError::Ambiguous {
                        label: label.to_owned(),
                        first,
                        second: id,
                    })
                }
            }
        }
    }
    found.ok_or_else(|| LinkError::Unknown(label.to_owned()))
}

fn normalize(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}
