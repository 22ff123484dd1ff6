//! Color palettes and role resolution.

use std::fmt;

/// A 24-bit RGB color.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    /// Parses `#RRGGBB` (the leading `#` is required).
    pub fn from_hex(hex: &str) -> Option<Rgb> {
        let digits = hex.strip_prefix('#')?;
        if digits.len() != 6 || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
            return None;
        }
        let channel = |i: usize| u8::from_str_radix(&digits[i..i + 2], 16).ok();
        Some(Rgb(channel(0)?, channel(2)?, channel(4)?))
    }

    pub fn hex(self) -> String {
        format!("#{:02X}{:02X}{:02X}", self.0, self.1, self.2)
    }
}

impl fmt::Debug for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

/// Symbolic color used by drawable primitives; resolved against a [`Palette`]
/// only when the document is emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColorRole {
    /// Position within a perceptual group, `0..5`.
    Slot(u8),
    Median,
    Tail,
    Base,
    AboveBand,
    BelowBand,
    Ref,
    /// Text, outlines and axis ink; drawn with the median color.
    Ink,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    pub group_colors: [Rgb; 5],
    pub median_color: Rgb,
    pub tail_color: Rgb,
    pub base_color: Rgb,
    pub above_band: Rgb,
    pub below_band: Rgb,
    pub ref_line_color: Rgb,
}

const fn rgb(v: u32) -> Rgb {
    Rgb((v >> 16) as u8, (v >> 8) as u8, v as u8)
}

impl Palette {
    /// Set1-style default colors.
    pub const DEFAULT: Palette = Palette {
        group_colors: [
            rgb(0xE41A1C),
            rgb(0xFF7F00),
            rgb(0x4DAF4A),
            rgb(0x377EB8),
            rgb(0x984EA3),
        ],
        median_color: rgb(0x000000),
        tail_color: rgb(0xC8C8C8),
        base_color: rgb(0xF0F0F0),
        above_band: rgb(0xFFF2E6),
        below_band: rgb(0xE6F2FF),
        ref_line_color: rgb(0x008000),
    };

    /// Okabe-Ito hues, distinguishable under common color vision deficiencies.
    pub const COLOR_SAFE: Palette = Palette {
        group_colors: [
            rgb(0xE69F00),
            rgb(0x56B4E9),
            rgb(0x009E73),
            rgb(0xCC79A7),
            rgb(0x0072B2),
        ],
        ..Palette::DEFAULT
    };

    pub fn for_spec(color_safe: bool) -> &'static Palette {
        if color_safe {
            &Palette::COLOR_SAFE
        } else {
            &Palette::DEFAULT
        }
    }

    pub fn resolve(&self, role: ColorRole) -> Rgb {
        match role {
            ColorRole::Slot(i) => self.group_colors[i as usize % 5],
            ColorRole::Median | ColorRole::Ink => self.median_color,
            ColorRole::Tail => self.tail_color,
            ColorRole::Base => self.base_color,
            ColorRole::AboveBand => self.above_band,
            ColorRole::BelowBand => self.below_band,
            ColorRole::Ref => self.ref_line_color,
        }
    }

    /// Every color this palette can emit.
    pub fn colors(&self) -> Vec<Rgb> {
        let mut out = self.group_colors.to_vec();
        out.extend([
            self.median_color,
            self.tail_color,
            self.base_color,
            self.above_band,
            self.below_band,
            self.ref_line_color,
        ]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip() {
        for c in Palette::DEFAULT.colors().into_iter().chain(Palette::COLOR_SAFE.colors()) {
            assert_eq!(Rgb::from_hex(&c.hex()), Some(c));
        }
        assert_eq!(Palette::DEFAULT.group_colors[0].hex(), "#E41A1C");
        assert_eq!(Palette::COLOR_SAFE.group_colors[4].hex(), "#0072B2");
        assert_eq!(Palette::DEFAULT.ref_line_color.hex(), "#008000");
    }

    #[test]
    fn rejects_malformed_hex() {
        for bad in ["E41A1C", "#E41A1", "#E41A1CC", "#G41A1C", ""] {
            assert_eq!(Rgb::from_hex(bad), None, "{bad}");
        }
    }

    #[test]
    fn color_safe_shares_neutrals() {
        let (d, s) = (&Palette::DEFAULT, &Palette::COLOR_SAFE);
        assert_eq!(d.median_color, s.median_color);
        assert_eq!(d.tail_color, s.tail_color);
        assert_eq!(d.ref_line_color, s.ref_line_color);
        assert!(d.group_colors.iter().all(|c| !s.group_colors.contains(c)));
    }
}
