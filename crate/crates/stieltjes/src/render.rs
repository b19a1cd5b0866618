//! Deterministic text-pixmap rendering of coefficient tables mod m.
//!
//! Each table cell (n, i) becomes a scale x scale block of one color; n grows
//! rightward and i grows upward, so the file's first pixel row is the largest
//! i. Output is the portable pixmap text format (magic `P3`), byte-stable for
//! golden-file comparison.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use crate::cfrac::{coefficient_table, Track};
use crate::error::{Error, Result};
use crate::ring::{Coeff, Domain};
use crate::seq::SignSequence;

pub type Rgb = (u8, u8, u8);

/// What to render: table track and ranges, modulus, colors, and cell size.
#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub track: Track,
    pub n_range: RangeInclusive<usize>,
    pub i_range: RangeInclusive<usize>,
    pub modulus: u64,
    /// One color per residue 0..m-1.
    pub color_map: Vec<Rgb>,
    /// Pixels per table cell (>= 1).
    pub scale: usize,
}

impl RenderSpec {
    pub fn new(
        track: Track,
        n_range: RangeInclusive<usize>,
        i_range: RangeInclusive<usize>,
        modulus: u64,
        color_map: Vec<Rgb>,
        scale: usize,
    ) -> Result<RenderSpec> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        if n_range.is_empty() || i_range.is_empty() {
            return Err(Error::InvalidArgument("render ranges must be nonempty".into()));
        }
        if scale == 0 {
            return Err(Error::InvalidArgument("scale must be at least 1".into()));
        }
        if color_map.len() as u64 != modulus {
            return Err(Error::InvalidArgument(format!(
                "color map has {} entries for modulus {}",
                color_map.len(),
                modulus
            )));
        }
        Ok(RenderSpec { track, n_range, i_range, modulus, color_map, scale })
    }

    /// Residue colors: mod 4 uses white/red/green/blue for 0/1/2/3; other
    /// moduli fall back to an evenly spaced gray ramp (0 stays white).
    pub fn default_colors(modulus: u64) -> Vec<Rgb> {
        if modulus == 4 {
            vec![(255, 255, 255), (255, 0, 0), (0, 128, 0), (0, 0, 255)]
        } else {
            (0..modulus)
                .map(|r| {
                    let level = 255 - (r * 255 / (modulus - 1)) as u8;
                    (level, level, level)
                })
                .collect()
        }
    }

    /// Output dimensions (width, height) in pixels.
    pub fn dimensions(&self) -> (usize, usize) {
        let cells_w = self.n_range.end() - self.n_range.start() + 1;
        let cells_h = self.i_range.end() - self.i_range.start() + 1;
        (cells_w * self.scale, cells_h * self.scale)
    }
}

/// Render the coefficient table of `seq` per `spec` into P3 pixmap bytes.
pub fn render_table(seq: &SignSequence, spec: &RenderSpec) -> Result<Vec<u8>> {
    let domain = Domain::residues(spec.modulus)?;
    let table = coefficient_table(seq, spec.track, *spec.n_range.end(), *spec.i_range.end(), domain)?;
    let (width, height) = spec.dimensions();
    let mut out = String::new();
    let _ = writeln!(out, "P3");
    let _ = writeln!(out, "{width} {height}");
    let _ = writeln!(out, "255");
    for row in 0..height {
        let i = spec.i_range.end() - row / spec.scale;
        let mut first = true;
        for col in 0..width {
            let n = spec.n_range.start() + col / spec.scale;
            let residue = match table.entry(n, i) {
                Coeff::Res(v) => *v as usize,
                _ => unreachable!("table built over residues"),
            };
            let (r, g, b) = spec.color_map[residue];
            if !first {
                out.push(' ');
            }
            let _ = write!(out, "{r} {g} {b}");
            first = false;
        }
        out.push('\n');
    }
    Ok(out.into_bytes())
}

/// Parse P3 bytes back into (width, height, pixels); the round-trip guard
/// for rendered output.
pub fn parse_ppm(bytes: &[u8]) -> Result<(usize, usize, Vec<Rgb>)> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::Parse("pixmap is not UTF-8".into()))?;
    let mut tokens = text.split_whitespace();
    if tokens.next() != Some("P3") {
        return Err(Error::Parse("missing P3 magic".into()));
    }
    let mut next_usize = |what: &str| -> Result<usize> {
        tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad or missing {what}")))
    };
    let width = next_usize("width")?;
    let height = next_usize("height")?;
    let maxval = next_usize("maxval")?;
    if maxval != 255 {
        return Err(Error::Parse(format!("expected maxval 255, got {maxval}")));
    }
    let mut pixels = Vec::with_capacity(width * height);
    for _ in 0..width * height {
        let r = next_usize("red")?;
        let g = next_usize("green")?;
        let b = next_usize("blue")?;
        if r > 255 || g > 255 || b > 255 {
            return Err(Error::Parse("channel value out of range".into()));
        }
        pixels.push((r as u8, g as u8, b as u8));
    }
    if tokens.next().is_some() {
        return Err(Error::Parse("trailing data after pixels".into()));
    }
    Ok((width, height, pixels))
}
