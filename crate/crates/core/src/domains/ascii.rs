//! Binary images with a drawing cursor.
//!
//! Cursor moves fail at the border; `draw1`/`draw0` set the pixel under the
//! cursor and always succeed. Literal coordinates are 1-based `[row, col]`.

use std::fmt;

use serde_json::{json, Value};
use smallvec::SmallVec;

use super::font::{self, UnsupportedChar, GLYPH_HEIGHT};
use crate::kernel::{Domain, PrimId, PrimitiveDecl, StateError};
use crate::losses::{self, LossFunction};

type Words = SmallVec<[u64; 2]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImageState {
    height: u16,
    width: u16,
    pixels: Words,
    /// 0-based `(row, col)`.
    cursor: (u16, u16),
}

impl ImageState {
    pub fn blank(height: usize, width: usize) -> Self {
        let words = (height * width).div_ceil(64);
        ImageState {
            height: height as u16,
            width: width as u16,
            pixels: SmallVec::from_elem(0, words),
            cursor: (0, 0),
        }
    }

    pub fn from_pixels(rows: &[Vec<bool>]) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let mut img = ImageState::blank(height, width);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), width, "ragged image");
            for (c, &px) in row.iter().enumerate() {
                img.set(r, c, px);
            }
        }
        img
    }

    pub fn from_rows(rows: &[&str]) -> Result<Self, StateError> {
        let parsed = rows
            .iter()
            .map(|row| {
                row.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(StateError::new("ascii", format!("bad pixel {other:?}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let width = parsed.first().map_or(0, Vec::len);
        if parsed.iter().any(|r| r.len() != width) {
            return Err(StateError::new("ascii", "rows differ in length"));
        }
        Ok(ImageState::from_pixels(&parsed))
    }

    /// The rendered bitmap of `text`, cursor at the top-left.
    pub fn from_text(text: &str) -> Result<Self, UnsupportedChar> {
        let rows = font::render_text(text)?;
        if rows[0].is_empty() {
            return Ok(ImageState::blank(GLYPH_HEIGHT, 0));
        }
        Ok(ImageState::from_pixels(&rows))
    }

    pub fn height(&self) -> usize {
        usize::from(self.height)
    }

    pub fn width(&self) -> usize {
        usize::from(self.width)
    }

    pub fn cursor(&self) -> (usize, usize) {
        (usize::from(self.cursor.0), usize::from(self.cursor.1))
    }

    pub fn with_cursor(mut self, row: usize, col: usize) -> Self {
        assert!(row < self.height() && col < self.width(), "cursor outside image");
        self.cursor = (row as u16, col as u16);
        self
    }

    pub fn pixel_words(&self) -> &[u64] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        let i = row * self.width() + col;
        self.pixels[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, row: usize, col: usize, on: bool) {
        let i = row * self.width() + col;
        if on {
            self.pixels[i / 64] |= 1 << (i % 64);
        } else {
            self.pixels[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.pixels.iter().map(|w| w.count_ones()).sum()
    }

    pub fn rows(&self) -> Vec<String> {
        (0..self.height())
            .map(|r| (0..self.width()).map(|c| if self.get(r, c) { '1' } else { '0' }).collect())
            .collect()
    }

    fn has_pixels(&self) -> bool {
        self.height > 0 && self.width > 0
    }
}

impl fmt::Display for ImageState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows().iter().enumerate() {
            let marked: String = row
                .chars()
                .enumerate()
                .map(|(c, px)| match (px, (r, c) == self.cursor()) {
                    ('1', true) => '@',
                    ('0', true) => '+',
                    ('1', false) => '#',
                    _ => '.',
                })
                .collect();
            writeln!(f, "{marked}")?;
        }
        Ok(())
    }
}

const PRIMITIVES: [PrimitiveDecl; 10] = [
    PrimitiveDecl::dyadic("up"),
    PrimitiveDecl::dyadic("down"),
    PrimitiveDecl::dyadic("right"),
    PrimitiveDecl::dyadic("left"),
    PrimitiveDecl::dyadic("draw1"),
    PrimitiveDecl::dyadic("draw0"),
    PrimitiveDecl::monadic("at_top"),
    PrimitiveDecl::monadic("at_bottom"),
    PrimitiveDecl::monadic("at_left"),
    PrimitiveDecl::monadic("at_right"),
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AsciiDomain;

impl AsciiDomain {
    fn moved(s: &ImageState, dr: i32, dc: i32) -> Option<ImageState> {
        let r = i32::from(s.cursor.0) + dr;
        let c = i32::from(s.cursor.1) + dc;
        if r < 0 || c < 0 || r >= i32::from(s.height) || c >= i32::from(s.width) {
            return None;
        }
        let mut next = s.clone();
        next.cursor = (r as u16, c as u16);
        Some(next)
    }

    fn drawn(s: &ImageState, on: bool) -> Option<ImageState> {
        if !s.has_pixels() {
            return None;
        }
        let mut next = s.clone();
        let (r, c) = s.cursor();
        next.set(r, c, on);
        Some(next)
    }
}

impl Domain for AsciiDomain {
    type State = ImageState;

    fn name(&self) -> &'static str {
        "ascii"
    }

    fn primitives(&self) -> &[PrimitiveDecl] {
        &PRIMITIVES
    }

    fn test(&self, prim: PrimId, s: &ImageState) -> bool {
        if !s.has_pixels() {
            return false;
        }
        match prim.0 {
            6 => s.cursor.0 == 0,
            7 => s.cursor.0 + 1 == s.height,
            8 => s.cursor.1 == 0,
            9 => s.cursor.1 + 1 == s.width,
            _ => unreachable!("not a monadic ascii primitive: {prim:?}"),
        }
    }

    fn step(&self, prim: PrimId, s: &ImageState) -> Option<ImageState> {
        match prim.0 {
            0 => Self::moved(s, -1, 0),
            1 => Self::moved(s, 1, 0),
            2 => Self::moved(s, 0, 1),
            3 => Self::moved(s, 0, -1),
            4 => Self::drawn(s, true),
            5 => Self::drawn(s, false),
            _ => unreachable!("not a dyadic ascii primitive: {prim:?}"),
        }
    }

    /// Cursor ignored: coverage is pixel equality.
    fn satisfies(&self, output: &ImageState, target: &ImageState) -> bool {
        output.height == target.height && output.width == target.width && output.pixels == target.pixels
    }

    fn encode(&self, s: &ImageState, out: &mut Vec<u8>) {
        for v in [s.height, s.width, s.cursor.0, s.cursor.1] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        for w in &s.pixels {
            out.extend_from_slice(&w.to_le_bytes());
        }
    }

    fn state_size(&self, s: &ImageState) -> usize {
        s.height() * s.width()
    }

    fn domain_loss(&self) -> LossFunction<ImageState> {
        losses::hamming()
    }

    /// Accepts `{"rows": ["0110", ...], "cursor": [row, col]}` (cursor
    /// optional, default top-left) or a bare array of row strings.
    fn parse_state(&self, literal: &Value) -> Result<ImageState, StateError> {
        let err = |m: String| StateError::new("ascii", m);
        let (rows, cursor) = match literal {
            Value::Array(rows) => (rows, None),
            Value::Object(obj) => (
                obj.get("rows")
                    .and_then(Value::as_array)
                    .ok_or_else(|| err("missing `rows` array".into()))?,
                obj.get("cursor"),
            ),
            other => return Err(err(format!("expected an object or array, got {other}"))),
        };
        let rows = rows
            .iter()
            .map(|r| r.as_str().ok_or_else(|| err("rows must be strings".into())))
            .collect::<Result<Vec<_>, _>>()?;
        let img = ImageState::from_rows(&rows)?;
        let (row, col) = match cursor {
            None => (1, 1),
            Some(v) => {
                let pair = v
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .and_then(|a| Some((a[0].as_u64()?, a[1].as_u64()?)))
                    .ok_or_else(|| err("`cursor` must be [row,col]".into()))?;
                (pair.0 as usize, pair.1 as usize)
            }
        };
        if !img.has_pixels() {
            return Ok(img);
        }
        if row < 1 || col < 1 || row > img.height() || col > img.width() {
            return Err(err(format!("cursor [{row},{col}] outside {}x{}", img.height(), img.width())));
        }
        Ok(img.with_cursor(row - 1, col - 1))
    }

    fn state_literal(&self, s: &ImageState) -> Value {
        json!({ "rows": s.rows(), "cursor": [s.cursor.0 + 1, s.cursor.1 + 1] })
    }
}
