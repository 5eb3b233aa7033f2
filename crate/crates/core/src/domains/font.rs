//! A 3x5 bitmap font. Each glyph is drawn in a 4-column cell whose last
//! column is blank spacing.

pub const GLYPH_HEIGHT: usize = 5;
pub const GLYPH_WIDTH: usize = 3;
pub const CELL_WIDTH: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no 3x5 glyph for {0:?}")]
pub struct UnsupportedChar(pub char);

const GLYPHS: &[(char, [&str; GLYPH_HEIGHT])] = &[
    ('A', ["010", "101", "111", "101", "101"]),
    ('B', ["110", "101", "110", "101", "110"]),
    ('C', ["011", "100", "100", "100", "011"]),
    ('D', ["110", "101", "101", "101", "110"]),
    ('E', ["111", "100", "110", "100", "111"]),
    ('F', ["111", "100", "110", "100", "100"]),
    ('G', ["011", "100", "101", "101", "011"]),
    ('H', ["101", "101", "111", "101", "101"]),
    ('I', ["111", "010", "010", "010", "111"]),
    ('J', ["011", "001", "001", "101", "010"]),
    ('K', ["101", "101", "110", "101", "101"]),
    ('L', ["100", "100", "100", "100", "111"]),
    ('M', ["101", "111", "111", "101", "101"]),
    ('N', ["110", "101", "101", "101", "101"]),
    ('O', ["010", "101", "101", "101", "010"]),
    ('P', ["110", "101", "110", "100", "100"]),
    ('Q', ["010", "101", "101", "110", "011"]),
    ('R', ["110", "101", "110", "101", "101"]),
    ('S', ["011", "100", "010", "001", "110"]),
    ('T', ["111", "010", "010", "010", "010"]),
    ('U', ["101", "101", "101", "101", "111"]),
    ('V', ["101", "101", "101", "101", "010"]),
    ('W', ["101", "101", "111", "111", "101"]),
    ('X', ["101", "101", "010", "101", "101"]),
    ('Y', ["101", "101", "010", "010", "010"]),
    ('Z', ["111", "001", "010", "100", "111"]),
    ('0', ["111", "101", "101", "101", "111"]),
    ('1', ["010", "110", "010", "010", "111"]),
    ('2', ["110", "001", "010", "100", "111"]),
    ('3', ["110", "001", "010", "001", "110"]),
    ('4', ["101", "101", "111", "001", "001"]),
    ('5', ["111", "100", "110", "001", "110"]),
    ('6', ["011", "100", "111", "101", "111"]),
    ('7', ["111", "001", "010", "010", "010"]),
    ('8', ["111", "101", "111", "101", "111"]),
    ('9', ["111", "101", "111", "001", "110"]),
    (' ', ["000", "000", "000", "000", "000"]),
];

pub fn supported_chars() -> impl Iterator<Item = char> {
    GLYPHS.iter().map(|(c, _)| *c)
}

/// The glyph for `c` as a 5x4 matrix (three drawn columns plus a blank spacer).
pub fn glyph_bitmap(c: char) -> Result<[[bool; CELL_WIDTH]; GLYPH_HEIGHT], UnsupportedChar> {
    let rows = GLYPHS
        .iter()
        .find(|(g, _)| *g == c.to_ascii_uppercase())
        .map(|(_, rows)| rows)
        .ok_or(UnsupportedChar(c))?;
    let mut out = [[false; CELL_WIDTH]; GLYPH_HEIGHT];
    for (r, row) in rows.iter().enumerate() {
        for (col, px) in row.bytes().enumerate() {
            out[r][col] = px == b'1';
        }
    }
    Ok(out)
}

/// Renders `text` as a 5-row bitmap, one 4-column cell per character.
pub fn render_text(text: &str) -> Result<Vec<Vec<bool>>, UnsupportedChar> {
    let mut rows = vec![Vec::with_capacity(text.len() * CELL_WIDTH); GLYPH_HEIGHT];
    for c in text.chars() {
        let glyph = glyph_bitmap(c)?;
        for (row, cells) in rows.iter_mut().zip(glyph.iter()) {
            row.extend_from_slice(cells);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glyphs_are_well_formed_and_distinct() {
        let mut seen = std::collections::HashSet::new();
        for (c, rows) in GLYPHS {
            assert!(rows.iter().all(|r| r.len() == GLYPH_WIDTH && r.bytes().all(|b| b == b'0' || b == b'1')), "{c}");
            assert!(seen.insert(rows), "duplicate bitmap for {c}");
        }
    }

    #[test]
    fn spacer_column_is_blank() {
        for c in supported_chars() {
            assert!(glyph_bitmap(c).unwrap().iter().all(|row| !row[GLYPH_WIDTH]));
        }
    }

    #[test]
    fn unsupported_char() {
        assert_eq!(glyph_bitmap('#'), Err(UnsupportedChar('#')));
    }

    #[test]
    fn empty_text_has_no_columns() {
        let rows = render_text("").unwrap();
        assert_eq!(rows.len(), GLYPH_HEIGHT);
        assert!(rows.iter().all(Vec::is_empty));
    }

    #[test]
    fn two_copies_of_i() {
        let rows = render_text("II").unwrap();
        let i = glyph_bitmap('I').unwrap();
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(&row[..4], &i[r]);
            assert_eq!(&row[4..], &i[r]);
        }
    }
}
