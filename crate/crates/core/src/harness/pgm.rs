//! PGM (P2 ASCII / P5 binary) reading and writing, 8-bit only.

use crate::error::{Error, Result};
use crate::grid::Image;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PgmEncoding {
    Ascii,
    #[default]
    Binary,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PgmOptions {
    /// Map grey level 0 to 1 instead of rejecting the image.
    pub remap_zero: bool,
}

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Pgm(msg.into()))
}

/// Cursor over header tokens, skipping whitespace and `#` comments.
struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_space();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let tok = match self.token() {
            Some(t) => t,
            None => return err(format!("missing {what}")),
        };
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or_else(|| err(format!("invalid {what}")), Ok)
    }
}

/// Parses a P2 or P5 graymap with `maxval ≤ 255`.
pub fn read_pgm(bytes: &[u8], options: PgmOptions) -> Result<Image> {
    let mut hdr = Header { bytes, pos: 0 };
    let binary = match hdr.token() {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => return err("expected P2 or P5 magic number"),
    };
    let width = hdr.number("width")?;
    let height = hdr.number("height")?;
    let maxval = hdr.number("maxval")?;
    if maxval == 0 || maxval > 255 {
        return err(format!("maxval {maxval} not in 1..=255"));
    }
    let n = width
        .checked_mul(height)
        .filter(|&n| n > 0)
        .map_or_else(|| err(format!("bad size {width}x{height}")), Ok)?;

    let mut raw: Vec<usize> = Vec::with_capacity(n);
    if binary {
        // Exactly one whitespace byte separates maxval from the raster.
        match bytes.get(hdr.pos) {
            Some(b) if b.is_ascii_whitespace() => {}
            _ => return err("missing whitespace after maxval"),
        }
        let data = &bytes[hdr.pos + 1..];
        if data.len() < n {
            return err(format!("raster has {} bytes, expected {n}", data.len()));
        }
        if data.len() > n {
            return err("trailing bytes after raster");
        }
        raw.extend(data.iter().map(|&b| usize::from(b)));
    } else {
        for i in 0..n {
            raw.push(hdr.number(&format!("pixel {i}"))?);
        }
        if hdr.token().is_some() {
            return err("trailing data after raster");
        }
    }

    let mut values = Vec::with_capacity(n);
    for (i, v) in raw.into_iter().enumerate() {
        if v > maxval {
            return err(format!("pixel {i} value {v} exceeds maxval {maxval}"));
        }
        let v = match v {
            0 if options.remap_zero => 1,
            0 => {
                return err(format!(
                    "pixel {i} has grey level 0 (use the zero remap option)"
                ))
            }
            v => v as u8,
        };
        values.push(v);
    }
    Image::new(width, height, values)
}

/// Encodes an image with `maxval = 255`.
pub fn write_pgm(image: &Image, encoding: PgmEncoding) -> Vec<u8> {
    let (w, h) = (image.width(), image.height());
    let magic = match encoding {
        PgmEncoding::Ascii => "P2",
        PgmEncoding::Binary => "P5",
    };
    let mut out = format!("{magic}\n{w} {h}\n255\n").into_bytes();
    match encoding {
        PgmEncoding::Binary => out.extend_from_slice(image.values()),
        PgmEncoding::Ascii => {
            for row in image.values().chunks(w) {
                let line: Vec<String> = row.iter().map(u8::to_string).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
    }
    out
}
