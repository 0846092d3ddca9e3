//! Byte-level helpers: fixed-width big-endian field encodings, point
//! compression flags, and the one-line armor format for proofs.
//!
//! Compressed points store the x coordinate(s) plus two flags (infinity,
//! y-sign). When the modulus leaves at least two spare bits in the top byte
//! the flags are packed there; otherwise a one-byte prefix carries them.

use crate::algebra::{FieldElement, FieldParams};
use crate::error::Error;

pub const FLAG_INFINITY: u8 = 0x80;
pub const FLAG_Y_SIGN: u8 = 0x40;

#[derive(Clone, Copy, Debug)]
pub struct PointFlags {
    pub infinity: bool,
    pub y_sign: bool,
}

pub fn compressed_point_len(field: &'static FieldParams, coords: usize) -> usize {
    field.byte_len() * coords + if field.has_spare_flag_bits() { 0 } else { 1 }
}

/// Sign convention: a y coordinate (one or more field components, most
/// significant first) is "positive" when its encoding is lexicographically
/// greater than the encoding of its negation.
pub fn y_sign_of(ys: &[FieldElement]) -> bool {
    let enc: Vec<u8> = ys.iter().flat_map(|y| y.to_be_bytes()).collect();
    let neg: Vec<u8> = ys.iter().flat_map(|y| (-*y).to_be_bytes()).collect();
    enc > neg
}

/// Returns `y_smaller` or its negation so that the result has the requested
/// sign bit.
pub fn select_root(y_smaller: &[FieldElement], want_sign: bool) -> Vec<FieldElement> {
    if y_sign_of(y_smaller) == want_sign {
        y_smaller.to_vec()
    } else {
        y_smaller.iter().map(|y| -*y).collect()
    }
}

/// Compresses a point given its x coordinate components; `y = None` encodes
/// the point at infinity (with zeroed coordinates).
pub fn compress_coords(
    field: &'static FieldParams,
    xs: &[FieldElement],
    y: Option<&[FieldElement]>,
) -> Vec<u8> {
    let mut flags = 0u8;
    match y {
        None => flags |= FLAG_INFINITY,
        Some(ys) => {
            if y_sign_of(ys) {
                flags |= FLAG_Y_SIGN;
            }
        }
    }
    let mut body = Vec::with_capacity(field.byte_len() * xs.len());
    for x in xs {
        if y.is_none() {
            body.extend(std::iter::repeat(0u8).take(field.byte_len()));
        } else {
            body.extend(x.to_be_bytes());
        }
    }
    if field.has_spare_flag_bits() {
        body[0] |= flags;
        body
    } else {
        let mut out = Vec::with_capacity(body.len() + 1);
        out.push(flags);
        out.extend(body);
        out
    }
}

pub fn decompress_coords(
    field: &'static FieldParams,
    coords: usize,
    bytes: &[u8],
) -> Result<(Vec<FieldElement>, PointFlags), Error> {
    let expected = compressed_point_len(field, coords);
    if bytes.len() != expected {
        return Err(Error::parse(0, format!("point encoding must be {expected} bytes")));
    }
    let (flags, body) = if field.has_spare_flag_bits() {
        (bytes[0] & (FLAG_INFINITY | FLAG_Y_SIGN), bytes)
    } else {
        (bytes[0], &bytes[1..])
    };
    let flags = PointFlags {
        infinity: flags & FLAG_INFINITY != 0,
        y_sign: flags & FLAG_Y_SIGN != 0,
    };
    let w = field.byte_len();
    let mut xs = Vec::with_capacity(coords);
    for i in 0..coords {
        let mut chunk = body[i * w..(i + 1) * w].to_vec();
        if i == 0 && field.has_spare_flag_bits() {
            chunk[0] &= !(FLAG_INFINITY | FLAG_Y_SIGN);
        }
        if flags.infinity && chunk.iter().any(|&b| b != 0) {
            return Err(Error::parse(i * w, "infinity must have zero coordinates"));
        }
        xs.push(
            FieldElement::from_be_bytes(field, &chunk)
                .map_err(|_| Error::parse(i * w, "coordinate out of range"))?,
        );
    }
    Ok((xs, flags))
}

/// One-line armor: `poa1:` + base64 of the raw bytes.
pub fn armor(kind: &str, bytes: &[u8]) -> String {
    use base64::Engine as _;
    format!(
        "poa1:{}:{}",
        kind,
        base64::engine::general_purpose::STANDARD.encode(bytes)
    )
}

pub fn dearmor(kind: &str, line: &str) -> Result<Vec<u8>, Error> {
    use base64::Engine as _;
    let line = line.trim();
    let prefix = format!("poa1:{kind}:");
    let rest = line
        .strip_prefix(&prefix)
        .ok_or_else(|| Error::parse(0, format!("expected `{prefix}` armor header")))?;
    base64::engine::general_purpose::STANDARD
        .decode(rest)
        .map_err(|e| Error::parse(prefix.len(), format!("bad base64: {e}")))
}

/// Little write/read cursors for the versioned binary formats.
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new(magic: &[u8; 8]) -> Self {
        Writer { buf: magic.to_vec() }
    }

    pub fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn u32(&mut self, v: u32) {
        self.buf.extend(v.to_be_bytes());
    }

    pub fn u64(&mut self, v: u64) {
        self.buf.extend(v.to_be_bytes());
    }

    pub fn bytes(&mut self, v: &[u8]) {
        self.buf.extend(v);
    }

    pub fn fe(&mut self, v: &FieldElement) {
        self.buf.extend(v.to_be_bytes());
    }

    pub fn finish(self) -> Vec<u8> {
        self.buf
    }
}

pub struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(data: &'a [u8], magic: &[u8; 8]) -> Result<Self, Error> {
        let mut r = Reader { data, pos: 0 };
        let found = r.take(8)?;
        if found != magic {
            return Err(Error::parse(0, format!("bad magic, expected {:?}", magic)));
        }
        Ok(r)
    }

    pub fn offset(&self) -> usize {
        self.pos
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8], Error> {
        if self.pos + n > self.data.len() {
            return Err(Error::parse(self.pos, "unexpected end of input"));
        }
        let out = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    pub fn u8(&mut self) -> Result<u8, Error> {
        Ok(self.take(1)?[0])
    }

    pub fn u32(&mut self) -> Result<u32, Error> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes(b.try_into().unwrap()))
    }

    pub fn u64(&mut self) -> Result<u64, Error> {
        let b = self.take(8)?;
        Ok(u64::from_be_bytes(b.try_into().unwrap()))
    }

    pub fn fe(&mut self, field: &'static FieldParams) -> Result<FieldElement, Error> {
        let at = self.pos;
        let b = self.take(field.byte_len())?;
        FieldElement::from_be_bytes(field, b)
            .map_err(|_| Error::parse(at, "field element out of range"))
    }

    pub fn finish(&self) -> Result<(), Error> {
        if self.pos != self.data.len() {
            return Err(Error::parse(self.pos, "trailing bytes"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn armor_round_trip() {
        let data = vec![1u8, 2, 3, 250];
        let line = armor("proof", &data);
        assert!(line.starts_with("poa1:proof:"));
        assert_eq!(dearmor("proof", &line).unwrap(), data);
        assert!(dearmor("bundle", &line).is_err());
    }

    #[test]
    fn reader_reports_offsets() {
        let mut w = Writer::new(b"TESTMAGC");
        w.u32(7);
        let data = w.finish();
        let mut r = Reader::new(&data, b"TESTMAGC").unwrap();
        assert_eq!(r.u32().unwrap(), 7);
        let err = r.u8().unwrap_err();
        match err {
            Error::Parse { offset, .. } => assert_eq!(offset, 12),
            other => panic!("unexpected {other:?}"),
        }
    }
}
