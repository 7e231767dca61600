//! Field persistence.
//!
//! Binary layout, all little-endian:
//!
//! | offset | size | content                                   |
//! |--------|------|-------------------------------------------|
//! | 0      | 8    | magic `TWFIELD1`                          |
//! | 8      | 4    | dimension `N` (u32)                       |
//! | 12     | 4    | points per axis `n` (u32)                 |
//! | 16     | 8    | half width `L` (f64)                      |
//! | 24     | 4    | discretization tag (0 spectral, 1 FD)     |
//! | 28     | 4    | reserved, zero                            |
//! | 32     | 8·nᴺ | values (f64), row-major                   |

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use super::{Discretization, Field, Grid, GridSpec};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"TWFIELD1";
pub const HEADER_LEN: usize = 32;

pub fn encode_field(field: &Field) -> Vec<u8> {
    let spec = field.grid().spec();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * field.values().len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(spec.dimension as u32).to_le_bytes());
    out.extend_from_slice(&(spec.points_per_axis as u32).to_le_bytes());
    out.extend_from_slice(&spec.half_width.to_le_bytes());
    out.extend_from_slice(&spec.discretization.tag().to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    for v in field.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

/// Decode a buffer into its grid spec and raw values.
pub fn decode_field(bytes: &[u8]) -> Result<(GridSpec, Vec<f64>)> {
    if bytes.len() < HEADER_LEN || &bytes[..8] != MAGIC {
        return Err(Error::Input("not a field file (bad magic or short header)".into()));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let dimension = u32_at(8) as usize;
    let points = u32_at(12) as usize;
    let half_width = f64::from_le_bytes(bytes[16..24].try_into().unwrap());
    let tag = u32_at(24);
    let discretization = Discretization::from_tag(tag)
        .ok_or_else(|| Error::Input(format!("unknown discretization tag {tag}")))?;
    let spec = GridSpec::new(dimension, half_width, points, discretization);
    spec.validate()
        .map_err(|e| Error::Input(format!("invalid field header: {e}")))?;
    let payload = &bytes[HEADER_LEN..];
    if payload.len() != 8 * spec.node_count() {
        return Err(Error::Input(format!(
            "payload holds {} bytes, header implies {}",
            payload.len(),
            8 * spec.node_count()
        )));
    }
    let values = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok((spec, values))
}

pub fn write_field(path: impl AsRef<Path>, field: &Field) -> Result<()> {
    fs::write(path, encode_field(field))?;
    Ok(())
}

pub fn read_field(path: impl AsRef<Path>) -> Result<(GridSpec, Vec<f64>)> {
    let path = path.as_ref();
    let bytes = fs::read(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    decode_field(&bytes)
}

/// Read a field and bind it to `grid`, which must match the file header.
pub fn read_field_on(path: impl AsRef<Path>, grid: &Arc<Grid>) -> Result<Field> {
    let path = path.as_ref();
    let (spec, values) = read_field(path)?;
    if &spec != grid.spec() {
        return Err(Error::Input(format!(
            "{}: field grid {:?} does not match {:?}",
            path.display(),
            spec,
            grid.spec()
        )));
    }
    Field::new(grid.clone(), values)
}

/// CSV with one row per node: coordinates then value.
pub fn write_field_csv<W: Write>(mut out: W, field: &Field) -> Result<()> {
    let grid = field.grid();
    let dim = grid.dimension();
    let names = ["x", "y", "z"];
    writeln!(out, "{},value", names[..dim].join(","))?;
    for (i, v) in field.values().iter().enumerate() {
        let x = grid.position(i);
        for c in &x[..dim] {
            write!(out, "{c},")?;
        }
        writeln!(out, "{v:e}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn header_layout() {
        let g = GridSpec::new(2, 3.5, 8, Discretization::FdDirichlet).build().unwrap();
        let f = Field::constant(g, 1.5);
        let bytes = encode_field(&f);
        assert_eq!(bytes.len(), 32 + 8 * 64);
        assert_eq!(&bytes[..8], b"TWFIELD1");
        assert_eq!(u32::from_le_bytes(bytes[8..12].try_into().unwrap()), 2);
        assert_eq!(u32::from_le_bytes(bytes[12..16].try_into().unwrap()), 8);
        assert_eq!(f64::from_le_bytes(bytes[16..24].try_into().unwrap()), 3.5);
        assert_eq!(u32::from_le_bytes(bytes[24..28].try_into().unwrap()), 1);
        assert_eq!(f64::from_le_bytes(bytes[32..40].try_into().unwrap()), 1.5);
    }

    #[test]
    fn rejects_truncated_and_foreign_data() {
        let g = GridSpec::new(1, 1.0, 8, Discretization::SpectralPeriodic).build().unwrap();
        let bytes = encode_field(&Field::zeros(g));
        assert!(decode_field(&bytes[..bytes.len() - 1]).is_err());
        assert!(decode_field(b"hello").is_err());
        let mut bad_tag = bytes.clone();
        bad_tag[24] = 9;
        assert!(decode_field(&bad_tag).is_err());
    }

    #[test]
    fn csv_has_one_row_per_node() {
        let g = GridSpec::new(2, 1.0, 8, Discretization::FdDirichlet).build().unwrap();
        let mut buf = Vec::new();
        write_field_csv(&mut buf, &Field::constant(g, 2.0)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,y,value"));
        assert_eq!(lines.count(), 64);
    }

    proptest! {
        #[test]
        fn binary_round_trip(values in proptest::collection::vec(-1e6f64..1e6, 64), l in 0.1f64..20.0) {
            let g = GridSpec::new(2, l, 8, Discretization::SpectralPeriodic).build().unwrap();
            let f = Field::new(g.clone(), values).unwrap();
            let (spec, back) = decode_field(&encode_field(&f)).unwrap();
            prop_assert_eq!(&spec, g.spec());
            prop_assert_eq!(back.as_slice(), f.values());
        }
    }
}
