//! Sized binary dump of dense operator blocks, for reusing an assembled
//! boundary operator across material sweeps.
//!
//! Layout: magic `HBIC`, then `u32` rows and `u32` cols, then the entries
//! row by row as complex128 (real, imaginary) pairs. All fields are
//! little-endian.

use crate::dense::DMat;
use crate::error::DumpError;
use crate::scalar::{Cplx, Real};
use std::io::{Read, Write};

const MAGIC: [u8; 4] = *b"HBIC";

/// Write a dense block to `w` in the sized binary layout.
pub fn write_hbic<T: Real>(w: &mut impl Write, mat: &DMat<T>) -> Result<(), DumpError> {
    let rows = u32::try_from(mat.nrows()).map_err(|_| DumpError::TooLarge(mat.nrows()))?;
    let cols = u32::try_from(mat.ncols()).map_err(|_| DumpError::TooLarge(mat.ncols()))?;
    w.write_all(&MAGIC)?;
    w.write_all(&rows.to_le_bytes())?;
    w.write_all(&cols.to_le_bytes())?;
    let mut buf = Vec::with_capacity(mat.ncols() * 16);
    for i in 0..mat.nrows() {
        buf.clear();
        for v in mat.row(i) {
            buf.extend_from_slice(&v.re.to_f64().unwrap_or(f64::NAN).to_le_bytes());
            buf.extend_from_slice(&v.im.to_f64().unwrap_or(f64::NAN).to_le_bytes());
        }
        w.write_all(&buf)?;
    }
    Ok(())
}

/// Read a dense block written by [`write_hbic`]. The reader must end
/// exactly at the last entry.
pub fn read_hbic(r: &mut impl Read) -> Result<DMat<f64>, DumpError> {
    let mut head = [0u8; 12];
    r.read_exact(&mut head)?;
    if head[0..4] != MAGIC {
        return Err(DumpError::BadMagic(head[0..4].try_into().unwrap()));
    }
    let rows = u32::from_le_bytes(head[4..8].try_into().unwrap()) as usize;
    let cols = u32::from_le_bytes(head[8..12].try_into().unwrap()) as usize;
    let mut mat = DMat::zeros(rows, cols);
    let mut buf = vec![0u8; cols * 16];
    for i in 0..rows {
        r.read_exact(&mut buf)?;
        for j in 0..cols {
            let re = f64::from_le_bytes(buf[16 * j..16 * j + 8].try_into().unwrap());
            let im = f64::from_le_bytes(buf[16 * j + 8..16 * j + 16].try_into().unwrap());
            mat.set(i, j, Cplx::new(re, im));
        }
    }
    let mut tail = [0u8; 1];
    match r.read(&mut tail)? {
        0 => Ok(mat),
        _ => Err(DumpError::TrailingBytes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DMat<f64> {
        let mut m = DMat::zeros(3, 2);
        for i in 0..3 {
            for j in 0..2 {
                m.set(i, j, Cplx::new(i as f64 + 0.25, -(j as f64) - 0.5));
            }
        }
        m
    }

    #[test]
    fn roundtrip_preserves_every_entry() {
        let m = sample();
        let mut bytes = Vec::new();
        write_hbic(&mut bytes, &m).unwrap();
        assert_eq!(bytes.len(), 12 + 3 * 2 * 16);
        let back = read_hbic(&mut bytes.as_slice()).unwrap();
        assert_eq!((back.nrows(), back.ncols()), (3, 2));
        for i in 0..3 {
            for j in 0..2 {
                assert_eq!(back.get(i, j), m.get(i, j));
            }
        }
    }

    #[test]
    fn header_is_magic_then_le_dimensions() {
        let mut bytes = Vec::new();
        write_hbic(&mut bytes, &sample()).unwrap();
        assert_eq!(&bytes[0..4], b"HBIC");
        assert_eq!(bytes[4..8], 3u32.to_le_bytes());
        assert_eq!(bytes[8..12], 2u32.to_le_bytes());
        // First entry (row 0, col 0) follows immediately, little-endian.
        assert_eq!(bytes[12..20], 0.25f64.to_le_bytes());
        assert_eq!(bytes[20..28], (-0.5f64).to_le_bytes());
    }

    #[test]
    fn corrupt_streams_are_rejected() {
        let mut bytes = Vec::new();
        write_hbic(&mut bytes, &sample()).unwrap();
        let mut wrong = bytes.clone();
        wrong[0] = b'X';
        assert!(matches!(
            read_hbic(&mut wrong.as_slice()),
            Err(DumpError::BadMagic(_))
        ));
        let truncated = &bytes[..bytes.len() - 8];
        assert!(matches!(
            read_hbic(&mut &truncated[..]),
            Err(DumpError::Io(_))
        ));
        bytes.push(0);
        assert!(matches!(
            read_hbic(&mut bytes.as_slice()),
            Err(DumpError::TrailingBytes)
        ));
    }
}
