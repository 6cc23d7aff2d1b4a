//! Binary sieve cache.
//!
//! Layout: the magic bytes `SFL1`, one kind byte (0 = Liouville,
//! 1 = Möbius), `n_max` as a little-endian `u64`, then `n_max` signed
//! bytes holding f(1), …, f(n_max).

use std::io::{Read, Write};

use super::{SieveKind, SieveTable, MAX_N};
use crate::error::{Error, Result};

pub const CACHE_MAGIC: &[u8; 4] = b"SFL1";

pub fn write_cache<W: Write>(table: &SieveTable, mut out: W) -> Result<()> {
    out.write_all(CACHE_MAGIC)?;
    out.write_all(&[kind_byte(table.kind())])?;
    out.write_all(&table.n_max().to_le_bytes())?;
    let raw: Vec<u8> = table.values().iter().map(|&v| v as u8).collect();
    out.write_all(&raw)?;
    out.flush()?;
    Ok(())
}

pub fn read_cache<R: Read>(mut input: R) -> Result<SieveTable> {
    let mut header = [0u8; 13];
    input
        .read_exact(&mut header)
        .map_err(|_| Error::Format("truncated header".into()))?;
    if &header[..4] != CACHE_MAGIC {
        return Err(Error::Format("bad magic bytes".into()));
    }
    let kind = match header[4] {
        0 => SieveKind::Liouville,
        1 => SieveKind::Moebius,
        other => return Err(Error::Format(format!("unknown kind byte {other}"))),
    };
    let n_max = u64::from_le_bytes(header[5..13].try_into().unwrap());
    if n_max == 0 || n_max > MAX_N {
        return Err(Error::Format(format!("n_max {n_max} out of range")));
    }
    let mut raw = vec![0u8; n_max as usize];
    input
        .read_exact(&mut raw)
        .map_err(|_| Error::Format(format!("expected {n_max} value bytes")))?;
    let mut values = Vec::with_capacity(raw.len() + 1);
    values.push(0i8);
    for (i, &b) in raw.iter().enumerate() {
        let v = b as i8;
        let ok = match kind {
            SieveKind::Liouville => v == 1 || v == -1,
            SieveKind::Moebius => (-1..=1).contains(&v),
        };
        if !ok {
            return Err(Error::Format(format!("invalid value {v} at n = {}", i + 1)));
        }
        values.push(v);
    }
    if values[1] != 1 {
        return Err(Error::Format("f(1) must be 1".into()));
    }
    Ok(SieveTable::from_values(kind, values))
}

fn kind_byte(kind: SieveKind) -> u8 {
    match kind {
        SieveKind::Liouville => 0,
        SieveKind::Moebius => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{sieve_liouville, sieve_moebius};

    #[test]
    fn header_layout() {
        let t = sieve_moebius(5).unwrap();
        let mut buf = Vec::new();
        write_cache(&t, &mut buf).unwrap();
        assert_eq!(&buf[..4], b"SFL1");
        assert_eq!(buf[4], 1);
        assert_eq!(&buf[5..13], &5u64.to_le_bytes());
        // μ(1..5) = 1, -1, -1, 0, -1
        assert_eq!(&buf[13..], &[1u8, 0xff, 0xff, 0, 0xff]);
    }

    #[test]
    fn round_trip() {
        let t = sieve_liouville(1000).unwrap();
        let mut buf = Vec::new();
        write_cache(&t, &mut buf).unwrap();
        let back = read_cache(buf.as_slice()).unwrap();
        assert_eq!(back.kind(), SieveKind::Liouville);
        assert_eq!(back.values(), t.values());
        assert_eq!(back.partial_sum(1000).unwrap(), t.partial_sum(1000).unwrap());
    }

    #[test]
    fn rejects_corruption() {
        let t = sieve_liouville(10).unwrap();
        let mut buf = Vec::new();
        write_cache(&t, &mut buf).unwrap();

        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(matches!(read_cache(bad.as_slice()), Err(Error::Format(_))));

        let mut bad = buf.clone();
        bad[13 + 3] = 0; // λ never vanishes
        assert!(matches!(read_cache(bad.as_slice()), Err(Error::Format(_))));

        let truncated = &buf[..buf.len() - 1];
        assert!(matches!(read_cache(truncated), Err(Error::Format(_))));

        let mut bad = buf;
        bad[4] = 7;
        assert!(matches!(read_cache(bad.as_slice()), Err(Error::Format(_))));
    }
}
