//! Binary dump of a representation, little-endian throughout:
//!
//! ```text
//! magic "SPMR" | version u32 | degree u64 | generator count u64
//! | tag kind u8 (0 Sym, 1 Alt, 2 Young) | tag length u64 | tag entries u64*
//! | label length u64 | label utf-8 | omega flag u8
//! | generator payloads (then omega), each degree * ceil(degree/64) u64
//! ```

use std::io::{Read, Write};

use super::matrix::{words_for, BitMatrix};
use super::rep::{GroupTag, Rep, RepLabel, Sign};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"SPMR";
const VERSION: u32 = 1;

fn put_u64(w: &mut impl Write, x: u64) -> Result<()> {
    w.write_all(&x.to_le_bytes())?;
    Ok(())
}

fn get_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn get_u8(r: &mut impl Read) -> Result<u8> {
    let mut b = [0u8; 1];
    r.read_exact(&mut b)?;
    Ok(b[0])
}

pub fn write_rep(w: &mut impl Write, rep: &Rep) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    put_u64(w, rep.degree() as u64)?;
    put_u64(w, rep.gens().len() as u64)?;
    let (kind, entries): (u8, Vec<usize>) = match rep.tag() {
        GroupTag::Sym(n) => (0, vec![*n]),
        GroupTag::Alt(n) => (1, vec![*n]),
        GroupTag::Young(c) => (2, c.clone()),
    };
    w.write_all(&[kind])?;
    put_u64(w, entries.len() as u64)?;
    for e in entries {
        put_u64(w, e as u64)?;
    }
    let label = rep.label().map(|l| l.to_string()).unwrap_or_default();
    put_u64(w, label.len() as u64)?;
    w.write_all(label.as_bytes())?;
    w.write_all(&[rep.omega().is_some() as u8])?;
    for m in rep.gens().iter().chain(rep.omega()) {
        for &x in m.payload() {
            put_u64(w, x)?;
        }
    }
    Ok(())
}

fn parse_label(s: &str) -> Result<Option<RepLabel>> {
    if s.is_empty() {
        return Ok(None);
    }
    let (body, sign) = match s.as_bytes()[s.len() - 1] {
        b'+' => (&s[..s.len() - 1], Some(Sign::Plus)),
        b'-' => (&s[..s.len() - 1], Some(Sign::Minus)),
        _ => (s, None),
    };
    let partition = body.parse().map_err(|_| Error::Format(format!("bad label {s:?}")))?;
    Ok(Some(RepLabel { partition, sign }))
}

pub fn read_rep(r: &mut impl Read) -> Result<Rep> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let mut v = [0u8; 4];
    r.read_exact(&mut v)?;
    if u32::from_le_bytes(v) != VERSION {
        return Err(Error::Format("unsupported version".into()));
    }
    let degree = get_u64(r)? as usize;
    let ngens = get_u64(r)? as usize;
    let kind = get_u8(r)?;
    let len = get_u64(r)? as usize;
    if len > 1 << 16 {
        return Err(Error::Format("tag too long".into()));
    }
    let entries = (0..len).map(|_| get_u64(r).map(|x| x as usize)).collect::<Result<Vec<_>>>()?;
    let tag = match (kind, entries.as_slice()) {
        (0, [n]) => GroupTag::Sym(*n),
        (1, [n]) => GroupTag::Alt(*n),
        (2, c) => GroupTag::Young(c.to_vec()),
        _ => return Err(Error::Format("bad group tag".into())),
    };
    let label_len = get_u64(r)? as usize;
    if label_len > 1 << 16 {
        return Err(Error::Format("label too long".into()));
    }
    let mut label = vec![0u8; label_len];
    r.read_exact(&mut label)?;
    let label = String::from_utf8(label).map_err(|_| Error::Format("label is not utf-8".into()))?;
    let has_omega = get_u8(r)? == 1;
    let words = degree * words_for(degree);
    let read_matrix = |r: &mut dyn Read| -> Result<BitMatrix> {
        let mut data = Vec::with_capacity(words);
        let mut b = [0u8; 8];
        for _ in 0..words {
            r.read_exact(&mut b)?;
            data.push(u64::from_le_bytes(b));
        }
        BitMatrix::from_payload(degree, degree, data)
    };
    let gens = (0..ngens).map(|_| read_matrix(r)).collect::<Result<Vec<_>>>()?;
    let rep = if has_omega {
        Rep::with_omega(tag, gens, read_matrix(r)?)?
    } else {
        Rep::new(tag, degree, gens)?
    };
    Ok(match parse_label(&label)? {
        Some(l) => rep.with_label(l),
        None => rep,
    })
}

pub fn save(path: &std::path::Path, rep: &Rep) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_rep(&mut f, rep)?;
    f.flush()?;
    Ok(())
}

pub fn load(path: &std::path::Path) -> Result<Rep> {
    read_rep(&mut std::io::BufReader::new(std::fs::File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut g = BitMatrix::identity(3);
        g.set(0, 1, true);
        let rep = Rep::new(GroupTag::Young(vec![2]), 3, vec![g])
            .unwrap()
            .with_label(RepLabel { partition: "2,1".parse().unwrap(), sign: Some(Sign::Minus) });
        let mut buf = Vec::new();
        write_rep(&mut buf, &rep).unwrap();
        let back = read_rep(&mut buf.as_slice()).unwrap();
        assert_eq!(back, rep);
        buf[0] = b'X';
        assert!(matches!(read_rep(&mut buf.as_slice()), Err(Error::Format(_))));
    }
}
