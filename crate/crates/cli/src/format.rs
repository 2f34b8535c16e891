//! Factor files. Text: one record per line, `L <byte>` or `R <src> <len>`.
//! Binary: `LZC1`, then per record a tag byte (0 literal + 1 byte, 1
//! reference + LEB128 `src` and `len`).

use lzrp::Factor;

use crate::CliError;

pub const MAGIC: &[u8; 4] = b"LZC1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Binary,
}

pub fn encode(factors: &[Factor], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Text => encode_text(factors),
        Format::Binary => encode_binary(factors),
    }
}

fn literal_byte(sym: u32) -> Result<u8, CliError> {
    u8::try_from(sym).map_err(|_| CliError::Malformed(format!("literal {sym} is not a byte")))
}

pub fn encode_text(factors: &[Factor]) -> Result<Vec<u8>, CliError> {
    let mut out = String::new();
    for f in factors {
        match *f {
            Factor::Literal(c) => out.push_str(&format!("L {}\n", literal_byte(c)?)),
            Factor::Reference { src, len } => out.push_str(&format!("R {src} {len}\n")),
        }
    }
    Ok(out.into_bytes())
}

pub fn encode_binary(factors: &[Factor]) -> Result<Vec<u8>, CliError> {
    let mut out = MAGIC.to_vec();
    for f in factors {
        match *f {
            Factor::Literal(c) => {
                out.push(0);
                out.push(literal_byte(c)?);
            }
            Factor::Reference { src, len } => {
                out.push(1);
                leb128::write::unsigned(&mut out, src as u64).expect("writing to a Vec");
                leb128::write::unsigned(&mut out, len as u64).expect("writing to a Vec");
            }
        }
    }
    Ok(out)
}

/// Reads either format, telling them apart by the magic.
pub fn decode(bytes: &[u8]) -> Result<Vec<Factor>, CliError> {
    match bytes.strip_prefix(MAGIC) {
        Some(body) => decode_binary(body),
        None => decode_text(bytes),
    }
}

fn decode_binary(mut body: &[u8]) -> Result<Vec<Factor>, CliError> {
    let mut out = Vec::new();
    let varint = |b: &mut &[u8], what: &str| -> Result<usize, CliError> {
        let v = leb128::read::unsigned(b).map_err(|e| CliError::Malformed(format!("bad {what} varint: {e}")))?;
        usize::try_from(v).map_err(|_| CliError::Malformed(format!("{what} {v} too large")))
    };
    while let Some((&tag, rest)) = body.split_first() {
        body = rest;
        match tag {
            0 => {
                let (&c, rest) = body
                    .split_first()
                    .ok_or_else(|| CliError::Malformed("truncated literal".into()))?;
                body = rest;
                out.push(Factor::Literal(c as u32));
            }
            1 => {
                let src = varint(&mut body, "source")?;
                let len = varint(&mut body, "length")?;
                out.push(reference(src, len, out.len() + 1)?);
            }
            t => return Err(CliError::Malformed(format!("unknown tag {t} in record {}", out.len() + 1))),
        }
    }
    Ok(out)
}

fn reference(src: usize, len: usize, record: usize) -> Result<Factor, CliError> {
    if src == 0 || len == 0 {
        return Err(CliError::Malformed(format!("record {record}: source and length must be positive")));
    }
    Ok(Factor::Reference { src, len })
}

fn decode_text(bytes: &[u8]) -> Result<Vec<Factor>, CliError> {
    let text = std::str::from_utf8(bytes).map_err(|_| CliError::Malformed("factor file is not ASCII".into()))?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let bad = || CliError::Malformed(format!("line {}: {line:?}", k + 1));
        let mut parts = line.split(' ');
        let f = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("L"), Some(c), None, None) => Factor::Literal(c.parse::<u8>().map_err(|_| bad())? as u32),
            (Some("R"), Some(s), Some(l), None) => {
                reference(s.parse().map_err(|_| bad())?, l.parse().map_err(|_| bad())?, k + 1)?
            }
            _ => return Err(bad()),
        };
        out.push(f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_round_trip() {
        let f = vec![
            Factor::Literal(97),
            Factor::Literal(0),
            Factor::Reference { src: 1, len: 300 },
            Factor::Literal(255),
        ];
        for fmt in [Format::Text, Format::Binary] {
            assert_eq!(decode(&encode(&f, fmt).unwrap()).unwrap(), f);
        }
        assert_eq!(encode_text(&f).unwrap(), b"L 97\nL 0\nR 1 300\nL 255\n");
        assert_eq!(&encode_binary(&f).unwrap()[4..], &[0, 97, 0, 0, 1, 1, 0xac, 0x02, 0, 255]);
    }

    #[test]
    fn malformed_inputs() {
        for bad in [&b"LZC1\x00"[..], b"LZC1\x01\x05", b"LZC1\x07", b"LZC1\x01\x00\x01", b"X 1\n", b"L 256\n", b"R 1\n"] {
            assert!(matches!(decode(bad), Err(CliError::Malformed(_))), "{bad:?}");
        }
        assert_eq!(decode(b"").unwrap(), vec![]);
        assert_eq!(decode(b"LZC1").unwrap(), vec![]);
    }
}
