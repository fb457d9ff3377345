//! Bit-stream encodings for the command line: one ASCII character per
//! bit, hex nibbles, or packed bytes. Hex and packed fill nibbles/bytes
//! most-significant-bit first and zero-pad the tail.

use std::io::{self, Write};
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputEncoding {
    /// One character '0' or '1' per bit.
    #[default]
    Ascii01,
    /// 4 bits per hex digit, MSB first within a nibble, zero-padded tail.
    Hex,
    /// Raw bytes, MSB first, zero-padded tail.
    Packed,
}

impl FromStr for OutputEncoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii01" => Ok(OutputEncoding::Ascii01),
            "hex" => Ok(OutputEncoding::Hex),
            "packed" => Ok(OutputEncoding::Packed),
            other => Err(Error::InvalidArguments(format!(
                "unknown encoding {other:?} (expected ascii01, hex, or packed)"
            ))),
        }
    }
}

/// Incremental bit encoder: bits go in one at a time, encoded bytes go
/// out to the writer as soon as they are complete, so arbitrarily long
/// streams use constant memory.
pub struct BitEncoder<W: Write> {
    writer: W,
    mode: OutputEncoding,
    pending: u8,
    pending_len: u8,
}

impl<W: Write> BitEncoder<W> {
    pub fn new(writer: W, mode: OutputEncoding) -> Self {
        BitEncoder {
            writer,
            mode,
            pending: 0,
            pending_len: 0,
        }
    }

    pub fn push(&mut self, bit: u8) -> io::Result<()> {
        debug_assert!(bit <= 1);
        match self.mode {
            OutputEncoding::Ascii01 => self.writer.write_all(&[b'0' + bit]),
            OutputEncoding::Hex => {
                self.pending = self.pending << 1 | bit;
                self.pending_len += 1;
                if self.pending_len == 4 {
                    let digit = char::from_digit(self.pending as u32, 16).unwrap();
                    self.pending = 0;
                    self.pending_len = 0;
                    self.writer.write_all(&[digit as u8])
                } else {
                    Ok(())
                }
            }
            OutputEncoding::Packed => {
                self.pending = self.pending << 1 | bit;
                self.pending_len += 1;
                if self.pending_len == 8 {
                    let byte = self.pending;
                    self.pending = 0;
                    self.pending_len = 0;
                    self.writer.write_all(&[byte])
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Zero-pads any partial nibble/byte, flushes it, and hands the
    /// writer back.
    pub fn finish(mut self) -> io::Result<W> {
        if self.pending_len > 0 {
            let width = match self.mode {
                OutputEncoding::Hex => 4,
                OutputEncoding::Packed => 8,
                OutputEncoding::Ascii01 => unreachable!("ascii01 never buffers"),
            };
            let padded = self.pending << (width - self.pending_len);
            match self.mode {
                OutputEncoding::Hex => {
                    let digit = char::from_digit(padded as u32, 16).unwrap();
                    self.writer.write_all(&[digit as u8])?;
                }
                _ => self.writer.write_all(&[padded])?,
            }
        }
        self.writer.flush()?;
        Ok(self.writer)
    }
}

/// Encodes a whole bit slice at once.
pub fn encode_bits(bits: &[u8], mode: OutputEncoding) -> Vec<u8> {
    let mut enc = BitEncoder::new(Vec::new(), mode);
    for &b in bits {
        enc.push(b).expect("writes to Vec cannot fail");
    }
    enc.finish().expect("writes to Vec cannot fail")
}

/// Decodes '0'/'1' text to bits, skipping ASCII whitespace. Reports the
/// byte offset of the first undecodable byte.
pub fn decode_ascii01(bytes: &[u8]) -> Result<Vec<u8>> {
    let mut bits = Vec::with_capacity(bytes.len());
    for (offset, &byte) in bytes.iter().enumerate() {
        match byte {
            b'0' => bits.push(0),
            b'1' => bits.push(1),
            b' ' | b'\t' | b'\r' | b'\n' => {}
            _ => return Err(Error::Decode { offset, byte }),
        }
    }
    Ok(bits)
}

/// Decodes hex text to bits (4 per digit, MSB first), skipping ASCII
/// whitespace.
pub fn decode_hex(bytes: &[u8]) -> Result<Vec<u8>> {
    let mut bits = Vec::with_capacity(bytes.len() * 4);
    for (offset, &byte) in bytes.iter().enumerate() {
        match byte {
            b' ' | b'\t' | b'\r' | b'\n' => continue,
            _ => {
                let v = (byte as char)
                    .to_digit(16)
                    .ok_or(Error::Decode { offset, byte })? as u8;
                for shift in (0..4).rev() {
                    bits.push(v >> shift & 1);
                }
            }
        }
    }
    Ok(bits)
}

/// Unpacks raw bytes to bits, MSB first.
pub fn decode_packed(bytes: &[u8]) -> Vec<u8> {
    let mut bits = Vec::with_capacity(bytes.len() * 8);
    for &byte in bytes {
        for shift in (0..8).rev() {
            bits.push(byte >> shift & 1);
        }
    }
    bits
}

/// Decodes with the named encoding.
pub fn decode_bits(bytes: &[u8], mode: OutputEncoding) -> Result<Vec<u8>> {
    match mode {
        OutputEncoding::Ascii01 => decode_ascii01(bytes),
        OutputEncoding::Hex => decode_hex(bytes),
        OutputEncoding::Packed => Ok(decode_packed(bytes)),
    }
}
