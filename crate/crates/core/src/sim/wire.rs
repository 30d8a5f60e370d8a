//! Canonical message and state encoding.
//!
//! Every value writes two things: canonical bytes, whose equality defines
//! message equality and whose lexicographic order fixes inbox order, and a
//! logical bit count used for bandwidth accounting. Canonical bytes are
//! fixed-width big-endian, so byte order agrees with numeric order; the
//! logical count charges what a compact encoding would need:
//!
//! | item       | canonical bytes | logical bits                 |
//! |------------|-----------------|------------------------------|
//! | tag        | 1               | 4                            |
//! | flag       | 1               | 1                            |
//! | node int   | 8               | `w = ceil(log2(n + 1))`      |
//! | uint       | 8               | Elias gamma of `x + 1`       |
//! | fixed uint | 8               | caller-supplied width        |
//! | raw bytes  | as given        | caller-supplied              |

use sha2::{Digest as _, Sha256};

#[derive(Debug, Clone, Default)]
pub struct WireWriter {
    bytes: Vec<u8>,
    bits: u64,
    node_bits: u32,
    n: u64,
}

/// `ceil(log2(x + 1))`: the number of bits needed to write `0..=x`.
pub fn bits_for(x: u64) -> u32 {
    64 - x.leading_zeros()
}

/// `ceil(log2 n)` for `n >= 1`.
pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Elias gamma length of `x + 1`.
pub fn gamma_bits(x: u64) -> u64 {
    let v = x.saturating_add(1);
    2 * (63 - v.leading_zeros()) as u64 + 1
}

impl WireWriter {
    /// Writer for a host graph on `n` nodes.
    pub fn new(n: usize) -> WireWriter {
        WireWriter { bytes: Vec::new(), bits: 0, node_bits: bits_for(n as u64).max(1), n: n as u64 }
    }

    pub(crate) fn reset(&mut self, n: usize) {
        self.bytes.clear();
        self.bits = 0;
        self.node_bits = bits_for(n as u64).max(1);
        self.n = n as u64;
    }

    /// Node count of the host graph.
    pub fn host_n(&self) -> u64 {
        self.n
    }

    pub fn node_bits(&self) -> u32 {
        self.node_bits
    }

    pub fn tag(&mut self, t: u8) {
        debug_assert!(t < 16);
        self.bytes.push(t);
        self.bits += 4;
    }

    pub fn flag(&mut self, b: bool) {
        self.bytes.push(b as u8);
        self.bits += 1;
    }

    /// A value in `0..=n`, such as a degree, identifier or distance.
    pub fn node_int(&mut self, x: u64) {
        self.bytes.extend_from_slice(&x.to_be_bytes());
        self.bits += self.node_bits as u64;
    }

    /// An unbounded non-negative integer, charged at its Elias gamma length.
    pub fn uint(&mut self, x: u64) {
        self.bytes.extend_from_slice(&x.to_be_bytes());
        self.bits += gamma_bits(x);
    }

    /// An integer charged at a fixed width agreed in advance.
    pub fn fixed(&mut self, x: u64, width: u32) {
        self.bytes.extend_from_slice(&x.to_be_bytes());
        self.bits += width as u64;
    }

    pub fn raw(&mut self, b: &[u8], logical_bits: u64) {
        self.bytes.extend_from_slice(b);
        self.bits += logical_bits;
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn bit_len(&self) -> u64 {
        self.bits
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

pub trait Wire {
    fn encode(&self, w: &mut WireWriter);
}

impl<T: Wire + ?Sized> Wire for &T {
    fn encode(&self, w: &mut WireWriter) {
        (**self).encode(w)
    }
}

impl<T: Wire> Wire for std::sync::Arc<T> {
    fn encode(&self, w: &mut WireWriter) {
        (**self).encode(w)
    }
}

impl Wire for () {
    fn encode(&self, _: &mut WireWriter) {}
}

/// Identifiers in `1..=n`.
impl Wire for u32 {
    fn encode(&self, w: &mut WireWriter) {
        w.node_int(*self as u64);
    }
}

/// Canonical bytes and logical bit length of `x` on an `n`-node host.
pub fn encode_value<T: Wire + ?Sized>(x: &T, n: usize) -> (Vec<u8>, u64) {
    let mut w = WireWriter::new(n);
    x.encode(&mut w);
    let bits = w.bit_len();
    (w.into_bytes(), bits)
}

/// Hex SHA-256 of canonical bytes.
pub fn digest_hex<T: Wire + ?Sized>(x: &T, n: usize) -> String {
    hex::encode(Sha256::digest(encode_value(x, n).0))
}
