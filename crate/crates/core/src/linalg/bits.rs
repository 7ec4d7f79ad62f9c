use std::fmt;

/// An `n`-bit string; bit 1 (the first qubit) is the most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    n: usize,
    value: usize,
}

impl BitString {
    pub fn new(n: usize, value: usize) -> Option<Self> {
        if n < usize::BITS as usize && value < (1usize << n) {
            Some(Self { n, value })
        } else {
            None
        }
    }

    pub fn zero(n: usize) -> Self {
        Self { n, value: 0 }
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn value(self) -> usize {
        self.value
    }

    /// Every string of length `n`, in increasing order.
    pub fn all(n: usize) -> impl Iterator<Item = BitString> {
        (0..1usize << n).map(move |value| BitString { n, value })
    }

    pub fn xor(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            value: self.value ^ other.value,
        }
    }

    /// Σ_k a_k b_k mod 2.
    pub fn dot(self, other: Self) -> u32 {
        dot(self.value, other.value)
    }

    pub fn weight(self) -> u32 {
        self.value.count_ones()
    }

    /// Bit `k` counted from the most significant end, 0-based.
    pub fn bit(self, k: usize) -> bool {
        (self.value >> (self.n - 1 - k)) & 1 == 1
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            return Ok(());
        }
        write!(f, "{:0width$b}", self.value, width = self.n)
    }
}

/// Parity of the bitwise AND.
pub(crate) fn dot(a: usize, b: usize) -> u32 {
    (a & b).count_ones() & 1
}

/// (−1)^{a·b}
pub(crate) fn sign(a: usize, b: usize) -> f64 {
    if dot(a, b) == 0 {
        1.0
    } else {
        -1.0
    }
}
