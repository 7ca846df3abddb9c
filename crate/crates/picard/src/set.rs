//! Word-packed membership sets over `[0, g^2]` and the shift-OR sumset kernel.

const WORD_BITS: usize = 64;

/// Number of words needed to cover the value range `[0, dim^2]`.
fn words_for(dim: u64) -> usize {
    let bits = dim * dim + 1;
    (bits as usize).div_ceil(WORD_BITS)
}

pub(crate) fn test_bit(words: &[u64], x: u64) -> bool {
    let i = x as usize;
    let w = i / WORD_BITS;
    w < words.len() && (words[w] >> (i % WORD_BITS)) & 1 != 0
}

pub(crate) fn set_bit(words: &mut [u64], x: u64) {
    let i = x as usize;
    words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
}

/// `dst |= src << shift`, in bits. `dst` must be long enough to hold every
/// set bit of the shifted source; bits that would land past the end of `dst`
/// must not exist in `src` (guaranteed by the callers' dimension arithmetic).
pub(crate) fn or_shifted(dst: &mut [u64], src: &[u64], shift: u64) {
    let q = (shift as usize) / WORD_BITS;
    let r = (shift as usize) % WORD_BITS;
    let n = src.len().min(dst.len().saturating_sub(q));
    if r == 0 {
        for i in 0..n {
            dst[q + i] |= src[i];
        }
    } else {
        let s = (WORD_BITS - r) as u32;
        let mut carry = 0u64;
        for i in 0..n {
            dst[q + i] |= (src[i] << r) | carry;
            carry = src[i] >> s;
        }
        if carry != 0 {
            debug_assert!(q + n < dst.len(), "shifted bits past end of destination");
            dst[q + n] |= carry;
        }
    }
    // Any src words beyond the destination must be zero.
    debug_assert!(src.iter().skip(n).all(|&w| w == 0));
}

/// A finite set of attainable Picard numbers for a fixed dimension, stored as
/// a word-packed membership array over `[0, dim^2]`. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct PicardSet {
    dim: u64,
    words: Box<[u64]>,
}

impl PicardSet {
    /// Builds a set for dimension `dim` from explicit members.
    ///
    /// Panics if a member exceeds `dim^2`.
    pub fn from_members<I: IntoIterator<Item = u64>>(dim: u64, members: I) -> Self {
        let mut words = vec![0u64; words_for(dim)];
        for x in members {
            assert!(x <= dim * dim, "member {x} out of range for dimension {dim}");
            set_bit(&mut words, x);
        }
        Self { dim, words: words.into_boxed_slice() }
    }

    /// Internal constructor from raw words already sized for `dim`.
    pub(crate) fn from_words(dim: u64, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(dim));
        debug_assert!({
            let spare = words.len() * WORD_BITS - (dim * dim + 1) as usize;
            spare == 0 || words.last().unwrap() >> (WORD_BITS - spare) == 0
        });
        Self { dim, words: words.into_boxed_slice() }
    }

    pub(crate) fn zero_words(dim: u64) -> Vec<u64> {
        vec![0u64; words_for(dim)]
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// The abelian-variety dimension this set is attached to.
    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn contains(&self, x: u64) -> bool {
        x <= self.dim * self.dim && test_bit(&self.words, x)
    }

    /// Number of members.
    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Members<'_> {
        Members { words: &self.words, word: 0, bits: self.words.first().copied().unwrap_or(0) }
    }

    pub fn max_value(&self) -> Option<u64> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some((i * WORD_BITS) as u64 + 63 - u64::from(w.leading_zeros()));
            }
        }
        None
    }

    pub fn min_value(&self) -> Option<u64> {
        self.iter().next()
    }

    /// Sumset `{x + y : x in self, y in other}`; dimensions add.
    ///
    /// Implemented as an OR of word-shifted copies of the larger set, one per
    /// member of the smaller set.
    pub fn sumset(&self, other: &PicardSet) -> PicardSet {
        let dim = self.dim + other.dim;
        let mut words = Self::zero_words(dim);
        let (driver, shifted) =
            if self.len() <= other.len() { (self, other) } else { (other, self) };
        for x in driver.iter() {
            or_shifted(&mut words, &shifted.words, x);
        }
        PicardSet::from_words(dim, words)
    }

    /// Maximal intervals of `[1, dim^2]` absent from the set, ascending.
    pub fn gaps(&self) -> Vec<GapInterval> {
        let top = self.dim * self.dim;
        let mut out = Vec::new();
        let mut prev = 0u64; // boundary below 1
        for x in self.iter().filter(|&x| x >= 1).chain(std::iter::once(top + 1)) {
            if x > prev + 1 {
                out.push(GapInterval { lo: prev + 1, hi: x - 1 });
            }
            prev = x;
        }
        out
    }
}

impl std::fmt::Debug for PicardSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PicardSet(dim={}, {{", self.dim)?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
            if i > 40 {
                write!(f, ",..")?;
                break;
            }
        }
        write!(f, "}})")
    }
}

pub struct Members<'a> {
    words: &'a [u64],
    word: usize,
    bits: u64,
}

impl Iterator for Members<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.bits == 0 {
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.bits = self.words[self.word];
        }
        let tz = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some((self.word * WORD_BITS) as u64 + u64::from(tz))
    }
}

/// A maximal interval of integers absent from an ambient realizable set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GapInterval {
    pub lo: u64,
    pub hi: u64,
}
