//! Dense bit vector used for truth tables and ANF coefficient tables.

/// Fixed-length bit vector backed by 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DenseBits {
    len: u64,
    words: Vec<u64>,
}

impl DenseBits {
    pub fn zeros(len: u64) -> Self {
        let nwords = len.div_ceil(64) as usize;
        DenseBits {
            len,
            words: vec![0; nwords],
        }
    }

    #[inline]
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, idx: u64) -> bool {
        debug_assert!(idx < self.len);
        (self.words[(idx >> 6) as usize] >> (idx & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, idx: u64, value: bool) {
        debug_assert!(idx < self.len);
        let w = &mut self.words[(idx >> 6) as usize];
        if value {
            *w |= 1 << (idx & 63);
        } else {
            *w &= !(1 << (idx & 63));
        }
    }

    #[inline]
    pub fn flip(&mut self, idx: u64) {
        self.words[(idx >> 6) as usize] ^= 1 << (idx & 63);
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Indices of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = (wi as u64) << 6;
            BitIter { word: w }.map(move |b| base + b)
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

struct BitIter {
    word: u64,
}

impl Iterator for BitIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.word == 0 {
            return None;
        }
        let b = self.word.trailing_zeros() as u64;
        self.word &= self.word - 1;
        Some(b)
    }
}
