//! Fixed-length bit table backed by 64-bit words.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitTable {
    len: usize,
    words: Vec<u64>,
}

impl BitTable {
    pub fn zeros(len: usize) -> Self {
        BitTable {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut t = BitTable {
            len,
            words: vec![u64::MAX; len.div_ceil(64)],
        };
        t.clear_tail();
        t
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let iter = bits.into_iter();
        let mut words = Vec::with_capacity(iter.size_hint().0.div_ceil(64));
        let (mut len, mut cur) = (0usize, 0u64);
        for b in iter {
            cur |= (b as u64) << (len & 63);
            len += 1;
            if len & 63 == 0 {
                words.push(cur);
                cur = 0;
            }
        }
        if len & 63 != 0 {
            words.push(cur);
        }
        BitTable { len, words }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1 << (i & 63);
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of set bits in increasing order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitTable) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn and_assign(&mut self, other: &BitTable) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    /// `self &= !other`
    pub fn and_not_assign(&mut self, other: &BitTable) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn not_assign(&mut self) {
        for w in &mut self.words {
            *w = !*w;
        }
        self.clear_tail();
    }

    /// Parity of the bits in `[start, start + count)`.
    #[inline]
    pub fn range_parity(&self, start: usize, count: usize) -> bool {
        if count < 64 && (start & 63) + count <= 64 {
            let v = (self.words[start >> 6] >> (start & 63)) & ((1u64 << count) - 1);
            return v.count_ones() & 1 == 1;
        }
        let mut acc = 0u32;
        let mut i = start;
        let end = start + count;
        while i < end {
            let off = i & 63;
            let take = (64 - off).min(end - i);
            let mask = if take == 64 {
                u64::MAX
            } else {
                ((1u64 << take) - 1) << off
            };
            acc ^= (self.words[i >> 6] & mask).count_ones() & 1;
            i += take;
        }
        acc == 1
    }

    /// Copies the aligned block of `len` bits at `src` in `from` to `dst` in
    /// `self`. `len` must be a power of two and both offsets multiples of it.
    #[inline]
    pub(crate) fn copy_block(&mut self, dst: usize, from: &BitTable, src: usize, len: usize) {
        debug_assert!(len.is_power_of_two() && src.is_multiple_of(len) && dst.is_multiple_of(len));
        if len == 64 {
            self.words[dst >> 6] = from.words[src >> 6];
        } else if len > 64 {
            let (d, s, n) = (dst >> 6, src >> 6, len >> 6);
            self.words[d..d + n].copy_from_slice(&from.words[s..s + n]);
        } else {
            let mask = (1u64 << len) - 1;
            let v = (from.words[src >> 6] >> (src & 63)) & mask;
            let w = &mut self.words[dst >> 6];
            *w = (*w & !(mask << (dst & 63))) | (v << (dst & 63));
        }
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl fmt::Debug for BitTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitTable[")?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_tail_is_clean() {
        let t = BitTable::ones(70);
        assert_eq!(t.count_ones(), 70);
        let mut z = BitTable::zeros(70);
        z.not_assign();
        assert_eq!(z, t);
    }

    #[test]
    fn range_parity_crosses_words() {
        let t = BitTable::from_bools((0..200).map(|i| i % 3 == 0));
        for start in [0, 5, 60, 63, 64, 127] {
            for count in [0, 1, 7, 64, 65, 70] {
                let naive = (start..start + count).filter(|i| i % 3 == 0).count() % 2 == 1;
                assert_eq!(t.range_parity(start, count), naive, "{start} {count}");
            }
        }
    }

    #[test]
    fn ones_iter_lists_set_bits() {
        let t = BitTable::from_bools((0..130).map(|i| i == 3 || i == 64 || i == 129));
        assert_eq!(t.ones_iter().collect::<Vec<_>>(), vec![3, 64, 129]);
    }
}
