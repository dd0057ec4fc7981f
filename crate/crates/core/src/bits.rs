//! Minimal fixed-width bitset used by the neighborhood scanners.

#[derive(Clone)]
pub(crate) struct Bits {
    pub(crate) words: Vec<u64>,
}

impl Bits {
    pub(crate) fn new(n: usize) -> Self {
        Bits {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }
}

/// Popcount of one set.
pub(crate) fn count(a: &Bits) -> usize {
    a.words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Popcount of the union of two sets (must share a width). Allocation-free
/// fast path for the pair scans, which dominate the neighborhood counters.
pub(crate) fn or_count2(a: &Bits, b: &Bits) -> usize {
    a.words
        .iter()
        .zip(&b.words)
        .map(|(x, y)| (x | y).count_ones() as usize)
        .sum()
}

/// Popcount of the union of the given sets (all must share a width).
pub(crate) fn or_count(sets: &[&Bits]) -> usize {
    let words = sets[0].words.len();
    let mut total = 0usize;
    for i in 0..words {
        let mut w = 0u64;
        for s in sets {
            w |= s.words[i];
        }
        total += w.count_ones() as usize;
    }
    total
}
