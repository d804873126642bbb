//! Fixed-width bit-vector primitives for the hot filling paths.
//!
//! Free columns and occupied diagonals compress to one bit each, which turns
//! per-row freedom tests into word operations: the cells of row `i` that lie
//! on an occupied left diagonal are exactly the occupancy vector shifted
//! right by `n - i`, and likewise by `i` for right diagonals. Masking a whole
//! row then costs a few instructions per 64 columns instead of two memory
//! probes per column.

/// Words needed to hold `bits` bits.
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

#[inline]
pub(crate) fn clear_bit(words: &mut [u64], i: usize) {
    words[i / 64] &= !(1 << (i % 64));
}

#[inline]
pub(crate) fn test_bit(words: &[u64], i: usize) -> bool {
    words[i / 64] & (1 << (i % 64)) != 0
}

/// A bit vector viewed through a constant signed shift: bit `x` of the view
/// is bit `x + shift` of the source, and out-of-range reads are zero.
///
/// The shift decomposes into word and bit parts once, so fetching a word of
/// the view costs two loads and a funnel shift.
pub(crate) struct Shifted<'a> {
    src: &'a [u64],
    word_shift: isize,
    bit_shift: u32,
}

impl<'a> Shifted<'a> {
    pub(crate) fn new(src: &'a [u64], shift: isize) -> Self {
        Self {
            src,
            word_shift: shift.div_euclid(64),
            bit_shift: shift.rem_euclid(64) as u32,
        }
    }

    /// Word `w` of the shifted view.
    #[inline]
    pub(crate) fn word(&self, w: usize) -> u64 {
        // A negative index wraps to a huge one and reads as zero.
        let fetch = |k: isize| *self.src.get(k as usize).unwrap_or(&0);
        let lo = fetch(w as isize + self.word_shift);
        match self.bit_shift {
            0 => lo,
            bs => (lo >> bs) | (fetch(w as isize + self.word_shift + 1) << (64 - bs)),
        }
    }
}

/// Copy of `src` with the bit order reversed around `top`: bit `v` of the
/// result is bit `top - v` of `src`, reading as zero wherever `top - v`
/// falls outside the source (including `v > top`).
///
/// Reversing every word and the word order yields the full-width mirror;
/// the result is that mirror shifted so source bit `top` lands at position
/// zero.
pub(crate) fn reversed(src: &[u64], top: usize) -> Vec<u64> {
    let mirror: Vec<u64> = src.iter().rev().map(|w| w.reverse_bits()).collect();
    let excess = src.len() as isize * 64 - 1 - top as isize;
    let view = Shifted::new(&mirror, excess);
    (0..src.len()).map(|w| view.word(w)).collect()
}

/// Splits `src` by bit parity: bit `u` of the first result is bit `2u` of
/// `src`, bit `u` of the second is bit `2u + 1`.
pub(crate) fn parity_split(src: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let out_len = words_for(src.len() * 32);
    let mut even = vec![0u64; out_len];
    let mut odd = vec![0u64; out_len];
    for (w, &word) in src.iter().enumerate() {
        let lo = compress_even(word) as u64;
        let hi = compress_even(word >> 1) as u64;
        even[w / 2] |= lo << (32 * (w % 2));
        odd[w / 2] |= hi << (32 * (w % 2));
    }
    (even, odd)
}

/// Packs the even-position bits of `word` into the low 32 bits.
#[inline]
fn compress_even(mut word: u64) -> u32 {
    word &= 0x5555_5555_5555_5555;
    word = (word | (word >> 1)) & 0x3333_3333_3333_3333;
    word = (word | (word >> 2)) & 0x0f0f_0f0f_0f0f_0f0f;
    word = (word | (word >> 4)) & 0x00ff_00ff_00ff_00ff;
    word = (word | (word >> 8)) & 0x0000_ffff_0000_ffff;
    word = (word | (word >> 16)) & 0x0000_0000_ffff_ffff;
    word as u32
}

/// Set-bit count of `cols & !(left >> left_shift) & !(right >> right_shift)`.
///
/// With `cols` holding the open columns and the shifts chosen per row, this
/// is the number of free cells in that row. Surviving the first occupancy
/// factor is rare once the board is crowded, so the second is only fetched
/// when something did.
pub(crate) fn masked_count(
    cols: &[u64],
    left: &[u64],
    left_shift: usize,
    right: &[u64],
    right_shift: usize,
) -> usize {
    let left = Shifted::new(left, left_shift as isize);
    let right = Shifted::new(right, right_shift as isize);
    cols.iter()
        .enumerate()
        .map(|(w, &open)| match open {
            0 => 0,
            _ => match open & !left.word(w) {
                0 => 0,
                hits => (hits & !right.word(w)).count_ones() as usize,
            },
        })
        .sum()
}

/// Position of the `nth` set bit of the [`masked_count`] mask, stopping the
/// walk as soon as it is found.
///
/// # Panics
///
/// Panics when the mask has fewer than `nth + 1` bits set.
pub(crate) fn masked_select(
    cols: &[u64],
    left: &[u64],
    left_shift: usize,
    right: &[u64],
    right_shift: usize,
    nth: usize,
) -> usize {
    let left = Shifted::new(left, left_shift as isize);
    let right = Shifted::new(right, right_shift as isize);
    let mut remaining = nth;
    for (w, &open) in cols.iter().enumerate() {
        if open == 0 {
            continue;
        }
        let word = match open & !left.word(w) {
            0 => continue,
            hits => hits & !right.word(w),
        };
        let pop = word.count_ones() as usize;
        if remaining < pop {
            return w * 64 + select_in_word(word, remaining);
        }
        remaining -= pop;
    }
    panic!("masked_select past the last set bit");
}

/// Total set bits.
#[inline]
pub(crate) fn count_ones(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Ascending positions of the set bits.
pub(crate) fn iter_set(words: &[u64]) -> SetBits<'_> {
    SetBits {
        words,
        w: 0,
        cur: words.first().copied().unwrap_or(0),
    }
}

pub(crate) struct SetBits<'a> {
    words: &'a [u64],
    w: usize,
    cur: u64,
}

impl Iterator for SetBits<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.cur == 0 {
            self.w += 1;
            if self.w >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.w];
        }
        let bit = self.cur.trailing_zeros() as usize;
        self.cur &= self.cur - 1;
        Some(self.w * 64 + bit)
    }
}

/// Position of the `nth` set bit within one word.
#[inline]
fn select_in_word(mut word: u64, nth: usize) -> usize {
    for _ in 0..nth {
        word &= word - 1;
    }
    word.trailing_zeros() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits_of(words: &[u64]) -> Vec<usize> {
        (0..words.len() * 64)
            .filter(|&i| test_bit(words, i))
            .collect()
    }

    #[test]
    fn set_clear_round_trip() {
        let mut w = vec![0u64; 3];
        for i in [0, 1, 63, 64, 100, 191] {
            assert!(!test_bit(&w, i));
            set_bit(&mut w, i);
            assert!(test_bit(&w, i));
        }
        clear_bit(&mut w, 64);
        assert!(!test_bit(&w, 64));
        assert_eq!(bits_of(&w), vec![0, 1, 63, 100, 191]);
    }

    #[test]
    fn shifted_view_matches_direct_indexing_for_signed_shifts() {
        let src: Vec<u64> = (0..3).map(|w| 0x94d0_49bb_1331_11ebu64.rotate_left(w * 29)).collect();
        for shift in [-200_isize, -129, -64, -63, -1, 0, 1, 63, 64, 65, 150, 250] {
            let view = Shifted::new(&src, shift);
            for w in 0..5usize {
                let mut expect = 0u64;
                for x in 0..64_isize {
                    let idx = w as isize * 64 + x + shift;
                    if idx >= 0 && (idx as usize) < 192 && test_bit(&src, idx as usize) {
                        expect |= 1 << x;
                    }
                }
                assert_eq!(view.word(w), expect, "shift {shift} word {w}");
            }
        }
    }

    #[test]
    fn masked_count_and_select_match_a_bitwise_reference() {
        // Dense pseudo-random patterns, all shift alignments.
        let cols: Vec<u64> = (0..4).map(|w| 0x9e37_79b9_7f4a_7c15u64.rotate_left(w * 11)).collect();
        let left: Vec<u64> = (0..5).map(|w| 0xc2b2_ae3d_27d4_eb4fu64.rotate_left(w * 23)).collect();
        let right: Vec<u64> = (0..5).map(|w| 0x1656_67b1_9e37_79f9u64.rotate_left(w * 7)).collect();
        for shift_l in [0, 1, 63, 64, 65, 130, 250, 400] {
            for shift_r in [0, 17, 64, 128, 311] {
                let free: Vec<usize> = (0..256)
                    .filter(|&j| {
                        let l = shift_l + j < 320 && test_bit(&left, shift_l + j);
                        let r = shift_r + j < 320 && test_bit(&right, shift_r + j);
                        test_bit(&cols, j) && !l && !r
                    })
                    .collect();
                assert_eq!(
                    masked_count(&cols, &left, shift_l, &right, shift_r),
                    free.len(),
                    "shifts {shift_l}/{shift_r}"
                );
                for (nth, &expect) in free.iter().enumerate() {
                    assert_eq!(
                        masked_select(&cols, &left, shift_l, &right, shift_r, nth),
                        expect,
                        "shifts {shift_l}/{shift_r} nth {nth}"
                    );
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "past the last set bit")]
    fn masked_select_rejects_an_out_of_range_rank() {
        masked_select(&[0b101], &[0], 0, &[0], 0, 2);
    }

    #[test]
    fn reversed_mirrors_every_bit_around_top() {
        let src: Vec<u64> = (0..3).map(|w| 0xa5a5_1234_dead_beefu64.rotate_left(w * 19)).collect();
        for top in [0, 1, 63, 64, 100, 127, 191, 192, 200] {
            let rev = reversed(&src, top);
            assert_eq!(rev.len(), src.len());
            for v in 0..192 {
                let expect = v <= top && top - v < 192 && test_bit(&src, top - v);
                assert_eq!(test_bit(&rev, v), expect, "top {top} bit {v}");
            }
        }
    }

    #[test]
    fn parity_split_separates_even_and_odd_bits() {
        let src: Vec<u64> = (0..3).map(|w| 0x0123_4567_89ab_cdefu64.rotate_left(w * 31)).collect();
        let (even, odd) = parity_split(&src);
        for u in 0..96 {
            assert_eq!(test_bit(&even, u), test_bit(&src, 2 * u), "even bit {u}");
            assert_eq!(test_bit(&odd, u), test_bit(&src, 2 * u + 1), "odd bit {u}");
        }
    }

    #[test]
    fn iter_set_visits_every_bit_ascending() {
        assert_eq!(iter_set(&[]).count(), 0);
        assert_eq!(iter_set(&[0, 0]).count(), 0);
        let mut w = vec![0u64; 3];
        let positions = [0, 5, 63, 64, 129, 191];
        for &p in &positions {
            set_bit(&mut w, p);
        }
        assert_eq!(iter_set(&w).collect::<Vec<_>>(), positions);
        assert_eq!(count_ones(&w), positions.len());
        assert_eq!(count_ones(&[]), 0);
    }
}
