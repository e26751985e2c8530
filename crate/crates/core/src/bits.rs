//! Word-slice bitsets used for neighbor rows and candidate sets.

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[inline]
pub fn set(row: &mut [u64], i: usize) {
    row[i / 64] |= 1u64 << (i % 64);
}

#[inline]
pub fn clear(row: &mut [u64], i: usize) {
    row[i / 64] &= !(1u64 << (i % 64));
}

#[inline]
pub fn test(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
pub fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn is_empty(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

#[inline]
pub fn and_assign(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d &= *s;
    }
}

/// Sets the first `n` bits and clears the rest.
pub fn fill(row: &mut [u64], n: usize) {
    for (w, word) in row.iter_mut().enumerate() {
        let lo = w * 64;
        *word = if n >= lo + 64 {
            u64::MAX
        } else if n > lo {
            (1u64 << (n - lo)) - 1
        } else {
            0
        };
    }
}

/// Iterates the indices of set bits in increasing order.
pub fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            }
        })
    })
}

pub fn to_vec(row: &[u64]) -> Vec<usize> {
    ones(row).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fill_and_iterate() {
        let mut row = vec![0u64; 2];
        fill(&mut row, 70);
        assert_eq!(count(&row), 70);
        clear(&mut row, 3);
        clear(&mut row, 65);
        let v = to_vec(&row);
        assert_eq!(v.len(), 68);
        assert!(!v.contains(&3) && !v.contains(&65));
        assert!(test(&row, 69) && !test(&row, 70));
    }
}
