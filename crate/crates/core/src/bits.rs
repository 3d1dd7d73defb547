//! Point sets as `u64` bitmasks (the ground set has 60 points).

/// Iterate the set bits of `mask` in ascending order.
pub fn iter(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// Sorted ids of the set bits.
pub fn ids(mask: u64) -> Vec<usize> {
    iter(mask).collect()
}

pub fn from_ids<I: IntoIterator<Item = usize>>(ids: I) -> u64 {
    ids.into_iter().fold(0u64, |m, i| m | (1u64 << i))
}

pub fn contains(mask: u64, i: usize) -> bool {
    mask & (1u64 << i) != 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let m = from_ids([0, 5, 59]);
        assert_eq!(ids(m), vec![0, 5, 59]);
        assert!(contains(m, 5) && !contains(m, 6));
        assert_eq!(m.count_ones(), 3);
    }
}
