//! Little-endian encoding of tuples over `0..base`: coordinate 0 is the least
//! significant digit.

pub(crate) fn encode(tuple: &[usize], base: usize) -> usize {
    tuple.iter().rev().fold(0, |acc, &d| acc * base + d)
}

pub(crate) fn decode(mut id: usize, base: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = id % base;
            id /= base;
            d
        })
        .collect()
}

/// `base^len`, or `None` on overflow.
pub(crate) fn count(base: usize, len: usize) -> Option<usize> {
    u32::try_from(len).ok().and_then(|l| base.checked_pow(l))
}
