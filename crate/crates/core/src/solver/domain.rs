//! Multiplicity domains as 3-bit sets over {0, 1, 2}.

pub type Domain = u8;

pub const ZERO: Domain = 0b001;
pub const ONE: Domain = 0b010;
pub const TWO: Domain = 0b100;
pub const FULL: Domain = 0b111;
pub const POSITIVE: Domain = ONE | TWO;

#[inline]
pub fn single(v: u8) -> Domain {
    1 << v
}

#[inline]
pub fn contains(d: Domain, v: u8) -> bool {
    d & (1 << v) != 0
}

#[inline]
pub fn min(d: Domain) -> u8 {
    d.trailing_zeros() as u8
}

#[inline]
pub fn max(d: Domain) -> u8 {
    7 - d.leading_zeros() as u8
}

#[inline]
pub fn is_fixed(d: Domain) -> bool {
    d.count_ones() == 1
}

/// Values `v` with `lo <= v <= hi`, clipped to {0, 1, 2}.
#[inline]
pub fn range(lo: i32, hi: i32) -> Domain {
    (0..=2)
        .filter(|&v| lo <= v && v <= hi)
        .fold(0, |acc, v| acc | (1 << v))
}

pub fn values(d: Domain) -> impl DoubleEndedIterator<Item = u8> {
    (0..=2u8).filter(move |&v| contains(d, v))
}
