//! Bit vectors and incremental Gaussian elimination over GF(2).

use std::fmt;

/// Fixed-length bit vector; bit `i` lives in word `i / 64`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Bits::zeros(len);
        for i in 0..len {
            b.set(i, true);
        }
        b
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bits::zeros(len);
        for i in indices {
            assert!(i < len, "index {i} out of range for {len} bits");
            b.set(i, true);
        }
        b
    }

    pub fn from_bools(bools: &[bool]) -> Self {
        Bits::from_indices(bools.len(), bools.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    /// Parses a `0`/`1` string, character `i` being bit `i`.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let mut b = Bits::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => b.set(i, true),
                _ => return None,
            }
        }
        Some(b)
    }

    pub fn from_u64(len: usize, mask: u64) -> Self {
        assert!(len <= 64);
        let mut b = Bits::zeros(len);
        if len > 0 {
            b.words[0] = if len == 64 { mask } else { mask & ((1u64 << len) - 1) };
        }
        b
    }

    /// Low 64 bits; only meaningful when `len <= 64`.
    pub fn as_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.len, other.len);
        Bits {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn or(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.len, other.len);
        Bits {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn and_not(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.len, other.len);
        Bits {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_subset_of(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    /// Copies `self` into a longer vector starting at `offset`.
    pub fn embed(&self, len: usize, offset: usize) -> Bits {
        Bits::from_indices(len, self.iter_ones().map(|i| i + offset))
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({})", self.to_bit_string())
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Outcome of adding a constraint to an [`Echelon`] system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insert {
    /// The row was independent and increased the rank.
    Independent,
    /// The row was a combination of existing rows with matching right-hand side.
    Redundant,
    /// The row was a combination of existing rows with the opposite right-hand side.
    Contradiction,
}

/// Affine system `M·x = c` kept in reduced row echelon form.
///
/// Each stored row has a distinct pivot column which is cleared from every
/// other row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    cols: usize,
    rows: Vec<(Bits, bool)>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&Bits, bool)> {
        self.rows.iter().map(|(r, c)| (r, *c))
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `row`/`rhs` against the stored rows.
    pub fn reduce(&self, row: &mut Bits, rhs: &mut bool) {
        for ((r, c), &p) in self.rows.iter().zip(&self.pivots) {
            if row.get(p) {
                row.xor_assign(r);
                *rhs ^= *c;
            }
        }
    }

    pub fn insert(&mut self, mut row: Bits, mut rhs: bool) -> Insert {
        assert_eq!(row.len(), self.cols);
        self.reduce(&mut row, &mut rhs);
        let Some(p) = row.first_one() else {
            return if rhs { Insert::Contradiction } else { Insert::Redundant };
        };
        for (r, c) in self.rows.iter_mut() {
            if r.get(p) {
                r.xor_assign(&row);
                *c ^= rhs;
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, (row, rhs));
        Insert::Independent
    }

    /// Whether `row` lies in the row space; if so, the implied right-hand side.
    pub fn implied(&self, row: &Bits) -> Option<bool> {
        let mut r = row.clone();
        let mut c = false;
        self.reduce(&mut r, &mut c);
        r.is_zero().then_some(c)
    }

    /// Whether `x` satisfies every stored constraint.
    pub fn satisfied_by(&self, x: &Bits) -> bool {
        self.rows.iter().all(|(r, c)| r.dot(x) == *c)
    }

    /// A solution with all free variables set to zero.
    pub fn particular_solution(&self) -> Bits {
        let mut x = Bits::zeros(self.cols);
        for ((_, c), &p) in self.rows.iter().zip(&self.pivots) {
            x.set(p, *c);
        }
        x
    }

    /// Basis of the homogeneous solution space, one vector per free column.
    pub fn null_space(&self) -> Vec<Bits> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = Bits::zeros(self.cols);
                v.set(f, true);
                for ((r, _), &p) in self.rows.iter().zip(&self.pivots) {
                    if r.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

/// Rank of a set of vectors.
pub fn rank_of<'a>(vectors: impl IntoIterator<Item = &'a Bits>, cols: usize) -> usize {
    let mut e = Echelon::new(cols);
    for v in vectors {
        e.insert(v.clone(), false);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bit_basics() {
        let b = Bits::from_bit_str("10110").unwrap();
        assert_eq!(b.to_indices(), vec![0, 2, 3]);
        assert_eq!(b.count_ones(), 3);
        assert!(b.dot(&Bits::from_bit_str("10100").unwrap()) == false);
        assert_eq!(b.embed(10, 5).to_indices(), vec![5, 7, 8]);
        assert!(Bits::from_bit_str("10a").is_none());
        let wide = Bits::from_indices(130, [0, 64, 129]);
        assert_eq!(wide.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
    }

    #[test]
    fn contradiction_detected() {
        let mut e = Echelon::new(3);
        assert_eq!(e.insert(Bits::from_bit_str("110").unwrap(), true), Insert::Independent);
        assert_eq!(e.insert(Bits::from_bit_str("011").unwrap(), false), Insert::Independent);
        assert_eq!(e.insert(Bits::from_bit_str("101").unwrap(), true), Insert::Redundant);
        assert_eq!(e.insert(Bits::from_bit_str("101").unwrap(), false), Insert::Contradiction);
        assert_eq!(e.rank(), 2);
    }

    fn arb_system() -> impl Strategy<Value = (usize, Vec<(u64, bool)>)> {
        (1usize..12).prop_flat_map(|n| {
            (Just(n), prop::collection::vec((0u64..(1u64 << n), any::<bool>()), 0..10))
        })
    }

    proptest! {
        #[test]
        fn solutions_match_brute_force((n, rows) in arb_system()) {
            let mut e = Echelon::new(n);
            let mut consistent = true;
            for (r, c) in &rows {
                if e.insert(Bits::from_u64(n, *r), *c) == Insert::Contradiction {
                    consistent = false;
                }
            }
            let brute: Vec<u64> = (0..(1u64 << n))
                .filter(|x| rows.iter().all(|(r, c)| ((r & x).count_ones() & 1 == 1) == *c))
                .collect();
            if !consistent {
                prop_assert!(brute.is_empty());
            } else {
                prop_assert_eq!(brute.len() as u64, 1u64 << (n - e.rank()));
                let x0 = e.particular_solution();
                prop_assert!(e.satisfied_by(&x0));
                let null = e.null_space();
                prop_assert_eq!(null.len(), n - e.rank());
                for v in &null {
                    let y = x0.xor(v);
                    prop_assert!(brute.contains(&y.as_u64()));
                }
            }
        }
    }
}
