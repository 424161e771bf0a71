//! Finite matroids over explicit ground sets.
//!
//! A matroid is stored as its full base family, one membership mask per
//! base, sorted and deduplicated. The ground set is capped at 16 elements
//! so every verification can enumerate subsets outright.

use crate::cyclic::is_prime;
use crate::error::{Error, Result};

/// Largest supported ground-set size.
pub const MAX_GROUND: usize = 16;

/// A ground set of `size` elements identified as indices `0..size`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroundSet {
    size: usize,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size > MAX_GROUND {
            return Err(Error::GroundTooLarge(size));
        }
        Ok(Self { size })
    }

    pub fn size(self) -> usize {
        self.size
    }

    pub fn full_mask(self) -> u16 {
        if self.size == 16 {
            u16::MAX
        } else {
            (1u16 << self.size) - 1
        }
    }

    pub fn subset(self, mask: u16) -> SubsetOfE {
        assert_eq!(mask & !self.full_mask(), 0, "mask has bits outside the ground set");
        SubsetOfE { ground: self, mask }
    }

    pub fn subset_from<I: IntoIterator<Item = usize>>(self, indices: I) -> SubsetOfE {
        let mut mask = 0u16;
        for i in indices {
            assert!(i < self.size, "element {i} out of range");
            mask |= 1 << i;
        }
        SubsetOfE { ground: self, mask }
    }

    pub fn empty_subset(self) -> SubsetOfE {
        SubsetOfE { ground: self, mask: 0 }
    }

    pub fn full_subset(self) -> SubsetOfE {
        SubsetOfE { ground: self, mask: self.full_mask() }
    }

    /// All `2^size` subsets in mask order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetOfE> {
        (0..=u32::from(self.full_mask()))
            .map(move |m| SubsetOfE { ground: self, mask: m as u16 })
    }
}

/// A subset of a [`GroundSet`], stored as a membership mask.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubsetOfE {
    ground: GroundSet,
    mask: u16,
}

impl SubsetOfE {
    pub fn ground(self) -> GroundSet {
        self.ground
    }

    pub fn mask(self) -> u16 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < self.ground.size && self.mask >> i & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..self.ground.size).filter(move |i| self.mask >> i & 1 == 1)
    }

    pub fn union(self, other: SubsetOfE) -> SubsetOfE {
        assert_eq!(self.ground, other.ground, "ground mismatch");
        SubsetOfE { ground: self.ground, mask: self.mask | other.mask }
    }

    pub fn intersection(self, other: SubsetOfE) -> SubsetOfE {
        assert_eq!(self.ground, other.ground, "ground mismatch");
        SubsetOfE { ground: self.ground, mask: self.mask & other.mask }
    }

    pub fn minus(self, other: SubsetOfE) -> SubsetOfE {
        assert_eq!(self.ground, other.ground, "ground mismatch");
        SubsetOfE { ground: self.ground, mask: self.mask & !other.mask }
    }

    pub fn is_subset_of(self, other: SubsetOfE) -> bool {
        assert_eq!(self.ground, other.ground, "ground mismatch");
        self.mask & !other.mask == 0
    }
}

/// A matroid given by its explicit base family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matroid {
    ground: GroundSet,
    bases: Vec<u16>,
    rank: usize,
}

/// Result of [`Matroid::contract`]: the contracted matroid plus the map
/// from its dense indices back to the original ground set.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub matroid: Matroid,
    /// `retained[new_index] = old_index`
    pub retained: Vec<usize>,
}

impl Contraction {
    /// Map a mask over the contracted ground set back to the original one.
    pub fn to_original_mask(&self, mask: u16) -> u16 {
        let mut out = 0u16;
        for (new, &old) in self.retained.iter().enumerate() {
            if mask >> new & 1 == 1 {
                out |= 1 << old;
            }
        }
        out
    }

    /// Map a mask over the original ground set (supported on retained
    /// elements) into contracted coordinates.
    pub fn from_original_mask(&self, mask: u16) -> u16 {
        let mut out = 0u16;
        for (new, &old) in self.retained.iter().enumerate() {
            if mask >> old & 1 == 1 {
                out |= 1 << new;
            }
        }
        out
    }
}

impl Matroid {
    /// Validate a base family against axioms (B1)-(B3) and build the matroid.
    /// The first violated axiom is reported, with a witness where one exists.
    pub fn from_bases<I: IntoIterator<Item = SubsetOfE>>(ground: GroundSet, bases: I) -> Result<Self> {
        let mut masks: Vec<u16> = bases
            .into_iter()
            .map(|b| {
                assert_eq!(b.ground(), ground, "ground mismatch");
                b.mask()
            })
            .collect();
        masks.sort_unstable();
        masks.dedup();
        Self::from_base_masks(ground, masks)
    }

    pub fn from_base_masks(ground: GroundSet, mut masks: Vec<u16>) -> Result<Self> {
        masks.sort_unstable();
        masks.dedup();
        if masks.is_empty() {
            return Err(Error::EmptyBaseFamily);
        }
        // B2: no base strictly contains another
        for &b in &masks {
            for &b2 in &masks {
                if b != b2 && b & !b2 == 0 {
                    return Err(Error::BaseContainment { inner: b, outer: b2 });
                }
            }
        }
        // B3: exchange
        for &b in &masks {
            for &b2 in &masks {
                let only_b = b & !b2;
                for x in 0..ground.size() {
                    if only_b >> x & 1 == 0 {
                        continue;
                    }
                    let stripped = b & !(1 << x);
                    let candidates = b2 & !b;
                    let ok = (0..ground.size()).any(|y| {
                        candidates >> y & 1 == 1
                            && masks.binary_search(&(stripped | 1 << y)).is_ok()
                    });
                    if !ok {
                        return Err(Error::ExchangeFailure { base: b, other: b2, element: x });
                    }
                }
            }
        }
        let rank = masks[0].count_ones() as usize;
        // equicardinality follows from B2+B3; assert it outright
        assert!(
            masks.iter().all(|b| b.count_ones() as usize == rank),
            "base family passed exchange validation with unequal cardinalities"
        );
        Ok(Self { ground, bases: masks, rank })
    }

    // Internal constructor for operations whose output is a matroid by
    // construction (contraction, direct sum, uniform).
    fn from_valid_parts(ground: GroundSet, mut bases: Vec<u16>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        debug_assert!(!bases.is_empty());
        let rank = bases[0].count_ones() as usize;
        Self { ground, bases, rank }
    }

    /// The uniform matroid `U_r` on `m` elements: bases are all `r`-subsets.
    pub fn uniform(m: usize, r: usize) -> Result<Self> {
        let ground = GroundSet::new(m)?;
        if r > m {
            return Err(Error::RankOutOfRange { rank: r, size: m });
        }
        let bases: Vec<u16> = (0..=u32::from(ground.full_mask()))
            .map(|mask| mask as u16)
            .filter(|mask| mask.count_ones() as usize == r)
            .collect();
        Ok(Self::from_valid_parts(ground, bases))
    }

    /// The linear matroid of a matrix over GF(p), one ground element per column.
    /// Bases are the maximal linearly independent column sets.
    pub fn from_matrix_gf_p(p: u32, columns: &[Vec<u32>]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let ground = GroundSet::new(columns.len())?;
        let dim = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != dim) {
            return Err(Error::RaggedColumns);
        }
        let reduced: Vec<Vec<u32>> = columns
            .iter()
            .map(|c| c.iter().map(|&v| v % p).collect())
            .collect();
        let full_rank = gf_rank(p, &reduced, ground.full_mask());
        let bases: Vec<u16> = (0..=u32::from(ground.full_mask()))
            .map(|mask| mask as u16)
            .filter(|&mask| {
                mask.count_ones() as usize == full_rank
                    && gf_rank(p, &reduced, mask) == full_rank
            })
            .collect();
        Ok(Self::from_valid_parts(ground, bases))
    }

    /// Direct sum: disjoint tagged union of the ground sets, `self` first,
    /// bases the unions of one base from each part.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let m1 = self.ground.size();
        let ground = GroundSet::new(m1 + other.ground.size())?;
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &b in &self.bases {
            for &c in &other.bases {
                bases.push(b | c << m1);
            }
        }
        Ok(Matroid::from_valid_parts(ground, bases))
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Base masks, sorted ascending.
    pub fn base_masks(&self) -> &[u16] {
        &self.bases
    }

    pub fn bases(&self) -> impl Iterator<Item = SubsetOfE> + '_ {
        self.bases.iter().map(move |&m| self.ground.subset(m))
    }

    pub fn is_base(&self, s: SubsetOfE) -> bool {
        assert_eq!(s.ground(), self.ground, "ground mismatch");
        self.bases.binary_search(&s.mask()).is_ok()
    }

    /// `r(M)`, the common base cardinality.
    pub fn rank_full(&self) -> usize {
        self.rank
    }

    /// `r(A) = max |B ∩ A|` over bases `B`.
    pub fn rank(&self, a: SubsetOfE) -> usize {
        assert_eq!(a.ground(), self.ground, "ground mismatch");
        self.rank_mask(a.mask())
    }

    pub fn rank_mask(&self, mask: u16) -> usize {
        self.bases
            .iter()
            .map(|&b| (b & mask).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// `cl(A)`: all elements whose addition does not raise the rank of `A`.
    pub fn closure(&self, a: SubsetOfE) -> SubsetOfE {
        assert_eq!(a.ground(), self.ground, "ground mismatch");
        let ra = self.rank_mask(a.mask());
        let mut out = a.mask();
        for x in 0..self.ground.size() {
            if self.rank_mask(a.mask() | 1 << x) == ra {
                out |= 1 << x;
            }
        }
        self.ground.subset(out)
    }

    /// Elements of rank 0, i.e. `cl(∅)`.
    pub fn loops(&self) -> SubsetOfE {
        self.closure(self.ground.empty_subset())
    }

    fn independence_table(&self) -> Vec<bool> {
        let mut indep = vec![false; 1 << self.ground.size()];
        for &b in &self.bases {
            // walk all submasks of the base
            let mut sub = b;
            loop {
                indep[sub as usize] = true;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & b;
            }
        }
        indep
    }

    /// All circuits: minimal sets contained in no base.
    pub fn circuits(&self) -> Vec<SubsetOfE> {
        let indep = self.independence_table();
        let mut out = vec![];
        for mask in 1..=u32::from(self.ground.full_mask()) {
            let mask = mask as u16;
            if indep[mask as usize] {
                continue;
            }
            let minimal = (0..self.ground.size())
                .all(|x| mask >> x & 1 == 0 || indep[(mask & !(1 << x)) as usize]);
            if minimal {
                out.push(self.ground.subset(mask));
            }
        }
        out
    }

    /// All hyperplanes: maximal sets of rank `r(M) - 1`.
    pub fn hyperplanes(&self) -> Result<Vec<SubsetOfE>> {
        if self.rank == 0 {
            return Err(Error::ZeroRank);
        }
        let mut out = vec![];
        for h in 0..=u32::from(self.ground.full_mask()) {
            let h = h as u16;
            if self.rank_mask(h) != self.rank - 1 {
                continue;
            }
            let maximal = (0..self.ground.size())
                .all(|x| h >> x & 1 == 1 || self.rank_mask(h | 1 << x) == self.rank);
            if maximal {
                out.push(self.ground.subset(h));
            }
        }
        Ok(out)
    }

    /// `M/A`: bases are `J \ A` for bases `J` with `|J ∩ A| = r(A)`,
    /// re-indexed densely. The index mapping is returned alongside.
    pub fn contract(&self, a: SubsetOfE) -> Contraction {
        assert_eq!(a.ground(), self.ground, "ground mismatch");
        let ra = self.rank_mask(a.mask());
        let retained: Vec<usize> = (0..self.ground.size())
            .filter(|&i| a.mask() >> i & 1 == 0)
            .collect();
        let mut old_to_new = [0usize; MAX_GROUND];
        for (new, &old) in retained.iter().enumerate() {
            old_to_new[old] = new;
        }
        let ground = GroundSet::new(retained.len()).expect("smaller than original");
        let mut bases = vec![];
        for &b in &self.bases {
            if (b & a.mask()).count_ones() as usize != ra {
                continue;
            }
            let mut mask = 0u16;
            let mut rest = b & !a.mask();
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                mask |= 1 << old_to_new[x];
                rest &= rest - 1;
            }
            bases.push(mask);
        }
        Contraction {
            matroid: Matroid::from_valid_parts(ground, bases),
            retained,
        }
    }
}

// Rank of the selected columns over GF(p) by Gaussian elimination.
fn gf_rank(p: u32, columns: &[Vec<u32>], selection: u16) -> usize {
    let dim = columns.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<u64>> = vec![];
    for (i, col) in columns.iter().enumerate() {
        if selection >> i & 1 == 1 {
            rows.push(col.iter().map(|&v| u64::from(v)).collect());
        }
    }
    let p = u64::from(p);
    let mut rank = 0;
    for pivot_col in 0..dim {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][pivot_col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = mod_inverse(rows[rank][pivot_col] % p, p);
        for v in &mut rows[rank] {
            *v = *v % p * inv % p;
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_slot, tail) = tail.split_first_mut().expect("pivot row exists");
        let pivot: &Vec<u64> = pivot_slot;
        for row in head.iter_mut().chain(tail) {
            if !row[pivot_col].is_multiple_of(p) {
                let factor = row[pivot_col] % p;
                for (v, &pv) in row.iter_mut().zip(pivot) {
                    *v = (*v % p + p - factor * pv % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p, p prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}
