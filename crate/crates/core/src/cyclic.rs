//! Arithmetic and set algebra in finite cyclic groups `Z_n`.
//!
//! Subsets are stored as one-word membership masks, which caps the modulus
//! at 64. Sumsets and difference sets reduce to rotate-and-or on the mask.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus for the mask representation.
pub const MAX_MODULUS: u32 = 64;

/// The cyclic group `Z_n` of integers modulo `n`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclicGroup {
    modulus: u32,
}

impl CyclicGroup {
    pub fn new(modulus: u32) -> Result<Self> {
        if modulus == 0 || modulus > MAX_MODULUS {
            return Err(Error::BadModulus(modulus));
        }
        Ok(Self { modulus })
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    /// Canonical element for an arbitrary integer value.
    pub fn element(self, value: u64) -> GroupElement {
        GroupElement {
            group: self,
            value: (value % u64::from(self.modulus)) as u32,
        }
    }

    pub fn zero(self) -> GroupElement {
        self.element(0)
    }

    pub fn empty_set(self) -> GroupSet {
        GroupSet { group: self, mask: 0 }
    }

    pub fn full_set(self) -> GroupSet {
        GroupSet {
            group: self,
            mask: self.full_mask(),
        }
    }

    fn full_mask(self) -> u64 {
        if self.modulus == 64 {
            u64::MAX
        } else {
            (1u64 << self.modulus) - 1
        }
    }

    pub fn set_from<I: IntoIterator<Item = u64>>(self, values: I) -> GroupSet {
        let mut mask = 0u64;
        for v in values {
            mask |= 1u64 << (v % u64::from(self.modulus));
        }
        GroupSet { group: self, mask }
    }

    /// Set with the given membership mask; bits at or above the modulus
    /// must be clear.
    pub fn set_from_mask(self, mask: u64) -> GroupSet {
        assert_eq!(mask & !self.full_mask(), 0, "mask has bits outside the group");
        GroupSet { group: self, mask }
    }

    pub fn elements(self) -> impl Iterator<Item = GroupElement> {
        (0..self.modulus).map(move |v| GroupElement { group: self, value: v })
    }

    pub fn has_prime_order(self) -> bool {
        is_prime(self.modulus)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A canonical residue of some [`CyclicGroup`].
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    group: CyclicGroup,
    value: u32,
}

impl GroupElement {
    pub fn group(self) -> CyclicGroup {
        self.group
    }

    pub fn value(self) -> u32 {
        self.value
    }

    /// Whether this element generates the whole group, i.e. gcd(value, n) = 1.
    /// In `Z_1` the only element 0 generates.
    pub fn is_generator(self) -> bool {
        gcd(self.value, self.group.modulus) == 1
    }
}

impl std::ops::Add for GroupElement {
    type Output = GroupElement;

    fn add(self, other: GroupElement) -> GroupElement {
        assert_eq!(self.group, other.group, "group mismatch");
        self.group.element(u64::from(self.value) + u64::from(other.value))
    }
}

impl std::ops::Sub for GroupElement {
    type Output = GroupElement;

    fn sub(self, other: GroupElement) -> GroupElement {
        assert_eq!(self.group, other.group, "group mismatch");
        let n = u64::from(self.group.modulus);
        self.group.element(u64::from(self.value) + n - u64::from(other.value))
    }
}

impl std::ops::Neg for GroupElement {
    type Output = GroupElement;

    fn neg(self) -> GroupElement {
        let n = u64::from(self.group.modulus);
        self.group.element(n - u64::from(self.value))
    }
}

/// A subset of a [`CyclicGroup`], stored as a membership mask.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct GroupSet {
    group: CyclicGroup,
    mask: u64,
}

impl fmt::Debug for GroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSet(mod {}, {{", self.group.modulus)?;
        let mut first = true;
        for e in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", e.value())?;
            first = false;
        }
        write!(f, "}})")
    }
}

impl GroupSet {
    pub fn group(self) -> CyclicGroup {
        self.group
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn len(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, g: GroupElement) -> bool {
        assert_eq!(self.group, g.group, "group mismatch");
        self.mask >> g.value & 1 == 1
    }

    pub fn contains_value(self, v: u32) -> bool {
        v < self.group.modulus && self.mask >> v & 1 == 1
    }

    pub fn with(self, g: GroupElement) -> GroupSet {
        assert_eq!(self.group, g.group, "group mismatch");
        GroupSet {
            group: self.group,
            mask: self.mask | 1u64 << g.value,
        }
    }

    pub fn iter(self) -> impl Iterator<Item = GroupElement> {
        let group = self.group;
        (0..group.modulus)
            .filter(move |v| self.mask >> v & 1 == 1)
            .map(move |v| GroupElement { group, value: v })
    }

    pub fn values(self) -> impl Iterator<Item = u32> {
        self.iter().map(|e| e.value())
    }

    pub fn union(self, other: GroupSet) -> GroupSet {
        assert_eq!(self.group, other.group, "group mismatch");
        GroupSet {
            group: self.group,
            mask: self.mask | other.mask,
        }
    }

    pub fn intersection(self, other: GroupSet) -> GroupSet {
        assert_eq!(self.group, other.group, "group mismatch");
        GroupSet {
            group: self.group,
            mask: self.mask & other.mask,
        }
    }

    pub fn complement(self) -> GroupSet {
        GroupSet {
            group: self.group,
            mask: !self.mask & self.group.full_mask(),
        }
    }

    pub fn is_subset_of(self, other: GroupSet) -> bool {
        assert_eq!(self.group, other.group, "group mismatch");
        self.mask & !other.mask == 0
    }

    // Rotate the mask left by k positions within n bits, i.e. add k to
    // every member.
    fn rotated(self, k: u32) -> u64 {
        let n = self.group.modulus;
        let wide = u128::from(self.mask) << (k % n);
        ((wide | wide >> n) as u64) & self.group.full_mask()
    }

    /// The Minkowski sum `{a + b : a in self, b in other}`.
    pub fn sumset(self, other: GroupSet) -> GroupSet {
        assert_eq!(self.group, other.group, "group mismatch");
        if self.is_empty() || other.is_empty() {
            return self.group.empty_set();
        }
        let mut mask = 0u64;
        for a in self.values() {
            mask |= other.rotated(a);
        }
        GroupSet { group: self.group, mask }
    }

    /// `{-a : a in self}`.
    pub fn negated(self) -> GroupSet {
        let n = self.group.modulus;
        let mut mask = 0u64;
        for a in self.values() {
            mask |= 1u64 << ((n - a) % n);
        }
        GroupSet { group: self.group, mask }
    }

    /// `{a - b : a in self, b in other}`.
    pub fn difference_set(self, other: GroupSet) -> GroupSet {
        self.sumset(other.negated())
    }

    /// `{a + g : a in self}`.
    pub fn translate(self, g: GroupElement) -> GroupSet {
        assert_eq!(self.group, g.group, "group mismatch");
        GroupSet {
            group: self.group,
            mask: self.rotated(g.value),
        }
    }

    /// Pollard's condition: every nonzero element of `S - S` generates the group.
    pub fn pollard_condition(self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let diffs = self.difference_set(self);
        Ok(diffs.iter().all(|d| d.value() == 0 || d.is_generator()))
    }

    /// Chowla's condition: some pivot `b in S` has every nonzero element of
    /// `S - b` generating the group.
    pub fn chowla_condition(self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(self.iter().any(|b| {
            self.translate(-b)
                .iter()
                .all(|d| d.value() == 0 || d.is_generator())
        }))
    }

    /// All differences `d` for which the set is the arithmetic progression
    /// `{a, a+d, ..., a+(k-1)d}` for some start `a`. Nonempty iff the set is
    /// an AP. For singletons every difference qualifies (including 0); for
    /// pairs `{a, a+d}` both `d` and `n-d` qualify.
    pub fn ap_differences(self) -> Result<GroupSet> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let n = self.group.modulus;
        let k = self.len();
        let mut out = 0u64;
        for d in 0..n {
            'starts: for a in self.values() {
                let mut mask = 0u64;
                let mut cur = a;
                for _ in 0..k {
                    mask |= 1u64 << cur;
                    cur = (cur + d) % n;
                }
                if mask == self.mask {
                    out |= 1u64 << d;
                    break 'starts;
                }
            }
        }
        Ok(GroupSet { group: self.group, mask: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32) -> CyclicGroup {
        CyclicGroup::new(n).unwrap()
    }

    // Independent oracle: enumerate every (a, b) pair.
    fn sumset_oracle(a: GroupSet, b: GroupSet) -> Vec<u32> {
        let n = a.group().modulus();
        let mut out: Vec<u32> = a
            .values()
            .flat_map(|x| b.values().map(move |y| (x + y) % n).collect::<Vec<_>>())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn set_values(s: GroupSet) -> Vec<u32> {
        s.values().collect()
    }

    #[test]
    fn sumset_examples() {
        let g = z(5);
        let a = g.set_from([0, 1]);
        let b = g.set_from([0, 2]);
        assert_eq!(set_values(a.sumset(b)), sumset_oracle(a, b));
        assert_eq!(set_values(a.sumset(b)), vec![0, 1, 2, 3]);

        let a = g.set_from([1, 2]);
        let b = g.set_from([3, 4]);
        assert_eq!(set_values(a.sumset(b)), sumset_oracle(a, b));
        assert_eq!(set_values(a.sumset(b)), vec![0, 1, 4]);

        // identity element
        let a = g.set_from([2, 4]);
        assert_eq!(a.sumset(g.set_from([0])), a);
        // empty operand
        assert!(a.sumset(g.empty_set()).is_empty());
    }

    #[test]
    fn difference_set_examples() {
        let g = z(6);
        let b = g.set_from([0, 1]);
        assert_eq!(set_values(b.difference_set(b)), vec![0, 1, 5]);

        let a = g.set_from([0, 2]);
        assert_eq!(set_values(a.difference_set(g.set_from([1]))), vec![1, 5]);

        // a - a = 0
        assert!(a.difference_set(a).contains(g.zero()));
    }

    #[test]
    fn translate_examples() {
        let g = z(7);
        let a = g.set_from([0, 1, 3]);
        assert_eq!(a.translate(g.zero()), a);

        let g5 = z(5);
        let a5 = g5.set_from([0, 1]);
        assert_eq!(set_values(a5.translate(g5.element(4))), vec![0, 4]);

        // inverse translate
        let g4 = g.element(4);
        assert_eq!(a.translate(g4).translate(-g4), a);
    }

    #[test]
    fn generator_examples() {
        assert!(z(6).element(5).is_generator());
        assert!(!z(5).element(0).is_generator());
        assert!(!z(6).element(2).is_generator());
        assert!(z(1).element(0).is_generator());
    }

    #[test]
    fn pollard_examples() {
        let g = z(6);
        assert!(g.set_from([0, 1]).pollard_condition().unwrap());
        assert!(!g.set_from([0, 2]).pollard_condition().unwrap());
        // over a prime modulus the condition holds for every nonempty set
        let p = z(7);
        for mask in 1u64..1 << 7 {
            assert!(p.set_from_mask(mask).pollard_condition().unwrap());
        }
        assert!(matches!(
            g.empty_set().pollard_condition(),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn chowla_examples() {
        let g = z(6);
        assert!(g.set_from([1, 2]).chowla_condition().unwrap());
        assert!(!g.set_from([0, 3]).chowla_condition().unwrap());
        let p = z(5);
        for mask in 1u64..1 << 5 {
            assert!(p.set_from_mask(mask).chowla_condition().unwrap());
        }
    }

    // Independent oracle: try every (start, difference) pair.
    fn ap_differences_oracle(s: GroupSet) -> Vec<u32> {
        let n = s.group().modulus();
        let k = s.len();
        let mut out = vec![];
        for d in 0..n {
            let found = (0..n).any(|a| {
                let mut mask = 0u64;
                let mut cur = a;
                for _ in 0..k {
                    mask |= 1u64 << cur;
                    cur = (cur + d) % n;
                }
                mask == s.mask()
            });
            if found {
                out.push(d);
            }
        }
        out
    }

    #[test]
    fn ap_differences_examples() {
        let g = z(7);
        let s = g.set_from([1, 3, 5]);
        assert_eq!(set_values(s.ap_differences().unwrap()), vec![2, 5]);
        assert_eq!(set_values(s.ap_differences().unwrap()), ap_differences_oracle(s));

        let g5 = z(5);
        assert_eq!(
            set_values(g5.full_set().ap_differences().unwrap()),
            vec![1, 2, 3, 4]
        );

        let not_ap = g.set_from([0, 1, 3]);
        assert!(not_ap.ap_differences().unwrap().is_empty());
        assert_eq!(set_values(not_ap.ap_differences().unwrap()), ap_differences_oracle(not_ap));
    }

    #[test]
    fn z1_edge_cases() {
        let g = z(1);
        let s = g.set_from([0]);
        assert!(s.pollard_condition().unwrap());
        assert!(s.chowla_condition().unwrap());
        assert!(!s.ap_differences().unwrap().is_empty());
    }

    #[test]
    fn cauchy_davenport_exhaustive_small_primes() {
        for p in [2u32, 3, 5, 7] {
            let g = z(p);
            for am in 1u64..1 << p {
                for bm in 1u64..1 << p {
                    let a = g.set_from_mask(am);
                    let b = g.set_from_mask(bm);
                    assert!(a.sumset(b).len() >= (a.len() + b.len() - 1).min(p));
                }
            }
        }
    }

    fn arb_set_pair() -> impl Strategy<Value = (GroupSet, GroupSet)> {
        (1u32..=12).prop_flat_map(|n| {
            let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            (0..=full, 0..=full).prop_map(move |(am, bm)| {
                let g = CyclicGroup::new(n).unwrap();
                (g.set_from_mask(am), g.set_from_mask(bm))
            })
        })
    }

    proptest! {
        #[test]
        fn sumset_matches_pair_enumeration((a, b) in arb_set_pair()) {
            prop_assert_eq!(set_values(a.sumset(b)), sumset_oracle(a, b));
        }

        #[test]
        fn sumset_commutative_and_lower_bounded((a, b) in arb_set_pair()) {
            prop_assert_eq!(a.sumset(b), b.sumset(a));
            if !a.is_empty() && !b.is_empty() {
                prop_assert!(a.sumset(b).len() >= a.len().max(b.len()));
            }
        }

        #[test]
        fn self_difference_symmetric((a, _) in arb_set_pair()) {
            let n = a.group().modulus();
            let d = a.difference_set(a);
            for v in d.values() {
                prop_assert!(d.contains_value((n - v) % n));
            }
        }

        #[test]
        fn ap_differences_translation_invariant((a, _) in arb_set_pair(), shift in 0u64..64) {
            if !a.is_empty() {
                let g = a.group().element(shift);
                prop_assert_eq!(
                    a.translate(g).ap_differences().unwrap(),
                    a.ap_differences().unwrap()
                );
            }
        }

        #[test]
        fn pollard_implies_chowla((a, _) in arb_set_pair()) {
            if !a.is_empty() && a.pollard_condition().unwrap() {
                prop_assert!(a.chowla_condition().unwrap());
            }
        }
    }
}
