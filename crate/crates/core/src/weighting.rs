//! Weight functions `w: E -> Z_n`, subset weights, the set of distinct
//! base weights `M^w`, weight fibers, the fiber-rank lower bound, and the
//! neighborhood weight sets `G_u`.

use crate::cyclic::{CyclicGroup, GroupElement, GroupSet};
use crate::error::{Error, Result};
use crate::matroid::{GroundSet, Matroid, SubsetOfE};

/// A total weight map from a ground set into a cyclic group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightFunction {
    ground: GroundSet,
    group: CyclicGroup,
    values: Vec<u32>,
}

impl WeightFunction {
    pub fn new(ground: GroundSet, group: CyclicGroup, values: &[u32]) -> Result<Self> {
        if values.len() != ground.size() {
            return Err(Error::LengthMismatch { expected: ground.size(), got: values.len() });
        }
        Ok(Self {
            ground,
            group,
            values: values.iter().map(|&v| v % group.modulus()).collect(),
        })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn value(&self, i: usize) -> GroupElement {
        self.group.element(u64::from(self.values[i]))
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// The image set `w(E)`.
    pub fn image(&self) -> GroupSet {
        self.group.set_from(self.values.iter().map(|&v| u64::from(v)))
    }

    /// `X^w`, the group sum of the weights of `X`. Empty sets sum to 0.
    pub fn subset_weight(&self, x: SubsetOfE) -> GroupElement {
        assert_eq!(x.ground(), self.ground, "ground mismatch");
        let total: u64 = x.indices().map(|i| u64::from(self.values[i])).sum();
        self.group.element(total)
    }

    /// The fiber `w^{-1}(g)`.
    pub fn fiber(&self, g: GroupElement) -> SubsetOfE {
        assert_eq!(g.group(), self.group, "group mismatch");
        self.ground.subset_from(
            (0..self.ground.size()).filter(|&i| self.values[i] == g.value()),
        )
    }

    /// All fibers, one per group element including empty ones.
    pub fn fibers(&self) -> Vec<(GroupElement, SubsetOfE)> {
        self.group.elements().map(|g| (g, self.fiber(g))).collect()
    }

    /// Restriction along an index mapping `retained[new] = old`, as
    /// produced by contraction.
    pub fn restrict(&self, retained: &[usize]) -> WeightFunction {
        let ground = GroundSet::new(retained.len()).expect("restriction shrinks");
        WeightFunction {
            ground,
            group: self.group,
            values: retained.iter().map(|&old| self.values[old]).collect(),
        }
    }
}

/// A matroid paired with a weight function over the same ground set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedMatroid {
    matroid: Matroid,
    weights: WeightFunction,
}

impl WeightedMatroid {
    pub fn new(matroid: Matroid, weights: WeightFunction) -> Result<Self> {
        if matroid.ground() != weights.ground() {
            return Err(Error::LengthMismatch {
                expected: matroid.ground().size(),
                got: weights.ground().size(),
            });
        }
        Ok(Self { matroid, weights })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.weights
    }

    pub fn group(&self) -> CyclicGroup {
        self.weights.group()
    }

    /// `M^w`: the set of distinct base weights, by direct base enumeration.
    pub fn base_weight_set(&self) -> GroupSet {
        let mut out = self.group().empty_set();
        for b in self.matroid.bases() {
            out = out.with(self.weights.subset_weight(b));
        }
        out
    }

    /// The fiber-rank lower bound `min(|G|, Σ_g r(w^{-1}(g)) - r(M) + 1)`.
    pub fn ss_bound(&self) -> Result<u32> {
        let r = self.matroid.rank_full();
        if r == 0 {
            return Err(Error::ZeroRank);
        }
        let n = self.group().modulus();
        let fiber_rank_sum: usize = self
            .weights
            .fibers()
            .iter()
            .map(|(_, f)| self.matroid.rank(*f))
            .sum();
        // every base meets the fibers in r(M) elements total
        debug_assert!(fiber_rank_sum >= r);
        Ok(n.min((fiber_rank_sum - r + 1) as u32))
    }

    /// `G_u = {g : u ∈ cl(w^{-1}(g))}`. For a loop this is all of `G`.
    pub fn neighborhood_weights(&self, u: usize) -> Result<GroupSet> {
        if u >= self.matroid.ground().size() {
            return Err(Error::ElementOutOfRange(u));
        }
        let mut out = self.group().empty_set();
        for (g, fiber) in self.weights.fibers() {
            if self.matroid.closure(fiber).contains(u) {
                out = out.with(g);
            }
        }
        Ok(out)
    }

    /// Contract a subset, restricting the weights through the same index map.
    pub fn contract(&self, a: SubsetOfE) -> WeightedMatroid {
        let c = self.matroid.contract(a);
        let weights = self.weights.restrict(&c.retained);
        WeightedMatroid { matroid: c.matroid, weights }
    }

    /// Contract a single element.
    pub fn contract_element(&self, u: usize) -> Result<WeightedMatroid> {
        if u >= self.matroid.ground().size() {
            return Err(Error::ElementOutOfRange(u));
        }
        Ok(self.contract(self.matroid.ground().subset_from([u])))
    }
}
