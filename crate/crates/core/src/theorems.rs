//! Runtime verifiers for the base-weight bound, its equality cases, the
//! contraction lemmas, the Chowla-Kemperman inequality, Vosper's theorem,
//! and the Erdos-Ginzburg-Ziv zero-sum theorem.

use crate::cyclic::{CyclicGroup, GroupElement, GroupSet};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, SubsetOfE};
use crate::weighting::WeightedMatroid;

/// Outcome of [`check_main`] on a weighted matroid.
#[derive(Clone, Debug)]
pub struct MainVerdict {
    /// `min(|G|, Σ_g r(w^{-1}(g)) - r(M) + 1)`, plus any injected offset.
    pub bound: u32,
    /// `|M^w|`.
    pub weight_count: u32,
    /// Whether `w(E)` satisfies Pollard's condition. When false the
    /// theorem does not apply and no equality classification is run.
    pub pollard_ok: bool,
    pub inequality_holds: bool,
    pub is_equality: bool,
    /// `r(M) = 1` or `M^w` is an arithmetic progression.
    pub case_i: bool,
    /// Some hyperplane `H` and shift `g` give `M^w = g + (M/H)^w`.
    pub case_ii: bool,
    pub witness_hyperplane: Option<SubsetOfE>,
    pub witness_shift: Option<GroupElement>,
}

impl MainVerdict {
    /// Whether the verdict is consistent with the theorem. Only meaningful
    /// when `pollard_ok` is true.
    pub fn theorem_ok(&self) -> bool {
        self.inequality_holds && (!self.is_equality || self.case_i || self.case_ii)
    }
}

pub fn check_main(wm: &WeightedMatroid) -> Result<MainVerdict> {
    check_main_with_bound_offset(wm, 0)
}

/// Like [`check_main`] but with the bound artificially raised, for fault
/// injection in the campaign runner.
pub fn check_main_with_bound_offset(wm: &WeightedMatroid, offset: u32) -> Result<MainVerdict> {
    let matroid = wm.matroid();
    let rank = matroid.rank_full();
    let bound = wm.ss_bound()? + offset;
    let mw = wm.base_weight_set();
    let weight_count = mw.len();
    let pollard_ok = wm.weights().image().pollard_condition()?;
    let inequality_holds = weight_count >= bound;
    let is_equality = weight_count == bound;

    let mut verdict = MainVerdict {
        bound,
        weight_count,
        pollard_ok,
        inequality_holds,
        is_equality,
        case_i: false,
        case_ii: false,
        witness_hyperplane: None,
        witness_shift: None,
    };
    if !pollard_ok || !is_equality {
        return Ok(verdict);
    }

    verdict.case_i = rank == 1 || !mw.ap_differences()?.is_empty();

    'search: for h in matroid.hyperplanes()? {
        let contracted = wm.contract(h);
        let contracted_weights = contracted.base_weight_set();
        for g in wm.group().elements() {
            if contracted_weights.translate(g) == mw {
                verdict.case_ii = true;
                verdict.witness_hyperplane = Some(h);
                verdict.witness_shift = Some(g);
                break 'search;
            }
        }
    }
    Ok(verdict)
}

/// The containment `(M/u)^w + G_u ⊆ M^w` for a non-loop element `u`.
pub fn check_ss_lemma(wm: &WeightedMatroid, u: usize) -> Result<bool> {
    if u >= wm.matroid().ground().size() {
        return Err(Error::ElementOutOfRange(u));
    }
    if wm.matroid().loops().contains(u) {
        return Err(Error::LoopElement(u));
    }
    let contracted = wm.contract_element(u)?;
    let gu = wm.neighborhood_weights(u)?;
    let lhs = contracted.base_weight_set().sumset(gu);
    Ok(lhs.is_subset_of(wm.base_weight_set()))
}

// Bases of a contraction expressed as subsets of the original ground set.
fn contracted_bases_in_original(m: &Matroid, a: SubsetOfE) -> Vec<u16> {
    let c = m.contract(a);
    let mut out: Vec<u16> = c
        .matroid
        .base_masks()
        .iter()
        .map(|&b| c.to_original_mask(b))
        .collect();
    out.sort_unstable();
    out
}

/// Both contraction identities: `M/U` and `M/cl(U)` have the same bases,
/// and `(M/U)/V = M/(U ∪ V)`, with base families compared as subsets of
/// the original ground set.
pub fn check_contraction_identities(m: &Matroid, u: SubsetOfE, v: SubsetOfE) -> Result<bool> {
    if !u.intersection(v).is_empty() {
        return Err(Error::OverlappingSubsets);
    }
    let same_bases =
        contracted_bases_in_original(m, u) == contracted_bases_in_original(m, m.closure(u));

    let step1 = m.contract(u);
    let v_inner = step1.matroid.ground().subset(step1.from_original_mask(v.mask()));
    let step2 = step1.matroid.contract(v_inner);
    let mut iterated: Vec<u16> = step2
        .matroid
        .base_masks()
        .iter()
        .map(|&b| step1.to_original_mask(step2.to_original_mask(b)))
        .collect();
    iterated.sort_unstable();
    let associative = iterated == contracted_bases_in_original(m, u.union(v));

    Ok(same_bases && associative)
}

/// Outcome of the Chowla-Kemperman check on a pair of sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChowlaVerdict {
    /// Whether `B` satisfies Chowla's condition; the theorem only speaks
    /// to applicable pairs.
    pub applicable: bool,
    /// `|A+B| >= min(n, |A|+|B|-1)`.
    pub inequality_holds: bool,
    /// `|A+B| = |A|+|B|-1` with the bound under the group order.
    pub equality: bool,
    /// Equality implies `A+B` is an arithmetic progression.
    pub ap_consistent: bool,
}

impl ChowlaVerdict {
    pub fn passes(&self) -> bool {
        !self.applicable || (self.inequality_holds && self.ap_consistent)
    }
}

pub fn check_chowla_kemperman(a: GroupSet, b: GroupSet) -> Result<ChowlaVerdict> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::CardinalityTooSmall(2));
    }
    let applicable = b.chowla_condition()?;
    if !applicable {
        return Ok(ChowlaVerdict {
            applicable,
            inequality_holds: false,
            equality: false,
            ap_consistent: true,
        });
    }
    let n = a.group().modulus();
    let s = a.sumset(b);
    let unclamped = a.len() + b.len() - 1;
    let inequality_holds = s.len() >= unclamped.min(n);
    // only the forward direction is asserted: equality (under the clamp)
    // forces A+B to be a progression
    let equality = unclamped <= n && s.len() == unclamped;
    let ap_consistent = !equality || !s.ap_differences()?.is_empty();
    Ok(ChowlaVerdict { applicable, inequality_holds, equality, ap_consistent })
}

/// Outcome of the Vosper equality-case check over a prime-order group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VosperVerdict {
    /// `|A+B| = |A|+|B|-1 < p`.
    pub applicable: bool,
    /// Some `c` has `c - A = Z_p \ B`.
    pub case_complement: bool,
    /// `A` and `B` are progressions with a common difference.
    pub case_ap: bool,
}

impl VosperVerdict {
    pub fn passes(&self) -> bool {
        !self.applicable || self.case_complement || self.case_ap
    }
}

pub fn check_vosper(a: GroupSet, b: GroupSet) -> Result<VosperVerdict> {
    let group = a.group();
    if !group.has_prime_order() {
        return Err(Error::NotPrime(group.modulus()));
    }
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::CardinalityTooSmall(2));
    }
    let p = group.modulus();
    let s = a.sumset(b);
    let applicable = s.len() == a.len() + b.len() - 1 && s.len() < p;
    if !applicable {
        return Ok(VosperVerdict { applicable, case_complement: false, case_ap: false });
    }
    let neg_a = a.negated();
    let case_complement = group
        .elements()
        .any(|c| neg_a.translate(c) == b.complement());
    let case_ap = !a
        .ap_differences()?
        .intersection(b.ap_differences()?)
        .is_empty();
    Ok(VosperVerdict { applicable, case_complement, case_ap })
}

/// A sequence of group elements, the input shape of the EGZ theorem.
#[derive(Clone, Debug)]
pub struct SequenceInstance {
    group: CyclicGroup,
    terms: Vec<u32>,
}

impl SequenceInstance {
    pub fn new(group: CyclicGroup, terms: &[u32]) -> Self {
        Self {
            group,
            terms: terms.iter().map(|&t| t % group.modulus()).collect(),
        }
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn terms(&self) -> &[u32] {
        &self.terms
    }

    fn expect_egz_length(&self) -> Result<u32> {
        let n = self.group.modulus();
        let expected = 2 * n as usize - 1;
        if self.terms.len() != expected {
            return Err(Error::LengthMismatch { expected, got: self.terms.len() });
        }
        Ok(n)
    }
}

/// Search for `n` indices whose terms sum to 0 mod `n`, over a sequence of
/// length `2n - 1`. EGZ guarantees one exists; `None` is a counterexample.
pub fn egz_witness(seq: &SequenceInstance) -> Result<Option<Vec<usize>>> {
    let n = seq.expect_egz_length()?;
    let len = seq.terms.len();
    for mask in 0u32..1 << len {
        if mask.count_ones() != n {
            continue;
        }
        let total: u64 = (0..len)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| u64::from(seq.terms[i]))
            .sum();
        if total.is_multiple_of(u64::from(n)) {
            return Ok(Some((0..len).filter(|&i| mask >> i & 1 == 1).collect()));
        }
    }
    Ok(None)
}

/// The matroid route to EGZ: build `U_n` on the `2n - 1` terms and check
/// that the bound is `n` and the base weights cover all of `Z_n`. Requires
/// that no residue is repeated `n` or more times.
pub fn check_egz_via_matroid(seq: &SequenceInstance) -> Result<bool> {
    let n = seq.expect_egz_length()?;
    for g in 0..n {
        let count = seq.terms.iter().filter(|&&t| t == g).count();
        if count >= n as usize {
            return Err(Error::RepeatedResidue(g));
        }
    }
    let matroid = Matroid::uniform(seq.terms.len(), n as usize)?;
    let weights =
        crate::weighting::WeightFunction::new(matroid.ground(), seq.group, &seq.terms)?;
    let wm = WeightedMatroid::new(matroid, weights)?;
    Ok(wm.ss_bound()? == n && wm.base_weight_set() == seq.group.full_set())
}
