//! Partition-product maximisation over size multisets.
//!
//! The central quantity is: given positive integers `x_1, ..., x_r` and an
//! order `t >= 2`, the maximum over all partitions of the index set
//! `{1, ..., r}` into `t - 1` nonempty blocks of the sum of pairwise
//! products of block sums (zero when `t = 2`, where the empty product
//! convention applies).
//!
//! [`f_general`] is the exhaustive reference evaluator (restricted-growth
//! string enumeration). [`f3_fast`] is an independent subset-sum dynamic
//! program for the `t = 3` case, and [`f_closed_equal_r`] evaluates the
//! closed form for `t = r`. The three routes are cross-checked against each
//! other by the test suites.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported sum of part sizes. Keeps every block-sum product
/// exactly representable: with totals below `2^32` the final values stay
/// under `2^63` and all intermediate arithmetic fits in `u128`.
pub const MAX_TOTAL: u64 = u32::MAX as u64;

/// Cap on the subset-sum table used by [`f3_fast`].
const MAX_DP_TOTAL: u64 = 1 << 22;

/// A multiset of positive part sizes, kept sorted ascending.
///
/// Construction accepts the sizes in any order and canonicalises them; all
/// downstream code may rely on `values()[0]` being the minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SizeMultiset {
    values: Vec<u64>,
}

impl SizeMultiset {
    pub fn new(mut values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArity("size multiset must be nonempty".into()));
        }
        if let Some(&bad) = values.iter().find(|&&v| v == 0) {
            return Err(Error::InvalidSize(format!("part size {bad} is not positive")));
        }
        values.sort_unstable();
        let mut total: u64 = 0;
        for &v in &values {
            total = total
                .checked_add(v)
                .filter(|&s| s <= MAX_TOTAL)
                .ok_or(Error::Overflow("sum of part sizes"))?;
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Number of parts `r`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor rejects empty multisets
    }

    /// Sum of all part sizes.
    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    /// Smallest part size.
    pub fn min(&self) -> u64 {
        self.values[0]
    }

    /// Copy with the smallest entry replaced by `new_first`.
    ///
    /// Used for the `x_1 = n_1 - (k - 1)` substitution; `new_first` must
    /// stay positive and cannot exceed the entry it replaces, so the result
    /// is still sorted.
    pub(crate) fn with_min_replaced(&self, new_first: u64) -> Self {
        debug_assert!(new_first >= 1 && new_first <= self.values[0]);
        let mut values = self.values.clone();
        values[0] = new_first;
        Self { values }
    }
}

impl fmt::Display for SizeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", strs.join(","))
    }
}

/// A partition of the index set `{0, ..., r-1}` into nonempty blocks.
///
/// Canonical representative: every block sorted ascending, blocks ordered
/// by their minimum element. Partitions are unordered, so two assignments
/// with the same blocks compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionAssignment {
    blocks: Vec<Vec<usize>>,
}

impl PartitionAssignment {
    /// Validates and canonicalises `blocks` as a partition of `0..r`.
    pub fn new(mut blocks: Vec<Vec<usize>>, r: usize) -> Result<Self> {
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::InvalidArity("partition blocks must be nonempty".into()));
        }
        let mut seen = vec![false; r];
        for b in &blocks {
            for &i in b {
                if i >= r || seen[i] {
                    return Err(Error::InvalidArity(format!(
                        "blocks are not a partition of 0..{r}"
                    )));
                }
                seen[i] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::InvalidArity(format!(
                "blocks do not cover 0..{r}"
            )));
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Self { blocks })
    }

    /// Builds from a restricted-growth string. Labels appear in order of
    /// their minimal elements, so the blocks come out canonical directly.
    pub(crate) fn from_rgs(rgs: &[u8], num_blocks: usize) -> Self {
        let mut blocks = vec![Vec::new(); num_blocks];
        for (i, &label) in rgs.iter().enumerate() {
            blocks[label as usize].push(i);
        }
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Sum of `values` over each block, in block order.
    pub fn block_sums(&self, values: &[u64]) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| values[i]).sum())
            .collect()
    }

    /// Recomputes the pairwise block-sum product total for `values`.
    pub fn pair_product_sum(&self, values: &[u64]) -> u64 {
        let sums = self.block_sums(values);
        pair_product_total(&sums)
    }

    /// Blocks with 1-based indices, for display and JSON output.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| i + 1).collect())
            .collect()
    }
}

impl fmt::Display for PartitionAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .to_one_based()
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|i| i.to_string()).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for PartitionAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based = self.to_one_based();
        let mut seq = serializer.serialize_seq(Some(one_based.len()))?;
        for b in &one_based {
            seq.serialize_element(b)?;
        }
        seq.end()
    }
}

/// Value of the partition optimisation plus one maximising partition.
///
/// The witness is absent exactly when `t = 2` (the value is identically
/// zero and no partition is involved).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FtResult {
    pub value: u64,
    pub witness: Option<PartitionAssignment>,
}

/// Sum of pairwise products over a slice of sums, exact in `u128`.
pub(crate) fn pair_product_total(sums: &[u64]) -> u64 {
    let total: u128 = sums.iter().map(|&s| s as u128).sum();
    let sq: u128 = sums.iter().map(|&s| (s as u128) * (s as u128)).sum();
    ((total * total - sq) / 2) as u64
}

/// Scratch buffers for the restricted-growth enumeration, reusable across
/// calls in tight sweep loops.
#[derive(Default)]
pub(crate) struct FtScratch {
    rgs: Vec<u8>,
    best_rgs: Vec<u8>,
    sums: Vec<u64>,
}

/// Compares two restricted-growth strings by the canonical form of the
/// partitions they encode (blocks ordered by minimum, block contents
/// ascending, lexicographic over the block sequence).
fn rgs_canonical_cmp(a: &[u8], b: &[u8], num_blocks: usize) -> std::cmp::Ordering {
    for label in 0..num_blocks as u8 {
        let ia = a.iter().enumerate().filter(|(_, &l)| l == label).map(|(i, _)| i);
        let ib = b.iter().enumerate().filter(|(_, &l)| l == label).map(|(i, _)| i);
        let ord = ia.cmp(ib);
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

/// Exhaustive partition-product maximum over partitions of the index set
/// into exactly `blocks` nonempty blocks. Tolerates zero entries (the
/// public API only admits positive sizes; internal identity checks need
/// the zero-extended evaluation).
///
/// Returns the maximum value; `scratch.best_rgs` holds the
/// lexicographically smallest canonical maximiser.
pub(crate) fn ft_raw(values: &[u64], blocks: usize, scratch: &mut FtScratch) -> u64 {
    let r = values.len();
    debug_assert!(blocks >= 1 && r >= blocks);
    let total: u128 = values.iter().map(|&v| v as u128).sum();
    let total_sq = total * total;

    scratch.rgs.clear();
    scratch.rgs.resize(r, 0);
    scratch.best_rgs.clear();
    scratch.best_rgs.resize(r, 0);
    scratch.sums.clear();
    scratch.sums.resize(blocks, 0);

    let mut best: Option<u128> = None;

    // Depth-first assignment of indices to block labels; the first index is
    // pinned to label 0, labels open in order (restricted growth).
    fn rec(
        i: usize,
        used: usize,
        r: usize,
        blocks: usize,
        values: &[u64],
        total_sq: u128,
        rgs: &mut [u8],
        sums: &mut [u64],
        best: &mut Option<u128>,
        best_rgs: &mut [u8],
    ) {
        if i == r {
            if used == blocks {
                let sq: u128 = sums.iter().map(|&s| (s as u128) * (s as u128)).sum();
                let value = (total_sq - sq) / 2;
                let better = match *best {
                    None => true,
                    Some(b) if value > b => true,
                    Some(b) if value == b => {
                        rgs_canonical_cmp(rgs, best_rgs, blocks) == std::cmp::Ordering::Less
                    }
                    _ => false,
                };
                if better {
                    *best = Some(value);
                    best_rgs.copy_from_slice(rgs);
                }
            }
            return;
        }
        let remaining = r - i;
        let max_label = if used < blocks { used } else { used - 1 };
        for label in 0..=max_label {
            let new_used = if label == used { used + 1 } else { used };
            // Enough indices must remain to open every still-missing block.
            if blocks - new_used > remaining - 1 {
                continue;
            }
            rgs[i] = label as u8;
            sums[label] += values[i];
            rec(i + 1, new_used, r, blocks, values, total_sq, rgs, sums, best, best_rgs);
            sums[label] -= values[i];
        }
    }

    let mut sums = std::mem::take(&mut scratch.sums);
    let mut rgs = std::mem::take(&mut scratch.rgs);
    let mut best_rgs = std::mem::take(&mut scratch.best_rgs);
    rec(
        0,
        0,
        r,
        blocks,
        values,
        total_sq,
        &mut rgs,
        &mut sums,
        &mut best,
        &mut best_rgs,
    );
    scratch.sums = sums;
    scratch.rgs = rgs;
    scratch.best_rgs = best_rgs;

    best.expect("at least one partition exists when r >= blocks") as u64
}

/// Value-only variant of [`ft_raw`] with a fresh scratch; convenience for
/// call sites outside hot loops.
pub(crate) fn ft_value(values: &[u64], blocks: usize) -> u64 {
    let mut scratch = FtScratch::default();
    ft_raw(values, blocks, &mut scratch)
}

/// Maximum of `s * (total - s)` over proper nonempty index subsets, by
/// direct mask enumeration. Tolerates zeros. Only for small `r`.
pub(crate) fn f3_value_masks(values: &[u64]) -> u64 {
    let r = values.len();
    debug_assert!((2..=20).contains(&r));
    let total: u128 = values.iter().map(|&v| v as u128).sum();
    let mut best: u128 = 0;
    for mask in 1..((1u32 << r) - 1) {
        let mut s: u128 = 0;
        for (i, &v) in values.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s += v as u128;
            }
        }
        best = best.max(s * (total - s));
    }
    best as u64
}

/// Exhaustive evaluation of the partition-product maximum.
///
/// For `t = 2` the value is zero with no witness. For `t >= 3` every
/// partition of the index set into `t - 1` nonempty blocks is enumerated
/// via restricted-growth strings and the best value is returned together
/// with the lexicographically smallest canonical maximiser.
pub fn f_general(xs: &SizeMultiset, t: u32) -> Result<FtResult> {
    if t < 2 {
        return Err(Error::InvalidArity(format!("order t = {t} must be at least 2")));
    }
    if t == 2 {
        return Ok(FtResult { value: 0, witness: None });
    }
    let blocks = (t - 1) as usize;
    let r = xs.len();
    if r < blocks {
        return Err(Error::InvalidArity(format!(
            "need at least {blocks} parts to form {blocks} nonempty blocks, got {r}"
        )));
    }
    let mut scratch = FtScratch::default();
    let value = ft_raw(xs.values(), blocks, &mut scratch);
    let witness = PartitionAssignment::from_rgs(&scratch.best_rgs, blocks);
    debug_assert_eq!(witness.pair_product_sum(xs.values()), value);
    Ok(FtResult { value, witness: Some(witness) })
}

/// Subset-sum bit tables for the balanced-bipartition dynamic program,
/// reusable across calls.
#[derive(Default)]
pub(crate) struct F3Scratch {
    /// `reach[i]` = sums formable from items `i..r`, one bit row each.
    reach: Vec<Vec<u64>>,
}

fn bit_get(row: &[u64], s: u64) -> bool {
    row[(s / 64) as usize] >> (s % 64) & 1 == 1
}

/// Fast `t = 3` evaluation: maximising the product of two block sums with
/// a fixed total is a balanced-bipartition problem, solved by subset-sum
/// reachability over proper nonempty subsets. The witness subset is
/// reconstructed by always taking the smallest usable index.
pub fn f3_fast(xs: &SizeMultiset) -> Result<FtResult> {
    let mut scratch = F3Scratch::default();
    let (value, subset) = f3_fast_raw(xs.values(), &mut scratch)?;
    let r = xs.len();
    let complement: Vec<usize> = (0..r).filter(|i| !subset.contains(i)).collect();
    let witness = PartitionAssignment::new(vec![subset, complement], r)?;
    debug_assert_eq!(witness.pair_product_sum(xs.values()), value);
    Ok(FtResult { value, witness: Some(witness) })
}

/// Core of [`f3_fast`]: returns the value and the witness subset indices.
pub(crate) fn f3_fast_raw(values: &[u64], scratch: &mut F3Scratch) -> Result<(u64, Vec<usize>)> {
    let r = values.len();
    if r < 2 {
        return Err(Error::InvalidArity(format!(
            "balanced bipartition needs at least 2 parts, got {r}"
        )));
    }
    let total: u64 = values.iter().sum();
    if total > MAX_DP_TOTAL {
        return Err(Error::Overflow("subset-sum table size"));
    }
    let words = (total / 64 + 1) as usize;

    scratch.reach.resize(r + 1, Vec::new());
    for row in &mut scratch.reach {
        row.clear();
        row.resize(words, 0);
    }
    scratch.reach[r][0] = 1;
    for i in (0..r).rev() {
        let (head, tail) = scratch.reach.split_at_mut(i + 1);
        let dst = &mut head[i];
        let src = &tail[0];
        dst.copy_from_slice(src);
        shl_or(dst, src, values[i]);
    }

    // Largest achievable sum not exceeding total/2 maximises s*(total-s).
    let half = total / 2;
    let mut target = None;
    for s in (1..=half).rev() {
        if bit_get(&scratch.reach[0], s) {
            target = Some(s);
            break;
        }
    }
    let s_star = target.expect("some proper nonempty subset sum is at most total/2");

    let mut subset = Vec::new();
    let mut rem = s_star;
    for i in 0..r {
        if values[i] <= rem && bit_get(&scratch.reach[i + 1], rem - values[i]) {
            subset.push(i);
            rem -= values[i];
        }
        if rem == 0 {
            break;
        }
    }
    debug_assert_eq!(rem, 0);
    let value = ((s_star as u128) * ((total - s_star) as u128)) as u64;
    Ok((value, subset))
}

/// `dst |= src << amount` over multiword bit rows of equal length.
fn shl_or(dst: &mut [u64], src: &[u64], amount: u64) {
    let word_shift = (amount / 64) as usize;
    let bit_shift = (amount % 64) as u32;
    let n = dst.len();
    for w in (word_shift..n).rev() {
        let mut v = src[w - word_shift] << bit_shift;
        if bit_shift > 0 && w > word_shift {
            v |= src[w - word_shift - 1] >> (64 - bit_shift);
        }
        dst[w] |= v;
    }
}

/// Closed form for the `t = r` case: the pairwise product total over all
/// sizes minus the product of the two smallest.
pub fn f_closed_equal_r(xs: &SizeMultiset) -> Result<u64> {
    let r = xs.len();
    if r < 2 {
        return Err(Error::InvalidArity(format!(
            "closed form needs at least 2 parts, got {r}"
        )));
    }
    let v = xs.values();
    Ok(pair_product_total(v) - v[0] * v[1])
}
