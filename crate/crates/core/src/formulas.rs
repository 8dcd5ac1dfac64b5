//! Closed-form and conjectured extremal edge counts for complete
//! multipartite hosts with a forbidden disjoint union of cliques.
//!
//! Every evaluator returns a [`FormulaValue`] carrying the computed value,
//! the identifier of the result that produced it, and whether the
//! parameters satisfy the stated hypotheses of that result
//! (`in_proved_range`). Conjectured values always report `false` there.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{self, SizeMultiset};

/// Host parameters: part sizes, forbidden clique order `t`, and the number
/// of disjoint copies `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HostParams {
    pub ns: SizeMultiset,
    pub t: u32,
    pub k: u64,
}

impl HostParams {
    pub fn new(ns: SizeMultiset, t: u32, k: u64) -> Result<Self> {
        if t < 2 {
            return Err(Error::InvalidArity(format!("t = {t} must be at least 2")));
        }
        if k < 1 {
            return Err(Error::OutOfRange("k must be at least 1".into()));
        }
        Ok(Self { ns, t, k })
    }
}

/// Which result produced a value. The serialised tokens double as the
/// `--which` arguments of the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaId {
    /// Single forbidden clique on a multipartite host.
    Thm11,
    /// `k` disjoint cliques spanning all parts (`t = r`).
    Thm12,
    /// Four-partite host, `k` disjoint triangles, piecewise form.
    Thm13,
    /// `k` disjoint triangles, `r >= 4`, proved size range.
    Thm16,
    /// Partition form of the conjectured general value.
    Conj15,
    /// Shifted-multiset form of the conjectured general value.
    Conj16,
    /// `k` disjoint edges (matchings).
    Kk2,
    /// `k` disjoint triangles on a complete host.
    Erdos,
}

impl FormulaId {
    pub fn as_token(self) -> &'static str {
        match self {
            FormulaId::Thm11 => "thm11",
            FormulaId::Thm12 => "thm12",
            FormulaId::Thm13 => "thm13",
            FormulaId::Thm16 => "thm16",
            FormulaId::Conj15 => "conj15",
            FormulaId::Conj16 => "conj16",
            FormulaId::Kk2 => "kk2",
            FormulaId::Erdos => "erdos",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_token())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm11" => Ok(FormulaId::Thm11),
            "thm12" => Ok(FormulaId::Thm12),
            "thm13" => Ok(FormulaId::Thm13),
            "thm16" => Ok(FormulaId::Thm16),
            "conj15" => Ok(FormulaId::Conj15),
            "conj16" => Ok(FormulaId::Conj16),
            "kk2" => Ok(FormulaId::Kk2),
            "erdos" => Ok(FormulaId::Erdos),
            other => Err(Error::Parse(format!("unknown formula id `{other}`"))),
        }
    }
}

/// A computed extremal value together with its provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaValue {
    pub id: FormulaId,
    pub value: u64,
    pub in_proved_range: bool,
    pub range_note: String,
}

/// Extremal edge count for a single forbidden clique of order `t`:
/// the partition-product maximum of the part sizes. Unconditional for
/// `r >= t >= 2`.
pub fn ex_clique(ns: &SizeMultiset, t: u32) -> Result<FormulaValue> {
    let r = ns.len() as u32;
    if t < 2 || r < t {
        return Err(Error::InvalidArity(format!(
            "single-clique value needs r >= t >= 2, got r = {r}, t = {t}"
        )));
    }
    let value = partition::f_general(ns, t)?.value;
    Ok(FormulaValue {
        id: FormulaId::Thm11,
        value,
        in_proved_range: true,
        range_note: "unconditional for r >= t >= 2".into(),
    })
}

/// Extremal edge count for `k` disjoint spanning cliques (`t = r`):
/// pairwise product total minus `n_1 n_2` plus `(k-1) n_2`. The equivalent
/// shifted-multiset form is evaluated as well and the two are required to
/// agree.
pub fn ex_kclique_full_r(ns: &SizeMultiset, k: u64) -> Result<FormulaValue> {
    let r = ns.len();
    if r < 2 {
        return Err(Error::InvalidArity(format!(
            "full-arity clique value needs r >= 2, got {r}"
        )));
    }
    let v = ns.values();
    let (n1, n2) = (v[0], v[1]);
    if k < 1 || k > n1 {
        return Err(Error::OutOfRange(format!(
            "need 1 <= k <= n_1, got k = {k}, n_1 = {n1}"
        )));
    }
    let value = partition::pair_product_total(v) - n1 * n2 + (k - 1) * n2;

    // Second form: (k-1)(n - n_1) + f_r on the multiset with n_1 shifted
    // down by k-1. The shifted entry may not be zero here since k <= n_1.
    let mut shifted = v.to_vec();
    shifted[0] = n1 - (k - 1);
    let second = (k - 1) * (ns.total() - n1) + partition::ft_value(&shifted, r - 1);
    assert_eq!(value, second, "the two closed forms must agree");

    Ok(FormulaValue {
        id: FormulaId::Thm12,
        value,
        in_proved_range: true,
        range_note: "unconditional for 1 <= k <= n_1".into(),
    })
}

/// Piecewise extremal edge count for `k` disjoint triangles in a
/// four-partite host. The producing result assumes all part sizes are
/// sufficiently large (unquantified), so `in_proved_range` is always
/// false.
pub fn ex_kk3_fourpartite(ns: &SizeMultiset, k: u64) -> Result<FormulaValue> {
    let r = ns.len();
    if r != 4 {
        return Err(Error::InvalidArity(format!(
            "four-partite triangle value needs r = 4, got {r}"
        )));
    }
    if k < 1 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let v = ns.values();
    let (n1, n2, n3, n4) = (v[0], v[1], v[2], v[3]);
    let value = if n4 > n2 + n3 {
        n4 * (n1 + n2 + n3) + (k - 1) * (n2 + n3)
    } else {
        (n1 + n4) * (n2 + n3) + (k - 1) * n4
    };
    Ok(FormulaValue {
        id: FormulaId::Thm13,
        value,
        in_proved_range: false,
        range_note: "theorem requires n_1,...,n_4 sufficiently large (unquantified)".into(),
    })
}

/// Conjectured general value in shifted-multiset form:
/// `(k-1)(n - n_1)` plus the partition-product maximum of the sizes with
/// the smallest entry reduced by `k - 1`.
pub fn conjecture_value(ns: &SizeMultiset, t: u32, k: u64) -> Result<FormulaValue> {
    let r = ns.len() as u32;
    if t < 2 || r + 1 < t {
        return Err(Error::InvalidArity(format!(
            "conjectured value needs r >= t - 1 >= 1, got r = {r}, t = {t}"
        )));
    }
    let n1 = ns.min();
    if k < 1 || n1 < k {
        return Err(Error::OutOfRange(format!(
            "need n_1 >= k so the shifted entry stays positive, got n_1 = {n1}, k = {k}"
        )));
    }
    let shifted = ns.with_min_replaced(n1 - (k - 1));
    let value = (k - 1) * (ns.total() - n1) + partition::f_general(&shifted, t)?.value;
    Ok(FormulaValue {
        id: FormulaId::Conj16,
        value,
        in_proved_range: false,
        range_note: "conjectured for n_1 >= k; proved only in special cases".into(),
    })
}

/// Conjectured general value in partition form: maximum over partitions of
/// the index set into `t - 1` nonempty blocks of
/// `(k-1) * max_I (n_I - m_I)` plus the pairwise block-sum product total,
/// where `m_I` is the smallest size in block `I` (unordered pairs).
pub fn conjecture15_value(ns: &SizeMultiset, t: u32, k: u64) -> Result<FormulaValue> {
    let r = ns.len();
    if t < 3 || r + 1 < t as usize {
        return Err(Error::InvalidArity(format!(
            "partition-form value needs r >= t - 1 >= 2, got r = {r}, t = {t}"
        )));
    }
    if k < 1 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let blocks = (t - 1) as usize;
    let values = ns.values();
    let total: u128 = values.iter().map(|&v| v as u128).sum();
    let total_sq = total * total;

    // Restricted-growth enumeration. Sizes are sorted ascending, so the
    // minimum of a block is the size at the first index assigned to it.
    fn rec(
        i: usize,
        used: usize,
        values: &[u64],
        blocks: usize,
        k: u64,
        total_sq: u128,
        sums: &mut [u64],
        mins: &mut [u64],
        best: &mut u128,
    ) {
        let r = values.len();
        if i == r {
            if used == blocks {
                let sq: u128 = sums[..blocks].iter().map(|&s| (s as u128) * (s as u128)).sum();
                let pair_sum = (total_sq - sq) / 2;
                let spread = (0..blocks).map(|l| sums[l] - mins[l]).max().unwrap();
                let candidate = pair_sum + ((k - 1) as u128) * (spread as u128);
                *best = (*best).max(candidate);
            }
            return;
        }
        let remaining = r - i;
        let max_label = if used < blocks { used } else { used - 1 };
        for label in 0..=max_label {
            let new_used = if label == used { used + 1 } else { used };
            if blocks - new_used > remaining - 1 {
                continue;
            }
            sums[label] += values[i];
            let opened = label == used;
            if opened {
                mins[label] = values[i];
            }
            rec(i + 1, new_used, values, blocks, k, total_sq, sums, mins, best);
            sums[label] -= values[i];
        }
    }

    let mut sums = vec![0u64; blocks];
    let mut mins = vec![0u64; blocks];
    let mut best: u128 = 0;
    rec(0, 0, values, blocks, k, total_sq, &mut sums, &mut mins, &mut best);

    Ok(FormulaValue {
        id: FormulaId::Conj15,
        value: best as u64,
        in_proved_range: false,
        range_note: "conjectured for sufficiently large sizes".into(),
    })
}

/// Proved value for `k` disjoint triangles when `r >= 4`, the smallest
/// part is at least `6k - 4`, and every other part exceeds it by at least
/// `4k`. Equals the shifted-multiset form.
pub fn ex_kk3_main(ns: &SizeMultiset, k: u64) -> Result<FormulaValue> {
    let r = ns.len();
    if r < 4 {
        return Err(Error::OutOfRange(format!(
            "hypothesis fails: r = {r} < 4"
        )));
    }
    if k < 1 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let v = ns.values();
    let n1 = v[0];
    // 10k - 4 <= n_1 + 4k, i.e. n_1 >= 6k - 4.
    if n1 + 4 < 6 * k {
        return Err(Error::OutOfRange(format!(
            "hypothesis fails: n_1 = {n1} < 6k - 4 = {}",
            6 * k - 4
        )));
    }
    let min_rest = v[1];
    if min_rest < n1 + 4 * k {
        return Err(Error::OutOfRange(format!(
            "hypothesis fails: min of the other parts {min_rest} < n_1 + 4k = {}",
            n1 + 4 * k
        )));
    }
    let inner = conjecture_value(ns, 3, k)?;
    Ok(FormulaValue {
        id: FormulaId::Thm16,
        value: inner.value,
        in_proved_range: true,
        range_note: "proved for r >= 4, 10k-4 <= n_1+4k <= every other part".into(),
    })
}

/// Extremal edge count for `k` disjoint edges: `(k-1)(n - n_1)`.
/// Asserts agreement with the shifted-multiset form at `t = 2`.
pub fn ex_kmatching(ns: &SizeMultiset, k: u64) -> Result<FormulaValue> {
    let r = ns.len();
    if r < 2 {
        return Err(Error::InvalidArity(format!(
            "matching value needs r >= 2, got {r}"
        )));
    }
    let n1 = ns.min();
    if k < 1 || k > n1 {
        return Err(Error::OutOfRange(format!(
            "need 1 <= k <= n_1 (conservative guard), got k = {k}, n_1 = {n1}"
        )));
    }
    let value = (k - 1) * (ns.total() - n1);
    let cross = conjecture_value(ns, 2, k)?;
    assert_eq!(value, cross.value, "matching value must equal the shifted form at t = 2");
    Ok(FormulaValue {
        id: FormulaId::Kk2,
        value,
        in_proved_range: true,
        range_note: "proved; k <= n_1 guard applied conservatively".into(),
    })
}

/// Extremal edge count for `k` disjoint triangles in the complete graph on
/// `n` vertices: `C(k-1,2) + (k-1)(n-k+1) + floor((n-k+1)^2 / 4)`.
/// Proved for `n > 9k/2 + 4`.
pub fn ex_kk3_complete(n: u64, k: u64) -> Result<FormulaValue> {
    if k < 1 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    if n < 3 * k {
        return Err(Error::OutOfRange(format!(
            "need n >= 3k for the packing to fit, got n = {n}, k = {k}"
        )));
    }
    if n > partition::MAX_TOTAL {
        return Err(Error::Overflow("complete-host vertex count"));
    }
    let m = n - k + 1;
    let value128 = ((k - 1) as u128) * ((k.saturating_sub(2)) as u128) / 2
        + ((k - 1) as u128) * (m as u128)
        + (m as u128) * (m as u128) / 4;
    let in_proved_range = 2 * n > 9 * k + 8;
    Ok(FormulaValue {
        id: FormulaId::Erdos,
        value: value128 as u64,
        in_proved_range,
        range_note: if in_proved_range {
            "proved for n > 9k/2 + 4".into()
        } else {
            format!("outside proved range: n = {n} <= 9k/2 + 4")
        },
    })
}

/// Every formula whose preconditions hold for the given parameters, in a
/// fixed id order. Hypothesis-range failures simply exclude a formula.
pub fn applicable_formulas(ns: &SizeMultiset, t: u32, k: u64) -> Vec<FormulaValue> {
    let r = ns.len();
    let mut out = Vec::new();
    if k == 1 && r as u32 >= t {
        if let Ok(fv) = ex_clique(ns, t) {
            out.push(fv);
        }
    }
    if t as usize == r {
        if let Ok(fv) = ex_kclique_full_r(ns, k) {
            out.push(fv);
        }
    }
    if t == 3 && r == 4 {
        if let Ok(fv) = ex_kk3_fourpartite(ns, k) {
            out.push(fv);
        }
    }
    if t == 3 {
        if let Ok(fv) = ex_kk3_main(ns, k) {
            out.push(fv);
        }
    }
    if let Ok(fv) = conjecture_value(ns, t, k) {
        out.push(fv);
    }
    if t >= 3 {
        if let Ok(fv) = conjecture15_value(ns, t, k) {
            out.push(fv);
        }
    }
    if t == 2 {
        if let Ok(fv) = ex_kmatching(ns, k) {
            out.push(fv);
        }
    }
    if t == 3 && ns.values().iter().all(|&v| v == 1) {
        if let Ok(fv) = ex_kk3_complete(r as u64, k) {
            out.push(fv);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(values: &[u64]) -> SizeMultiset {
        SizeMultiset::new(values.to_vec()).unwrap()
    }

    #[test]
    fn single_clique_examples() {
        assert_eq!(ex_clique(&ms(&[2, 2]), 2).unwrap().value, 0);
        assert_eq!(ex_clique(&ms(&[1, 1, 1]), 3).unwrap().value, 2);
        assert_eq!(ex_clique(&ms(&[2, 2, 2, 2]), 3).unwrap().value, 16);
        assert!(matches!(ex_clique(&ms(&[2, 2]), 3), Err(Error::InvalidArity(_))));
    }

    #[test]
    fn full_arity_examples() {
        assert_eq!(ex_kclique_full_r(&ms(&[2, 2, 2]), 2).unwrap().value, 10);
        assert_eq!(ex_kclique_full_r(&ms(&[2, 2, 2]), 1).unwrap().value, 8);
        assert_eq!(ex_kclique_full_r(&ms(&[1, 1]), 1).unwrap().value, 0);
        assert!(matches!(
            ex_kclique_full_r(&ms(&[2, 3, 3]), 3),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn fourpartite_examples() {
        assert_eq!(ex_kk3_fourpartite(&ms(&[8, 16, 16, 16]), 2).unwrap().value, 784);
        assert_eq!(ex_kk3_fourpartite(&ms(&[1, 1, 1, 5]), 1).unwrap().value, 15);
        assert_eq!(ex_kk3_fourpartite(&ms(&[1, 1, 1, 1]), 1).unwrap().value, 4);
        assert!(!ex_kk3_fourpartite(&ms(&[8, 16, 16, 16]), 2).unwrap().in_proved_range);
        assert!(matches!(
            ex_kk3_fourpartite(&ms(&[1, 1, 1]), 1),
            Err(Error::InvalidArity(_))
        ));
    }

    #[test]
    fn conjectured_value_examples() {
        assert_eq!(conjecture_value(&ms(&[8, 16, 16, 16]), 3, 2).unwrap().value, 784);
        assert_eq!(conjecture_value(&ms(&[2, 2, 2]), 3, 2).unwrap().value, 10);
        // k = 1 reduces to the single-clique value.
        let ns = ms(&[2, 3, 4, 5]);
        assert_eq!(
            conjecture_value(&ns, 3, 1).unwrap().value,
            ex_clique(&ns, 3).unwrap().value
        );
        assert!(matches!(
            conjecture_value(&ms(&[1, 5, 5]), 3, 2),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn partition_form_examples() {
        assert_eq!(conjecture15_value(&ms(&[8, 16, 16, 16]), 3, 2).unwrap().value, 784);
        assert_eq!(conjecture15_value(&ms(&[2, 2, 2]), 3, 1).unwrap().value, 8);
        // Agreement of the two conjecture forms on a valid irregular case.
        let ns = ms(&[3, 3, 4, 5, 6]);
        assert_eq!(
            conjecture15_value(&ns, 4, 3).unwrap().value,
            conjecture_value(&ns, 4, 3).unwrap().value
        );
    }

    #[test]
    fn main_theorem_examples() {
        let fv = ex_kk3_main(&ms(&[8, 16, 16, 16]), 2).unwrap();
        assert_eq!(fv.value, 784);
        assert!(fv.in_proved_range);
        // k = 1 also lies in range here; the value drops to the
        // single-clique optimum 768 (best split 24 * 32).
        let fv1 = ex_kk3_main(&ms(&[8, 16, 16, 16]), 1).unwrap();
        assert_eq!(fv1.value, 768);
        assert_eq!(fv1.value, ex_clique(&ms(&[8, 16, 16, 16]), 3).unwrap().value);
        assert!(matches!(
            ex_kk3_main(&ms(&[2, 2, 2, 2]), 2),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn matching_examples() {
        assert_eq!(ex_kmatching(&ms(&[2, 2]), 2).unwrap().value, 2);
        assert_eq!(ex_kmatching(&ms(&[3, 4, 5]), 1).unwrap().value, 0);
        assert_eq!(ex_kmatching(&ms(&[2, 3, 3]), 2).unwrap().value, 6);
        assert!(matches!(ex_kmatching(&ms(&[2, 5]), 3), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn complete_host_examples() {
        assert_eq!(ex_kk3_complete(5, 1).unwrap().value, 6);
        assert_eq!(ex_kk3_complete(6, 1).unwrap().value, 9);
        let fv = ex_kk3_complete(14, 2).unwrap();
        assert_eq!(fv.value, 55);
        assert!(fv.in_proved_range);
        assert!(matches!(ex_kk3_complete(5, 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn applicability_matrix() {
        // Tiny four-partite instance with k = 2, n_1 = 1: the shifted form
        // is out of range, the piecewise and partition forms still apply.
        let ids: Vec<FormulaId> = applicable_formulas(&ms(&[1, 1, 1, 1]), 3, 2)
            .iter()
            .map(|f| f.id)
            .collect();
        assert_eq!(ids, vec![FormulaId::Thm13, FormulaId::Conj15]);

        let ids: Vec<FormulaId> = applicable_formulas(&ms(&[2, 2, 2]), 3, 2)
            .iter()
            .map(|f| f.id)
            .collect();
        assert_eq!(ids, vec![FormulaId::Thm12, FormulaId::Conj16, FormulaId::Conj15]);

        let ids: Vec<FormulaId> = applicable_formulas(&ms(&[1, 1, 1, 1, 1]), 3, 1)
            .iter()
            .map(|f| f.id)
            .collect();
        assert_eq!(
            ids,
            vec![FormulaId::Thm11, FormulaId::Conj16, FormulaId::Conj15, FormulaId::Erdos]
        );
    }

    #[test]
    fn id_tokens_round_trip() {
        for id in [
            FormulaId::Thm11,
            FormulaId::Thm12,
            FormulaId::Thm13,
            FormulaId::Thm16,
            FormulaId::Conj15,
            FormulaId::Conj16,
            FormulaId::Kk2,
            FormulaId::Erdos,
        ] {
            assert_eq!(id.as_token().parse::<FormulaId>().unwrap(), id);
        }
        assert!("thm99".parse::<FormulaId>().is_err());
    }
}
