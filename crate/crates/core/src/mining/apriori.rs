//! Classic level-wise frequent-itemset search.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::DomainError;

use super::{ItemId, ItemsetSupport, Transaction};

fn check_sorted(itemset: &[ItemId]) -> Result<(), DomainError> {
    if itemset.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(DomainError::UnsortedItemset)
    }
}

/// True when some (k-1)-subset of `candidate` is missing from the
/// frequent (k-1)-itemsets. The empty itemset counts as frequent, so
/// 1-item candidates never have an infrequent subset.
pub fn has_infrequent_subset(candidate: &[ItemId], frequent_prev: &HashSet<Vec<ItemId>>) -> bool {
    if candidate.len() <= 1 {
        return false;
    }
    let mut subset = Vec::with_capacity(candidate.len() - 1);
    for skip in 0..candidate.len() {
        subset.clear();
        subset.extend(
            candidate
                .iter()
                .enumerate()
                .filter(|(idx, _)| *idx != skip)
                .map(|(_, &id)| id),
        );
        if !frequent_prev.contains(&subset) {
            return true;
        }
    }
    false
}

/// Candidate k-itemsets from the frequent (k-1)-itemsets.
///
/// Join step: two itemsets agreeing on their first k-2 items merge into
/// their union. Prune step: candidates with any infrequent (k-1)-subset
/// are deleted. Output is sorted and duplicate-free.
pub fn apriori_gen(frequent_prev: &[Vec<ItemId>]) -> Result<Vec<Vec<ItemId>>, DomainError> {
    let Some(first) = frequent_prev.first() else {
        return Ok(Vec::new());
    };
    let prev_len = first.len();
    for itemset in frequent_prev {
        if itemset.len() != prev_len {
            return Err(DomainError::MixedItemsetLengths {
                expected: prev_len,
                found: itemset.len(),
            });
        }
        check_sorted(itemset)?;
    }

    let mut sorted: Vec<&Vec<ItemId>> = frequent_prev.iter().collect();
    sorted.sort();
    sorted.dedup();

    let prev_set: HashSet<Vec<ItemId>> = sorted.iter().map(|s| (*s).clone()).collect();
    let mut candidates = Vec::new();
    for (i, left) in sorted.iter().enumerate() {
        for right in &sorted[i + 1..] {
            // lexical order keeps equal prefixes contiguous
            if left[..prev_len - 1] != right[..prev_len - 1] {
                break;
            }
            let mut candidate = (*left).clone();
            candidate.push(right[prev_len - 1]);
            if !has_infrequent_subset(&candidate, &prev_set) {
                candidates.push(candidate);
            }
        }
    }
    Ok(candidates)
}

/// Visits every k-combination of `items` in lexical order, reusing one
/// scratch buffer.
fn for_each_combination(items: &[ItemId], k: usize, mut visit: impl FnMut(&[ItemId])) {
    let n = items.len();
    if k == 0 || k > n {
        return;
    }
    let mut positions: Vec<usize> = (0..k).collect();
    let mut scratch: Vec<ItemId> = positions.iter().map(|&p| items[p]).collect();
    loop {
        visit(&scratch);
        let Some(i) = (0..k).rev().find(|&i| positions[i] < i + n - k) else {
            return;
        };
        positions[i] += 1;
        for j in i + 1..k {
            positions[j] = positions[j - 1] + 1;
        }
        for j in i..k {
            scratch[j] = items[positions[j]];
        }
    }
}

/// Number of k-subsets, saturating once it is clearly past `cap`.
fn combinations_capped(n: usize, k: usize, cap: u128) -> u128 {
    let mut result: u128 = 1;
    for i in 0..k.min(n - k) {
        result = result.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if result > cap {
            return cap.saturating_add(1);
        }
    }
    result
}

/// Exact candidate supports. Per transaction this either probes the
/// candidate index with each k-subset of the transaction, or walks the
/// candidate list with a containment check, whichever scan is smaller.
fn count_candidates(transactions: &[Transaction], candidates: &[Vec<ItemId>]) -> Vec<u64> {
    let Some(first) = candidates.first() else {
        return Vec::new();
    };
    let k = first.len();
    let index: HashMap<&[ItemId], usize> = candidates
        .iter()
        .enumerate()
        .map(|(idx, candidate)| (candidate.as_slice(), idx))
        .collect();
    let mut counts = vec![0u64; candidates.len()];
    for transaction in transactions {
        let items = transaction.items();
        if items.len() < k {
            continue;
        }
        let subsets = combinations_capped(items.len(), k, candidates.len() as u128);
        if subsets <= candidates.len() as u128 {
            for_each_combination(items, k, |subset| {
                if let Some(&idx) = index.get(subset) {
                    counts[idx] += 1;
                }
            });
        } else {
            for (idx, candidate) in candidates.iter().enumerate() {
                if transaction.contains_all(candidate) {
                    counts[idx] += 1;
                }
            }
        }
    }
    counts
}

/// Level-wise frequent-itemset mining: L1 from item counts, then
/// repeatedly generate candidates from the previous level, count them by
/// scanning the transactions, and keep those with support at or above
/// `min_support`. Returns the non-empty levels in order (`result[0]` is
/// L1). Supports are exact transaction counts.
pub fn apriori(
    transactions: &[Transaction],
    min_support: u64,
) -> Result<Vec<Vec<ItemsetSupport>>, DomainError> {
    if min_support == 0 {
        return Err(DomainError::ZeroMinSupport);
    }

    let mut item_counts: BTreeMap<ItemId, u64> = BTreeMap::new();
    for transaction in transactions {
        for &item in transaction.items() {
            *item_counts.entry(item).or_insert(0) += 1;
        }
    }
    let level_one: Vec<ItemsetSupport> = item_counts
        .into_iter()
        .filter(|&(_, support)| support >= min_support)
        .map(|(item, support)| ItemsetSupport {
            itemset: vec![item],
            support,
        })
        .collect();
    if level_one.is_empty() {
        return Ok(Vec::new());
    }

    let mut levels = vec![level_one];
    loop {
        let prev: Vec<Vec<ItemId>> = levels
            .last()
            .unwrap()
            .iter()
            .map(|f| f.itemset.clone())
            .collect();
        let candidates = apriori_gen(&prev)?;
        if candidates.is_empty() {
            break;
        }

        let counts = count_candidates(transactions, &candidates);
        let next: Vec<ItemsetSupport> = candidates
            .into_iter()
            .zip(counts)
            .filter(|&(_, support)| support >= min_support)
            .map(|(itemset, support)| ItemsetSupport { itemset, support })
            .collect();
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    Ok(levels)
}
