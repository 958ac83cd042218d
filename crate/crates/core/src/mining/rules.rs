//! Association-rule generation from frequent itemsets.

use std::collections::HashMap;

use crate::error::DomainError;
use crate::scalar::Scalar;

use super::{ItemId, ItemsetSupport};

/// `antecedent => consequent` with its support count and confidence.
/// Consequents are single items: for a frequent k-itemset the candidates
/// are the k rules that peel one item off into the consequent.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociationRule<S> {
    pub antecedent: Vec<ItemId>,
    pub consequent: Vec<ItemId>,
    /// Support of antecedent ∪ consequent.
    pub support: u64,
    /// Support of the antecedent alone; `confidence` is exactly
    /// `support / antecedent_support`.
    pub antecedent_support: u64,
    pub confidence: S,
}

/// Emits every single-consequent rule over the frequent itemsets whose
/// confidence reaches `min_confidence`, sorted by (antecedent,
/// consequent).
///
/// `levels` is the grouped output of [`super::apriori`]; downward closure
/// guarantees each antecedent's support is present, and a missing one is
/// reported as [`DomainError::ClosureViolation`].
pub fn generate_rules<S: Scalar>(
    levels: &[Vec<ItemsetSupport>],
    min_confidence: &S,
) -> Result<Vec<AssociationRule<S>>, DomainError> {
    let mut support_of: HashMap<&[ItemId], u64> = HashMap::new();
    for level in levels {
        for frequent in level {
            support_of.insert(&frequent.itemset, frequent.support);
        }
    }

    let mut rules = Vec::new();
    for level in levels.iter().skip(1) {
        for frequent in level {
            for skip in 0..frequent.itemset.len() {
                let antecedent: Vec<ItemId> = frequent
                    .itemset
                    .iter()
                    .enumerate()
                    .filter(|(idx, _)| *idx != skip)
                    .map(|(_, &id)| id)
                    .collect();
                let consequent = vec![frequent.itemset[skip]];
                let antecedent_support = *support_of
                    .get(antecedent.as_slice())
                    .ok_or(DomainError::ClosureViolation)?;
                let confidence = S::from_count_ratio(frequent.support, antecedent_support);
                if confidence >= *min_confidence {
                    rules.push(AssociationRule {
                        antecedent,
                        consequent,
                        support: frequent.support,
                        antecedent_support,
                        confidence,
                    });
                }
            }
        }
    }
    rules.sort_by(|a, b| {
        a.antecedent
            .cmp(&b.antecedent)
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
    Ok(rules)
}
