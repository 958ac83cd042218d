//! Frequent-itemset mining over log attributes.
//!
//! Two miners share this module. [`apriori`](apriori::apriori) is the
//! classic level-wise algorithm on integer-encoded transactions:
//! candidate generation by prefix join, pruning by the downward-closure
//! property, support counting by scanning the database.
//! [`custom_apriori`] is the grouped variant operating directly on
//! records: it joins co-occurring (ip, url, path) values and prunes
//! groups whose successful hits fall below the threshold, producing the
//! four co-relation tables. [`generate_rules`] turns frequent itemsets
//! into association rules filtered by minimum confidence.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::parser::LogRecord;

mod apriori;
mod corelation;
mod rules;

pub use apriori::{apriori, apriori_gen, has_infrequent_subset};
pub use corelation::{custom_apriori, CoRelationRow, CoRelationShape, CoRelationTables};
pub use rules::{generate_rules, AssociationRule};

/// Which record attribute an item came from. The variant order fixes the
/// canonical item order: ip items sort before url items before path
/// items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemAttribute {
    Ip,
    Url,
    Path,
}

impl ItemAttribute {
    pub fn name(&self) -> &'static str {
        match self {
            ItemAttribute::Ip => "ip",
            ItemAttribute::Url => "url",
            ItemAttribute::Path => "path",
        }
    }
}

/// One market-basket item: an attribute tagged with its value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Item {
    pub attribute: ItemAttribute,
    pub value: String,
}

impl Item {
    pub fn new(attribute: ItemAttribute, value: impl Into<String>) -> Self {
        Item {
            attribute,
            value: value.into(),
        }
    }

    pub fn url(value: impl Into<String>) -> Self {
        Item::new(ItemAttribute::Url, value)
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.attribute.name(), self.value)
    }
}

/// Dense integer handle for an [`Item`], assigned by an
/// [`ItemDictionary`]. Itemsets are sorted lists of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemId(pub u32);

/// Bijective mapping between items and their dense ids.
#[derive(Debug, Clone, Default)]
pub struct ItemDictionary {
    items: Vec<Item>,
    index: HashMap<Item, ItemId>,
}

impl ItemDictionary {
    pub fn new() -> Self {
        ItemDictionary::default()
    }

    /// Returns the id for `item`, assigning the next dense id on first
    /// sight.
    pub fn intern(&mut self, item: Item) -> ItemId {
        if let Some(&id) = self.index.get(&item) {
            return id;
        }
        let id = ItemId(self.items.len() as u32);
        self.items.push(item.clone());
        self.index.insert(item, id);
        id
    }

    pub fn get(&self, id: ItemId) -> Option<&Item> {
        self.items.get(id.0 as usize)
    }

    pub fn id_of(&self, item: &Item) -> Option<ItemId> {
        self.index.get(item).copied()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Resolves an itemset back to items, in the itemset's order.
    pub fn resolve(&self, itemset: &[ItemId]) -> Vec<Item> {
        itemset
            .iter()
            .map(|&id| self.get(id).expect("id minted by this dictionary").clone())
            .collect()
    }
}

/// One basket: a duplicate-free, sorted set of item ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    id: u64,
    items: Vec<ItemId>,
}

impl Transaction {
    /// Builds a transaction, sorting and deduplicating the items.
    /// Transactions are never empty.
    pub fn new(id: u64, mut items: Vec<ItemId>) -> Self {
        items.sort_unstable();
        items.dedup();
        assert!(!items.is_empty(), "transaction {id} has no items");
        Transaction { id, items }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn items(&self) -> &[ItemId] {
        &self.items
    }

    /// True when every id of the sorted `itemset` occurs in this
    /// transaction.
    pub fn contains_all(&self, itemset: &[ItemId]) -> bool {
        let mut mine = self.items.iter();
        'outer: for wanted in itemset {
            for &have in mine.by_ref() {
                match have.cmp(wanted) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }
}

/// A frequent (or candidate) itemset with its exact support count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemsetSupport {
    /// Strictly sorted item ids.
    pub itemset: Vec<ItemId>,
    /// Number of transactions containing the itemset.
    pub support: u64,
}

/// How records group into transactions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransactionScheme {
    /// One basket per distinct client ip, holding the set of urls that ip
    /// requested successfully.
    PerIp,
}

/// Encodes records as transactions plus the dictionary that names the
/// items. Ids are assigned in canonical item order, so id order and item
/// order agree. Ips without a single successful request produce no
/// basket.
pub fn build_transactions(
    records: &[LogRecord],
    scheme: TransactionScheme,
) -> (Vec<Transaction>, ItemDictionary) {
    match scheme {
        TransactionScheme::PerIp => {}
    }

    let mut baskets: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for record in records {
        if record.is_successful() {
            baskets
                .entry(record.ip.as_str())
                .or_default()
                .insert(record.url.as_str());
        }
    }

    let mut dictionary = ItemDictionary::new();
    let distinct_urls: BTreeSet<&str> = baskets.values().flatten().copied().collect();
    for url in distinct_urls {
        dictionary.intern(Item::url(url));
    }

    let transactions = baskets
        .into_values()
        .enumerate()
        .map(|(idx, urls)| {
            let items = urls
                .into_iter()
                .map(|url| {
                    dictionary
                        .id_of(&Item::url(url))
                        .expect("url interned above")
                })
                .collect();
            Transaction::new(idx as u64, items)
        })
        .collect();

    (transactions, dictionary)
}
