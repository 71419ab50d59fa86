use std::collections::HashMap;

use rayon::prelude::*;

use super::{canonical_order, generate_candidates, ItemSet, MinerConfig};
use crate::corpus::Transaction;

/// Every itemset whose support is at least `cfg.min_support()`, in canonical
/// order (size ascending, support descending, items ascending).
///
/// One counting pass per level. Counting is split over `cfg.partitions()`
/// chunks of the input and the integer counts summed, so the result does not
/// depend on the partitioning.
pub fn frequent_itemsets(tx: &[Transaction], cfg: &MinerConfig) -> Vec<ItemSet> {
    let total = tx.len() as u64;
    if total == 0 {
        return Vec::new();
    }
    let min_count = cfg.min_support().min_count(total);
    let max_size = cfg.max_itemset_size().unwrap_or(usize::MAX);
    let chunk = tx.len().div_ceil(cfg.partitions());

    // Level 1.
    let single_counts = tx
        .par_chunks(chunk)
        .map(|part| {
            let mut counts: HashMap<&str, u64> = HashMap::new();
            for t in part {
                for item in t.items() {
                    *counts.entry(item).or_default() += 1;
                }
            }
            counts
        })
        .reduce(HashMap::new, |mut a, b| {
            for (item, n) in b {
                *a.entry(item).or_default() += n;
            }
            a
        });
    let mut vocab: Vec<(&str, u64)> = single_counts
        .into_iter()
        .filter(|&(_, n)| n >= min_count)
        .collect();
    // Ids follow string order, so id sequences sort like item sequences.
    vocab.sort_unstable();

    let mut out: Vec<ItemSet> = vocab
        .iter()
        .map(|&(item, count)| ItemSet {
            items: vec![item.to_owned()],
            count,
            total,
        })
        .collect();
    if vocab.is_empty() || max_size < 2 {
        out.sort_by(canonical_order);
        return out;
    }

    let ids: HashMap<&str, u32> = vocab
        .iter()
        .enumerate()
        .map(|(id, &(item, _))| (item, id as u32))
        .collect();
    let encoded: Vec<Vec<u32>> = tx
        .iter()
        .filter_map(|t| {
            let row: Vec<u32> = t.items().filter_map(|i| ids.get(i).copied()).collect();
            (row.len() >= 2).then_some(row)
        })
        .collect();

    let mut level: Vec<Vec<u32>> = (0..vocab.len() as u32).map(|id| vec![id]).collect();
    let mut size = 1;
    while size < max_size {
        let candidates =
            generate_candidates(&level).expect("frequent level is uniform and canonical");
        if candidates.is_empty() {
            break;
        }
        size += 1;
        let counts = count_candidates(&encoded, &candidates, size, cfg.partitions());
        level = Vec::new();
        for (candidate, count) in candidates.into_iter().zip(counts) {
            if count >= min_count {
                out.push(ItemSet {
                    items: candidate
                        .iter()
                        .map(|&id| vocab[id as usize].0.to_owned())
                        .collect(),
                    count,
                    total,
                });
                level.push(candidate);
            }
        }
        if level.is_empty() {
            break;
        }
    }

    out.sort_by(canonical_order);
    out
}

fn count_candidates(
    rows: &[Vec<u32>],
    candidates: &[Vec<u32>],
    size: usize,
    partitions: usize,
) -> Vec<u64> {
    let index: HashMap<&[u32], usize> = candidates
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    if rows.is_empty() {
        return vec![0; candidates.len()];
    }
    let chunk = rows.len().div_ceil(partitions);
    rows.par_chunks(chunk)
        .map(|part| {
            let mut counts = vec![0u64; candidates.len()];
            let mut combo = Vec::with_capacity(size);
            for row in part {
                if row.len() < size {
                    continue;
                }
                if binomial_at_most(row.len(), size, candidates.len()) {
                    for_each_combination(row, size, &mut combo, |subset| {
                        if let Some(&i) = index.get(subset) {
                            counts[i] += 1;
                        }
                    });
                } else {
                    for (i, c) in candidates.iter().enumerate() {
                        if is_sorted_subset(c, row) {
                            counts[i] += 1;
                        }
                    }
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; candidates.len()],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// `C(n, k) <= limit`, without overflowing.
fn binomial_at_most(n: usize, k: usize, limit: usize) -> bool {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > limit as u128 {
            return false;
        }
    }
    true
}

fn for_each_combination(
    row: &[u32],
    size: usize,
    buf: &mut Vec<u32>,
    mut visit: impl FnMut(&[u32]),
) {
    let n = row.len();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        buf.clear();
        buf.extend(idx.iter().map(|&i| row[i]));
        visit(buf);
        // Advance the rightmost index that still has room.
        let Some(pos) = (0..size).rev().find(|&p| idx[p] < n - size + p) else {
            return;
        };
        idx[pos] += 1;
        for p in pos + 1..size {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

fn is_sorted_subset(needle: &[u32], hay: &[u32]) -> bool {
    let mut hay = hay.iter();
    needle.iter().all(|x| hay.any(|y| y == x))
}
