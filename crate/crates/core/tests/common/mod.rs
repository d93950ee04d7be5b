//! Brute-force reference used to cross-check the library. Written against
//! plain vectors only; it shares no code with `mincode::codes`.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn oracle_code(m: u64, row1: &[u64], row2: &[u64]) -> BTreeSet<Vec<u64>> {
    let mut words = BTreeSet::new();
    for a in 0..m {
        for b in 0..m {
            let w = row1
                .iter()
                .zip(row2)
                .map(|(&x, &y)| (a * x + b * y) % m)
                .collect();
            words.insert(w);
        }
    }
    words
}

fn oracle_covers(u: &[u64], v: &[u64]) -> bool {
    u.iter().zip(v).all(|(&a, &b)| b == 0 || a != 0)
}

/// Whether every nonzero word covers only its own scalar multiples.
pub fn oracle_is_minimal(m: u64, words: &BTreeSet<Vec<u64>>) -> bool {
    for u in words.iter().filter(|w| w.iter().any(|&x| x != 0)) {
        let multiples: BTreeSet<Vec<u64>> = (0..m)
            .map(|a| u.iter().map(|&x| a * x % m).collect())
            .collect();
        for v in words.iter().filter(|w| w.iter().any(|&x| x != 0)) {
            if oracle_covers(u, v) && !multiples.contains(v) {
                return false;
            }
        }
    }
    true
}

pub fn oracle_weight_range(words: &BTreeSet<Vec<u64>>) -> (usize, usize) {
    let weights: Vec<usize> = words
        .iter()
        .map(|w| w.iter().filter(|&&x| x != 0).count())
        .filter(|&w| w > 0)
        .collect();
    (
        *weights.iter().min().unwrap(),
        *weights.iter().max().unwrap(),
    )
}

pub fn is_prime_power(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let p = (2..=m).find(|d| m.is_multiple_of(*d)).unwrap();
    let mut r = m;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}
