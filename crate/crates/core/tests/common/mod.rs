//! Independent oracles and input generators shared by the integration tests.

#![allow(dead_code)]

use proptest::prelude::*;

/// Words over a tiny alphabet so that repeats and near-misses are common.
pub fn word() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => "[ab]{1,2}",
        2 => "[a-d]{1,4}",
        1 => "[a-z,.]{1,7}",
    ]
}

pub fn words(min: usize, max: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(word(), min..=max)
}

/// Reference (non-empty) and hypothesis, each at most `max` words.
pub fn pair(max: usize) -> impl Strategy<Value = (Vec<String>, Vec<String>)> {
    (words(1, max), words(0, max))
}

pub fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

/// Exhaustive edit distance by plain recursion.
pub fn brute_edit<T: PartialEq>(x: &[T], y: &[T]) -> usize {
    match (x.split_first(), y.split_first()) {
        (None, _) => y.len(),
        (_, None) => x.len(),
        (Some((a, xs)), Some((b, ys))) => {
            let diag = brute_edit(xs, ys) + usize::from(a != b);
            let del = brute_edit(xs, y) + 1;
            let ins = brute_edit(x, ys) + 1;
            diag.min(del).min(ins)
        }
    }
}

/// Character Levenshtein distance, textbook full table.
pub fn char_lev(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=b.len() {
        d[0][j] = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

/// Minimum regularized assignment cost over every partial matching of
/// reference words to hypothesis words; unmatched words pay half their
/// length plus `γ/N`.
pub fn brute_assignment(x: &[String], y: &[String], gamma: f64) -> f64 {
    struct Search<'a> {
        x: &'a [String],
        y: &'a [String],
        gamma: f64,
        used: Vec<bool>,
        best: f64,
    }

    impl Search<'_> {
        fn dummy(&self, w: &str) -> f64 {
            w.chars().count() as f64 / 2.0 + self.gamma / self.x.len() as f64
        }

        fn visit(&mut self, j: usize, acc: f64) {
            if j == self.x.len() {
                let inserted: f64 = (0..self.y.len())
                    .filter(|&k| !self.used[k])
                    .map(|k| self.dummy(&self.y[k]))
                    .sum();
                self.best = self.best.min(acc + inserted);
                return;
            }
            let del = self.dummy(&self.x[j]);
            self.visit(j + 1, acc + del);
            for k in 0..self.y.len() {
                if !self.used[k] {
                    let cell = char_lev(&self.x[j], &self.y[k]) as f64
                        + self.gamma * j.abs_diff(k) as f64 / self.x.len() as f64;
                    self.used[k] = true;
                    self.visit(j + 1, acc + cell);
                    self.used[k] = false;
                }
            }
        }
    }

    let mut s = Search {
        x,
        y,
        gamma,
        used: vec![false; y.len()],
        best: f64::INFINITY,
    };
    s.visit(0, 0.0);
    s.best
}

/// Multiset overlap by sorting both sides.
pub fn sorted_overlap(x: &[String], y: &[String]) -> usize {
    let mut a = x.to_vec();
    let mut b = y.to_vec();
    a.sort();
    b.sort();
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    common
}
