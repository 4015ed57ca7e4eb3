//! Test-side oracles shared by the integration tests.

use std::collections::BTreeMap;

use klr::cartan::CartanDatum;
use klr::character::Character;

pub type Words = BTreeMap<Vec<usize>, BTreeMap<i32, i64>>;

/// Quantum shuffle by recursion on the last letters: if the left word ends
/// in `a`, every letter of the right word has moved in front of it.
pub fn shuffle_words(u: &[usize], v: &[usize], datum: &CartanDatum) -> Vec<(Vec<usize>, i32)> {
    if u.is_empty() || v.is_empty() {
        return vec![([u, v].concat(), 0)];
    }
    let (a, u0) = (u[u.len() - 1], &u[..u.len() - 1]);
    let (b, v0) = (v[v.len() - 1], &v[..v.len() - 1]);
    let past: i64 = v.iter().map(|&j| datum.form(a, j)).sum();
    let mut out = Vec::new();
    for (mut w, e) in shuffle_words(u0, v, datum) {
        w.push(a);
        out.push((w, e - past as i32));
    }
    for (mut w, e) in shuffle_words(u, v0, datum) {
        w.push(b);
        out.push((w, e));
    }
    out
}

pub fn words_of(ch: &Character) -> Words {
    ch.terms().iter().map(|(w, c)| (w.letters().to_vec(), c.terms().filter(|(_, k)| *k != 0).collect())).collect()
}

pub fn oracle_shuffle(a: &Character, b: &Character, datum: &CartanDatum) -> Words {
    let mut out = Words::new();
    for (u, cu) in words_of(a) {
        for (v, cv) in words_of(b) {
            for (w, e) in shuffle_words(&u, &v, datum) {
                let slot = out.entry(w).or_default();
                for (du, ku) in &cu {
                    for (dv, kv) in &cv {
                        *slot.entry(du + dv + e).or_default() += ku * kv;
                    }
                }
            }
        }
    }
    for c in out.values_mut() {
        c.retain(|_, k| *k != 0);
    }
    out.retain(|_, c| !c.is_empty());
    out
}
