//! Monotone bijections between finite ordinals.

use crate::graph::functions;

/// All monotone bijections `Fin m -> Fin n`, found by exhaustive search over
/// every map.
pub fn monotone_bijections(m: usize, n: usize) -> Vec<Vec<usize>> {
    functions(m, n).filter(|f| is_bijection(f, n) && is_monotone(f)).collect()
}

/// Whether any bijection `Fin m -> Fin n` exists, by exhaustive search.
pub fn bijection_exists(m: usize, n: usize) -> bool {
    functions(m, n).any(|f| is_bijection(&f, n))
}

pub fn is_bijection(f: &[usize], n: usize) -> bool {
    let mut hit = vec![false; n];
    for &v in f {
        if hit[v] {
            return false;
        }
        hit[v] = true;
    }
    hit.into_iter().all(|h| h)
}

/// `i <= j` implies `f i <= f j`.
pub fn is_monotone(f: &[usize]) -> bool {
    (0..f.len()).all(|i| (i..f.len()).all(|j| f[i] <= f[j]))
}
