//! Exhaustive scans over finite tuple spaces.

use rayon::prelude::*;

/// Returns the lexicographically first tuple in `dims[0] × dims[1] × …` for
/// which `violates` holds. The first coordinate is split across worker
/// threads; the answer does not depend on the number of workers.
pub fn first_violation<F>(dims: &[usize], violates: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    if dims.iter().any(|&d| d == 0) {
        return None;
    }
    if dims.is_empty() {
        return violates(&[]).then(Vec::new);
    }
    (0..dims[0]).into_par_iter().find_map_first(|first| {
        let mut tuple = vec![0; dims.len()];
        tuple[0] = first;
        loop {
            if violates(&tuple) {
                return Some(tuple);
            }
            if !advance(&mut tuple[1..], &dims[1..]) {
                return None;
            }
        }
    })
}

/// Odometer step; returns false after the last tuple.
pub fn advance(tuple: &mut [usize], dims: &[usize]) -> bool {
    for i in (0..tuple.len()).rev() {
        tuple[i] += 1;
        if tuple[i] < dims[i] {
            return true;
        }
        tuple[i] = 0;
    }
    false
}
