use crate::algebra::Monomial;

/// Dimension of `k[x]/in(I)` from the leading monomials of a Gröbner basis:
/// the largest variable set containing no leading monomial's support, found as
/// the complement of a minimum hitting set. `-1` when a leading monomial is 1.
pub fn dim_from_leading_monomials(arity: usize, leading: &[Monomial]) -> i64 {
    if leading.iter().any(|m| m.is_one()) {
        return -1;
    }
    let mut edges: Vec<Vec<usize>> = leading.iter().map(|m| m.support().collect()).collect();
    edges.sort_by_key(|e| e.len());
    edges.dedup();
    // Keep only inclusion-minimal supports.
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for e in edges {
        if !minimal.iter().any(|m| m.iter().all(|v| e.contains(v))) {
            minimal.push(e);
        }
    }
    arity as i64 - min_hitting_set(arity, &minimal) as i64
}

/// Size of a smallest vertex set meeting every edge (branch and bound).
pub fn min_hitting_set(arity: usize, edges: &[Vec<usize>]) -> usize {
    let mut chosen = vec![false; arity];
    let mut best = greedy_bound(arity, edges);
    search(edges, &mut chosen, 0, &mut best);
    best
}

fn greedy_bound(arity: usize, edges: &[Vec<usize>]) -> usize {
    let mut hit = vec![false; edges.len()];
    let mut count = 0;
    loop {
        let mut freq = vec![0usize; arity];
        for (e, h) in edges.iter().zip(&hit) {
            if !h {
                for &v in e {
                    freq[v] += 1;
                }
            }
        }
        let Some((v, &f)) = freq.iter().enumerate().max_by_key(|(i, f)| (**f, std::cmp::Reverse(*i))) else {
            return count;
        };
        if f == 0 {
            return count;
        }
        count += 1;
        for (e, h) in edges.iter().zip(hit.iter_mut()) {
            if e.contains(&v) {
                *h = true;
            }
        }
    }
}

/// Lower bound: number of pairwise disjoint unhit edges found greedily.
fn disjoint_lower_bound(edges: &[&Vec<usize>], arity_hint: usize) -> usize {
    let mut used = vec![false; arity_hint];
    let mut n = 0;
    for e in edges {
        if e.iter().all(|&v| !used[v]) {
            for &v in e.iter() {
                used[v] = true;
            }
            n += 1;
        }
    }
    n
}

fn search(edges: &[Vec<usize>], chosen: &mut Vec<bool>, size: usize, best: &mut usize) {
    let open: Vec<&Vec<usize>> = edges
        .iter()
        .filter(|e| !e.iter().any(|&v| chosen[v]))
        .collect();
    if open.is_empty() {
        *best = (*best).min(size);
        return;
    }
    if size + disjoint_lower_bound(&open, chosen.len()) >= *best {
        return;
    }
    let pivot = open.iter().min_by_key(|e| e.len()).expect("nonempty");
    for &v in pivot.iter() {
        chosen[v] = true;
        search(edges, chosen, size + 1, best);
        chosen[v] = false;
    }
}

/// A maximal set of variables independent modulo the leading ideal, of size `dim`.
pub fn independent_set(arity: usize, leading: &[Monomial]) -> Option<Vec<usize>> {
    let d = dim_from_leading_monomials(arity, leading);
    if d < 0 {
        return None;
    }
    let edges: Vec<Vec<usize>> = leading.iter().map(|m| m.support().collect()).collect();
    // choose a complement of a minimum hitting set, preferring later variables
    let mut set: Vec<usize> = Vec::new();
    fn extend(
        edges: &[Vec<usize>],
        arity: usize,
        target: usize,
        start: usize,
        set: &mut Vec<usize>,
    ) -> bool {
        if set.len() == target {
            return true;
        }
        for v in (start..arity).rev() {
            if set.contains(&v) {
                continue;
            }
            set.push(v);
            let ok = !edges.iter().any(|e| e.iter().all(|u| set.contains(u)));
            if ok && extend(edges, arity, target, 0, set) {
                return true;
            }
            set.pop();
        }
        false
    }
    if extend(&edges, arity, d as usize, 0, &mut set) {
        set.sort_unstable();
        Some(set)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hitting_sets() {
        let m = |v: [u16; 4]| Monomial::new(v);
        assert_eq!(dim_from_leading_monomials(4, &[]), 4);
        assert_eq!(dim_from_leading_monomials(4, &[m([1, 0, 0, 0]), m([0, 1, 0, 0])]), 2);
        // xy, zw -> one from each: dim 2
        assert_eq!(dim_from_leading_monomials(4, &[m([1, 1, 0, 0]), m([0, 0, 1, 1])]), 2);
        assert_eq!(dim_from_leading_monomials(4, &[m([0, 0, 0, 0])]), -1);
        let s = independent_set(4, &[m([1, 1, 0, 0]), m([0, 0, 1, 1])]).unwrap();
        assert_eq!(s.len(), 2);
    }
}
