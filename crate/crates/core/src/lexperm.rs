//! Lexicographic permutation stepping shared by the brute-force oracles.

/// Rearranges `v` into the next permutation in lexicographic order.
/// Returns `false` (leaving `v` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Calls `f` on every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut v: Vec<usize> = (0..n).collect();
    loop {
        f(&v);
        if !next_permutation(&mut v) {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_factorial() {
        let mut seen = 0;
        for_each_permutation(5, |_| seen += 1);
        assert_eq!(seen, 120);
    }

    #[test]
    fn lexicographic_order() {
        let mut all = Vec::new();
        for_each_permutation(3, |p| all.push(p.to_vec()));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn empty_and_singleton() {
        let mut n = 0;
        for_each_permutation(0, |p| {
            assert!(p.is_empty());
            n += 1
        });
        assert_eq!(n, 1);
    }
}
