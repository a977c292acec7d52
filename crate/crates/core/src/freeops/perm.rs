//! Permutations of `{0, .., d-1}` stored as image arrays.
//!
//! A permutation `s` sends variable `i` to `s[i]`; composition follows the
//! usual right-to-left convention so that acting by `s` then by `t` equals
//! acting by `compose(t, s)`.

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn identity(d: usize) -> Vec<u8> {
    (0..d as u8).collect()
}

pub fn is_permutation(s: &[u8]) -> bool {
    let mut seen = vec![false; s.len()];
    for &x in s {
        let x = x as usize;
        if x >= s.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// `(t ∘ s)(i) = t[s[i]]`.
pub fn compose(t: &[u8], s: &[u8]) -> Vec<u8> {
    debug_assert_eq!(t.len(), s.len());
    s.iter().map(|&i| t[i as usize]).collect()
}

pub fn inverse(s: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; s.len()];
    for (i, &x) in s.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

/// Rank of `s` in lexicographic order of `S_d` (Lehmer code).
pub fn lehmer_rank(s: &[u8]) -> usize {
    let d = s.len();
    let mut rank = 0usize;
    for i in 0..d {
        let smaller = s[i + 1..].iter().filter(|&&x| x < s[i]).count();
        rank = rank * (d - i) + smaller;
    }
    rank
}

/// All of `S_d` in lexicographic order.
pub fn all_permutations(d: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::with_capacity(factorial(d));
    let mut cur = identity(d);
    loop {
        out.push(cur.clone());
        if !next_permutation(&mut cur) {
            return out;
        }
    }
}

/// Advances `s` to its lexicographic successor; false at the last one.
pub fn next_permutation(s: &mut [u8]) -> bool {
    let n = s.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && s[i - 1] >= s[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while s[j] <= s[i - 1] {
        j -= 1;
    }
    s.swap(i - 1, j);
    s[i..].reverse();
    true
}

/// The transposition `(0 1)` and the cycle `i -> i+1 mod d`, which generate `S_d`.
pub fn coxeter_generators(d: usize) -> Vec<Vec<u8>> {
    if d < 2 {
        return Vec::new();
    }
    let mut swap = identity(d);
    swap.swap(0, 1);
    if d == 2 {
        return vec![swap];
    }
    let cycle: Vec<u8> = (0..d).map(|i| ((i + 1) % d) as u8).collect();
    vec![swap, cycle]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_lexicographic_and_ranked() {
        let all = all_permutations(4);
        assert_eq!(all.len(), 24);
        for (r, s) in all.iter().enumerate() {
            assert_eq!(lehmer_rank(s), r);
            assert!(is_permutation(s));
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn group_laws() {
        let all = all_permutations(4);
        for s in &all {
            assert_eq!(compose(s, &inverse(s)), identity(4));
            for t in all.iter().step_by(5) {
                let st = compose(s, t);
                assert_eq!(inverse(&st), compose(&inverse(t), &inverse(s)));
            }
        }
    }

    #[test]
    fn generators_reach_everything() {
        for d in 2..=5 {
            let gens = coxeter_generators(d);
            let mut seen = std::collections::HashSet::new();
            let mut stack = vec![identity(d)];
            seen.insert(identity(d));
            while let Some(s) = stack.pop() {
                for g in &gens {
                    let t = compose(g, &s);
                    if seen.insert(t.clone()) {
                        stack.push(t);
                    }
                }
            }
            assert_eq!(seen.len(), factorial(d));
        }
    }
}
