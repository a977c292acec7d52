//! Shuffle sums.
//!
//! A `(n1, .., nk)`-shuffle is a sequence `v` of `0..n` that increases
//! within each consecutive block of sizes `n1, .., nk`. Applied to an
//! ordered variable list `X`, it replaces `X[i]` by `X[v[i]]`. Sums are
//! alternating: each term carries the sign of `v` as a permutation.

use super::perm::identity;
use super::poly::MultilinearPoly;
use super::FreeError;
use crate::exactfield::Ring;

/// All shuffles for a composition, in lexicographic order.
pub fn shuffles(composition: &[usize]) -> Vec<Vec<u8>> {
    fn rec(blocks: &[usize], avail: &mut Vec<u8>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let Some((&size, rest)) = blocks.split_first() else {
            out.push(cur.clone());
            return;
        };
        // choose an increasing `size`-subset of `avail`
        fn choose(size: usize, from: usize, avail: &[u8], picked: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>) {
            if picked.len() == size {
                acc.push(picked.clone());
                return;
            }
            for i in from..avail.len() {
                picked.push(i);
                choose(size, i + 1, avail, picked, acc);
                picked.pop();
            }
        }
        let mut subsets = Vec::new();
        choose(size, 0, avail, &mut Vec::new(), &mut subsets);
        for s in subsets {
            let chosen: Vec<u8> = s.iter().map(|&i| avail[i]).collect();
            let mut remaining: Vec<u8> = avail.iter().copied().filter(|x| !chosen.contains(x)).collect();
            cur.extend_from_slice(&chosen);
            rec(rest, &mut remaining, cur, out);
            cur.truncate(cur.len() - size);
        }
    }
    let n: usize = composition.iter().sum();
    let mut out = Vec::new();
    rec(composition, &mut (0..n as u8).collect(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Sign of a permutation of `0..n`, by counting inversions.
pub fn sign(v: &[u8]) -> i8 {
    let inversions = (0..v.len()).flat_map(|i| (i + 1..v.len()).map(move |j| (i, j))).filter(|&(i, j)| v[i] > v[j]).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sum over shuffles v` of `sign(v)` times the template with `vars[i]`
/// replaced by `vars[v[i]]`.
pub fn shuffle_sum<R: Ring>(
    template: &MultilinearPoly<R>,
    composition: &[usize],
    vars: &[u8],
) -> Result<MultilinearPoly<R>, FreeError> {
    let n: usize = composition.iter().sum();
    if n != vars.len() {
        return Err(FreeError::DegreeMismatch { expected: n, found: vars.len() });
    }
    let d = template.degree();
    if vars.iter().any(|&x| x as usize >= d) {
        return Err(FreeError::NotMultilinear("shuffled variable outside the template".into()));
    }
    let mut out = MultilinearPoly::zero(template.ring().clone(), template.ops().clone(), d);
    let one = template.ring().one();
    let minus = template.ring().neg(&one);
    for v in shuffles(composition) {
        let mut sigma = identity(d);
        for (i, &x) in vars.iter().enumerate() {
            sigma[x as usize] = vars[v[i] as usize];
        }
        let c = if sign(&v) < 0 { &minus } else { &one };
        out.add_scaled(&template.apply_permutation(&sigma), c)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeops::perm::all_permutations;

    fn oracle(composition: &[usize]) -> Vec<Vec<u8>> {
        let n = composition.iter().sum();
        all_permutations(n)
            .into_iter()
            .filter(|p| {
                let mut off = 0;
                composition.iter().all(|&k| {
                    let ok = p[off..off + k].windows(2).all(|w| w[0] < w[1]);
                    off += k;
                    ok
                })
            })
            .collect()
    }

    #[test]
    fn signs_count_inversions() {
        assert_eq!(sign(&[0, 1, 2]), 1);
        assert_eq!(sign(&[1, 0, 2]), -1);
        assert_eq!(sign(&[1, 2, 0]), 1);
        assert_eq!(sign(&[0, 2, 1, 4, 3]), 1);
    }

    #[test]
    fn counts_match_exhaustive_filter() {
        assert_eq!(shuffles(&[2, 1]).len(), 3);
        assert_eq!(shuffles(&[2, 1, 2]).len(), 30);
        for comp in [vec![2, 1], vec![2, 1, 2], vec![1, 1, 1], vec![3, 2], vec![1, 3, 1]] {
            assert_eq!(shuffles(&comp), oracle(&comp));
        }
    }
}
