//! Association types: planted trees with operation-labelled internal nodes,
//! one representative per class under the operations' slot symmetries.
//!
//! Type ids are global and increase with degree. A node is canonical when
//! its tuple of child ids is lexicographically maximal among the images
//! under the operation's rearrangement group; for a skew binary bracket
//! this says `(deg A, rank A) >= (deg B, rank B)` in `[A, B]`.

use std::collections::HashMap;
use std::ops::Range;

use super::signature::{OperationSignature, SignedArrangement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationType {
    pub id: u32,
    pub degree: usize,
    /// `None` for the bare variable.
    pub op: Option<usize>,
    pub children: Vec<u32>,
    /// Bit `k` set when operation `k` occurs somewhere in the tree.
    pub ops_mask: u32,
}

impl AssociationType {
    pub fn is_leaf(&self) -> bool {
        self.op.is_none()
    }
}

/// A node whose key stabiliser is nontrivial: the children at `spans`
/// (leaf offsets within the monomial) may be rearranged by any element of
/// `stab` without changing the type.
#[derive(Debug, Clone)]
pub(crate) struct FlexNode {
    pub start: usize,
    pub spans: Vec<Range<usize>>,
    pub stab: Vec<SignedArrangement>,
}

/// Postorder list of the flexible nodes of one type.
#[derive(Debug, Clone, Default)]
pub(crate) struct TypeProgram {
    pub nodes: Vec<FlexNode>,
}

#[derive(Debug, Clone)]
pub struct TypeRegistry {
    types: Vec<AssociationType>,
    by_degree: Vec<Range<u32>>,
    lookup: HashMap<(usize, Vec<u32>), u32>,
    programs: Vec<TypeProgram>,
}

/// Compositions of `n` into `k` positive parts, lexicographically descending.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in (1..=n.saturating_sub(k - 1)).rev() {
            cur.push(first);
            rec(n - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && n >= k {
        rec(n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn permuted<T: Copy>(xs: &[T], a: &SignedArrangement) -> Vec<T> {
    a.perm.iter().map(|&s| xs[s as usize]).collect()
}

impl TypeRegistry {
    /// Enumerates all types of degree `1..=max_degree`.
    ///
    /// Within a degree the order is: operation index, then degree
    /// composition (descending), then child ids lexicographically.
    pub fn build(ops: &[OperationSignature], groups: &[Vec<SignedArrangement>], max_degree: usize) -> Self {
        let mut reg = TypeRegistry {
            types: Vec::new(),
            by_degree: vec![0..0; max_degree + 1],
            lookup: HashMap::new(),
            programs: Vec::new(),
        };
        reg.types.push(AssociationType { id: 0, degree: 1, op: None, children: Vec::new(), ops_mask: 0 });
        if max_degree >= 1 {
            reg.by_degree[1] = 0..1;
        }
        for d in 2..=max_degree {
            let start = reg.types.len() as u32;
            for (k, op) in ops.iter().enumerate() {
                for comp in compositions(d, op.arity) {
                    let ranges: Vec<Range<u32>> = comp.iter().map(|&c| reg.by_degree[c].clone()).collect();
                    if ranges.iter().any(|r| r.is_empty()) {
                        continue;
                    }
                    let mut tuple: Vec<u32> = ranges.iter().map(|r| r.start).collect();
                    'tuples: loop {
                        if groups[k].iter().all(|a| permuted(&tuple, a) <= tuple) {
                            let mask = tuple.iter().fold(1u32 << k, |m, &c| m | reg.types[c as usize].ops_mask);
                            let id = reg.types.len() as u32;
                            reg.lookup.insert((k, tuple.clone()), id);
                            reg.types.push(AssociationType {
                                id,
                                degree: d,
                                op: Some(k),
                                children: tuple.clone(),
                                ops_mask: mask,
                            });
                        }
                        // odometer, last slot fastest
                        let mut s = tuple.len();
                        loop {
                            if s == 0 {
                                break 'tuples;
                            }
                            s -= 1;
                            tuple[s] += 1;
                            if tuple[s] < ranges[s].end {
                                break;
                            }
                            tuple[s] = ranges[s].start;
                        }
                    }
                }
            }
            reg.by_degree[d] = start..reg.types.len() as u32;
        }
        reg.programs = (0..reg.types.len()).map(|t| reg.make_program(t as u32, groups)).collect();
        reg
    }

    fn make_program(&self, ty: u32, groups: &[Vec<SignedArrangement>]) -> TypeProgram {
        fn rec(reg: &TypeRegistry, ty: u32, start: usize, groups: &[Vec<SignedArrangement>], out: &mut Vec<FlexNode>) {
            let t = &reg.types[ty as usize];
            let Some(op) = t.op else { return };
            let mut spans = Vec::with_capacity(t.children.len());
            let mut off = start;
            for &c in &t.children {
                let len = reg.types[c as usize].degree;
                rec(reg, c, off, groups, out);
                spans.push(off..off + len);
                off += len;
            }
            let stab: Vec<SignedArrangement> =
                groups[op].iter().filter(|a| permuted(&t.children, a) == t.children).cloned().collect();
            if stab.len() > 1 {
                out.push(FlexNode { start, spans, stab });
            }
        }
        let mut nodes = Vec::new();
        rec(self, ty, 0, groups, &mut nodes);
        TypeProgram { nodes }
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn get(&self, id: u32) -> &AssociationType {
        &self.types[id as usize]
    }

    pub fn ids_of_degree(&self, d: usize) -> Range<u32> {
        self.by_degree.get(d).cloned().unwrap_or(0..0)
    }

    pub fn of_degree(&self, d: usize) -> &[AssociationType] {
        let r = self.ids_of_degree(d);
        &self.types[r.start as usize..r.end as usize]
    }

    pub fn find(&self, op: usize, children: &[u32]) -> Option<u32> {
        self.lookup.get(&(op, children.to_vec())).copied()
    }

    pub(crate) fn program(&self, id: u32) -> &TypeProgram {
        &self.programs[id as usize]
    }

    /// Preorder shape such as `[[--]-]`, using the given bracket per operation.
    pub fn shape_with(&self, id: u32, delims: &dyn Fn(usize) -> (char, char)) -> String {
        let mut s = String::new();
        self.shape_rec(id, delims, &mut s);
        s
    }

    fn shape_rec(&self, id: u32, delims: &dyn Fn(usize) -> (char, char), out: &mut String) {
        let t = self.get(id);
        match t.op {
            None => out.push('-'),
            Some(k) => {
                let (o, c) = delims(k);
                out.push(o);
                for &ch in &t.children {
                    self.shape_rec(ch, delims, out);
                }
                out.push(c);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_descend() {
        assert_eq!(compositions(4, 2), vec![vec![3, 1], vec![2, 2], vec![1, 3]]);
        assert_eq!(compositions(4, 3), vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]);
        assert!(compositions(2, 3).is_empty());
    }
}
