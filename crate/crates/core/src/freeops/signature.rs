use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::FreeError;

/// Swapping argument slots `i` and `j` (1-based) multiplies by `sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize, i8)", into = "(usize, usize, i8)")]
pub struct SlotSwap {
    pub i: usize,
    pub j: usize,
    pub sign: i8,
}

impl From<(usize, usize, i8)> for SlotSwap {
    fn from((i, j, sign): (usize, usize, i8)) -> Self {
        SlotSwap { i, j, sign }
    }
}

impl From<SlotSwap> for (usize, usize, i8) {
    fn from(s: SlotSwap) -> Self {
        (s.i, s.j, s.sign)
    }
}

/// Rearrangement of arguments: slot `s` of the image holds argument
/// `perm[s]` of the original, and the term picks up `sign`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedArrangement {
    pub perm: Vec<u8>,
    pub sign: i8,
}

impl SignedArrangement {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationSignature {
    pub name: String,
    pub arity: usize,
    #[serde(default)]
    pub symmetries: Vec<SlotSwap>,
    /// Opening and closing bracket used when printing and parsing.
    pub delims: String,
}

impl OperationSignature {
    pub fn new(name: &str, arity: usize, symmetries: &[(usize, usize, i8)], delims: &str) -> Self {
        OperationSignature {
            name: name.to_string(),
            arity,
            symmetries: symmetries.iter().copied().map(SlotSwap::from).collect(),
            delims: delims.to_string(),
        }
    }

    pub fn open(&self) -> char {
        self.delims.chars().next().unwrap_or('(')
    }

    pub fn close(&self) -> char {
        self.delims.chars().nth(1).unwrap_or(')')
    }

    pub fn validate(&self) -> Result<(), FreeError> {
        let bad = |m: String| Err(FreeError::Signature(format!("{}: {m}", self.name)));
        if !(2..=8).contains(&self.arity) {
            return bad(format!("arity {} is outside 2..=8", self.arity));
        }
        if self.delims.chars().count() != 2 {
            return bad(format!("delimiters {:?} must be two characters", self.delims));
        }
        for s in &self.symmetries {
            if s.i == 0 || s.j == 0 || s.i > self.arity || s.j > self.arity || s.i == s.j {
                return bad(format!("slot pair ({}, {}) out of range", s.i, s.j));
            }
            if s.sign != 1 && s.sign != -1 {
                return bad(format!("sign {} is not ±1", s.sign));
            }
        }
        self.group().map(|_| ())
    }

    /// Closure of the generators; the identity comes first. Fails when a
    /// rearrangement is forced to carry both signs, which would make every
    /// monomial of this operation vanish.
    pub fn group(&self) -> Result<Vec<SignedArrangement>, FreeError> {
        let id = SignedArrangement { perm: (0..self.arity as u8).collect(), sign: 1 };
        let mut sign_of: HashMap<Vec<u8>, i8> = HashMap::new();
        sign_of.insert(id.perm.clone(), 1);
        let mut out = vec![id];
        let mut next = 0;
        while next < out.len() {
            let cur = out[next].clone();
            next += 1;
            for g in &self.symmetries {
                let mut perm = cur.perm.clone();
                perm.swap(g.i - 1, g.j - 1);
                let sign = cur.sign * g.sign;
                match sign_of.get(&perm) {
                    Some(&s) if s != sign => {
                        return Err(FreeError::Signature(format!(
                            "{}: symmetries force a rearrangement to have both signs",
                            self.name
                        )))
                    }
                    Some(_) => {}
                    None => {
                        sign_of.insert(perm.clone(), sign);
                        out.push(SignedArrangement { perm, sign });
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_have_expected_orders() {
        let skew = OperationSignature::new("b", 2, &[(1, 2, -1)], "[]");
        assert_eq!(skew.group().unwrap().len(), 2);
        let full = OperationSignature::new("t", 3, &[(1, 2, 1), (2, 3, 1)], "{}");
        let g = full.group().unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|a| a.sign == 1));
        let alt = OperationSignature::new("t", 3, &[(1, 2, -1), (2, 3, -1)], "()");
        let g = alt.group().unwrap();
        let odd = g.iter().filter(|a| a.sign == -1).count();
        assert_eq!((g.len(), odd), (6, 3));
    }

    #[test]
    fn contradictory_symmetries_rejected() {
        let bad = OperationSignature::new("t", 3, &[(1, 2, -1), (2, 3, 1), (1, 3, 1)], "()");
        assert!(bad.validate().is_err());
        assert!(OperationSignature::new("t", 3, &[(1, 4, 1)], "()").validate().is_err());
        assert!(OperationSignature::new("t", 1, &[], "()").validate().is_err());
    }

    #[test]
    fn json_shape() {
        let s = OperationSignature::new("bracket", 2, &[(1, 2, -1)], "[]");
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["symmetries"], serde_json::json!([[1, 2, -1]]));
        let back: OperationSignature = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}
