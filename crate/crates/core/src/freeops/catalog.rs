//! Named identities.
//!
//! Letters `a`, `b`, ... are the variables `x1`, `x2`, ...; `[,]` is the
//! bracket, `(,,)` the Lie-Yamaguti triple and `{,,}` the projected Jordan
//! triple. Each entry is returned in normal form with integer coefficients.

use std::sync::Arc;

use super::opset::OpSet;
use super::parse::parse_poly;
use super::poly::IntPoly;
use super::shuffle::shuffle_sum;
use super::FreeError;

pub const LY3: &str = "[[a,b],c]+[[b,c],a]+[[c,a],b]+(a,b,c)+(b,c,a)+(c,a,b)";
pub const LY4: &str = "([a,b],c,d)+([b,c],a,d)+([c,a],b,d)";
pub const LY5: &str = "(a,b,[c,d])-[(a,b,c),d]-[c,(a,b,d)]";
pub const LY6: &str = "(a,b,(c,d,e))-((a,b,c),d,e)-(c,(a,b,d),e)-(c,d,(a,b,e))";

pub const MALCEV: &str = "[[a,c],[b,d]]-[[[a,b],c],d]-[[[b,c],d],a]-[[[c,d],a],b]-[[[d,a],b],c]";
pub const FILIPPOV_H: &str = "[[[[a,b],c],d],e]+[[[[a,b],c],e],d]-[[[[a,b],d],c],e]-[[[[a,b],e],c],d]\
    +[[[[a,d],b],e],c]-[[[[a,d],e],b],c]+[[[[a,e],b],d],c]-[[[[a,e],d],b],c]\
    +2[[[a,b],[c,d]],e]+2[[[a,b],[c,e]],d]+2[[[a,d],[b,e]],c]+2[[[a,e],[b,d]],c]";

pub const LIE_JORDAN_LINKING: &str = "[[a,b],c]-{a,b,c}+{b,a,c}";
pub const LIE_JORDAN_DERIVATION: &str = "[{a,b,c},d]-{[a,d],b,c}-{a,[b,d],c}-{a,b,[c,d]}";
pub const JORDAN_TRIPLE: &str = "{{a,b,c},d,e}-{{a,d,e},b,c}+{a,{b,e,d},c}-{a,b,{c,d,e}}";

pub const LJY3_DEG5: [&str; 3] = [
    "2[[{a,c,d},b],e]+[[{a,c,d},e],b]-2[[{a,e,d},b],c]-[[{a,e,d},c],b]+[{a,c,d},[b,e]]\
     -[{a,e,d},[b,c]]+{a,[[b,c],e],d}-{a,[[b,e],c],d}-2{a,[[c,e],b],d}",
    "2{[[b,c],e],a,d}-2{[[b,d],e],a,c}+{[[b,e],c],a,d}-{[[b,e],d],a,c}+2{[[c,d],e],a,b}\
     -{[[c,e],b],a,d}+{[[c,e],d],a,b}+{[[d,e],b],a,c}-{[[d,e],c],a,b}",
    "{[[a,d],e],c,b}-{[[a,e],d],c,b}-{[[c,d],e],a,b}+{[[c,e],d],a,b}-2{[[d,e],a],c,b}\
     +2{[[d,e],c],a,b}+2{b,[[a,c],d],e}-2{b,[[a,c],e],d}+{b,[[a,d],c],e}-{b,[[a,e],c],d}\
     -{b,[[c,d],a],e}+{b,[[c,e],a],d}",
];

/// Template summed over the (2,1,2)-shuffles of `(b,c,d,e,f)`.
pub const LJY3_DEG6_1_TEMPLATE: &str = "{[[b,c],d],a,[e,f]}";

/// Template summed over the (2,1)-shuffles of `(c,d,f)`.
pub const LJY3_DEG6_2_TEMPLATE: &str = "3[{a,[c,d],e},[b,f]]+3[{a,[[c,d],b],e},f]-3[[c,d],{a,[b,f],e}]\
    -3[[[c,d],b],{a,f,e}]-[{a,[[c,d],f],e},b]-[{a,b,e},[[c,d],f]]";

/// The 58-term degree-6 identity, four terms per line.
pub const LJY3_DEG6_3: [&str; 15] = [
    "-9{e,[[[b,d],a],c],f}-9[[{c,b,d},e],[a,f]]-8{c,[[a,f],[b,e]],d}-8[[{e,d,f},b],[a,c]]",
    "-6[{c,b,d},[[e,f],a]]-6[[[{e,d,f},c],b],a]-4{c,[[[a,f],b],e],d}-4[{e,d,f},[[b,c],a]]",
    "-4[{e,[[b,d],c],f},a]-4[[{e,d,f},[a,c]],b]-3{e,[[[b,d],c],a],f}-3{e,[[[a,d],b],c],f}",
    "-3[{c,b,d},[[a,e],f]]-3[[{c,e,d},f],[a,b]]-3[{[[d,f],c],b,e},a]-3[{[[c,f],d],b,e},a]",
    "-2{c,[[[e,f],a],b],d}-2{c,[[[b,f],a],e],d}-2[{e,d,f},[[a,b],c]]-2[{c,f,d},[[b,e],a]]",
    "-2[[{c,e,d},a],[b,f]]-2[{e,[[c,d],b],f},a]-2[{e,[[b,c],d],f},a]-2[{[[d,e],f],b,c},a]",
    "-2[{[[c,e],f],b,d},a]-2[[{c,f,d},[b,e]],a]-[{c,f,d},[[a,b],e]]-[{c,e,d},[[a,f],b]]",
    "-[[{c,f,d},b],[a,e]]-[{[[d,f],e],b,c},a]-[{[[c,f],e],b,d},a]+[{c,e,d},[[a,b],f]]",
    "+[{[[e,f],d],b,c},a]+[{[[e,f],c],b,d},a]+2{c,[[[e,f],b],a],d}+2{c,[[[b,f],e],a],d}",
    "+2[{c,e,d},[[b,f],a]]+2[[{c,f,d},a],[b,e]]+2[[{e,d,f},[b,c]],a]+2[[{c,e,d},[b,f]],a]",
    "+3{e,[[[c,d],b],a],f}+3{e,[[[a,d],c],b],f}+3[{c,f,d},[[a,e],b]]+3[{c,b,d},[[a,f],e]]",
    "+3[[{c,f,d},e],[a,b]]+3[[{c,e,d},b],[a,f]]+4{c,[[a,e],[b,f]],d}+4{c,[[a,b],[e,f]],d}",
    "+4{c,[[[a,f],e],b],d}+4[[{e,d,f},a],[b,c]]+4[[{c,f,d},[a,e]],b]+6[[{e,d,f},c],[a,b]]",
    "+6[[{c,b,d},a],[e,f]]+6[[[{c,b,d},e],f],a]+9{e,[[[c,d],a],b],f}+9[[{c,b,d},f],[a,e]]",
    "+12{e,[[a,d],[b,c]],f}+12{e,[[[b,c],d],a],f}",
];

pub const NAMES: [&str; 15] = [
    "LY3",
    "LY4",
    "LY5",
    "LY6",
    "Malcev",
    "FilippovH",
    "LJY3-deg5-1",
    "LJY3-deg5-2",
    "LJY3-deg5-3",
    "LJY3-deg6-1",
    "LJY3-deg6-2",
    "LJY3-deg6-3",
    "LieJordan-linking",
    "LieJordan-derivation",
    "JordanTriple",
];

/// Operation set a name is stated over.
pub fn default_ops(name: &str) -> Result<Arc<OpSet>, FreeError> {
    match name {
        "LY3" | "LY4" | "LY5" | "LY6" | "Malcev" | "FilippovH" => Ok(OpSet::ly()),
        n if n.starts_with("LJY3-") || n.starts_with("LieJordan") || n == "JordanTriple" => Ok(OpSet::ljy()),
        _ => Err(FreeError::UnknownIdentity(name.to_string())),
    }
}

/// A named identity over its default operation set.
pub fn catalog_identity(name: &str) -> Result<IntPoly, FreeError> {
    catalog_identity_in(name, &default_ops(name)?)
}

/// A named identity over `ops`, which needs one binary and one ternary
/// operation when the identity uses both.
pub fn catalog_identity_in(name: &str, ops: &Arc<OpSet>) -> Result<IntPoly, FreeError> {
    let text = |s: &str| parse_poly(ops, s);
    match name {
        "LY3" => text(LY3),
        "LY4" => text(LY4),
        "LY5" => text(LY5),
        "LY6" => text(LY6),
        "Malcev" => text(MALCEV),
        "FilippovH" => text(FILIPPOV_H),
        "LieJordan-linking" => text(LIE_JORDAN_LINKING),
        "LieJordan-derivation" => text(LIE_JORDAN_DERIVATION),
        "JordanTriple" => text(JORDAN_TRIPLE),
        "LJY3-deg5-1" => text(LJY3_DEG5[0]),
        "LJY3-deg5-2" => text(LJY3_DEG5[1]),
        "LJY3-deg5-3" => text(LJY3_DEG5[2]),
        "LJY3-deg6-1" => shuffle_sum(&text(LJY3_DEG6_1_TEMPLATE)?, &[2, 1, 2], &[1, 2, 3, 4, 5]),
        "LJY3-deg6-2" => shuffle_sum(&text(LJY3_DEG6_2_TEMPLATE)?, &[2, 1], &[2, 3, 5]),
        "LJY3-deg6-3" => text(&LJY3_DEG6_3.concat()),
        _ => Err(FreeError::UnknownIdentity(name.to_string())),
    }
}

/// Named groups used on command lines.
pub fn suite(name: &str) -> Option<&'static [&'static str]> {
    match name {
        "LY" => Some(&["LY3", "LY4", "LY5", "LY6"]),
        "LieJordan" => Some(&["LieJordan-linking", "LieJordan-derivation", "JordanTriple"]),
        "LJY3-deg5" => Some(&["LJY3-deg5-1", "LJY3-deg5-2", "LJY3-deg5-3"]),
        "LJY3-deg6" => Some(&["LJY3-deg6-1", "LJY3-deg6-2", "LJY3-deg6-3"]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    #[test]
    fn every_name_parses() {
        for n in NAMES {
            let f = catalog_identity(n).unwrap();
            assert!(!f.is_zero(), "{n}");
        }
        assert!(catalog_identity("LY7").is_err());
    }

    #[test]
    fn ly3_display() {
        let f = catalog_identity("LY3").unwrap();
        assert_eq!(f.to_string(), "[[a,b],c]-[[a,c],b]+[[b,c],a]+(a,b,c)-(a,c,b)+(b,c,a)");
    }

    #[test]
    fn printed_term_statistics() {
        let stats = |n: &str| {
            let f = catalog_identity(n).unwrap();
            (f.degree(), f.len(), f.squared_length())
        };
        assert_eq!(stats("FilippovH"), (5, 12, BigInt::from(24)));
        assert_eq!(stats("LJY3-deg6-1"), (6, 30, BigInt::from(30)));
        assert_eq!(stats("LJY3-deg6-2"), (6, 18, BigInt::from(114)));
        assert_eq!(stats("LJY3-deg6-3"), (6, 58, BigInt::from(1244)));
    }
}
