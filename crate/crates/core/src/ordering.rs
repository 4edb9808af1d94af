//! Ordered vertex values and the lexicographic / shortlex orders on finite
//! sets of them.
//!
//! Sets are kept as ascending, duplicate-free lists. Comparing two sets
//! follows the subset / symmetric-difference rule:
//!
//! * `A = B`: equal.
//! * `A ⊂ B`: `A > B` iff `min A > max(B \ A)` (and symmetrically).
//! * otherwise: `A > B` iff `max(A Δ B) ∈ A`.
//!
//! `min ∅` is taken to be `+∞`, so the empty set sits above every non-empty
//! set under the lex order. Shortlex puts it first, which is where the cube
//! order uses it.

use std::cmp::Ordering;
use std::convert::Infallible;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Lex comparison of two ascending, duplicate-free slices under `cmp`.
pub fn lex_cmp_by<E, Er, F>(a: &[E], b: &[E], mut cmp: F) -> std::result::Result<Ordering, Er>
where
    F: FnMut(&E, &E) -> std::result::Result<Ordering, Er>,
{
    // Walking down from the top, the first unshared element of each side is
    // the maximum of that side's difference.
    let (mut i, mut j) = (a.len(), b.len());
    let mut a_only: Option<&E> = None;
    let mut b_only: Option<&E> = None;
    while i > 0 && j > 0 && (a_only.is_none() || b_only.is_none()) {
        match cmp(&a[i - 1], &b[j - 1])? {
            Ordering::Equal => {
                i -= 1;
                j -= 1;
            }
            Ordering::Greater => {
                a_only.get_or_insert(&a[i - 1]);
                i -= 1;
            }
            Ordering::Less => {
                b_only.get_or_insert(&b[j - 1]);
                j -= 1;
            }
        }
    }
    if a_only.is_none() && i > 0 {
        a_only = Some(&a[i - 1]);
    }
    if b_only.is_none() && j > 0 {
        b_only = Some(&b[j - 1]);
    }

    Ok(match (a_only, b_only) {
        (None, None) => Ordering::Equal,
        // a ⊂ b
        (None, Some(b_max)) => match a.first() {
            None => Ordering::Greater,
            Some(a_min) => {
                if cmp(a_min, b_max)? == Ordering::Greater {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        },
        // b ⊂ a
        (Some(a_max), None) => match b.first() {
            None => Ordering::Less,
            Some(b_min) => {
                if cmp(b_min, a_max)? == Ordering::Greater {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        },
        (Some(a_max), Some(b_max)) => cmp(a_max, b_max)?,
    })
}

/// Shortlex: cardinality first, then [`lex_cmp_by`].
pub fn shortlex_cmp_by<E, Er, F>(a: &[E], b: &[E], cmp: F) -> std::result::Result<Ordering, Er>
where
    F: FnMut(&E, &E) -> std::result::Result<Ordering, Er>,
{
    match a.len().cmp(&b.len()) {
        Ordering::Equal => lex_cmp_by(a, b, cmp),
        other => Ok(other),
    }
}

fn infallible<E: Ord>(x: &E, y: &E) -> std::result::Result<Ordering, Infallible> {
    Ok(x.cmp(y))
}

/// Lex order on ascending slices of an already totally ordered type.
pub fn lex_cmp<E: Ord>(a: &[E], b: &[E]) -> Ordering {
    match lex_cmp_by(a, b, infallible) {
        Ok(o) => o,
        Err(never) => match never {},
    }
}

/// Shortlex order on ascending slices of an already totally ordered type.
pub fn shortlex_cmp<E: Ord>(a: &[E], b: &[E]) -> Ordering {
    match shortlex_cmp_by(a, b, infallible) {
        Ok(o) => o,
        Err(never) => match never {},
    }
}

/// A vertex value: a scalar, or a finite set of values (as produced by
/// barycentric subdivision, possibly iterated).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
#[serde(bound(
    serialize = "T: Serialize + Clone",
    deserialize = "T: Deserialize<'de> + Scalar"
))]
pub enum OrderedValue<T> {
    Scalar(T),
    Set(ValueSet<T>),
}

/// A finite set of mutually comparable values, stored ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<OrderedValue<T>>", into = "Vec<OrderedValue<T>>")]
#[serde(bound(
    serialize = "T: Serialize + Clone",
    deserialize = "T: Deserialize<'de> + Scalar"
))]
pub struct ValueSet<T>(Vec<OrderedValue<T>>);

impl<T: Scalar> OrderedValue<T> {
    /// Nesting depth (0 for scalars), after checking every level is uniform
    /// and totally ordered.
    pub fn depth(&self) -> Result<usize> {
        match self {
            OrderedValue::Scalar(x) => {
                if x.is_ordered() {
                    Ok(0)
                } else {
                    Err(Error::UnorderedValue)
                }
            }
            OrderedValue::Set(s) => Ok(1 + s.element_depth()?.unwrap_or(0)),
        }
    }

    /// Total-order comparison; fails on mismatched depths or NaN.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        match (self, other) {
            (OrderedValue::Scalar(a), OrderedValue::Scalar(b)) => {
                a.partial_cmp(b).ok_or(Error::UnorderedValue)
            }
            (OrderedValue::Set(a), OrderedValue::Set(b)) => lex_compare(a, b),
            _ => Err(Error::IncomparableDepth),
        }
    }
}

impl<T: Scalar> PartialOrd for OrderedValue<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl<T> From<T> for OrderedValue<T> {
    fn from(x: T) -> Self {
        OrderedValue::Scalar(x)
    }
}

impl<T: fmt::Display> fmt::Display for OrderedValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderedValue::Scalar(x) => write!(f, "{x}"),
            OrderedValue::Set(s) => {
                f.write_str("{")?;
                for (k, v) in s.0.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl<T: Scalar> ValueSet<T> {
    /// Builds a set from arbitrary items; duplicates collapse.
    pub fn new(mut items: Vec<OrderedValue<T>>) -> Result<Self> {
        uniform_depth(&items)?;
        // Uniform depth and no NaN: every comparison below succeeds.
        items.sort_by(|a, b| a.try_cmp(b).unwrap_or(Ordering::Equal));
        items.dedup_by(|a, b| a.try_cmp(b) == Ok(Ordering::Equal));
        Ok(ValueSet(items))
    }

    pub fn from_scalars(xs: impl IntoIterator<Item = T>) -> Result<Self> {
        Self::new(xs.into_iter().map(OrderedValue::Scalar).collect())
    }

    fn element_depth(&self) -> Result<Option<usize>> {
        uniform_depth(&self.0)
    }
}

fn uniform_depth<T: Scalar>(items: &[OrderedValue<T>]) -> Result<Option<usize>> {
    let mut depth = None;
    for item in items {
        let d = item.depth()?;
        match depth {
            None => depth = Some(d),
            Some(prev) if prev != d => return Err(Error::IncomparableDepth),
            _ => {}
        }
    }
    Ok(depth)
}

impl<T> ValueSet<T> {
    pub fn elements(&self) -> &[OrderedValue<T>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<T: Scalar> TryFrom<Vec<OrderedValue<T>>> for ValueSet<T> {
    type Error = Error;

    fn try_from(items: Vec<OrderedValue<T>>) -> Result<Self> {
        ValueSet::new(items)
    }
}

impl<T> From<ValueSet<T>> for Vec<OrderedValue<T>> {
    fn from(s: ValueSet<T>) -> Self {
        s.0
    }
}

/// Lexicographic order on value sets.
pub fn lex_compare<T: Scalar>(a: &ValueSet<T>, b: &ValueSet<T>) -> Result<Ordering> {
    lex_cmp_by(&a.0, &b.0, |x, y| x.try_cmp(y))
}

/// Shortlex order on value sets: shorter first, then lexicographic.
pub fn shortlex_compare<T: Scalar>(a: &ValueSet<T>, b: &ValueSet<T>) -> Result<Ordering> {
    shortlex_cmp_by(&a.0, &b.0, |x, y| x.try_cmp(y))
}

/// Lex key over vertex ranks; the fast path used once a valuation has been
/// validated and ranked.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexKey(Vec<u32>);

impl LexKey {
    pub fn new(mut ranks: Vec<u32>) -> Self {
        ranks.sort_unstable();
        ranks.dedup();
        LexKey(ranks)
    }

    pub fn ranks(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for LexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for LexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(xs: &[f64]) -> ValueSet<f64> {
        ValueSet::from_scalars(xs.iter().copied()).unwrap()
    }

    #[test]
    fn equal_sets() {
        assert_eq!(lex_compare(&vs(&[5.0]), &vs(&[5.0])), Ok(Ordering::Equal));
    }

    #[test]
    fn symmetric_difference_clause() {
        // {5,1} vs {5,2}: difference {1,2}, max 2 lies in the second set.
        assert_eq!(
            lex_compare(&vs(&[5.0, 1.0]), &vs(&[5.0, 2.0])),
            Ok(Ordering::Less)
        );
    }

    #[test]
    fn subset_clause_both_ways() {
        // {3} vs {3,2}: min{3} > max{2}
        assert_eq!(
            lex_compare(&vs(&[3.0]), &vs(&[3.0, 2.0])),
            Ok(Ordering::Greater)
        );
        assert_eq!(
            lex_compare(&vs(&[3.0, 2.0]), &vs(&[3.0])),
            Ok(Ordering::Less)
        );
        // {1} vs {2,1}: min{1} < max{2}
        assert_eq!(
            lex_compare(&vs(&[1.0]), &vs(&[1.0, 2.0])),
            Ok(Ordering::Less)
        );
    }

    #[test]
    fn shortlex_examples() {
        let empty = ValueSet::<f64>::new(vec![]).unwrap();
        assert_eq!(shortlex_compare(&empty, &vs(&[7.0])), Ok(Ordering::Less));
        assert_eq!(
            shortlex_compare(&vs(&[1.0, 2.0]), &vs(&[1.0, 3.0])),
            Ok(Ordering::Less)
        );
        assert_eq!(
            shortlex_compare(&vs(&[9.0]), &vs(&[1.0, 2.0])),
            Ok(Ordering::Less)
        );
    }

    #[test]
    fn mismatched_depth_is_an_error() {
        let scalar = OrderedValue::Scalar(1.0);
        let set = OrderedValue::Set(vs(&[1.0]));
        assert_eq!(scalar.try_cmp(&set), Err(Error::IncomparableDepth));
        assert!(ValueSet::new(vec![scalar, set]).is_err());
        assert_eq!(
            OrderedValue::Scalar(1.0).partial_cmp(&OrderedValue::Set(vs(&[2.0]))),
            None
        );
    }

    #[test]
    fn nan_rejected() {
        assert_eq!(
            OrderedValue::Scalar(f64::NAN).depth(),
            Err(Error::UnorderedValue)
        );
        assert!(ValueSet::from_scalars([1.0, f64::NAN]).is_err());
    }

    #[test]
    fn nested_sets_compare() {
        let a = OrderedValue::Set(vs(&[3.0]));
        let ab = OrderedValue::Set(vs(&[3.0, 2.0]));
        let outer1 = ValueSet::new(vec![a.clone()]).unwrap();
        let outer2 = ValueSet::new(vec![a, ab]).unwrap();
        // {{3}} ⊂ {{3},{3,2}} and {3} > {3,2}, so the smaller set wins.
        assert_eq!(lex_compare(&outer1, &outer2), Ok(Ordering::Greater));
    }

    #[test]
    fn rank_key_matches_value_order() {
        assert!(LexKey::new(vec![2]) > LexKey::new(vec![2, 1]));
        assert!(LexKey::new(vec![2, 0]) < LexKey::new(vec![2, 1]));
        assert_eq!(LexKey::new(vec![1, 0, 1]).ranks(), &[0, 1]);
    }

    #[test]
    fn serde_roundtrip_nested() {
        let v: OrderedValue<f64> = serde_json::from_str("[[2.0, 1.0], [3.0]]").unwrap();
        let s = serde_json::to_string(&v).unwrap();
        // {1,2} < {3}: max of the difference is 3.
        assert_eq!(s, "[[1.0,2.0],[3.0]]");
        let scalar: OrderedValue<f64> = serde_json::from_str("4.5").unwrap();
        assert_eq!(scalar, OrderedValue::Scalar(4.5));
    }
}
