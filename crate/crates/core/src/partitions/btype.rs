//! Partitions of `{-n..n}` that are closed under negation and have exactly
//! one self-negative class, and their correspondence with tagged partitions.
//! Cell `i` (0-based) of a tagged partition is the element `i + 1` here.

use std::collections::BTreeSet;
use std::fmt;

use super::{PartitionError, SetPartitions, TaggedPartition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BTypePartition {
    n: usize,
    // each class sorted ascending; classes sorted lexicographically
    classes: Vec<Vec<i64>>,
}

fn btype_err(msg: impl Into<String>) -> PartitionError {
    PartitionError::BType(msg.into())
}

impl BTypePartition {
    pub fn new(n: usize, classes: Vec<Vec<i64>>) -> Result<Self, PartitionError> {
        let bound = n as i64;
        let mut seen = BTreeSet::new();
        let mut normalized: Vec<Vec<i64>> = Vec::with_capacity(classes.len());
        for mut class in classes {
            if class.is_empty() {
                return Err(btype_err("empty class"));
            }
            class.sort_unstable();
            for &x in &class {
                if x.abs() > bound {
                    return Err(btype_err(format!("element {x} outside -{n}..{n}")));
                }
                if !seen.insert(x) {
                    return Err(btype_err(format!("element {x} appears twice")));
                }
            }
            normalized.push(class);
        }
        if seen.len() != 2 * n + 1 {
            return Err(btype_err("classes do not cover -n..n"));
        }
        normalized.sort();
        let lookup: BTreeSet<&Vec<i64>> = normalized.iter().collect();
        let mut self_negative = 0;
        for class in &normalized {
            let negated = negate(class);
            if !lookup.contains(&negated) {
                return Err(btype_err(format!("negation of {class:?} is not a class")));
            }
            if negated == *class {
                self_negative += 1;
                if !class.contains(&0) {
                    return Err(btype_err("self-negative class must contain 0"));
                }
            }
        }
        if self_negative != 1 {
            return Err(btype_err(format!("{self_negative} self-negative classes, expected 1")));
        }
        Ok(Self {
            n,
            classes: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Vec<i64>] {
        &self.classes
    }
}

fn negate(class: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = class.iter().map(|x| -x).collect();
    out.sort_unstable();
    out
}

impl fmt::Display for BTypePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                let items: Vec<String> = c.iter().map(i64::to_string).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl TaggedPartition {
    /// Untagged `P` gives `P` and `-P`; a pair gives `P ∪ -P*` and its
    /// negation; the fixed class gives `P0 ∪ {0} ∪ -P0` (just `{0}` if absent).
    pub fn to_btype(&self) -> BTypePartition {
        let classes = self.classes();
        let plus = |c: usize| classes[c].iter().map(|&i| i as i64 + 1).collect::<Vec<_>>();
        let minus = |c: usize| classes[c].iter().map(|&i| -(i as i64 + 1)).collect::<Vec<_>>();
        let mut out = Vec::new();
        let mut zero = vec![0];
        for c in 0..self.class_count() {
            match self.partner(c) {
                None => {
                    out.push(plus(c));
                    out.push(minus(c));
                }
                Some(d) if d == c => {
                    zero.extend(plus(c));
                    zero.extend(minus(c));
                }
                Some(d) if d > c => {
                    out.push([plus(c), minus(d)].concat());
                    out.push([minus(c), plus(d)].concat());
                }
                Some(_) => {}
            }
        }
        out.push(zero);
        BTypePartition::new(self.n(), out).expect("construction yields a valid B-type partition")
    }

    /// Inverse of [`TaggedPartition::to_btype`], reading classes off the
    /// positive parts.
    pub fn from_btype(q: &BTypePartition) -> TaggedPartition {
        let n = q.n();
        // label for cell i is the index of the class containing i + 1
        let mut labels = vec![usize::MAX; n];
        let mut index_of = std::collections::BTreeMap::new();
        for (k, class) in q.classes().iter().enumerate() {
            for &x in class {
                index_of.insert(x, k);
                if x > 0 {
                    labels[(x - 1) as usize] = k;
                }
            }
        }
        let zero_class = index_of[&0];
        TaggedPartition::from_labels(&labels, |k| {
            if k == zero_class {
                return Some(k);
            }
            let negative = q.classes()[k].iter().find(|&&x| x < 0)?;
            // the class holding -x for negative x in Q carries the partner's cells
            Some(index_of[&-negative])
        })
        .expect("B-type structure yields a valid tagged partition")
    }
}

/// All B-type partitions of `{-n..n}`, found by filtering every set
/// partition of the `2n + 1` elements. Exponential; meant for small `n`.
pub fn btype_partitions(n: usize) -> Vec<BTypePartition> {
    let elements: Vec<i64> = (-(n as i64)..=n as i64).collect();
    let mut out = Vec::new();
    for rgs in SetPartitions::new(elements.len()) {
        let k = rgs.iter().max().map_or(0, |m| m + 1);
        let mut classes = vec![Vec::new(); k];
        for (pos, &c) in rgs.iter().enumerate() {
            classes[c].push(elements[pos]);
        }
        if let Ok(q) = BTypePartition::new(n, classes) {
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let p = TaggedPartition::parse_typical_element("(a,-a,b,-a,0,0)").unwrap();
        let q = p.to_btype();
        let expected = BTypePartition::new(
            6,
            vec![vec![-4, -2, 1], vec![-1, 2, 4], vec![3], vec![-3], vec![-6, -5, 0, 5, 6]],
        )
        .unwrap();
        assert_eq!(q, expected);
        assert_eq!(TaggedPartition::from_btype(&q), p);
    }

    #[test]
    fn empty_partition() {
        let q = TaggedPartition::discrete(0).to_btype();
        assert_eq!(q.classes(), &[vec![0]]);
        assert_eq!(q.to_string(), "{{0}}");
    }

    #[test]
    fn direct_counts_small() {
        assert_eq!(btype_partitions(0).len(), 1);
        assert_eq!(btype_partitions(1).len(), 2);
        assert_eq!(btype_partitions(2).len(), 6);
    }

    #[test]
    fn rejects_bad_structure() {
        assert!(BTypePartition::new(1, vec![vec![-1, 0, 1], vec![]]).is_err());
        assert!(BTypePartition::new(1, vec![vec![-1, 1], vec![0]]).is_err());
        assert!(BTypePartition::new(1, vec![vec![-1, 0], vec![1]]).is_err());
        assert!(BTypePartition::new(1, vec![vec![0], vec![1]]).is_err());
        assert!(BTypePartition::new(1, vec![vec![0, 2], vec![1], vec![-1]]).is_err());
    }
}
