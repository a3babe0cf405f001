use std::sync::Arc;

use super::{SubspaceKind, TaggedPartition};

/// Set partitions of `0..n` as restricted growth strings, in lexicographic
/// order.
pub struct SetPartitions {
    current: Option<Vec<usize>>,
    // prefix_max[i] = max(current[..=i])
    prefix_max: Vec<usize>,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        Self {
            current: Some(vec![0; n]),
            prefix_max: vec![0; n],
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let a = self.current.as_mut().expect("checked above");
        let n = a.len();
        // rightmost position that can still grow
        let pos = (1..n).rev().find(|&i| a[i] <= self.prefix_max[i - 1]);
        match pos {
            None => self.current = None,
            Some(i) => {
                a[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(a[i]);
                a[i + 1..].fill(0);
                let top = self.prefix_max[i];
                self.prefix_max[i + 1..n].fill(top);
            }
        }
        Some(out)
    }
}

/// Partial involutions of `0..k` with at most one fixed point, as partner
/// lists, in lexicographic order with `None < Some(_)`.
pub fn partial_involutions(k: usize) -> Vec<Vec<Option<usize>>> {
    fn go(c: usize, partner: &mut Vec<Option<usize>>, has_fixed: bool, out: &mut Vec<Vec<Option<usize>>>) {
        let k = partner.len();
        if c == k {
            out.push(partner.clone());
            return;
        }
        if partner[c].is_some() {
            go(c + 1, partner, has_fixed, out);
            return;
        }
        go(c + 1, partner, has_fixed, out);
        if !has_fixed {
            partner[c] = Some(c);
            go(c + 1, partner, true, out);
            partner[c] = None;
        }
        for d in c + 1..k {
            if partner[d].is_none() {
                partner[c] = Some(d);
                partner[d] = Some(c);
                go(c + 1, partner, has_fixed, out);
                partner[d] = None;
                partner[c] = None;
            }
        }
    }
    let mut out = Vec::new();
    go(0, &mut vec![None; k], false, &mut out);
    out
}

/// Partner arrays of every partial involution on `k` classes.
type Involutions = Arc<Vec<Vec<Option<usize>>>>;

/// Every tagged partition of `0..n`, in canonical order: by restricted
/// growth string, then by involution.
pub struct TaggedPartitions {
    partitions: SetPartitions,
    involutions: Vec<Option<Involutions>>,
    current: Option<(Vec<usize>, Involutions, usize)>,
    filter: Option<SubspaceKind>,
}

impl TaggedPartitions {
    pub fn new(n: usize) -> Self {
        Self {
            partitions: SetPartitions::new(n),
            involutions: vec![None; n + 1],
            current: None,
            filter: None,
        }
    }

    /// Restricts the output to one family.
    pub fn with_filter(mut self, filter: Option<SubspaceKind>) -> Self {
        self.filter = filter;
        self
    }

    fn advance(&mut self) -> Option<TaggedPartition> {
        loop {
            if let Some((rgs, invs, idx)) = &mut self.current {
                if *idx < invs.len() {
                    let partner = invs[*idx].clone();
                    *idx += 1;
                    return Some(TaggedPartition {
                        class_of: rgs.clone(),
                        partner,
                    });
                }
            }
            let rgs = self.partitions.next()?;
            let k = rgs.iter().max().map_or(0, |m| m + 1);
            let invs = self.involutions[k]
                .get_or_insert_with(|| Arc::new(partial_involutions(k)))
                .clone();
            self.current = Some((rgs, invs, 0));
        }
    }
}

impl Iterator for TaggedPartitions {
    type Item = TaggedPartition;

    fn next(&mut self) -> Option<TaggedPartition> {
        loop {
            let p = self.advance()?;
            match self.filter {
                Some(kind) if !kind.matches(&p.classify()) => continue,
                _ => return Some(p),
            }
        }
    }
}

/// Lazily enumerates tagged partitions of `n` cells, optionally restricted
/// to one family.
pub fn enumerate_tagged_partitions(n: usize, filter: Option<SubspaceKind>) -> TaggedPartitions {
    TaggedPartitions::new(n).with_filter(filter)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=7).map(|n| SetPartitions::new(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn set_partitions_are_sorted_rgs() {
        let all: Vec<_> = SetPartitions::new(4).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], vec![0, 0, 0, 0]);
        assert_eq!(all[14], vec![0, 1, 2, 3]);
    }

    #[test]
    fn involution_counts() {
        let counts: Vec<usize> = (0..=5).map(|k| partial_involutions(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 10, 26, 76]);
        let invs = partial_involutions(3);
        assert!(invs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_tagged_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| enumerate_tagged_partitions(n, None).count()).collect();
        assert_eq!(counts, vec![1, 2, 6, 24, 116]);
    }

    #[test]
    fn enumeration_order_is_derived_order() {
        let all: Vec<_> = enumerate_tagged_partitions(4, None).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn n2_listing() {
        let all: Vec<String> = enumerate_tagged_partitions(2, None).map(|p| p.typical_element()).collect();
        assert_eq!(all, vec!["(a,a)", "(0,0)", "(a,b)", "(a,0)", "(0,a)", "(a,-a)"]);
    }

    #[test]
    fn filters_apply() {
        let even: Vec<String> = enumerate_tagged_partitions(3, Some(SubspaceKind::Evenly))
            .map(|p| p.typical_element())
            .collect();
        assert_eq!(even, vec!["(0,0,0)", "(0,a,-a)", "(a,-a,0)", "(a,0,-a)"]);
    }
}
