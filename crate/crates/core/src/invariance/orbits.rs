use std::collections::BTreeSet;

use super::{InvarianceError, InvariantSet};
use crate::graph::VertexPermutation;

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        cur = std::mem::replace(&mut parent[cur], root);
    }
    root
}

/// Groups the entries of `set` into orbits of the permutation group `autos`,
/// which acts by relabelling cells. Each orbit lists entry indices in
/// ascending order; orbits are sorted by their first index.
pub fn orbits(set: &InvariantSet, autos: &[VertexPermutation]) -> Result<Vec<Vec<usize>>, InvarianceError> {
    let n = set.n();
    if let Some(bad) = autos.iter().find(|a| a.len() != n) {
        return Err(InvarianceError::NotAnAutomorphism(bad.to_string()));
    }
    let group: BTreeSet<&VertexPermutation> = autos.iter().collect();
    for a in autos {
        for b in autos {
            let ab = a.compose(b);
            if !group.contains(&ab) {
                return Err(InvarianceError::NotAGroup(format!("{a} ∘ {b} = {ab} is missing")));
            }
        }
        let m = &set.matrix;
        let preserves = (0..n).all(|i| (0..n).all(|j| m.get(a.apply(i), a.apply(j)) == m.get(i, j)));
        if !preserves {
            return Err(InvarianceError::NotAnAutomorphism(a.to_string()));
        }
    }
    let mut parent: Vec<usize> = (0..set.len()).collect();
    for (i, p) in set.partitions().enumerate() {
        for a in autos {
            let image = p.relabel(a);
            let j = set
                .position(&image)
                .ok_or_else(|| InvarianceError::NotAnAutomorphism(a.to_string()))?;
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; set.len()];
    for i in 0..set.len() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{automorphisms, directed_cycle};
    use crate::invariance::invariant_polydiagonals;

    #[test]
    fn trivial_group_gives_singletons() {
        let g = directed_cycle(4);
        let set = invariant_polydiagonals(&g.adjacency_matrix()).unwrap();
        let groups = orbits(&set, &[VertexPermutation::identity(4)]).unwrap();
        assert_eq!(groups.len(), set.len());
        assert!(groups.iter().all(|o| o.len() == 1));
    }

    #[test]
    fn reflections_merge_orbits() {
        // the matrix commutes with rotations, so only reflections can move subspaces
        let g = crate::graph::digraph_of_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let set = invariant_polydiagonals(&g.adjacency_matrix()).unwrap();
        let autos = automorphisms(&g).unwrap();
        let groups = orbits(&set, &autos).unwrap();
        assert!(groups.len() < set.len());
        let covered: usize = groups.iter().map(Vec::len).sum();
        assert_eq!(covered, set.len());
    }

    #[test]
    fn rejects_non_groups_and_non_automorphisms() {
        let g = directed_cycle(3);
        let set = invariant_polydiagonals(&g.adjacency_matrix()).unwrap();
        let rot = VertexPermutation::new(vec![1, 2, 0]).unwrap();
        assert!(matches!(
            orbits(&set, &[VertexPermutation::identity(3), rot]),
            Err(InvarianceError::NotAGroup(_))
        ));
        let swap = VertexPermutation::new(vec![1, 0, 2]).unwrap();
        assert!(matches!(
            orbits(&set, &[VertexPermutation::identity(3), swap]),
            Err(InvarianceError::NotAnAutomorphism(_))
        ));
    }
}
