//! Weighted Cayley digraphs built from explicit multiplication tables.

use super::{GraphError, WeightedDigraph};
use crate::linalg::Rational;

/// `table[a][b]` is the index of the product `a * b`.
pub type GroupTable = Vec<Vec<usize>>;

fn check_group(table: &GroupTable) -> Result<usize, GraphError> {
    let m = table.len();
    let bad = |msg: String| Err(GraphError::NotAGroup(msg));
    if m == 0 {
        return bad("empty table".into());
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != m {
            return bad(format!("row {a} has length {}, expected {m}", row.len()));
        }
        if let Some(&x) = row.iter().find(|&&x| x >= m) {
            return bad(format!("entry {x} in row {a} is not an element"));
        }
    }
    let Some(e) = (0..m).find(|&e| (0..m).all(|x| table[e][x] == x && table[x][e] == x)) else {
        return bad("no identity element".into());
    };
    for (a, row) in table.iter().enumerate() {
        if !(0..m).any(|b| row[b] == e && table[b][a] == e) {
            return bad(format!("element {a} has no inverse"));
        }
    }
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return bad(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                }
            }
        }
    }
    Ok(e)
}

/// Vertices are the group elements; each generator `s` with weight `w_s`
/// contributes the arrows `g -> g*s` (right multiplication).
pub fn cayley_digraph(
    table: &GroupTable,
    generators: &[(usize, Rational)],
) -> Result<WeightedDigraph, GraphError> {
    check_group(table)?;
    let m = table.len();
    let mut g = WeightedDigraph::new(m);
    for (s, w) in generators {
        if *s >= m {
            return Err(GraphError::VertexOutOfRange { vertex: *s, n: m });
        }
        for (x, row) in table.iter().enumerate() {
            let head = row[*s];
            g.add_arrow(x, head, w.clone()).map_err(|e| match e {
                GraphError::DuplicateArrow { tail, head } => GraphError::CollidingArrows { tail, head },
                other => other,
            })?;
        }
    }
    Ok(g)
}

/// `Z_m` with element `i` standing for `σ^i`.
pub fn cyclic_group_table(m: usize) -> GroupTable {
    (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect()
}

/// The dihedral group of order `2k`. Element `e + 2i` is `r^i f^e`, where
/// `r` is a rotation of order `k` and `f` a reflection with `f r f = r^-1`.
///
/// Returns the table together with the two generating reflections
/// `σ = f` and `τ = r f`, whose product `στ = r^-1` has order `k`.
pub fn dihedral_group_table(k: usize) -> (GroupTable, usize, usize) {
    let m = 2 * k;
    let index = |rot: usize, flip: usize| flip + 2 * rot;
    let table = (0..m)
        .map(|a| {
            let (ra, fa) = (a / 2, a % 2);
            (0..m)
                .map(|b| {
                    let (rb, fb) = (b / 2, b % 2);
                    // r^ra f^fa r^rb f^fb = r^(ra ± rb) f^(fa + fb)
                    let rot = if fa == 0 { (ra + rb) % k } else { (ra + k - rb) % k };
                    index(rot, (fa + fb) % 2)
                })
                .collect()
        })
        .collect();
    (table, index(0, 1), index(1, 1))
}
