use crate::combinatorics::SetPartition;
use crate::error::{Error, Result};

/// Result of gluing `alpha` (on `X ⊔ Y`) and `beta` (on `Y ⊔ Z`) along `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glued {
    /// The induced partition of `X ⊔ Z` (X-elements first).
    pub partition: SetPartition,
    /// Number of merged classes made only of `Y`-elements.
    pub gamma: u32,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Merges all elements sharing a block of `p`, where element `i` of `p`
    /// sits at global position `place(i)`.
    fn merge_blocks(&mut self, p: &SetPartition, place: impl Fn(usize) -> usize) {
        let mut first = vec![usize::MAX; p.num_blocks()];
        for (i, &b) in p.rgs().iter().enumerate() {
            let g = place(i);
            let slot = &mut first[b as usize];
            if *slot == usize::MAX {
                *slot = g;
            } else {
                self.union(*slot, g);
            }
        }
    }
}

/// Glues two partitions along the shared middle set.
///
/// Elements are laid out as `X = 0..x`, `Y = x..x+y`, `Z = x+y..x+y+z`.
/// Both partitions are merged by union–find; the classes meeting `X ⊔ Z`
/// give the composite partition and the classes inside `Y` are counted.
pub fn glue(
    alpha: &SetPartition,
    beta: &SetPartition,
    x: usize,
    y: usize,
    z: usize,
) -> Result<Glued> {
    if alpha.ground_size() != x + y || beta.ground_size() != y + z {
        return Err(Error::Mismatch(format!(
            "cannot glue partitions of sizes {} and {} with |X|={x}, |Y|={y}, |Z|={z}",
            alpha.ground_size(),
            beta.ground_size()
        )));
    }
    let mut uf = UnionFind::new(x + y + z);
    uf.merge_blocks(alpha, |i| i);
    uf.merge_blocks(beta, |j| x + j);

    let outer: Vec<usize> = (0..x)
        .chain(x + y..x + y + z)
        .map(|g| uf.find(g))
        .collect();
    let mut middle: Vec<usize> = (x..x + y).map(|g| uf.find(g)).collect();
    middle.sort_unstable();
    middle.dedup();
    let gamma = middle.iter().filter(|r| !outer.contains(r)).count() as u32;
    Ok(Glued {
        partition: SetPartition::from_labels(&outer),
        gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: &[&[usize]]) -> SetPartition {
        let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        SetPartition::from_blocks(n, &blocks).unwrap()
    }

    #[test]
    fn identity_relations_glue_to_identity() {
        for n in 0..5 {
            let blocks: Vec<Vec<usize>> = (0..n).map(|i| vec![i, n + i]).collect();
            let id = SetPartition::from_blocks(2 * n, &blocks).unwrap();
            let g = glue(&id, &id, n, n, n).unwrap();
            assert_eq!(g.gamma, 0);
            assert_eq!(g.partition, id);
        }
    }

    #[test]
    fn closed_loop() {
        let single = part(1, &[&[0]]);
        let g = glue(&single, &single, 0, 1, 0).unwrap();
        assert_eq!(g.gamma, 1);
        assert_eq!(g.partition, SetPartition::empty());
    }

    #[test]
    fn worked_example() {
        // X = {0}, Y = {1, 2}, Z = {3}
        let alpha = part(3, &[&[0, 1], &[2]]);
        let beta = part(3, &[&[0], &[1, 2]]);
        let g = glue(&alpha, &beta, 1, 2, 1).unwrap();
        assert_eq!(g.gamma, 0);
        assert_eq!(g.partition, part(2, &[&[0], &[1]]));
    }

    #[test]
    fn size_mismatch() {
        let a = SetPartition::discrete(3);
        assert!(glue(&a, &a, 1, 1, 1).is_err());
    }
}
