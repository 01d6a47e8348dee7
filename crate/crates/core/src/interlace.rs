//! Loop (interlacement) graphs and the complete-multipartite test.

use serde::Serialize;

use crate::word::{DoubleOccurrenceWord, Letter};

/// Simple graph on the letters of a word; `x ~ y` iff their occurrences
/// alternate around the circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlaceGraph {
    n: usize,
    adjacency: Vec<bool>,
}

impl InterlaceGraph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, x: Letter, y: Letter) -> bool {
        self.adjacency[x.index() * self.n + y.index()]
    }

    pub fn degree(&self, x: Letter) -> usize {
        let row = x.index() * self.n;
        self.adjacency[row..row + self.n]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    /// Edges `(x, y)` with `x < y`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Letter, Letter)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.adjacency[x * self.n + y] {
                    out.push((Letter(x as u32), Letter(y as u32)));
                }
            }
        }
        out
    }

    /// Induced subgraph on `keep`, relabeled in increasing letter order.
    pub fn induced(&self, keep: &[Letter]) -> InterlaceGraph {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let k = keep.len();
        let mut adjacency = vec![false; k * k];
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                adjacency[i * k + j] = self.adjacent(x, y);
            }
        }
        InterlaceGraph { n: k, adjacency }
    }

    /// Applies a vertex permutation: vertex `i` becomes `perm[i]`.
    pub fn relabeled(&self, perm: &[u32]) -> InterlaceGraph {
        let n = self.n;
        let mut adjacency = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                adjacency[perm[x] as usize * n + perm[y] as usize] = self.adjacency[x * n + y];
            }
        }
        InterlaceGraph { n, adjacency }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> InterlaceGraph {
        let mut adjacency = vec![false; n * n];
        for &(x, y) in edges {
            assert_ne!(x, y, "loop edges are not allowed");
            adjacency[x as usize * n + y as usize] = true;
            adjacency[y as usize * n + x as usize] = true;
        }
        InterlaceGraph { n, adjacency }
    }
}

pub fn interlace_graph(w: &DoubleOccurrenceWord) -> InterlaceGraph {
    let n = w.loop_count();
    let occ = w.occurrences();
    let mut adjacency = vec![false; n * n];
    for x in 0..n {
        let [x1, x2] = occ[x];
        for y in x + 1..n {
            let [y1, y2] = occ[y];
            // exactly one endpoint of y inside the arc (x1, x2)
            let crosses = (x1 < y1 && y1 < x2) != (x1 < y2 && y2 < x2);
            adjacency[x * n + y] = crosses;
            adjacency[y * n + x] = crosses;
        }
    }
    InterlaceGraph { n, adjacency }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultipartiteDecomposition {
    pub isolated: Vec<Letter>,
    /// Classes of non-isolated vertices with identical neighbourhoods,
    /// ordered by smallest member. When the graph is complete multipartite
    /// these are exactly its parts.
    pub parts: Vec<Vec<Letter>>,
    pub valid: bool,
}

/// Condition (C): isolated vertices plus one complete multipartite graph
/// with at most three parts.
pub fn is_condition_c(w: &DoubleOccurrenceWord) -> MultipartiteDecomposition {
    decompose(&interlace_graph(w))
}

pub fn decompose(g: &InterlaceGraph) -> MultipartiteDecomposition {
    let n = g.vertex_count();
    let (isolated, core): (Vec<Letter>, Vec<Letter>) =
        (0..n as u32).map(Letter).partition(|&x| g.degree(x) == 0);

    // non-adjacency among the remaining vertices must be transitive
    let mut transitive = true;
    'outer: for &x in &core {
        for &y in &core {
            if x == y || g.adjacent(x, y) {
                continue;
            }
            for &z in &core {
                if z != x && z != y && !g.adjacent(y, z) && g.adjacent(x, z) {
                    transitive = false;
                    break 'outer;
                }
            }
        }
    }

    let mut parts: Vec<Vec<Letter>> = Vec::new();
    for &x in &core {
        let home = parts.iter_mut().find(|part| {
            let rep = part[0];
            core.iter().all(|&z| g.adjacent(rep, z) == g.adjacent(x, z))
        });
        match home {
            Some(part) => part.push(x),
            None => parts.push(vec![x]),
        }
    }

    let valid = transitive && parts.len() <= 3;
    MultipartiteDecomposition {
        isolated,
        parts,
        valid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::genus;
    use crate::word::{enumerate_diagrams, parse_word, random_word, restrict};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> DoubleOccurrenceWord {
        parse_word(s).unwrap()
    }

    fn l(s: &str) -> Vec<Letter> {
        s.bytes().map(|b| Letter((b - b'a') as u32)).collect()
    }

    fn edge_names(g: &InterlaceGraph) -> Vec<String> {
        g.edges()
            .iter()
            .map(|(x, y)| {
                format!(
                    "{}{}",
                    (b'a' + x.0 as u8) as char,
                    (b'a' + y.0 as u8) as char
                )
            })
            .collect()
    }

    /// Brute-force crossing test: the pair restricts to `abab`.
    fn crosses_by_restriction(word: &DoubleOccurrenceWord, x: Letter, y: Letter) -> bool {
        let r = restrict(word, &[x, y]).unwrap();
        crate::word::equivalent(&r, &w("abab"), true)
    }

    #[test]
    fn graph_examples() {
        assert_eq!(edge_names(&interlace_graph(&w("abab"))), vec!["ab"]);
        assert_eq!(
            edge_names(&interlace_graph(&w("abacdcbd"))),
            vec!["ab", "bd", "cd"]
        );
        assert_eq!(
            edge_names(&interlace_graph(&w("abcdabcd"))),
            vec!["ab", "ac", "ad", "bc", "bd", "cd"]
        );
        assert!(interlace_graph(&w("")).edges().is_empty());
    }

    #[test]
    fn edges_match_restriction_definition() {
        for n in 0..=5 {
            for word in enumerate_diagrams(n, false).unwrap() {
                let g = interlace_graph(&word);
                for x in word.letters() {
                    for y in word.letters() {
                        if x != y {
                            assert_eq!(g.adjacent(x, y), crosses_by_restriction(&word, x, y));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn condition_c_examples() {
        let d = is_condition_c(&w("ababcdcd"));
        assert!(!d.valid);
        assert!(d.isolated.is_empty());

        let d = is_condition_c(&w("abcabc"));
        assert!(d.valid);
        assert_eq!(d.parts, vec![l("a"), l("b"), l("c")]);

        let d = is_condition_c(&w("abcdbadc"));
        assert!(d.valid);
        assert_eq!(d.parts, vec![l("ab"), l("cd")]);
        assert_eq!(genus(&w("abcdbadc")).unwrap().genus, 1);

        let d = is_condition_c(&w("aabb"));
        assert!(d.valid);
        assert!(d.parts.is_empty());
        assert_eq!(d.isolated, l("ab"));

        // K4 has four parts
        let d = is_condition_c(&w("abcdabcd"));
        assert!(!d.valid);
        assert_eq!(d.parts.len(), 4);
    }

    #[test]
    fn valid_decompositions_are_complete_multipartite() {
        for n in 0..=6 {
            for word in enumerate_diagrams(n, false).unwrap() {
                let g = interlace_graph(&word);
                let d = decompose(&g);
                let mut covered: Vec<Letter> = d
                    .isolated
                    .iter()
                    .chain(d.parts.iter().flatten())
                    .copied()
                    .collect();
                covered.sort_unstable();
                assert_eq!(covered, word.letters().collect::<Vec<_>>());
                if !d.valid {
                    continue;
                }
                assert!(d.parts.len() <= 3 && d.parts.len() != 1);
                for (i, a) in d.parts.iter().enumerate() {
                    for (j, b) in d.parts.iter().enumerate() {
                        for &x in a {
                            for &y in b {
                                if x != y {
                                    assert_eq!(g.adjacent(x, y), i != j);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_gives_induced_subgraph() {
        for n in 0..=5 {
            for word in enumerate_diagrams(n, false).unwrap() {
                let g = interlace_graph(&word);
                for mask in 0u32..(1 << n) {
                    let keep: Vec<Letter> = (0..n as u32)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(Letter)
                        .collect();
                    let sub = restrict(&word, &keep).unwrap();
                    assert_eq!(interlace_graph(&sub), g.induced(&keep));
                }
            }
        }
    }

    #[test]
    fn invariant_under_symmetries() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=8 {
            for _ in 0..300 {
                let word = random_word(n, &mut rng);
                let mut perm: Vec<u32> = (0..n as u32).collect();
                perm.shuffle(&mut rng);
                let mut other = word.rotated(rng.gen_range(0..2 * n)).relabeled(&perm);
                if rng.gen() {
                    other = other.reversed();
                }
                assert_eq!(
                    interlace_graph(&word).relabeled(&perm),
                    interlace_graph(&other)
                );
            }
        }
    }
}
