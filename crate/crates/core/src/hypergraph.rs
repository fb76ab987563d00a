//! k-uniform hypergraph instances with bounded hyperedge intersection,
//! stored as incidence lists (edge -> vertices and vertex -> edges).
//!
//! Text format: line 1 `H <m> <N> <k> <d>`, then N lines of k space-separated
//! 0-based vertex ids.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Hypergraph {
    m: u64,
    k: u32,
    d: u32,
    edges: Vec<Vec<u32>>,
    incidence: Vec<Vec<u32>>,
}

impl Hypergraph {
    /// Validate and index an edge list. `k` and `d` are the declared
    /// uniformity and intersection-degree bound; the actual values are
    /// computed and checked against them.
    pub fn new(m: u64, k: u32, d: u32, mut edges: Vec<Vec<u32>>) -> Result<Hypergraph> {
        if m == 0 || k == 0 {
            return Err(Error::param("hypergraph needs m >= 1 and k >= 1"));
        }
        if m > u32::MAX as u64 {
            return Err(Error::param("vertex count above u32 range"));
        }
        let mut incidence: Vec<Vec<u32>> = vec![vec![]; m as usize];
        for (e, vs) in edges.iter_mut().enumerate() {
            if vs.len() != k as usize {
                return Err(Error::load(e + 2, format!("non-uniform edge: {} vertices, expected {k}", vs.len())));
            }
            vs.sort_unstable();
            if vs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::load(e + 2, "duplicate vertex in edge"));
            }
            if *vs.last().unwrap() as u64 >= m {
                return Err(Error::load(e + 2, format!("dangling vertex id {}", vs.last().unwrap())));
            }
            for &v in vs.iter() {
                incidence[v as usize].push(e as u32);
            }
        }
        let h = Hypergraph { m, k, d, edges, incidence };
        for e in 0..h.edges.len() {
            let deg = h.dependency_neighbors_unchecked(e as u32).len() as u32;
            if deg > d {
                return Err(Error::load(e + 2, format!("edge intersects {deg} others, declared bound {d}")));
            }
        }
        Ok(h)
    }

    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or_else(|| Error::load(1, "empty file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "H" {
            return Err(Error::load(hline + 1, "expected header `H <m> <N> <k> <d>`"));
        }
        let parse_num = |s: &str, line: usize| {
            s.parse::<u64>().map_err(|_| Error::load(line, format!("bad number {s:?}")))
        };
        let m = parse_num(fields[1], hline + 1)?;
        let n = parse_num(fields[2], hline + 1)?;
        let k = parse_num(fields[3], hline + 1)? as u32;
        let d = parse_num(fields[4], hline + 1)? as u32;
        let mut edges = Vec::with_capacity(n as usize);
        for (lno, line) in lines {
            let vs = line
                .split_whitespace()
                .map(|s| {
                    let v = parse_num(s, lno + 1)?;
                    if v > u32::MAX as u64 {
                        return Err(Error::load(lno + 1, format!("vertex id {v} out of range")));
                    }
                    Ok(v as u32)
                })
                .collect::<Result<Vec<u32>>>()?;
            edges.push(vs);
        }
        if edges.len() as u64 != n {
            return Err(Error::load(1, format!("header declares {n} edges, found {}", edges.len())));
        }
        Hypergraph::new(m, k, d, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("H {} {} {} {}\n", self.m, self.edges.len(), self.k, self.d);
        for vs in &self.edges {
            let row: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n_edges(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn edge(&self, e: u32) -> &[u32] {
        &self.edges[e as usize]
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    /// Edges incident to vertex v (the row of the incidence matrix).
    pub fn incident_edges(&self, v: u32) -> &[u32] {
        &self.incidence[v as usize]
    }

    /// Neighbors of edge e in the dependency graph (edges sharing >= 1
    /// vertex), deduplicated.
    pub fn dependency_neighbors(&self, e: u32) -> Result<Vec<u32>> {
        if e as u64 >= self.n_edges() {
            return Err(Error::param(format!("edge id {e} out of range")));
        }
        Ok(self.dependency_neighbors_unchecked(e))
    }

    fn dependency_neighbors_unchecked(&self, e: u32) -> Vec<u32> {
        let mut nbrs: Vec<u32> = self.edges[e as usize]
            .iter()
            .flat_map(|&v| self.incidence[v as usize].iter().copied())
            .filter(|&f| f != e)
            .collect();
        nbrs.sort_unstable();
        nbrs.dedup();
        nbrs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Hypergraph {
        // two edges sharing two vertices
        Hypergraph::new(4, 3, 1, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn single_edge_d0() {
        let h = Hypergraph::new(5, 5, 0, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(h.dependency_neighbors(0).unwrap(), Vec::<u32>::new());
        assert!(h.dependency_neighbors(1).is_err());
    }

    #[test]
    fn shared_vertices_deduplicated() {
        let h = tiny();
        assert_eq!(h.dependency_neighbors(0).unwrap(), vec![1]);
        assert_eq!(h.dependency_neighbors(1).unwrap(), vec![0]);
    }

    #[test]
    fn load_errors() {
        assert!(matches!(
            Hypergraph::new(4, 3, 1, vec![vec![0, 1]]),
            Err(Error::Load { line: 2, .. })
        ));
        assert!(matches!(
            Hypergraph::new(4, 3, 1, vec![vec![0, 1, 1]]),
            Err(Error::Load { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 3, 1, vec![vec![0, 1, 3]]),
            Err(Error::Load { .. })
        ));
        // intersection degree above declared bound
        assert!(matches!(
            Hypergraph::new(5, 2, 1, vec![vec![0, 1], vec![1, 2], vec![1, 3]]),
            Err(Error::Load { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let h = tiny();
        let h2 = Hypergraph::parse(&h.to_text()).unwrap();
        assert_eq!(h2.edges(), h.edges());
        assert_eq!(h2.m(), 4);
        assert!(Hypergraph::parse("H 4 2 3 1\n0 1 2\n").is_err()); // edge count mismatch
        assert!(Hypergraph::parse("G 4 1 3 1\n").is_err());
    }

    #[test]
    fn incidence_is_transpose() {
        let h = tiny();
        for v in 0..4u32 {
            for &e in h.incident_edges(v) {
                assert!(h.edge(e).contains(&v));
            }
        }
        for e in 0..2u32 {
            for &v in h.edge(e) {
                assert!(h.incident_edges(v).contains(&e));
            }
        }
    }
}
