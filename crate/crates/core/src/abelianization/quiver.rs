use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

/// A connected directed graph, required to be acyclic wherever weights are computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagQuiver {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl DagQuiver {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidInput(
                "a quiver needs at least one vertex".into(),
            ));
        }
        let n = vertices.len();
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= n || j >= n) {
            return Err(Error::InvalidInput(format!(
                "edge ({i}, {j}) leaves the vertex set"
            )));
        }
        let q = DagQuiver { vertices, edges };
        if !q.is_connected() {
            return Err(Error::InvalidInput("quiver is not connected".into()));
        }
        Ok(q)
    }

    /// Vertices `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges.to_vec())
    }

    /// Parses `a -> b` edges separated by commas, semicolons or newlines.
    /// A bare name declares an isolated vertex.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |s: &str| -> usize {
            if let Some(&i) = index.get(s) {
                return i;
            }
            names.push(s.to_string());
            index.insert(s.to_string(), names.len() - 1);
            names.len() - 1
        };
        let mut edges = Vec::new();
        for item in text
            .split([',', ';', '\n'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            match item.split_once("->") {
                Some((a, b)) => {
                    let (a, b) = (a.trim(), b.trim());
                    if a.is_empty() || b.is_empty() {
                        return Err(Error::Parse {
                            pos: 0,
                            msg: format!("incomplete edge `{item}`"),
                        });
                    }
                    let i = intern(a);
                    let j = intern(b);
                    edges.push((i, j));
                }
                None => {
                    intern(item);
                }
            }
        }
        Self::new(names, edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Integer weights with `λ_i < 0` everywhere and `λ_i < λ_j` on each edge `i -> j`.
///
/// Sources are peeled one at a time; walking the peeling order backwards,
/// each vertex gets one less than everything assigned after it.
pub fn proper_quiver_weights(q: &DagQuiver) -> Result<BTreeMap<usize, i64>> {
    let n = q.vertices.len();
    let mut indeg = vec![0usize; n];
    let mut out_adj = vec![Vec::new(); n];
    for &(i, j) in &q.edges {
        indeg[j] += 1;
        out_adj[i].push(j);
    }
    let mut order = Vec::with_capacity(n);
    let mut removed = vec![false; n];
    while order.len() < n {
        let source = (0..n).find(|&v| !removed[v] && indeg[v] == 0);
        let Some(s) = source else {
            return Err(Error::Cycle(vertex_on_cycle(q, &removed)));
        };
        removed[s] = true;
        order.push(s);
        for &j in &out_adj[s] {
            indeg[j] -= 1;
        }
    }
    let mut weights = BTreeMap::new();
    let mut lowest = 0i64;
    for &v in order.iter().rev() {
        lowest -= 1;
        weights.insert(v, lowest);
    }
    Ok(weights)
}

fn vertex_on_cycle(q: &DagQuiver, removed: &[bool]) -> usize {
    let n = q.vertices.len();
    let mut pred = vec![None; n];
    for &(i, j) in &q.edges {
        if !removed[i] && !removed[j] {
            pred[j] = Some(i);
        }
    }
    // every remaining vertex has a remaining predecessor; walking back must repeat
    let mut v = (0..n).find(|&v| !removed[v]).unwrap();
    let mut seen = vec![false; n];
    while !seen[v] {
        seen[v] = true;
        v = pred[v].unwrap();
    }
    v
}

/// The postcondition of [`proper_quiver_weights`].
pub fn is_proper(q: &DagQuiver, weights: &BTreeMap<usize, i64>) -> bool {
    (0..q.vertices.len()).all(|v| weights.get(&v).is_some_and(|&w| w < 0))
        && q.edges.iter().all(|(i, j)| weights[i] < weights[j])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let q = DagQuiver::parse("v").unwrap();
        assert_eq!(
            proper_quiver_weights(&q).unwrap(),
            BTreeMap::from([(0, -1)])
        );
    }

    #[test]
    fn path() {
        let q = DagQuiver::parse("1 -> 2, 2 -> 3").unwrap();
        let w = proper_quiver_weights(&q).unwrap();
        assert_eq!(w, BTreeMap::from([(0, -3), (1, -2), (2, -1)]));
        assert!(is_proper(&q, &w));
    }

    #[test]
    fn two_cycle_is_rejected() {
        let q = DagQuiver::parse("a -> b; b -> a").unwrap();
        assert!(matches!(proper_quiver_weights(&q), Err(Error::Cycle(_))));
    }

    #[test]
    fn disconnected_is_rejected() {
        assert!(DagQuiver::parse("a -> b, c").is_err());
    }
}
