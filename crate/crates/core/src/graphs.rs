//! Random graph families and graph shift operators.

use std::collections::VecDeque;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectral::SymMatrix;

/// Draws allowed before giving up on a connected sample.
pub const MAX_CONNECTIVITY_ATTEMPTS: usize = 1000;

/// An undirected weighted graph stored as a dense symmetric adjacency matrix
/// with zero diagonal and nonnegative weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adjacency: SymMatrix,
}

impl Graph {
    pub fn from_adjacency(adjacency: SymMatrix) -> Result<Self> {
        let n = adjacency.dim();
        for i in 0..n {
            if adjacency[(i, i)] != 0.0 {
                return Err(Error::InvalidConfig(format!("adjacency diagonal entry {i} is nonzero")));
            }
            for j in 0..n {
                if adjacency[(i, j)] < 0.0 {
                    return Err(Error::InvalidConfig(format!("negative edge weight at ({i}, {j})")));
                }
            }
        }
        Ok(Self { adjacency })
    }

    /// Unweighted graph on `n` vertices from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut a = Matrix::zeros(n, n);
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidConfig(format!("edge ({i}, {j}) out of range for {n} vertices")));
            }
            if i == j {
                return Err(Error::InvalidConfig(format!("self-loop at vertex {i}")));
            }
            a[(i, j)] = 1.0;
            a[(j, i)] = 1.0;
        }
        Self::from_adjacency(SymMatrix::new(a)?)
    }

    pub fn n(&self) -> usize {
        self.adjacency.dim()
    }

    pub fn adjacency(&self) -> &SymMatrix {
        &self.adjacency
    }

    /// Number of undirected edges (nonzero upper-triangle entries).
    pub fn edge_count(&self) -> usize {
        let n = self.n();
        (0..n).map(|i| ((i + 1)..n).filter(|&j| self.adjacency[(i, j)] != 0.0).count()).sum()
    }

    /// Weighted degrees (row sums).
    pub fn degrees(&self) -> Vec<f64> {
        self.adjacency.as_matrix().row_iter().map(|r| r.iter().sum()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphFamily {
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    /// Vertices are assigned to blocks contiguously in the order given.
    Sbm {
        block_sizes: Vec<usize>,
        p_in: f64,
        p_out: f64,
    },
    /// Uniform points in the unit square joined when within `radius`.
    RandomGeometric {
        n: usize,
        radius: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphSpec {
    pub family: GraphFamily,
    pub require_connected: bool,
}

impl GraphSpec {
    pub fn new(family: GraphFamily) -> Self {
        Self { family, require_connected: true }
    }

    /// 100 vertices, edge probability 0.184.
    pub fn erdos_renyi_preset() -> Self {
        Self::new(GraphFamily::ErdosRenyi { n: 100, p: 0.184 })
    }

    /// Two blocks of 50 vertices, 0.35 within and 0.022 across.
    pub fn sbm_preset() -> Self {
        Self::new(GraphFamily::Sbm { block_sizes: vec![50, 50], p_in: 0.35, p_out: 0.022 })
    }

    /// 100 vertices, radius 0.274.
    pub fn random_geometric_preset() -> Self {
        Self::new(GraphFamily::RandomGeometric { n: 100, radius: 0.274 })
    }

    pub fn n(&self) -> usize {
        match &self.family {
            GraphFamily::ErdosRenyi { n, .. } | GraphFamily::RandomGeometric { n, .. } => *n,
            GraphFamily::Sbm { block_sizes, .. } => block_sizes.iter().sum(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} = {p} is not a probability")))
            }
        };
        match &self.family {
            GraphFamily::ErdosRenyi { p, .. } => prob("p", *p)?,
            GraphFamily::Sbm { block_sizes, p_in, p_out } => {
                prob("p_in", *p_in)?;
                prob("p_out", *p_out)?;
                if block_sizes.is_empty() || block_sizes.contains(&0) {
                    return Err(Error::InvalidConfig("SBM block sizes must be positive".into()));
                }
            }
            GraphFamily::RandomGeometric { radius, .. } => {
                if radius.is_nan() || *radius <= 0.0 {
                    return Err(Error::InvalidConfig(format!("radius = {radius} must be positive")));
                }
            }
        }
        if self.n() == 0 {
            return Err(Error::InvalidConfig("graph needs at least one vertex".into()));
        }
        Ok(())
    }

    /// Expected number of edges for the Erdős–Rényi and SBM families.
    pub fn expected_edges(&self) -> Option<f64> {
        match &self.family {
            GraphFamily::ErdosRenyi { n, p } => Some(p * (*n as f64) * (*n as f64 - 1.0) / 2.0),
            GraphFamily::Sbm { block_sizes, p_in, p_out } => {
                let total: usize = block_sizes.iter().sum();
                let within: f64 = block_sizes.iter().map(|&b| (b * b.saturating_sub(1)) as f64 / 2.0).sum();
                let all = (total * total.saturating_sub(1)) as f64 / 2.0;
                Some(p_in * within + p_out * (all - within))
            }
            GraphFamily::RandomGeometric { .. } => None,
        }
    }
}

/// Draws a graph from `spec`. When connectivity is required, whole graphs
/// are redrawn until one is connected.
pub fn gen_graph<R: Rng + ?Sized>(spec: &GraphSpec, rng: &mut R) -> Result<Graph> {
    spec.validate()?;
    if !spec.require_connected {
        return draw(&spec.family, rng);
    }
    for _ in 0..MAX_CONNECTIVITY_ATTEMPTS {
        let g = draw(&spec.family, rng)?;
        if is_connected(&g) {
            return Ok(g);
        }
    }
    Err(Error::ConnectivityExhausted { attempts: MAX_CONNECTIVITY_ATTEMPTS })
}

fn draw<R: Rng + ?Sized>(family: &GraphFamily, rng: &mut R) -> Result<Graph> {
    let n = match family {
        GraphFamily::ErdosRenyi { n, .. } | GraphFamily::RandomGeometric { n, .. } => *n,
        GraphFamily::Sbm { block_sizes, .. } => block_sizes.iter().sum(),
    };
    let mut a = Matrix::zeros(n, n);
    let link = |a: &mut Matrix, i: usize, j: usize| {
        a[(i, j)] = 1.0;
        a[(j, i)] = 1.0;
    };
    match family {
        GraphFamily::ErdosRenyi { p, .. } => {
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.random::<f64>() < *p {
                        link(&mut a, i, j);
                    }
                }
            }
        }
        GraphFamily::Sbm { block_sizes, p_in, p_out } => {
            let block: Vec<usize> =
                block_sizes.iter().enumerate().flat_map(|(b, &size)| std::iter::repeat_n(b, size)).collect();
            for i in 0..n {
                for j in (i + 1)..n {
                    let p = if block[i] == block[j] { *p_in } else { *p_out };
                    if rng.random::<f64>() < p {
                        link(&mut a, i, j);
                    }
                }
            }
        }
        GraphFamily::RandomGeometric { radius, .. } => {
            let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
            let r2 = radius * radius;
            for i in 0..n {
                for j in (i + 1)..n {
                    let dx = pts[i].0 - pts[j].0;
                    let dy = pts[i].1 - pts[j].1;
                    if dx * dx + dy * dy <= r2 {
                        link(&mut a, i, j);
                    }
                }
            }
        }
    }
    Graph::from_adjacency(SymMatrix::new(a)?)
}

/// Breadth-first search from vertex 0 over nonzero adjacency entries.
pub fn is_connected(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let a = g.adjacency().as_matrix();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(i) = queue.pop_front() {
        for (j, &w) in a.row(i).iter().enumerate() {
            if w != 0.0 && !seen[j] {
                seen[j] = true;
                reached += 1;
                queue.push_back(j);
            }
        }
    }
    reached == n
}

/// `D^(-1/2) A D^(-1/2)` with `D` the weighted degree matrix.
pub fn normalized_adjacency(g: &Graph) -> Result<SymMatrix> {
    let deg = g.degrees();
    if let Some(vertex) = deg.iter().position(|&d| d <= 0.0) {
        return Err(Error::ZeroDegreeVertex { vertex });
    }
    let inv_sqrt: Vec<f64> = deg.iter().map(|d| 1.0 / d.sqrt()).collect();
    let n = g.n();
    let a = g.adjacency().as_matrix();
    let mut s = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] = inv_sqrt[i] * a[(i, j)] * inv_sqrt[j];
        }
    }
    SymMatrix::new(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k2() -> Graph {
        Graph::from_edges(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn connectivity_small_cases() {
        assert!(is_connected(&k2()));
        assert!(!is_connected(&Graph::from_edges(2, &[]).unwrap()));
        assert!(is_connected(&Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()));
    }

    #[test]
    fn empty_erdos_renyi() {
        let spec = GraphSpec { family: GraphFamily::ErdosRenyi { n: 10, p: 0.0 }, require_connected: false };
        let g = gen_graph(&spec, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn impossible_connectivity_is_reported() {
        let spec = GraphSpec { family: GraphFamily::ErdosRenyi { n: 5, p: 0.0 }, require_connected: true };
        let err = gen_graph(&spec, &mut ChaCha8Rng::seed_from_u64(1)).unwrap_err();
        assert_eq!(err, Error::ConnectivityExhausted { attempts: MAX_CONNECTIVITY_ATTEMPTS });
    }

    #[test]
    fn normalized_adjacency_k2_unchanged() {
        let s = normalized_adjacency(&k2()).unwrap();
        assert_eq!(s.as_matrix(), k2().adjacency().as_matrix());
    }

    #[test]
    fn normalized_adjacency_star() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let s = normalized_adjacency(&g).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((s[(0, 1)] - h).abs() < 1e-15);
        assert!((s[(0, 2)] - h).abs() < 1e-15);
        assert!((s[(2, 0)] - h).abs() < 1e-15);
        assert_eq!(s[(1, 2)], 0.0);
        assert_eq!(s[(0, 0)], 0.0);
    }

    #[test]
    fn normalized_adjacency_isolated_vertex() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(normalized_adjacency(&g).unwrap_err(), Error::ZeroDegreeVertex { vertex: 2 });
    }

    #[test]
    fn sbm_expected_edges_closed_form() {
        assert!((GraphSpec::sbm_preset().expected_edges().unwrap() - 912.5).abs() < 1e-9);
        assert!((GraphSpec::erdos_renyi_preset().expected_edges().unwrap() - 910.8).abs() < 1e-9);
    }

    #[test]
    fn invalid_specs_rejected() {
        let bad = GraphSpec::new(GraphFamily::ErdosRenyi { n: 10, p: 1.5 });
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let bad = GraphSpec::new(GraphFamily::RandomGeometric { n: 10, radius: 0.0 });
        assert!(bad.validate().is_err());
        let bad = GraphSpec::new(GraphFamily::Sbm { block_sizes: vec![], p_in: 0.1, p_out: 0.1 });
        assert!(bad.validate().is_err());
    }

    #[test]
    fn adjacency_validation() {
        let loop_diag = SymMatrix::from_rows(&[[1.0, 0.0], [0.0, 0.0]]).unwrap();
        assert!(Graph::from_adjacency(loop_diag).is_err());
        let negative = SymMatrix::from_rows(&[[0.0, -1.0], [-1.0, 0.0]]).unwrap();
        assert!(Graph::from_adjacency(negative).is_err());
    }
}
