//! Bundles on rational trees as explicit gluing data, with cohomology from
//! the Mayer-Vietoris kernel: global sections are tuples of component
//! sections whose glued fiber values agree at every node.

use super::field::Field;
use super::linalg::{inverse, is_invertible, rank, Matrix};
use super::modification::random_invertible;
use crate::error::OracleError;
use crate::splitcalc::SplitType;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// A node gluing two components: fiber of `left` at `left_coord` is carried
/// onto the fiber of `right` at `right_coord` by an invertible matrix.
#[derive(Clone, Debug)]
pub struct GluedNode<E> {
    pub left: usize,
    pub left_coord: i64,
    pub right: usize,
    pub right_coord: i64,
    pub matrix: Matrix<E>,
}

/// A vector bundle on a tree of lines: per-component splitting data plus
/// node gluings. Attachment coordinates stay at small finite chart values.
#[derive(Clone, Debug)]
pub struct TreeBundleData<F: Field> {
    field: F,
    components: Vec<SplitType>,
    nodes: Vec<GluedNode<F::Elem>>,
}

impl<F: Field> TreeBundleData<F> {
    pub fn new(
        field: &F,
        components: Vec<SplitType>,
        nodes: Vec<GluedNode<F::Elem>>,
    ) -> Result<Self, OracleError> {
        if components.is_empty() {
            return Err(OracleError::NotATree);
        }
        let r = components[0].rank();
        if components.iter().any(|c| c.rank() != r) {
            return Err(OracleError::RankMismatch);
        }
        // Distinct coordinates per component.
        let mut seen: Vec<Vec<i64>> = vec![Vec::new(); components.len()];
        for (idx, n) in nodes.iter().enumerate() {
            if n.left >= components.len() || n.right >= components.len() {
                return Err(OracleError::NotATree);
            }
            for (comp, coord) in [(n.left, n.left_coord), (n.right, n.right_coord)] {
                if seen[comp].contains(&coord) {
                    return Err(OracleError::CoincidentNodes);
                }
                seen[comp].push(coord);
            }
            if n.matrix.rows != r || n.matrix.cols != r || !is_invertible(&field.clone(), &n.matrix)
            {
                return Err(OracleError::SingularGluing(idx));
            }
        }
        // Tree topology: n - 1 edges, connected, acyclic (union-find).
        if nodes.len() + 1 != components.len() {
            return Err(OracleError::NotATree);
        }
        let mut parent: Vec<usize> = (0..components.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for n in &nodes {
            let (a, b) = (find(&mut parent, n.left), find(&mut parent, n.right));
            if a == b {
                return Err(OracleError::NotATree);
            }
            parent[a] = b;
        }
        Ok(TreeBundleData {
            field: field.clone(),
            components,
            nodes,
        })
    }

    /// Tree with random invertible gluings along the given edges; attachment
    /// coordinates are the small elements 1, 2, 3, ... per component.
    pub fn with_general_gluing(
        field: &F,
        components: Vec<SplitType>,
        edges: &[(usize, usize)],
        seed: u64,
    ) -> Result<Self, OracleError> {
        if components.is_empty() {
            return Err(OracleError::NotATree);
        }
        let r = components[0].rank();
        let mut rng = StdRng::seed_from_u64(seed);
        let mut next_coord = vec![1i64; components.len()];
        let mut nodes = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= components.len() || b >= components.len() {
                return Err(OracleError::NotATree);
            }
            let left_coord = next_coord[a];
            next_coord[a] += 1;
            let right_coord = next_coord[b];
            next_coord[b] += 1;
            nodes.push(GluedNode {
                left: a,
                left_coord,
                right: b,
                right_coord,
                matrix: random_invertible(field, r, &mut rng)?,
            });
        }
        TreeBundleData::new(field, components, nodes)
    }

    pub fn rank(&self) -> usize {
        self.components[0].rank()
    }

    pub fn components(&self) -> &[SplitType] {
        &self.components
    }

    pub fn nodes(&self) -> &[GluedNode<F::Elem>] {
        &self.nodes
    }

    pub fn chi(&self, twists: &[i64]) -> i64 {
        let r = self.rank() as i64;
        let total: i64 = self
            .components
            .iter()
            .zip(twists)
            .map(|(c, &t)| c.degree() + r * t + r)
            .sum();
        total - r * self.nodes.len() as i64
    }

    /// `(h0, h1)` with every component at its natural twist.
    pub fn cohomology(&self) -> (i64, i64) {
        self.cohomology_twisted(&vec![0; self.components.len()])
    }

    /// `(h0, h1)` after twisting component `i` by `twists[i]`.
    ///
    /// `h0` is the kernel of the glued evaluation map at the nodes; `h1`
    /// follows from the Euler characteristic, which twists component-wise.
    pub fn cohomology_twisted(&self, twists: &[i64]) -> (i64, i64) {
        assert_eq!(twists.len(), self.components.len());
        let f = &self.field;
        let r = self.rank();
        let twisted: Vec<SplitType> = self
            .components
            .iter()
            .zip(twists)
            .map(|(c, &t)| c.twist(t))
            .collect();
        let dims: Vec<Vec<usize>> = twisted
            .iter()
            .map(|c| {
                c.degrees()
                    .iter()
                    .map(|&a| (a + 1).max(0) as usize)
                    .collect()
            })
            .collect();
        let comp_offsets: Vec<usize> = {
            let mut acc = 0;
            let mut out = Vec::with_capacity(dims.len());
            for d in &dims {
                out.push(acc);
                acc += d.iter().sum::<usize>();
            }
            out
        };
        let cols: usize = dims.iter().map(|d| d.iter().sum::<usize>()).sum();
        let rows = r * self.nodes.len();
        let mut m = Matrix::filled(rows, cols, f.zero());
        // Row block per node: g * eval_left - eval_right = 0.
        for (nidx, node) in self.nodes.iter().enumerate() {
            let row_base = nidx * r;
            // Left side through the gluing matrix.
            let x = f.from_i64(node.left_coord);
            let mut col = comp_offsets[node.left];
            for (i, &dim) in dims[node.left].iter().enumerate() {
                let mut xk = f.one();
                for _ in 0..dim {
                    for k in 0..r {
                        let v = f.mul(node.matrix.at(k, i), &xk);
                        let cur = f.add(m.at(row_base + k, col), &v);
                        m.set(row_base + k, col, cur);
                    }
                    xk = f.mul(&xk, &x);
                    col += 1;
                }
            }
            // Right side, negated identity on fibers.
            let x = f.from_i64(node.right_coord);
            let mut col = comp_offsets[node.right];
            for (i, &dim) in dims[node.right].iter().enumerate() {
                let mut xk = f.one();
                for _ in 0..dim {
                    let cur = f.sub(m.at(row_base + i, col), &xk);
                    m.set(row_base + i, col, cur);
                    xk = f.mul(&xk, &x);
                    col += 1;
                }
            }
        }
        let h0 = cols as i64 - rank(f, &m) as i64;
        let h1 = h0 - self.chi(twists);
        debug_assert!(h1 >= 0, "h1 must be non-negative");
        (h0, h1)
    }

    /// The endomorphism bundle of this tree bundle: component types become
    /// the pairwise-difference types and each gluing acts by conjugation.
    pub fn end_tree(&self) -> Result<TreeBundleData<F>, OracleError> {
        let f = &self.field;
        let r = self.rank();
        // Sorted end degrees with the permutation from matrix positions
        // (i, j) <-> Hom(O(a_j), O(a_i)) to sorted summand slots.
        let perms: Vec<(SplitType, Vec<usize>)> = self
            .components
            .iter()
            .map(|c| {
                let degs = c.degrees();
                let mut pairs: Vec<(i64, usize)> = Vec::with_capacity(r * r);
                for i in 0..r {
                    for j in 0..r {
                        pairs.push((degs[i] - degs[j], i * r + j));
                    }
                }
                pairs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
                let end_type =
                    SplitType::new(pairs.iter().map(|&(d, _)| d).collect::<Vec<_>>()).unwrap();
                let perm = pairs.iter().map(|&(_, p)| p).collect();
                (end_type, perm)
            })
            .collect();
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for (idx, node) in self.nodes.iter().enumerate() {
            let g = &node.matrix;
            let g_inv = inverse(f, g).ok_or(OracleError::SingularGluing(idx))?;
            // Conjugation M -> g M g^{-1} in matrix-position coordinates:
            // K[(i', j'), (i, j)] = g[i', i] * g_inv[j, j'].
            let mut k = Matrix::filled(r * r, r * r, f.zero());
            for ip in 0..r {
                for jp in 0..r {
                    for i in 0..r {
                        for j in 0..r {
                            let v = f.mul(g.at(ip, i), g_inv.at(j, jp));
                            k.set(ip * r + jp, i * r + j, v);
                        }
                    }
                }
            }
            // Reindex by the sorted summand orders on both sides.
            let pl = &perms[node.left].1;
            let pr = &perms[node.right].1;
            let mut sorted = Matrix::filled(r * r, r * r, f.zero());
            for (row, &orig_row) in pr.iter().enumerate() {
                for (col, &orig_col) in pl.iter().enumerate() {
                    sorted.set(row, col, k.at(orig_row, orig_col).clone());
                }
            }
            nodes.push(GluedNode {
                left: node.left,
                left_coord: node.left_coord,
                right: node.right,
                right_coord: node.right_coord,
                matrix: sorted,
            });
        }
        TreeBundleData::new(f, perms.into_iter().map(|(t, _)| t).collect(), nodes)
    }
}

/// Convenience: `(h0, h1)` of a comb-shaped tree with general gluing.
pub fn tree_cohomology<F: Field>(data: &TreeBundleData<F>) -> (i64, i64) {
    data.cohomology()
}

/// Seeded random gluing matrix, exposed for building explicit trees by hand.
pub fn general_gluing_matrix<F: Field>(
    field: &F,
    rank: usize,
    seed: u64,
) -> Result<Matrix<F::Elem>, OracleError> {
    let mut rng = StdRng::seed_from_u64(seed);
    random_invertible(field, rank, &mut rng)
}
