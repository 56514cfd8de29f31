//! Broken combs and the executable smoothing reduction.
//!
//! A comb is a base line with rational-tree teeth, each attached at one
//! root. The reduction eliminates outermost tooth components one at a time:
//! twist the neighbour so the leaving component has upper degree zero, then,
//! unless the leaving component was a twist of a trivial bundle, push a
//! general down modification of corank `r - r+` onto the neighbour, and
//! contract. What reaches the base is a twist plus a general modification at
//! each root; the result is the predicted splitting type of a smoothing,
//! reported next to the partition bound `M_k` of the base.

mod format;

pub use format::{emit_comb, parse_comb};

use crate::error::CombError;
use crate::oracle::{Field, TreeBundleData};
use crate::splitcalc::{Partition, SplitType};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// How tooth bundles are glued to their neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GluingMode {
    /// Gluings at all nodes are general; balanced tooth components suffice.
    General,
    /// Explicit gluing data lives with the oracle; the smoothing hypotheses
    /// then require every tooth component to be a twist of a trivial bundle.
    Explicit,
}

/// One tooth: a tree of components, component 0 being the root attached to
/// the base. Edges are (parent, child) pairs inside the tooth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tooth {
    pub components: Vec<SplitType>,
    pub edges: Vec<(usize, usize)>,
}

impl Tooth {
    pub fn single(split: SplitType) -> Self {
        Tooth {
            components: vec![split],
            edges: Vec::new(),
        }
    }

    /// A chain of components, root first.
    pub fn chain(splits: Vec<SplitType>) -> Self {
        let edges = (1..splits.len()).map(|i| (i - 1, i)).collect();
        Tooth {
            components: splits,
            edges,
        }
    }

    pub fn degree(&self) -> i64 {
        self.components.iter().map(|c| c.degree()).sum()
    }
}

/// A validated broken comb with a single projective-line base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombSpec {
    base: SplitType,
    teeth: Vec<Tooth>,
    mode: GluingMode,
}

/// Result of the smoothing reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReduceReport {
    /// Splitting type of the reduced family's special fibre: the smoothing
    /// is a deformation of this type.
    pub predicted: SplitType,
    /// The partition bound `M_k(Pi(base))`, `k` the total tooth degree.
    pub bound: Partition,
    /// Lexicographic comparison of the predicted partition against the bound.
    pub bound_cmp: Ordering,
    /// Total tooth degree `k`.
    pub tooth_degree: i64,
    /// Twist multiplicity accumulated at each root.
    pub root_twists: Vec<i64>,
    /// Down-modification colength accumulated at each root.
    pub root_colengths: Vec<i64>,
}

/// Builds and validates a comb: uniform rank, tree-shaped teeth, and the
/// smoothing hypotheses for the chosen gluing mode.
pub fn build_comb(
    base: SplitType,
    teeth: Vec<Tooth>,
    mode: GluingMode,
) -> Result<CombSpec, CombError> {
    let r = base.rank();
    for tooth in &teeth {
        if tooth.components.is_empty() {
            return Err(CombError::CyclicTopology);
        }
        if tooth.components.iter().any(|c| c.rank() != r) {
            return Err(CombError::RankMismatch);
        }
        // Tree shape: n - 1 edges, connected, acyclic.
        let n = tooth.components.len();
        if tooth.edges.len() + 1 != n {
            return Err(CombError::CyclicTopology);
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &tooth.edges {
            if a >= n || b >= n {
                return Err(CombError::CyclicTopology);
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(CombError::CyclicTopology);
            }
            parent[ra] = rb;
        }
        for (idx, c) in tooth.components.iter().enumerate() {
            if !c.is_balanced() {
                return Err(CombError::HypothesisViolation(format!(
                    "tooth component {idx} has unbalanced type {c}"
                )));
            }
            if mode == GluingMode::Explicit && !c.is_twist_of_trivial() {
                return Err(CombError::HypothesisViolation(format!(
                    "explicit gluing requires twist-of-trivial teeth, got {c}"
                )));
            }
        }
    }
    Ok(CombSpec { base, teeth, mode })
}

impl CombSpec {
    pub fn base(&self) -> &SplitType {
        &self.base
    }

    pub fn teeth(&self) -> &[Tooth] {
        &self.teeth
    }

    pub fn mode(&self) -> GluingMode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    /// Total degree carried by the teeth.
    pub fn tooth_degree(&self) -> i64 {
        self.teeth.iter().map(|t| t.degree()).sum()
    }

    /// Runs the inductive elimination and returns the predicted type with
    /// the partition bound.
    pub fn smoothing_reduce(&self) -> Result<ReduceReport, CombError> {
        let r = self.rank();
        let mut root_twists = Vec::with_capacity(self.teeth.len());
        let mut root_colengths = Vec::with_capacity(self.teeth.len());
        for tooth in &self.teeth {
            let (m, s) = reduce_tooth(tooth, r)?;
            root_twists.push(m);
            root_colengths.push(s);
        }
        let m_total: i64 = root_twists.iter().sum();
        let s_total: i64 = root_colengths.iter().sum();
        let predicted = self
            .base
            .twist(m_total)
            .partition()
            .modify(-s_total)
            .split_type();
        let k = self.tooth_degree();
        debug_assert_eq!(
            predicted.degree(),
            self.base.degree() + k,
            "degree conservation"
        );
        let bound = self.base.partition().modify(k);
        let bound_cmp = predicted
            .partition()
            .lex_cmp(&bound)
            .expect("bound and prediction share the base width");
        Ok(ReduceReport {
            predicted,
            bound,
            bound_cmp,
            tooth_degree: k,
            root_twists,
            root_colengths,
        })
    }

    /// Theorem check: under the tree hypotheses (balanced base as well, or a
    /// twist of trivial when the gluing is explicit), the predicted smoothing
    /// must be balanced.
    pub fn is_balanced_smoothing(&self) -> Result<bool, CombError> {
        if !self.base.is_balanced() {
            return Err(CombError::HypothesisViolation(format!(
                "base {} is not balanced",
                self.base
            )));
        }
        if self.mode == GluingMode::Explicit && !self.base.is_twist_of_trivial() {
            return Err(CombError::HypothesisViolation(format!(
                "explicit gluing requires a twist-of-trivial base, got {}",
                self.base
            )));
        }
        Ok(self.smoothing_reduce()?.predicted.is_balanced())
    }

    /// Explicit tree-bundle data with general gluing, for oracle
    /// cross-checks of the reduction.
    pub fn to_tree_data<F: Field>(
        &self,
        field: &F,
        seed: u64,
    ) -> Result<TreeBundleData<F>, crate::error::OracleError> {
        let mut components = vec![self.base.clone()];
        let mut edges = Vec::new();
        for tooth in &self.teeth {
            let offset = components.len();
            components.extend(tooth.components.iter().cloned());
            edges.push((0usize, offset));
            for &(a, b) in &tooth.edges {
                edges.push((offset + a, offset + b));
            }
        }
        TreeBundleData::with_general_gluing(field, components, &edges, seed)
    }
}

/// Eliminates one tooth from its leaves inward; returns the twist and the
/// down colength that reach the base root.
fn reduce_tooth(tooth: &Tooth, rank: usize) -> Result<(i64, i64), CombError> {
    let n = tooth.components.len();
    let mut types: Vec<SplitType> = tooth.components.clone();
    let mut alive: Vec<bool> = vec![true; n];
    // Undirected adjacency; component 0 additionally touches the base.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &tooth.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let degree_of = |adj: &Vec<Vec<usize>>, alive: &Vec<bool>, v: usize| -> usize {
        adj[v].iter().filter(|&&w| alive[w]).count() + usize::from(v == 0)
    };
    let mut base_twist = 0i64;
    let mut base_colength = 0i64;
    let mut remaining = n;
    while remaining > 0 {
        // Deterministic pick: the highest-index extremal component.
        let f = (0..n)
            .rev()
            .find(|&v| alive[v] && degree_of(&adj, &alive, v) <= 1)
            .expect("a tree always has a leaf");
        let info = types[f].balance_info();
        if !info.balanced {
            return Err(CombError::HypothesisViolation(format!(
                "component degenerated to unbalanced {}",
                types[f]
            )));
        }
        let d_plus = info.upper_degree;
        let corank = (rank - info.upper_rank) as i64;
        let neighbour = adj[f].iter().copied().find(|&w| alive[w]);
        match neighbour {
            Some(w) => {
                let mut t = types[w].twist(d_plus);
                if corank > 0 {
                    t = t.partition().modify(-corank).split_type();
                }
                types[w] = t;
            }
            None => {
                // f is the root: its effect lands on the base.
                base_twist += d_plus;
                base_colength += corank;
            }
        }
        alive[f] = false;
        remaining -= 1;
    }
    Ok((base_twist, base_colength))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::PrimeField;

    fn st(degrees: &[i64]) -> SplitType {
        SplitType::new(degrees.to_vec()).unwrap()
    }

    fn teeth_of(split: SplitType, count: usize) -> Vec<Tooth> {
        (0..count).map(|_| Tooth::single(split.clone())).collect()
    }

    #[test]
    fn build_comb_examples() {
        let comb = build_comb(st(&[0, 0]), teeth_of(st(&[0, -1]), 5), GluingMode::General).unwrap();
        assert_eq!(comb.tooth_degree(), -5);

        let chain = Tooth::chain(vec![st(&[1, 1, 1]), st(&[0, 0, 0])]);
        assert!(build_comb(st(&[3, 3, 2]), vec![chain], GluingMode::General).is_ok());

        assert!(matches!(
            build_comb(
                st(&[0, 0]),
                teeth_of(st(&[0, 0, 0]), 1),
                GluingMode::General
            ),
            Err(CombError::RankMismatch)
        ));
        assert!(matches!(
            build_comb(st(&[0, 0]), teeth_of(st(&[2, 0]), 1), GluingMode::General),
            Err(CombError::HypothesisViolation(_))
        ));
        assert!(matches!(
            build_comb(st(&[0, 0]), teeth_of(st(&[1, 0]), 1), GluingMode::Explicit),
            Err(CombError::HypothesisViolation(_))
        ));
        // A cycle inside one tooth.
        let bad = Tooth {
            components: vec![st(&[0, 0]), st(&[0, 0])],
            edges: vec![(0, 1), (1, 0)],
        };
        assert!(matches!(
            build_comb(st(&[0, 0]), vec![bad], GluingMode::General),
            Err(CombError::CyclicTopology)
        ));
    }

    #[test]
    fn reduce_comb_example() {
        // Base O + O with five O + O(-1) teeth: each tooth acts as a general
        // corank-1 down modification.
        let comb = build_comb(st(&[0, 0]), teeth_of(st(&[0, -1]), 5), GluingMode::General).unwrap();
        let report = comb.smoothing_reduce().unwrap();
        assert_eq!(report.predicted, st(&[-2, -3]));
        assert_eq!(report.bound, st(&[-2, -3]).partition());
        assert_eq!(report.bound_cmp, Ordering::Equal);
        assert_eq!(report.tooth_degree, -5);
        assert_eq!(report.root_twists, vec![0; 5]);
        assert_eq!(report.root_colengths, vec![1; 5]);
        assert!(comb.is_balanced_smoothing().unwrap());
    }

    #[test]
    fn reduce_twist_of_trivial_tooth() {
        // A trivial-twist tooth contributes a pure twist at its root.
        let comb = build_comb(
            st(&[0, 0, 0]),
            vec![Tooth::single(st(&[1, 1, 1]))],
            GluingMode::General,
        )
        .unwrap();
        let report = comb.smoothing_reduce().unwrap();
        assert_eq!(report.predicted, st(&[1, 1, 1]));
        assert_eq!(report.root_twists, vec![1]);
        assert_eq!(report.root_colengths, vec![0]);
        assert_eq!(report.predicted.degree(), 3);
    }

    #[test]
    fn reduce_chain_tooth() {
        // Chain (0,-1) - (0,-1): the outer component pushes a corank-1
        // modification onto the inner one, which becomes (-1,-1), a twist of
        // trivial, and finally reaches the base as a twist by -1.
        let comb = build_comb(
            st(&[3, 0]),
            vec![Tooth::chain(vec![st(&[0, -1]), st(&[0, -1])])],
            GluingMode::General,
        )
        .unwrap();
        let report = comb.smoothing_reduce().unwrap();
        assert_eq!(report.root_twists, vec![-1]);
        assert_eq!(report.root_colengths, vec![0]);
        assert_eq!(report.predicted, st(&[2, -1]));
        assert_eq!(report.predicted.degree(), 3 + report.tooth_degree);
    }

    #[test]
    fn tooth_band_bound() {
        // Teeth O + O(-1) narrow the gap of a rank-2 base by one each until
        // it saturates at parity.
        for gap in 0..=8i64 {
            for t in 1..=8usize {
                let comb = build_comb(
                    st(&[gap, 0]),
                    teeth_of(st(&[0, -1]), t),
                    GluingMode::General,
                )
                .unwrap();
                let p = comb.smoothing_reduce().unwrap().predicted;
                let band = (p.degrees()[0] - p.degrees()[1]).abs();
                assert!(
                    band <= (gap - t as i64).max(1),
                    "gap {gap}, t {t}: band {band} exceeds the limit"
                );
            }
        }
    }

    #[test]
    fn order_robustness() {
        // Relabelling tooth components and shuffling teeth must not change
        // the prediction.
        let tooth_a = Tooth {
            components: vec![st(&[0, 0, -1]), st(&[0, -1, -1]), st(&[0, 0, 0])],
            edges: vec![(0, 1), (0, 2)],
        };
        let tooth_a_relabelled = Tooth {
            components: vec![st(&[0, 0, -1]), st(&[0, 0, 0]), st(&[0, -1, -1])],
            edges: vec![(0, 2), (0, 1)],
        };
        let tooth_b = Tooth::chain(vec![st(&[1, 0, 0]), st(&[0, 0, -1])]);
        let base = st(&[4, 2, 1]);
        let c1 = build_comb(
            base.clone(),
            vec![tooth_a, tooth_b.clone()],
            GluingMode::General,
        )
        .unwrap();
        let c2 = build_comb(base, vec![tooth_b, tooth_a_relabelled], GluingMode::General).unwrap();
        assert_eq!(
            c1.smoothing_reduce().unwrap().predicted,
            c2.smoothing_reduce().unwrap().predicted
        );
    }

    #[test]
    fn tree_cor_balanced_outputs() {
        // Balanced base + balanced teeth with general gluing always smooth
        // to a balanced bundle.
        let cases = vec![
            (st(&[5, 5, 5]), vec![]),
            (st(&[0, 0]), teeth_of(st(&[0, -1]), 5)),
            (
                st(&[2, 1]),
                vec![Tooth::chain(vec![st(&[0, -1]), st(&[1, 1])])],
            ),
            (st(&[1, 1, 0]), teeth_of(st(&[0, 0, -1]), 3)),
        ];
        for (base, teeth) in cases {
            let comb = build_comb(base, teeth, GluingMode::General).unwrap();
            assert!(comb.is_balanced_smoothing().unwrap(), "comb {comb:?}");
        }
    }

    #[test]
    fn semicontinuity_against_oracle() {
        // The explicit glued tree can only have more sections than the
        // predicted smoothing, at every twist of the base.
        let field = PrimeField::default();
        let cases = vec![
            build_comb(st(&[0, 0]), teeth_of(st(&[0, -1]), 3), GluingMode::General).unwrap(),
            build_comb(
                st(&[2, 1]),
                vec![Tooth::chain(vec![st(&[0, -1]), st(&[0, 0])])],
                GluingMode::General,
            )
            .unwrap(),
            build_comb(
                st(&[1, 0, 0]),
                vec![
                    Tooth::single(st(&[0, 0, -1])),
                    Tooth::single(st(&[1, 1, 1])),
                ],
                GluingMode::General,
            )
            .unwrap(),
        ];
        for comb in cases {
            let predicted = comb.smoothing_reduce().unwrap().predicted;
            let tree = comb.to_tree_data(&field, 77).unwrap();
            let comps = tree.components().len();
            for t in -6..=4i64 {
                let mut twists = vec![0i64; comps];
                twists[0] = t;
                let (h0_tree, _) = tree.cohomology_twisted(&twists);
                let h0_pred = predicted.cohomology(t).0;
                assert!(
                    h0_tree >= h0_pred,
                    "semicontinuity fails at twist {t}: tree {h0_tree} < predicted {h0_pred}"
                );
            }
        }
    }
}
