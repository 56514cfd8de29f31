//! Independent ground truth for the splitting-type calculus.
//!
//! Bundles are realized by explicit data over an exact field (polynomial
//! matrices, fiber conditions, transition matrices, tree gluings) and their
//! splitting types recovered by brute-force linear algebra on section spaces
//! over a twist window. Nothing in here consults the closed-form rules in
//! `splitcalc`; tests and the verify suite hold the two sides against each
//! other.

pub mod extension;
pub mod field;
pub mod linalg;
pub mod modification;
pub mod morphism;
pub mod poly;
pub mod tree;

pub use extension::{extension_splitting, TransitionBundle};
pub use field::{Field, FieldChoice, PrimeField, RationalField, DEFAULT_PRIME};
pub use modification::{modification_splitting, ModPoint, ModificationData};
pub use morphism::{general_morphism, kernel_splitting, Genericity, PolyMorphism};
pub use tree::{tree_cohomology, GluedNode, TreeBundleData};

// Profile inversion is shared with the closed-form side; re-exported here
// because the oracle is its main consumer.
pub use crate::splitcalc::split_from_profile;

use crate::error::OracleError;
use crate::splitcalc::SplitType;

/// Resample budget for certified general draws.
pub const RETRY_BUDGET: u32 = 8;

/// Recovers a splitting type from computed section counts on `[lo, hi]` and
/// certifies rank and degree against the expected bookkeeping.
pub(crate) fn recover_split(
    lo: i64,
    hi: i64,
    expect_rank: usize,
    expect_degree: i64,
    h0: impl Fn(i64) -> i64,
) -> Result<SplitType, OracleError> {
    let profile: Vec<i64> = (lo..=hi).map(h0).collect();
    let split = split_from_profile(lo, &profile)
        .map_err(|e| OracleError::InconsistentProfile(e.to_string()))?;
    if split.rank() != expect_rank {
        return Err(OracleError::RankCertificate {
            got: split.rank(),
            expected: expect_rank,
        });
    }
    if split.degree() != expect_degree {
        return Err(OracleError::DegreeCertificate {
            got: split.degree(),
            expected: expect_degree,
        });
    }
    Ok(split)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitcalc::{
        balanced_extension, general_kernel, general_modification, Direction, SplitType,
    };

    fn st(degrees: &[i64]) -> SplitType {
        SplitType::new(degrees.to_vec()).unwrap()
    }

    #[test]
    fn general_morphism_certificates() {
        let f = PrimeField::default();
        // Two degree-1 forms with no common zero: the 2x2 coefficient
        // determinant (their resultant) is nonzero.
        let phi = general_morphism(&f, &st(&[1, 1]), &st(&[2]), 7, Genericity::Surjective).unwrap();
        let (a, b) = (phi.entry(0, 0), phi.entry(0, 1));
        assert_eq!(a.degree(), 1);
        assert_eq!(b.degree(), 1);
        let res = f.sub(
            &f.mul(&a.coeffs[0], &b.coeffs[1]),
            &f.mul(&a.coeffs[1], &b.coeffs[0]),
        );
        assert!(!f.is_zero(&res));

        // Rank-1 trivial to trivial: a nonzero constant.
        let phi = general_morphism(&f, &st(&[0]), &st(&[0]), 3, Genericity::Nonzero).unwrap();
        assert_eq!(phi.entry(0, 0).degree(), 0);

        // All entry degrees negative: no nonzero maps at all.
        let err = general_morphism(&f, &st(&[0, 0]), &st(&[-1]), 0, Genericity::Nonzero);
        assert!(matches!(
            err,
            Err(OracleError::GenericityFailure { retries: 0, .. })
        ));
    }

    #[test]
    fn kernel_splitting_examples() {
        let f = PrimeField::default();
        for (src, tgt, expect) in [
            (st(&[1, 1]), st(&[2]), st(&[0])),
            (st(&[1, 1, 0]), st(&[2]), st(&[0, 0])),
            (st(&[1, 1]), st(&[1]), st(&[1])),
        ] {
            for seed in 0..5 {
                let phi = general_morphism(&f, &src, &tgt, seed, Genericity::Surjective).unwrap();
                assert_eq!(kernel_splitting(&phi).unwrap(), expect, "{src} -> {tgt}");
            }
        }
    }

    #[test]
    fn kernel_requires_surjectivity() {
        let f = PrimeField::default();
        // A linear form on a trivial summand vanishes somewhere, so a map
        // (0) -> O(1) is never surjective.
        let phi = general_morphism(&f, &st(&[0]), &st(&[1]), 1, Genericity::Nonzero).unwrap();
        assert!(matches!(
            kernel_splitting(&phi),
            Err(OracleError::NotSurjective)
        ));
        // Equal ranks leave a rank-0 kernel.
        let phi = general_morphism(&f, &st(&[1]), &st(&[1]), 1, Genericity::Surjective).unwrap();
        assert!(matches!(
            kernel_splitting(&phi),
            Err(OracleError::ZeroKernel)
        ));
    }

    #[test]
    fn modification_splitting_examples() {
        let f = PrimeField::default();
        for seed in 0..5 {
            assert_eq!(
                modification_splitting(&f, &st(&[2, 2]), &[ModPoint::down(1, 1)], seed).unwrap(),
                st(&[2, 1])
            );
            assert_eq!(
                modification_splitting(&f, &st(&[0, 0]), &[ModPoint::up(1, 1)], seed).unwrap(),
                st(&[1, 0])
            );
            // Full-corank down at one point is a twist drop on that fiber.
            assert_eq!(
                modification_splitting(&f, &st(&[1, 1]), &[ModPoint::down(2, 2)], seed).unwrap(),
                st(&[0, 0])
            );
        }
    }

    #[test]
    fn modification_rejects_bad_points() {
        let f = PrimeField::default();
        assert!(matches!(
            modification_splitting(
                &f,
                &st(&[1, 0]),
                &[ModPoint::down(1, 1), ModPoint::down(1, 1)],
                0
            ),
            Err(OracleError::CoincidentPoints)
        ));
        assert!(matches!(
            modification_splitting(&f, &st(&[1, 0]), &[ModPoint::down(1, 3)], 0),
            Err(OracleError::CorankTooLarge { .. })
        ));
    }

    #[test]
    fn modification_duality() {
        // Up on S is the dual of down on the dual of S.
        let f = PrimeField::default();
        let cases = [st(&[2, 0]), st(&[1, 1, 0]), st(&[3, 1, -1]), st(&[0, 0])];
        for s in &cases {
            for corank in 1..=s.rank() {
                for seed in 0..3 {
                    let up = modification_splitting(
                        &f,
                        s,
                        &[ModPoint::up(1, corank), ModPoint::up(2, 1)],
                        seed,
                    )
                    .unwrap();
                    let down = modification_splitting(
                        &f,
                        &s.dual(),
                        &[ModPoint::down(1, corank), ModPoint::down(2, 1)],
                        seed + 100,
                    )
                    .unwrap();
                    assert_eq!(up, down.dual(), "duality at {s}, corank {corank}");
                }
            }
        }
    }

    #[test]
    fn extension_splitting_examples() {
        let f = PrimeField::default();
        for seed in 0..5 {
            assert_eq!(
                extension_splitting(&f, &st(&[0]), &st(&[0]), seed).unwrap(),
                st(&[0, 0])
            );
            assert_eq!(
                extension_splitting(&f, &st(&[-1]), &st(&[1]), seed).unwrap(),
                st(&[0, 0])
            );
            assert_eq!(
                extension_splitting(&f, &st(&[1, 0]), &st(&[1, 1, 0]), seed).unwrap(),
                st(&[1, 1, 1, 0, 0])
            );
        }
    }

    #[test]
    fn split_extension_is_direct_sum() {
        let f = PrimeField::default();
        let e = TransitionBundle::split_extension(&f, &st(&[2, -1]), &st(&[3, 0]));
        assert_eq!(e.splitting().unwrap(), st(&[3, 2, 0, -1]));
    }

    #[test]
    fn extension_window_is_sufficient() {
        // Widening the recovery window never changes the answer.
        let f = PrimeField::default();
        let e = TransitionBundle::general_extension(&f, &st(&[1, 0]), &st(&[1, 1, 0]), 11);
        let tight = e.splitting().unwrap();
        let wide = recover_split(-6, 9, 5, 3, |t| e.h0(t)).unwrap();
        assert_eq!(tight, wide);
    }

    #[test]
    fn tree_cohomology_examples() {
        let f = PrimeField::default();
        // Two O(1) components, one node: 4 coefficients, 1 matching condition.
        let data = TreeBundleData::with_general_gluing(&f, vec![st(&[1]), st(&[1])], &[(0, 1)], 5)
            .unwrap();
        assert_eq!(data.cohomology(), (3, 0));

        // A single component reduces to the split formula.
        let lone = TreeBundleData::with_general_gluing(&f, vec![st(&[2, 0])], &[], 1).unwrap();
        assert_eq!(lone.cohomology(), (4, 0));
        assert_eq!(lone.cohomology_twisted(&[-2]), (1, 1));
    }

    #[test]
    fn tree_validation() {
        let f = PrimeField::default();
        // Two components, no node: disconnected.
        assert!(matches!(
            TreeBundleData::with_general_gluing(&f, vec![st(&[1]), st(&[1])], &[], 0),
            Err(OracleError::NotATree)
        ));
        // Self-loop makes a cycle.
        assert!(matches!(
            TreeBundleData::with_general_gluing(&f, vec![st(&[1]), st(&[1])], &[(0, 0)], 0),
            Err(OracleError::NotATree)
        ));
        // Mixed ranks.
        assert!(matches!(
            TreeBundleData::with_general_gluing(&f, vec![st(&[1]), st(&[1, 0])], &[(0, 1)], 0),
            Err(OracleError::RankMismatch)
        ));
    }

    #[test]
    fn comb_end_bundle_cohomology() {
        // The comb with base O + O and t teeth O + O(-1): chi(End) = 4 always.
        // The honest endomorphism tree (conjugation gluing) carries the
        // identity plus one nilpotent section per tooth, so h0 >= t + 1 and
        // rigidity dies at t = 4 already; up to t = 3 the count is exact.
        let f = PrimeField::default();
        for (t, expect_extra) in [(5usize, true), (4, true), (3, false), (1, false)] {
            let mut comps = vec![st(&[0, 0])];
            let mut edges = Vec::new();
            for i in 0..t {
                comps.push(st(&[0, -1]));
                edges.push((0usize, i + 1));
            }
            let data = TreeBundleData::with_general_gluing(&f, comps, &edges, 42).unwrap();
            let end = data.end_tree().unwrap();
            assert_eq!(end.chi(&vec![0; t + 1]), 4, "chi(End) at t={t}");
            let (h0, h1) = end.cohomology();
            assert!(h0 > t as i64, "h0(End) = {h0} < t + 1 = {}", t + 1);
            if expect_extra {
                assert!(h1 >= 1, "t = {t} must force h1 >= 1");
            } else {
                assert_eq!(h1, 0, "t = {t} should stay rigid");
            }
        }
    }

    #[test]
    fn comb_end_type_tree_with_general_gluing() {
        // Same component types glued by independent general matrices: the
        // per-tooth nilpotent sections survive (they glue through zero), the
        // identity does not, so h0 = max(4, t) and rigidity holds up to t = 4.
        let f = PrimeField::default();
        for (t, expect_extra) in [(5usize, true), (4, false), (3, false), (1, false)] {
            let mut comps = vec![st(&[0, 0]).end_bundle()];
            let mut edges = Vec::new();
            for i in 0..t {
                comps.push(st(&[0, -1]).end_bundle());
                edges.push((0usize, i + 1));
            }
            let data = TreeBundleData::with_general_gluing(&f, comps, &edges, 42).unwrap();
            assert_eq!(data.chi(&vec![0; t + 1]), 4, "chi at t={t}");
            let (h0, h1) = data.cohomology();
            if expect_extra {
                assert!(h0 >= 5, "h0 = {h0} < 5 at t = {t}");
                assert!(h1 >= 1, "t = {t} must force h1 >= 1");
            } else {
                assert_eq!(h1, 0, "t = {t} should stay rigid");
            }
        }
    }

    #[test]
    fn oracle_agrees_with_closed_forms_spot_checks() {
        let f = PrimeField::default();
        // Modification rule spot checks via s general corank-1 points.
        for (s, colength) in [(st(&[2, 2]), 1i64), (st(&[1, 0, 0]), 2), (st(&[3, 1]), 3)] {
            let points: Vec<ModPoint> = (0..colength).map(|i| ModPoint::down(i + 1, 1)).collect();
            let got = modification_splitting(&f, &s, &points, 9).unwrap();
            let expect = general_modification(&s, colength, Direction::Down).unwrap();
            assert_eq!(got, expect, "down modification of {s} by {colength}");
        }
        // Kernel rule spot checks.
        for (s, m) in [
            (st(&[1, 1, 0]), 2i64),
            (st(&[2, 2, 2]), 3),
            (st(&[1, 1]), 1),
        ] {
            let phi = general_morphism(
                &f,
                &s,
                &SplitType::new(vec![m]).unwrap(),
                13,
                Genericity::Surjective,
            )
            .unwrap();
            assert_eq!(
                kernel_splitting(&phi).unwrap(),
                general_kernel(&s, m).unwrap(),
                "kernel of {s} -> O({m})"
            );
        }
        // Extension rule spot check, including the fang step (4) + (4).
        let got = extension_splitting(&f, &st(&[4]), &st(&[4]), 17).unwrap();
        assert_eq!(got, balanced_extension(&st(&[4]), &st(&[4])).unwrap());
    }

    #[test]
    fn concentrated_coranks_differ_from_spread_points() {
        // At a single point a general corank-s quotient lowers the top s
        // summands once each; s spread-out corank-1 points iterate the
        // partition rule instead. On unbalanced types with a wide gap the
        // two genuinely differ, and the oracle must see that.
        let f = PrimeField::default();
        for seed in 0..5 {
            let concentrated =
                modification_splitting(&f, &st(&[3, 0]), &[ModPoint::down(1, 2)], seed).unwrap();
            assert_eq!(concentrated, st(&[2, -1]));
            let spread = modification_splitting(
                &f,
                &st(&[3, 0]),
                &[ModPoint::down(1, 1), ModPoint::down(2, 1)],
                seed,
            )
            .unwrap();
            assert_eq!(spread, st(&[1, 0]));
        }
        // On balanced types the two coincide.
        for seed in 0..3 {
            let concentrated =
                modification_splitting(&f, &st(&[2, 1, 1]), &[ModPoint::down(1, 2)], seed)
                    .unwrap();
            let spread = modification_splitting(
                &f,
                &st(&[2, 1, 1]),
                &[ModPoint::down(1, 1), ModPoint::down(2, 1)],
                seed,
            )
            .unwrap();
            assert_eq!(concentrated, spread);
            assert_eq!(concentrated, st(&[1, 1, 0]));
        }
    }

    #[test]
    fn explicit_node_validation() {
        let f = PrimeField::default();
        let good = tree::general_gluing_matrix(&f, 1, 3).unwrap();
        // Repeated coordinate on one component.
        let nodes = vec![
            GluedNode { left: 0, left_coord: 1, right: 1, right_coord: 1, matrix: good.clone() },
            GluedNode { left: 0, left_coord: 1, right: 2, right_coord: 1, matrix: good.clone() },
        ];
        assert!(matches!(
            TreeBundleData::new(&f, vec![st(&[1]), st(&[0]), st(&[0])], nodes),
            Err(OracleError::CoincidentNodes)
        ));
        // Singular gluing matrix.
        let singular = crate::oracle::linalg::Matrix::filled(1, 1, f.zero());
        let nodes = vec![GluedNode {
            left: 0,
            left_coord: 1,
            right: 1,
            right_coord: 1,
            matrix: singular,
        }];
        assert!(matches!(
            TreeBundleData::new(&f, vec![st(&[1]), st(&[0])], nodes),
            Err(OracleError::SingularGluing(0))
        ));
    }

    #[test]
    fn rational_field_agrees_with_prime_field() {
        let fp = PrimeField::default();
        let fq = RationalField;
        let src = st(&[1, 1, 0]);
        let tgt = st(&[2]);
        let phi_p = general_morphism(&fp, &src, &tgt, 21, Genericity::Surjective).unwrap();
        let phi_q = general_morphism(&fq, &src, &tgt, 21, Genericity::Surjective).unwrap();
        assert_eq!(
            kernel_splitting(&phi_p).unwrap(),
            kernel_splitting(&phi_q).unwrap()
        );

        let e_p = extension_splitting(&fp, &st(&[1, 0]), &st(&[1, 1, 0]), 23).unwrap();
        let e_q = extension_splitting(&fq, &st(&[1, 0]), &st(&[1, 1, 0]), 23).unwrap();
        assert_eq!(e_p, e_q);
    }
}
