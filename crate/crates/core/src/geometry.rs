//! Symbolic normal-bundle pipelines: blowup and nodal-union modification
//! rules, the normal bundle of a general rational curve in projective space,
//! and the two degeneration pipelines (degree n, and degree d < n) that
//! assemble a comb and hand it to the smoothing reduction.

use crate::error::GeometryError;
use crate::interp::slopes_holds;
use crate::splitcalc::{
    balanced_extension, general_kernel, general_modification, Direction, SplitType,
};
use crate::treebundle::{build_comb, GluingMode, Tooth};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A labelled intermediate bundle in a pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub label: String,
    pub split: SplitType,
    pub rank: usize,
    pub degree: i64,
}

fn stage(label: &str, split: &SplitType) -> Stage {
    Stage {
        label: label.to_string(),
        split: split.clone(),
        rank: split.rank(),
        degree: split.degree(),
    }
}

/// Teeth attached by an assembly pipeline: all of one splitting type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeethSummary {
    pub count: i64,
    pub split: SplitType,
}

/// Full record of one pipeline run: parameters, intermediates, the comb, and
/// the certified prediction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineRecord {
    pub pipeline: String,
    pub params: BTreeMap<String, i64>,
    pub stages: Vec<Stage>,
    pub teeth: Option<TeethSummary>,
    pub predicted: Stage,
    /// Geometric inputs taken on faith rather than computed.
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
}

/// Effect on a normal bundle of blowing up a codimension-`s` centre meeting
/// the curve in one general point: a general down modification of colength
/// `s - 1`; `s = 1` is the identity.
pub fn blowup_modification(n: &SplitType, s: i64) -> Result<SplitType, GeometryError> {
    if s < 1 {
        return Err(GeometryError::OutOfRange(format!(
            "codimension must be >= 1, got {s}"
        )));
    }
    if s == 1 {
        return Ok(n.clone());
    }
    Ok(general_modification(n, s - 1, Direction::Down)?)
}

/// Effect on a component's normal bundle of forming a nodal union inside a
/// smooth ambient space: a rank-1 general up modification at the node.
pub fn nodal_union_restriction(n: &SplitType) -> SplitType {
    general_modification(n, 1, Direction::Up).expect("colength 1 is positive")
}

/// Splitting type of the normal bundle of a general degree-`e` rational
/// curve in projective `n`-space: balanced of rank `n - 1` and degree
/// `e(n+1) - 2`, for `e >= n`.
pub fn pn_normal(n: i64, e: i64) -> Result<SplitType, GeometryError> {
    if n < 2 {
        return Err(GeometryError::OutOfRange(format!("need n >= 2, got {n}")));
    }
    if e < n {
        return Err(GeometryError::OutOfRange(format!(
            "balancedness is claimed for e >= n, got e = {e} < n = {n}"
        )));
    }
    Ok(SplitType::balanced_of((n - 1) as usize, e * (n + 1) - 2))
}

/// Builds a splitting type from (multiplicity, degree) blocks, dropping
/// zero-width blocks.
fn from_blocks(blocks: &[(i64, i64)]) -> SplitType {
    let mut degrees = Vec::new();
    for &(mult, deg) in blocks {
        assert!(mult >= 0, "negative multiplicity {mult}");
        degrees.extend(std::iter::repeat_n(deg, mult as usize));
    }
    SplitType::new(degrees).expect("blocks are nonempty")
}

/// The recursive degeneration behind `pn_normal`, with its intermediate
/// component bundles recorded.
pub fn pn_normal_record(n: i64, e: i64) -> Result<PipelineRecord, GeometryError> {
    let predicted = pn_normal(n, e)?;
    let mut stages = Vec::new();
    let mut notes = Vec::new();
    let mut assumptions =
        vec!["node gluings put the upper subspaces in general position".to_string()];
    if e == n {
        stages.push(stage(
            "rational_normal_curve",
            &SplitType::uniform((n - 1) as usize, n + 2),
        ));
    } else if e < 2 * n - 1 {
        // Two-component degeneration; both sides are balanced once the
        // blowup centres are removed.
        let x1 = from_blocks(&[(e - n - 1, n + 2), (2 * n - e, n + 1)]);
        let x2 = from_blocks(&[(2 * n - e - 2, 2 * n - e), (e - n + 1, 2 * n - e - 1)]);
        assert_eq!(x1.rank() + 1, n as usize, "first component rank");
        assert_eq!(x2.rank() + 1, n as usize, "second component rank");
        assert!(x1.is_balanced() && x2.is_balanced());
        stages.push(stage("component_on_x1", &x1));
        stages.push(stage("component_on_x2", &x2));
    } else if e == 2 * n - 1 {
        // The two-component display degenerates here (the second curve
        // would have degree zero); only the balanced output is recorded.
        notes.push(
            "boundary degree 2n-1: the two-component display is degenerate, output only"
                .to_string(),
        );
    } else {
        // Recurse on a degree-(e - n) curve and blow up complementary
        // centres on the two sides.
        let inner = pn_normal(n, e - n)?;
        let info = inner.balance_info();
        let r_plus = info.upper_rank as i64;
        let c2 = blowup_modification(&inner, n - r_plus)?;
        let c1 = blowup_modification(&SplitType::uniform((n - 1) as usize, n + 2), r_plus + 1)?;
        assert!(c1.is_balanced() && c2.is_balanced());
        stages.push(stage("inner_curve_normal", &inner));
        stages.push(stage("component_on_x1", &c1));
        stages.push(stage("component_on_x2", &c2));
        assumptions.push("blowup centres meet the curves transversely in one point".to_string());
    }
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n);
    params.insert("e".to_string(), e);
    Ok(PipelineRecord {
        pipeline: "pn".to_string(),
        params,
        stages,
        teeth: None,
        predicted: stage("predicted", &predicted),
        assumptions,
        notes,
    })
}

/// Degree-`n` hypersurface pipeline: a curve in a blown-up hyperplane glued
/// to lines with trivial normal bundle, smoothing to a balanced curve of
/// degree `e` with normal degree `e - 2`.
pub fn fan_assembly_d_eq_n(n: i64, e: i64) -> Result<PipelineRecord, GeometryError> {
    if n < 4 {
        return Err(GeometryError::OutOfRange(format!("need n >= 4, got {n}")));
    }
    if e < n - 1 {
        return Err(GeometryError::OutOfRange(format!(
            "need e >= n - 1, got {e}"
        )));
    }
    let mut assumptions = vec!["the hypersurface degeneration and gluings are general".to_string()];
    let (e1, a, case) = if e >= (n - 1) * (n - 1) {
        let e1 = (e + n - 1).div_euclid(n);
        (e1, e1 * n - e, 1)
    } else {
        assumptions.push(
            "vanishing theorem input: the degree-n form can be chosen with general tangent \
             hyperplanes along the curve (needs n - 1 >= 3)"
                .to_string(),
        );
        (n - 1, n * (n - 1) - e, 2)
    };
    debug_assert!(e1 >= n - 1);
    debug_assert!(case == 2 || (0 <= a && a < n));

    let inner = pn_normal(n - 1, e1)?;
    let base = if a > 0 {
        general_modification(&inner, a, Direction::Down)?
    } else {
        inner.clone()
    };
    let tooth_count = e1 * (n - 1) - a;
    debug_assert!(tooth_count >= 0);
    let tooth_type = SplitType::uniform((n - 2) as usize, 0);
    let teeth: Vec<Tooth> = (0..tooth_count)
        .map(|_| Tooth::single(tooth_type.clone()))
        .collect();
    let comb = build_comb(base.clone(), teeth, GluingMode::General)?;
    let report = comb.smoothing_reduce()?;

    let expected = SplitType::balanced_of((n - 2) as usize, e - 2);
    if report.predicted != expected {
        return Err(GeometryError::CertificationFailed(format!(
            "predicted {} is not the balanced type {} of rank {}, degree {}",
            report.predicted,
            expected,
            n - 2,
            e - 2
        )));
    }

    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n);
    params.insert("d".to_string(), n);
    params.insert("e".to_string(), e);
    params.insert("e1".to_string(), e1);
    params.insert("a".to_string(), a);
    params.insert("case".to_string(), case);
    Ok(PipelineRecord {
        pipeline: "fan".to_string(),
        params,
        stages: vec![
            stage("curve_normal_in_hyperplane", &inner),
            stage("base_after_blowup", &base),
        ],
        teeth: Some(TeethSummary {
            count: tooth_count,
            split: tooth_type,
        }),
        predicted: stage("predicted", &report.predicted),
        assumptions,
        notes: Vec::new(),
    })
}

/// Degree-`d < n` hypersurface pipeline through the two-sided projective
/// bundle degeneration: the base curve lifts into a projective bundle, its
/// normal bundle is a balanced extension of the vertical bundle by the inner
/// normal bundle, and trivial-normal lines fill in the remaining degree.
pub fn fang_assembly(n: i64, d: i64, e: i64, e0: i64) -> Result<PipelineRecord, GeometryError> {
    if d < 3 || d > n - 1 {
        return Err(GeometryError::OutOfRange(format!(
            "need 3 <= d <= n - 1, got d = {d}, n = {n}"
        )));
    }
    if e0 < d - 1 {
        return Err(GeometryError::OutOfRange(format!(
            "lift witness e0 = {e0} is below the rational-normal threshold d - 1 = {}",
            d - 1
        )));
    }
    if e0 > e {
        return Err(GeometryError::OutOfRange(format!(
            "need e0 <= e, got e0 = {e0}, e = {e}"
        )));
    }
    if !slopes_holds(n, d, e, e0) {
        let vertical_floor = (e - d * e0).div_euclid(n - d) + e;
        let base_floor = e0 + (2 * e0 - 2).div_euclid(d - 2);
        return Err(GeometryError::ExtensionFloorsMismatch {
            e0,
            vertical: vertical_floor,
            base: base_floor,
        });
    }

    // G restricted to the base curve, computed as the dual of the kernel of
    // a general surjection between the dual summands.
    let mut dual_mid = vec![0i64; (n - d + 1) as usize];
    dual_mid.push(-e0);
    let dual_mid = SplitType::new(dual_mid)?;
    let g_dual = general_kernel(&dual_mid, (d - 1) * e0)?;
    let g = g_dual.dual();
    debug_assert_eq!(g.degree(), d * e0);
    debug_assert_eq!(g.rank(), (n - d + 1) as usize);
    let mut notes = Vec::new();
    if !g.is_balanced() {
        // For n well above 2d a section count forces a high summand into the
        // dual kernel, so the restricted bundle cannot balance; the pipeline
        // continues on the honest type and the kernel step decides.
        notes.push(format!(
            "restricted plane bundle {g} is unbalanced; continuing"
        ));
    }

    // Kernel of the degree-e lifting surjection and the vertical normal
    // bundle it induces.
    let k = general_kernel(&g, e)?;
    let vertical = k.dual().twist(e);
    debug_assert_eq!(vertical.degree(), e * (n + 1 - d) - d * e0);

    // Normal bundle of the base curve in its projective space.
    let n0 = pn_normal(d - 1, e0)?;
    debug_assert_eq!(
        vertical.slope_floor(),
        n0.slope_floor(),
        "floors match under the slope equality"
    );
    let nx1 = balanced_extension(&vertical, &n0)?;

    let tooth_count = e - e0;
    let tooth_type = SplitType::uniform((n - 2) as usize, 0);
    let teeth: Vec<Tooth> = (0..tooth_count)
        .map(|_| Tooth::single(tooth_type.clone()))
        .collect();
    let comb = build_comb(nx1.clone(), teeth, GluingMode::General)?;
    let report = comb.smoothing_reduce()?;

    let expected = SplitType::balanced_of((n - 2) as usize, e * (n + 1 - d) - 2);
    if report.predicted != expected {
        return Err(GeometryError::CertificationFailed(format!(
            "predicted {} is not the balanced type {} of rank {}, degree {}",
            report.predicted,
            expected,
            n - 2,
            e * (n + 1 - d) - 2
        )));
    }

    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n);
    params.insert("d".to_string(), d);
    params.insert("e".to_string(), e);
    params.insert("e0".to_string(), e0);
    Ok(PipelineRecord {
        pipeline: "fang".to_string(),
        params,
        stages: vec![
            stage("plane_bundle_restricted", &g),
            stage("lift_kernel", &k),
            stage("vertical_normal", &vertical),
            stage("base_curve_normal", &n0),
            stage("normal_in_x1", &nx1),
        ],
        teeth: Some(TeethSummary {
            count: tooth_count,
            split: tooth_type,
        }),
        predicted: stage("predicted", &report.predicted),
        assumptions: vec!["the lift, the hypersurface and all gluings are general".to_string()],
        notes,
    })
}
