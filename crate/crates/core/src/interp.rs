//! Interpolation numerology for degree-d hypersurfaces in projective
//! n-space: the maximal point count of a degree-e rational curve, its
//! inverse, point-minimality, accessibility of degrees through the
//! slope-floor equality, and congruence-class tables.

use crate::error::InterpError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

fn check_n(n: i64) -> Result<(), InterpError> {
    if n < 3 {
        Err(InterpError::DegenerateDenominator(n))
    } else {
        Ok(())
    }
}

fn check_nd(n: i64, d: i64) -> Result<(), InterpError> {
    check_n(n)?;
    if d < 1 || d > n {
        Err(InterpError::DegenerateRange { n, d })
    } else {
        Ok(())
    }
}

fn ceil_div(num: i64, den: i64) -> i64 {
    debug_assert!(den > 0);
    (num + den - 1).div_euclid(den)
}

/// Maximal expected number of general points on a degree-`e` rational curve:
/// `floor((e(n+1-d) - 2) / (n-2)) + 1`.
pub fn q_max(n: i64, d: i64, e: i64) -> Result<i64, InterpError> {
    check_nd(n, d)?;
    Ok((e * (n + 1 - d) - 2).div_euclid(n - 2) + 1)
}

/// Minimal expected degree through `q` general points:
/// `ceil(((q-1)(n-2) + 2) / (n+1-d))`.
pub fn e_min(n: i64, d: i64, q: i64) -> Result<i64, InterpError> {
    check_nd(n, d)?;
    Ok(ceil_div((q - 1) * (n - 2) + 2, n + 1 - d))
}

/// Point-minimality: the expected point count jumps at `e`, so degree-`e`
/// curves through `q_max(e)` points cannot be undercut.
pub fn is_point_minimal(n: i64, d: i64, e: i64) -> Result<bool, InterpError> {
    check_nd(n, d)?;
    let k = n + 1 - d;
    let floor = (e * k - 2).div_euclid(n - 2);
    let strict = k * (e - 1) - 2 < (n - 2) * floor;
    if d > 3 {
        // Exactly the remainder criterion; keep both routes honest.
        let rem = (e * k - 2).rem_euclid(n - 2);
        debug_assert_eq!(strict, rem < k, "remainder criterion at ({n},{d},{e})");
    }
    Ok(strict)
}

/// The slope-floor equality making the vertical and base normal-bundle
/// floors agree: `floor((e - d e0)/(n-d)) + e = e0 + floor((2 e0 - 2)/(d-2))`.
pub fn slopes_holds(n: i64, d: i64, e: i64, e0: i64) -> bool {
    debug_assert!(d >= 3 && d < n);
    let lhs = (e - d * e0).div_euclid(n - d) + e;
    let rhs = e0 + (2 * e0 - 2).div_euclid(d - 2);
    lhs == rhs
}

/// Scans `e0` upward from `d - 1` and returns the smallest witness making
/// the slope-floor equality hold.
pub fn is_accessible(n: i64, d: i64, e: i64) -> Result<Option<i64>, InterpError> {
    check_n(n)?;
    if d < 3 || d >= n {
        return Err(InterpError::DegenerateRange { n, d });
    }
    Ok(((d - 1)..=e).find(|&e0| slopes_holds(n, d, e, e0)))
}

/// One row of the numerology table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpRow {
    pub e: i64,
    pub q_max: i64,
    pub point_minimal: bool,
    pub accessible: bool,
    pub e0: Option<i64>,
    pub interpolating: bool,
}

/// Per-(n, d) table of rows with residue-class summaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpTable {
    pub n: i64,
    pub d: i64,
    pub e_max: i64,
    pub rows: Vec<InterpRow>,
    /// Residues of accessible degrees mod `d(n-2)`.
    pub accessible_residues: Vec<i64>,
    /// Reference class count `d(n-d)` quoted next to the observed count;
    /// the linear correction terms are not asserted.
    pub reference_class_count: i64,
    /// Residues of interpolating point counts `q_max(e)` mod `d(n+1-d)`.
    pub interpolating_q_residues: Vec<i64>,
    /// Smallest divisor of `d(n-2)` that is a period of the accessible
    /// flags past `e = d(n-2)` within the window.
    pub detected_period: Option<i64>,
}

impl InterpTable {
    pub fn csv_header() -> &'static str {
        "n,d,e,q_max,point_minimal,accessible,e0,interpolating"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::csv_header());
        out.push('\n');
        for r in &self.rows {
            let e0 = r.e0.map_or(String::new(), |v| v.to_string());
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                self.n, self.d, r.e, r.q_max, r.point_minimal, r.accessible, e0, r.interpolating
            ));
        }
        out
    }
}

/// Builds the full table for `1 <= e <= e_max`.
///
/// The window must extend at least `2 d(n-2)` past the first accessible
/// degree (or past `d(n-2)` when none exists) so the residue summaries and
/// the detected period are stable.
pub fn interp_table(n: i64, d: i64, e_max: i64) -> Result<InterpTable, InterpError> {
    check_n(n)?;
    if d < 3 || d >= n {
        return Err(InterpError::DegenerateRange { n, d });
    }
    let modulus = d * (n - 2);
    let mut rows = Vec::new();
    let mut first_accessible = None;
    for e in 1..=e_max {
        let e0 = is_accessible(n, d, e)?;
        let accessible = e0.is_some();
        if accessible && first_accessible.is_none() {
            first_accessible = Some(e);
        }
        let pm = is_point_minimal(n, d, e)?;
        rows.push(InterpRow {
            e,
            q_max: q_max(n, d, e)?,
            point_minimal: pm,
            accessible,
            e0,
            interpolating: accessible && pm,
        });
    }
    let needed = match first_accessible {
        Some(first) => first + 2 * modulus,
        None => 2 * modulus,
    };
    if e_max < needed {
        return Err(InterpError::InsufficientWindow { needed, got: e_max });
    }

    let accessible_residues: Vec<i64> = rows
        .iter()
        .filter(|r| r.accessible)
        .map(|r| r.e.rem_euclid(modulus))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let q_modulus = d * (n + 1 - d);
    let interpolating_q_residues: Vec<i64> = rows
        .iter()
        .filter(|r| r.interpolating)
        .map(|r| r.q_max.rem_euclid(q_modulus))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    // Smallest divisor of the modulus that shifts accessible flags onto
    // themselves past e = modulus.
    let acc_flag = |e: i64| rows[(e - 1) as usize].accessible;
    let detected_period = (1..=modulus)
        .filter(|p| modulus % p == 0)
        .find(|&p| (modulus..=(e_max - p)).all(|e| acc_flag(e) == acc_flag(e + p)));

    Ok(InterpTable {
        n,
        d,
        e_max,
        rows,
        accessible_residues,
        reference_class_count: d * (n - d),
        interpolating_q_residues,
        detected_period,
    })
}
