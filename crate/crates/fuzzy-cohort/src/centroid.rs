//! Centre-of-gravity scoring of fuzzy performance distributions.
//!
//! The membership function over the five score intervals is drawn as a bar
//! graph of five unit-width rectangles; a distribution is summarized by the
//! centroid of that graph. For normalized weights `y_1..y_5`:
//!
//! ```text
//! x_c = (y_1 + 3 y_2 + 5 y_3 + 7 y_4 + 9 y_5) / 2
//! y_c = (y_1^2 + y_2^2 + y_3^2 + y_4^2 + y_5^2) / 2
//! ```
//!
//! Larger `x_c` means better group performance.

use num_traits::Zero;

use crate::fuzzy::{normalize_weights, StageFuzzySet};
use crate::label::LABEL_COUNT;
use crate::{ratio, Error, Rational, Result};

/// Coordinates of the centre of gravity of a membership bar graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentroidPoint {
    pub x: Rational,
    pub y: Rational,
}

/// The three fixed landmarks of the centroid plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferencePoints {
    /// All mass on the lowest label: (1/2, 1/2).
    pub worst: CentroidPoint,
    /// Uniform distribution, the unique y_c minimum: (5/2, 1/10).
    pub center: CentroidPoint,
    /// All mass on the highest label: (9/2, 1/2).
    pub ideal: CentroidPoint,
}

pub fn reference_points() -> ReferencePoints {
    ReferencePoints {
        worst: CentroidPoint { x: ratio(1, 2), y: ratio(1, 2) },
        center: CentroidPoint { x: ratio(5, 2), y: ratio(1, 10) },
        ideal: CentroidPoint { x: ratio(9, 2), y: ratio(1, 2) },
    }
}

/// Exact centroid of the bar graph of the given weights. The weights are
/// normalized first, so any positive scaling of the input is irrelevant.
pub fn centroid_closed_form(weights: &[Rational; LABEL_COUNT]) -> Result<CentroidPoint> {
    let y = normalize_weights(weights)?;
    let y = y.weights();
    let mut x_num = Rational::zero();
    let mut y_num = Rational::zero();
    for (i, w) in y.iter().enumerate() {
        x_num += Rational::from_integer(2 * i as i64 + 1) * w;
        y_num += w * w;
    }
    Ok(CentroidPoint { x: x_num / 2, y: y_num / 2 })
}

/// Centroid of a stage fuzzy set.
pub fn centroid_of_set(set: &StageFuzzySet) -> Result<CentroidPoint> {
    centroid_closed_form(set.memberships())
}

/// Applies the reduced centroid formulas verbatim, treating the weights as
/// already normalized. No rescaling happens, so weights that do not sum to
/// 1 reproduce worksheet arithmetic that skipped the normalization step;
/// prefer [`centroid_closed_form`] unless that reproduction is the point.
pub fn centroid_assuming_normalized(weights: &[Rational; LABEL_COUNT]) -> CentroidPoint {
    let mut x_num = Rational::zero();
    let mut y_num = Rational::zero();
    for (i, w) in weights.iter().enumerate() {
        x_num += Rational::from_integer(2 * i as i64 + 1) * w;
        y_num += w * w;
    }
    CentroidPoint { x: x_num / 2, y: y_num / 2 }
}

/// Numeric oracle: evaluates the defining double integrals
/// `∬ x dA / ∬ dA` and `∬ y dA / ∬ dA` over the bar graph by midpoint-rule
/// summation on a `cells × cells` grid per rectangle. For piecewise-constant
/// bars the midpoint rule is exact up to floating-point roundoff.
pub fn centroid_quadrature(weights: &[f64; LABEL_COUNT], cells: u32) -> Result<(f64, f64)> {
    if cells == 0 {
        return Err(Error::Usage("quadrature needs at least one cell".into()));
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) || weights.iter().any(|w| *w < 0.0) {
        return Err(Error::EmptyFuzzySet);
    }
    let y: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let mut area = 0.0;
    let mut x_moment = 0.0;
    let mut y_moment = 0.0;
    for (i, &height) in y.iter().enumerate() {
        if height == 0.0 {
            continue;
        }
        let dx = 1.0 / cells as f64;
        let dy = height / cells as f64;
        let cell_area = dx * dy;
        for ix in 0..cells {
            let x_mid = i as f64 + (ix as f64 + 0.5) * dx;
            for iy in 0..cells {
                let y_mid = (iy as f64 + 0.5) * dy;
                area += cell_area;
                x_moment += x_mid * cell_area;
                y_moment += y_mid * cell_area;
            }
        }
    }
    Ok((x_moment / area, y_moment / area))
}

/// How to decide a comparison when both centroids share the same `x_c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreakPolicy {
    /// Compare `y_c`: prefer the larger `y_c` when the shared `x_c` is at
    /// least 5/2 (closer to the ideal point), the smaller one otherwise
    /// (closer to the balanced minimum).
    #[default]
    YcDirectional,
    /// Equal `x_c` is always a tie.
    StrictTie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    FirstBetter,
    SecondBetter,
    Tie,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::FirstBetter => "first_better",
            Verdict::SecondBetter => "second_better",
            Verdict::Tie => "tie",
        })
    }
}

/// Outcome of comparing two group centroids, with the values that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerformanceComparison {
    pub verdict: Verdict,
    pub first: CentroidPoint,
    pub second: CentroidPoint,
    pub policy: TieBreakPolicy,
    /// The y_c pair, recorded only when the tie-break was actually consulted.
    pub tie_break: Option<(Rational, Rational)>,
}

/// Compares two centroids: larger `x_c` wins; exactly equal `x_c` defers to
/// the tie-break policy.
pub fn compare_groups(
    first: CentroidPoint,
    second: CentroidPoint,
    policy: TieBreakPolicy,
) -> PerformanceComparison {
    let (verdict, tie_break) = if first.x > second.x {
        (Verdict::FirstBetter, None)
    } else if first.x < second.x {
        (Verdict::SecondBetter, None)
    } else {
        match policy {
            TieBreakPolicy::StrictTie => (Verdict::Tie, None),
            TieBreakPolicy::YcDirectional => {
                let prefer_larger_y = first.x >= ratio(5, 2);
                let v = if first.y == second.y {
                    Verdict::Tie
                } else if (first.y > second.y) == prefer_larger_y {
                    Verdict::FirstBetter
                } else {
                    Verdict::SecondBetter
                };
                (v, Some((first.y, second.y)))
            }
        }
    };
    PerformanceComparison { verdict, first, second, policy, tie_break }
}

/// Stage-by-stage comparison of two groups' fuzzy sets: normalize, take
/// centroids, compare. Identical sets always yield a tie.
pub fn stagewise_group_comparison(
    first: &[StageFuzzySet],
    second: &[StageFuzzySet],
    policy: TieBreakPolicy,
) -> Result<Vec<PerformanceComparison>> {
    if first.len() != second.len() {
        return Err(Error::StageCountMismatch { expected: first.len(), got: second.len() });
    }
    first
        .iter()
        .zip(second)
        .map(|(a, b)| Ok(compare_groups(centroid_of_set(a)?, centroid_of_set(b)?, policy)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn weights(vals: [(i64, i64); LABEL_COUNT]) -> [Rational; LABEL_COUNT] {
        vals.map(|(n, d)| ratio(n, d))
    }

    #[test]
    fn centroid_of_group_fixtures() {
        // group 1 / stage 1
        let c = centroid_closed_form(&weights([(0, 1), (0, 1), (1, 2), (1, 4), (1, 4)])).unwrap();
        assert_eq!(c.x, ratio(13, 4)); // 3.25
        // group 2 / stage 1: symmetric about the middle bar, so x_c = 5/2
        let c = centroid_closed_form(&weights([(0, 1), (1, 4), (1, 2), (1, 4), (0, 1)])).unwrap();
        assert_eq!(c.x, ratio(5, 2));
        // group 1 / stage 2, exact normalization 2/3, 1/3
        let c = centroid_closed_form(&weights([(0, 1), (0, 1), (1, 2), (1, 4), (0, 1)])).unwrap();
        assert_eq!(c.x, ratio(17, 6));
        // group 2 / stage 2; the value 1.125 sometimes quoted for this set
        // comes from skipping normalization, see below
        let c = centroid_closed_form(&weights([(1, 4), (1, 4), (1, 2), (0, 1), (0, 1)])).unwrap();
        assert_eq!(c.x, ratio(7, 4));
    }

    #[test]
    fn reduced_formula_on_raw_weights() {
        // identical to the normalizing route when the input sums to 1
        let w = weights([(0, 1), (0, 1), (1, 2), (1, 4), (1, 4)]);
        assert_eq!(centroid_assuming_normalized(&w), centroid_closed_form(&w).unwrap());
        // worksheet arithmetic that plugs unnormalized weights straight in
        let w = weights([(1, 4), (1, 4), (1, 4), (0, 1), (0, 1)]);
        assert_eq!(centroid_assuming_normalized(&w).x, ratio(9, 8)); // 1.125
    }

    #[test]
    fn centroid_landmarks() {
        let refs = reference_points();
        let uniform = centroid_closed_form(&weights([(1, 5); 5])).unwrap();
        assert_eq!(uniform, refs.center);
        let ideal = centroid_closed_form(&weights([(0, 1), (0, 1), (0, 1), (0, 1), (1, 1)])).unwrap();
        assert_eq!(ideal, refs.ideal);
        let worst = centroid_closed_form(&weights([(1, 1), (0, 1), (0, 1), (0, 1), (0, 1)])).unwrap();
        assert_eq!(worst, refs.worst);
    }

    #[test]
    fn centroid_of_empty_set_errors() {
        assert!(matches!(
            centroid_closed_form(&weights([(0, 1); 5])),
            Err(Error::EmptyFuzzySet)
        ));
    }

    #[test]
    fn quadrature_on_landmarks() {
        let (x, y) = centroid_quadrature(&[0.2; 5], 100).unwrap();
        assert!((x - 2.5).abs() < 1e-9 && (y - 0.1).abs() < 1e-9);
        let (x, y) = centroid_quadrature(&[0.0, 0.0, 0.0, 0.0, 1.0], 3).unwrap();
        assert!((x - 4.5).abs() < 1e-9 && (y - 0.5).abs() < 1e-9);
    }

    #[test]
    fn quadrature_rejects_degenerate_input() {
        assert!(centroid_quadrature(&[0.0; 5], 10).is_err());
        assert!(centroid_quadrature(&[0.5; 5], 0).is_err());
        assert!(centroid_quadrature(&[-0.5, 1.0, 0.0, 0.0, 0.0], 10).is_err());
    }

    #[test]
    fn compare_group_fixtures() {
        let c1 = CentroidPoint { x: ratio(13, 4), y: ratio(0, 1) };
        let c2 = CentroidPoint { x: ratio(9, 4), y: ratio(0, 1) };
        let cmp = compare_groups(c1, c2, TieBreakPolicy::default());
        assert_eq!(cmp.verdict, Verdict::FirstBetter);
        assert!(cmp.tie_break.is_none());

        let cmp = compare_groups(c1, c1, TieBreakPolicy::default());
        assert_eq!(cmp.verdict, Verdict::Tie);
    }

    #[test]
    fn tie_break_is_directional() {
        let a = CentroidPoint { x: ratio(3, 1), y: ratio(3, 10) };
        let b = CentroidPoint { x: ratio(3, 1), y: ratio(1, 5) };
        let cmp = compare_groups(a, b, TieBreakPolicy::YcDirectional);
        assert_eq!(cmp.verdict, Verdict::FirstBetter);
        assert_eq!(cmp.tie_break, Some((ratio(3, 10), ratio(1, 5))));

        // below x = 5/2 the smaller y_c wins instead
        let a = CentroidPoint { x: ratio(2, 1), y: ratio(3, 10) };
        let b = CentroidPoint { x: ratio(2, 1), y: ratio(1, 5) };
        assert_eq!(compare_groups(a, b, TieBreakPolicy::YcDirectional).verdict, Verdict::SecondBetter);

        assert_eq!(compare_groups(a, b, TieBreakPolicy::StrictTie).verdict, Verdict::Tie);
    }

    #[test]
    fn stagewise_fixture_comparison() {
        let z = Rational::zero();
        let q = ratio(1, 4);
        let h = ratio(1, 2);
        let g1 = vec![
            StageFuzzySet::new([z, z, h, q, q]).unwrap(),
            StageFuzzySet::new([z, z, h, q, z]).unwrap(),
            StageFuzzySet::new([q, q, q, z, z]).unwrap(),
        ];
        let g2 = vec![
            StageFuzzySet::new([z, q, h, q, z]).unwrap(),
            StageFuzzySet::new([q, q, h, z, z]).unwrap(),
            StageFuzzySet::new([q, q, q, z, z]).unwrap(),
        ];
        let report = stagewise_group_comparison(&g1, &g2, TieBreakPolicy::default()).unwrap();
        assert_eq!(report.len(), 3);
        assert_eq!(report[0].verdict, Verdict::FirstBetter);
        assert_eq!(report[1].verdict, Verdict::FirstBetter);
        assert_eq!(report[1].first.x, ratio(17, 6));
        assert_eq!(report[1].second.x, ratio(7, 4));
        assert_eq!(report[2].verdict, Verdict::Tie);
    }

    fn arb_weights() -> impl Strategy<Value = [Rational; LABEL_COUNT]> {
        proptest::collection::vec(0i64..=1000, 5).prop_filter_map("nonzero", |v| {
            if v.iter().all(|&x| x == 0) {
                None
            } else {
                let mut w = [Rational::zero(); 5];
                for (i, x) in v.into_iter().enumerate() {
                    w[i] = ratio(x, 1000);
                }
                Some(w)
            }
        })
    }

    proptest! {
        #[test]
        fn centroid_bounds(w in arb_weights()) {
            let c = centroid_closed_form(&w)?;
            prop_assert!(c.x >= ratio(1, 2) && c.x <= ratio(9, 2));
            prop_assert!(c.y >= ratio(1, 10) && c.y <= ratio(1, 2));
            let norm = normalize_weights(&w)?;
            prop_assert_eq!(c.y == ratio(1, 10), norm.is_uniform());
        }

        #[test]
        fn centroid_scale_invariance(w in arb_weights(), num in 1i64..50, den in 1i64..50) {
            let lambda = ratio(num, den);
            let scaled = w.map(|v| v * lambda);
            prop_assert_eq!(centroid_closed_form(&scaled)?, centroid_closed_form(&w)?);
        }

        #[test]
        fn mass_shift_increases_x_exactly(
            w in arb_weights(),
            from in 0usize..5,
            to in 0usize..5,
            eps_num in 1i64..100,
        ) {
            prop_assume!(from < to);
            let norm = normalize_weights(&w)?;
            let y = norm.weights();
            prop_assume!(!y[from].is_zero());
            let eps = y[from] * ratio(eps_num, 100);
            let mut shifted = *y;
            shifted[from] -= eps;
            shifted[to] += eps;
            let before = centroid_closed_form(y)?;
            let after = centroid_closed_form(&shifted)?;
            let expect = before.x + eps * Rational::from_integer((to - from) as i64);
            prop_assert_eq!(after.x, expect);
        }
    }
}
