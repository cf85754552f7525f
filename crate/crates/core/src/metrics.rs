//! External validation measures: Rand measure, success rate and the mean
//! distance between true cluster centers and their nearest representatives.

use std::collections::BTreeMap;

use ndarray::Array2;

use crate::dataset::euclidean_distance;
use crate::error::{Error, Result};

/// Ground-truth cluster centers (`m_true x l`), e.g. generator means or
/// per-class empirical means.
#[derive(Debug, Clone)]
pub struct TruthCenters(pub Array2<f64>);

fn choose2(n: usize) -> u128 {
    (n as u128) * (n as u128 - 1) / 2
}

/// Pair-counting agreement between two partitions, in percent.
///
/// RM = 100 (a + b) / C(N,2), where `a` counts pairs co-clustered in both
/// partitions and `b` pairs separated in both. Label values are opaque, so
/// partitions with different cluster counts compare fine.
pub fn rand_measure(labels: &[usize], truth: &[usize]) -> Result<f64> {
    assert_eq!(labels.len(), truth.len(), "rand_measure: length mismatch");
    let n = labels.len();
    if n < 2 {
        return Err(Error::UndefinedMeasure("rand measure needs at least 2 points".into()));
    }
    let mut joint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut by_label: BTreeMap<usize, usize> = BTreeMap::new();
    let mut by_truth: BTreeMap<usize, usize> = BTreeMap::new();
    for (&l, &t) in labels.iter().zip(truth.iter()) {
        *joint.entry((l, t)).or_insert(0) += 1;
        *by_label.entry(l).or_insert(0) += 1;
        *by_truth.entry(t).or_insert(0) += 1;
    }
    let same_both: u128 = joint.values().map(|&c| choose2(c)).sum();
    let same_labels: u128 = by_label.values().map(|&c| choose2(c)).sum();
    let same_truth: u128 = by_truth.values().map(|&c| choose2(c)).sum();
    let total = choose2(n);
    // Pairs separated in both = total - (same in either), via inclusion-exclusion.
    let diff_both = total - same_labels - same_truth + same_both;
    Ok(100.0 * (same_both + diff_both) as f64 / total as f64)
}

/// Percentage of points whose cluster, after mapping each cluster to the
/// ground-truth class it overlaps most (many-to-one, ties toward the lower
/// class index), carries the correct class.
pub fn success_rate(labels: &[usize], truth: &[usize]) -> f64 {
    assert_eq!(labels.len(), truth.len(), "success_rate: length mismatch");
    if labels.is_empty() {
        return 0.0;
    }
    let mut overlap: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for (&l, &t) in labels.iter().zip(truth.iter()) {
        *overlap.entry(l).or_default().entry(t).or_insert(0) += 1;
    }
    let mut mapping: BTreeMap<usize, usize> = BTreeMap::new();
    for (&l, counts) in &overlap {
        // Ascending class order, strict improvement: lowest class wins ties.
        let mut best = (0usize, 0usize);
        for (&class, &count) in counts {
            if count > best.1 {
                best = (class, count);
            }
        }
        mapping.insert(l, best.0);
    }
    let correct = labels
        .iter()
        .zip(truth.iter())
        .filter(|(l, t)| mapping[l] == **t)
        .count();
    100.0 * correct as f64 / labels.len() as f64
}

/// Mean distance between true centers and final representatives.
///
/// With at least as many representatives as true centers, each true center
/// is matched to its nearest representative; with fewer, each representative
/// is matched to its nearest true center (so some true centers are ignored).
pub fn mean_center_distance(theta: &Array2<f64>, truth_centers: &TruthCenters) -> f64 {
    let centers = &truth_centers.0;
    assert!(theta.nrows() > 0 && centers.nrows() > 0, "mean_center_distance: empty inputs");
    assert_eq!(theta.ncols(), centers.ncols(), "mean_center_distance: dimension mismatch");
    let nearest = |row: ndarray::ArrayView1<f64>, pool: &Array2<f64>| -> f64 {
        pool.rows()
            .into_iter()
            .map(|c| euclidean_distance(row, c))
            .fold(f64::INFINITY, f64::min)
    };
    if theta.nrows() >= centers.nrows() {
        let total: f64 = centers.rows().into_iter().map(|c| nearest(c, theta)).sum();
        total / centers.nrows() as f64
    } else {
        let total: f64 = theta.rows().into_iter().map(|t| nearest(t, centers)).sum();
        total / theta.nrows() as f64
    }
}
