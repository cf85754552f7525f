//! Fuzzy c-means. Used directly as a baseline and as the initializer that
//! seeds the possibilistic algorithms with representatives and memberships.

use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::{squared_distance, DataSet};
use crate::error::{Error, Result};

/// FCM tuning knobs. `q` is the fuzzifier (> 1).
#[derive(Debug, Clone, Copy)]
pub struct FcmParams {
    pub q: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for FcmParams {
    fn default() -> Self {
        Self { q: 2.0, tol: 1e-6, max_iter: 100 }
    }
}

/// Converged FCM state: representatives, row-stochastic membership matrix,
/// the fuzzifier used and the iteration count.
#[derive(Debug, Clone)]
pub struct FcmResult {
    pub theta: Array2<f64>,
    pub u: Array2<f64>,
    pub q: f64,
    pub iterations: usize,
    /// Set when the data had fewer than `m` distinct points, forcing the
    /// initial representatives to be sampled with replacement.
    pub sampled_with_replacement: bool,
}

/// Runs fuzzy c-means with `m` clusters.
///
/// Representatives start at `m` distinct data points sampled uniformly by
/// `seed`; iterations alternate membership and representative updates until
/// the largest representative displacement drops below `params.tol` or
/// `params.max_iter` is reached.
pub fn fcm_run(data: &DataSet, m: usize, params: &FcmParams, seed: u64) -> Result<FcmResult> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if m > data.n() {
        return Err(Error::InvalidParameter(format!(
            "m = {m} exceeds the number of points N = {}",
            data.n()
        )));
    }
    if !(params.q > 1.0) {
        return Err(Error::InvalidParameter(format!("fuzzifier q = {} must be > 1", params.q)));
    }
    if !(params.tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }

    let (mut theta, sampled_with_replacement) = initial_representatives(data, m, seed);
    let mut u = Array2::<f64>::zeros((data.n(), m));
    let mut iterations = 0;

    for _ in 0..params.max_iter {
        u = memberships(data, &theta, params.q);
        let next = representatives(data, &u, params.q, &theta);
        let mut shift: f64 = 0.0;
        for j in 0..m {
            shift = shift.max(squared_distance(next.row(j), theta.row(j)).sqrt());
        }
        theta = next;
        iterations += 1;
        if shift < params.tol {
            break;
        }
    }
    // Memberships consistent with the returned representatives.
    u = memberships(data, &theta, params.q);

    Ok(FcmResult { theta, u, q: params.q, iterations, sampled_with_replacement })
}

/// Picks `m` initial representatives uniformly at random: distinct data
/// points when the data has at least `m` of them, otherwise arbitrary rows
/// sampled with replacement (flagged in the result).
fn initial_representatives(data: &DataSet, m: usize, seed: u64) -> (Array2<f64>, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Indices of first occurrences of distinct rows.
    let mut distinct: Vec<usize> = Vec::new();
    'rows: for i in 0..data.n() {
        for &j in &distinct {
            if data.point(i) == data.point(j) {
                continue 'rows;
            }
        }
        distinct.push(i);
    }

    let mut theta = Array2::<f64>::zeros((m, data.dim()));
    if distinct.len() >= m {
        // Partial Fisher-Yates over the distinct indices.
        let mut pool = distinct;
        for slot in 0..m {
            let pick = slot + rand::Rng::random_range(&mut rng, 0..pool.len() - slot);
            pool.swap(slot, pick);
            theta.row_mut(slot).assign(&data.point(pool[slot]));
        }
        (theta, false)
    } else {
        for slot in 0..m {
            let pick = rand::Rng::random_range(&mut rng, 0..data.n());
            theta.row_mut(slot).assign(&data.point(pick));
        }
        (theta, true)
    }
}

/// Membership update: u_ij is the inverse of the sum over clusters of
/// (d_ij/d_ik)^(2/(q-1)). Points coinciding with a representative get a
/// crisp row (1 for the lowest-index zero-distance cluster).
pub(crate) fn memberships(data: &DataSet, theta: &Array2<f64>, q: f64) -> Array2<f64> {
    let n = data.n();
    let m = theta.nrows();
    let p = 1.0 / (q - 1.0);
    let mut u = Array2::<f64>::zeros((n, m));
    let mut d2 = vec![0.0f64; m];
    for i in 0..n {
        let x = data.point(i);
        let mut zero_at: Option<usize> = None;
        let mut d2_min = f64::INFINITY;
        for j in 0..m {
            let d = squared_distance(x, theta.row(j));
            d2[j] = d;
            if d == 0.0 && zero_at.is_none() {
                zero_at = Some(j);
            }
            if d < d2_min {
                d2_min = d;
            }
        }
        if let Some(j0) = zero_at {
            u[[i, j0]] = 1.0;
            continue;
        }
        // Weights normalized by the nearest cluster so powers cannot overflow.
        let mut total = 0.0;
        for j in 0..m {
            let w = (d2_min / d2[j]).powf(p);
            u[[i, j]] = w;
            total += w;
        }
        for j in 0..m {
            u[[i, j]] /= total;
        }
    }
    u
}

/// Representative update: the u^q-weighted mean of all points. A cluster
/// whose weight column sums to zero keeps its previous position.
fn representatives(data: &DataSet, u: &Array2<f64>, q: f64, previous: &Array2<f64>) -> Array2<f64> {
    let (n, m) = (data.n(), u.ncols());
    let dim = data.dim();
    let mut num = Array2::<f64>::zeros((m, dim));
    let mut den = vec![0.0f64; m];
    for i in 0..n {
        let x = data.point(i);
        for j in 0..m {
            let w = u[[i, j]].powf(q);
            den[j] += w;
            let mut row = num.row_mut(j);
            for d in 0..dim {
                row[d] += w * x[d];
            }
        }
    }
    for j in 0..m {
        if den[j] > 0.0 {
            let mut row = num.row_mut(j);
            row /= den[j];
        } else {
            num.row_mut(j).assign(&previous.row(j));
        }
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn simple_two_blobs() -> DataSet {
        let pts = array![
            [0.0, 0.0],
            [0.2, 0.1],
            [0.1, 0.3],
            [5.0, 5.0],
            [5.2, 4.9],
            [4.9, 5.1],
        ];
        DataSet::new(pts, None, "blobs").unwrap()
    }

    #[test]
    fn rows_sum_to_one() {
        let data = simple_two_blobs();
        let res = fcm_run(&data, 2, &FcmParams::default(), 7).unwrap();
        for row in res.u.rows() {
            assert_abs_diff_eq!(row.sum(), 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn identical_points_single_cluster() {
        let pts = array![[2.0, 3.0], [2.0, 3.0], [2.0, 3.0]];
        let data = DataSet::new(pts, None, "dup").unwrap();
        let res = fcm_run(&data, 1, &FcmParams::default(), 0).unwrap();
        assert_eq!(res.theta.row(0).to_vec(), vec![2.0, 3.0]);
        assert!(res.u.iter().all(|&v| v == 1.0));
        assert!(!res.sampled_with_replacement);
    }

    #[test]
    fn duplicated_data_falls_back_to_replacement() {
        let pts = array![[1.0], [1.0], [1.0]];
        let data = DataSet::new(pts, None, "dup").unwrap();
        let res = fcm_run(&data, 2, &FcmParams::default(), 3).unwrap();
        assert!(res.sampled_with_replacement);
    }

    #[test]
    fn m_larger_than_n_is_an_error() {
        let pts = array![[0.0], [1.0]];
        let data = DataSet::new(pts, None, "tiny").unwrap();
        assert!(fcm_run(&data, 3, &FcmParams::default(), 0).is_err());
    }

    #[test]
    fn representatives_stay_in_bounding_box() {
        let data = simple_two_blobs();
        let res = fcm_run(&data, 3, &FcmParams::default(), 11).unwrap();
        let (lo, hi) = data.bounding_box();
        for row in res.theta.rows() {
            for (d, &v) in row.iter().enumerate() {
                assert!(v >= lo[d] - 1e-12 && v <= hi[d] + 1e-12);
            }
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let data = simple_two_blobs();
        let a = fcm_run(&data, 2, &FcmParams::default(), 42).unwrap();
        let b = fcm_run(&data, 2, &FcmParams::default(), 42).unwrap();
        assert_eq!(a.theta, b.theta);
        assert_eq!(a.u, b.u);
        assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn separates_two_clear_blobs() {
        let data = simple_two_blobs();
        let res = fcm_run(&data, 2, &FcmParams::default(), 1).unwrap();
        // One representative near each blob center.
        let c0 = res.theta.row(0);
        let c1 = res.theta.row(1);
        let near_origin = |r: ndarray::ArrayView1<f64>| r[0] < 1.0 && r[1] < 1.0;
        assert!(near_origin(c0) != near_origin(c1));
    }
}
