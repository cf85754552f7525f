//! Run results: the in-memory clustering report and its JSON form.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

/// Which algorithm produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Fcm,
    Pcm,
    Apcm,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::Fcm => write!(f, "fcm"),
            Algorithm::Pcm => write!(f, "pcm"),
            Algorithm::Apcm => write!(f, "apcm"),
        }
    }
}

/// Final outcome of a clustering run.
///
/// `labels` are 1-based cluster indices in `1..=m_final`, and every cluster
/// index occurs at least once. `gamma` holds per-cluster scale parameters
/// (empty for FCM, which has none).
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringReport {
    pub algorithm: Algorithm,
    pub m_ini: usize,
    pub m_final: usize,
    pub labels: Vec<usize>,
    pub theta: Array2<f64>,
    pub gamma: Vec<f64>,
    pub rm: Option<f64>,
    pub sr: Option<f64>,
    pub md: Option<f64>,
    pub iterations: usize,
    pub elapsed_ms: f64,
}

/// JSON-facing view of a run, written by the CLI. Field names are a stable
/// contract; `rm`/`sr`/`md` are null when no ground truth was available and
/// `alpha`/`K` are null when the algorithm does not use them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub m_ini: usize,
    pub m_final: usize,
    pub alpha: Option<f64>,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    pub q: f64,
    pub iterations: usize,
    pub elapsed_ms: f64,
    pub rm: Option<f64>,
    pub sr: Option<f64>,
    pub md: Option<f64>,
    pub theta: Vec<Vec<f64>>,
    pub gamma: Vec<f64>,
}

impl RunReport {
    pub fn new(report: &ClusteringReport, alpha: Option<f64>, k: Option<f64>, q: f64) -> Self {
        Self {
            algorithm: report.algorithm,
            m_ini: report.m_ini,
            m_final: report.m_final,
            alpha,
            k,
            q,
            iterations: report.iterations,
            elapsed_ms: report.elapsed_ms,
            rm: report.rm,
            sr: report.sr,
            md: report.md,
            theta: report.theta.rows().into_iter().map(|r| r.to_vec()).collect(),
            gamma: report.gamma.clone(),
        }
    }

    /// One-line summary in the column order m_ini, m_final, RM, SR, MD,
    /// iterations, time.
    pub fn summary_line(&self) -> String {
        fn opt(v: Option<f64>) -> String {
            v.map(|x| format!("{x:.2}")).unwrap_or_else(|| "-".into())
        }
        let params = match self.algorithm {
            Algorithm::Fcm => String::new(),
            Algorithm::Pcm => format!("(K={})", self.k.unwrap_or(1.0)),
            Algorithm::Apcm => format!("(alpha={})", self.alpha.unwrap_or(1.0)),
        };
        format!(
            "{}{}  m_ini={}  m_final={}  RM={}  SR={}  MD={}  iter={}  time={:.3}s",
            self.algorithm,
            params,
            self.m_ini,
            self.m_final,
            opt(self.rm),
            opt(self.sr),
            self.md.map(|x| format!("{x:.4}")).unwrap_or_else(|| "-".into()),
            self.iterations,
            self.elapsed_ms / 1000.0
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn json_round_trip_is_bit_exact() {
        let report = ClusteringReport {
            algorithm: Algorithm::Apcm,
            m_ini: 5,
            m_final: 3,
            labels: vec![1, 2, 3],
            theta: array![[0.1 + 0.2, 1.0 / 3.0], [f64::MIN_POSITIVE, 1e300], [-0.0, 2.5]],
            gamma: vec![0.1, 0.2, 0.30000000000000004],
            rm: Some(91.24),
            sr: Some(92.67),
            md: None,
            iterations: 26,
            elapsed_ms: 57.125,
        };
        let json = RunReport::new(&report, Some(3.0), None, 2.0);
        let text = serde_json::to_string_pretty(&json).unwrap();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
        for (a, b) in json.theta.iter().flatten().zip(back.theta.iter().flatten()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn summary_uses_dashes_for_missing_metrics() {
        let report = ClusteringReport {
            algorithm: Algorithm::Fcm,
            m_ini: 3,
            m_final: 3,
            labels: vec![1, 2, 3],
            theta: array![[0.0], [1.0], [2.0]],
            gamma: vec![],
            rm: None,
            sr: None,
            md: None,
            iterations: 10,
            elapsed_ms: 1.0,
        };
        let line = RunReport::new(&report, None, None, 2.0).summary_line();
        assert!(line.contains("RM=-"));
        assert!(line.contains("m_final=3"));
    }
}
