//! External validity: precision, recall and F-measure of a clustering
//! against ground-truth classes.
//!
//! For class `i` and cluster `j` with `β_ij` shared members, precision is
//! `β_ij / β_j`, recall is `β_ij / β_i`, and `F(i, j)` is their harmonic
//! mean. The total score weights each class's best-matching cluster by class
//! size: `F_tot = Σ_i (β_i / n) · max_j F(i, j)`.

use crate::error::{Error, Result};
use crate::objective::Assignment;

/// Class-by-cluster co-occurrence counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    counts: Vec<Vec<usize>>,
    class_sizes: Vec<usize>,
    cluster_sizes: Vec<usize>,
    n: usize,
}

impl ContingencyTable {
    /// Builds a table from explicit counts (`num_classes` rows of `K`).
    pub fn from_counts(counts: Vec<Vec<usize>>) -> Result<Self> {
        let k = counts.first().map_or(0, Vec::len);
        if counts.is_empty() || k == 0 {
            return Err(Error::InvalidDataset("empty contingency table".into()));
        }
        if counts.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidDataset("ragged contingency table".into()));
        }
        let class_sizes: Vec<usize> = counts.iter().map(|r| r.iter().sum()).collect();
        let cluster_sizes: Vec<usize> = (0..k).map(|j| counts.iter().map(|r| r[j]).sum()).collect();
        let n = class_sizes.iter().sum();
        Ok(Self {
            counts,
            class_sizes,
            cluster_sizes,
            n,
        })
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn cluster_sizes(&self) -> &[usize] {
        &self.cluster_sizes
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_classes(&self) -> usize {
        self.counts.len()
    }

    pub fn num_clusters(&self) -> usize {
        self.cluster_sizes.len()
    }

    pub fn precision(&self, i: usize, j: usize) -> f64 {
        ratio(self.counts[i][j], self.cluster_sizes[j])
    }

    pub fn recall(&self, i: usize, j: usize) -> f64 {
        ratio(self.counts[i][j], self.class_sizes[i])
    }

    /// Harmonic mean of precision and recall; 0 for undefined cells.
    pub fn f_score(&self, i: usize, j: usize) -> f64 {
        let p = self.precision(i, j);
        let r = self.recall(i, j);
        if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        }
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Tallies class `labels[i]` against cluster `memberships[i]`. The table has
/// `max(label) + 1` rows and `assignment.k()` columns.
pub fn build_contingency(labels: &[usize], assignment: &Assignment) -> Result<ContingencyTable> {
    if labels.len() != assignment.len() {
        return Err(Error::LengthMismatch {
            labels: labels.len(),
            memberships: assignment.len(),
        });
    }
    if labels.is_empty() {
        return Err(Error::InvalidDataset("no objects to score".into()));
    }
    let classes = labels.iter().max().map_or(0, |&m| m + 1);
    let mut counts = vec![vec![0usize; assignment.k()]; classes];
    for (&c, &j) in labels.iter().zip(assignment.memberships()) {
        counts[c][j] += 1;
    }
    ContingencyTable::from_counts(counts)
}

pub fn f_measure(table: &ContingencyTable) -> f64 {
    if table.n == 0 {
        return 0.0;
    }
    let n = table.n as f64;
    (0..table.num_classes())
        .map(|i| {
            let best = (0..table.num_clusters())
                .map(|j| table.f_score(i, j))
                .fold(0.0, f64::max);
            table.class_sizes[i] as f64 / n * best
        })
        .sum()
}

/// Convenience wrapper: F-measure of an assignment against labels.
pub fn score_assignment(labels: &[usize], assignment: &Assignment) -> Result<f64> {
    Ok(f_measure(&build_contingency(labels, assignment)?))
}
