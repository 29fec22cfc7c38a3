//! The clustering objective shared by every optimizer: Euclidean distance,
//! nearest-centroid assignment, centroid recomputation, and the total
//! distance from each object to its assigned centroid.
//!
//! The objective sums plain (not squared) distances.

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// K centroids of dimension m, stored flat as one `K * m` vector, plus a
/// cached objective value.
///
/// Every mutable access to the coordinates clears the cache.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidSolution {
    k: usize,
    dim: usize,
    coords: Vec<f64>,
    objective: Option<f64>,
}

impl CentroidSolution {
    pub fn from_flat(k: usize, dim: usize, coords: Vec<f64>) -> Result<Self> {
        if k == 0 || dim == 0 {
            return Err(Error::InvalidDataset(
                "a solution needs at least one centroid and one dimension".into(),
            ));
        }
        if coords.len() != k * dim {
            return Err(Error::DimensionMismatch {
                expected: k * dim,
                found: coords.len(),
            });
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset("centroid coordinate is not finite".into()));
        }
        Ok(Self {
            k,
            dim,
            coords,
            objective: None,
        })
    }

    pub fn from_centroids(centroids: &[Vec<f64>]) -> Result<Self> {
        let dim = centroids.first().map_or(0, Vec::len);
        if let Some(bad) = centroids.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Self::from_flat(centroids.len(), dim, centroids.concat())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn centroid(&self, j: usize) -> &[f64] {
        &self.coords[j * self.dim..(j + 1) * self.dim]
    }

    pub fn centroids(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    /// Mutable coordinates; invalidates the cached objective.
    pub fn flat_mut(&mut self) -> &mut [f64] {
        self.objective = None;
        &mut self.coords
    }

    pub fn objective(&self) -> Option<f64> {
        self.objective
    }

    /// Evaluates against `data` and caches the result.
    pub fn evaluate_cached(&mut self, data: &Dataset) -> Result<f64> {
        if let Some(v) = self.objective {
            return Ok(v);
        }
        let v = evaluate(data, self)?;
        self.objective = Some(v);
        Ok(v)
    }

    /// Objective value, assuming the cache has been filled.
    pub(crate) fn cached(&self) -> f64 {
        self.objective.expect("objective evaluated before use")
    }

    pub(crate) fn set_objective(&mut self, v: f64) {
        self.objective = Some(v);
    }

    fn check_against(&self, data: &Dataset) -> Result<()> {
        if self.dim != data.dim() {
            return Err(Error::DimensionMismatch {
                expected: data.dim(),
                found: self.dim,
            });
        }
        Ok(())
    }
}

/// Cluster index per object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    k: usize,
    memberships: Vec<usize>,
}

impl Assignment {
    pub fn new(k: usize, memberships: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = memberships.iter().find(|&&c| c >= k) {
            return Err(Error::InvalidDataset(format!(
                "membership {bad} outside [0, {k})"
            )));
        }
        Ok(Self { k, memberships })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn memberships(&self) -> &[usize] {
        &self.memberships
    }

    pub fn len(&self) -> usize {
        self.memberships.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memberships.is_empty()
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.memberships {
            sizes[c] += 1;
        }
        sizes
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(distance(a, b))
}

#[inline]
pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

#[inline]
pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    squared_distance(a, b).sqrt()
}

/// Index and distance of the nearest centroid; ties go to the lowest index.
#[inline]
fn nearest(point: &[f64], solution: &CentroidSolution) -> (usize, f64) {
    let mut best = 0;
    let mut best_sq = f64::INFINITY;
    for (j, c) in solution.centroids().enumerate() {
        let sq = squared_distance(point, c);
        if sq < best_sq {
            best_sq = sq;
            best = j;
        }
    }
    (best, best_sq.sqrt())
}

pub fn assign(data: &Dataset, solution: &CentroidSolution) -> Result<Assignment> {
    solution.check_against(data)?;
    let memberships = data.points().map(|p| nearest(p, solution).0).collect();
    Ok(Assignment {
        k: solution.k,
        memberships,
    })
}

/// Sum over objects of the distance to the nearest centroid.
pub fn evaluate(data: &Dataset, solution: &CentroidSolution) -> Result<f64> {
    solution.check_against(data)?;
    Ok(data.points().map(|p| nearest(p, solution).1).sum())
}

/// Assignment and objective in a single pass.
pub fn assign_and_evaluate(
    data: &Dataset,
    solution: &CentroidSolution,
) -> Result<(Assignment, f64)> {
    solution.check_against(data)?;
    let mut total = 0.0;
    let memberships = data
        .points()
        .map(|p| {
            let (j, d) = nearest(p, solution);
            total += d;
            j
        })
        .collect();
    Ok((
        Assignment {
            k: solution.k,
            memberships,
        },
        total,
    ))
}

/// Centroid j becomes the mean of cluster j's members.
///
/// A cluster left empty is handed the object farthest from its own
/// (recomputed) centroid; with several empty clusters, each takes the next
/// farthest object not already used.
pub fn recompute_centroids(
    data: &Dataset,
    assignment: &Assignment,
    k: usize,
) -> Result<CentroidSolution> {
    if assignment.len() != data.len() {
        return Err(Error::LengthMismatch {
            labels: data.len(),
            memberships: assignment.len(),
        });
    }
    if k != assignment.k {
        return Err(Error::DimensionMismatch {
            expected: assignment.k,
            found: k,
        });
    }
    let m = data.dim();
    let mut sums = vec![0.0; k * m];
    let mut counts = vec![0usize; k];
    for (p, &c) in data.points().zip(&assignment.memberships) {
        counts[c] += 1;
        for (s, v) in sums[c * m..(c + 1) * m].iter_mut().zip(p) {
            *s += v;
        }
    }
    for (j, &count) in counts.iter().enumerate() {
        if count > 0 {
            let inv = count as f64;
            sums[j * m..(j + 1) * m].iter_mut().for_each(|s| *s /= inv);
        }
    }

    let empty: Vec<usize> = (0..k).filter(|&j| counts[j] == 0).collect();
    if !empty.is_empty() {
        let mut far: Vec<(usize, f64)> = data
            .points()
            .zip(&assignment.memberships)
            .enumerate()
            .map(|(i, (p, &c))| (i, distance(p, &sums[c * m..(c + 1) * m])))
            .collect();
        // farthest first; index order among equal distances
        far.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        for (&j, &(i, _)) in empty.iter().zip(&far) {
            sums[j * m..(j + 1) * m].copy_from_slice(data.point(i));
        }
    }

    CentroidSolution::from_flat(k, m, sums)
}

/// Sum of squared distances to the nearest centroid (the quantity a Lloyd
/// step is guaranteed not to increase).
pub fn sum_of_squares(data: &Dataset, solution: &CentroidSolution) -> Result<f64> {
    solution.check_against(data)?;
    Ok(data
        .points()
        .map(|p| {
            let d = nearest(p, solution).1;
            d * d
        })
        .sum())
}
