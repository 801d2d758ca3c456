//! DTW-family kernels: the banded accumulation matrix, distance, weighted
//! variant and alignment-path traceback.

/// Band sentinel. Large enough to dominate any feasible path cost while
/// still surviving additions without overflow.
pub const INF: f64 = f64::MAX / 2.0;

/// Accumulated DTW cost matrix, (m+1) x (m+1), row-major. Cells outside
/// the Sakoe-Chiba band hold the `INF` sentinel.
#[derive(Debug, Clone)]
pub struct CostMatrix {
    entries: Vec<f64>,
    size: usize,
    band_radius: usize,
}

impl CostMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    /// Side length including the boundary row/column.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn band_radius(&self) -> usize {
        self.band_radius
    }

    /// Final accumulated cost, cell (m, m).
    pub fn total(&self) -> f64 {
        self.get(self.size - 1, self.size - 1)
    }
}

/// A warping path as 1-based (i, j) pairs from (1,1) to (m,m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentPath {
    pub pairs: Vec<(usize, usize)>,
}

impl AlignmentPath {
    /// Monotone, stepwise, anchored at the corners.
    pub fn is_valid(&self, m: usize) -> bool {
        if self.pairs.first() != Some(&(1, 1)) || self.pairs.last() != Some(&(m, m)) {
            return false;
        }
        self.pairs.windows(2).all(|w| {
            let (di, dj) = (w[1].0 as i64 - w[0].0 as i64, w[1].1 as i64 - w[0].1 as i64);
            (0..=1).contains(&di) && (0..=1).contains(&dj) && (di, dj) != (0, 0)
        })
    }
}

/// Band radius for window fraction `w` over length `m`: cells with
/// |i-j| <= floor(w*m) are inside.
pub fn band_radius(w: f64, m: usize) -> usize {
    (w * m as f64).floor() as usize
}

fn accumulate(a: &[f64], b: &[f64], radius: usize) -> CostMatrix {
    let m = a.len();
    let size = m + 1;
    let mut c = vec![INF; size * size];
    c[0] = 0.0;
    for i in 1..=m {
        let lo = i.saturating_sub(radius).max(1);
        let hi = (i + radius).min(m);
        for j in lo..=hi {
            let cost = (a[i - 1] - b[j - 1]) * (a[i - 1] - b[j - 1]);
            let best = c[(i - 1) * size + (j - 1)]
                .min(c[(i - 1) * size + j])
                .min(c[i * size + (j - 1)]);
            c[i * size + j] = cost + best;
        }
    }
    CostMatrix {
        entries: c,
        size,
        band_radius: radius,
    }
}

pub fn cost_matrix(a: &[f64], b: &[f64], window: f64) -> CostMatrix {
    accumulate(a, b, band_radius(window, a.len()))
}

pub fn dtw_distance(a: &[f64], b: &[f64], window: f64) -> f64 {
    // Band-limited rolling computation; two rows suffice for the distance.
    let m = a.len();
    let radius = band_radius(window, m);
    let mut prev = vec![INF; m + 1];
    let mut cur = vec![INF; m + 1];
    prev[0] = 0.0;
    for i in 1..=m {
        cur.fill(INF);
        let lo = i.saturating_sub(radius).max(1);
        let hi = (i + radius).min(m);
        for j in lo..=hi {
            let cost = (a[i - 1] - b[j - 1]) * (a[i - 1] - b[j - 1]);
            cur[j] = cost + prev[j - 1].min(prev[j]).min(cur[j - 1]);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

/// Logistic warping weight with unit upper bound.
fn logistic_weight(displacement: f64, g: f64, m: usize) -> f64 {
    1.0 / (1.0 + (-g * (displacement - m as f64 / 2.0)).exp())
}

/// Weighted DTW: full matrix, squared pointwise cost scaled by the
/// logistic weight of the index displacement.
pub fn wdtw_distance(a: &[f64], b: &[f64], g: f64) -> f64 {
    let m = a.len();
    let size = m + 1;
    let mut c = vec![INF; size * size];
    c[0] = 0.0;
    for i in 1..=m {
        for j in 1..=m {
            let w = logistic_weight((i as f64 - j as f64).abs(), g, m);
            let cost = w * (a[i - 1] - b[j - 1]) * (a[i - 1] - b[j - 1]);
            let best = c[(i - 1) * size + (j - 1)]
                .min(c[(i - 1) * size + j])
                .min(c[i * size + (j - 1)]);
            c[i * size + j] = cost + best;
        }
    }
    c[m * size + m]
}

/// Trace the minimal-cost path back through the accumulated matrix.
/// Ties prefer the diagonal, then the vertical (i-1, j) predecessor.
pub fn alignment_path(a: &[f64], b: &[f64], window: f64) -> (AlignmentPath, f64) {
    let c = cost_matrix(a, b, window);
    let m = a.len();
    let mut pairs = Vec::with_capacity(2 * m);
    let (mut i, mut j) = (m, m);
    pairs.push((i, j));
    while i > 1 || j > 1 {
        let diag = c.get(i - 1, j - 1);
        let vert = if i > 1 { c.get(i - 1, j) } else { INF };
        let horiz = if j > 1 { c.get(i, j - 1) } else { INF };
        let best = diag.min(vert).min(horiz);
        if diag == best && i > 1 && j > 1 {
            i -= 1;
            j -= 1;
        } else if vert == best && i > 1 {
            i -= 1;
        } else {
            j -= 1;
        }
        pairs.push((i, j));
    }
    pairs.reverse();
    (AlignmentPath { pairs }, c.total())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_zero_with_diagonal_path() {
        let a = [0.3, -1.2, 4.0, 0.0, 2.2];
        assert_eq!(dtw_distance(&a, &a, 1.0), 0.0);
        let (path, cost) = alignment_path(&a, &a, 1.0);
        assert_eq!(cost, 0.0);
        assert_eq!(path.pairs, vec![(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)]);
    }

    #[test]
    fn rolling_distance_matches_full_matrix() {
        let a = [0.1, 0.9, -0.4, 2.0, 1.1, -3.0];
        let b = [1.0, 0.2, 0.3, -0.9, 2.5, 0.0];
        for w in [0.0, 0.2, 0.5, 1.0] {
            let full = cost_matrix(&a, &b, w).total();
            assert!((dtw_distance(&a, &b, w) - full).abs() < 1e-12);
        }
    }

    #[test]
    fn band_radius_rule() {
        // floor(0.2 * 10) = 2, matching a maximum warping of 2 places
        assert_eq!(band_radius(0.2, 10), 2);
        assert_eq!(band_radius(1.0, 10), 10);
        assert_eq!(band_radius(0.0, 10), 0);
    }

    #[test]
    fn out_of_band_cells_hold_sentinel() {
        let a = [1.0, 2.0, 3.0, 4.0, 5.0];
        let c = cost_matrix(&a, &a, 0.2); // radius 1
        assert_eq!(c.band_radius(), 1);
        assert_eq!(c.get(1, 4), INF);
        assert_eq!(c.get(4, 1), INF);
    }

    #[test]
    fn window_zero_is_squared_euclidean() {
        let a = [0.0, 1.0, 5.0];
        let b = [1.0, 3.0, 2.0];
        let expect: f64 = a.iter().zip(&b).map(|(x, y)| (x - y) * (x - y)).sum();
        assert!((dtw_distance(&a, &b, 0.0) - expect).abs() < 1e-12);
    }

    #[test]
    fn wdtw_zero_steepness_halves_full_dtw() {
        let a = [0.4, -1.0, 2.5, 0.1];
        let b = [1.3, 0.0, -2.0, 0.9];
        let full = dtw_distance(&a, &b, 1.0);
        assert_eq!(wdtw_distance(&a, &b, 0.0), 0.5 * full);
    }
}
