//! Time warp edit distance.

use super::dtw::INF;

/// TWE with stiffness `nu` and edit penalty `lambda`. Both series are
/// prepended with a synthetic zero sample so the index-0 predecessor
/// terms in the recursion are defined.
pub fn twe_distance(a: &[f64], b: &[f64], nu: f64, lambda: f64) -> f64 {
    let m = a.len();
    let mut pa = vec![0.0; m + 1];
    let mut pb = vec![0.0; m + 1];
    pa[1..].copy_from_slice(a);
    pb[1..].copy_from_slice(b);

    let mut d = vec![vec![INF; m + 1]; m + 1];
    d[0][0] = 0.0;
    for i in 1..=m {
        for j in 1..=m {
            let matched = d[i - 1][j - 1]
                + (pa[i] - pb[j]).abs()
                + (pa[i - 1] - pb[j - 1]).abs()
                + 2.0 * nu * (i as f64 - j as f64).abs();
            let delete = d[i - 1][j] + (pa[i] - pa[i - 1]).abs() + lambda + nu;
            let insert = d[i][j - 1] + (pb[j] - pb[j - 1]).abs() + lambda + nu;
            d[i][j] = matched.min(delete).min(insert);
        }
    }
    d[m][m]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_zero() {
        let a = [0.4, -1.0, 2.5, 0.1];
        assert_eq!(twe_distance(&a, &a, 0.05, 1.0), 0.0);
    }

    #[test]
    fn single_point_no_penalties() {
        // match = |x-y| + |0-0| with nu = lambda = 0, but an edit pair
        // (delete then insert) may be cheaper for large |x-y|
        assert_eq!(twe_distance(&[2.0], &[3.5], 0.0, 0.0), 1.5);
    }

    #[test]
    fn symmetry() {
        let a = [0.4, -1.0, 2.5];
        let b = [1.3, 0.0, -2.0];
        let d1 = twe_distance(&a, &b, 0.05, 1.0);
        let d2 = twe_distance(&b, &a, 0.05, 1.0);
        assert!((d1 - d2).abs() < 1e-12);
    }
}
