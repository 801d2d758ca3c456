//! Threshold- and gap-based edit kernels: LCSS, EDR and ERP.

/// Longest common subsequence length with the strict epsilon match rule.
pub fn lcss_length(a: &[f64], b: &[f64], epsilon: f64) -> usize {
    let m = a.len();
    let mut prev = vec![0usize; m + 1];
    let mut cur = vec![0usize; m + 1];
    for i in 1..=m {
        for j in 1..=m {
            cur[j] = if (a[i - 1] - b[j - 1]).abs() < epsilon {
                prev[j - 1] + 1
            } else {
                prev[j].max(cur[j - 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
        cur[0] = 0;
    }
    prev[m]
}

/// EDR edit count. Substitution within epsilon is free, otherwise one
/// edit; insertions and deletions cost one each. Boundaries are the
/// plain edit-count ones: E(i,0) = i and E(0,j) = j.
pub fn edr_count(a: &[f64], b: &[f64], epsilon: f64) -> f64 {
    let m = a.len();
    let mut prev: Vec<f64> = (0..=m).map(|j| j as f64).collect();
    let mut cur = vec![0.0; m + 1];
    for i in 1..=m {
        cur[0] = i as f64;
        for j in 1..=m {
            let sub = if (a[i - 1] - b[j - 1]).abs() < epsilon { 0.0 } else { 1.0 };
            cur[j] = (prev[j - 1] + sub).min(prev[j] + 1.0).min(cur[j - 1] + 1.0);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

/// Full ERP accumulation matrix with cumulative-prefix gap boundaries.
pub fn erp_matrix(a: &[f64], b: &[f64], gap: f64) -> Vec<Vec<f64>> {
    let m = a.len();
    let mut e = vec![vec![0.0; m + 1]; m + 1];
    for i in 1..=m {
        e[i][0] = e[i - 1][0] + (a[i - 1] - gap).abs();
    }
    for j in 1..=m {
        e[0][j] = e[0][j - 1] + (b[j - 1] - gap).abs();
    }
    for i in 1..=m {
        for j in 1..=m {
            let matched = e[i - 1][j - 1] + (a[i - 1] - b[j - 1]).abs();
            let gap_a = e[i - 1][j] + (a[i - 1] - gap).abs();
            let gap_b = e[i][j - 1] + (b[j - 1] - gap).abs();
            e[i][j] = matched.min(gap_a).min(gap_b);
        }
    }
    e
}

pub fn erp_distance(a: &[f64], b: &[f64], gap: f64) -> f64 {
    let m = a.len();
    erp_matrix(a, b, gap)[m][m]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcss_identity() {
        let a = [0.1, 0.5, -0.3];
        assert_eq!(lcss_length(&a, &a, 0.05), 3);
    }

    #[test]
    fn lcss_strict_threshold() {
        // |1.0 - 0.95| = 0.05 is not < 0.05
        assert_eq!(lcss_length(&[1.0], &[0.95], 0.05), 0);
        assert_eq!(lcss_length(&[1.0], &[0.96], 0.05), 1);
    }

    #[test]
    fn edr_single_substitution() {
        assert_eq!(edr_count(&[0.0], &[5.0], 0.05), 1.0);
        assert_eq!(edr_count(&[0.0], &[0.01], 0.05), 0.0);
    }

    #[test]
    fn edr_identity() {
        let a = [0.3, 1.2, -0.8, 0.0];
        assert_eq!(edr_count(&a, &a, 0.05), 0.0);
    }

    #[test]
    fn erp_identity_and_symmetry() {
        let a = [0.4, -1.0, 2.5];
        let b = [1.3, 0.0, -2.0];
        assert_eq!(erp_distance(&a, &a, 0.05), 0.0);
        assert!((erp_distance(&a, &b, 0.05) - erp_distance(&b, &a, 0.05)).abs() < 1e-12);
    }

    #[test]
    fn erp_boundary_is_prefix_sum() {
        let a = [1.0, -2.0, 3.0];
        let b = [0.5, 0.5, 0.5];
        let e = erp_matrix(&a, &b, 0.0);
        assert_eq!(e[1][0], 1.0);
        assert_eq!(e[2][0], 3.0);
        assert_eq!(e[3][0], 6.0);
        assert_eq!(e[0][3], 1.5);
    }
}
