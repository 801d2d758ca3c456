//! Move-split-merge distance.

/// Split/merge cost: the flat cost `c` when `x` lies between `y` and `z`,
/// otherwise `c` plus the smaller deviation of `x` from the pair.
pub fn msm_cost(x: f64, y: f64, z: f64, c: f64) -> f64 {
    if (y <= x && x <= z) || (y >= x && x >= z) {
        c
    } else {
        c + (x - y).abs().min((x - z).abs())
    }
}

pub fn msm_distance(a: &[f64], b: &[f64], c: f64) -> f64 {
    let m = a.len();
    let mut d = vec![vec![0.0; m]; m];
    d[0][0] = (a[0] - b[0]).abs();
    for i in 1..m {
        d[i][0] = d[i - 1][0] + msm_cost(a[i], a[i - 1], b[0], c);
    }
    for j in 1..m {
        d[0][j] = d[0][j - 1] + msm_cost(b[j], a[0], b[j - 1], c);
    }
    for i in 1..m {
        for j in 1..m {
            let matched = d[i - 1][j - 1] + (a[i] - b[j]).abs();
            let split = d[i - 1][j] + msm_cost(a[i], a[i - 1], b[j], c);
            let merge = d[i][j - 1] + msm_cost(b[j], b[j - 1], a[i], c);
            d[i][j] = matched.min(split).min(merge);
        }
    }
    d[m - 1][m - 1]
}
