//! Independent brute-force oracles for the DP kernels: exhaustive
//! monotone path enumeration and exhaustive subsequence search. Only
//! usable at toy lengths; none of this shares code with the library DP.

/// Minimum cost over all monotone lattice paths from `start` to (m, m).
/// `step_cost(from, to)` prices a single move; `allowed` can exclude
/// cells (used for TWE's forbidden boundary). `init` is the cost of
/// standing on the start cell.
pub fn min_path_cost(
    m: usize,
    start: (usize, usize),
    init: f64,
    step_cost: &dyn Fn((usize, usize), (usize, usize)) -> f64,
    allowed: &dyn Fn(usize, usize) -> bool,
) -> f64 {
    fn rec(
        m: usize,
        at: (usize, usize),
        acc: f64,
        step_cost: &dyn Fn((usize, usize), (usize, usize)) -> f64,
        allowed: &dyn Fn(usize, usize) -> bool,
    ) -> f64 {
        if at == (m, m) {
            return acc;
        }
        let mut best = f64::INFINITY;
        let moves = [
            (at.0 + 1, at.1 + 1),
            (at.0 + 1, at.1),
            (at.0, at.1 + 1),
        ];
        for next in moves {
            if next.0 > m || next.1 > m || !allowed(next.0, next.1) {
                continue;
            }
            let c = rec(m, next, acc + step_cost(at, next), step_cost, allowed);
            if c < best {
                best = c;
            }
        }
        best
    }
    rec(m, start, init, step_cost, allowed)
}

/// DTW over every valid warping path, full window.
pub fn dtw_brute(a: &[f64], b: &[f64]) -> f64 {
    let m = a.len();
    let point = |i: usize, j: usize| (a[i - 1] - b[j - 1]) * (a[i - 1] - b[j - 1]);
    min_path_cost(m, (1, 1), point(1, 1), &|_, to| point(to.0, to.1), &|_, _| true)
}

/// Weighted DTW over every valid warping path.
pub fn wdtw_brute(a: &[f64], b: &[f64], g: f64) -> f64 {
    let m = a.len();
    let point = |i: usize, j: usize| {
        let w = 1.0 / (1.0 + (-g * ((i as f64 - j as f64).abs() - m as f64 / 2.0)).exp());
        w * (a[i - 1] - b[j - 1]) * (a[i - 1] - b[j - 1])
    };
    min_path_cost(m, (1, 1), point(1, 1), &|_, to| point(to.0, to.1), &|_, _| true)
}

/// ERP over every match/gap script.
pub fn erp_brute(a: &[f64], b: &[f64], gap: f64) -> f64 {
    let m = a.len();
    let step = move |from: (usize, usize), to: (usize, usize)| -> f64 {
        if to.0 == from.0 + 1 && to.1 == from.1 + 1 {
            (a[to.0 - 1] - b[to.1 - 1]).abs()
        } else if to.0 == from.0 + 1 {
            (a[to.0 - 1] - gap).abs()
        } else {
            (b[to.1 - 1] - gap).abs()
        }
    };
    min_path_cost(m, (0, 0), 0.0, &step, &|_, _| true)
}

/// EDR over every edit script: free in-threshold substitution, unit edits.
pub fn edr_brute(a: &[f64], b: &[f64], epsilon: f64) -> f64 {
    let m = a.len();
    let step = move |from: (usize, usize), to: (usize, usize)| -> f64 {
        if to.0 == from.0 + 1 && to.1 == from.1 + 1 {
            if (a[to.0 - 1] - b[to.1 - 1]).abs() < epsilon {
                0.0
            } else {
                1.0
            }
        } else {
            1.0
        }
    };
    min_path_cost(m, (0, 0), 0.0, &step, &|_, _| true)
}

fn msm_cost(x: f64, y: f64, z: f64, c: f64) -> f64 {
    if (y <= x && x <= z) || (y >= x && x >= z) {
        c
    } else {
        c + (x - y).abs().min((x - z).abs())
    }
}

/// MSM over every edit script with the move/split/merge cost model.
pub fn msm_brute(a: &[f64], b: &[f64], c: f64) -> f64 {
    let m = a.len();
    let step = move |from: (usize, usize), to: (usize, usize)| -> f64 {
        if to.0 == from.0 + 1 && to.1 == from.1 + 1 {
            (a[to.0 - 1] - b[to.1 - 1]).abs()
        } else if to.0 == from.0 + 1 {
            msm_cost(a[to.0 - 1], a[to.0 - 2], b[to.1 - 1], c)
        } else {
            msm_cost(b[to.1 - 1], b[to.1 - 2], a[to.0 - 1], c)
        }
    };
    min_path_cost(m, (1, 1), (a[0] - b[0]).abs(), &step, &|_, _| true)
}

/// TWE over every edit script on the zero-prepended series; boundary
/// cells other than the origin are unreachable.
pub fn twe_brute(a: &[f64], b: &[f64], nu: f64, lambda: f64) -> f64 {
    let m = a.len();
    let mut pa = vec![0.0; m + 1];
    let mut pb = vec![0.0; m + 1];
    pa[1..].copy_from_slice(a);
    pb[1..].copy_from_slice(b);
    let step = move |from: (usize, usize), to: (usize, usize)| -> f64 {
        if to.0 == from.0 + 1 && to.1 == from.1 + 1 {
            (pa[to.0] - pb[to.1]).abs()
                + (pa[to.0 - 1] - pb[to.1 - 1]).abs()
                + 2.0 * nu * (to.0 as f64 - to.1 as f64).abs()
        } else if to.0 == from.0 + 1 {
            (pa[to.0] - pa[to.0 - 1]).abs() + lambda + nu
        } else {
            (pb[to.1] - pb[to.1 - 1]).abs() + lambda + nu
        }
    };
    min_path_cost(m, (0, 0), 0.0, &step, &|i, j| !((i == 0) ^ (j == 0)))
}

/// Longest epsilon-match over all strictly increasing index pairings.
pub fn lcss_brute(a: &[f64], b: &[f64], epsilon: f64) -> usize {
    fn rec(a: &[f64], b: &[f64], epsilon: f64, i: usize, j: usize) -> usize {
        if i == a.len() || j == b.len() {
            return 0;
        }
        let mut best = rec(a, b, epsilon, i + 1, j).max(rec(a, b, epsilon, i, j + 1));
        if (a[i] - b[j]).abs() < epsilon {
            best = best.max(1 + rec(a, b, epsilon, i + 1, j + 1));
        }
        best
    }
    rec(a, b, epsilon, 0, 0)
}
