#![allow(dead_code)]

use stable_pairs::exactalg::Rational;
use stable_pairs::pairclasses::{find_walls, n_points};
use stable_pairs::wallcross::{check_start, AlphaBound};

/// Every `(d, chi)` with `1 <= d <= 5` whose `alpha = inf` moduli is a
/// nonempty projective bundle.
pub fn bundle_classes() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for d in 1..=5 {
        let lowest = d * (3 - d) / 2;
        for chi in lowest - 2..=lowest + d + 3 {
            if check_start(d, chi).is_ok() {
                assert!(n_points(d, chi) >= 0);
                out.push((d, chi));
            }
        }
    }
    out
}

/// `inf`, `0+`, and one value in every chamber between consecutive walls.
pub fn chamber_targets(d: i64, chi: i64) -> Vec<AlphaBound> {
    let walls = find_walls(d, chi).unwrap();
    let mut out = vec![AlphaBound::Infinity, AlphaBound::ZeroPlus];
    let two = Rational::integer(2);
    if let Some(top) = walls.first() {
        out.push(AlphaBound::At(&top.alpha + &Rational::integer(1)));
    }
    for pair in walls.windows(2) {
        out.push(AlphaBound::At(&(&pair[0].alpha + &pair[1].alpha) / &two));
    }
    out
}

/// Product of two coefficient vectors, plain `i128` convolution.
pub fn convolve(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `(1 - q^k)/(1 - q)`.
pub fn geometric_sum(k: usize) -> Vec<i128> {
    vec![1; k]
}
