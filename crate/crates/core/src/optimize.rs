//! Deterministic derivative-free maximization: grid scans plus golden-section
//! refinement.

use rayon::prelude::*;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenResult {
    pub x: f64,
    pub value: f64,
    /// Width of the final bracket.
    pub width: f64,
    pub iterations: usize,
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`, stopping when
/// the bracket is narrower than `tol`. A unimodal `f` is assumed; for other
/// functions a local maximum is returned.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> GoldenResult {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while b - a > tol && iterations < 500 {
        iterations += 1;
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    // the endpoints may beat the interior probes when the maximum sits on
    // the boundary of the original interval
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for x in [a, b] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    GoldenResult {
        x: best.0,
        value: best.1,
        width: b - a,
        iterations,
    }
}

/// `n` evenly spaced points covering `[lo, hi]` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Evaluates `f` on every point in parallel; output order follows input.
pub fn par_eval<T, F>(points: &[T], f: F) -> Vec<f64>
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync + Send,
{
    points.par_iter().map(f).collect()
}

/// Index of the largest value; ties go to the lowest index.
pub fn argmax(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        match best {
            Some(b) if values[b] >= v => {}
            _ if v.is_nan() => {}
            _ => best = Some(i),
        }
    }
    best
}

/// Maximizes `f` on `[lo, hi]`: scans `scan_points` evenly spaced points,
/// brackets the best one by its neighbours and polishes with golden section.
pub fn scan_then_golden<F>(f: F, lo: f64, hi: f64, scan_points: usize, tol: f64) -> GoldenResult
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let xs = linspace(lo, hi, scan_points.max(3));
    let ys = par_eval(&xs, |&x| f(x));
    let i = argmax(&ys).expect("nonempty scan");
    let a = xs[i.saturating_sub(1)];
    let b = xs[(i + 1).min(xs.len() - 1)];
    let g = golden_max(&f, a, b, tol);
    if g.value >= ys[i] {
        g
    } else {
        GoldenResult {
            x: xs[i],
            value: ys[i],
            width: g.width,
            iterations: g.iterations,
        }
    }
}

/// Coordinate-wise golden-section polish of a function of two variables on
/// the box `[lo0, hi0] x [lo1, hi1]`, starting from `start`.
///
/// Each sweep searches a window around the current point along each axis in
/// turn; the window halves whenever a sweep moves less than a quarter of it.
pub fn coordinate_golden_max<F>(
    f: F,
    start: (f64, f64),
    bounds: [(f64, f64); 2],
    initial_window: f64,
    tol: f64,
) -> ((f64, f64), f64)
where
    F: Fn(f64, f64) -> f64,
{
    let (mut x, mut y) = start;
    let mut best = f(x, y);
    let mut window = initial_window;
    let mut sweeps = 0;
    while window > tol && sweeps < 10_000 {
        sweeps += 1;
        let (x0, y0) = (x, y);
        let gx = golden_max(
            |t| f(t, y),
            (x - window).max(bounds[0].0),
            (x + window).min(bounds[0].1),
            tol,
        );
        if gx.value > best {
            x = gx.x;
            best = gx.value;
        }
        let gy = golden_max(
            |t| f(x, t),
            (y - window).max(bounds[1].0),
            (y + window).min(bounds[1].1),
            tol,
        );
        if gy.value > best {
            y = gy.x;
            best = gy.value;
        }
        let moved = (x - x0).abs().max((y - y0).abs());
        if moved < window / 4.0 {
            window /= 2.0;
        }
    }
    ((x, y), best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let g = golden_max(|x| -(x - 0.3).powi(2), 0.0, 1.0, 1e-9);
        assert!((g.x - 0.3).abs() < 1e-8);
        assert!(g.width <= 1e-9);
    }

    #[test]
    fn golden_handles_boundary_maximum() {
        let g = golden_max(|x| x, 0.0, 1.0, 1e-9);
        assert!((g.x - 1.0).abs() < 1e-9);
    }

    #[test]
    fn golden_handles_kink() {
        let g = golden_max(|x: f64| -(x - 0.42).abs(), 0.0, 1.0, 1e-10);
        assert!((g.x - 0.42).abs() < 1e-9);
    }

    #[test]
    fn scan_escapes_local_maximum() {
        // local peak near 0.2, global near 0.8
        let f =
            |x: f64| (-(x - 0.2).powi(2) / 0.001).exp() + 2.0 * (-(x - 0.8).powi(2) / 0.001).exp();
        let g = scan_then_golden(f, 0.0, 1.0, 1000, 1e-9);
        assert!((g.x - 0.8).abs() < 1e-6);
    }

    #[test]
    fn coordinate_polish_reaches_corner_and_interior() {
        let ((x, y), v) = coordinate_golden_max(
            |x, y| -(x - 0.3).powi(2) - 2.0 * (y - 0.6).powi(2) + 0.5 * (x - 0.3) * (y - 0.6),
            (0.5, 0.5),
            [(0.0, 1.0), (0.0, 1.0)],
            0.1,
            1e-10,
        );
        assert!((x - 0.3).abs() < 1e-6 && (y - 0.6).abs() < 1e-6, "{x} {y}");
        assert!(v.abs() < 1e-10);

        let ((x, y), _) = coordinate_golden_max(
            |x, y| x + y,
            (0.9, 0.9),
            [(0.0, 1.0), (0.0, 1.0)],
            0.05,
            1e-10,
        );
        assert!((x - 1.0).abs() < 1e-9 && (y - 1.0).abs() < 1e-9);
    }

    #[test]
    fn argmax_ties_go_low() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0, 2.0]), Some(1));
        assert_eq!(argmax(&[]), None);
        assert_eq!(argmax(&[f64::NAN, 0.0]), Some(1));
    }
}
