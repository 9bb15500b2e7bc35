//! Real root isolation on a uniform grid and argument-principle winding numbers.

use std::f64::consts::PI;

use num_complex::Complex64;

/// A cell whose endpoints share a sign but whose interior extremum comes this
/// close to zero (relative to the endpoint magnitudes) yields a double-root
/// candidate, confirmed later by a winding number.
const TOUCH_TOL: f64 = 1e-9;
const MAX_BISECT: usize = 200;
const MAX_SUBDIV: u32 = 40;

pub(crate) fn bisect<F: Fn(f64) -> f64>(g: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = g(lo);
    for _ in 0..MAX_BISECT {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) <= 1e-15 * mid.abs() {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of `f` (given as value and derivative) in `(a, b]`, scanning cells of
/// width `step`. Returns sorted, distinct candidates.
pub(crate) fn scan<F>(f: &F, a: f64, b: f64, step: f64) -> Vec<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let cells = ((b - a) / step).ceil().max(1.0) as usize;
    let width = (b - a) / cells as f64;
    let mut roots = Vec::new();
    let mut left = a;
    let mut fl = f(a);
    for i in 0..cells {
        let right = if i + 1 == cells { b } else { a + (i + 1) as f64 * width };
        let fr = f(right);
        scan_cell(f, left, right, fl, fr, &mut roots);
        left = right;
        fl = fr;
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * x.abs().max(1.0));
    roots
}

fn scan_cell<F>(f: &F, a: f64, b: f64, fa: (f64, f64), fb: (f64, f64), out: &mut Vec<f64>)
where
    F: Fn(f64) -> (f64, f64),
{
    let value = |x: f64| f(x).0;
    if fb.0 == 0.0 {
        out.push(b);
        return;
    }
    if fa.0 == 0.0 {
        // a root on the left edge was recorded by the previous cell
        let a2 = a + (b - a) * 1e-9;
        if a2 < b {
            scan_cell(f, a2, b, f(a2), fb, out);
        }
        return;
    }
    if (fa.0 < 0.0) != (fb.0 < 0.0) {
        out.push(bisect(value, a, b));
        return;
    }
    if (fa.1 < 0.0) == (fb.1 < 0.0) || fa.1 == 0.0 || fb.1 == 0.0 {
        return;
    }
    let xe = bisect(|x| f(x).1, a, b);
    let fe = value(xe);
    if fe == 0.0 {
        out.push(xe);
    } else if (fe < 0.0) != (fa.0 < 0.0) {
        out.push(bisect(value, a, xe));
        out.push(bisect(value, xe, b));
    } else if fe.abs() <= TOUCH_TOL * fa.0.abs().max(fb.0.abs()) {
        out.push(xe);
    }
}

/// Nonzero and finite; the phase of anything else is meaningless.
fn usable(w: Complex64) -> bool {
    w.norm() > 0.0 && w.re.is_finite() && w.im.is_finite()
}

/// Winding accumulated along one straight segment, subdividing until each
/// step turns the phase by less than `PI / 4`.
fn segment_phase<F>(h: &F, z0: Complex64, z1: Complex64, w0: Complex64, w1: Complex64, depth: u32) -> Option<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    let d = (w1 / w0).arg();
    if d.abs() < PI / 4.0 {
        return Some(d);
    }
    if depth >= MAX_SUBDIV {
        return None;
    }
    let zm = 0.5 * (z0 + z1);
    let wm = h(zm);
    if !usable(wm) {
        return None;
    }
    Some(segment_phase(h, z0, zm, w0, wm, depth + 1)? + segment_phase(h, zm, z1, wm, w1, depth + 1)?)
}

fn path_phase<F>(h: &F, points: &[Complex64]) -> Option<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    let values: Vec<Complex64> = points.iter().map(|&z| h(z)).collect();
    if !values.iter().all(|&w| usable(w)) {
        return None;
    }
    let mut total = 0.0;
    for i in 0..points.len() - 1 {
        total += segment_phase(h, points[i], points[i + 1], values[i], values[i + 1], 0)?;
    }
    Some(total)
}

fn to_count(phase: f64) -> Option<i64> {
    let turns = phase / (2.0 * PI);
    let n = turns.round();
    ((turns - n).abs() < 0.1).then_some(n as i64)
}

/// Winding number of `h` around the closed counterclockwise polygon through
/// `vertices`. Edges are sampled at spacing at most `spacing`. `None` when
/// `h` vanishes or overflows on the contour.
pub(crate) fn polygon_winding<F>(h: &F, vertices: &[Complex64], spacing: f64) -> Option<i64>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut points = Vec::new();
    for i in 0..vertices.len() {
        let z0 = vertices[i];
        let z1 = vertices[(i + 1) % vertices.len()];
        let n = ((z1 - z0).norm() / spacing).ceil().max(4.0) as usize;
        for j in 0..n {
            points.push(z0 + (z1 - z0) * (j as f64 / n as f64));
        }
    }
    points.push(vertices[0]);
    to_count(path_phase(h, &points)?)
}

/// Winding number of `h` around the circle `|z - center| = radius`, 64 base samples.
pub(crate) fn circle_winding<F>(h: &F, center: Complex64, radius: f64) -> Option<i64>
where
    F: Fn(Complex64) -> Complex64,
{
    const N: usize = 64;
    let points: Vec<Complex64> = (0..=N)
        .map(|j| center + Complex64::from_polar(radius, 2.0 * PI * (j % N) as f64 / N as f64))
        .collect();
    to_count(path_phase(h, &points)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_roots() {
        let f = |x: f64| (x.sin(), x.cos());
        let r = scan(&f, 0.5, 10.0, 0.3);
        assert_eq!(r.len(), 3);
        for (i, x) in r.iter().enumerate() {
            assert!((x - PI * (i + 1) as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn splits_close_pairs() {
        // roots at 1 and 1 + 1e-4 inside a single cell
        let f = |x: f64| ((x - 1.0) * (x - 1.0001), 2.0 * x - 2.0001);
        let r = scan(&f, 0.0, 3.0, 0.5);
        assert_eq!(r.len(), 2);
        assert!((r[0] - 1.0).abs() < 1e-13 && (r[1] - 1.0001).abs() < 1e-13);
    }

    #[test]
    fn detects_touching_root() {
        let f = |x: f64| ((x - 1.3).powi(2), 2.0 * (x - 1.3));
        let r = scan(&f, 0.0, 3.0, 0.4);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.3).abs() < 1e-12);
    }

    #[test]
    fn winding_counts() {
        let h = |z: Complex64| (z - 1.0) * (z - 1.0) * (z + Complex64::new(0.0, 3.0));
        let square = [
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, -1.0),
            Complex64::new(2.0, 1.0),
            Complex64::new(0.0, 1.0),
        ];
        assert_eq!(polygon_winding(&h, &square, 0.1), Some(2));
        assert_eq!(circle_winding(&h, Complex64::new(0.0, -3.0), 0.5), Some(1));
        assert_eq!(circle_winding(&h, Complex64::new(5.0, 0.0), 0.5), Some(0));
        let sine = |z: Complex64| z.sin();
        assert_eq!(circle_winding(&sine, Complex64::new(0.0, 0.0), 10.0), Some(7));
    }
}
