//! One-dimensional search primitives: grid scans with deterministic
//! tie-breaking, golden-section refinement and bisection.

use crate::scalar::{lit, Real};

/// Index of the largest value; the lowest index wins ties and NaN never
/// wins.
pub fn argmax<T: Real>(values: &[T]) -> Option<usize> {
    let mut best: Option<(usize, T)> = None;
    for (i, &v) in values.iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

/// Index of the smallest value, lowest index on ties.
pub fn argmin<T: Real>(values: &[T]) -> Option<usize> {
    let mut best: Option<(usize, T)> = None;
    for (i, &v) in values.iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        match best {
            Some((_, b)) if v >= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

/// Golden-section maximization of a unimodal `f` on `[lo, hi]`. Returns the
/// best abscissa seen and its value.
pub fn golden_max<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, tol: T, max_iter: usize) -> (T, T) {
    let inv_phi = lit::<T>(0.618_033_988_749_894_9);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if (hi - lo).abs() <= tol {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

pub fn golden_min<T: Real>(f: impl Fn(T) -> T, lo: T, hi: T, tol: T, max_iter: usize) -> (T, T) {
    let (x, v) = golden_max(|x| -f(x), lo, hi, tol, max_iter);
    (x, -v)
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, tol: T, max_iter: usize) -> Option<(T, usize)> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == T::zero() {
        return Some((lo, 0));
    }
    if f_hi == T::zero() {
        return Some((hi, 0));
    }
    if (f_lo > T::zero()) == (f_hi > T::zero()) {
        return None;
    }
    let half = lit::<T>(0.5);
    let mut iterations = 0;
    while iterations < max_iter && (hi - lo).abs() > tol {
        iterations += 1;
        let mid = (lo + hi) * half;
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return Some((mid, iterations));
        }
        if (f_mid > T::zero()) == (f_lo > T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(((lo + hi) * half, iterations))
}

/// Maximizes a periodic `f` over `[0, 2 pi)`: a uniform scan of `samples`
/// angles followed by golden-section refinement around the best sample and,
/// when `slope` is given, bisection on its sign change to pin the stationary
/// point.
pub fn circle_argmax<T: Real>(
    f: impl Fn(T) -> T,
    slope: Option<&dyn Fn(T) -> T>,
    samples: usize,
) -> (T, T) {
    let tau = T::PI() + T::PI();
    let step = tau / lit::<T>(samples as f64);
    let values: Vec<T> = (0..samples).map(|k| f(step * lit::<T>(k as f64))).collect();
    let k = argmax(&values).unwrap_or(0);
    let centre = step * lit::<T>(k as f64);
    let (mut theta, mut best) = golden_max(&f, centre - step, centre + step, lit::<T>(1e-13), 200);
    if best < values[k] {
        theta = centre;
        best = values[k];
    }
    if let Some(slope) = slope {
        let width = step * lit::<T>(0.25);
        if let Some((t, _)) = bisect(slope, theta - width, theta + width, lit::<T>(1e-15), 200) {
            let v = f(t);
            if v >= best - best.abs() * lit::<T>(1e-14) {
                theta = t;
                best = v;
            }
        }
    }
    (theta, best)
}
