//! Grid scan followed by golden-section refinement.

use super::GridSpec;
use crate::error::{Error, Result};

/// Upper bound on grid points before a scan is refused outright.
const HARD_POINT_LIMIT: usize = 10_000_000;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on `[grid.lo, grid.hi]`.
///
/// The scan locates the best grid point; the bracket formed by its neighbours
/// is then shrunk by golden section for `grid.iterations` steps. Returns the
/// best point evaluated anywhere and its value.
pub fn maximize(f: impl Fn(f64) -> f64, grid: &GridSpec) -> Result<(f64, f64)> {
    let n = grid.points()?;
    if n > HARD_POINT_LIMIT {
        return Err(Error::GridTooCoarse(format!(
            "{n} grid points exceed the scan limit"
        )));
    }
    let x = |i: usize| {
        if i + 1 == n {
            grid.hi
        } else {
            grid.lo + grid.step * i as f64
        }
    };

    let mut best = (grid.lo, f64::NEG_INFINITY);
    let mut best_i = 0;
    for i in 0..n {
        let xi = x(i);
        let fi = f(xi);
        if fi > best.1 {
            best = (xi, fi);
            best_i = i;
        }
    }
    if !best.1.is_finite() {
        return Err(Error::GridTooCoarse(
            "objective is not finite anywhere on the grid".into(),
        ));
    }

    let (mut a, mut b) = (x(best_i.saturating_sub(1)), x((best_i + 1).min(n - 1)));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..grid.iterations {
        if fc.is_nan() || fd.is_nan() {
            return Err(Error::GridTooCoarse(format!(
                "objective undefined inside [{a}, {b}]"
            )));
        }
        if fc > best.1 {
            best = (c, fc);
        }
        if fd > best.1 {
            best = (d, fd);
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    for (xi, fi) in [(c, fc), (d, fd)] {
        if fi > best.1 {
            best = (xi, fi);
        }
    }
    Ok(polish(&f, best, grid))
}

/// One parabolic-interpolation step through points a grid step apart.
///
/// Near a flat maximum the golden-section comparisons are decided by rounding
/// noise, leaving the argmax uncertain to roughly `sqrt(eps f / f'')`. Fitting
/// a parabola through widely spaced points recovers it to far better accuracy.
fn polish(f: &impl Fn(f64) -> f64, best: (f64, f64), grid: &GridSpec) -> (f64, f64) {
    let (x0, f0) = best;
    let h = grid.step;
    if x0 - h < grid.lo || x0 + h > grid.hi {
        return best;
    }
    let (fm, fp) = (f(x0 - h), f(x0 + h));
    let curvature = fp - 2.0 * f0 + fm;
    if curvature.is_nan() || curvature >= 0.0 {
        return best;
    }
    let shift = 0.5 * h * (fm - fp) / curvature;
    if shift.abs() > h {
        return best;
    }
    let x = x0 + shift;
    let fx = f(x);
    // Only accept points that are not measurably worse.
    if fx >= f0 - 4.0 * f64::EPSILON * f0.abs().max(1.0) {
        (x, fx.max(f0))
    } else {
        best
    }
}

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping once the
/// bracket is narrower than `width` or after `iterations` halvings.
pub fn bisect(
    f: impl Fn(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    width: f64,
    iterations: u32,
) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::GridTooCoarse(format!(
            "no sign change on [{lo}, {hi}]"
        )));
    }
    let mut sa = fa.signum();
    for _ in 0..iterations {
        if b - a <= width {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == sa {
            a = m;
            sa = fm.signum();
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_and_corner_maxima() {
        let g = GridSpec::covering(0.0, 2.0);
        let (x, fx) = maximize(|x| -(x - 0.65f64).powi(2), &g).unwrap();
        assert!((x - 0.65).abs() < 1e-7);
        assert!(fx.abs() < 1e-14);
        let (x, _) = maximize(|x| -x, &g).unwrap();
        assert_eq!(x, 0.0);
        let (x, _) = maximize(|x| x, &g).unwrap();
        assert_eq!(x, 2.0);
    }

    #[test]
    fn rejects_degenerate_grids() {
        let coarse = GridSpec {
            step: 2.5,
            ..GridSpec::covering(0.0, 2.0)
        };
        assert!(matches!(
            maximize(|x| x, &coarse),
            Err(Error::GridTooCoarse(_))
        ));
        let empty = GridSpec::covering(1.0, 1.0);
        assert!(maximize(|x| x, &empty).is_err());
        let bad = GridSpec {
            step: 0.0,
            ..GridSpec::covering(0.0, 2.0)
        };
        assert!(maximize(|x| x, &bad).is_err());
        assert!(maximize(|_| f64::NAN, &GridSpec::covering(0.0, 1.0)).is_err());
    }

    #[test]
    fn bisection_locates_root() {
        let r = bisect(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-13, 200).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        assert!(bisect(|x| Ok(x + 1.0), 0.0, 1.0, 1e-9, 100).is_err());
    }
}
