/// 1/φ
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a local minimum of `f` on `[a, b]`.
///
/// `f` may return `None` where it cannot be evaluated; such points are treated
/// as `+∞`. Returns the best point seen and its value.
pub fn golden_section_min<F>(mut f: F, mut a: f64, mut b: f64, xtol: f64, max_iter: usize) -> Option<(f64, f64)>
where
    F: FnMut(f64) -> Option<f64>,
{
    let mut eval = |x: f64| f(x).filter(|v| v.is_finite()).unwrap_or(f64::INFINITY);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d);
        }
    }
    let (x, v) = if fc <= fd { (c, fc) } else { (d, fd) };
    v.is_finite().then_some((x, v))
}
