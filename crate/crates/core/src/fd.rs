//! Finite-difference operators in real coordinates `z_k = x_k + i y_k`.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Real coordinate `a` of a complex point: `2k` is `Re z_k`, `2k + 1` is `Im z_k`.
fn shift(z: &mut [Complex64], a: usize, h: f64) {
    if a.is_multiple_of(2) {
        z[a / 2].re += h;
    } else {
        z[a / 2].im += h;
    }
}

fn shifted(z: &[Complex64], moves: &[(usize, f64)]) -> Vec<Complex64> {
    let mut w = z.to_vec();
    for &(a, h) in moves {
        shift(&mut w, a, h);
    }
    w
}

/// Real Hessian of `f` in the `2m` real coordinates by second-order central
/// differences; `steps[k]` is the step used for both real coordinates of `z_k`.
pub fn real_hessian<F>(mut f: F, z: &[Complex64], steps: &[f64]) -> DMatrix<f64>
where
    F: FnMut(&[Complex64]) -> f64,
{
    let m = z.len();
    assert_eq!(steps.len(), m);
    let n = 2 * m;
    let h = |a: usize| steps[a / 2];
    let f0 = f(z);
    let mut hess = DMatrix::zeros(n, n);
    for a in 0..n {
        let ha = h(a);
        let fp = f(&shifted(z, &[(a, ha)]));
        let fm = f(&shifted(z, &[(a, -ha)]));
        hess[(a, a)] = (fp - 2.0 * f0 + fm) / (ha * ha);
        for b in a + 1..n {
            let hb = h(b);
            let fpp = f(&shifted(z, &[(a, ha), (b, hb)]));
            let fpm = f(&shifted(z, &[(a, ha), (b, -hb)]));
            let fmp = f(&shifted(z, &[(a, -ha), (b, hb)]));
            let fmm = f(&shifted(z, &[(a, -ha), (b, -hb)]));
            let v = (fpp - fpm - fmp + fmm) / (4.0 * ha * hb);
            hess[(a, b)] = v;
            hess[(b, a)] = v;
        }
    }
    hess
}

/// Complex Hessian `∂_i ∂_j̄ f` of a real function,
/// `¼[(H_{x_i x_j} + H_{y_i y_j}) + i(H_{x_i y_j} − H_{y_i x_j})]`.
pub fn complex_hessian<F>(f: F, z: &[Complex64], steps: &[f64]) -> DMatrix<Complex64>
where
    F: FnMut(&[Complex64]) -> f64,
{
    let h = real_hessian(f, z, steps);
    let m = z.len();
    DMatrix::from_fn(m, m, |i, j| {
        let (xi, yi, xj, yj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
        Complex64::new(h[(xi, xj)] + h[(yi, yj)], h[(xi, yj)] - h[(yi, xj)]) * 0.25
    })
}

/// Wirtinger derivative `∂/∂z_k = ½(∂_x − i ∂_y)` of a matrix-valued
/// function, with the fourth-order five-point stencil in each real direction.
pub fn wirtinger<F>(f: F, z: &[Complex64], k: usize, h: f64) -> DMatrix<Complex64>
where
    F: Fn(&[Complex64]) -> DMatrix<Complex64>,
{
    let partial = |a: usize| {
        let at = |t: f64| f(&shifted(z, &[(a, t * h)]));
        (at(-2.0) - at(2.0) + (at(1.0) - at(-1.0)) * Complex64::from(8.0))
            / Complex64::from(12.0 * h)
    };
    let dx = partial(2 * k);
    let dy = partial(2 * k + 1);
    (dx - dy * Complex64::i()) * Complex64::from(0.5)
}
