//! Quadrature oracles for the integration tests, implemented from scratch so
//! they stay independent of the closed forms they certify.
#![allow(dead_code)] // each test target uses its own subset

use num_complex::Complex64;

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton iteration).
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

/// Gauss-Legendre on [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    gauss_legendre(n)
        .into_iter()
        .map(|(x, w)| ((b + a) / 2.0 + (b - a) / 2.0 * x, (b - a) / 2.0 * w))
        .collect()
}

/// Gauss-Hermite nodes/weights for `int exp(-x^2) f(x) dx`, via the Jacobi
/// matrix of the Hermite recurrence.
pub fn gauss_hermite(n: usize) -> Vec<(f64, f64)> {
    use nalgebra::DMatrix;
    let mut j = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = (k as f64 / 2.0).sqrt();
        j[(k - 1, k)] = b;
        j[(k, k - 1)] = b;
    }
    let eig = j.symmetric_eigen();
    let mut out: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let w = std::f64::consts::PI.sqrt() * eig.eigenvectors[(0, i)].powi(2);
            (node, w)
        })
        .collect();
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Surface nodes on `S^{2n-1}` for n = 1 or 2: (point, surface weight).
pub fn sphere_surface_nodes(n: usize) -> Vec<(Vec<Complex64>, f64)> {
    match n {
        1 => {
            let m = 256;
            let w = 2.0 * std::f64::consts::PI / m as f64;
            (0..m)
                .map(|j| {
                    let th = w * j as f64;
                    (vec![Complex64::new(th.cos(), th.sin())], w)
                })
                .collect()
        }
        2 => {
            let (nt, np) = (32, 64);
            let wphi = 2.0 * std::f64::consts::PI / np as f64;
            let mut out = Vec::new();
            for (th, wt) in gauss_legendre_on(nt, 0.0, std::f64::consts::FRAC_PI_2) {
                let (sin_t, cos_t) = th.sin_cos();
                for j1 in 0..np {
                    let p1 = wphi * j1 as f64;
                    for j2 in 0..np {
                        let p2 = wphi * j2 as f64;
                        out.push((
                            vec![
                                Complex64::new(cos_t * p1.cos(), cos_t * p1.sin()),
                                Complex64::new(sin_t * p2.cos(), sin_t * p2.sin()),
                            ],
                            wt * wphi * wphi * cos_t * sin_t,
                        ));
                    }
                }
            }
            out
        }
        _ => panic!("sphere nodes only built for n <= 2"),
    }
}

fn fact(k: u32) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

fn mu_normalization(n: usize, m: &[u32]) -> f64 {
    let s: u32 = m.iter().sum();
    let mfact: f64 = m.iter().map(|&e| fact(e)).product();
    (fact(n as u32 + s) / mfact).sqrt() * std::f64::consts::PI.powf(-(n as f64) / 2.0)
}

/// Quadrature value of `<mu_{m+e_axis}, (z_axis/|z|) mu_m>` over the unit
/// ball: radial Gauss-Legendre times the sphere rule.
pub fn bergman_element_quadrature(n: usize, axis: usize, m: &[u32]) -> f64 {
    let mut m_up = m.to_vec();
    m_up[axis] += 1;
    let c = mu_normalization(n, m) * mu_normalization(n, &m_up);
    let sphere = sphere_surface_nodes(n);
    let radial = gauss_legendre_on(48, 0.0, 1.0);
    let s: u32 = m.iter().sum();
    // integrand: conj(z^{m+e}) z^{m+e} / |z| -> r^{2|m|+1} * |w^{m+e}|^2,
    // with r^{2n-1} from the volume element
    let mut acc = 0.0;
    for (w, ws) in &sphere {
        let mut mono = 1.0;
        for i in 0..n {
            mono *= w[i].norm_sqr().powi(m_up[i] as i32);
        }
        acc += ws * mono;
    }
    let mut rad = 0.0;
    for (r, wr) in &radial {
        rad += wr * r.powi(2 * s as i32 + 2 * n as i32);
    }
    c * acc * rad
}

/// Quadrature value of the Landau element `<eta_{m+e}, (z/|z|) eta_m>` for
/// n = 1 in polar coordinates (the `1/|z|` factor makes the Cartesian
/// integrand non-smooth at the origin, so the radial rule is the right one).
pub fn landau_element_quadrature_n1(m: u32) -> f64 {
    let norm = |mm: u32| (std::f64::consts::PI * 2f64.powi(mm as i32 + 1) * fact(mm)).sqrt();
    // angular part integrates to 2 pi; radial integrand r^{2m+2} exp(-r^2/2)
    let mut acc = 0.0;
    for (r, wr) in gauss_legendre_on(80, 0.0, 14.0) {
        acc += wr * r.powi(2 * m as i32 + 2) * (-r * r / 2.0).exp();
    }
    2.0 * std::f64::consts::PI * acc / (norm(m) * norm(m + 1))
}

#[allow(dead_code)]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
