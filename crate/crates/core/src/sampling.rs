//! Deterministic sampling helpers: a small splittable generator and
//! low-discrepancy point sets on spheres. No external RNG so identical
//! configurations reproduce byte-identical reports.

use num_complex::Complex64;

/// SplitMix64; deterministic, seedable, good enough for sampling diagnostics.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn next_gaussian_pair(&mut self) -> (f64, f64) {
        let u1 = self.next_f64().max(1e-300);
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let t = 2.0 * std::f64::consts::PI * u2;
        (r * t.cos(), r * t.sin())
    }
}

/// Pseudo-random points on the unit sphere of C^n (normalized Gaussians).
pub fn unit_sphere_points(n: usize, count: usize, rng: &mut SplitMix64) -> Vec<Vec<Complex64>> {
    (0..count)
        .map(|_| loop {
            let v: Vec<Complex64> = (0..n)
                .map(|_| {
                    let (re, im) = rng.next_gaussian_pair();
                    Complex64::new(re, im)
                })
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                return v.iter().map(|z| z / norm).collect();
            }
        })
        .collect()
}

/// Kronecker (additive golden-ratio style) low-discrepancy sequence in
/// [0,1)^d, mapped through Box-Muller onto the unit sphere of C^n. The set is
/// deterministic for a given (n, count).
pub fn low_discrepancy_sphere(n: usize, count: usize) -> Vec<Vec<Complex64>> {
    let d = 2 * n;
    // generalized golden ratios: alpha_k = phi_d^-(k+1)
    let mut phi = 1.0f64;
    for _ in 0..32 {
        phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
    }
    let alphas: Vec<f64> = (1..=d).map(|k| (1.0 / phi).powi(k as i32)).collect();
    let mut out = Vec::with_capacity(count);
    let mut state = vec![0.5f64; d];
    for _ in 0..count {
        for (s, a) in state.iter_mut().zip(&alphas) {
            *s = (*s + a).fract();
        }
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let u1 = state[2 * i].max(1e-12);
            let u2 = state[2 * i + 1];
            let r = (-2.0 * u1.ln()).sqrt();
            let t = 2.0 * std::f64::consts::PI * u2;
            v.push(Complex64::new(r * t.cos(), r * t.sin()));
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-9 {
            out.push(v.iter().map(|z| z / norm).collect());
        }
    }
    out
}
