use std::f64::consts::PI;

/// Fully normalized associated Legendre functions at one polar angle.
///
/// `p(l, m)` is the θ-dependent factor of `Y_l^m`, so that
/// `Y_l^m(θ, φ) = p(l, m) e^{imφ}` for `m ≥ 0` (Condon–Shortley phase
/// included). Alongside it the table keeps `p(l, m) / sin θ` for `m ≥ 1`,
/// computed by the same recurrence so it stays finite at the poles, and the
/// θ-derivative.
#[derive(Clone, Debug)]
pub struct LegendreTable {
    lmax: u32,
    p: Vec<f64>,
    q: Vec<f64>,
    dp: Vec<f64>,
}

fn slot(l: u32, m: u32) -> usize {
    (l as usize * (l as usize + 1)) / 2 + m as usize
}

impl LegendreTable {
    pub fn new(lmax: u32, theta: f64) -> Self {
        let (s, x) = theta.sin_cos();
        let n = slot(lmax, lmax) + 1;
        let mut p = vec![0.0; n];
        let mut q = vec![0.0; n];

        // sectoral seeds
        p[slot(0, 0)] = 1.0 / (4.0 * PI).sqrt();
        for m in 1..=lmax {
            let f = -((2 * m + 1) as f64 / (2 * m) as f64).sqrt();
            let prev = p[slot(m - 1, m - 1)];
            q[slot(m, m)] = f * prev;
            p[slot(m, m)] = f * s * prev;
        }

        for m in 0..=lmax {
            if m < lmax {
                let c = ((2 * m + 3) as f64).sqrt();
                p[slot(m + 1, m)] = c * x * p[slot(m, m)];
                q[slot(m + 1, m)] = c * x * q[slot(m, m)];
            }
            for l in (m + 2)..=lmax {
                let (lf, mf) = (l as f64, m as f64);
                let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
                let lm1 = lf - 1.0;
                let b = ((lm1 * lm1 - mf * mf) / (4.0 * lm1 * lm1 - 1.0)).sqrt();
                p[slot(l, m)] = a * (x * p[slot(l - 1, m)] - b * p[slot(l - 2, m)]);
                q[slot(l, m)] = a * (x * q[slot(l - 1, m)] - b * q[slot(l - 2, m)]);
            }
        }

        let mut dp = vec![0.0; n];
        for l in 0..=lmax {
            let lf = l as f64;
            for m in 0..=l {
                let mf = m as f64;
                let up = if m < l { p[slot(l, m + 1)] } else { 0.0 };
                dp[slot(l, m)] = if m == 0 {
                    (lf * (lf + 1.0)).sqrt() * up
                } else {
                    0.5 * (((lf - mf) * (lf + mf + 1.0)).sqrt() * up
                        - ((lf + mf) * (lf - mf + 1.0)).sqrt() * p[slot(l, m - 1)])
                };
            }
        }

        LegendreTable { lmax, p, q, dp }
    }

    pub fn lmax(&self) -> u32 {
        self.lmax
    }

    pub fn p(&self, l: u32, m: u32) -> f64 {
        self.p[slot(l, m)]
    }

    /// `p(l, m) / sin θ`; zero for `m = 0` where the ratio is not needed.
    pub fn p_over_sin(&self, l: u32, m: u32) -> f64 {
        self.q[slot(l, m)]
    }

    pub fn dp_dtheta(&self, l: u32, m: u32) -> f64 {
        self.dp[slot(l, m)]
    }
}
