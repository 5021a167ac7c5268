use std::sync::OnceLock;

const TABLE_LEN: usize = 1024;

fn table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0.0; TABLE_LEN];
        for k in 2..TABLE_LEN {
            t[k] = t[k - 1] + (k as f64).ln();
        }
        t
    })
}

/// `ln(n!)` as a running sum of logarithms.
pub fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < TABLE_LEN {
        table()[n as usize]
    } else {
        table()[TABLE_LEN - 1]
            + ((TABLE_LEN as u64)..=n)
                .map(|k| (k as f64).ln())
                .sum::<f64>()
    }
}

fn lf(n: i64) -> f64 {
    debug_assert!(n >= 0);
    ln_factorial(n as u64)
}

/// Wigner 3j symbol `(l1 l2 l3; m1 m2 m3)` from the Racah sum.
///
/// Returns zero whenever a selection rule fails.
pub fn wigner_3j(l1: u32, l2: u32, l3: u32, m1: i32, m2: i32, m3: i32) -> f64 {
    let (j1, j2, j3) = (l1 as i64, l2 as i64, l3 as i64);
    let (m1, m2, m3) = (m1 as i64, m2 as i64, m3 as i64);
    if m1 + m2 + m3 != 0 || m1.abs() > j1 || m2.abs() > j2 || m3.abs() > j3 {
        return 0.0;
    }
    if j3 > j1 + j2 || j3 < (j1 - j2).abs() {
        return 0.0;
    }
    if m1 == 0 && m2 == 0 && (j1 + j2 + j3) % 2 == 1 {
        return 0.0;
    }

    let ln_pre = 0.5
        * (lf(j1 + j2 - j3) + lf(j1 - j2 + j3) + lf(-j1 + j2 + j3) - lf(j1 + j2 + j3 + 1)
            + lf(j1 + m1)
            + lf(j1 - m1)
            + lf(j2 + m2)
            + lf(j2 - m2)
            + lf(j3 + m3)
            + lf(j3 - m3));

    let kmin = 0.max(j2 - j3 - m1).max(j1 - j3 + m2);
    let kmax = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
    let mut sum = 0.0;
    for k in kmin..=kmax {
        let ln_den = lf(k)
            + lf(j3 - j2 + k + m1)
            + lf(j3 - j1 + k - m2)
            + lf(j1 + j2 - j3 - k)
            + lf(j1 - k - m1)
            + lf(j2 - k + m2);
        let term = (ln_pre - ln_den).exp();
        sum += if k % 2 == 0 { term } else { -term };
    }
    if (j1 - j2 - m3).rem_euclid(2) == 1 {
        -sum
    } else {
        sum
    }
}
