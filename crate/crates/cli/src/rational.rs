//! Exact-fraction rendering for the closed-form columns.
//!
//! When γ is (numerically) a fraction p/q with a small denominator, the
//! closed-form quantities along the σ_γ family are fractions too, e.g.
//! F₁₃ = (6p+q)/(7q). The CSV/JSON output carries them in reduced form next
//! to the floating-point values.

/// γ as a reduced fraction (p, q), if a denominator up to 9999 matches it
/// to within 1e-12.
pub fn as_fraction(x: f64) -> Option<(i64, i64)> {
    if !(0.0..=1.0).contains(&x) {
        return None;
    }
    for q in 1..10_000i64 {
        let p = (x * q as f64).round() as i64;
        if (x - p as f64 / q as f64).abs() <= 1e-12 {
            let g = gcd(p.abs().max(1), q);
            return Some((p / g, q / g));
        }
    }
    None
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn reduced(p: i64, q: i64) -> String {
    if p == 0 {
        return "0".into();
    }
    let g = gcd(p.abs(), q.abs());
    let (p, q) = (p / g, q / g);
    if q == 1 {
        format!("{p}")
    } else {
        format!("{p}/{q}")
    }
}

/// Closed-form fraction strings for one σ_γ row, empty where no closed form
/// applies. Order: F_1_23, F_13, f_1_23, f_13, C_13.
pub fn sigma_row_fractions(gamma: f64) -> [String; 5] {
    let Some((p, q)) = as_fraction(gamma) else {
        return Default::default();
    };
    // Closed forms hold in the γ > α regime, i.e. γ > 1/8; below it the
    // (1,3) reduction's top Bell weight switches from α+γ to 2α.
    let above = 8 * p > q;
    let f_1_23 = if above { reduced(p, q) } else { String::new() };
    let f_13 = if 8 * p >= q { reduced(6 * p + q, 7 * q) } else { reduced(2 * (q - p), 7 * q) };
    let fid_1_23 = if above { reduced(2 * p + q, 3 * q) } else { String::new() };
    let fid_13 = if 8 * p >= q { reduced(4 * p + 3 * q, 7 * q) } else { reduced(11 * q - 4 * p, 21 * q) };
    let c_13 = reduced((12 * p - 5 * q).max(0), 7 * q);
    [f_1_23, f_13, fid_1_23, fid_13, c_13]
}
