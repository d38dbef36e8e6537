//! Test-only oracles that share no code path with the library.
#![allow(dead_code)]

use num_complex::Complex64;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Composite Gauss–Legendre quadrature of `f` over `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let rule = gauss_legendre(order);
    let width = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * width;
            let mid = lo + 0.5 * width;
            rule.iter().map(|&(x, w)| w * f(mid + 0.5 * width * x)).sum::<f64>() * 0.5 * width
        })
        .sum()
}

/// Lagrangian from a constant of motion by `L = v ∫ K/v² dv`, written as
/// `L(x, v) = −K(x, 0) + v ∫₀^v (K(x, s) − K(x, 0))/s² ds`, which fixes the
/// integration constant by the value at rest.
pub fn lagrangian_from_constant(k: impl Fn(f64) -> f64, v: f64) -> f64 {
    let k0 = k(0.0);
    if v == 0.0 {
        return -k0;
    }
    -k0 + v * integrate(|s| (k(s) - k0) / (s * s), 0.0, v, 16, 20)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ladder {
    Lower,
    Raise,
}

/// Sum of words in `a`, `a†` with complex coefficients.
#[derive(Clone, Debug)]
pub struct LadderPoly(pub Vec<(Complex64, Vec<Ladder>)>);

impl LadderPoly {
    /// `x = sx (a† + a)`.
    pub fn position(sx: f64) -> Self {
        let c = Complex64::new(sx, 0.0);
        LadderPoly(vec![(c, vec![Ladder::Raise]), (c, vec![Ladder::Lower])])
    }

    /// `p = i sp (a† − a)`.
    pub fn momentum(sp: f64) -> Self {
        let c = Complex64::new(0.0, sp);
        LadderPoly(vec![(c, vec![Ladder::Raise]), (-c, vec![Ladder::Lower])])
    }

    pub fn times(&self, other: &LadderPoly) -> LadderPoly {
        let mut out = Vec::new();
        for (c1, w1) in &self.0 {
            for (c2, w2) in &other.0 {
                let mut w = w1.clone();
                w.extend(w2);
                out.push((c1 * c2, w));
            }
        }
        LadderPoly(out)
    }

    pub fn plus(&self, other: &LadderPoly) -> LadderPoly {
        LadderPoly(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn scale(&self, s: f64) -> LadderPoly {
        LadderPoly(self.0.iter().map(|(c, w)| (c * s, w.clone())).collect())
    }

    pub fn product(factors: &[&LadderPoly]) -> LadderPoly {
        factors[1..].iter().fold(factors[0].clone(), |acc, f| acc.times(f))
    }

    /// `⟨m| word |n⟩` in the infinite number basis, applying the rightmost
    /// operator first.
    pub fn element(&self, m: usize, n: usize) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        'words: for (c, word) in &self.0 {
            let mut level = n as f64;
            let mut amp = 1.0;
            for op in word.iter().rev() {
                match op {
                    Ladder::Lower => {
                        if level == 0.0 {
                            continue 'words;
                        }
                        amp *= level.sqrt();
                        level -= 1.0;
                    }
                    Ladder::Raise => {
                        amp *= (level + 1.0).sqrt();
                        level += 1.0;
                    }
                }
            }
            if level == m as f64 {
                total += c * amp;
            }
        }
        total
    }
}

/// Least-squares slope of `log10 y` against `log10 x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.log10()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.log10()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Least-squares quadratic fit; returns the coefficients and the largest
/// absolute residual.
pub fn quadratic_fit(xs: &[f64], ys: &[f64]) -> ([f64; 3], f64) {
    // normal equations, 3x3, solved by Cramer's rule
    let mut s = [0.0; 5];
    let mut t = [0.0; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        for (k, sk) in s.iter_mut().enumerate() {
            *sk += x.powi(k as i32);
        }
        for (k, tk) in t.iter_mut().enumerate() {
            *tk += y * x.powi(k as i32);
        }
    }
    let m = [[s[0], s[1], s[2]], [s[1], s[2], s[3]], [s[2], s[3], s[4]]];
    let det = |a: [[f64; 3]; 3]| {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det(m);
    let mut coef = [0.0; 3];
    for (col, c) in coef.iter_mut().enumerate() {
        let mut a = m;
        for row in 0..3 {
            a[row][col] = t[row];
        }
        *c = det(a) / d;
    }
    let resid = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (y - (coef[0] + coef[1] * x + coef[2] * x * x)).abs())
        .fold(0.0, f64::max);
    (coef, resid)
}
