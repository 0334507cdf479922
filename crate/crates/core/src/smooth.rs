//! The standard `exp(-1/(1-r²))` bump, the C^∞ step built from its
//! normalized integral, and exact derivatives through truncated Taylor jets.

use std::sync::OnceLock;

/// Highest derivative order carried by [`Jet`].
pub const JET_ORDER: usize = 8;

/// Truncated Taylor expansion `Σ c_k (x - x0)^k`, `k <= JET_ORDER`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    c: [f64; JET_ORDER + 1],
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_ORDER + 1];
        c[0] = v;
        Jet { c }
    }

    /// The identity function expanded at `x0`.
    pub fn variable(x0: f64) -> Self {
        let mut j = Jet::constant(x0);
        j.c[1] = 1.0;
        j
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.c[k] * fact
    }

    pub fn add(&self, o: &Jet) -> Jet {
        let mut c = self.c;
        c.iter_mut().zip(&o.c).for_each(|(a, b)| *a += b);
        Jet { c }
    }

    pub fn scale(&self, s: f64) -> Jet {
        let mut c = self.c;
        c.iter_mut().for_each(|a| *a *= s);
        Jet { c }
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let mut c = [0.0; JET_ORDER + 1];
        for i in 0..=JET_ORDER {
            for j in 0..=JET_ORDER - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Jet { c }
    }

    pub fn recip(&self) -> Jet {
        let a0 = self.c[0];
        let mut r = [0.0; JET_ORDER + 1];
        r[0] = 1.0 / a0;
        for n in 1..=JET_ORDER {
            let s: f64 = (1..=n).map(|k| self.c[k] * r[n - k]).sum();
            r[n] = -s / a0;
        }
        Jet { c: r }
    }

    pub fn exp(&self) -> Jet {
        let mut e = [0.0; JET_ORDER + 1];
        e[0] = self.c[0].exp();
        for n in 1..=JET_ORDER {
            let s: f64 = (1..=n).map(|k| k as f64 * self.c[k] * e[n - k]).sum();
            e[n] = s / n as f64;
        }
        Jet { c: e }
    }
}

/// `exp(-1/(1-v²))` on `(-1, 1)`, zero elsewhere.
pub fn bump(v: f64) -> f64 {
    if v.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - v * v)).exp()
    }
}

/// Taylor jet of [`bump`] at `v`; identically zero outside `(-1, 1)`.
pub fn bump_jet(v: f64) -> Jet {
    if v.abs() >= 1.0 {
        return Jet::constant(0.0);
    }
    let x = Jet::variable(v);
    let w = Jet::constant(1.0).add(&x.mul(&x).scale(-1.0));
    w.recip().scale(-1.0).exp()
}

fn bump_integral(a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    quadrature::double_exponential::integrate(bump, a, b, 1e-16).integral
}

/// `∫_{-1}^{1} bump`.
pub fn bump_mass() -> f64 {
    static MASS: OnceLock<f64> = OnceLock::new();
    *MASS.get_or_init(|| bump_integral(-1.0, 1.0))
}

/// C^∞ step: `χ ≡ 1` on `[0, 1]`, `χ ≡ 0` on `[2, ∞)`, strictly decreasing
/// between, equal to one minus the normalized bump integral.
pub fn smooth_step(r: f64) -> f64 {
    if r <= 1.0 {
        return 1.0;
    }
    if r >= 2.0 {
        return 0.0;
    }
    let u = 2.0 * r - 3.0;
    // integrate over the shorter side for accuracy near both ends
    if u <= 0.0 {
        1.0 - bump_integral(-1.0, u) / bump_mass()
    } else {
        bump_integral(u, 1.0) / bump_mass()
    }
}

/// `j`-th derivative of [`smooth_step`], exact for `j <= JET_ORDER + 1`.
pub fn smooth_step_derivative(j: usize, r: f64) -> f64 {
    if j == 0 {
        return smooth_step(r);
    }
    assert!(j <= JET_ORDER + 1, "derivative order {j} exceeds jet order");
    if r <= 1.0 || r >= 2.0 {
        return 0.0;
    }
    let u = 2.0 * r - 3.0;
    -(2.0f64).powi(j as i32) * bump_jet(u).derivative(j - 1) / bump_mass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn jet_exp_matches_closed_form() {
        let j = Jet::variable(0.3).scale(2.0).exp();
        for k in 0..=JET_ORDER {
            assert_relative_eq!(
                j.derivative(k),
                2f64.powi(k as i32) * (0.6f64).exp(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn jet_recip_matches_closed_form() {
        // d^k/dx^k 1/x = (-1)^k k! / x^{k+1}
        let x0 = 1.7;
        let j = Jet::variable(x0).recip();
        for k in 0..=JET_ORDER {
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            let expect = (-1f64).powi(k as i32) * fact / x0.powi(k as i32 + 1);
            assert_relative_eq!(j.derivative(k), expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn step_values_and_monotonicity() {
        assert_eq!(smooth_step(0.3), 1.0);
        assert_eq!(smooth_step(1.0), 1.0);
        assert_eq!(smooth_step(2.0), 0.0);
        assert_relative_eq!(smooth_step(1.5), 0.5, epsilon = 1e-12);
        let mut prev = 1.0;
        for i in 1..200 {
            let v = smooth_step(1.0 + i as f64 / 200.0);
            // 1 - χ underflows against 1 just above r = 1
            assert!(v <= prev && v > 0.0);
            prev = v;
        }
        // symmetry about r = 3/2
        assert_relative_eq!(smooth_step(1.2) + smooth_step(1.8), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn step_derivative_matches_finite_differences() {
        let h = 1e-5;
        for &r in &[1.1, 1.37, 1.5, 1.82] {
            let fd = (smooth_step(r + h) - smooth_step(r - h)) / (2.0 * h);
            assert_relative_eq!(smooth_step_derivative(1, r), fd, max_relative = 1e-7);
            let fd2 = (smooth_step_derivative(1, r + h) - smooth_step_derivative(1, r - h)) / (2.0 * h);
            assert_relative_eq!(smooth_step_derivative(2, r), fd2, max_relative = 1e-6, epsilon = 1e-8);
        }
    }
}
