//! Sparse integer polynomials in the four Jacobi variables w, z, x, y.
//!
//! Used to expand closed forms and to print enumerators in monomial style.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponents of (w, z, x, y).
pub type Exponents = [u32; 4];

pub const W: usize = 0;
pub const Z: usize = 1;
pub const X: usize = 2;
pub const Y: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly4 {
    terms: BTreeMap<Exponents, i128>,
}

impl Poly4 {
    pub fn zero() -> Self {
        Poly4::default()
    }

    pub fn constant(c: i128) -> Self {
        Poly4::monomial(c, [0; 4])
    }

    pub fn monomial(c: i128, e: Exponents) -> Self {
        let mut p = Poly4::zero();
        p.add_term(e, c);
        p
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; 4];
        e[v] = 1;
        Poly4::monomial(1, e)
    }

    pub fn add_term(&mut self, e: Exponents, c: i128) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: Exponents) -> i128 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponents, i128)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn pow(&self, k: u32) -> Poly4 {
        (0..k).fold(Poly4::constant(1), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: i128) -> Poly4 {
        let mut out = Poly4::zero();
        for (e, v) in self.terms() {
            out.add_term(e, v * c);
        }
        out
    }

    /// Monomial-style rendering with terms ordered by z-degree, then y-degree,
    /// variables written in the order w, x, y, z.
    pub fn to_monomial_string(&self) -> String {
        let mut terms: Vec<(Exponents, i128)> = self.terms().collect();
        terms.sort_by_key(|(e, _)| (e[Z], e[Y], e[W], e[X]));
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if *c < 0 { " - " } else { " + " });
            }
            let mono = monomial_text(e);
            if mag != 1 || mono.is_empty() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

fn monomial_text(e: &Exponents) -> String {
    let mut s = String::new();
    for (v, name) in [(W, 'w'), (X, 'x'), (Y, 'y'), (Z, 'z')] {
        match e[v] {
            0 => {}
            1 => s.push(name),
            k => s.push_str(&format!("{name}^{k}")),
        }
    }
    s
}

impl fmt::Display for Poly4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_monomial_string())
    }
}

impl Add for &Poly4 {
    type Output = Poly4;

    fn add(self, rhs: &Poly4) -> Poly4 {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &Poly4 {
    type Output = Poly4;

    fn sub(self, rhs: &Poly4) -> Poly4 {
        self + &(-rhs)
    }
}

impl Neg for &Poly4 {
    type Output = Poly4;

    fn neg(self) -> Poly4 {
        self.scale(-1)
    }
}

impl Mul for &Poly4 {
    type Output = Poly4;

    fn mul(self, rhs: &Poly4) -> Poly4 {
        let mut out = Poly4::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(
                    [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]],
                    ca * cb,
                );
            }
        }
        out
    }
}

/// x^9 y^9 (x^2 - y^2)^9 (w y - x z)^3: the difference of the two length-42
/// Jacobi polynomials.
pub fn jacobi_difference_closed_form_42() -> Poly4 {
    let (w, z, x, y) = (Poly4::var(W), Poly4::var(Z), Poly4::var(X), Poly4::var(Y));
    let x2_y2 = &(&x * &x) - &(&y * &y);
    let wy_xz = &(&w * &y) - &(&x * &z);
    let prefix = Poly4::monomial(1, [0, 0, 9, 9]);
    &(&prefix * &x2_y2.pow(9)) * &wy_xz.pow(3)
}

/// -5740 x^12 y^12 (x^2 - y^2)^9: the length-42 harmonic weight enumerator up
/// to a scalar.
pub fn harmonic_closed_form_42() -> Poly4 {
    let (x, y) = (Poly4::var(X), Poly4::var(Y));
    let x2_y2 = &(&x * &x) - &(&y * &y);
    &Poly4::monomial(-5740, [0, 0, 12, 12]) * &x2_y2.pow(9)
}
