//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use moduli_core::algebra::{Poly, Rational};
use moduli_core::divisor::{canonical_class, Symbol, TrilinearForm};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fixed-point reals `x * 2^-BITS`.
pub const BITS: u32 = 200;
const GUARD: u32 = 24;
const WORK: u32 = BITS + GUARD;

fn one() -> BigInt {
    BigInt::one() << WORK
}

fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> WORK
}

fn div(a: &BigInt, b: &BigInt) -> BigInt {
    (a << WORK) / b
}

/// `atan(1/x)` by its alternating series.
fn atan_inv(x: i64) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power = one() / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0i64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi() -> BigInt {
    static PI: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
    PI.get_or_init(|| atan_inv(5) * 16 - atan_inv(239) * 4).clone()
}

/// `(cos x, sin x)` by Taylor series, for `|x| <= 4`.
fn cos_sin(x: &BigInt) -> (BigInt, BigInt) {
    let mut term = one();
    let mut c = BigInt::zero();
    let mut s = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        match k % 4 {
            0 => c += &term,
            1 => s += &term,
            2 => c -= &term,
            _ => s -= &term,
        }
        k += 1;
        term = mul(&term, x) / BigInt::from(k);
    }
    (c, s)
}

#[derive(Clone, Debug)]
pub struct Fixed {
    pub re: BigInt,
    pub im: BigInt,
}

impl Fixed {
    fn mul(&self, o: &Fixed) -> Fixed {
        Fixed {
            re: mul(&self.re, &o.re) - mul(&self.im, &o.im),
            im: mul(&self.re, &o.im) + mul(&self.im, &o.re),
        }
    }

    fn inv(&self) -> Fixed {
        let d = mul(&self.re, &self.re) + mul(&self.im, &self.im);
        Fixed { re: div(&self.re, &d), im: -div(&self.im, &d) }
    }

    fn one_minus(&self) -> Fixed {
        Fixed { re: one() - &self.re, im: -self.im.clone() }
    }

    fn add(&self, o: &Fixed) -> Fixed {
        Fixed { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im)
    }

    pub fn re_rational_gap(&self, exact: &Rational) -> f64 {
        let scaled = exact * Rational::from_integer(one());
        let diff = Rational::from_integer(self.re.clone()) - scaled;
        to_f64(&diff.to_integer().abs())
    }
}

fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap() / 2f64.powi(WORK as i32)
}

/// `e^{2 pi i e / n}` in fixed point.
pub fn root(n: u64, e: i64) -> Fixed {
    let e = e.rem_euclid(n as i64);
    // reduce to |angle| <= pi
    let signed = if 2 * e > n as i64 { e - n as i64 } else { e };
    let angle = pi() * 2 * BigInt::from(signed) / BigInt::from(n);
    let (c, s) = cos_sin(&angle);
    Fixed { re: c, im: s }
}

/// `sum_{j=1}^{n-1} 1/(1 - xi^j)` and `sum xi^j/(1 - xi^j)^2`, summed
/// directly with `xi = e^{2 pi i/n}`.
pub fn lemma7_direct(n: u64) -> (Fixed, Fixed) {
    let zero = Fixed { re: BigInt::zero(), im: BigInt::zero() };
    let (mut a, mut b) = (zero.clone(), zero);
    for j in 1..n {
        let x = root(n, j as i64);
        let w = x.one_minus().inv();
        a = a.add(&w);
        b = b.add(&x.mul(&w).mul(&w));
    }
    (a, b)
}

/// `sum u`, `sum v` with `u = 1/(1 - z^{-1})`, `v = z^{-1}/(1 - z^{-1})^2`
/// over the rotations `z = e^{2 pi i e/n}`.
pub fn angle_sums_direct(rotations: &[(u64, i64)]) -> (Fixed, Fixed) {
    let zero = Fixed { re: BigInt::zero(), im: BigInt::zero() };
    let (mut su, mut sv) = (zero.clone(), zero);
    for &(n, e) in rotations {
        let zi = root(n, -e);
        let u = zi.one_minus().inv();
        su = su.add(&u);
        sv = sv.add(&zi.mul(&u).mul(&u));
    }
    (su, sv)
}

/// `sum_i 1/((1 - a_i^{-1})(1 - b_i^{-1}))` over rotation pairs.
pub fn pair_sum_direct(pairs: &[((u64, i64), (u64, i64))]) -> Fixed {
    let mut s = Fixed { re: BigInt::zero(), im: BigInt::zero() };
    for &((na, ea), (nb, eb)) in pairs {
        let u = root(na, -ea).one_minus().inv();
        let v = root(nb, -eb).one_minus().inv();
        s = s.add(&u.mul(&v));
    }
    s
}

/// `K^3` as the sum over all 64 ordered triples of basis symbols.
pub fn k_cubed_brute_force(form: &TrilinearForm) -> Poly {
    let k = canonical_class();
    let mut total = Poly::zero();
    for a in Symbol::ALL {
        for b in Symbol::ALL {
            for c in Symbol::ALL {
                let coeff = &(&k.coeff(a) * &k.coeff(b)) * &k.coeff(c);
                total += &coeff * form.get(a, b, c);
            }
        }
    }
    total
}

/// One-variable theta values at `iy` by Jacobi's triple products with
/// `q = e^{-pi y}`: `[theta_3, theta_4, theta_2]` for the characteristics
/// `[0;0]`, `[0;1]`, `[1;0]`.
pub fn jacobi_products(y: f64) -> [f64; 3] {
    let q = (-std::f64::consts::PI * y).exp();
    let (mut t3, mut t4, mut t2) = (1.0, 1.0, 2.0 * q.powf(0.25));
    for n in 1..200 {
        let q2n = q.powi(2 * n);
        let q2n1 = q.powi(2 * n - 1);
        t3 *= (1.0 - q2n) * (1.0 + q2n1).powi(2);
        t4 *= (1.0 - q2n) * (1.0 - q2n1).powi(2);
        t2 *= (1.0 - q2n) * (1.0 + q2n).powi(2);
    }
    [t3, t4, t2]
}

/// `theta[a; b](iy)` for `a, b in {0, 1}` from the product formulas.
pub fn jacobi_theta(a: u8, b: u8, y: f64) -> f64 {
    let [t3, t4, t2] = jacobi_products(y);
    match (a, b) {
        (0, 0) => t3,
        (0, 1) => t4,
        (1, 0) => t2,
        _ => 0.0,
    }
}
