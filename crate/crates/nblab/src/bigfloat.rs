//! Arbitrary-precision real and complex scalars on top of `astro-float`,
//! plus a Jacobi eigensolver for the extended-precision Gram solves.
//!
//! Every operation takes the target precision in bits explicitly; results
//! carry that precision. Transcendental-function constant caches are
//! thread-local so the parallel assembly paths need no locking.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use std::cell::RefCell;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Lift an `f64` (exact binary value) to a `BigFloat`.
pub fn bf(v: f64, prec: usize) -> BigFloat {
    BigFloat::from_f64(v, prec)
}

pub fn bf_zero(prec: usize) -> BigFloat {
    BigFloat::from_f64(0.0, prec)
}

pub fn bf_pi(prec: usize) -> BigFloat {
    with_consts(|cc| cc.pi(prec, RM))
}

pub fn bf_ln2(prec: usize) -> BigFloat {
    with_consts(|cc| cc.ln_2(prec, RM))
}

pub fn bf_exp(x: &BigFloat, prec: usize) -> BigFloat {
    with_consts(|cc| x.exp(prec, RM, cc))
}

pub fn bf_ln(x: &BigFloat, prec: usize) -> BigFloat {
    with_consts(|cc| x.ln(prec, RM, cc))
}

pub fn bf_sin(x: &BigFloat, prec: usize) -> BigFloat {
    with_consts(|cc| x.sin(prec, RM, cc))
}

pub fn bf_cos(x: &BigFloat, prec: usize) -> BigFloat {
    with_consts(|cc| x.cos(prec, RM, cc))
}

pub fn bf_atan(x: &BigFloat, prec: usize) -> BigFloat {
    with_consts(|cc| x.atan(prec, RM, cc))
}

pub fn bf_sqrt(x: &BigFloat, prec: usize) -> BigFloat {
    x.sqrt(prec, RM)
}

pub fn bf_add(a: &BigFloat, b: &BigFloat, prec: usize) -> BigFloat {
    a.add(b, prec, RM)
}

pub fn bf_sub(a: &BigFloat, b: &BigFloat, prec: usize) -> BigFloat {
    a.sub(b, prec, RM)
}

pub fn bf_mul(a: &BigFloat, b: &BigFloat, prec: usize) -> BigFloat {
    a.mul(b, prec, RM)
}

pub fn bf_div(a: &BigFloat, b: &BigFloat, prec: usize) -> BigFloat {
    a.div(b, prec, RM)
}

/// Parse a decimal literal at the given precision (test fixtures, CLI input).
pub fn bf_parse(s: &str, prec: usize) -> BigFloat {
    with_consts(|cc| BigFloat::parse(s, astro_float::Radix::Dec, prec, RM, cc))
}

pub fn bf_is_neg(x: &BigFloat) -> bool {
    x.sign() == Some(Sign::Neg) && !x.is_zero()
}

/// `x <= y` for finite values.
pub fn bf_le(x: &BigFloat, y: &BigFloat) -> bool {
    matches!(x.cmp(y), Some(o) if o <= 0)
}

/// Nearest `f64`, saturating on exponent overflow.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if bf_is_neg(x) { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    if x.is_zero() {
        return 0.0;
    }
    let e = x.exponent().expect("finite value") as i64;
    let digits = x.mantissa_digits().expect("finite value");
    let top = digits[digits.len() - 1];
    let next = if digits.len() >= 2 { digits[digits.len() - 2] } else { 0 };
    // mantissa is normalized: value = frac * 2^e with frac in [1/2, 1)
    let frac = (top as f64) * 2f64.powi(-64) + (next as f64) * 2f64.powi(-128);
    let mag = if e > 1023 {
        f64::INFINITY
    } else if e < -1060 {
        0.0
    } else {
        frac * 2f64.powi(e as i32)
    };
    if x.sign() == Some(Sign::Neg) {
        -mag
    } else {
        mag
    }
}

/// Two-argument arctangent built from `atan`, covering all quadrants.
pub fn bf_atan2(y: &BigFloat, x: &BigFloat, prec: usize) -> BigFloat {
    let pi = bf_pi(prec);
    if x.is_zero() && y.is_zero() {
        return bf_zero(prec);
    }
    if x.is_zero() {
        let half_pi = bf_div(&pi, &bf(2.0, prec), prec);
        return if bf_is_neg(y) { half_pi.neg() } else { half_pi };
    }
    let base = bf_atan(&bf_div(y, x, prec), prec);
    if !bf_is_neg(x) {
        base
    } else if bf_is_neg(y) {
        bf_sub(&base, &pi, prec)
    } else {
        bf_add(&base, &pi, prec)
    }
}

/// Arbitrary-precision complex value; operations keep the precision of the
/// left operand (operands are expected to share it).
#[derive(Debug, Clone)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    pub prec: usize,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        Self { re, im, prec }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Self::new(bf(re, prec), bf(im, prec), prec)
    }

    pub fn from_real(re: BigFloat, prec: usize) -> Self {
        Self::new(re, bf_zero(prec), prec)
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_f64(0.0, 0.0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    pub fn i(prec: usize) -> Self {
        Self::from_f64(0.0, 1.0, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg(), self.prec)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg(), self.prec)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.prec;
        Self::new(bf_add(&self.re, &rhs.re, p), bf_add(&self.im, &rhs.im, p), p)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec;
        Self::new(bf_sub(&self.re, &rhs.re, p), bf_sub(&self.im, &rhs.im, p), p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec;
        let re = bf_sub(&bf_mul(&self.re, &rhs.re, p), &bf_mul(&self.im, &rhs.im, p), p);
        let im = bf_add(&bf_mul(&self.re, &rhs.im, p), &bf_mul(&self.im, &rhs.re, p), p);
        Self::new(re, im, p)
    }

    pub fn mul_real(&self, rhs: &BigFloat) -> Self {
        let p = self.prec;
        Self::new(bf_mul(&self.re, rhs, p), bf_mul(&self.im, rhs, p), p)
    }

    pub fn mul_f64(&self, rhs: f64) -> Self {
        self.mul_real(&bf(rhs, self.prec))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.prec;
        let n = rhs.norm_sq();
        let re = bf_div(
            &bf_add(&bf_mul(&self.re, &rhs.re, p), &bf_mul(&self.im, &rhs.im, p), p),
            &n,
            p,
        );
        let im = bf_div(
            &bf_sub(&bf_mul(&self.im, &rhs.re, p), &bf_mul(&self.re, &rhs.im, p), p),
            &n,
            p,
        );
        Self::new(re, im, p)
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec).div(self)
    }

    /// `re^2 + im^2`.
    pub fn norm_sq(&self) -> BigFloat {
        let p = self.prec;
        bf_add(&bf_mul(&self.re, &self.re, p), &bf_mul(&self.im, &self.im, p), p)
    }

    pub fn abs(&self) -> BigFloat {
        bf_sqrt(&self.norm_sq(), self.prec)
    }

    pub fn arg(&self) -> BigFloat {
        bf_atan2(&self.im, &self.re, self.prec)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec;
        let r = bf_exp(&self.re, p);
        Self::new(
            bf_mul(&r, &bf_cos(&self.im, p), p),
            bf_mul(&r, &bf_sin(&self.im, p), p),
            p,
        )
    }

    /// Principal branch logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec;
        let half = bf(0.5, p);
        Self::new(bf_mul(&bf_ln(&self.norm_sq(), p), &half, p), self.arg(), p)
    }

    /// Principal-branch complex power `self^w`.
    pub fn pow(&self, w: &Self) -> Self {
        w.mul(&self.ln()).exp()
    }

    pub fn powi(&self, n: i32) -> Self {
        let mut acc = Self::one(self.prec);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(self);
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn sin(&self) -> Self {
        // sin(x+iy) = sin x cosh y + i cos x sinh y, via exp to reuse the cache
        let i = Self::i(self.prec);
        let e1 = i.mul(self).exp();
        let e2 = i.mul(self).neg().exp();
        e1.sub(&e2).div(&i.mul_f64(2.0))
    }

    pub fn cos(&self) -> Self {
        let i = Self::i(self.prec);
        let e1 = i.mul(self).exp();
        let e2 = i.mul(self).neg().exp();
        e1.add(&e2).mul_f64(0.5)
    }

    pub fn to_f64_parts(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        to_f64(&self.abs())
    }

    /// `|self - rhs|` as f64, for tolerance checks.
    pub fn dist_f64(&self, rhs: &Self) -> f64 {
        to_f64(&self.sub(rhs).abs())
    }

    /// Round (or pad) to a new working precision.
    pub fn with_precision(&self, prec: usize) -> Self {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        re.set_precision(prec, RM).expect("set precision");
        im.set_precision(prec, RM).expect("set precision");
        Self::new(re, im, prec)
    }
}

/// `t^w` for a positive real base.
pub fn pow_real(t: &BigFloat, w: &BigComplex, prec: usize) -> BigComplex {
    let lnt = bf_ln(t, prec);
    let scaled = w.mul_real(&lnt);
    scaled.exp()
}

/// Dense symmetric matrix in extended precision, row-major.
pub struct SymmetricBig {
    pub n: usize,
    pub data: Vec<BigFloat>,
}

impl SymmetricBig {
    pub fn from_fn(n: usize, prec: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![bf_zero(prec); n * n];
        for i in 0..n {
            for j in i..n {
                let v = bf(f(i, j), prec);
                data[i * n + j] = v.clone();
                data[j * n + i] = v;
            }
        }
        Self { n, data }
    }

    fn at(&self, i: usize, j: usize) -> &BigFloat {
        &self.data[i * self.n + j]
    }
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns `(eigenvalues, eigenvectors)` with `eigenvectors[k]` the column for
/// `eigenvalues[k]`, unordered. Quadratic convergence makes ~15 sweeps plenty
/// at 256 bits for the Gram sizes used here.
pub fn jacobi_eigen(mut a: SymmetricBig, prec: usize) -> (Vec<BigFloat>, Vec<Vec<BigFloat>>) {
    let n = a.n;
    let one = bf(1.0, prec);
    let two = bf(2.0, prec);
    let mut v: Vec<BigFloat> = vec![bf_zero(prec); n * n];
    for k in 0..n {
        v[k * n + k] = one.clone();
    }
    // Frobenius norm sets the absolute floor for rotations.
    let mut frob = bf_zero(prec);
    for x in &a.data {
        frob = bf_add(&frob, &bf_mul(x, x, prec), prec);
    }
    frob = bf_sqrt(&frob, prec);
    let eps_bits = prec.saturating_sub(8) as i32;
    let tiny = bf_mul(&frob, &pow2(-eps_bits, prec), prec);

    let max_sweeps = 40;
    for _ in 0..max_sweeps {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a.at(p, q).clone();
                if bf_le(&apq.abs(), &tiny) {
                    continue;
                }
                rotated = true;
                let diff = bf_sub(a.at(q, q), a.at(p, p), prec);
                let theta = bf_div(&diff, &bf_mul(&two, &apq, prec), prec);
                // t = sgn(theta) / (|theta| + sqrt(theta^2 + 1))
                let root = bf_sqrt(&bf_add(&bf_mul(&theta, &theta, prec), &one, prec), prec);
                let t = if bf_is_neg(&theta) {
                    bf_div(&one, &bf_sub(&theta, &root, prec), prec)
                } else {
                    bf_div(&one, &bf_add(&theta, &root, prec), prec)
                };
                let c = bf_div(
                    &one,
                    &bf_sqrt(&bf_add(&bf_mul(&t, &t, prec), &one, prec), prec),
                    prec,
                );
                let s = bf_mul(&t, &c, prec);
                // diagonal updates
                let tapq = bf_mul(&t, &apq, prec);
                let app = bf_sub(a.at(p, p), &tapq, prec);
                let aqq = bf_add(a.at(q, q), &tapq, prec);
                a.data[p * n + p] = app;
                a.data[q * n + q] = aqq;
                a.data[p * n + q] = bf_zero(prec);
                a.data[q * n + p] = bf_zero(prec);
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a.at(r, p).clone();
                    let arq = a.at(r, q).clone();
                    let new_rp = bf_sub(&bf_mul(&c, &arp, prec), &bf_mul(&s, &arq, prec), prec);
                    let new_rq = bf_add(&bf_mul(&s, &arp, prec), &bf_mul(&c, &arq, prec), prec);
                    a.data[r * n + p] = new_rp.clone();
                    a.data[p * n + r] = new_rp;
                    a.data[r * n + q] = new_rq.clone();
                    a.data[q * n + r] = new_rq;
                }
                for r in 0..n {
                    let vrp = v[r * n + p].clone();
                    let vrq = v[r * n + q].clone();
                    v[r * n + p] = bf_sub(&bf_mul(&c, &vrp, prec), &bf_mul(&s, &vrq, prec), prec);
                    v[r * n + q] = bf_add(&bf_mul(&s, &vrp, prec), &bf_mul(&c, &vrq, prec), prec);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let vals: Vec<BigFloat> = (0..n).map(|k| a.at(k, k).clone()).collect();
    let vecs: Vec<Vec<BigFloat>> = (0..n)
        .map(|k| (0..n).map(|r| v[r * n + k].clone()).collect())
        .collect();
    (vals, vecs)
}

/// `2^e` as a `BigFloat`.
pub fn pow2(e: i32, prec: usize) -> BigFloat {
    let mut x = bf(1.0, prec);
    x.set_exponent(x.exponent().unwrap() + e);
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: usize = 128;

    #[test]
    fn f64_roundtrip() {
        for v in [0.0, 1.0, -2.5, 1.2345678901234567e-7, 3.9e300, -7.77e-300] {
            assert_eq!(to_f64(&bf(v, P)), v, "{v}");
        }
        let huge = pow2(1100, P);
        assert_eq!(to_f64(&huge), f64::INFINITY);
        assert_eq!(to_f64(&huge.neg()), f64::NEG_INFINITY);
        assert_eq!(to_f64(&pow2(-1100, P)), 0.0);
    }

    #[test]
    fn complex_field_ops() {
        let z = BigComplex::from_f64(3.0, 4.0, P);
        assert!((to_f64(&z.abs()) - 5.0).abs() < 1e-15);
        let w = z.mul(&z.recip());
        assert!(w.dist_f64(&BigComplex::one(P)) < 1e-30);
        let s = z.add(&z.neg());
        assert!(s.is_zero() || s.abs_f64() < 1e-300);
    }

    #[test]
    fn exp_ln_inverse() {
        let z = BigComplex::from_f64(0.3, -2.2, P);
        assert!(z.ln().exp().dist_f64(&z) < 1e-35);
        // exp(i pi) = -1
        let ipi = BigComplex::new(bf_zero(P), bf_pi(P), P);
        assert!(ipi.exp().dist_f64(&BigComplex::from_f64(-1.0, 0.0, P)) < 1e-36);
    }

    #[test]
    fn pow_and_real_base() {
        let two = BigComplex::from_f64(2.0, 0.0, P);
        let half = BigComplex::from_f64(0.5, 0.0, P);
        assert!((to_f64(&two.pow(&half).re) - 2f64.sqrt()).abs() < 1e-15);
        let w = BigComplex::from_f64(0.5, 14.0, P);
        let t = bf(0.25, P);
        let direct = pow_real(&t, &w, P);
        // |t^w| = t^{Re w}
        assert!((to_f64(&direct.abs()) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn atan2_quadrants() {
        let p = to_f64(&bf_pi(P));
        for (y, x, expect) in [
            (1.0, 1.0, p / 4.0),
            (1.0, -1.0, 3.0 * p / 4.0),
            (-1.0, -1.0, -3.0 * p / 4.0),
            (-1.0, 1.0, -p / 4.0),
            (1.0, 0.0, p / 2.0),
        ] {
            let got = to_f64(&bf_atan2(&bf(y, P), &bf(x, P), P));
            assert!((got - expect).abs() < 1e-14, "atan2({y},{x})");
        }
    }

    #[test]
    fn jacobi_small_matrix() {
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        let m = SymmetricBig::from_fn(2, 192, |i, j| if i == j { 2.0 } else { 1.0 });
        let (vals, vecs) = jacobi_eigen(m, 192);
        let mut got: Vec<f64> = vals.iter().map(to_f64).collect();
        got.sort_by(f64::total_cmp);
        assert!((got[0] - 1.0).abs() < 1e-40);
        assert!((got[1] - 3.0).abs() < 1e-40);
        // eigenvectors are orthonormal
        for k in 0..2 {
            let norm: f64 = vecs[k].iter().map(|x| to_f64(x).powi(2)).sum();
            assert!((norm - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn jacobi_hilbert_like() {
        let n = 6;
        let m = SymmetricBig::from_fn(n, 256, |i, j| 1.0 / (i + j + 1) as f64);
        let (vals, vecs) = jacobi_eigen(m, 256);
        // reconstruct a_00 = sum_k lambda_k v_0k^2
        let mut acc = 0.0;
        for k in 0..n {
            acc += to_f64(&vals[k]) * to_f64(&vecs[k][0]).powi(2);
        }
        assert!((acc - 1.0).abs() < 1e-13);
        // trace preserved
        let tr: f64 = vals.iter().map(to_f64).sum();
        let expect: f64 = (0..n).map(|i| 1.0 / (2 * i + 1) as f64).sum();
        assert!((tr - expect).abs() < 1e-13);
    }
}
