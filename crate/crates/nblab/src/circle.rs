//! Prediction error for a singular moving average on the unit circle.
//!
//! `Q(z) = prod (1 - conj(alpha) z)^m` has all roots on the circle; the error
//! `E(N,P) = inf_{deg A <= N} ||P - Q A||^2` under the uniform measure is
//! computed exactly from the Toeplitz normal equations, and independently from
//! the spanning vectors of the orthogonal complement. `N * E(N,P)` converges to
//! `sum m_alpha^2 |P(alpha)|^2`, the circle analogue of the zero-counting
//! lower bound.

use crate::exact::{rational_to_f64, GaussianRational, Rational};
use crate::linalg::{projection_norm_sq, HermitianMatrix, LinalgError};
use crate::par;
use num::traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircleError {
    #[error("root {root} is not on the unit circle (|root|^2 = {norm_sq})")]
    NotUnitCircle { root: String, norm_sq: String },
    #[error("roots must be pairwise distinct (duplicate {root})")]
    DuplicateRoot { root: String },
    #[error("polynomial Q must be nonzero")]
    ZeroPolynomial,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Polynomial with exact Gaussian-rational coefficients, index = power of z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirclePolynomial {
    coeffs: Vec<GaussianRational>,
}

impl CirclePolynomial {
    /// Canonicalizes by dropping trailing zeros; the zero polynomial keeps one
    /// zero coefficient.
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(GaussianRational::zero());
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![GaussianRational::one()])
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = GaussianRational::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> GaussianRational {
        self.coeffs.get(n).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &CirclePolynomial) -> CirclePolynomial {
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        CirclePolynomial::new(out)
    }

    pub fn pow(&self, e: u32) -> CirclePolynomial {
        let mut acc = CirclePolynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// Squared L2 norm under the uniform circle measure: monomials are
    /// orthonormal, so this is just the coefficient norm.
    pub fn norm_sq(&self) -> Rational {
        let mut acc = Rational::zero();
        for c in &self.coeffs {
            acc += c.norm_sq();
        }
        acc
    }

    /// Inner product `<self, other>` under the uniform circle measure,
    /// complex linear in the first factor.
    pub fn inner(&self, other: &CirclePolynomial) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            acc += &(a * &b.conj());
        }
        acc
    }
}

/// A unit-circle root together with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSpec {
    pub root: GaussianRational,
    pub multiplicity: u32,
}

impl RootSpec {
    pub fn new(root: GaussianRational, multiplicity: u32) -> Result<Self, CircleError> {
        assert!(multiplicity >= 1, "multiplicity must be at least 1");
        let n = root.norm_sq();
        if n != Rational::from_integer(1.into()) {
            return Err(CircleError::NotUnitCircle {
                root: root.to_string(),
                norm_sq: n.to_string(),
            });
        }
        Ok(Self { root, multiplicity })
    }

    pub fn simple(root: GaussianRational) -> Result<Self, CircleError> {
        Self::new(root, 1)
    }
}

/// Expand `Q(z) = prod (1 - conj(alpha) z)^{m_alpha}` exactly.
pub fn expand_q(roots: &[RootSpec]) -> Result<CirclePolynomial, CircleError> {
    assert!(!roots.is_empty(), "expand_q needs at least one root");
    for (i, r) in roots.iter().enumerate() {
        // RootSpec construction already checked |alpha| = 1; recheck cheaply in
        // case a caller built one by hand.
        if r.root.norm_sq() != Rational::from_integer(1.into()) {
            return Err(CircleError::NotUnitCircle {
                root: r.root.to_string(),
                norm_sq: r.root.norm_sq().to_string(),
            });
        }
        if roots[..i].iter().any(|s| s.root == r.root) {
            return Err(CircleError::DuplicateRoot { root: r.root.to_string() });
        }
    }
    let mut q = CirclePolynomial::one();
    for r in roots {
        let factor =
            CirclePolynomial::new(vec![GaussianRational::one(), -&r.root.conj()]);
        q = q.mul(&factor.pow(r.multiplicity));
    }
    Ok(q)
}

/// Autocorrelation of the coefficient sequence: `c_r = sum_j q_j conj(q_{j+r})`
/// for lags `r >= 0` (negative lags are conjugates). These are the Fourier
/// coefficients of `|Q|^2`, hence the Toeplitz Gram entries.
pub fn autocorrelation(q: &CirclePolynomial) -> Result<Vec<GaussianRational>, CircleError> {
    if q.is_zero() {
        return Err(CircleError::ZeroPolynomial);
    }
    let c = q.coeffs();
    Ok((0..c.len())
        .map(|r| {
            let mut acc = GaussianRational::zero();
            for j in 0..c.len() - r {
                acc += &(&c[j] * &c[j + r].conj());
            }
            acc
        })
        .collect())
}

/// Exact minimizer data for one `(P, Q, N)` instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionResult {
    pub n: usize,
    /// `E(N,P)`, exact and nonnegative.
    pub value: Rational,
    /// Coefficients of the optimal `A` (degree <= N).
    pub optimal: Vec<GaussianRational>,
}

/// Exact `E(N,P) = inf_{deg A <= N} ||P - Q A||^2` via the Toeplitz normal
/// equations `T x = r`, `T_{jk} = c_{j-k}`, `r_j = sum_i p_i conj(q_{i-j})`.
pub fn prediction_error(
    p: &CirclePolynomial,
    q: &CirclePolynomial,
    n: usize,
) -> Result<PredictionResult, CircleError> {
    if q.is_zero() {
        return Err(CircleError::ZeroPolynomial);
    }
    let c = autocorrelation(q)?;
    let dim = n + 1;
    // Gram oriented so that conj-transpose(r) . T^{-1} . r is the projection
    // norm: row j, column k holds <z^k Q, z^j Q> = c_{k-j} for k >= j.
    let gram = HermitianMatrix::from_upper_fn(dim, |j, k| {
        let lag = k - j;
        if lag < c.len() {
            c[lag].clone()
        } else {
            GaussianRational::zero()
        }
    });
    let rhs: Vec<GaussianRational> = (0..dim)
        .map(|j| {
            let mut acc = GaussianRational::zero();
            for (i, pi) in p.coeffs().iter().enumerate() {
                if pi.is_zero() {
                    continue;
                }
                if i >= j && i - j < q.coeffs().len() {
                    acc += &(pi * &q.coeffs()[i - j].conj());
                }
            }
            acc
        })
        .collect();
    // The Gram of {z^j Q} is positive definite for any nonzero Q, so the
    // natural-order banded-friendly solve applies.
    let x = crate::linalg::solve_positive_definite(&gram, &rhs)?;
    let mut proj = GaussianRational::zero();
    for (b, xi) in rhs.iter().zip(&x) {
        proj += &(&b.conj() * xi);
    }
    assert!(proj.im.is_zero());
    let value = p.norm_sq() - proj.re;
    Ok(PredictionResult { n, value, optimal: x })
}

/// Spanning vector `Y^N_{alpha,k}` of the orthogonal complement `W_N`:
/// coefficient of `z^n` is `n (n-1) ... (n-k+1) conj(alpha)^{n-k}` for
/// `n >= k`, zero below; length `N + q + 1`.
pub fn spanning_vector(
    alpha: &GaussianRational,
    k: u32,
    n: usize,
    q: usize,
) -> CirclePolynomial {
    let len = n + q + 1;
    assert!(len > k as usize, "need N + q >= k");
    let conj_a = alpha.conj();
    let mut coeffs = vec![GaussianRational::zero(); len];
    // running conj(alpha)^{j-k} starting at j = k
    let mut alpha_pow = GaussianRational::one();
    for j in k as usize..len {
        let mut fall = GaussianRational::one();
        for s in 0..k as usize {
            fall = &fall * &GaussianRational::from_int((j - s) as i64);
        }
        coeffs[j] = &fall * &alpha_pow;
        alpha_pow = &alpha_pow * &conj_a;
    }
    CirclePolynomial::new(coeffs)
}

/// `E(N,P)` by the complement route: project `P` onto the span of the
/// `Y^N_{alpha,k}` and take the squared norm. Independent of the Toeplitz path
/// (a `q x q` Gram instead of an `(N+1) x (N+1)` one).
pub fn prediction_error_via_spanning(
    p: &CirclePolynomial,
    roots: &[RootSpec],
    n: usize,
) -> Result<Rational, CircleError> {
    let q_poly = expand_q(roots)?;
    let q = q_poly.degree();
    assert!(
        p.degree() <= n + q,
        "spanning route requires deg P <= N + q"
    );
    let mut basis = Vec::new();
    for r in roots {
        for k in 0..r.multiplicity {
            basis.push(spanning_vector(&r.root, k, n, q));
        }
    }
    let dim = basis.len();
    // row i, column j holds <Y_j, Y_i>, matching the projection formula.
    let gram = HermitianMatrix::from_upper_fn(dim, |i, j| basis[j].inner(&basis[i]));
    let rhs: Vec<GaussianRational> = basis.iter().map(|y| p.inner(y)).collect();
    Ok(projection_norm_sq(&gram, &rhs)?)
}

/// One `(N, N*E)` row of a rate table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatePoint {
    pub n: usize,
    pub error: Rational,
    pub n_times_error: Rational,
}

/// Rate table plus the Richardson limit extracted from the last two points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateSequence {
    pub points: Vec<RatePoint>,
    /// Extrapolated `lim N E(N,P)` assuming `N E = c + d/N`.
    pub limit: Rational,
}

impl RateSequence {
    pub fn limit_f64(&self) -> f64 {
        rational_to_f64(&self.limit)
    }
}

/// Evaluate `E(N,P)` over `n_list` (ascending, at least two entries) and
/// Richardson-extrapolate `N*E` from the last two points.
///
/// Entries are independent and evaluated data-parallel; the table is assembled
/// in input order.
pub fn rate_sequence(
    p: &CirclePolynomial,
    q: &CirclePolynomial,
    n_list: &[usize],
) -> Result<RateSequence, CircleError> {
    assert!(n_list.len() >= 2, "rate_sequence needs at least two N values");
    assert!(
        n_list.windows(2).all(|w| w[0] < w[1]),
        "N list must be strictly ascending"
    );
    let results = par::map_indexed(n_list.len(), |i| prediction_error(p, q, n_list[i]));
    let mut points = Vec::with_capacity(n_list.len());
    for r in results {
        let r = r?;
        let ne = &r.value * Rational::from_integer(r.n.into());
        points.push(RatePoint { n: r.n, error: r.value, n_times_error: ne });
    }
    // N*E = c + d/N through the last two points: c = (N2*y2 - N1*y1)/(N2 - N1).
    let a = &points[points.len() - 2];
    let b = &points[points.len() - 1];
    let n1 = Rational::from_integer(a.n.into());
    let n2 = Rational::from_integer(b.n.into());
    let limit = (&n2 * &b.n_times_error - &n1 * &a.n_times_error) / (&n2 - &n1);
    Ok(RateSequence { points, limit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn gi(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn one_minus_z() -> CirclePolynomial {
        CirclePolynomial::new(vec![gi(1), gi(-1)])
    }

    #[test]
    fn expand_single_roots() {
        let q = expand_q(&[RootSpec::simple(gi(1)).unwrap()]).unwrap();
        assert_eq!(q.coeffs(), &[gi(1), gi(-1)]);
        let q2 = expand_q(&[RootSpec::new(gi(1), 2).unwrap()]).unwrap();
        assert_eq!(q2.coeffs(), &[gi(1), gi(-2), gi(1)]);
        // alpha = i: conj = -i, factor 1 + i z
        let qi = expand_q(&[RootSpec::simple(GaussianRational::i()).unwrap()]).unwrap();
        assert_eq!(qi.coeffs(), &[gi(1), GaussianRational::i()]);
    }

    #[test]
    fn unit_circle_enforced() {
        assert!(matches!(
            RootSpec::simple(gi(2)),
            Err(CircleError::NotUnitCircle { .. })
        ));
        // Pythagorean point is fine
        assert!(RootSpec::simple(GaussianRational::from_parts(3, 5, 4, 5)).is_ok());
        let dup = expand_q(&[
            RootSpec::simple(gi(1)).unwrap(),
            RootSpec::simple(gi(1)).unwrap(),
        ]);
        assert!(matches!(dup, Err(CircleError::DuplicateRoot { .. })));
    }

    #[test]
    fn autocorrelation_examples() {
        let c = autocorrelation(&one_minus_z()).unwrap();
        assert_eq!(c, vec![gi(2), gi(-1)]);
        let c1 = autocorrelation(&CirclePolynomial::one()).unwrap();
        assert_eq!(c1, vec![gi(1)]);
        let c2 = autocorrelation(&CirclePolynomial::new(vec![gi(1), gi(-2), gi(1)])).unwrap();
        assert_eq!(c2, vec![gi(6), gi(-4), gi(1)]);
    }

    #[test]
    fn prediction_error_examples() {
        let p1 = CirclePolynomial::one();
        let q = one_minus_z();
        let e0 = prediction_error(&p1, &q, 0).unwrap();
        assert_eq!(e0.value, ratio(1, 2));
        assert_eq!(e0.optimal, vec![GaussianRational::from_ratio(1, 2)]);
        let e8 = prediction_error(&p1, &q, 8).unwrap();
        assert_eq!(e8.value, ratio(1, 10));
        let pz = CirclePolynomial::monomial(1);
        let ez = prediction_error(&pz, &q, 0).unwrap();
        assert_eq!(ez.value, ratio(1, 2));
        assert_eq!(ez.optimal, vec![GaussianRational::from_ratio(-1, 2)]);
    }

    #[test]
    fn prediction_error_pattern_small() {
        let p = CirclePolynomial::one();
        let q = one_minus_z();
        for n in 0..=16 {
            assert_eq!(prediction_error(&p, &q, n).unwrap().value, ratio(1, (n + 2) as i64));
        }
    }

    #[test]
    fn monotone_in_n() {
        let p = CirclePolynomial::one();
        let q = expand_q(&[
            RootSpec::new(gi(1), 2).unwrap(),
            RootSpec::simple(gi(-1)).unwrap(),
        ])
        .unwrap();
        let mut prev: Option<Rational> = None;
        for n in 0..10 {
            let e = prediction_error(&p, &q, n).unwrap().value;
            if let Some(pv) = prev {
                assert!(e <= pv, "E must be nonincreasing in N");
            }
            prev = Some(e);
        }
    }

    #[test]
    fn spanning_vector_examples() {
        let y0 = spanning_vector(&gi(1), 0, 0, 1);
        assert_eq!(y0.coeffs(), &[gi(1), gi(1)]);
        let y1 = spanning_vector(&gi(1), 1, 0, 2);
        assert_eq!(y1.coeffs(), &[gi(0), gi(1), gi(2)]);
        // orthogonality of W_N to Q * P_N at the smallest instance
        let q = one_minus_z();
        assert!(q.inner(&y0).is_zero());
    }

    #[test]
    fn spanning_orthogonality() {
        // every z^j Q is orthogonal to Y_{alpha,k} for k < m_alpha, j <= N
        let roots = [
            RootSpec::new(gi(1), 2).unwrap(),
            RootSpec::simple(GaussianRational::i()).unwrap(),
        ];
        let qp = expand_q(&roots).unwrap();
        let q = qp.degree();
        let n = 5;
        for r in &roots {
            for k in 0..r.multiplicity {
                let y = spanning_vector(&r.root, k, n, q);
                for j in 0..=n {
                    let zq = CirclePolynomial::monomial(j).mul(&qp);
                    assert!(zq.inner(&y).is_zero(), "j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn two_path_equality() {
        // Toeplitz route and spanning route agree exactly.
        let configs: Vec<(CirclePolynomial, Vec<RootSpec>)> = vec![
            (CirclePolynomial::one(), vec![RootSpec::simple(gi(1)).unwrap()]),
            (CirclePolynomial::one(), vec![RootSpec::new(gi(1), 2).unwrap()]),
            (
                CirclePolynomial::monomial(1),
                vec![
                    RootSpec::simple(gi(1)).unwrap(),
                    RootSpec::simple(gi(-1)).unwrap(),
                ],
            ),
            (
                CirclePolynomial::new(vec![gi(1), gi(1)]),
                vec![
                    RootSpec::new(gi(1), 2).unwrap(),
                    RootSpec::simple(GaussianRational::i()).unwrap(),
                    RootSpec::simple(-&GaussianRational::i()).unwrap(),
                ],
            ),
        ];
        for (p, roots) in &configs {
            let q = expand_q(roots).unwrap();
            for n in [0, 1, 2, 7, 32] {
                let direct = prediction_error(p, &q, n).unwrap().value;
                let spanning = prediction_error_via_spanning(p, roots, n).unwrap();
                assert_eq!(direct, spanning, "n={n}");
            }
        }
    }

    #[test]
    fn vanishing_at_roots_gives_zero_error() {
        // P = Q = 1 - z: E(N) = 0 for all N >= 0 (take A = 1).
        let q = one_minus_z();
        for n in 0..5 {
            assert!(prediction_error(&q, &q, n).unwrap().value.is_zero());
        }
    }

    #[test]
    fn rate_sequence_limits() {
        let p = CirclePolynomial::one();
        let q = one_minus_z();
        let rs = rate_sequence(&p, &q, &[16, 32, 64]).unwrap();
        // N E = N/(N+2) = 1 - 2/(N+2); first-order model is exact in the limit
        assert!((rs.limit_f64() - 1.0).abs() < 0.01);
        for pt in &rs.points {
            assert_eq!(pt.error, ratio(1, (pt.n + 2) as i64));
        }
        let q2 = CirclePolynomial::new(vec![gi(1), gi(-2), gi(1)]);
        let rs2 = rate_sequence(&p, &q2, &[32, 64]).unwrap();
        assert!((rs2.limit_f64() - 4.0).abs() < 0.4);
        let qpm = CirclePolynomial::new(vec![gi(1), gi(0), gi(-1)]);
        let rs3 = rate_sequence(&p, &qpm, &[32, 64]).unwrap();
        assert!((rs3.limit_f64() - 2.0).abs() < 0.2);
    }

    #[test]
    fn note_regimes() {
        // root outside the closed disc: exponential decrease
        let p = CirclePolynomial::one();
        let q_out = CirclePolynomial::new(vec![gi(1), GaussianRational::from_ratio(-1, 2)]);
        let mut prev = prediction_error(&p, &q_out, 4).unwrap().value;
        for n in 5..=12 {
            let e = prediction_error(&p, &q_out, n).unwrap().value;
            assert!(&e / &prev <= ratio(51, 100), "n={n}");
            prev = e;
        }
        // root inside the open disc: bounded below
        let q_in = CirclePolynomial::new(vec![gi(1), gi(-2)]);
        for n in [0, 8, 16] {
            assert!(prediction_error(&p, &q_in, n).unwrap().value >= ratio(1, 5));
        }
    }
}
