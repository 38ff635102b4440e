//! Exact arithmetic in the real cyclotomic field Q(2cos(pi/N)).
//!
//! Every number is stored as a rational-coefficient polynomial in
//! `c = 2cos(pi/N)`, reduced modulo the minimal polynomial of `c`. The
//! minimal polynomial is obtained by building the cyclotomic polynomial
//! `Phi_{2N}` with the classic divide-out recurrence on `x^n - 1` and then
//! folding `z -> z + 1/z`, which sends the primitive 2N-th root of unity to
//! `c`. Equality of field elements is therefore literal equality of
//! coefficient vectors, and every operation is exact.
//!
//! Sign determination never touches floating point: the context maintains a
//! certified rational enclosure of `c` (isolated with a Sturm chain, then
//! narrowed by bisection against the minimal polynomial), and a value's sign
//! is read off from interval evaluation of its coefficient polynomial,
//! doubling the enclosure precision until zero is excluded.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Starting precision (bits) for the enclosure used by sign tests.
const SIGN_START_BITS: u32 = 128;
/// Hard cap on enclosure precision. Reaching it means the represented value
/// was zero after all (impossible for a canonical nonzero element) or exact
/// arithmetic is broken, so we abort loudly instead of guessing.
const SIGN_MAX_BITS: u32 = 16384;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_sign(q: &BigRational) -> i32 {
    match q.numer().sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

// ---------------------------------------------------------------------------
// Integer polynomials (little-endian coefficients) for the cyclotomic build.
// ---------------------------------------------------------------------------

/// Exact division of monic integer polynomials; panics if not exact, which
/// cannot happen for the cyclotomic divide-out.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        let q = std::mem::replace(&mut rem[i], BigInt::zero());
        if q.is_zero() {
            continue;
        }
        for (k, d) in den.iter().enumerate().take(dn) {
            rem[i - dn + k] -= &q * d;
        }
        quot[i - dn] = q;
    }
    assert!(rem.iter().all(BigInt::is_zero), "division was not exact");
    quot
}

/// The cyclotomic polynomial `Phi_n`, built by dividing `x^n - 1` by the
/// cyclotomic polynomials of all proper divisors of `n`.
fn cyclotomic(n: u64) -> Vec<BigInt> {
    let mut divisors: Vec<u64> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
    divisors.sort_unstable();
    let mut memo: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for d in divisors {
        // x^d - 1
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        let mut phi = num;
        for (e, poly) in &memo {
            if d.is_multiple_of(*e) {
                phi = poly_div_exact(&phi, poly);
            }
        }
        memo.push((d, phi));
    }
    memo.pop().expect("n >= 1").1
}

/// Folds a palindromic polynomial `p(z)` of even degree `2h` into the unique
/// `q` with `q(z + 1/z) = p(z) / z^h`, using the recurrence
/// `z^k + z^-k = y * (z^{k-1} + z^{1-k}) - (z^{k-2} + z^{2-k})`.
fn fold_palindrome(p: &[BigInt]) -> Vec<BigInt> {
    let e = p.len() - 1;
    assert!(e >= 2 && e.is_multiple_of(2), "degree must be even and positive");
    let h = e / 2;
    for k in 0..=e {
        assert_eq!(p[k], p[e - k], "polynomial is not palindromic");
    }
    let mut acc = vec![BigInt::zero(); h + 1];
    acc[0] = p[h].clone();
    // Rolling pair of the power-sum polynomials in y = z + 1/z.
    let mut prev: Vec<BigInt> = vec![BigInt::from(2)]; // z^0 + z^-0
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()]; // z + 1/z
    for k in 1..=h {
        for (deg, c) in cur.iter().enumerate() {
            acc[deg] += &p[h + k] * c;
        }
        if k < h {
            // next = y*cur - prev
            let mut next = vec![BigInt::zero(); cur.len() + 1];
            for (deg, c) in cur.iter().enumerate() {
                next[deg + 1] = c.clone();
            }
            for (deg, c) in prev.iter().enumerate() {
                next[deg] -= c;
            }
            prev = std::mem::replace(&mut cur, next);
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Rational polynomials: evaluation, derivative, remainder (for Sturm chains).
// ---------------------------------------------------------------------------

fn rp_trim(p: &mut Vec<BigRational>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn rp_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn rp_derivative(p: &[BigRational]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
        .collect();
    rp_trim(&mut out);
    out
}

fn rp_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    while rem.len() > db {
        let q = rem.last().unwrap() / lead;
        let shift = rem.len() - 1 - db;
        for k in 0..=db {
            let t = &q * &b[k];
            rem[shift + k] -= t;
        }
        rem.pop();
        rp_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    rem
}

fn sturm_chain(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut chain = vec![p.to_vec(), rp_derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let mut r = rp_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        for c in &mut r {
            *c = -std::mem::take(c);
        }
        chain.push(r);
    }
    chain
}

fn sign_variations(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut last = 0;
    let mut flips = 0;
    for p in chain {
        let s = rat_sign(&rp_eval(p, x));
        if s != 0 {
            if last != 0 && s != last {
                flips += 1;
            }
            last = s;
        }
    }
    flips
}

/// Number of distinct real roots of the chain's polynomial in `(a, b]`.
fn roots_in(chain: &[Vec<BigRational>], a: &BigRational, b: &BigRational) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

// ---------------------------------------------------------------------------
// Rational interval arithmetic for certified sign evaluation.
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct Iv {
    lo: BigRational,
    hi: BigRational,
}

impl Iv {
    fn point(q: BigRational) -> Self {
        Iv { lo: q.clone(), hi: q }
    }

    fn add(&self, other: &Iv) -> Iv {
        Iv { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    fn mul(&self, other: &Iv) -> Iv {
        let mut products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        products.sort();
        let [lo, _, _, hi] = products;
        Iv { lo, hi }
    }
}

struct Enclosure {
    isolated: bool,
    lo: BigRational,
    hi: BigRational,
}

// ---------------------------------------------------------------------------
// The context: one per field, shared by every scalar living in it.
// ---------------------------------------------------------------------------

struct CtxInner {
    n: u64,
    degree: usize,
    /// Monic minimal polynomial of `2cos(pi/N)`, little-endian, length
    /// `degree + 1`.
    minpoly: Vec<BigRational>,
    /// Certified enclosure of `2cos(pi/N)`, lazily isolated and narrowed.
    enclosure: Mutex<Enclosure>,
}

/// The field Q(2cos(pi/N)) for a fixed N, with the data every scalar needs:
/// the minimal polynomial of the generator and a certified enclosure of it.
///
/// Cloning is cheap (shared handle); two contexts are interchangeable exactly
/// when their N agree, because the whole construction is deterministic in N.
#[derive(Clone)]
pub struct ScalarContext {
    inner: Arc<CtxInner>,
}

impl fmt::Debug for ScalarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarContext")
            .field("n", &self.inner.n)
            .field("degree", &self.inner.degree)
            .finish()
    }
}

impl PartialEq for ScalarContext {
    fn eq(&self, other: &Self) -> bool {
        self.inner.n == other.inner.n
    }
}

impl Eq for ScalarContext {}

impl ScalarContext {
    /// Builds the field containing `cos(pi/m)` for every order in
    /// `finite_orders`: N is the least common multiple of the orders (N = 1
    /// for an empty set), and the minimal polynomial of `2cos(pi/N)` has
    /// degree `phi(2N)/2` for `N >= 2` and degree 1 for `N <= 2`.
    pub fn new(finite_orders: impl IntoIterator<Item = u64>) -> ScalarContext {
        let orders: BTreeSet<u64> = finite_orders.into_iter().collect();
        assert!(orders.iter().all(|&m| m >= 2), "orders must be at least 2");
        let n = orders.iter().fold(1u64, |acc, &m| acc.lcm(&m));
        let minpoly: Vec<BigRational> = if n == 1 {
            // 2cos(pi) = -2, so the minimal polynomial is y + 2.
            vec![rat(2), rat(1)]
        } else {
            fold_palindrome(&cyclotomic(2 * n))
                .into_iter()
                .map(BigRational::from_integer)
                .collect()
        };
        let degree = minpoly.len() - 1;
        ScalarContext {
            inner: Arc::new(CtxInner {
                n,
                degree,
                minpoly,
                enclosure: Mutex::new(Enclosure {
                    isolated: false,
                    lo: rat(-3),
                    hi: rat(3),
                }),
            }),
        }
    }

    /// The N with `c = 2cos(pi/N)`.
    pub fn n(&self) -> u64 {
        self.inner.n
    }

    /// Degree of the field over Q.
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// Monic minimal polynomial of the generator, little-endian coefficients.
    pub fn minpoly(&self) -> &[BigRational] {
        &self.inner.minpoly
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            ctx: self.clone(),
            coeffs: vec![BigRational::zero(); self.inner.degree],
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, q: BigRational) -> Scalar {
        let mut coeffs = vec![BigRational::zero(); self.inner.degree];
        coeffs[0] = q;
        Scalar { ctx: self.clone(), coeffs }
    }

    pub fn from_integer(&self, v: i64) -> Scalar {
        self.from_rational(rat(v))
    }

    /// The generator `c = 2cos(pi/N)` as a field element. In degree-1
    /// contexts `c` is itself rational and is returned as such.
    pub fn generator(&self) -> Scalar {
        if self.inner.degree == 1 {
            // minpoly = y - c, stored monic as [-c, 1].
            self.from_rational(-self.inner.minpoly[0].clone())
        } else {
            let mut coeffs = vec![BigRational::zero(); self.inner.degree];
            coeffs[1] = BigRational::one();
            Scalar { ctx: self.clone(), coeffs }
        }
    }

    /// `2cos(pi/m)` for an order `m` dividing N, via the power-sum
    /// recurrence: if `c = 2cos(t)` then `2cos(kt)` is a polynomial in `c`.
    pub fn two_cos_pi_over(&self, m: u64) -> Scalar {
        assert!(m >= 1 && self.inner.n.is_multiple_of(m), "order must divide N");
        let k = self.inner.n / m;
        let mut prev = self.from_integer(2);
        let mut cur = self.generator();
        if k == 0 {
            unreachable!("m divides N, so k >= 1");
        }
        for _ in 1..k {
            let next = &(&cur * &self.generator()) - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    /// A certified rational enclosure of the generator with width at most
    /// `2^-bits`. First call isolates the largest real root of the minimal
    /// polynomial (which is `2cos(pi/N)`: cosine is decreasing on `(0, pi)`,
    /// so the conjugate with the smallest angle is the largest); later calls
    /// narrow the cached interval by bisection.
    fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let mut enc = self.inner.enclosure.lock().unwrap();
        if !enc.isolated {
            let chain = sturm_chain(&self.inner.minpoly);
            let two = rat(2);
            while roots_in(&chain, &enc.lo, &enc.hi) > 1 {
                let mid = (&enc.lo + &enc.hi) / &two;
                if roots_in(&chain, &mid, &enc.hi) >= 1 {
                    enc.lo = mid;
                } else {
                    enc.hi = mid;
                }
            }
            enc.isolated = true;
        }
        let threshold = BigRational::new(BigInt::one(), BigInt::one() << (bits as usize));
        let two = rat(2);
        while &enc.hi - &enc.lo > threshold {
            let mid = (&enc.lo + &enc.hi) / &two;
            // Beyond the largest root a monic polynomial is positive, and
            // with exactly one (simple, irrational) root above `lo` the sign
            // at any rational point decides the side.
            let s = rat_sign(&rp_eval(&self.inner.minpoly, &mid));
            debug_assert!(s != 0, "rational point cannot be an irrational root");
            if s < 0 {
                enc.lo = mid;
            } else {
                enc.hi = mid;
            }
        }
        (enc.lo.clone(), enc.hi.clone())
    }
}

// ---------------------------------------------------------------------------
// Scalars.
// ---------------------------------------------------------------------------

/// An element of Q(2cos(pi/N)): the canonical coefficient vector of a
/// polynomial of degree below the field degree, evaluated at the generator.
/// Two scalars are equal exactly when their contexts and coefficient vectors
/// are; no normalization beyond reduced rationals is ever needed.
#[derive(Clone)]
pub struct Scalar {
    ctx: ScalarContext,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn context(&self) -> &ScalarContext {
        &self.ctx
    }

    /// Canonical coefficients, length equal to the field degree.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check_ctx(&self, other: &Scalar) -> Result<()> {
        if self.ctx.inner.n == other.ctx.inner.n {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.ctx.inner.n,
                right: other.ctx.inner.n,
            })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ctx(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Scalar { ctx: self.ctx.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ctx(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Scalar { ctx: self.ctx.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ctx(other)?;
        let d = self.ctx.inner.degree;
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        // Reduce modulo the monic minimal polynomial: y^d = -(lower terms).
        let mp = &self.ctx.inner.minpoly;
        for i in (d..conv.len()).rev() {
            let q = std::mem::replace(&mut conv[i], BigRational::zero());
            if q.is_zero() {
                continue;
            }
            for k in 0..d {
                let t = &q * &mp[k];
                conv[i - d + k] -= t;
            }
        }
        conv.truncate(d);
        Ok(Scalar { ctx: self.ctx.clone(), coeffs: conv })
    }

    /// Multiplication by a rational, which never leaves the field.
    pub fn scale(&self, q: &BigRational) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Certified sign: -1, 0, or +1. Exact and total — a canonical nonzero
    /// vector represents a nonzero number, so widening the enclosure
    /// precision must eventually separate it from zero.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.ctx.inner.degree == 1 {
            return rat_sign(&self.coeffs[0]);
        }
        // Degree at least 2 forces n >= 4, so the generator 2cos(pi/n) is
        // positive: coefficients that all share one sign settle it outright.
        let mut pos = false;
        let mut neg = false;
        for c in &self.coeffs {
            match rat_sign(c) {
                1 => pos = true,
                -1 => neg = true,
                _ => {}
            }
        }
        if pos != neg {
            return if pos { 1 } else { -1 };
        }
        let mut bits = SIGN_START_BITS;
        loop {
            let (lo, hi) = self.ctx.enclosure(bits);
            let c = Iv { lo, hi };
            let mut acc = Iv::point(self.coeffs[self.coeffs.len() - 1].clone());
            for k in (0..self.coeffs.len() - 1).rev() {
                acc = acc.mul(&c).add(&Iv::point(self.coeffs[k].clone()));
            }
            if rat_sign(&acc.lo) > 0 {
                return 1;
            }
            if rat_sign(&acc.hi) < 0 {
                return -1;
            }
            assert!(
                bits < SIGN_MAX_BITS,
                "sign of a nonzero scalar not separated at {SIGN_MAX_BITS} bits; exact arithmetic is broken"
            );
            bits = (bits * 2).min(SIGN_MAX_BITS);
        }
    }

    /// Coefficients rendered as exact rational strings, the JSON wire form.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// The `{"coeffs": ["p/q", ...]}` serialization.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({ "coeffs": self.coeff_strings() })
    }

    /// Parses the wire form back into a scalar of the given context.
    pub fn from_coeff_strings(ctx: &ScalarContext, coeffs: &[String]) -> Result<Scalar> {
        if coeffs.len() != ctx.degree() {
            return Err(Error::Parse {
                input: format!("{coeffs:?}"),
                reason: format!("expected {} coefficients", ctx.degree()),
            });
        }
        let parsed: std::result::Result<Vec<BigRational>, _> =
            coeffs.iter().map(|s| s.parse::<BigRational>()).collect();
        match parsed {
            Ok(v) => Ok(Scalar { ctx: ctx.clone(), coeffs: v }),
            Err(e) => Err(Error::Parse {
                input: format!("{coeffs:?}"),
                reason: e.to_string(),
            }),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.inner.n == other.ctx.inner.n && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

/// Structural order on (N, coefficient vector); a canonical key order for
/// maps and sets, *not* the numeric order of the represented reals (use
/// [`Scalar::sign`] on a difference for that).
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ctx
            .inner
            .n
            .cmp(&other.ctx.inner.n)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.inner.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = rat_sign(q) < 0;
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = q.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if k == 1 {
                    write!(f, "c")?;
                } else {
                    write!(f, "c^{k}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar context mismatch")
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Euler's totient, used to cross-check the field degree.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(orders: &[u64]) -> ScalarContext {
        ScalarContext::new(orders.iter().copied())
    }

    fn int_poly(p: &[i64]) -> Vec<BigInt> {
        p.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cyclotomic_small_indices() {
        assert_eq!(cyclotomic(1), int_poly(&[-1, 1]));
        assert_eq!(cyclotomic(2), int_poly(&[1, 1]));
        assert_eq!(cyclotomic(4), int_poly(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), int_poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), int_poly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn context_from_orders_two_three() {
        let c = ctx(&[2, 3]);
        assert_eq!(c.n(), 6);
        assert_eq!(c.degree(), 2);
        // y^2 - 3, the minimal polynomial of 2cos(pi/6) = sqrt(3).
        assert_eq!(c.minpoly(), &[rat(-3), rat(0), rat(1)]);
    }

    #[test]
    fn degree_one_contexts() {
        let c1 = ctx(&[]);
        assert_eq!((c1.n(), c1.degree()), (1, 1));
        assert_eq!(c1.generator(), c1.from_integer(-2));

        let c2 = ctx(&[2]);
        assert_eq!((c2.n(), c2.degree()), (2, 1));
        assert!(c2.generator().is_zero());

        let c3 = ctx(&[3]);
        assert_eq!((c3.n(), c3.degree()), (3, 1));
        assert!(c3.generator().is_one());
    }

    #[test]
    fn generator_squares_to_three_when_n_is_six() {
        let c = ctx(&[2, 3]);
        let g = c.generator();
        assert_eq!(&g * &g, c.from_integer(3));
    }

    #[test]
    fn known_minimal_polynomials() {
        // 2cos(pi/5) is the golden ratio: y^2 - y - 1.
        let h = ctx(&[5]);
        assert_eq!(h.minpoly(), &[rat(-1), rat(-1), rat(1)]);
        // 2cos(pi/4) = sqrt(2): y^2 - 2.
        let b = ctx(&[4]);
        assert_eq!(b.minpoly(), &[rat(-2), rat(0), rat(1)]);
        // 2cos(pi/7): y^3 - y^2 - 2y + 1.
        let i7 = ctx(&[7]);
        assert_eq!(i7.minpoly(), &[rat(1), rat(-2), rat(-1), rat(1)]);
    }

    #[test]
    fn degree_matches_totient() {
        for n in 2..=30 {
            let c = ctx(&[n]);
            assert_eq!(
                c.degree() as u64,
                euler_phi(2 * n) / 2,
                "degree mismatch at N = {n}"
            );
        }
    }

    #[test]
    fn minpoly_vanishes_at_float_approximation() {
        for n in 1..=60u64 {
            let c = if n == 1 { ctx(&[]) } else { ctx(&[n]) };
            let coeffs: Vec<f64> = c
                .minpoly()
                .iter()
                .map(|q| {
                    q.numer().to_string().parse::<f64>().unwrap()
                        / q.denom().to_string().parse::<f64>().unwrap()
                })
                .collect();
            let x = 2.0 * (std::f64::consts::PI / c.n() as f64).cos();
            let value = coeffs.iter().rev().fold(0.0, |acc, q| acc * x + q);
            // The rounding of x propagates scaled by |p'(x)|, and Horner
            // itself cancels catastrophically when the terms |c_k| x^k are
            // large, so the tolerance carries both the derivative and the
            // usual condition number sum |c_k| |x|^k.
            let derivative = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (k, q)| acc * x + k as f64 * q);
            let condition = coeffs
                .iter()
                .rev()
                .fold(0.0f64, |acc, q| acc * x.abs() + q.abs());
            let tolerance = 1e-11 * (1.0 + derivative.abs())
                + 64.0 * coeffs.len() as f64 * f64::EPSILON * condition;
            assert!(
                value.abs() < tolerance,
                "N = {}: |minpoly(c)| = {} exceeds {tolerance}",
                c.n(),
                value.abs()
            );
        }
    }

    #[test]
    fn signs_are_certified() {
        let c = ctx(&[2, 3]);
        assert_eq!(c.zero().sign(), 0);
        assert_eq!(c.from_rational(BigRational::new(BigInt::from(-1), BigInt::from(2))).sign(), -1);
        // sqrt(3) - 1 > 0 and sqrt(3) - 2 < 0.
        let g = c.generator();
        assert_eq!((&g - &c.one()).sign(), 1);
        assert_eq!((&g - &c.from_integer(2)).sign(), -1);
        // golden ratio: c^2 - c - 1 = 0, and c - 1 > 0, c - 2 < 0.
        let h = ctx(&[5]);
        let g = h.generator();
        assert_eq!((&g - &h.one()).sign(), 1);
        assert_eq!((&g - &h.from_integer(2)).sign(), -1);
    }

    #[test]
    fn two_cos_of_divisor_orders() {
        // In N = 12: 2cos(pi/6) = sqrt(3) satisfies x^2 = 3,
        // 2cos(pi/4) = sqrt(2) satisfies x^2 = 2, 2cos(pi/3) = 1,
        // 2cos(pi/2) = 0.
        let c = ctx(&[4, 6]);
        assert_eq!(c.n(), 12);
        let s3 = c.two_cos_pi_over(6);
        assert_eq!(&s3 * &s3, c.from_integer(3));
        let s2 = c.two_cos_pi_over(4);
        assert_eq!(&s2 * &s2, c.from_integer(2));
        assert!(c.two_cos_pi_over(3).is_one());
        assert!(c.two_cos_pi_over(2).is_zero());
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = ctx(&[2]).one();
        let b = ctx(&[5]).one();
        assert!(matches!(
            a.try_add(&b),
            Err(Error::ContextMismatch { left: 2, right: 5 })
        ));
    }

    #[test]
    fn coefficient_strings_round_trip() {
        let c = ctx(&[5]);
        let x = &c.generator() + &c.from_rational(BigRational::new(BigInt::from(-7), BigInt::from(3)));
        let back = Scalar::from_coeff_strings(&c, &x.coeff_strings()).unwrap();
        assert_eq!(x, back);
        assert_eq!(x.coeff_strings(), vec!["-7/3".to_string(), "1".to_string()]);
    }
}
