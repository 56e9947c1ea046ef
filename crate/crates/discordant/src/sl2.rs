//! Entry-bounded balls and congruence subgroups of SL₂(ℤ).
//!
//! SL₂(ℤ) is not amenable, so instead of Følner windows the density
//! analogue here averages over the balls Fₙ of matrices with all entries
//! bounded by n. Enumeration iterates coprime top rows and extends each by
//! the one-parameter family of bottom rows, which keeps the cost at
//! O(|Fₙ|) instead of O(n⁴); a brute-force scan cross-checks small balls.
//!
//! [`crt_split`] is the constructive splitting of SL₂(ℤ) across coprime
//! moduli: given a target T mod m it produces S ≡ T (mod m), S ≡ I (mod n)
//! with det S = 1, the step that shows Γ(m)Γ(n) = SL₂(ℤ).

use num_bigint::{BigInt, BigUint, Sign};
use rayon::prelude::*;

use crate::constructions::BSequence;
use crate::error::{Error, Result};

const BALL_BUDGET: i64 = 200;

/// An element of SL₂(ℤ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let m = Mat2 { a, b, c, d };
        if m.det() != 1 {
            return Err(Error::construction(format!(
                "determinant of [[{a},{b}],[{c},{d}]] is {} rather than 1",
                m.det()
            )));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mat2 {
            a: 1,
            b: 0,
            c: 0,
            d: 1,
        }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn max_entry(&self) -> i64 {
        self.a
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max(self.d.abs())
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }
}

/// The ball Fₙ = {M ∈ SL₂(ℤ) : all entries bounded by n}.
#[derive(Clone, Debug)]
pub struct Sl2Ball {
    pub n: i64,
    pub members: Vec<Mat2>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Extended Euclid: returns (g, x, y) with a·x + b·y = g = gcd(a, b).
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let r = a.rem_euclid(b);
        let (g, x, y) = ext_gcd(b, r);
        let q = (a - r) / b;
        (g, y, x - q * y)
    }
}

/// Complete enumeration of Fₙ.
///
/// For each coprime top row (a, b) the bottom rows with ad − bc = 1 form
/// the family {(c₀ + ma, d₀ + mb) : m ∈ ℤ}; only the m keeping both
/// entries inside the bound survive.
pub fn enumerate_ball(n: i64) -> Result<Sl2Ball> {
    if !(1..=BALL_BUDGET).contains(&n) {
        return Err(Error::budget(format!(
            "ball bound {n} outside the supported range 1..={BALL_BUDGET}"
        )));
    }
    let members: Vec<Mat2> = (-n..=n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut strip = Vec::new();
            for b in -n..=n {
                if gcd(a, b) != 1 {
                    continue;
                }
                let (g, u, v) = ext_gcd(a, b);
                debug_assert_eq!(g, 1);
                // a·u + b·v = 1, so (c₀, d₀) = (−v, u) solves ad − bc = 1
                let (c0, d0) = (-v, u);
                // m-range keeping c₀+ma within bound (None = unconstrained)
                let range_for = |base: i64, step: i64| -> Option<(i64, i64)> {
                    if step == 0 {
                        if base.abs() <= n {
                            None
                        } else {
                            Some((1, 0))
                        }
                    } else {
                        let (mut lo, mut hi) = if step > 0 {
                            ((-n - base).div_euclid(step), (n - base).div_euclid(step))
                        } else {
                            ((n - base).div_euclid(step), (-n - base).div_euclid(step))
                        };
                        while lo <= hi && (base + lo * step).abs() > n {
                            lo += 1;
                        }
                        while lo <= hi && (base + hi * step).abs() > n {
                            hi -= 1;
                        }
                        Some((lo, hi))
                    }
                };
                let rc = range_for(c0, a);
                let rd = range_for(d0, b);
                let (lo, hi) = match (rc, rd) {
                    (Some((l1, h1)), Some((l2, h2))) => (l1.max(l2), h1.min(h2)),
                    (Some(r), None) | (None, Some(r)) => r,
                    (None, None) => unreachable!("(a, b) = (0, 0) has gcd 0"),
                };
                for m in lo..=hi {
                    let mat = Mat2 {
                        a,
                        b,
                        c: c0 + m * a,
                        d: d0 + m * b,
                    };
                    debug_assert_eq!(mat.det(), 1);
                    debug_assert!(mat.max_entry() <= n);
                    strip.push(mat);
                }
            }
            strip
        })
        .collect();
    Ok(Sl2Ball { n, members })
}

/// O(n⁴) reference enumeration for small n.
pub fn brute_force_ball(n: i64) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in -n..=n {
        for b in -n..=n {
            for c in -n..=n {
                for d in -n..=n {
                    if a * d - b * c == 1 {
                        out.push(Mat2 { a, b, c, d });
                    }
                }
            }
        }
    }
    out
}

/// |Fₙ| against the asymptotic lower bound (12/π²)n². The bound is only
/// promised from some threshold on, so the report carries the comparison
/// rather than asserting it.
#[derive(Clone, Debug)]
pub struct BallBoundReport {
    pub n: i64,
    pub ball_size: usize,
    pub lower_bound: f64,
    pub holds: bool,
}

pub fn ball_lower_bound_check(n: i64) -> Result<BallBoundReport> {
    let ball = enumerate_ball(n)?;
    let bound = 12.0 / std::f64::consts::PI.powi(2) * (n * n) as f64;
    Ok(BallBoundReport {
        n,
        ball_size: ball.members.len(),
        lower_bound: bound,
        holds: ball.members.len() as f64 >= bound,
    })
}

/// Membership in the principal congruence subgroup Γ(k): entrywise
/// congruent to the identity mod k.
pub fn gamma_membership(m: &Mat2, k: i64) -> bool {
    debug_assert!(k >= 2);
    m.a.rem_euclid(k) == 1
        && m.d.rem_euclid(k) == 1
        && m.b.rem_euclid(k) == 0
        && m.c.rem_euclid(k) == 0
}

/// |Γ(k) ∩ Fₙ| against the bound (96/k²)n², valid for all n ≥ k.
#[derive(Clone, Debug)]
pub struct GammaBoundReport {
    pub k: i64,
    pub n: i64,
    pub count: usize,
    pub upper_bound: f64,
    pub holds: bool,
}

pub fn gamma_count_bound_check(k: i64, n: i64) -> Result<GammaBoundReport> {
    if k < 2 {
        return Err(Error::argument("congruence level k must be >= 2"));
    }
    if n < k {
        return Err(Error::argument(format!(
            "the Γ(k) ball bound requires n >= k (got k={k}, n={n})"
        )));
    }
    let ball = enumerate_ball(n)?;
    let count = ball
        .members
        .iter()
        .filter(|m| gamma_membership(m, k))
        .count();
    let bound = 96.0 / (k * k) as f64 * (n * n) as f64;
    Ok(GammaBoundReport {
        k,
        n,
        count,
        upper_bound: bound,
        holds: (count as f64) <= bound,
    })
}

/// One ball of the congruence-complement density scan.
#[derive(Clone, Debug)]
pub struct CongruenceDensityEntry {
    pub n: i64,
    pub ball_size: usize,
    pub excluded: usize,
    pub ratio: f64,
    /// 1 − Σ 8π²/bₘ², the proven asymptotic lower bound for the density.
    pub lower_bound: f64,
}

/// Ratios |A ∩ Fₙ|/|Fₙ| for A = SL₂(ℤ) \ ⋃ Γ(bₘ).
pub fn congruence_complement_density(
    b: &BSequence,
    n_range: &[i64],
) -> Result<Vec<CongruenceDensityEntry>> {
    let lower_bound = 1.0
        - b.terms()
            .iter()
            .map(|&m| 8.0 * std::f64::consts::PI.powi(2) / (m * m) as f64)
            .sum::<f64>();
    let mut out = Vec::with_capacity(n_range.len());
    for &n in n_range {
        let ball = enumerate_ball(n)?;
        let excluded = ball
            .members
            .iter()
            .filter(|m| b.terms().iter().any(|&k| gamma_membership(m, k)))
            .count();
        out.push(CongruenceDensityEntry {
            n,
            ball_size: ball.members.len(),
            excluded,
            ratio: 1.0 - excluded as f64 / ball.members.len() as f64,
            lower_bound,
        });
    }
    Ok(out)
}

/// A target matrix given by residues mod m; the determinant must be
/// 1 mod m but the lift need not be in SL₂(ℤ).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mat2Residue {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl From<Mat2> for Mat2Residue {
    fn from(m: Mat2) -> Self {
        Mat2Residue {
            a: m.a,
            b: m.b,
            c: m.c,
            d: m.d,
        }
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn to_i64(v: &BigInt, what: &str) -> Result<i64> {
    i64::try_from(v.clone()).map_err(|_| {
        Error::construction(format!(
            "crt_split {what} entry {v} exceeds i64; choose smaller moduli"
        ))
    })
}

/// Product of the distinct primes dividing `a` but not `b` (1 when none).
fn prime_selector(a: &BigInt, b: &BigInt) -> BigInt {
    let mut rest: BigUint = a.magnitude().clone();
    let mut q = big(1);
    let zero = BigUint::from(0u32);
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        if &rest % &p == zero {
            while &rest % &p == zero {
                rest /= &p;
            }
            let pb = BigInt::from_biguint(Sign::Plus, p.clone());
            if b % &pb != big(0) {
                q *= &pb;
            }
        }
        p += 1u32;
    }
    if rest > BigUint::from(1u32) {
        let pb = BigInt::from_biguint(Sign::Plus, rest);
        if b % &pb != big(0) {
            q *= &pb;
        }
    }
    q
}

fn big_ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if *b == big(0) {
        if *a < big(0) {
            (-a.clone(), big(-1), big(0))
        } else {
            (a.clone(), big(1), big(0))
        }
    } else {
        let r = ((a % b) + b) % b;
        let (g, x, y) = big_ext_gcd(b, &r);
        let q = (a - &r) / b;
        (g, y.clone(), x - q * y)
    }
}

/// Constructive splitting across coprime moduli: S ∈ SL₂(ℤ) with
/// S ≡ T (mod m) and S ≡ I (mod n).
///
/// Follows the Bezout blend S' = [[mx+any, bny], [cny, mx+dny]], repairs
/// coprimality of the top row with the prime selector q, then corrects the
/// determinant with a bottom-row adjustment. Internals run in arbitrary
/// precision; the result is converted back to i64 with overflow detected,
/// and every output is re-verified against all three conditions before
/// being returned.
pub fn crt_split(t: &Mat2Residue, m: i64, n: i64) -> Result<Mat2> {
    if m < 2 || n < 2 {
        return Err(Error::argument("moduli must be >= 2"));
    }
    if gcd(m, n) != 1 {
        return Err(Error::argument(format!(
            "moduli {m} and {n} are not coprime"
        )));
    }
    let (a, b, c, d) = (
        t.a.rem_euclid(m),
        t.b.rem_euclid(m),
        t.c.rem_euclid(m),
        t.d.rem_euclid(m),
    );
    if (a * d - b * c).rem_euclid(m) != 1 % m {
        return Err(Error::argument(format!(
            "target determinant is not 1 mod {m}"
        )));
    }
    let (g, x, y) = ext_gcd(m, n);
    debug_assert_eq!(g, 1);
    let mn = big(m) * big(n);
    let mx = big(m) * big(x);
    let ny = big(n) * big(y);

    // S' ≡ T (mod m), S' ≡ I (mod n), det S' ≡ 1 (mod mn)
    let a1 = &mx + big(a) * &ny;
    let b1 = big(b) * &ny;
    let c1 = big(c) * &ny;
    let d1 = &mx + big(d) * &ny;

    // a1 ≡ 1 (mod n) with n ≥ 2, so a1 ≠ 0 and the prime selector is sound
    debug_assert!(a1 != big(0));
    let q = prime_selector(&a1, &b1);
    let b2 = &b1 + &mn * &q;

    let (g2, u, v) = big_ext_gcd(&a1, &b2);
    if g2 != big(1) {
        return Err(Error::construction(
            "internal verification failure: repaired top row is not coprime",
        ));
    }
    let det2 = &a1 * &d1 - &b2 * &c1;
    let s = (&det2 - big(1)) / &mn;
    debug_assert_eq!(&det2 - big(1), &s * &mn);

    let c_out = &c1 + &mn * &s * &v;
    let d_out = &d1 - &mn * &s * &u;

    let result = Mat2 {
        a: to_i64(&a1, "a")?,
        b: to_i64(&b2, "b")?,
        c: to_i64(&c_out, "c")?,
        d: to_i64(&d_out, "d")?,
    };
    // full three-way verification, never silent
    let det = big(result.a) * big(result.d) - big(result.b) * big(result.c);
    let congruent_mod = |s: &Mat2, t: (i64, i64, i64, i64), k: i64| {
        s.a.rem_euclid(k) == t.0.rem_euclid(k)
            && s.b.rem_euclid(k) == t.1.rem_euclid(k)
            && s.c.rem_euclid(k) == t.2.rem_euclid(k)
            && s.d.rem_euclid(k) == t.3.rem_euclid(k)
    };
    if det != big(1)
        || !congruent_mod(&result, (a, b, c, d), m)
        || !congruent_mod(&result, (1, 0, 0, 1), n)
    {
        return Err(Error::construction(
            "internal verification failure: crt_split output fails a congruence or determinant check",
        ));
    }
    Ok(result)
}
