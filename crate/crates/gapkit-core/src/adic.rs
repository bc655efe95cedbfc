//! Exact arithmetic on the torus closures generated by the frequency
//! kinds `η_k = 1/3^{k−1}` (triadic) and `η_k = 1/k` (reciprocal), the
//! avoiding offset `β`, and the finite-depth avoidance certificate.
//!
//! Everything here is exact `i128` rational arithmetic; the only
//! floating-point entry point is [`xi0_membership`], which classifies
//! numerically computed character sequences and is deliberately kept
//! separate from the exact layer.
//!
//! The key construction: the offset with `β_k = 2/9` for every `k`
//! (base-3 digits `0.02₃`) has the property that the "bad" arc
//! `{α : dist(α + 2/9, 0) < 1/9} = (2/3, 8/9)` is disjoint from its
//! image under the shift `α_{k} = 3·α_{k+1} mod 1`, which maps
//! `(2/3, 8/9)` onto `(0, 2/3)`.  Hence no torus element can violate
//! the `1/9` separation at two consecutive depths, and every element is
//! separated from `−β` by a full base-3 digit infinitely often.

#[allow(unused_imports)] // builds that link std shadow these trait methods
use crate::math::FloatExt;
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// An exact rational with `i128` parts, always reduced, `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rational {
    /// Numerator.
    pub num: i128,
    /// Denominator, positive.
    pub den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

impl Rational {
    /// Builds and reduces `num/den`.
    pub fn new(num: i128, den: i128) -> Result<Rational> {
        if den == 0 {
            return Err(Error::InvalidParameter("rational with zero denominator".into()));
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den);
        let g = if g == 0 { 1 } else { g };
        Ok(Rational {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    /// Zero.
    pub fn zero() -> Rational {
        Rational { num: 0, den: 1 }
    }

    /// An integer.
    pub fn integer(n: i128) -> Rational {
        Rational { num: n, den: 1 }
    }

    fn checked(num: Option<i128>, den: Option<i128>) -> Result<Rational> {
        match (num, den) {
            (Some(n), Some(d)) => Rational::new(n, d),
            _ => Err(Error::Overflow("i128 rational arithmetic overflow".into())),
        }
    }

    /// Exact sum.
    #[allow(clippy::should_implement_trait)] // fallible: overflow is an error
    pub fn add(self, o: Rational) -> Result<Rational> {
        Rational::checked(
            self.num
                .checked_mul(o.den)
                .and_then(|x| o.num.checked_mul(self.den).and_then(|y| x.checked_add(y))),
            self.den.checked_mul(o.den),
        )
    }

    /// Exact difference.
    #[allow(clippy::should_implement_trait)] // fallible: overflow is an error
    pub fn sub(self, o: Rational) -> Result<Rational> {
        self.add(Rational {
            num: -o.num,
            den: o.den,
        })
    }

    /// Exact product.
    #[allow(clippy::should_implement_trait)] // fallible: overflow is an error
    pub fn mul(self, o: Rational) -> Result<Rational> {
        Rational::checked(self.num.checked_mul(o.num), self.den.checked_mul(o.den))
    }

    /// Reduction into `[0, 1)`.
    pub fn mod1(self) -> Rational {
        let m = self.num.rem_euclid(self.den);
        // Already reduced: gcd(m, den) = gcd(num, den) = 1 or m = 0.
        if m == 0 {
            Rational::zero()
        } else {
            Rational {
                num: m,
                den: self.den,
            }
        }
    }

    /// `true` if this reduced rational is an integer.
    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    /// Comparison without division: `self < o`.
    pub fn lt(self, o: Rational) -> bool {
        // Denominators ≤ 3^30 or lcm(1..N): products stay inside i128.
        self.num * o.den < o.num * self.den
    }

    /// Distance to `0` on the circle `R/Z`: `min(frac, 1 − frac)`.
    pub fn circle_dist0(self) -> Rational {
        let f = self.mod1();
        let complement = Rational {
            num: f.den - f.num,
            den: f.den,
        };
        if f.lt(complement) {
            f
        } else {
            complement
        }
    }

    /// Float approximation (for reporting only).
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// A depth-`N` triadic integer: base-3 digits, lowest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAdic3 {
    /// Digits in `{0, 1, 2}`.
    pub digits: Vec<u8>,
}

/// Which frequency sequence generates the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EtaKind {
    /// `η_k = 1/3^{k−1}`.
    Triadic,
    /// `η_k = 1/k`.
    Reciprocal,
}

/// A depth-`N` element of the torus closure: exact coordinates
/// `α_k = η_k·x mod 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusElement {
    /// Generating kind.
    pub kind: EtaKind,
    /// Coordinates `α_1, …, α_N`.
    pub alpha: Vec<Rational>,
}

/// Samples the orbit point `α_k = η_k·x mod 1`, `k ≤ n`, exactly.
pub fn torus_sample(x: Rational, kind: EtaKind, n: usize) -> Result<TorusElement> {
    if n == 0 {
        return Err(Error::InvalidParameter("torus_sample needs depth ≥ 1".into()));
    }
    let mut alpha = Vec::with_capacity(n);
    for k in 1..=n {
        let eta = match kind {
            EtaKind::Triadic => {
                let mut d: i128 = 1;
                for _ in 1..k {
                    d = d
                        .checked_mul(3)
                        .ok_or(Error::Overflow("3^k overflow".into()))?;
                }
                Rational::new(1, d)?
            }
            EtaKind::Reciprocal => Rational::new(1, k as i128)?,
        };
        alpha.push(x.mul(eta)?.mod1());
    }
    Ok(TorusElement { kind, alpha })
}

/// Counts violations of the triadic shift consistency
/// `3·α_{k+1} = α_k mod 1`.
pub fn triadic_consistency(el: &TorusElement) -> Result<usize> {
    let mut bad = 0;
    for k in 0..el.alpha.len().saturating_sub(1) {
        let lhs = el.alpha[k + 1].mul(Rational::integer(3))?.mod1();
        if lhs != el.alpha[k].mod1() {
            bad += 1;
        }
    }
    Ok(bad)
}

/// Counts violations of the reciprocal-kind consistency
/// `n₁·α_{n₁n₂} = α_{n₂} mod 1` over all products `n₁·n₂ ≤ N`,
/// including the normalization `α₁ = 0`.
pub fn crt_consistency(el: &TorusElement) -> Result<usize> {
    let n = el.alpha.len();
    let mut bad = 0;
    if n >= 1 && el.alpha[0] != Rational::zero() {
        bad += 1;
    }
    for n1 in 2..=n {
        for n2 in 1..=n {
            let prod = n1 * n2;
            if prod > n {
                break;
            }
            let lhs = el.alpha[prod - 1]
                .mul(Rational::integer(n1 as i128))?
                .mod1();
            if lhs != el.alpha[n2 - 1].mod1() {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

/// Extracts the `3^k`-subsequence `α'_k = α_{3^{k−1}}` of a
/// reciprocal-kind element, which is a valid triadic element.
pub fn triadic_subsequence(el: &TorusElement) -> Result<TorusElement> {
    if el.kind != EtaKind::Reciprocal {
        return Err(Error::InvalidParameter(
            "triadic_subsequence expects a reciprocal-kind element".into(),
        ));
    }
    let mut alpha = Vec::new();
    let mut idx: usize = 1;
    while idx <= el.alpha.len() {
        alpha.push(el.alpha[idx - 1]);
        idx = idx.saturating_mul(3);
    }
    if alpha.len() < 2 {
        return Err(Error::InvalidParameter(
            "element too shallow for a triadic subsequence".into(),
        ));
    }
    Ok(TorusElement {
        kind: EtaKind::Triadic,
        alpha,
    })
}

/// Extracts the digit sequence `d_k = 3·α_{k+1} − α_k mod 3` of a
/// consistent triadic element (length `N − 1`).
pub fn triadic_digits(el: &TorusElement) -> Result<PAdic3> {
    let mut digits = Vec::new();
    for k in 0..el.alpha.len().saturating_sub(1) {
        let t = el.alpha[k + 1].mul(Rational::integer(3))?;
        let diff = t.sub(el.alpha[k])?;
        if !diff.is_integer() {
            return Err(Error::InvalidParameter(format!(
                "element is not shift-consistent at depth {}",
                k + 1
            )));
        }
        digits.push(diff.num.rem_euclid(3) as u8);
    }
    Ok(PAdic3 { digits })
}

/// The avoiding offset: `β_k = 2/9` for every `k ≤ n`, with its base-3
/// digit table `0.02₃` (so the second digit of `β_{k+1}` differs from
/// the first digit of `β_k` at every depth).
pub fn construct_avoiding_beta(n: usize) -> Result<(Vec<Rational>, Vec<PAdic3>)> {
    if n < 3 {
        return Err(Error::InvalidParameter(
            "avoiding offset needs depth ≥ 3".into(),
        ));
    }
    let b = Rational::new(2, 9)?;
    let beta = vec![b; n];
    let digits = vec![PAdic3 { digits: vec![0, 2] }; n];
    Ok((beta, digits))
}

/// One enumerated case of the avoidance certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceCase {
    /// Starting coordinate `α₁`.
    pub alpha1: Rational,
    /// The cycled digit block driving `α_{k+1} = (α_k + d_k)/3`.
    pub prefix: Vec<u8>,
    /// First depth `k` with `dist(α_k + β_k, 0) ≥ 1/9` (0 if none).
    pub first_hit: usize,
}

/// The finite-depth avoidance certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceCertificate {
    /// Depth checked.
    pub depth: usize,
    /// Separation threshold (1/9, one full base-3 digit).
    pub separation: Rational,
    /// Number of enumerated cases.
    pub cases: usize,
    /// Largest first-hit depth over all cases.
    pub worst_first_hit: usize,
    /// `true` when every case is separated at some depth ≤ `depth`.
    pub pass: bool,
    /// Failing cases, if any.
    pub failures: Vec<AvoidanceCase>,
}

/// Exhaustively certifies the separation bound at finite depth: for
/// every `α₁ ∈ {j/27}` and every digit block in `{0,1,2}⁶` (cycled to
/// extend the prefix), some `k ≤ depth` has
/// `dist(α_k + β_k, 0) ≥ 1/9`.
pub fn avoidance_certificate(beta: &[Rational], depth: usize) -> Result<AvoidanceCertificate> {
    if depth < 3 || beta.len() < depth {
        return Err(Error::InvalidParameter(format!(
            "certificate needs depth ≥ 3 and a β table of length ≥ depth, got {} and {}",
            depth,
            beta.len()
        )));
    }
    let threshold = Rational::new(1, 9)?;
    let mut cases = 0usize;
    let mut worst = 0usize;
    let mut failures = Vec::new();
    for a1_num in 0..27i128 {
        let alpha1 = Rational::new(a1_num, 27)?;
        for code in 0..3usize.pow(6) {
            let mut block = [0u8; 6];
            let mut c = code;
            for d in &mut block {
                *d = (c % 3) as u8;
                c /= 3;
            }
            cases += 1;
            let mut alpha = alpha1;
            let mut first_hit = 0usize;
            for k in 1..=depth {
                let d = alpha.add(beta[k - 1])?.circle_dist0();
                if !d.lt(threshold) {
                    first_hit = k;
                    break;
                }
                // α_{k+1} = (α_k + d_k)/3 with the block cycled.
                let digit = block[(k - 1) % 6];
                alpha = alpha
                    .add(Rational::integer(i128::from(digit)))?
                    .mul(Rational::new(1, 3)?)?
                    .mod1();
            }
            if first_hit == 0 {
                failures.push(AvoidanceCase {
                    alpha1,
                    prefix: block.to_vec(),
                    first_hit: 0,
                });
            } else if first_hit > worst {
                worst = first_hit;
            }
        }
    }
    Ok(AvoidanceCertificate {
        depth,
        separation: threshold,
        cases,
        worst_first_hit: worst,
        pass: failures.is_empty(),
        failures,
    })
}

/// Verdict of the model-singular-set membership test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Xi0Verdict {
    /// All tail coordinates within tolerance of 0.
    Consistent,
    /// Witness depth where the tail leaves the tolerance.
    Excluded {
        /// First offending depth in `[K/2, K]`.
        witness: usize,
        /// Circle distance observed there.
        distance: f64,
    },
}

/// Classifies a numerically computed character sequence against the
/// model singular set: consistent when
/// `max_{K/2 ≤ k ≤ K} dist(α_k, 0) ≤ tol`.
///
/// This is the single floating-point operation of the module; it exists
/// to grade Abel-map images, which are numerical data.
pub fn xi0_membership(alpha: &[f64], tol: f64, k_max: usize) -> Result<Xi0Verdict> {
    if alpha.len() < k_max || k_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "xi0_membership needs K ≥ 2 coordinates, got {} for K = {k_max}",
            alpha.len()
        )));
    }
    for k in k_max.div_ceil(2)..=k_max {
        let frac = alpha[k - 1] - alpha[k - 1].floor();
        let d = if frac > 0.5 { 1.0 - frac } else { frac };
        if d > tol {
            return Ok(Xi0Verdict::Excluded {
                witness: k,
                distance: d,
            });
        }
    }
    Ok(Xi0Verdict::Consistent)
}

/// Brute-force coverage check of the triadic orbit: for `n ≤ 7`, the
/// integer samples `x = 0..3^{n−1}` hit all `3^{n−1}` digit prefixes,
/// each with `α₁ = 0`.
pub fn prefix_coverage(n: usize) -> Result<bool> {
    if !(2..=7).contains(&n) {
        return Err(Error::InvalidParameter(
            "prefix coverage is brute-forced only for 2 ≤ n ≤ 7".into(),
        ));
    }
    let count = 3usize.pow((n - 1) as u32);
    let mut seen = vec![false; count];
    for x in 0..count {
        let el = torus_sample(Rational::integer(x as i128), EtaKind::Triadic, n)?;
        if el.alpha[0] != Rational::zero() {
            return Ok(false);
        }
        let digits = triadic_digits(&el)?;
        let mut code = 0usize;
        for &d in digits.digits.iter().rev() {
            code = code * 3 + d as usize;
        }
        if seen[code] {
            return Ok(false);
        }
        seen[code] = true;
    }
    Ok(seen.iter().all(|&s| s))
}

/// Diagnostic partial sums of `Σ α_k/k` (reported, never interpreted).
pub fn partial_sum_report(alpha: &[f64]) -> (Vec<f64>, f64) {
    let mut sums = Vec::with_capacity(alpha.len());
    let mut acc = 0.0;
    for (i, &a) in alpha.iter().enumerate() {
        acc += a / (i + 1) as f64;
        sums.push(acc);
    }
    let lo = sums.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = sums.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (sums, hi - lo)
}

/// Human-readable digit string of a rational in base 3 (for reports).
pub fn base3_string(x: Rational, digits: usize) -> String {
    let mut s = String::from("0.");
    let mut cur = x.mod1();
    for _ in 0..digits {
        let t = Rational {
            num: cur.num * 3,
            den: cur.den,
        };
        let d = t.num.div_euclid(t.den);
        s.push(char::from(b'0' + (d as u8)));
        cur = t.mod1();
    }
    s
}
