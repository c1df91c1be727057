//! Both sides of the two parametrized weighted sum formulas, the
//! specializations that lead to the weighted formula
//! `Σ 2^{α+1} ζ(…) = (2k+ℓ+5) ζ(k+ℓ+4)`, and a Monte-Carlo estimate of the
//! underlying integral.

mod mc;

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{MzvExpr, ProductExpr};
use crate::error::{Error, Result};
use crate::evaluator::Evaluator;
use crate::indices::{
    compositions, weak_compositions, BlockPattern, Index, T1_A, T1_B, T2_G1, T2_G2, T2_G3, T2_G4,
    T2_G5,
};
use crate::report::{Subject, VerifyReport};

pub use mc::{mc_integral, McEstimate};

/// Parameter values `μ = (μ₁,…)` and `ξ = (ξ₁,…)` of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamVector {
    mu: Vec<BigRational>,
    xi: Vec<BigRational>,
}

impl ParamVector {
    pub fn new(mu: Vec<BigRational>, xi: Vec<BigRational>) -> Result<Self> {
        if mu.len() != xi.len() || mu.is_empty() {
            return Err(Error::Arity {
                expected: mu.len().max(xi.len()).max(1),
                mu: mu.len(),
                xi: xi.len(),
            });
        }
        Ok(ParamVector { mu, xi })
    }

    pub fn mu(&self) -> &[BigRational] {
        &self.mu
    }

    pub fn xi(&self) -> &[BigRational] {
        &self.xi
    }

    pub fn arity(&self) -> usize {
        self.mu.len()
    }

    fn require_arity(&self, expected: usize) -> Result<()> {
        if self.arity() != expected {
            return Err(Error::Arity {
                expected,
                mu: self.mu.len(),
                xi: self.xi.len(),
            });
        }
        Ok(())
    }
}

/// Seeded random parameters: numerators in `[−9, 9]`, denominators in
/// `[1, 4]`, never an all-zero `μ` or `ξ`.
pub fn random_params(arity: usize, seed: u64) -> ParamVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let v: Vec<BigRational> = (0..arity)
            .map(|_| {
                BigRational::new(
                    BigInt::from(rng.random_range(-9i64..=9)),
                    BigInt::from(rng.random_range(1i64..=4)),
                )
            })
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    };
    let mu = draw(&mut rng);
    let xi = draw(&mut rng);
    ParamVector { mu, xi }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Two pairs of parameters, products of two zeta values.
    T1,
    /// Three pairs of parameters, products of three zeta values.
    T2,
}

impl Theorem {
    pub fn arity(self) -> usize {
        match self {
            Theorem::T1 => 2,
            Theorem::T2 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Theorem::T1 => "t1",
            Theorem::T2 => "t2",
        }
    }
}

/// One factor `(Σ_{i∈subset} μ_{σ(i)})^{Σ_{j∈slots} a_j}` of a coefficient
/// polynomial, together with its mirror in `ξ` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PFactor {
    pub subset: &'static [usize],
    pub slots: &'static [usize],
}

const fn pf(subset: &'static [usize], slots: &'static [usize]) -> PFactor {
    PFactor { subset, slots }
}

/// The fifteen coefficient polynomials `P₁,σ … P₁₅,σ`, 1-based subsets of
/// `{1,2,3}` and 1-based exponent slots.
pub const P_TABLE: [&[PFactor]; 15] = [
    // P1
    &[pf(&[1], &[1]), pf(&[2], &[2]), pf(&[3], &[3])],
    // P2
    &[
        pf(&[1], &[1]),
        pf(&[1, 2], &[2]),
        pf(&[2], &[3]),
        pf(&[3], &[4]),
    ],
    // P3
    &[pf(&[1], &[1, 3]), pf(&[1, 2], &[2]), pf(&[3], &[4])],
    // P4
    &[
        pf(&[1], &[1, 3]),
        pf(&[1, 2], &[2]),
        pf(&[1, 3], &[4]),
        pf(&[3], &[5]),
    ],
    // P5
    &[pf(&[1], &[1, 3, 5]), pf(&[1, 2], &[2]), pf(&[1, 3], &[4])],
    // P6
    &[
        pf(&[1], &[1]),
        pf(&[2], &[2]),
        pf(&[2, 3], &[3]),
        pf(&[3], &[4]),
    ],
    // P7
    &[
        pf(&[1], &[1]),
        pf(&[1, 2], &[2]),
        pf(&[2], &[3]),
        pf(&[2, 3], &[4]),
        pf(&[3], &[5]),
    ],
    // P8
    &[
        pf(&[1], &[1]),
        pf(&[1, 2], &[2]),
        pf(&[1, 2, 3], &[3]),
        pf(&[2, 3], &[4]),
        pf(&[3], &[5]),
    ],
    // P9
    &[
        pf(&[1], &[1]),
        pf(&[1, 2], &[2]),
        pf(&[1, 2, 3], &[3]),
        pf(&[1, 3], &[4]),
        pf(&[3], &[5]),
    ],
    // P10
    &[
        pf(&[1], &[1, 5]),
        pf(&[1, 2], &[2]),
        pf(&[1, 2, 3], &[3]),
        pf(&[1, 3], &[4]),
    ],
    // P11
    &[pf(&[1], &[1]), pf(&[2], &[2, 4]), pf(&[2, 3], &[3])],
    // P12
    &[
        pf(&[1], &[1]),
        pf(&[1, 2], &[2]),
        pf(&[2], &[3, 5]),
        pf(&[2, 3], &[4]),
    ],
    // P13
    &[
        pf(&[1], &[1]),
        pf(&[1, 2], &[2]),
        pf(&[1, 2, 3], &[3]),
        pf(&[2, 3], &[4]),
        pf(&[2], &[5]),
    ],
    // P14
    &[
        pf(&[1], &[1]),
        pf(&[1, 2], &[2, 4]),
        pf(&[1, 2, 3], &[3]),
        pf(&[2], &[5]),
    ],
    // P15
    &[
        pf(&[1], &[1, 5]),
        pf(&[1, 2], &[2, 4]),
        pf(&[1, 2, 3], &[3]),
    ],
];

/// Right-hand-side groups: shape and the `P` polynomials sharing it.
const T2_GROUPS: [(BlockPattern, &[usize]); 5] = [
    (T2_G1, &[1]),
    (T2_G2, &[2, 3]),
    (T2_G3, &[4, 5, 7, 12]),
    (T2_G4, &[6, 11]),
    (T2_G5, &[8, 9, 10, 13, 14, 15]),
];

/// All permutations of `{1, …, n}` for `n ≤ 3`, identity first.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    match n {
        2 => vec![vec![1, 2], vec![2, 1]],
        3 => vec![
            vec![1, 2, 3],
            vec![1, 3, 2],
            vec![2, 1, 3],
            vec![2, 3, 1],
            vec![3, 1, 2],
            vec![3, 2, 1],
        ],
        _ => vec![(1..=n).collect()],
    }
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Evaluates `P_{m,σ}` at the given exponents and parameters. `sigma` lists
/// `σ(1), σ(2), σ(3)`; missing trailing exponent slots count as zero.
pub fn p_coeff(
    m: usize,
    sigma: &[usize],
    a: &[u32],
    b: &[u32],
    params: &ParamVector,
) -> Result<BigRational> {
    params.require_arity(3)?;
    if !(1..=15).contains(&m) {
        return Err(Error::OutOfRange(format!("P index {m} not in 1..=15")));
    }
    let mut seen = [false; 3];
    if sigma.len() != 3
        || !sigma
            .iter()
            .all(|&s| (1..=3).contains(&s) && !std::mem::replace(&mut seen[s - 1], true))
    {
        return Err(Error::OutOfRange(format!(
            "{sigma:?} is not a permutation of 1..=3"
        )));
    }
    if a.len() > 5 || b.len() > 5 {
        return Err(Error::Shape("at most five exponent slots".into()));
    }
    let slot = |v: &[u32], j: usize| v.get(j - 1).copied().unwrap_or(0);
    let mut out = BigRational::one();
    for factor in P_TABLE[m - 1] {
        let mu: BigRational = factor
            .subset
            .iter()
            .map(|&i| &params.mu[sigma[i - 1] - 1])
            .sum();
        let xi: BigRational = factor
            .subset
            .iter()
            .map(|&i| &params.xi[sigma[i - 1] - 1])
            .sum();
        let ea: u32 = factor.slots.iter().map(|&j| slot(a, j)).sum();
        let eb: u32 = factor.slots.iter().map(|&j| slot(b, j)).sum();
        out *= pow(&mu, ea) * pow(&xi, eb);
    }
    // slots not named by the polynomial must be empty
    let used: Vec<usize> = P_TABLE[m - 1]
        .iter()
        .flat_map(|f| f.slots.iter().copied())
        .collect();
    for j in 1..=5 {
        if !used.contains(&j) && (slot(a, j) != 0 || slot(b, j) != 0) {
            return Err(Error::Shape(format!("P{m} has no slot {j}")));
        }
    }
    Ok(out)
}

/// Monomial `Π μᵢ^{aᵢ} ξᵢ^{bᵢ}`.
fn monomial(mu: &[&BigRational], xi: &[&BigRational], a: &[u32], b: &[u32]) -> BigRational {
    let mut out = BigRational::one();
    for i in 0..a.len() {
        out *= pow(mu[i], a[i]) * pow(xi[i], b[i]);
    }
    out
}

fn product_lhs(k: u32, l: u32, params: &ParamVector) -> Result<ProductExpr> {
    let n = params.arity();
    let mu: Vec<&BigRational> = params.mu.iter().collect();
    let xi: Vec<&BigRational> = params.xi.iter().collect();
    let mut out = ProductExpr::new();
    for a in weak_compositions(k, n) {
        for b in weak_compositions(l, n) {
            let factors = a
                .iter()
                .zip(&b)
                .map(|(x, y)| Index::new(vec![x + y + 2]))
                .collect::<Result<Vec<_>>>()?;
            out.add_term(factors, monomial(&mu, &xi, &a, &b))?;
        }
    }
    Ok(out)
}

fn add_pattern(
    out: &mut MzvExpr,
    pattern: &BlockPattern,
    a: &[u32],
    b: &[u32],
    c: &BigRational,
) -> Result<()> {
    if c.is_zero() {
        return Ok(());
    }
    for index in pattern.expand(a, b)? {
        out.add_term(index, c.clone())?;
    }
    Ok(())
}

/// `Σ_{a₁+a₂=k, b₁+b₂=ℓ} μ₁^{a₁}μ₂^{a₂}ξ₁^{b₁}ξ₂^{b₂} ζ(a₁+b₁+2)ζ(a₂+b₂+2)`
pub fn t1_lhs(k: u32, l: u32, params: &ParamVector) -> Result<ProductExpr> {
    params.require_arity(2)?;
    product_lhs(k, l, params)
}

/// Right side of the two-pair formula: over `σ ∈ 𝔖₂`, a two-block sum with
/// both blocks capped and a three-block sum whose last two blocks merge.
pub fn t1_rhs(k: u32, l: u32, params: &ParamVector) -> Result<MzvExpr> {
    params.require_arity(2)?;
    let mut out = MzvExpr::new();
    for a in weak_compositions(k, 2) {
        for b in weak_compositions(l, 2) {
            let c: BigRational = permutations(2)
                .iter()
                .map(|s| {
                    let mu = [&params.mu[s[0] - 1], &params.mu[s[1] - 1]];
                    let xi = [&params.xi[s[0] - 1], &params.xi[s[1] - 1]];
                    monomial(&mu, &xi, &a, &b)
                })
                .sum();
            add_pattern(&mut out, &T1_A, &a, &b, &c)?;
        }
    }
    for a in weak_compositions(k, 3) {
        for b in weak_compositions(l, 3) {
            let c: BigRational = permutations(2)
                .iter()
                .map(|s| {
                    let (m1, m2) = (&params.mu[s[0] - 1], &params.mu[s[1] - 1]);
                    let (x1, x2) = (&params.xi[s[0] - 1], &params.xi[s[1] - 1]);
                    pow(m1, a[0])
                        * pow(x1, b[0])
                        * pow(&(m1 + m2), a[1])
                        * pow(&(x1 + x2), b[1])
                        * (pow(m1, a[2]) * pow(x1, b[2]) + pow(m2, a[2]) * pow(x2, b[2]))
                })
                .sum();
            add_pattern(&mut out, &T1_B, &a, &b, &c)?;
        }
    }
    Ok(out)
}

/// `Σ_{a₁+a₂+a₃=k, b₁+b₂+b₃=ℓ} Π μᵢ^{aᵢ}ξᵢ^{bᵢ} ζ(aᵢ+bᵢ+2)`
pub fn t2_lhs(k: u32, l: u32, params: &ParamVector) -> Result<ProductExpr> {
    params.require_arity(3)?;
    product_lhs(k, l, params)
}

/// Right side of the three-pair formula: five shape groups, each weighted
/// by the sum of its `P` polynomials over `σ ∈ 𝔖₃`.
pub fn t2_rhs(k: u32, l: u32, params: &ParamVector) -> Result<MzvExpr> {
    params.require_arity(3)?;
    let perms = permutations(3);
    let mut out = MzvExpr::new();
    for (pattern, members) in T2_GROUPS {
        let slots = pattern.blocks();
        for a in weak_compositions(k, slots) {
            for b in weak_compositions(l, slots) {
                let mut c = BigRational::zero();
                for sigma in &perms {
                    for &m in members {
                        c += p_coeff(m, sigma, &a, &b, params)?;
                    }
                }
                add_pattern(&mut out, &pattern, &a, &b, &c)?;
            }
        }
    }
    Ok(out)
}

/// Evaluates both sides at `10^(−digits)` and compares them.
pub fn verify_theorem(
    which: Theorem,
    k: u32,
    l: u32,
    params: &ParamVector,
    digits: u32,
    evaluator: &Evaluator,
) -> Result<VerifyReport> {
    let started = Instant::now();
    params.require_arity(which.arity())?;
    let (lhs, rhs) = match which {
        Theorem::T1 => (t1_lhs(k, l, params)?, t1_rhs(k, l, params)?),
        Theorem::T2 => (t2_lhs(k, l, params)?, t2_rhs(k, l, params)?),
    };
    let subject = Subject {
        identity: which.name().to_string(),
        kl: Some((k, l)),
        params: Some(params),
    };
    VerifyReport::compare_product(subject, &lhs, &rhs, digits, evaluator, started)
}

/// Both sides of the two-pair formula at `ξ₁ = ξ₂`, after the harmonic
/// product has been applied to the left and the common `ξ^ℓ` removed.
pub fn eq_after_sides(
    k: u32,
    l: u32,
    mu1: &BigRational,
    mu2: &BigRational,
) -> Result<(MzvExpr, MzvExpr)> {
    let sym = |e1: u32, e2: u32| pow(mu1, e1) * pow(mu2, e2) + pow(mu2, e1) * pow(mu1, e2);
    let mut lhs = MzvExpr::new();
    let mut rhs = MzvExpr::new();
    let single: BigRational = weak_compositions(k, 2)
        .iter()
        .map(|a| pow(mu1, a[0]) * pow(mu2, a[1]))
        .sum();
    lhs.add_term(Index::new(vec![k + l + 4])?, int(i64::from(l) + 1) * single)?;
    for a in weak_compositions(k, 2) {
        for b in weak_compositions(l, 2) {
            let c = sym(a[0], a[1]);
            if !c.is_zero() {
                lhs.add_term(
                    Index::new(vec![a[1] + b[1] + 2, a[0] + b[0] + 2])?,
                    c.clone(),
                )?;
            }
            add_pattern(&mut rhs, &T1_A, &a, &b, &c)?;
        }
    }
    let two = int(2);
    for a in weak_compositions(k, 3) {
        for b in weak_compositions(l, 3) {
            let c = (pow(mu1, a[0]) + pow(mu2, a[0]))
                * pow(&(mu1 + mu2), a[1])
                * pow(&two, b[1])
                * (pow(mu1, a[2]) + pow(mu2, a[2]));
            add_pattern(&mut rhs, &T1_B, &a, &b, &c)?;
        }
    }
    Ok((lhs, rhs))
}

pub fn verify_eq_after(
    k: u32,
    l: u32,
    mu1: &BigRational,
    mu2: &BigRational,
    digits: u32,
    evaluator: &Evaluator,
) -> Result<VerifyReport> {
    let started = Instant::now();
    let (lhs, rhs) = eq_after_sides(k, l, mu1, mu2)?;
    let mut report = VerifyReport::compare_exprs(
        "eq-after".to_string(),
        Some((k, l)),
        &lhs,
        &rhs,
        digits,
        evaluator,
        started,
    )?;
    report.mu = vec![mu1, mu2]
        .into_iter()
        .map(crate::rational::format_rational)
        .collect();
    Ok(report)
}

/// `Σ_{|α|=k+ℓ+3} Σ_{j=0}^{k/2} 2^{α_{2j+1}+1} ζ(α₀, α₁, …, α_{k+1}+1)`
/// over compositions `α = (α₀,…,α_{k+1})`; defined for even `k`.
pub fn elo_lhs(k: u32, l: u32) -> Result<MzvExpr> {
    if !k.is_multiple_of(2) {
        return Err(Error::OutOfRange(format!("k must be even, got {k}")));
    }
    let mut out = MzvExpr::new();
    for comp in compositions(k + l + 3, k as usize + 2)? {
        let alpha = comp.parts();
        let c: BigInt = (0..=k as usize / 2)
            .map(|j| BigInt::one() << (alpha[2 * j + 1] + 1))
            .sum();
        let mut parts = alpha.to_vec();
        *parts.last_mut().expect("k+2 parts") += 1;
        out.add_term(Index::new(parts)?, BigRational::from_integer(c))?;
    }
    Ok(out)
}

/// Checks `elo_lhs(k, ℓ) = (2k+ℓ+5) ζ(k+ℓ+4)`.
pub fn verify_elo(k: u32, l: u32, digits: u32, evaluator: &Evaluator) -> Result<VerifyReport> {
    let started = Instant::now();
    let lhs = elo_lhs(k, l)?;
    let mut rhs = MzvExpr::new();
    rhs.add_term(
        Index::new(vec![k + l + 4])?,
        int(2 * i64::from(k) + i64::from(l) + 5),
    )?;
    VerifyReport::compare_exprs(
        "elo".to_string(),
        Some((k, l)),
        &lhs,
        &rhs,
        digits,
        evaluator,
        started,
    )
}
