//! Rigorous numerical evaluation of MZVs.
//!
//! The main routine splits the iterated integral of the index word at `1/2`
//! (Hölder convolution):
//!
//! ```text
//! ζ(w) = Σ_{j=0}^{m} L(w₁⋯w_j; ½) · L(dual(w_{j+1}⋯w_m); ½)
//! ```
//!
//! where `L(Y X^{n₁−1} ⋯ Y X^{n_d−1}; x) = Σ_{ℓ₁<⋯<ℓ_d} x^{ℓ_d} / Π ℓᵢ^{nᵢ}`
//! is a multiple polylogarithm. Every factor converges like `2^(−ℓ)`, so a
//! `P`-bit result needs about `P` terms. All arithmetic is fixed point on
//! big integers with floor division, and each rounding is tracked in units
//! of the last place.
//!
//! [`zeta_naive`] truncates the defining series directly in `f64` and serves
//! as an independent oracle.

use std::collections::{BTreeSet, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{MzvExpr, ProductExpr};
use crate::bigreal::{bits_for_tolerance, pow2_neg, BigReal};
use crate::error::{Error, Result};
use crate::indices::{index_to_word, Index, Letter};

/// Smallest supported target: `2^(−FLOOR_BITS)`.
pub const FLOOR_BITS: u32 = 2000;

/// A value together with a proven bound on its absolute error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    pub value: BigReal,
    pub abs_err: BigRational,
}

impl EvalResult {
    pub fn exact(value: BigReal) -> Self {
        EvalResult {
            value,
            abs_err: BigRational::zero(),
        }
    }

    /// Whether `x` lies inside `value ± abs_err`.
    pub fn contains(&self, x: &BigRational) -> bool {
        (self.value.to_rational() - x).abs() <= self.abs_err
    }

    /// Whether the two enclosures overlap.
    pub fn agrees_with(&self, other: &EvalResult) -> bool {
        self.abs_diff(other) <= &self.abs_err + &other.abs_err
    }

    pub fn abs_diff(&self, other: &EvalResult) -> BigRational {
        (self.value.to_rational() - other.value.to_rational()).abs()
    }
}

fn target_bits(target: &BigRational) -> Result<u32> {
    if !target.is_positive() {
        return Err(Error::OutOfRange("target error must be positive".into()));
    }
    if *target < pow2_neg(FLOOR_BITS) {
        return Err(Error::ToleranceTooSmall {
            floor_bits: FLOOR_BITS,
        });
    }
    Ok(bits_for_tolerance(target))
}

fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Extra working bits for a result accurate to `2^(−bits)`.
///
/// `g = ⌈log₂ 2(m+1)⌉ + max(d−1, 1)·⌈log₂ N⌉ + 4`, with `m` the weight, `d`
/// the largest depth of any sub-word and `N ≈ bits + 64` the series length.
/// Each of the `m+1` convolution products carries level errors that grow
/// at most like `N^{d−1}` ulps; the trailing 4 bits absorb the final
/// rounding and the tail.
pub fn guard_bits(index: &Index, bits: u32) -> u32 {
    let m = index.weight();
    let d = index.depth().max(m as usize - index.depth()) as u32;
    let n_est = u64::from(bits) + 64;
    ceil_log2(2 * (m + 1)) + (d.saturating_sub(1)).max(1) * ceil_log2(n_est) + 4
}

/// Number of series terms so that the neglected tail of a depth-`d`
/// polylogarithm at `½` is at most `2^(−prec)`.
///
/// With `C(L) ≤ L^{d−1}` for the inner sums, the tail after `N` terms is
/// below `Σ_{L>N} L^{d−1} 2^{−L} ≤ 4 (N+1)^{d−1} 2^{−(N+1)}` as soon as
/// `N+1 ≥ 3(d−1)`, because consecutive terms then shrink by at least
/// `e^{1/3}/2 < 0.7`.
fn terms_needed(depth: usize, prec: u32) -> u64 {
    let k = depth.saturating_sub(1) as u32;
    let mut n = u64::from(prec).max(3 * u64::from(k));
    loop {
        let m = n + 1;
        // 4·m^k·2^prec ≤ 2^m
        let lhs = BigUint::from(m).pow(k) << (prec + 2);
        if lhs <= BigUint::one() << m {
            return n;
        }
        n += 1;
    }
}

fn word_parts(letters: &[Letter]) -> Vec<u32> {
    let mut parts: Vec<u32> = Vec::new();
    for letter in letters {
        match letter {
            Letter::Y => parts.push(1),
            Letter::X => *parts.last_mut().expect("sub-words start with Y") += 1,
        }
    }
    parts
}

/// `L(parts; ½) · 2^prec` rounded down, with an error bound in ulps.
fn polylog_half(parts: &[u32], prec: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << prec;
    if parts.is_empty() {
        return (one, BigInt::zero());
    }
    let d = parts.len();
    let terms = terms_needed(d, prec);
    // level i holds C_i(ℓ) = Σ_{ℓ₁<⋯<ℓᵢ≤ℓ} Π 1/ℓⱼ^{nⱼ}
    let mut level = vec![BigInt::zero(); d];
    let mut level_err = vec![BigInt::zero(); d];
    level[0] = one;
    let mut sum = BigInt::zero();
    let mut sum_err = BigInt::zero();
    for l in 1..=terms {
        for i in (1..=d).rev() {
            if level[i - 1].is_zero() && level_err[i - 1].is_zero() {
                continue;
            }
            let mut den = BigInt::from(l).pow(parts[i - 1]);
            if i == d {
                den <<= l;
            }
            let t = &level[i - 1] / &den;
            let te = level_err[i - 1].div_ceil(&den) + 1u32;
            if i == d {
                sum += t;
                sum_err += te;
            } else {
                level[i] += t;
                level_err[i] += te;
            }
        }
    }
    // the tail is at most one ulp
    (sum, sum_err + 1u32)
}

/// One attempt at working precision `bits + guard`. Returns `None` when the
/// accumulated rounding bound does not fit inside `2^(−bits)`.
fn zeta_attempt(index: &Index, bits: u32, guard: u32) -> Option<EvalResult> {
    let prec = bits + guard;
    let word = index_to_word(index);
    let letters = word.letters();
    let m = letters.len();
    let mut sum2 = BigInt::zero();
    let mut err2 = BigInt::zero();
    for j in 0..=m {
        let (a, ea) = polylog_half(&word_parts(&letters[..j]), prec);
        let dual_tail: Vec<Letter> = letters[j..].iter().rev().map(|l| l.swap()).collect();
        let (b, eb) = polylog_half(&word_parts(&dual_tail), prec);
        err2 += &ea * (&b + &eb) + &a * &eb;
        sum2 += a * b;
    }
    let value = &sum2 >> prec;
    let err_ulps = (err2 >> prec) + 2u32;
    if err_ulps > BigInt::one() << guard {
        return None;
    }
    Some(EvalResult {
        value: BigReal::from_scaled(value, prec),
        abs_err: pow2_neg(bits),
    })
}

fn zeta_at_bits(index: &Index, bits: u32) -> EvalResult {
    let mut guard = guard_bits(index, bits);
    loop {
        if let Some(r) = zeta_attempt(index, bits, guard) {
            return r;
        }
        guard += 16;
    }
}

/// `ζ(index)` with `abs_err ≤ target`.
///
/// The target is rounded down to a power of two `2^(−b)` and the reported
/// bound is exactly `2^(−b)`, so results depend only on `(index, b)`.
pub fn zeta(index: &Index, target: &BigRational) -> Result<EvalResult> {
    index.require_admissible()?;
    let bits = target_bits(target)?;
    Ok(zeta_at_bits(index, bits))
}

/// Direct truncation of the defining series at `ℓₙ ≤ cutoff`, in `f64`.
///
/// The returned bound is the integral-test tail (see [`naive_tail_bound`])
/// plus the floating-point rounding of the nested sums.
pub fn zeta_naive(index: &Index, cutoff: u64) -> Result<EvalResult> {
    index.require_admissible()?;
    if cutoff == 0 {
        return Err(Error::OutOfRange("cutoff must be positive".into()));
    }
    let parts = index.parts();
    let d = parts.len();
    let mut level = vec![0f64; d + 1];
    level[0] = 1.0;
    for l in 1..=cutoff {
        let x = l as f64;
        for i in (1..=d).rev() {
            if level[i - 1] == 0.0 {
                continue;
            }
            let mut p = x;
            for _ in 1..parts[i - 1] {
                p *= x;
            }
            level[i] += level[i - 1] / p;
        }
    }
    let value = level[d];
    // Every stored partial sum is a sum of at most d(N+1) roundings of
    // positive terms, each term carrying at most `weight` multiplications
    // and one division: relative error ≤ 2Ku with K = d(N+1) + weight.
    let k = d as f64 * (cutoff as f64 + 1.0) + index.weight() as f64;
    let u = f64::EPSILON / 2.0;
    let rounding = 2.0 * k * u * value + cutoff as f64 * 1e-300;
    let bound = (naive_tail_bound(index, cutoff) + rounding) * (1.0 + 2f64.powi(-40));
    let value = BigReal::from_f64_exact(value).expect("finite partial sum");
    let abs_err = BigReal::from_f64_exact(bound)
        .expect("finite bound")
        .to_rational();
    Ok(EvalResult { value, abs_err })
}

/// Bound on `Σ_{ℓₙ > N}` of the defining series of an admissible index.
///
/// With `s = αₙ ≥ 2` and `j = n−1`, the inner sum over `ℓ₁<⋯<ℓ_j<m` is at
/// most `H_{m}^j / j! ≤ (1+ln m)^j / j!`, so the tail is below
/// `Σ_{m>N} f(m)` with `f(m) = (1+ln m)^j / (j! m^s)`.
///
/// * `j = 0`: `f` is convex, so `f(m) ≤ ∫_{m−½}^{m+½} f` and the tail is at
///   most `(N+½)^{1−s}/(s−1)`.
/// * `j > 0`: `f` decreases once `1 + ln m ≥ j/s`. Let `A ≥ N` be the first
///   such integer. Terms `N < m ≤ A` are summed explicitly; the rest are
///   below `∫_A^∞ f = A^{1−s} Σ_{r=0}^{j} U^r / (r! (s−1)^{j−r+1})` with
///   `U = 1 + ln A`.
pub fn naive_tail_bound(index: &Index, cutoff: u64) -> f64 {
    let parts = index.parts();
    let s = f64::from(*parts.last().expect("nonempty index"));
    let j = parts.len() - 1;
    let n = cutoff as f64;
    if j == 0 {
        return (n + 0.5).powf(1.0 - s) / (s - 1.0);
    }
    let j_fact: f64 = (1..=j).map(|i| i as f64).product();
    let f = |m: f64| (1.0 + m.ln()).powi(j as i32) / (j_fact * m.powf(s));
    let mut a = cutoff;
    while 1.0 + (a as f64).ln() < j as f64 / s {
        a += 1;
    }
    let explicit: f64 = (cutoff + 1..=a).map(|m| f(m as f64)).sum();
    let af = a as f64;
    let u = 1.0 + af.ln();
    let mut integral = 0.0;
    let mut u_pow = 1.0;
    let mut r_fact = 1.0;
    for r in 0..=j {
        if r > 0 {
            u_pow *= u;
            r_fact *= r as f64;
        }
        integral += u_pow / (r_fact * (s - 1.0).powi((j - r + 1) as i32));
    }
    explicit + af.powf(1.0 - s) * integral
}

/// One line of the on-disk cache:
/// `index;err_exponent;decimal_value;decimal_err`. Decimals are exact, so
/// a round trip reproduces the result bit for bit.
pub fn format_cache_line(index: &Index, bits: u32, result: &EvalResult) -> String {
    format!(
        "{};{};{};{}",
        index,
        bits,
        result.value.to_exact_decimal(),
        BigReal::from_scaled(BigInt::one(), bits).to_exact_decimal()
    )
}

pub fn parse_cache_line(line: &str) -> Result<(Index, u32, EvalResult)> {
    let fields: Vec<&str> = line.trim().split(';').collect();
    let [index, bits, value, err] = fields[..] else {
        return Err(Error::Parse(format!(
            "cache line needs 4 fields, got {}",
            fields.len()
        )));
    };
    let index: Index = index.parse()?;
    index.require_admissible()?;
    let bits: u32 = bits
        .parse()
        .map_err(|_| Error::Parse(format!("bad error exponent {bits:?}")))?;
    if bits > FLOOR_BITS {
        return Err(Error::Parse(format!("error exponent {bits} out of range")));
    }
    let value: BigReal = value.parse()?;
    let err: BigReal = err.parse()?;
    if err.to_rational() != pow2_neg(bits) {
        return Err(Error::Parse("error field does not match exponent".into()));
    }
    Ok((
        index,
        bits,
        EvalResult {
            value,
            abs_err: pow2_neg(bits),
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
}

/// Memoizing evaluator. Entries are keyed by `(index, b)` where `2^(−b)` is
/// the quantized target, so a hit returns exactly what a fresh computation
/// would.
pub struct Evaluator {
    cache: RwLock<HashMap<(Index, u32), EvalResult>>,
    file: Option<(PathBuf, Mutex<File>)>,
    workers: usize,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl Evaluator {
    pub fn new() -> Self {
        let workers = std::thread::available_parallelism()
            .map(|n| n.get().min(8))
            .unwrap_or(1);
        Evaluator {
            cache: RwLock::new(HashMap::new()),
            file: None,
            workers,
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    /// Loads `path` if it exists (malformed lines are skipped) and appends
    /// every newly computed value to it.
    pub fn with_cache_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let eval = Evaluator::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            let mut map = eval.cache.write().expect("cache lock");
            for line in reader.lines() {
                if let Ok((index, bits, result)) = parse_cache_line(&line?) {
                    map.insert((index, bits), result);
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Evaluator {
            file: Some((path.to_path_buf(), Mutex::new(file))),
            ..eval
        })
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn cache_path(&self) -> Option<&Path> {
        self.file.as_ref().map(|(p, _)| p.as_path())
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            entries: self.cache.read().expect("cache lock").len(),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    pub fn zeta(&self, index: &Index, target: &BigRational) -> Result<EvalResult> {
        index.require_admissible()?;
        let bits = target_bits(target)?;
        self.zeta_bits(index, bits)
    }

    fn zeta_bits(&self, index: &Index, bits: u32) -> Result<EvalResult> {
        let key = (index.clone(), bits);
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(hit.clone());
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let result = zeta_at_bits(index, bits);
        let mut map = self.cache.write().expect("cache lock");
        if map.insert(key, result.clone()).is_none() {
            if let Some((_, file)) = &self.file {
                let mut f = file.lock().expect("cache file lock");
                // a failed write only costs a recomputation next time
                let _ = writeln!(f, "{}", format_cache_line(index, bits, &result));
            }
        }
        Ok(result)
    }

    /// Evaluates distinct indices on up to `workers` threads. The output
    /// order follows `indices`.
    pub fn zeta_many(&self, indices: &[Index], target: &BigRational) -> Result<Vec<EvalResult>> {
        for index in indices {
            index.require_admissible()?;
        }
        let bits = target_bits(target)?;
        if self.workers <= 1 || indices.len() < 4 {
            return indices.iter().map(|i| self.zeta_bits(i, bits)).collect();
        }
        let chunk = indices.len().div_ceil(self.workers);
        std::thread::scope(|scope| {
            let handles: Vec<_> = indices
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        part.iter()
                            .map(|i| self.zeta_bits(i, bits))
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            let mut out = Vec::with_capacity(indices.len());
            for h in handles {
                out.extend(h.join().expect("evaluation thread panicked")?);
            }
            Ok(out)
        })
    }

    fn zeta_table<'a>(
        &self,
        indices: impl Iterator<Item = &'a Index>,
        target: &BigRational,
    ) -> Result<HashMap<Index, EvalResult>> {
        let distinct: Vec<Index> = indices
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let values = self.zeta_many(&distinct, target)?;
        Ok(distinct.into_iter().zip(values).collect())
    }

    /// `Σ cᵢ ζ(indexᵢ)` with `abs_err ≤ target`.
    ///
    /// Each zeta value gets `target / (2S)` with `S = Σ|cᵢ|`; non-integer
    /// products are rounded at a precision whose total rounding is below
    /// `target / 2`.
    pub fn eval_expr(&self, expr: &MzvExpr, target: &BigRational) -> Result<EvalResult> {
        target_bits(target)?;
        if expr.is_empty() {
            return Ok(EvalResult::exact(BigReal::zero(0)));
        }
        let s = expr.l1_norm();
        let per_zeta = target / (BigRational::from_integer(2.into()) * &s);
        let table = self.zeta_table(expr.terms().map(|(i, _)| i), &per_zeta)?;
        let scaled: Vec<(EvalResult, &BigRational)> = expr
            .terms()
            .map(|(index, c)| (table[index].clone(), c))
            .collect();
        Ok(combine(scaled, target))
    }

    /// `Σ c · Π ζ(indexⱼ)` with `abs_err ≤ target`. The error of each
    /// product is `Π(|ṽⱼ| + eⱼ) − Π|ṽⱼ|`, computed exactly.
    pub fn eval_product_expr(
        &self,
        expr: &ProductExpr,
        target: &BigRational,
    ) -> Result<EvalResult> {
        target_bits(target)?;
        if expr.is_empty() {
            return Ok(EvalResult::exact(BigReal::zero(0)));
        }
        let s = expr.l1_norm();
        let r = expr.terms().map(|(f, _)| f.len()).max().unwrap_or(0).max(1);
        // |ζ| < 2, so the product error is at most r·3^{r−1}·e per term
        let spread =
            BigRational::from_integer(BigInt::from(2 * r) * BigInt::from(3).pow(r as u32 - 1));
        let mut per_factor = target / (spread * &s);
        loop {
            let table = self.zeta_table(expr.terms().flat_map(|(f, _)| f.iter()), &per_factor)?;
            let products: Vec<(EvalResult, &BigRational)> = expr
                .terms()
                .map(|(factors, c)| (product(factors.iter().map(|i| &table[i])), c))
                .collect();
            let half = target / BigRational::from_integer(2.into());
            let spent: BigRational = products.iter().map(|(p, c)| &p.abs_err * c.abs()).sum();
            if spent <= half {
                return Ok(combine(products, target));
            }
            per_factor /= BigRational::from_integer(16.into());
        }
    }
}

fn product<'a>(factors: impl Iterator<Item = &'a EvalResult>) -> EvalResult {
    let mut value = BigReal::from_integer(1, 0);
    let mut upper = BigRational::one();
    let mut lower = BigRational::one();
    for f in factors {
        value = value.mul_exact(&f.value);
        let mag = f.value.to_rational().abs();
        upper *= &mag + &f.abs_err;
        lower *= mag;
    }
    EvalResult {
        value,
        abs_err: upper - lower,
    }
}

/// `Σ cᵢ ṽᵢ`: integer coefficients multiply exactly; others are rounded
/// down on a grid fine enough that all roundings together stay below
/// `target / 2`.
fn combine(terms: Vec<(EvalResult, &BigRational)>, target: &BigRational) -> EvalResult {
    let inexact = terms.iter().filter(|(_, c)| !c.is_integer()).count();
    let grid_bits = if inexact == 0 {
        0
    } else {
        bits_for_tolerance(&(target / BigRational::from_integer(BigInt::from(2 * inexact))))
    };
    let mut value = BigReal::zero(0);
    let mut err = BigRational::zero();
    for (r, c) in terms {
        err += &r.abs_err * c.abs();
        let term = if c.is_integer() {
            r.value.mul_exact(&BigReal::from_scaled(c.to_integer(), 0))
        } else {
            err += pow2_neg(grid_bits);
            r.value.mul_rational_floor(c, grid_bits)
        };
        value = value.add(&term);
    }
    EvalResult {
        value,
        abs_err: err,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::pow10_neg;
    use crate::indices::compositions;

    fn idx(parts: &[u32]) -> Index {
        Index::new(parts.to_vec()).unwrap()
    }

    const PI_SQ_OVER_6: &str = "1.6449340668482264364724151666460251892189499012068";

    fn dec(s: &str) -> BigRational {
        let (i, f) = s.split_once('.').unwrap();
        let num: BigInt = format!("{i}{f}").parse().unwrap();
        BigRational::new(num, BigInt::from(10).pow(f.len() as u32))
    }

    #[test]
    fn zeta_two() {
        let r = zeta(&idx(&[2]), &pow10_neg(30)).unwrap();
        assert!(r.abs_err <= pow10_neg(30));
        let reference = dec(PI_SQ_OVER_6);
        assert!((r.value.to_rational() - reference).abs() <= &r.abs_err + pow10_neg(49));
        assert!(r
            .value
            .to_decimal(30)
            .starts_with("1.644934066848226436472415166646"));
    }

    #[test]
    fn euler_identity() {
        let t = pow10_neg(30);
        let a = zeta(&idx(&[1, 2]), &t).unwrap();
        let b = zeta(&idx(&[3]), &t).unwrap();
        assert!(a.abs_diff(&b) <= BigRational::from_integer(2.into()) * &t);
    }

    #[test]
    fn first_attempt_suffices() {
        for w in 2..=10u32 {
            for d in 1..w as usize {
                for c in compositions(w - 1, d).unwrap() {
                    let mut parts = c.parts().to_vec();
                    *parts.last_mut().unwrap() += 1;
                    let index = idx(&parts);
                    for bits in [8, 67, 200] {
                        assert!(
                            zeta_attempt(&index, bits, guard_bits(&index, bits)).is_some(),
                            "{index} at {bits} bits"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn terms_cover_tail() {
        for d in 1..12 {
            for prec in [10, 100, 1000] {
                let n = terms_needed(d, prec);
                assert!(n + 1 >= 3 * (d as u64 - 1));
                let lhs = BigUint::from(n + 1).pow(d as u32 - 1) << (prec + 2);
                assert!(lhs <= BigUint::one() << (n + 1));
            }
        }
    }

    #[test]
    fn rejects_bad_targets() {
        assert!(matches!(
            zeta(&idx(&[2]), &pow2_neg(2001)),
            Err(Error::ToleranceTooSmall { floor_bits: 2000 })
        ));
        assert!(zeta(&idx(&[2]), &BigRational::zero()).is_err());
        assert!(matches!(
            zeta(&idx(&[2, 1]), &pow10_neg(5)),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn deterministic_and_monotone() {
        let i = idx(&[1, 1, 3]);
        let a = zeta(&i, &pow10_neg(25)).unwrap();
        assert_eq!(a, zeta(&i, &pow10_neg(25)).unwrap());
        let b = zeta(&i, &pow10_neg(35)).unwrap();
        assert!(b.abs_err <= a.abs_err);
        assert!(a.agrees_with(&b));
    }

    #[test]
    fn naive_partial_sum() {
        let r = zeta_naive(&idx(&[2]), 1000).unwrap();
        assert!(r.value.to_decimal(11).starts_with("1.64393456668"));
        assert!(r.abs_err <= BigRational::new(1.into(), 1000.into()));
        assert!(r.contains(&dec(PI_SQ_OVER_6)));
        assert!(zeta_naive(&idx(&[2]), 0).is_err());
    }

    #[test]
    fn cache_line_round_trip() {
        let i = idx(&[1, 3]);
        let r = zeta(&i, &pow10_neg(20)).unwrap();
        let bits = bits_for_tolerance(&pow10_neg(20));
        let line = format_cache_line(&i, bits, &r);
        assert!(line.starts_with("1,3;67;0.2705808084277845478"));
        let (i2, b2, r2) = parse_cache_line(&line).unwrap();
        assert_eq!((i2, b2, r2), (i, bits, r));
        for bad in [
            "",
            "2;1;1.5",
            "2,1;1;0.5;0.5",
            "2;1;0.3;0.5",
            "2;2;0.5;0.5",
            "2;x;0.5;0.5",
        ] {
            assert!(parse_cache_line(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn cache_file_persists() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zeta.cache");
        let t = pow10_neg(20);
        let first = {
            let e = Evaluator::with_cache_file(&path).unwrap();
            e.zeta(&idx(&[3]), &t).unwrap()
        };
        std::fs::OpenOptions::new()
            .append(true)
            .open(&path)
            .and_then(|mut f| writeln!(f, "garbage line"))
            .unwrap();
        let e = Evaluator::with_cache_file(&path).unwrap();
        assert_eq!(e.stats().entries, 1);
        assert_eq!(e.zeta(&idx(&[3]), &t).unwrap(), first);
        assert_eq!(e.stats().hits, 1);
    }

    #[test]
    fn empty_expressions() {
        let e = Evaluator::new();
        let r = e.eval_expr(&MzvExpr::new(), &pow10_neg(10)).unwrap();
        assert!(r.value.to_rational().is_zero() && r.abs_err.is_zero());
        let mut one = ProductExpr::new();
        one.add_term(vec![], BigRational::one()).unwrap();
        let r = e.eval_product_expr(&one, &pow10_neg(10)).unwrap();
        assert_eq!(r.value.to_rational(), BigRational::one());
    }
}
