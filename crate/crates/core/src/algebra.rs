//! Formal rational linear combinations of MZVs and the classical relations
//! among them: harmonic (stuffle) product, sum formula, Ohno's relation and
//! duality.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::evaluator::Evaluator;
use crate::indices::{compositions, dual, weak_compositions, Index};
use crate::rational::parse_rational;
use crate::report::VerifyReport;

/// `Σ cᵢ ζ(indexᵢ)` with exact rational coefficients.
///
/// Every index is admissible and no zero coefficient is stored. Terms are
/// kept in lexicographic order of their parts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MzvExpr {
    terms: BTreeMap<Index, BigRational>,
}

impl MzvExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeta(index: Index) -> Result<Self> {
        let mut expr = MzvExpr::new();
        expr.add_term(index, BigRational::one())?;
        Ok(expr)
    }

    pub fn add_term(&mut self, index: Index, coeff: BigRational) -> Result<()> {
        index.require_admissible()?;
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(index).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            // re-borrow to remove the cancelled entry
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Index, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &Index) -> BigRational {
        self.terms
            .get(index)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &BigRational) -> MzvExpr {
        if c.is_zero() {
            return MzvExpr::new();
        }
        MzvExpr {
            terms: self.terms.iter().map(|(i, v)| (i.clone(), v * c)).collect(),
        }
    }

    pub fn add_expr(&mut self, other: &MzvExpr) {
        for (index, c) in &other.terms {
            let slot = self
                .terms
                .entry(index.clone())
                .or_insert_with(BigRational::zero);
            *slot += c;
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn sub_expr(&mut self, other: &MzvExpr) {
        self.add_expr(&other.scaled(&-BigRational::one()));
    }

    /// `Σ |cᵢ|`
    pub fn l1_norm(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigRational,
    body: impl FnOnce(&mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if c.is_negative() {
        f.write_str("-")?;
    } else if !first {
        f.write_str("+")?;
    }
    write_coeff(f, &c.abs())?;
    body(f)
}

/// Text form `c1*z(i1)+c2*z(i2)+…`, e.g. `2*z(2,2)+1*z(4)`; the empty
/// expression renders as `0`.
impl fmt::Display for MzvExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (index, c)) in self.terms.iter().enumerate() {
            write_signed_term(f, i == 0, c, |f| write!(f, "*z({index})"))?;
        }
        Ok(())
    }
}

impl FromStr for MzvExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut expr = MzvExpr::new();
        if compact == "0" {
            return Ok(expr);
        }
        for (coeff, factors) in parse_terms(&compact)? {
            let [index]: [Index; 1] = factors.try_into().map_err(|f: Vec<Index>| {
                Error::Parse(format!(
                    "expected one zeta factor per term, got {}",
                    f.len()
                ))
            })?;
            expr.add_term(index, coeff)?;
        }
        Ok(expr)
    }
}

/// Splits `±c*z(..)*z(..)±…` into `(signed coefficient, factors)`.
fn parse_terms(s: &str) -> Result<Vec<(BigRational, Vec<Index>)>> {
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let negative = match bytes[pos] {
            b'-' => {
                pos += 1;
                true
            }
            b'+' if pos > 0 => {
                pos += 1;
                false
            }
            _ if pos == 0 => false,
            other => {
                return Err(Error::Parse(format!(
                    "expected '+' or '-' at byte {pos}, found {:?}",
                    other as char
                )))
            }
        };
        let star = s[pos..]
            .find('*')
            .ok_or_else(|| Error::Parse("term is missing '*z(...)'".into()))?;
        let coeff_text = &s[pos..pos + star];
        if coeff_text.starts_with(['+', '-']) {
            return Err(Error::Parse(format!("doubled sign in {coeff_text:?}")));
        }
        let mut coeff = parse_rational(coeff_text)?;
        if negative {
            coeff = -coeff;
        }
        pos += star;
        let mut factors = Vec::new();
        while s[pos..].starts_with("*z(") {
            pos += 3;
            let close = s[pos..]
                .find(')')
                .ok_or_else(|| Error::Parse("unclosed z(".into()))?;
            factors.push(s[pos..pos + close].parse::<Index>()?);
            pos += close + 1;
        }
        if factors.is_empty() {
            return Err(Error::Parse("term has no z(...) factor".into()));
        }
        out.push((coeff, factors));
    }
    Ok(out)
}

/// `Σ c · Π ζ(indexⱼ)` over multisets of admissible indices. Each multiset
/// is stored sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProductExpr {
    terms: BTreeMap<Vec<Index>, BigRational>,
}

impl ProductExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, mut factors: Vec<Index>, coeff: BigRational) -> Result<()> {
        for f in &factors {
            f.require_admissible()?;
        }
        if coeff.is_zero() {
            return Ok(());
        }
        factors.sort();
        let slot = self.terms.entry(factors).or_insert_with(BigRational::zero);
        *slot += coeff;
        self.terms.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Index>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, factors: &[Index]) -> BigRational {
        let mut key = factors.to_vec();
        key.sort();
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn l1_norm(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

impl fmt::Display for ProductExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (factors, c)) in self.terms.iter().enumerate() {
            write_signed_term(f, i == 0, c, |f| {
                for index in factors {
                    write!(f, "*z({index})")?;
                }
                Ok(())
            })?;
        }
        Ok(())
    }
}

impl FromStr for ProductExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut expr = ProductExpr::new();
        if compact == "0" {
            return Ok(expr);
        }
        for (coeff, factors) in parse_terms(&compact)? {
            expr.add_term(factors, coeff)?;
        }
        Ok(expr)
    }
}

/// Quasi-shuffle of two sequences written largest-variable-first. The
/// leading entry of each result is chosen from `a`, from `b`, or as the sum
/// of both leading entries.
fn stuffle_reversed(a: &[u32], b: &[u32]) -> BTreeMap<Vec<u32>, u64> {
    let mut out = BTreeMap::new();
    if a.is_empty() || b.is_empty() {
        out.insert(if a.is_empty() { b } else { a }.to_vec(), 1);
        return out;
    }
    let mut prepend = |head: u32, tail: BTreeMap<Vec<u32>, u64>| {
        for (seq, mult) in tail {
            let mut word = Vec::with_capacity(seq.len() + 1);
            word.push(head);
            word.extend(seq);
            *out.entry(word).or_insert(0) += mult;
        }
    };
    prepend(a[0], stuffle_reversed(&a[1..], b));
    prepend(b[0], stuffle_reversed(a, &b[1..]));
    prepend(a[0] + b[0], stuffle_reversed(&a[1..], &b[1..]));
    out
}

/// Harmonic product `ζ(left)·ζ(right)` expanded as a sum of MZVs,
/// e.g. `ζ(a)ζ(b) = ζ(a,b) + ζ(b,a) + ζ(a+b)`.
pub fn stuffle(left: &Index, right: &Index) -> Result<MzvExpr> {
    left.require_admissible()?;
    right.require_admissible()?;
    let rev = |i: &Index| i.parts().iter().rev().copied().collect::<Vec<_>>();
    let mut expr = MzvExpr::new();
    for (seq, mult) in stuffle_reversed(&rev(left), &rev(right)) {
        let parts: Vec<u32> = seq.into_iter().rev().collect();
        expr.add_term(
            Index::new(parts)?,
            BigRational::from_integer(BigInt::from(mult)),
        )?;
    }
    Ok(expr)
}

/// `expr · ζ(index)` expanded by the harmonic product.
pub fn stuffle_expr(expr: &MzvExpr, index: &Index) -> Result<MzvExpr> {
    let mut out = MzvExpr::new();
    for (term, c) in expr.terms() {
        out.add_expr(&stuffle(term, index)?.scaled(c));
    }
    Ok(out)
}

/// Iterated harmonic-product expansion of every product term.
pub fn expand_products(expr: &ProductExpr) -> Result<MzvExpr> {
    let mut out = MzvExpr::new();
    for (factors, c) in expr.terms() {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::Shape("cannot expand an empty product".into()))?;
        let mut acc = MzvExpr::zeta(first.clone())?;
        for f in rest {
            acc = stuffle_expr(&acc, f)?;
        }
        out.add_expr(&acc.scaled(c));
    }
    Ok(out)
}

/// Sum of `ζ(α)` over all admissible indices of the given weight and depth.
pub fn sum_formula_expr(weight: u32, depth: usize) -> Result<MzvExpr> {
    if depth == 0 || weight as usize <= depth {
        return Err(Error::EmptyDomain(format!(
            "no admissible index of weight {weight} and depth {depth}"
        )));
    }
    let mut expr = MzvExpr::new();
    // compositions of weight-1 with the last entry bumped by one
    for comp in compositions(weight - 1, depth)? {
        let mut parts = comp.parts().to_vec();
        *parts.last_mut().expect("depth >= 1") += 1;
        expr.add_term(Index::new(parts)?, BigRational::one())?;
    }
    Ok(expr)
}

/// `Σ_{e₁+⋯+eₙ=c} ζ(α₁+e₁, …, αₙ+eₙ)`
pub fn ohno_expr(index: &Index, c: u32) -> Result<MzvExpr> {
    index.require_admissible()?;
    let mut expr = MzvExpr::new();
    for e in weak_compositions(c, index.depth()) {
        let parts = index.parts().iter().zip(&e).map(|(a, x)| a + x).collect();
        expr.add_term(Index::new(parts)?, BigRational::one())?;
    }
    Ok(expr)
}

/// Numerically checks Ohno's relation for `index` and its dual.
pub fn verify_ohno(
    index: &Index,
    c: u32,
    digits: u32,
    evaluator: &Evaluator,
) -> Result<VerifyReport> {
    let started = Instant::now();
    let lhs = ohno_expr(index, c)?;
    let rhs = ohno_expr(&dual(index)?, c)?;
    VerifyReport::compare_exprs(
        format!("ohno({index};c={c})"),
        None,
        &lhs,
        &rhs,
        digits,
        evaluator,
        started,
    )
}

/// Numerically checks the sum formula at one weight and depth.
pub fn verify_sum_formula(
    weight: u32,
    depth: usize,
    digits: u32,
    evaluator: &Evaluator,
) -> Result<VerifyReport> {
    let started = Instant::now();
    let lhs = sum_formula_expr(weight, depth)?;
    let rhs = MzvExpr::zeta(Index::new(vec![weight])?)?;
    VerifyReport::compare_exprs(
        format!("sum-formula(w={weight};d={depth})"),
        None,
        &lhs,
        &rhs,
        digits,
        evaluator,
        started,
    )
}

/// Numerically checks `ζ(index) = ζ(dual(index))`.
pub fn verify_duality(index: &Index, digits: u32, evaluator: &Evaluator) -> Result<VerifyReport> {
    let started = Instant::now();
    let lhs = MzvExpr::zeta(index.clone())?;
    let rhs = MzvExpr::zeta(dual(index)?)?;
    VerifyReport::compare_exprs(
        format!("duality({index})"),
        None,
        &lhs,
        &rhs,
        digits,
        evaluator,
        started,
    )
}
