//! Verification outcomes and their JSON form.

use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{MzvExpr, ProductExpr};
use crate::bigreal::{format_sci_nearest, format_sci_up, pow10_neg};
use crate::error::Result;
use crate::evaluator::{EvalResult, Evaluator};
use crate::rational::format_rational;
use crate::theorems::ParamVector;

/// Result of comparing two numerically evaluated sides of an identity.
/// `pass` holds exactly when `|lhs − rhs|` is within the sum of both error
/// bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub identity: String,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub mu: Vec<String>,
    pub xi: Vec<String>,
    pub digits: u32,
    pub lhs: String,
    pub rhs: String,
    pub abs_diff: String,
    pub bound: String,
    pub pass: bool,
    pub elapsed_ms: f64,
    #[serde(skip)]
    pub abs_diff_exact: BigRational,
    #[serde(skip)]
    pub bound_exact: BigRational,
}

/// Identity label plus optional `(k, ℓ)` and parameters.
pub struct Subject<'a> {
    pub identity: String,
    pub kl: Option<(u32, u32)>,
    pub params: Option<&'a ParamVector>,
}

impl Subject<'_> {
    pub fn named(identity: impl Into<String>) -> Self {
        Subject {
            identity: identity.into(),
            kl: None,
            params: None,
        }
    }
}

impl VerifyReport {
    pub fn from_results(
        subject: Subject<'_>,
        digits: u32,
        lhs: &EvalResult,
        rhs: &EvalResult,
        started: Instant,
    ) -> VerifyReport {
        let diff = lhs.abs_diff(rhs);
        let bound = &lhs.abs_err + &rhs.abs_err;
        let shown = digits as usize + 5;
        let (mu, xi) = match subject.params {
            Some(p) => (
                p.mu().iter().map(format_rational).collect(),
                p.xi().iter().map(format_rational).collect(),
            ),
            None => (Vec::new(), Vec::new()),
        };
        VerifyReport {
            identity: subject.identity,
            k: subject.kl.map(|(k, _)| k),
            l: subject.kl.map(|(_, l)| l),
            mu,
            xi,
            digits,
            lhs: lhs.value.to_decimal(shown),
            rhs: rhs.value.to_decimal(shown),
            abs_diff: format_sci_nearest(&diff, 3),
            bound: format_sci_up(&bound, 3),
            pass: diff <= bound,
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
            abs_diff_exact: diff,
            bound_exact: bound,
        }
    }

    /// Evaluates both sides at `10^(−digits)` and compares them.
    pub fn compare_exprs(
        identity: String,
        kl: Option<(u32, u32)>,
        lhs: &MzvExpr,
        rhs: &MzvExpr,
        digits: u32,
        evaluator: &Evaluator,
        started: Instant,
    ) -> Result<VerifyReport> {
        let tol = pow10_neg(digits);
        let l = evaluator.eval_expr(lhs, &tol)?;
        let r = evaluator.eval_expr(rhs, &tol)?;
        let subject = Subject {
            identity,
            kl,
            params: None,
        };
        Ok(VerifyReport::from_results(subject, digits, &l, &r, started))
    }

    /// Like [`VerifyReport::compare_exprs`] with a product left side.
    pub fn compare_product(
        subject: Subject<'_>,
        lhs: &ProductExpr,
        rhs: &MzvExpr,
        digits: u32,
        evaluator: &Evaluator,
        started: Instant,
    ) -> Result<VerifyReport> {
        let tol = pow10_neg(digits);
        let l = evaluator.eval_product_expr(lhs, &tol)?;
        let r = evaluator.eval_expr(rhs, &tol)?;
        Ok(VerifyReport::from_results(subject, digits, &l, &r, started))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
