//! The acceptance suite: nine criteria covering evaluation, the two
//! theorems, the specialization chain, the classical relations, the
//! Monte-Carlo oracle and the combinatorial counts. Shared by the
//! `selftest` command and the `acceptance` test target.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::{expand_products, ohno_expr, sum_formula_expr, MzvExpr};
use crate::bigreal::pow10_neg;
use crate::error::Result;
use crate::evaluator::{zeta_naive, EvalResult, Evaluator};
use crate::indices::{binomial, compositions, dual, weak_compositions, Index};
use crate::rational::int;
use crate::report::VerifyReport;
use crate::theorems::{
    elo_lhs, mc_integral, random_params, t1_lhs, t1_rhs, t2_lhs, t2_rhs, verify_elo,
    verify_eq_after, verify_theorem, ParamVector, Theorem,
};

/// π to 70 significant digits.
pub const PI_DIGITS: &str =
    "3.141592653589793238462643383279502884197169399375105820974944592307816";
/// ζ(3) to 70 significant digits.
pub const ZETA3_DIGITS: &str =
    "1.202056903159594285399738161511449990764986292340498881792271555341838";

/// Error of the truncated reference constants above, with room to spare.
fn reference_slack() -> BigRational {
    pow10_neg(60)
}

pub fn decimal(s: &str) -> BigRational {
    let (int_part, frac) = s.split_once('.').unwrap_or((s, ""));
    let num: BigInt = format!("{int_part}{frac}")
        .parse()
        .expect("decimal literal");
    BigRational::new(num, BigInt::from(10).pow(frac.len() as u32))
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let limit = self
            .limit
            .map(|l| format!(" / limit {:.0}s", l.as_secs_f64()))
            .unwrap_or_default();
        write!(
            f,
            "criterion {} {} {}: {} ({:.2}s{})",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            limit
        )
    }
}

struct Tally {
    runs: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            runs: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.runs += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(&mut self, r: &VerifyReport) {
        let (pass, id, diff, bound) = (
            r.pass,
            r.identity.clone(),
            r.abs_diff.clone(),
            r.bound.clone(),
        );
        let (k, l) = (r.k, r.l);
        self.check(pass, || {
            format!("{id} k={k:?} l={l:?}: diff {diff} > bound {bound}")
        });
    }

    fn summary(&self) -> String {
        if self.failures.is_empty() {
            format!("{} checks passed", self.runs)
        } else {
            format!(
                "{} of {} checks failed; first: {}",
                self.failures.len(),
                self.runs,
                self.failures[0]
            )
        }
    }
}

fn finish(
    id: u32,
    name: &'static str,
    started: Instant,
    limit: Option<Duration>,
    body: Result<Tally>,
) -> Outcome {
    let elapsed = started.elapsed();
    let (mut pass, mut detail) = match body {
        Ok(t) => (t.failures.is_empty(), t.summary()),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(l) = limit {
        if elapsed > l {
            pass = false;
            detail.push_str("; over the time limit");
        }
    }
    Outcome {
        id,
        name,
        pass,
        detail,
        elapsed,
        limit,
    }
}

fn idx(parts: &[u32]) -> Index {
    Index::new(parts.to_vec()).expect("valid literal index")
}

/// Every admissible index of weight exactly `w`.
pub fn admissible_of_weight(w: u32) -> Vec<Index> {
    let mut out = Vec::new();
    for d in 1..w as usize {
        for c in compositions(w - 1, d).expect("w-1 >= d") {
            let mut parts = c.parts().to_vec();
            *parts.last_mut().expect("nonempty") += 1;
            out.push(Index::new(parts).expect("positive parts"));
        }
    }
    out
}

/// Seed for the `i`-th random parameter vector at `(k, ℓ)`.
pub fn param_seed(k: u32, l: u32, i: u32) -> u64 {
    u64::from(1000 * k + 100 * l + i) + 1
}

fn closed_forms() -> Vec<(Index, &'static str, BigRational)> {
    let pi = decimal(PI_DIGITS);
    let pi2 = &pi * &pi;
    let pi4 = &pi2 * &pi2;
    let z3 = decimal(ZETA3_DIGITS);
    vec![
        (idx(&[2]), "π²/6", &pi2 / int(6)),
        (idx(&[3]), "ζ(3)", z3.clone()),
        (idx(&[4]), "π⁴/90", &pi4 / int(90)),
        (idx(&[2, 2]), "π⁴/120", &pi4 / int(120)),
        (idx(&[1, 2]), "ζ(3)", z3),
        (idx(&[1, 3]), "π⁴/360", &pi4 / int(360)),
    ]
}

pub fn criterion_1() -> Outcome {
    let started = Instant::now();
    let body = (|| {
        let ev = Evaluator::new();
        let mut t = Tally::new();
        for (index, name, exact) in closed_forms() {
            let r = ev.zeta(&index, &pow10_neg(30))?;
            let ok = r.abs_err <= pow10_neg(30)
                && (r.value.to_rational() - &exact).abs() <= &r.abs_err + reference_slack();
            t.check(ok, || {
                format!("ζ({index}) misses {name}: {}", r.value.to_decimal(35))
            });
        }
        Ok(t)
    })();
    finish(
        1,
        "evaluator closed forms",
        started,
        Some(Duration::from_secs(1)),
        body,
    )
}

pub fn criterion_2() -> Outcome {
    let started = Instant::now();
    let body = (|| {
        let indices: Vec<Index> = (2..=8).flat_map(admissible_of_weight).collect();
        let ev = Evaluator::new();
        let fast = ev.zeta_many(&indices, &pow10_neg(20))?;
        let workers = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
            .min(8);
        let chunk = indices.len().div_ceil(workers);
        let naive: Vec<EvalResult> = std::thread::scope(|s| {
            let handles: Vec<_> = indices
                .chunks(chunk)
                .map(|part| {
                    s.spawn(move || {
                        part.iter()
                            .map(|i| zeta_naive(i, 1_000_000))
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("naive thread panicked"))
                .collect::<Result<Vec<Vec<_>>>>()
        })?
        .into_iter()
        .flatten()
        .collect();
        let mut t = Tally::new();
        for ((index, f), n) in indices.iter().zip(&fast).zip(&naive) {
            t.check(f.abs_diff(n) <= n.abs_err, || {
                format!("ζ({index}) differs from the truncated series beyond its bound")
            });
        }
        t.check(indices.len() == 127, || {
            format!("expected 127 indices, got {}", indices.len())
        });
        Ok(t)
    })();
    finish(
        2,
        "oracle agreement (weight <= 8)",
        started,
        Some(Duration::from_secs(60)),
        body,
    )
}

fn zeta_expr(terms: &[(&[u32], i64)]) -> MzvExpr {
    let mut e = MzvExpr::new();
    for (parts, c) in terms {
        e.add_term(idx(parts), int(*c)).expect("admissible literal");
    }
    e
}

fn check_expr_equals_power(
    ev: &Evaluator,
    t: &mut Tally,
    expr: &MzvExpr,
    power: u32,
    digits: u32,
) -> Result<()> {
    let tol = pow10_neg(digits);
    let lhs = ev.eval_expr(expr, &tol)?;
    let mut prod = crate::algebra::ProductExpr::new();
    prod.add_term(vec![idx(&[2]); power as usize], BigRational::one())?;
    let rhs = ev.eval_product_expr(&prod, &tol)?;
    t.check(lhs.agrees_with(&rhs), || {
        format!("{expr} differs from ζ(2)^{power}")
    });
    Ok(())
}

pub fn criterion_3() -> Outcome {
    let started = Instant::now();
    let body = (|| {
        let ev = Evaluator::new();
        let mut t = Tally::new();
        let hand = zeta_expr(&[(&[2, 2], 2), (&[1, 3], 4)]);
        let any = random_params(2, 99);
        t.check(t1_rhs(0, 0, &any)? == hand, || {
            "t1_rhs(0,0) is not 2ζ(2,2)+4ζ(1,3)".into()
        });
        check_expr_equals_power(&ev, &mut t, &hand, 2, 25)?;
        for n in 0..=4 {
            for k in 0..=n {
                let l = n - k;
                for i in 0..5 {
                    let p = random_params(2, param_seed(k, l, i));
                    t.report(&verify_theorem(Theorem::T1, k, l, &p, 25, &ev)?);
                }
            }
        }
        Ok(t)
    })();
    finish(
        3,
        "two-pair formula",
        started,
        Some(Duration::from_secs(120)),
        body,
    )
}

pub fn criterion_4() -> Outcome {
    let started = Instant::now();
    let body = (|| {
        let ev = Evaluator::new();
        let mut t = Tally::new();
        let hand = zeta_expr(&[
            (&[2, 2, 2], 6),
            (&[1, 3, 2], 12),
            (&[1, 2, 3], 24),
            (&[2, 1, 3], 12),
            (&[1, 1, 4], 36),
        ]);
        let any = random_params(3, 99);
        t.check(t2_rhs(0, 0, &any)? == hand, || {
            "t2_rhs(0,0) differs from the hand expansion".into()
        });
        check_expr_equals_power(&ev, &mut t, &hand, 3, 25)?;
        for n in 0..=2 {
            for k in 0..=n {
                let l = n - k;
                for i in 0..3 {
                    let p = random_params(3, param_seed(k, l, i));
                    t.report(&verify_theorem(Theorem::T2, k, l, &p, 25, &ev)?);
                }
            }
        }
        Ok(t)
    })();
    finish(
        4,
        "three-pair formula",
        started,
        Some(Duration::from_secs(300)),
        body,
    )
}

pub fn criterion_5() -> Outcome {
    let started = Instant::now();
    let body = (|| {
        let ev = Evaluator::new();
        let mut t = Tally::new();
        let mut mus: Vec<(BigRational, BigRational)> = vec![(int(1), int(-1))];
        for seed in [501, 502] {
            let p = random_params(2, seed);
            mus.push((p.mu()[0].clone(), p.mu()[1].clone()));
        }
        for n in 0..=4 {
            for k in 0..=n {
                for (m1, m2) in &mus {
                    t.report(&verify_eq_after(k, n - k, m1, m2, 25, &ev)?);
                }
            }
        }
        for w in 2..=6 {
            for index in admissible_of_weight(w) {
                for c in 0..=2 {
                    t.report(&crate::algebra::verify_ohno(&index, c, 25, &ev)?);
                }
            }
        }
        for w in 2..=10 {
            for index in admissible_of_weight(w) {
                let d = dual(&index)?;
                t.check(
                    dual(&d)? == index
                        && d.weight() == index.weight()
                        && d.depth() == index.weight() as usize - index.depth(),
                    || format!("duality fails at ({index})"),
                );
            }
        }
        t.check(
            elo_lhs(0, 0)? == zeta_expr(&[(&[1, 3], 8), (&[2, 2], 4)]),
            || "elo_lhs(0,0) is not 8ζ(1,3)+4ζ(2,2)".into(),
        );
        for k in [0, 2, 4] {
            for l in 0..=(4 - k) {
                t.report(&verify_elo(k, l, 25, &ev)?);
            }
        }
        Ok(t)
    })();
    finish(5, "specialization chain", started, None, body)
}

pub fn criterion_6() -> Outcome {
    let started = Instant::now();
    let body = (|| {
        let ev = Evaluator::new();
        let mut t = Tally::new();
        for w in 3..=9u32 {
            for d in 2..w as usize {
                t.report(&crate::algebra::verify_sum_formula(w, d, 25, &ev)?);
            }
        }
        Ok(t)
    })();
    finish(6, "sum formula", started, None, body)
}

pub fn criterion_7() -> Outcome {
    let started = Instant::now();
    let body = (|| {
        let ev = Evaluator::new();
        let tol = pow10_neg(25);
        let mut t = Tally::new();
        for n in 0..=3 {
            for k in 0..=n {
                let l = n - k;
                let p2 = [random_params(2, param_seed(k, l, 7)), ones(2)];
                let p3 = [random_params(3, param_seed(k, l, 7)), ones(3)];
                let lhss = p2
                    .iter()
                    .map(|p| t1_lhs(k, l, p))
                    .chain(p3.iter().map(|p| t2_lhs(k, l, p)))
                    .collect::<Result<Vec<_>>>()?;
                for lhs in lhss {
                    let direct = ev.eval_product_expr(&lhs, &tol)?;
                    let expanded = ev.eval_expr(&expand_products(&lhs)?, &tol)?;
                    t.check(direct.agrees_with(&expanded), || {
                        format!("k={k} l={l}: product and expansion disagree")
                    });
                }
            }
        }
        Ok(t)
    })();
    finish(7, "harmonic product soundness", started, None, body)
}

fn ones(n: usize) -> ParamVector {
    ParamVector::new(vec![int(1); n], vec![int(1); n]).expect("equal lengths")
}

pub const MC_SEEDS: [u64; 3] = [11, 22, 33];
pub const MC_SAMPLES: u64 = 1_000_000;
pub const MC_WORKERS: usize = 4;

pub fn criterion_8() -> Outcome {
    let started = Instant::now();
    let mut notes = Vec::new();
    let body = (|| {
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        let mut t = Tally::new();
        for pairs in [2usize, 3] {
            let target = pi2_6.powi(pairs as i32);
            let mut hits = 0;
            for seed in MC_SEEDS {
                let r = mc_integral(0, 0, pairs, &ones(pairs), MC_SAMPLES, seed, MC_WORKERS)?;
                let z = (r.estimate - target) / r.stderr;
                if z.abs() <= 3.0 {
                    hits += 1;
                }
                notes.push(format!("pairs={pairs} seed={seed} z={z:+.2}"));
            }
            t.check(hits >= 2, || {
                format!("pairs={pairs}: only {hits} of 3 seeds within 3σ")
            });
        }
        Ok(t)
    })();
    let mut o = finish(
        8,
        "Monte-Carlo oracle",
        started,
        Some(Duration::from_secs(120)),
        body,
    );
    if !notes.is_empty() {
        o.detail = format!("{} [{}]", o.detail, notes.join(", "));
    }
    o
}

pub fn criterion_9() -> Outcome {
    let started = Instant::now();
    let body = (|| {
        let mut t = Tally::new();
        for total in 1..=12u32 {
            for parts in 1..=total as usize {
                let got = compositions(total, parts)?;
                let want = binomial(u64::from(total) - 1, parts as u64 - 1);
                t.check(got.len() as u64 == want, || {
                    format!(
                        "compositions({total},{parts}) has {} elements, want {want}",
                        got.len()
                    )
                });
            }
        }
        for total in 0..=12u32 {
            for parts in 1..=8usize {
                let got = weak_compositions(total, parts).len() as u64;
                let want = binomial(u64::from(total) + parts as u64 - 1, parts as u64 - 1);
                t.check(got == want, || {
                    format!("weak_compositions({total},{parts}) has {got} elements, want {want}")
                });
            }
        }
        for n in 0..=4 {
            for k in 0..=n {
                let l = n - k;
                let p2 = random_params(2, param_seed(k, l, 9));
                check_weights(&mut t, &t1_rhs(k, l, &p2)?, k + l + 4, "t1");
                if n <= 3 {
                    let p3 = random_params(3, param_seed(k, l, 9));
                    check_weights(&mut t, &t2_rhs(k, l, &p3)?, k + l + 6, "t2");
                }
                if k % 2 == 0 {
                    check_weights(&mut t, &elo_lhs(k, l)?, k + l + 4, "elo");
                }
            }
        }
        for w in 2..=6 {
            for index in admissible_of_weight(w) {
                check_weights(&mut t, &ohno_expr(&index, 2)?, w + 2, "ohno");
            }
            for d in 1..w as usize {
                check_weights(&mut t, &sum_formula_expr(w, d)?, w, "sum");
            }
        }
        Ok(t)
    })();
    finish(9, "combinatorial counts and shapes", started, None, body)
}

fn check_weights(t: &mut Tally, expr: &MzvExpr, weight: u32, what: &str) {
    for (index, _) in expr.terms() {
        t.check(
            index.is_admissible() && index.weight() == u64::from(weight),
            || format!("{what}: ({index}) is not an admissible index of weight {weight}"),
        );
    }
}

pub fn run_all() -> Vec<Outcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
}
