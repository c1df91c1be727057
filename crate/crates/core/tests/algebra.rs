use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use mzvlab::algebra::{
    expand_products, ohno_expr, stuffle, stuffle_expr, sum_formula_expr, verify_duality,
    verify_ohno, verify_sum_formula,
};
use mzvlab::bigreal::pow10_neg;
use mzvlab::indices::{compositions, dual};
use mzvlab::{Evaluator, Index, MzvExpr, ProductExpr};

type Q = BigRational;

fn idx(parts: &[u32]) -> Index {
    Index::new(parts.to_vec()).unwrap()
}

fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `Σ_{0<n₁<⋯<n_d≤N} Π nᵢ^{−αᵢ}` in exact arithmetic. The harmonic product
/// already holds for these truncations, which makes them an independent
/// check on the expansion.
fn truncated(parts: &[u32], cutoff: u64) -> Q {
    let d = parts.len();
    let mut level = vec![Q::zero(); d + 1];
    level[0] = Q::one();
    for n in 1..=cutoff {
        for i in (1..=d).rev() {
            let t = &level[i - 1] / Q::from_integer(BigInt::from(n).pow(parts[i - 1]));
            level[i] += t;
        }
    }
    level[d].clone()
}

fn truncated_expr(expr: &MzvExpr, cutoff: u64) -> Q {
    expr.terms()
        .map(|(i, c)| c * truncated(i.parts(), cutoff))
        .sum()
}

fn indices_up_to(weight: u32) -> Vec<Index> {
    let mut out = Vec::new();
    for w in 2..=weight {
        for d in 1..w as usize {
            for c in compositions(w - 1, d).unwrap() {
                let mut p = c.parts().to_vec();
                *p.last_mut().unwrap() += 1;
                out.push(Index::new(p).unwrap());
            }
        }
    }
    out
}

#[test]
fn stuffle_small_cases() {
    let e = stuffle(&idx(&[2]), &idx(&[3])).unwrap();
    assert_eq!(e, "1*z(2,3)+1*z(3,2)+1*z(5)".parse().unwrap());
    let sq = stuffle(&idx(&[2]), &idx(&[2])).unwrap();
    assert_eq!(sq, "2*z(2,2)+1*z(4)".parse().unwrap());
    assert!(stuffle(&idx(&[2, 1]), &idx(&[2])).is_err());
}

#[test]
fn stuffle_holds_for_truncated_sums() {
    let all = indices_up_to(6);
    for a in &all {
        for b in &all {
            if a.weight() + b.weight() > 8 {
                continue;
            }
            let e = stuffle(a, b).unwrap();
            for cutoff in [3, 7] {
                let lhs = truncated(a.parts(), cutoff) * truncated(b.parts(), cutoff);
                assert_eq!(lhs, truncated_expr(&e, cutoff), "{a} * {b}");
            }
        }
    }
}

#[test]
fn stuffle_multiplicity_is_delannoy() {
    // total multiplicity of the merges of a depth-p and a depth-q sequence
    // with j collisions is C(p+q−j, p)·C(p, j)
    use mzvlab::indices::binomial;
    for (a, b) in [
        (idx(&[2]), idx(&[3])),
        (idx(&[1, 2]), idx(&[3])),
        (idx(&[2, 3]), idx(&[1, 4])),
        (idx(&[1, 2, 5]), idx(&[3, 7])),
    ] {
        let (p, q) = (a.depth() as u64, b.depth() as u64);
        let want: u64 = (0..=p.min(q))
            .map(|j| binomial(p + q - j, p) * binomial(p, j))
            .sum();
        let total: Q = stuffle(&a, &b)
            .unwrap()
            .terms()
            .map(|(_, c)| c.clone())
            .sum();
        assert_eq!(total, int(want as i64), "{a} * {b}");
    }
}

#[test]
fn stuffle_agrees_numerically() {
    let ev = Evaluator::new();
    let t = pow10_neg(30);
    for (a, b) in [
        (idx(&[2]), idx(&[1, 3])),
        (idx(&[1, 2]), idx(&[2, 2])),
        (idx(&[3]), idx(&[1, 1, 4])),
    ] {
        let mut p = ProductExpr::new();
        p.add_term(vec![a.clone(), b.clone()], int(1)).unwrap();
        let direct = ev.eval_product_expr(&p, &t).unwrap();
        let expanded = ev.eval_expr(&stuffle(&a, &b).unwrap(), &t).unwrap();
        assert!(direct.agrees_with(&expanded), "{a} * {b}");
    }
}

#[test]
fn expand_products_examples() {
    let p: ProductExpr = "3/2*z(2)*z(2)*z(2)".parse().unwrap();
    let e = expand_products(&p).unwrap();
    for cutoff in [4, 9] {
        let lhs = Q::new(3.into(), 2.into()) * truncated(&[2], cutoff).pow(3);
        assert_eq!(lhs, truncated_expr(&e, cutoff));
    }
    let via_expr = stuffle_expr(&stuffle(&idx(&[2]), &idx(&[2])).unwrap(), &idx(&[2])).unwrap();
    assert_eq!(e, via_expr.scaled(&Q::new(3.into(), 2.into())));
}

#[test]
fn sum_formula_examples() {
    let e = sum_formula_expr(4, 2).unwrap();
    assert_eq!(e, "1*z(1,3)+1*z(2,2)".parse().unwrap());
    let e = sum_formula_expr(6, 3).unwrap();
    assert_eq!(e.len(), 6); // C(w−2, d−1)
    assert!(sum_formula_expr(3, 3).is_err());
    let ev = Evaluator::new();
    for (w, d) in [(6, 3), (5, 1), (7, 4)] {
        assert!(verify_sum_formula(w, d, 30, &ev).unwrap().pass);
    }
}

#[test]
fn ohno_examples() {
    assert_eq!(ohno_expr(&idx(&[2]), 1).unwrap(), "1*z(3)".parse().unwrap());
    assert_eq!(
        ohno_expr(&idx(&[1, 2]), 1).unwrap(),
        "1*z(2,2)+1*z(1,3)".parse().unwrap()
    );
    let ev = Evaluator::new();
    let r = verify_ohno(&idx(&[1, 2, 2]), 1, 30, &ev).unwrap();
    assert!(r.pass, "{}", r.to_json());
    assert_eq!(r.identity, "ohno(1,2,2;c=1)");
    for (i, c) in [
        (idx(&[1, 1, 3]), 2),
        (idx(&[2, 3]), 0),
        (idx(&[1, 2, 1, 2]), 1),
    ] {
        assert!(verify_ohno(&i, c, 25, &ev).unwrap().pass);
    }
}

#[test]
fn duality_examples() {
    assert_eq!(dual(&idx(&[1, 2])).unwrap(), idx(&[3]));
    assert_eq!(dual(&idx(&[1, 1, 2])).unwrap(), idx(&[4]));
    assert_eq!(dual(&idx(&[2, 3])).unwrap(), idx(&[1, 2, 2]));
    let ev = Evaluator::new();
    for i in [idx(&[1, 3]), idx(&[2, 1, 3]), idx(&[1, 2, 1, 2])] {
        assert!(verify_duality(&i, 30, &ev).unwrap().pass);
    }
}

#[test]
fn failing_relation_is_reported() {
    let ev = Evaluator::new();
    let lhs: MzvExpr = "1*z(2,2)".parse().unwrap();
    let rhs: MzvExpr = "1*z(1,3)".parse().unwrap();
    let r = mzvlab::VerifyReport::compare_exprs(
        "wrong".into(),
        None,
        &lhs,
        &rhs,
        20,
        &ev,
        std::time::Instant::now(),
    )
    .unwrap();
    assert!(!r.pass);
}
