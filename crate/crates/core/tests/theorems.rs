use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mzvlab::bigreal::pow10_neg;
use mzvlab::indices::weak_compositions;
use mzvlab::theorems::{
    elo_lhs, eq_after_sides, mc_integral, p_coeff, permutations, random_params, t1_lhs, t1_rhs,
    t2_lhs, t2_rhs, verify_elo, verify_eq_after, verify_theorem,
};
use mzvlab::{Evaluator, Index, MzvExpr, ParamVector, ProductExpr, Theorem};

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> Q {
    q(n, 1)
}

fn idx(parts: &[u32]) -> Index {
    Index::new(parts.to_vec()).unwrap()
}

fn pw(x: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

/// Permuted parameters and exponents handed to a transcribed formula.
struct Point<'a> {
    m: [&'a Q; 3],
    x: [&'a Q; 3],
    a: [u32; 5],
    b: [u32; 5],
}

type Formula = fn(&Point) -> Q;

/// Each coefficient polynomial typed in directly from its printed form;
/// `m[i]`, `x[i]` stand for `μ_{σ(i+1)}`, `ξ_{σ(i+1)}`.
fn printed_formulas() -> [Formula; 15] {
    [
        // P1
        |p| {
            pw(p.m[0], p.a[0])
                * pw(p.m[1], p.a[1])
                * pw(p.m[2], p.a[2])
                * pw(p.x[0], p.b[0])
                * pw(p.x[1], p.b[1])
                * pw(p.x[2], p.b[2])
        },
        // P2
        |p| {
            pw(p.m[0], p.a[0])
                * pw(&(p.m[0] + p.m[1]), p.a[1])
                * pw(p.m[1], p.a[2])
                * pw(p.m[2], p.a[3])
                * pw(p.x[0], p.b[0])
                * pw(&(p.x[0] + p.x[1]), p.b[1])
                * pw(p.x[1], p.b[2])
                * pw(p.x[2], p.b[3])
        },
        // P3
        |p| {
            pw(p.m[0], p.a[0] + p.a[2])
                * pw(&(p.m[0] + p.m[1]), p.a[1])
                * pw(p.m[2], p.a[3])
                * pw(p.x[0], p.b[0] + p.b[2])
                * pw(&(p.x[0] + p.x[1]), p.b[1])
                * pw(p.x[2], p.b[3])
        },
        // P4
        |p| {
            pw(p.m[0], p.a[0] + p.a[2])
                * pw(&(p.m[0] + p.m[1]), p.a[1])
                * pw(&(p.m[0] + p.m[2]), p.a[3])
                * pw(p.m[2], p.a[4])
                * pw(p.x[0], p.b[0] + p.b[2])
                * pw(&(p.x[0] + p.x[1]), p.b[1])
                * pw(&(p.x[0] + p.x[2]), p.b[3])
                * pw(p.x[2], p.b[4])
        },
        // P5
        |p| {
            pw(p.m[0], p.a[0] + p.a[2] + p.a[4])
                * pw(&(p.m[0] + p.m[1]), p.a[1])
                * pw(&(p.m[0] + p.m[2]), p.a[3])
                * pw(p.x[0], p.b[0] + p.b[2] + p.b[4])
                * pw(&(p.x[0] + p.x[1]), p.b[1])
                * pw(&(p.x[0] + p.x[2]), p.b[3])
        },
        // P6
        |p| {
            pw(p.m[0], p.a[0])
                * pw(p.m[1], p.a[1])
                * pw(&(p.m[1] + p.m[2]), p.a[2])
                * pw(p.m[2], p.a[3])
                * pw(p.x[0], p.b[0])
                * pw(p.x[1], p.b[1])
                * pw(&(p.x[1] + p.x[2]), p.b[2])
                * pw(p.x[2], p.b[3])
        },
        // P7
        |p| {
            pw(p.m[0], p.a[0])
                * pw(&(p.m[0] + p.m[1]), p.a[1])
                * pw(p.m[1], p.a[2])
                * pw(&(p.m[1] + p.m[2]), p.a[3])
                * pw(p.m[2], p.a[4])
                * pw(p.x[0], p.b[0])
                * pw(&(p.x[0] + p.x[1]), p.b[1])
                * pw(p.x[1], p.b[2])
                * pw(&(p.x[1] + p.x[2]), p.b[3])
                * pw(p.x[2], p.b[4])
        },
        // P8
        |p| {
            let m123 = p.m[0] + p.m[1] + p.m[2];
            let x123 = p.x[0] + p.x[1] + p.x[2];
            pw(p.m[0], p.a[0])
                * pw(&(p.m[0] + p.m[1]), p.a[1])
                * pw(&m123, p.a[2])
                * pw(&(p.m[1] + p.m[2]), p.a[3])
                * pw(p.m[2], p.a[4])
                * pw(p.x[0], p.b[0])
                * pw(&(p.x[0] + p.x[1]), p.b[1])
                * pw(&x123, p.b[2])
                * pw(&(p.x[1] + p.x[2]), p.b[3])
                * pw(p.x[2], p.b[4])
        },
        // P9
        |p| {
            let m123 = p.m[0] + p.m[1] + p.m[2];
            let x123 = p.x[0] + p.x[1] + p.x[2];
            pw(p.m[0], p.a[0])
                * pw(&(p.m[0] + p.m[1]), p.a[1])
                * pw(&m123, p.a[2])
                * pw(&(p.m[0] + p.m[2]), p.a[3])
                * pw(p.m[2], p.a[4])
                * pw(p.x[0], p.b[0])
                * pw(&(p.x[0] + p.x[1]), p.b[1])
                * pw(&x123, p.b[2])
                * pw(&(p.x[0] + p.x[2]), p.b[3])
                * pw(p.x[2], p.b[4])
        },
        // P10
        |p| {
            let m123 = p.m[0] + p.m[1] + p.m[2];
            let x123 = p.x[0] + p.x[1] + p.x[2];
            pw(p.m[0], p.a[0] + p.a[4])
                * pw(&(p.m[0] + p.m[1]), p.a[1])
                * pw(&m123, p.a[2])
                * pw(&(p.m[0] + p.m[2]), p.a[3])
                * pw(p.x[0], p.b[0] + p.b[4])
                * pw(&(p.x[0] + p.x[1]), p.b[1])
                * pw(&x123, p.b[2])
                * pw(&(p.x[0] + p.x[2]), p.b[3])
        },
        // P11
        |p| {
            pw(p.m[0], p.a[0])
                * pw(p.m[1], p.a[1] + p.a[3])
                * pw(&(p.m[1] + p.m[2]), p.a[2])
                * pw(p.x[0], p.b[0])
                * pw(p.x[1], p.b[1] + p.b[3])
                * pw(&(p.x[1] + p.x[2]), p.b[2])
        },
        // P12
        |p| {
            pw(p.m[0], p.a[0])
                * pw(&(p.m[0] + p.m[1]), p.a[1])
                * pw(p.m[1], p.a[2] + p.a[4])
                * pw(&(p.m[1] + p.m[2]), p.a[3])
                * pw(p.x[0], p.b[0])
                * pw(&(p.x[0] + p.x[1]), p.b[1])
                * pw(p.x[1], p.b[2] + p.b[4])
                * pw(&(p.x[1] + p.x[2]), p.b[3])
        },
        // P13
        |p| {
            let m123 = p.m[0] + p.m[1] + p.m[2];
            let x123 = p.x[0] + p.x[1] + p.x[2];
            pw(p.m[0], p.a[0])
                * pw(&(p.m[0] + p.m[1]), p.a[1])
                * pw(&m123, p.a[2])
                * pw(&(p.m[1] + p.m[2]), p.a[3])
                * pw(p.m[1], p.a[4])
                * pw(p.x[0], p.b[0])
                * pw(&(p.x[0] + p.x[1]), p.b[1])
                * pw(&x123, p.b[2])
                * pw(&(p.x[1] + p.x[2]), p.b[3])
                * pw(p.x[1], p.b[4])
        },
        // P14
        |p| {
            let m123 = p.m[0] + p.m[1] + p.m[2];
            let x123 = p.x[0] + p.x[1] + p.x[2];
            pw(p.m[0], p.a[0])
                * pw(&(p.m[0] + p.m[1]), p.a[1] + p.a[3])
                * pw(&m123, p.a[2])
                * pw(p.m[1], p.a[4])
                * pw(p.x[0], p.b[0])
                * pw(&(p.x[0] + p.x[1]), p.b[1] + p.b[3])
                * pw(&x123, p.b[2])
                * pw(p.x[1], p.b[4])
        },
        // P15
        |p| {
            let m123 = p.m[0] + p.m[1] + p.m[2];
            let x123 = p.x[0] + p.x[1] + p.x[2];
            pw(p.m[0], p.a[0] + p.a[4])
                * pw(&(p.m[0] + p.m[1]), p.a[1] + p.a[3])
                * pw(&m123, p.a[2])
                * pw(p.x[0], p.b[0] + p.b[4])
                * pw(&(p.x[0] + p.x[1]), p.b[1] + p.b[3])
                * pw(&x123, p.b[2])
        },
    ]
}

/// Number of exponent slots each polynomial uses.
const SLOTS: [usize; 15] = [3, 4, 4, 5, 5, 4, 5, 5, 5, 5, 4, 5, 5, 5, 5];

#[test]
fn p_table_matches_printed_formulas() {
    let formulas = printed_formulas();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for _ in 0..40 {
        let params = random_params(3, rng.random());
        for (m, formula) in formulas.iter().enumerate() {
            let mut a = [0u32; 5];
            let mut b = [0u32; 5];
            for j in 0..SLOTS[m] {
                a[j] = rng.random_range(0..3);
                b[j] = rng.random_range(0..3);
            }
            for sigma in permutations(3) {
                let pick = |v: &'_ [Q]| -> [Q; 3] { [0, 1, 2].map(|i| v[sigma[i] - 1].clone()) };
                let (mu, xi) = (pick(params.mu()), pick(params.xi()));
                let point = Point {
                    m: [&mu[0], &mu[1], &mu[2]],
                    x: [&xi[0], &xi[1], &xi[2]],
                    a,
                    b,
                };
                let table = p_coeff(m + 1, &sigma, &a, &b, &params).unwrap();
                assert_eq!(
                    table,
                    formula(&point),
                    "P{} σ={sigma:?} a={a:?} b={b:?}",
                    m + 1
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 40 * 15 * 6);
}

#[test]
fn p_coeff_examples() {
    let p = ParamVector::new(vec![int(1), int(2), int(3)], vec![int(5), int(7), int(11)]).unwrap();
    assert_eq!(
        p_coeff(1, &[1, 2, 3], &[1, 0, 0, 0, 0], &[0; 5], &p).unwrap(),
        int(1)
    );
    let general = ParamVector::new(
        vec![q(3, 2), int(-2), q(7, 4)],
        vec![int(1), int(1), int(1)],
    )
    .unwrap();
    assert_eq!(
        p_coeff(1, &[1, 2, 3], &[1, 0, 0, 0, 0], &[0; 5], &general).unwrap(),
        q(3, 2)
    );
    assert_eq!(
        p_coeff(4, &[1, 2, 3], &[1, 0, 1, 0, 0], &[0, 1, 0, 0, 0], &p).unwrap(),
        int(12)
    );
}

fn product(terms: &[(&[u32], Q)]) -> ProductExpr {
    let mut out = ProductExpr::new();
    for (parts, c) in terms {
        out.add_term(parts.iter().map(|&p| idx(&[p])).collect(), c.clone())
            .unwrap();
    }
    out
}

#[test]
fn left_side_examples() {
    let p = ParamVector::new(vec![q(2, 3), int(-5)], vec![q(1, 2), int(4)]).unwrap();
    assert_eq!(t1_lhs(0, 0, &p).unwrap(), product(&[(&[2, 2], int(1))]));
    assert_eq!(
        t1_lhs(1, 0, &p).unwrap(),
        product(&[(&[2, 3], q(2, 3) + int(-5))])
    );
    assert_eq!(
        t1_lhs(0, 1, &p).unwrap(),
        product(&[(&[2, 3], q(1, 2) + int(4))])
    );

    let p3 = ParamVector::new(vec![int(2), int(3), int(-7)], vec![int(1), int(1), int(1)]).unwrap();
    assert_eq!(t2_lhs(0, 0, &p3).unwrap(), product(&[(&[2, 2, 2], int(1))]));
    assert_eq!(
        t2_lhs(1, 0, &p3).unwrap(),
        product(&[(&[2, 2, 3], int(-2))])
    );
    for (k, l) in [(1, 1), (2, 0), (0, 3)] {
        for (factors, _) in t2_lhs(k, l, &p3).unwrap().terms() {
            let w: u64 = factors.iter().map(Index::weight).sum();
            assert_eq!(w, u64::from(k + l + 6));
        }
    }
}

#[test]
fn right_side_examples() {
    let p = random_params(2, 4);
    assert_eq!(t1_rhs(0, 0, &p).unwrap().to_string(), "4*z(1,3)+2*z(2,2)");
    let p3 = random_params(3, 4);
    let want: MzvExpr = "6*z(2,2,2)+12*z(1,3,2)+24*z(1,2,3)+12*z(2,1,3)+36*z(1,1,4)"
        .parse()
        .unwrap();
    assert_eq!(t2_rhs(0, 0, &p3).unwrap(), want);
    for (k, l) in [(0, 1), (1, 0), (2, 1), (1, 2)] {
        for (index, _) in t2_rhs(k, l, &p3).unwrap().terms() {
            assert!(index.is_admissible());
            assert_eq!(index.weight(), u64::from(k + l + 6));
        }
        for (index, _) in t1_rhs(k, l, &p).unwrap().terms() {
            assert_eq!(index.weight(), u64::from(k + l + 4));
        }
    }
}

#[test]
fn first_sum_counts() {
    // with ξ = 0 only b = 0 survives, so the first-sum term count is the
    // number of (α, β) pairs for each a
    use mzvlab::indices::{binomial, T1_A};
    for (a1, a2, b1, b2) in [(0, 0, 0, 0), (1, 2, 0, 1), (2, 1, 3, 0), (1, 1, 1, 1)] {
        let got = T1_A.expand(&[a1, a2], &[b1, b2]).unwrap().len() as u64;
        let want = binomial(u64::from(a1 + b1), u64::from(a1))
            * binomial(u64::from(a2 + b2), u64::from(a2));
        assert_eq!(got, want);
    }
}

#[test]
fn verification_examples() {
    let ev = Evaluator::new();
    let any2 = random_params(2, 17);
    let r = verify_theorem(Theorem::T1, 0, 0, &any2, 30, &ev).unwrap();
    assert!(r.pass);
    assert!(r.lhs.starts_with("2.70580808"));

    let p = ParamVector::new(vec![int(2), int(-3)], vec![q(1, 2), int(5)]).unwrap();
    let r = verify_theorem(Theorem::T1, 2, 1, &p, 30, &ev).unwrap();
    assert!(r.pass, "{}", r.to_json());
    assert_eq!(r.mu, vec!["2/1", "-3/1"]);
    assert_eq!(r.xi, vec!["1/2", "5/1"]);

    let any3 = random_params(3, 17);
    let r = verify_theorem(Theorem::T2, 0, 0, &any3, 30, &ev).unwrap();
    assert!(r.pass);
    assert!(r.rhs.starts_with("4.4508758"));

    assert!(verify_theorem(Theorem::T2, 0, 0, &any2, 30, &ev).is_err());
}

/// A multivariate polynomial of degree ≤ k in μ and ≤ ℓ in ξ that vanishes
/// on enough generic points is zero. Here both sides are checked at
/// `(k+1)(ℓ+1)·C(n,2)+1` seeded points for the two-pair formula with n = 2.
#[test]
fn multi_point_certification() {
    let ev = Evaluator::new();
    for (k, l) in [(1, 1), (2, 0), (0, 2)] {
        let points = (k + 1) * (l + 1) + 1;
        for i in 0..points {
            let p = random_params(2, 9000 + u64::from(100 * k + 10 * l + i));
            assert!(verify_theorem(Theorem::T1, k, l, &p, 25, &ev).unwrap().pass);
        }
    }
}

#[test]
fn eq_after_examples() {
    let ev = Evaluator::new();
    for (k, l, m1, m2) in [
        (0, 0, int(1), int(1)),
        (2, 0, int(1), int(-1)),
        (1, 2, int(3), q(1, 2)),
    ] {
        let r = verify_eq_after(k, l, &m1, &m2, 30, &ev).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }
}

#[test]
fn eq_after_is_the_two_pair_formula_at_equal_xi() {
    // the ζ(k+ℓ+4) term is what the harmonic product adds to the left
    let (lhs, rhs) = eq_after_sides(1, 1, &q(3, 2), &int(-1)).unwrap();
    let top = lhs.coeff(&idx(&[6]));
    assert_eq!(top, int(2) * (q(3, 2) + int(-1)));
    for (index, _) in rhs.terms() {
        assert_eq!(index.weight(), 6);
    }
}

#[test]
fn elo_examples() {
    let ev = Evaluator::new();
    let small: MzvExpr = "8*z(1,3)+4*z(2,2)".parse().unwrap();
    assert_eq!(elo_lhs(0, 0).unwrap(), small);
    assert!(elo_lhs(3, 0).is_err());
    for (k, l) in [(0, 0), (0, 1), (2, 0)] {
        let r = verify_elo(k, l, 30, &ev).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }
    // 5ζ(4) exactly, as a numerical identity
    let lhs = ev.eval_expr(&small, &pow10_neg(30)).unwrap();
    let five: MzvExpr = "5*z(4)".parse().unwrap();
    assert!(lhs.agrees_with(&ev.eval_expr(&five, &pow10_neg(30)).unwrap()));
}

#[test]
fn monte_carlo_examples() {
    let ones3 = ParamVector::new(vec![int(1); 3], vec![int(1); 3]).unwrap();
    let a = mc_integral(0, 0, 3, &ones3, 200_000, 42, 2).unwrap();
    let b = mc_integral(0, 0, 3, &ones3, 200_000, 42, 2).unwrap();
    assert_eq!(a, b);
    let target = (std::f64::consts::PI.powi(2) / 6.0).powi(3);
    assert!((a.estimate - target).abs() < 4.0 * a.stderr);
}

#[test]
fn monte_carlo_matches_theorem_left_side() {
    // at k = 1, ℓ = 1 the integral equals the left side of the two-pair
    // formula at the same parameters
    let ev = Evaluator::new();
    let p = ParamVector::new(vec![int(1), q(1, 2)], vec![int(2), int(-1)]).unwrap();
    let exact = ev
        .eval_product_expr(&t1_lhs(1, 1, &p).unwrap(), &pow10_neg(10))
        .unwrap()
        .value
        .to_f64();
    let r = mc_integral(1, 1, 2, &p, 400_000, 3, 4).unwrap();
    assert!(
        (r.estimate - exact).abs() < 4.0 * r.stderr,
        "{r:?} vs {exact}"
    );
}

#[test]
fn weak_composition_sums_cover_all_lhs_terms() {
    let p = random_params(3, 5);
    let lhs = t2_lhs(2, 1, &p).unwrap();
    assert!(lhs.len() <= weak_compositions(2, 3).len() * weak_compositions(1, 3).len());
}
