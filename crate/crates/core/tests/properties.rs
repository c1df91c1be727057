use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use mzvlab::algebra::stuffle;
use mzvlab::bigreal::pow2_neg;
use mzvlab::evaluator::{format_cache_line, parse_cache_line};
use mzvlab::indices::{
    assemble, binomial, compositions, dual, index_to_word, weak_compositions, word_to_index,
    ALL_PATTERNS,
};
use mzvlab::rational::{format_rational, parse_rational, parse_rational_list};
use mzvlab::{BigReal, Composition, EvalResult, Index, MzvExpr, Word};

fn any_index() -> impl Strategy<Value = Index> {
    prop::collection::vec(1u32..6, 1..6).prop_map(|p| Index::new(p).unwrap())
}

fn admissible_index() -> impl Strategy<Value = Index> {
    (prop::collection::vec(1u32..5, 0..4), 2u32..5).prop_map(|(mut p, last)| {
        p.push(last);
        Index::new(p).unwrap()
    })
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #[test]
    fn word_round_trip(index in any_index()) {
        let word = index_to_word(&index);
        prop_assert_eq!(word.len() as u64, index.weight());
        prop_assert_eq!(word_to_index(&word).unwrap(), index.clone());
        let text: Word = word.to_string().parse().unwrap();
        prop_assert_eq!(text, word);
    }

    #[test]
    fn dual_is_an_involution(index in admissible_index()) {
        let d = dual(&index).unwrap();
        prop_assert!(d.is_admissible());
        prop_assert_eq!(d.weight(), index.weight());
        prop_assert_eq!(d.depth() as u64, index.weight() - index.depth() as u64);
        prop_assert_eq!(dual(&d).unwrap(), index);
    }

    #[test]
    fn index_text_round_trip(index in any_index()) {
        let back: Index = index.to_string().parse().unwrap();
        prop_assert_eq!(back, index);
    }

    #[test]
    fn composition_counts(total in 1u32..12, parts in 1usize..6) {
        let strict = compositions(total, parts).map(|v| v.len() as u64).unwrap_or(0);
        let want = if (total as usize) < parts { 0 } else { binomial(u64::from(total) - 1, parts as u64 - 1) };
        prop_assert_eq!(strict, want);
        let weak = weak_compositions(total, parts);
        prop_assert_eq!(weak.len() as u64, binomial(u64::from(total) + parts as u64 - 1, parts as u64 - 1));
        prop_assert!(weak.iter().all(|w| w.iter().sum::<u32>() == total));
    }

    #[test]
    fn stuffle_is_weight_homogeneous(a in admissible_index(), b in admissible_index()) {
        let e = stuffle(&a, &b).unwrap();
        let swapped = stuffle(&b, &a).unwrap();
        prop_assert_eq!(&e, &swapped);
        for (i, c) in e.terms() {
            prop_assert_eq!(i.weight(), a.weight() + b.weight());
            prop_assert!(i.depth() >= a.depth().max(b.depth()));
            prop_assert!(i.depth() <= a.depth() + b.depth());
            prop_assert!(*c > BigRational::from_integer(0.into()));
        }
    }

    #[test]
    fn expr_text_round_trip(terms in prop::collection::vec((admissible_index(), rational()), 0..6)) {
        let mut e = MzvExpr::new();
        for (i, c) in terms {
            e.add_term(i, c).unwrap();
        }
        let back: MzvExpr = e.to_string().parse().unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn rational_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r.clone());
        let list = format!("{},{}", format_rational(&r), format_rational(&-r.clone()));
        prop_assert_eq!(parse_rational_list(&list).unwrap(), vec![r.clone(), -r]);
    }

    #[test]
    fn cache_line_round_trip(index in admissible_index(), mant in any::<i64>(), prec in 0u32..200, bits in 1u32..300) {
        let r = EvalResult {
            value: BigReal::from_scaled(BigInt::from(mant), prec),
            abs_err: pow2_neg(bits),
        };
        let line = format_cache_line(&index, bits, &r);
        let (i, b, back) = parse_cache_line(&line).unwrap();
        prop_assert_eq!(i, index);
        prop_assert_eq!(b, bits);
        prop_assert_eq!(back.value.to_rational(), r.value.to_rational());
        prop_assert_eq!(back.abs_err, r.abs_err);
    }

    #[test]
    fn assembled_weight_and_depth(
        pick in 0usize..ALL_PATTERNS.len(),
        raw in prop::collection::vec(prop::collection::vec(1u32..4, 1..4), 5),
    ) {
        let pattern = &ALL_PATTERNS[pick];
        let blocks: Vec<Composition> = raw
            .into_iter()
            .take(pattern.blocks())
            .map(|parts| {
                let (total, count) = (parts.iter().sum(), parts.len());
                Composition::new(parts, total, count).unwrap()
            })
            .collect();
        let index = assemble(&blocks, pattern).unwrap();
        let total: u32 = blocks.iter().map(Composition::total).sum();
        let lengths: usize = blocks.iter().map(Composition::len).sum();
        prop_assert_eq!(index.weight(), u64::from(total) + pattern.caps_count() as u64);
        prop_assert_eq!(index.depth(), lengths - pattern.merges_count());
    }
}
