mod common;

use std::collections::HashSet;

use arrowlab::ordinal::{
    enum_index, enumerate_below, fund_seq, parse_ordinal, Ordinal, OrdinalError,
};
use common::{cmp_ref, random_cnf, Cnf};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ord(s: &str) -> Ordinal {
    s.parse().unwrap()
}

proptest! {
    #[test]
    fn normalized_strings_print_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_cnf(&mut rng, 3, 3, 5);
        let s = x.print();
        let parsed = parse_ordinal(&s).unwrap();
        prop_assert_eq!(parsed.to_string(), s.clone());
        prop_assert_eq!(parse_ordinal(&parsed.to_string()).unwrap(), parsed.clone());
        prop_assert_eq!(parse_ordinal(&x.print_loose()).unwrap(), parsed);
    }

    #[test]
    fn compare_matches_reference(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_cnf(&mut rng, 3, 3, 3);
        let b = if rng.gen_bool(0.2) { a.clone() } else { random_cnf(&mut rng, 3, 3, 3) };
        let (oa, ob) = (a.to_ordinal(), b.to_ordinal());
        prop_assert_eq!(oa.cmp(&ob), cmp_ref(&a, &b));
        prop_assert_eq!(arrowlab::ordinal::compare(&oa, &ob), cmp_ref(&a, &b));
    }

    #[test]
    fn fundamental_sequences_increase_below_the_limit(seed in any::<u64>(), k in 0u64..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_cnf(&mut rng, 3, 3, 4).to_ordinal();
        prop_assume!(b.is_limit());
        let x = fund_seq(&b, k).unwrap();
        let y = fund_seq(&b, k + 1).unwrap();
        prop_assert!(x < y, "{}[{}] = {} !< {}", b, k, x, y);
        prop_assert!(y < b);
    }
}

#[test]
fn compare_on_a_thousand_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let a = random_cnf(&mut rng, 2, 4, 3);
        let b = random_cnf(&mut rng, 2, 4, 3);
        assert_eq!(
            a.to_ordinal().cmp(&b.to_ordinal()),
            cmp_ref(&a, &b),
            "{} vs {}",
            a.print(),
            b.print()
        );
    }
}

#[test]
fn fundamental_sequence_examples() {
    assert_eq!(fund_seq(&ord("w"), 5).unwrap(), ord("5"));
    assert_eq!(fund_seq(&ord("w^2"), 0).unwrap(), ord("w"));
    assert_eq!(fund_seq(&ord("w^2"), 2).unwrap(), ord("w*3"));
    assert_eq!(fund_seq(&ord("w^2*2+w*3"), 1).unwrap(), ord("w^2*2+w*2+2"));
    assert_eq!(fund_seq(&ord("w^w"), 3).unwrap(), ord("w^3"));
    assert_eq!(fund_seq(&ord("w^(w+1)*2"), 0).unwrap(), ord("w^(w+1)+w^w"));
    assert!(matches!(
        fund_seq(&ord("w+1"), 0),
        Err(OrdinalError::NotLimit(_))
    ));
    assert!(matches!(
        fund_seq(&ord("0"), 0),
        Err(OrdinalError::NotLimit(_))
    ));
}

#[test]
fn fundamental_sequences_are_cofinal() {
    // Every a < b is passed by some b[k].
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let b = common::random_below_w3(&mut rng, 4);
        if !b.is_limit() {
            continue;
        }
        let a = common::random_below_w3(&mut rng, 4);
        if a >= b {
            continue;
        }
        assert!((0..20).any(|k| fund_seq(&b, k).unwrap() > a), "{a} < {b}");
    }
}

// Independent model of the enumeration below a bound < ω^ω: ordinals are
// coefficient vectors, enumerated by (coefficient sum + exponent sum +
// depth, value).
fn oracle_size(v: &[u64]) -> u64 {
    let sum: u64 = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(e, &c)| c + e as u64)
        .sum();
    let infinite = v.iter().skip(1).any(|&c| c > 0);
    sum + u64::from(infinite)
}

fn oracle_prefix(bound: &Cnf, len: usize, width: usize) -> Vec<Cnf> {
    let mut stage = 0u64;
    loop {
        // All vectors with size <= stage.
        let mut all = Vec::new();
        let mut v = vec![0u64; width];
        loop {
            if oracle_size(&v) <= stage {
                let x = Cnf::from_poly(&v);
                if cmp_ref(&x, bound).is_lt() {
                    all.push((oracle_size(&v), x));
                }
            }
            let mut i = 0;
            while i < width {
                v[i] += 1;
                if v[i] <= stage {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
            if i == width {
                break;
            }
        }
        if all.len() >= len {
            all.sort_by(|(s, x), (t, y)| s.cmp(t).then(cmp_ref(x, y)));
            return all.into_iter().take(len).map(|(_, x)| x).collect();
        }
        stage += 1;
    }
}

#[test]
fn enumeration_matches_the_oracle() {
    for (bound, width) in [
        (Cnf::from_poly(&[1, 1]), 2),
        (Cnf::from_poly(&[0, 2]), 2),
        (Cnf::from_poly(&[0, 0, 1]), 3),
        (Cnf::from_poly(&[2, 1, 1]), 3),
        (Cnf::from_poly(&[0, 0, 0, 1]), 4),
    ] {
        let b = bound.to_ordinal();
        let expected = oracle_prefix(&bound, 51, width);
        for (k, x) in expected.iter().enumerate() {
            let got = enumerate_below(&b, k as u64).unwrap();
            assert_eq!(got, x.to_ordinal(), "enumerate_below({b}, {k})");
            assert_eq!(enum_index(&b, &got).unwrap(), k as u64);
        }
    }
}

#[test]
fn golden_enumeration_values() {
    // Below ω+1 the stages are {0}, {1}, {2}, {3, ω}.
    assert_eq!(enum_index(&ord("w+1"), &ord("w")).unwrap(), 4);
    assert_eq!(enum_index(&ord("5"), &ord("2")).unwrap(), 2);
    assert_eq!(enum_index(&ord("w"), &ord("7")).unwrap(), 7);
    assert_eq!(enumerate_below(&ord("w+1"), 4).unwrap(), ord("w"));
    assert!(enum_index(&ord("w"), &ord("w")).is_err());
    assert!(enumerate_below(&ord("3"), 3).is_err());
}

#[test]
fn enumeration_inverts_on_random_queries() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bounds: Vec<Ordinal> = ["w", "w+1", "w*2", "w^2", "w^2+w*3+2", "w^3", "17"]
        .iter()
        .map(|s| ord(s))
        .collect();
    let mut seen: HashSet<(usize, u64)> = HashSet::new();
    for _ in 0..1000 {
        let bi = rng.gen_range(0..bounds.len());
        let b = &bounds[bi];
        let k = rng.gen_range(0..=50u64);
        if b.as_nat().is_some_and(|n| k >= n) {
            continue;
        }
        let a = enumerate_below(b, k).unwrap();
        assert!(a < *b);
        assert_eq!(enum_index(b, &a).unwrap(), k);
        seen.insert((bi, k));
    }
    for b in &bounds {
        let n = b.as_nat().unwrap_or(51).min(51);
        let xs: HashSet<Ordinal> = (0..n).map(|k| enumerate_below(b, k).unwrap()).collect();
        assert_eq!(xs.len() as u64, n, "enumeration below {b} repeats");
    }
}

#[test]
fn parse_errors_carry_positions() {
    for (s, pos) in [("w^", 2), ("w+*3", 2), ("(w", 0), ("3w", 1), ("", 0)] {
        let e = parse_ordinal(s).unwrap_err();
        assert!(e.position >= pos, "{s}: {e:?}");
    }
    assert_eq!(ord(" w ^ 2 + 1 "), ord("w^2+1"));
    assert_eq!(ord("ω^2+1").to_string(), "w^2+1");
    assert_eq!(ord("w^2+1"), Cnf::from_poly(&[1, 0, 1]).to_ordinal());
    assert_eq!(ord("w*0+3"), ord("3"));
}
