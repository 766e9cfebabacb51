use lzkit::divergence::{classify, lz_divergence, Classifier, LabeledCorpus};
use lzkit::synth;
use lzkit::{cross_parse, incremental_parse, Alphabet, Sequence};
use proptest::prelude::*;

fn seq(size: u32, s: Vec<u32>) -> Sequence {
    Sequence::new(Alphabet::new(size).unwrap(), s).unwrap()
}

proptest! {
    #[test]
    fn self_divergence_has_closed_form(s in prop::collection::vec(0u32..3, 1..300)) {
        let x = seq(3, s);
        let n = x.len() as f64;
        let c = incremental_parse(&x).c() as f64;
        let want = (n.log2() - c * c.log2()) / n;
        prop_assert!((lz_divergence(&x, &x).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn relabeling_both_sides_is_invariant(
        x in prop::collection::vec(0u32..3, 1..200),
        y in prop::collection::vec(0u32..3, 1..200),
        perm in Just(vec![0u32, 1, 2]).prop_shuffle(),
    ) {
        let d = lz_divergence(&seq(3, x.clone()), &seq(3, y.clone())).unwrap();
        let map = |v: &[u32]| v.iter().map(|&s| perm[s as usize]).collect::<Vec<_>>();
        let e = lz_divergence(&seq(3, map(&x)), &seq(3, map(&y))).unwrap();
        prop_assert_eq!(d, e);
    }

    #[test]
    fn classifier_matches_free_function(
        x in prop::collection::vec(0u32..2, 1..100),
        a in prop::collection::vec(0u32..2, 1..100),
        b in prop::collection::vec(0u32..2, 1..100),
    ) {
        let corpus = LabeledCorpus::new(vec![
            ("a".into(), seq(2, a.clone())),
            ("b".into(), seq(2, b.clone())),
        ]).unwrap();
        let x = seq(2, x);
        let r = Classifier::new(&corpus).unwrap().classify(&x).unwrap();
        prop_assert_eq!(&r, &classify(&x, &corpus).unwrap());
        prop_assert_eq!(r.scores[0].delta, lz_divergence(&x, &seq(2, a)).unwrap());
        prop_assert_eq!(r.scores[1].delta, lz_divergence(&x, &seq(2, b)).unwrap());
        let min = r.scores.iter().map(|s| s.delta).fold(f64::INFINITY, f64::min);
        let first = r.scores.iter().find(|s| s.delta == min).unwrap();
        prop_assert_eq!(&r.label, &first.label);
    }
}

#[test]
fn cross_parse_of_repeats_per_symbol_falls() {
    let w = synth::fair_coin(37, 5);
    let ratios: Vec<f64> = [1usize, 2, 4, 8, 16, 32]
        .iter()
        .map(|&k| {
            let x = seq(
                2,
                w.symbols().iter().copied().cycle().take(37 * k).collect(),
            );
            cross_parse(&x, &w).unwrap().count() as f64 / x.len() as f64
        })
        .collect();
    assert!(ratios.windows(2).all(|p| p[1] <= p[0]), "{ratios:?}");
}

#[test]
fn independent_fair_coins_are_near_zero() {
    let n = 1 << 16;
    for seed in 0..5 {
        let d =
            lz_divergence(&synth::fair_coin(n, seed), &synth::fair_coin(n, seed + 100)).unwrap();
        assert!(d.abs() <= 0.3, "{d}");
    }
}

#[test]
fn bernoulli_classes_are_separated() {
    let train = 1 << 15;
    let corpus = LabeledCorpus::new(vec![
        ("low".into(), synth::bernoulli(train, 0.1, 1)),
        ("high".into(), synth::bernoulli(train, 0.9, 2)),
    ])
    .unwrap();
    let clf = Classifier::new(&corpus).unwrap();
    let mut correct = 0;
    for t in 0..100u64 {
        let (label, p) = if t % 2 == 0 {
            ("low", 0.1)
        } else {
            ("high", 0.9)
        };
        let x = synth::bernoulli(2048, p, 10_000 + t);
        correct += usize::from(clf.classify(&x).unwrap().label == label);
    }
    assert!(correct >= 95, "{correct}/100");
}

#[test]
fn corpus_validation() {
    let x = synth::fair_coin(10, 0);
    assert!(LabeledCorpus::new(vec![]).is_err());
    assert!(LabeledCorpus::new(vec![("a".into(), x.clone()), ("a".into(), x.clone())]).is_err());
    let ternary = seq(3, vec![2, 1]);
    assert!(LabeledCorpus::new(vec![("a".into(), x.clone()), ("b".into(), ternary)]).is_err());
    let grouped = LabeledCorpus::from_groups(vec![(
        "a".into(),
        vec![synth::constant(3, 0), synth::constant(2, 1)],
    )])
    .unwrap();
    assert_eq!(grouped.classes()[0].1.symbols(), &[0, 0, 0, 1, 1]);
    assert!(lz_divergence(&x, &Sequence::empty(Alphabet::binary())).is_err());
}
