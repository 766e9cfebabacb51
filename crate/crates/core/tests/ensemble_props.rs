use lzkit::ensemble::{
    ball_members, build_universal, rd_point, Distortion, DistortionBall, NeumaierSum,
};
use lzkit::{incremental_parse, Alphabet};

#[test]
fn n8_distribution_is_normalised() {
    let d = build_universal(8, &Alphabet::binary()).unwrap();
    assert_eq!(d.len(), 256);
    let mut total = NeumaierSum::default();
    for r in 0..d.len() {
        assert!(d.weight(r) > 0.0);
        total.add(d.probability(r));
        // cost is c log2 c of the parse, incomplete last phrase included
        let c = incremental_parse(&d.sequence(r)).c() as f64;
        assert_eq!(d.cost(r), if c <= 1.0 { 0.0 } else { c * c.log2() });
    }
    assert!((total.value() - 1.0).abs() <= 1e-9);
}

#[test]
fn ternary_covers_every_sequence_once() {
    let d = build_universal(6, &Alphabet::new(3).unwrap()).unwrap();
    assert_eq!(d.len(), 729);
    for r in 0..d.len() {
        assert_eq!(d.rank(&d.sequence(r)).unwrap(), r);
    }
}

#[test]
fn rate_falls_with_distortion_and_beats_best_reproduction() {
    let d = build_universal(8, &Alphabet::binary()).unwrap();
    let log_z = d.z().log2();
    for r in 0..d.len() {
        let x = d.sequence(r);
        let mut prev = f64::INFINITY;
        for k in 0..=8 {
            let radius = k as f64 / 8.0;
            let rho = rd_point(&x, radius, &d).unwrap();
            assert!(rho <= prev, "rank {r}, D = {radius}");
            prev = rho;
            let ball = DistortionBall {
                center: x.clone(),
                radius,
                distortion: Distortion::Hamming,
            };
            let best = ball_members(&ball, &d)
                .unwrap()
                .into_iter()
                .map(|m| (d.cost(m) + log_z) / 8.0)
                .fold(f64::INFINITY, f64::min);
            assert!(rho <= best + 1e-12, "rank {r}, D = {radius}");
        }
        assert_eq!(rd_point(&x, 0.0, &d).unwrap(), (d.cost(r) + log_z) / 8.0);
        assert_eq!(prev, 0.0);
    }
}

#[test]
fn ball_sizes_are_binomial_sums() {
    let d = build_universal(8, &Alphabet::binary()).unwrap();
    let sizes = [1, 9, 37, 93, 163, 219, 247, 255, 256];
    for (k, &want) in sizes.iter().enumerate() {
        let ball = DistortionBall {
            center: d.sequence(0b1011_0010),
            radius: k as f64 / 8.0,
            distortion: Distortion::Hamming,
        };
        assert_eq!(ball_members(&ball, &d).unwrap().len(), want);
    }
}
