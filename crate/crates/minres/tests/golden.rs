use minres::dynrep::{Center, HomogPair};
use minres::minres_a::{analyze, classify_mobius, conjugate_at_gamma, AnalyzeConfig, Anchor, LocusKind};
use minres::padic::{q, qi, Q64};
use num_rational::BigRational;

fn pair(a: &[i64], b: &[i64]) -> HomogPair {
    HomogPair::from_i64(a, b).unwrap()
}

fn disc(a: &Anchor) -> (String, Q64) {
    let d = a.as_disc().unwrap();
    (d.center.to_string(), d.s)
}

fn run(p: &HomogPair, prime: u64) -> minres::minres_a::MinResReport {
    analyze(p, prime, &AnalyzeConfig::default()).unwrap()
}

#[test]
fn cube_with_potential_good_reduction() {
    let ex = pair(&[-5, 0, 0, 1], &[0, 0, 1, 0]);
    let r = run(&ex, 5);
    assert_eq!(r.ordres_at_gauss, qi(2));
    assert_eq!(r.min_value, qi(0));
    assert!(r.pgr);
    assert_eq!(r.locus.kind, LocusKind::Point);
    assert_eq!(disc(&r.locus.anchors[0]), ("0".to_string(), q(-1, 3)));
    assert_eq!(r.extension_degree, 3);
    let c = conjugate_at_gamma(&ex, &r.gamma).unwrap();
    assert!(c.good_reduction_check(5).unwrap());
}

#[test]
fn quadratic_over_two() {
    let ex = pair(&[-1, 0, 1], &[0, 2, 0]);
    let r = run(&ex, 2);
    assert_eq!(r.ordres_at_gauss, qi(2));
    assert_eq!(r.min_value, qi(0));
    assert_eq!(r.locus.kind, LocusKind::Point);
    let a = r.locus.anchors[0].as_disc().unwrap();
    assert_eq!(a.s, qi(-1));
    let Center::Algebraic { value, .. } = &a.center else { panic!("center should be algebraic: {}", a.center) };
    let sq = value.mul(value).add(&value.field().one());
    assert!(sq.val().lower() >= qi(1), "center is not congruent to i");
    let c = conjugate_at_gamma(&ex, &r.gamma).unwrap();
    assert!(c.good_reduction_check(2).unwrap());
}

#[test]
fn frobenius_lift_has_no_potential_good_reduction() {
    for p in [3i64, 5] {
        let mut a = vec![0i64; p as usize + 1];
        a[1] = -1;
        a[p as usize] = 1;
        let mut b = vec![0i64; p as usize + 1];
        b[0] = p;
        let r = run(&pair(&a, &b), p as u64);
        assert_eq!(r.min_value, qi(p));
        assert!(!r.pgr);
        assert_eq!(r.locus.kind, LocusKind::Point);
        assert_eq!(disc(&r.locus.anchors[0]), ("0".to_string(), qi(0)));
    }
}

#[test]
fn cubic_with_distant_minimum() {
    // (p^4 z^3 + p z + 1)/(p^6 z^3), p = 5
    let ex = pair(&[1, 5, 0, 625], &[0, 0, 0, 15625]);
    let r = run(&ex, 5);
    assert_eq!(r.min_value, qi(3));
    assert_eq!(r.locus.kind, LocusKind::Point);
    assert_eq!(disc(&r.locus.anchors[0]), ("0".to_string(), q(3, 2)));
}

#[test]
fn segment_examples() {
    for n in [1u32, 2] {
        let pn = 3i64.pow(n);
        let ex = pair(&[0, -pn, 1, pn], &[pn, 1, -pn, 0]);
        let r = run(&ex, 3);
        assert_eq!(r.min_value, qi(4 * n as i64));
        assert_eq!(r.locus.kind, LocusKind::Segment);
        let got: Vec<_> = r.locus.anchors.iter().map(disc).collect();
        assert_eq!(got, vec![("0".to_string(), qi(-(n as i64))), ("0".to_string(), qi(n as i64))]);
    }
}

#[test]
fn quartic_denominator() {
    // z^2 / (1 + 5z)^4
    let ex = pair(&[0, 0, 1, 0, 0], &[1, 20, 150, 500, 625]);
    let r = run(&ex, 5);
    assert_eq!(r.min_value, q(8, 3));
    assert!(!r.pgr);
    assert_eq!(r.locus.kind, LocusKind::Point);
    assert_eq!(r.locus.anchors[0].as_disc().unwrap().s, q(4, 3));
}

#[test]
fn constant_direction_example() {
    // (5z^3 + z^2)/5
    let ex = pair(&[0, 0, 1, 5], &[5, 0, 0, 0]);
    let r = run(&ex, 5);
    assert_eq!(r.min_value, qi(6));
    assert_eq!(r.locus.kind, LocusKind::Segment);
    let got: Vec<_> = r.locus.anchors.iter().map(disc).collect();
    assert_eq!(got, vec![("0".to_string(), qi(-1)), ("0".to_string(), qi(1))]);
}

#[test]
fn degree_one_cases() {
    let p = 5;
    let id = classify_mobius(&pair(&[0, 1], &[1, 0]), p).unwrap();
    assert_eq!((id.locus.kind, id.min_value), (LocusKind::Everything, qi(0)));
    let mul = classify_mobius(&pair(&[0, 5], &[1, 0]), p).unwrap();
    assert_eq!((mul.locus.kind.clone(), mul.min_value), (LocusKind::Path, qi(1)));
    assert!(matches!(mul.locus.anchors[..], [Anchor::Point(Center::Rational(ref z)), Anchor::Infinity] if *z == BigRational::from_integer(0.into())));
    let tr = classify_mobius(&pair(&[1, 1], &[1, 0]), p).unwrap();
    assert_eq!((tr.locus.kind, tr.min_value), (LocusKind::Horodisc { codiameter_exponent: qi(0) }, qi(0)));
    let tube = classify_mobius(&pair(&[0, 6], &[1, 0]), p).unwrap();
    assert_eq!((tube.locus.kind, tube.min_value), (LocusKind::StrongTube { radius: qi(1) }, qi(0)));
}

mod descent {
    use super::pair;
    use minres::descent_b::{descend, DescendConfig};
    use minres::dynrep::{ordres_at, TypeIIPoint};
    use minres::padic::qi;
    use num_rational::BigRational;

    #[test]
    fn quadratic_over_two_stays_at_gauss_point() {
        let r = descend(&pair(&[-1, 0, 1], &[0, 2, 0]), 2, &DescendConfig::default()).unwrap();
        assert_eq!(r.hv_min, qi(2));
        assert!(!r.absolute);
        let p = r.point(2);
        assert_eq!(p.s, qi(0));
    }

    #[test]
    fn frobenius_lift_is_already_minimal() {
        let r = descend(&pair(&[0, -1, 0, 1], &[3, 0, 0, 0]), 3, &DescendConfig::default()).unwrap();
        assert_eq!(r.hv_min, qi(3));
        assert!(r.absolute);
        let r = descend(&pair(&[0, -1, 0, 0, 0, 1], &[5, 0, 0, 0, 0, 0]), 5, &DescendConfig::default()).unwrap();
        assert_eq!(r.hv_min, qi(5));
        assert!(r.absolute);
    }

    #[test]
    fn cubic_with_distant_minimum() {
        let ex = pair(&[1, 5, 0, 625], &[0, 0, 0, 15625]);
        let r = descend(&ex, 5, &DescendConfig::default()).unwrap();
        assert_eq!(r.hv_min, qi(6));
        assert!(!r.absolute);
        assert_eq!(r.point(5).s, qi(1));
        let zero = BigRational::from_integer(0.into());
        assert_eq!(ordres_at(&ex, &TypeIIPoint::rational(zero.clone(), qi(1)), 5).unwrap(), qi(6));
        assert_eq!(ordres_at(&ex, &TypeIIPoint::rational(zero, qi(2)), 5).unwrap(), qi(6));
    }
}
