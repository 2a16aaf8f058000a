use qbps_core::oracle::{dd_count_brute, magic_count_brute, window_scan};
use qbps_core::rational::{qi, qr};
use qbps_core::*;

fn scan_matches(q: &Quiver, d: &DimVec, mu: &GenericReal, alpha: i64, delta: &Weight) {
    let rep = framed_summands(q, d, mu, alpha, delta).unwrap();
    let scan = window_scan(q, d, mu, alpha, delta).unwrap();
    let mut mine: Vec<_> = rep.labels.iter().map(|e| e.label.lex_key()).collect();
    mine.sort();
    assert_eq!(mine, scan.labels, "{d:?} mu={mu} alpha={alpha}");
    assert_eq!(rep.generator_count, Some(scan.generators));
    assert_eq!(rep.count, scan.labels.len());
}

#[test]
fn framed_windows_one_vertex() {
    for g in [1usize, 3, 5] {
        let q = Quiver::loops(g);
        for n in 1..=3 {
            for mu in ["0:-1", "0:+1", "1/3:-1", "-1:+1"] {
                for alpha in 1..=2 {
                    scan_matches(&q, &DimVec(vec![n]), &mu.parse().unwrap(), alpha, &Weight::zero(n));
                }
            }
        }
    }
}

#[test]
fn framed_windows_two_vertices() {
    let q = Quiver::a2().triple();
    for d in [vec![1, 1], vec![2, 1]] {
        let d = DimVec(d);
        for mu in ["0:-1", "1/5:+1"] {
            scan_matches(&q, &d, &mu.parse().unwrap(), 1, &Weight::zero(d.total()));
        }
    }
    let q = Quiver::loops(2).double();
    scan_matches(&q, &DimVec(vec![2]), &"0:+1".parse().unwrap(), 2, &Weight::zero(2));
}

#[test]
fn framed_window_with_delta() {
    let q = Quiver::loops(3);
    let delta = Weight(vec![qr(1, 3); 2]);
    scan_matches(&q, &DimVec(vec![2]), &"0:-1".parse().unwrap(), 2, &delta);
}

#[test]
fn single_slot_window_counts_alpha() {
    for alpha in 1..=4 {
        let rep = framed_summands(&Quiver::loops(1), &DimVec(vec![1]), &"2/7".parse().unwrap(), alpha, &Weight::zero(1)).unwrap();
        assert_eq!(rep.count, alpha as usize);
    }
}

#[test]
fn magic_generators_match_brute_force() {
    let cases = [
        (Quiver::loops(3), DimVec(vec![2])),
        (Quiver::loops(3), DimVec(vec![3])),
        (Quiver::a2().triple(), DimVec(vec![2, 1])),
        (Quiver::loops(2).double(), DimVec(vec![2])),
    ];
    for (q, d) in cases {
        let (tau, _) = tau_sigma(&d).unwrap();
        for v in -2..=2 {
            for frac in [qi(0), qr(1, 2), qr(1, 3)] {
                let delta = tau.scale(&(qi(v) + &frac));
                let fast = magic_generators(&q, &d, &delta).unwrap().len();
                assert_eq!(fast, magic_count_brute(&q, &d, &delta).unwrap(), "{d:?} delta={delta:?}");
            }
        }
    }
}

#[test]
fn quasi_bps_generators_match_brute_force() {
    for (q, d) in [(Quiver::loops(3), DimVec(vec![2])), (Quiver::a2().triple(), DimVec(vec![1, 1]))] {
        for mu in ["0:-1", "0:+1", "1/2:-1", "1/3"] {
            let mu: GenericReal = mu.parse().unwrap();
            let zero = Weight::zero(d.total());
            let fast = dd_generators(&q, &d, &GenericWeight::shifted(&zero, &mu)).unwrap().len();
            assert_eq!(fast, dd_count_brute(&q, &d, &zero, &mu).unwrap(), "{d:?} mu={mu}");
        }
    }
}

#[test]
fn counting_identity_tripled_a2() {
    let q = Quiver::a2().triple();
    let mu: GenericReal = "0:-1".parse().unwrap();
    for d in [vec![1, 1], vec![2, 1]] {
        let d = DimVec(d);
        let zero = Weight::zero(d.total());
        let dd = dd_generators(&q, &d, &GenericWeight::shifted(&zero, &mu)).unwrap().len();
        let rep = framed_summands(&q, &d, &mu, 1, &zero).unwrap();
        assert_eq!(Some(dd), rep.generator_count, "{d:?}");
    }
}
