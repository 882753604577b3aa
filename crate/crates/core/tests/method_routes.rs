use intertwine::closedform::{factorized_scaled, normalized_leading};
use intertwine::spectrum::{parity_class, recursion_spectrum, RecursionOptions};
use intertwine::{Signature, SpectralOrder, SpectralValue};

fn compare(p: u32, q: u32, r: f64, parity: u8) -> (f64, usize) {
    let sig = Signature::new(p, q).unwrap();
    let r = SpectralOrder::new(r).unwrap();
    let table = recursion_spectrum(sig, r, 12, 12, parity, &RecursionOptions::default()).unwrap();
    let mut worst: f64 = 0.0;
    let mut poles = 0;
    for v in parity_class(parity, 12, 12) {
        let rec = table.value(v).unwrap();
        let cf = normalized_leading(sig, r, v, table.base, r.default_continuation())
            .unwrap()
            .evaluate();
        match (rec, cf) {
            (SpectralValue::Pole, SpectralValue::Pole) => poles += 1,
            (SpectralValue::Finite(a), SpectralValue::Finite(b)) => {
                let scale = a.abs().max(b.abs());
                if scale > 0.0 {
                    worst = worst.max((a - b).abs() / scale);
                }
            }
            other => panic!("p={p} q={q} r={r} {v}: {other:?}"),
        }
    }
    (worst, poles)
}

#[test]
fn recursion_matches_gamma_ratio_everywhere() {
    for p in 1..=4 {
        for q in 1..=4 {
            for r in [0.37, 1.5, -0.8, 2.25, 1.0, 2.0, 3.0, -1.5, 0.5] {
                for parity in 0..2 {
                    let (worst, _) = compare(p, q, r, parity);
                    assert!(worst <= 1e-10, "p={p} q={q} r={r} parity={parity}: {worst}");
                }
            }
        }
    }
}

#[test]
fn integer_order_recursion_is_the_factorized_polynomial() {
    for p in 1..=4 {
        for q in 1..=4 {
            for r in 1..=3u32 {
                let sig = Signature::new(p, q).unwrap();
                let order = SpectralOrder::integer(i64::from(r));
                for parity in 0..2 {
                    let table = recursion_spectrum(sig, order, 12, 12, parity, &RecursionOptions::default()).unwrap();
                    let base = factorized_scaled(sig, r, table.base);
                    if base == 0 {
                        continue;
                    }
                    for v in parity_class(parity, 12, 12) {
                        let expected = factorized_scaled(sig, r, v) as f64 / base as f64;
                        let got = table.value(v).unwrap().finite().unwrap();
                        assert!(
                            (got - expected).abs() <= 1e-10 * expected.abs().max(1e-300),
                            "p={p} q={q} r={r} {v}: {got} vs {expected}"
                        );
                    }
                }
            }
        }
    }
}
