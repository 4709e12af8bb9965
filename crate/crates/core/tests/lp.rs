use inforest_core::lpcert::{self, base_constraints, check_point, derived_constraints, find_redundancy_certificate, maximize, q, Q};
use proptest::prelude::*;

fn objective() -> [Q; 4] {
    [q(1, 1), q(-2, 1), q(0, 1), q(0, 1)]
}

#[test]
fn argmax_satisfies_every_constraint() {
    let base = base_constraints();
    let (opt, p) = maximize(&objective(), &base).unwrap();
    assert_eq!(opt, q(5, 9));
    assert_eq!(check_point(&p, &base).violations().count(), 0);
    assert_eq!(check_point(&p, &derived_constraints()).violations().count(), 0);
}

#[test]
fn certificates_resum_coefficientwise() {
    let base = base_constraints();
    for t in derived_constraints() {
        let c = find_redundancy_certificate(&t, &base).unwrap();
        let mut sum = vec![q(0, 1); 5];
        for (label, m) in &c.multipliers {
            assert!(*m >= q(0, 1));
            let row = base.iter().find(|b| &b.label == label).unwrap();
            for (s, k) in sum.iter_mut().zip(row.coef.iter()) {
                *s += m * k;
            }
        }
        assert_eq!(sum, t.coef.to_vec(), "{}", t.label);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn row_scaling_leaves_the_optimum(scales in proptest::collection::vec((1i64..20, 1i64..20), 19)) {
        let base = base_constraints();
        let scaled: Vec<_> = base.iter().zip(&scales).map(|(c, &(n, d))| c.scaled(&q(n, d))).collect();
        let a = maximize(&objective(), &base).unwrap();
        let b = maximize(&objective(), &scaled).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn chain_certificate_holds_for_every_t(t in 0i64..200) {
        let base = base_constraints();
        let target = lpcert::t6_chain_constraint(t);
        let cert = lpcert::FarkasCertificate {
            target: target.label.clone(),
            multipliers: [("Bm".to_string(), q(1, 1)), ("Bk".to_string(), q(t, 1))]
                .into_iter()
                .filter(|(_, m)| *m != q(0, 1))
                .collect(),
        };
        prop_assert!(cert.verify(&target, &base));
    }
}
