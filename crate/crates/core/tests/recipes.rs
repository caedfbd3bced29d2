use cyclomds::arith::odd_prime_powers;
use cyclomds::cyclotomy::Cyclotomy;
use cyclomds::grs::MdsBudget;
use cyclomds::theorem::{recipes_for, theorem6_check, Claim};
use cyclomds::Field;
use proptest::prelude::*;

fn pairs() -> Vec<(u64, u32, usize)> {
    let mut out = Vec::new();
    for (p, m) in odd_prime_powers(130) {
        let q = p.pow(m);
        for e in (2..=10).step_by(2) {
            if (q - 1) % e as u64 == 0 {
                out.push((p, m, e));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Whatever the case split emits materializes to a self-dual MDS code.
    #[test]
    fn emitted_recipes_are_sound((p, m, e) in prop::sample::select(pairs()), mask in 1u32..1024, pick in any::<prop::sample::Index>()) {
        let field = Field::new(p, m).unwrap();
        let cyc = Cyclotomy::new(&field, e).unwrap();
        let table = cyc.table();
        let classes: Vec<usize> = (0..e).filter(|&i| mask >> i & 1 == 1).collect();
        prop_assume!(!classes.is_empty());
        let budget = MdsBudget { samples: 64, ..MdsBudget::default() };
        for r in theorem6_check(&table, &classes) {
            let cert = r.materialize(&field, &budget, 0).unwrap();
            prop_assert!(cert.verified(), "{r:?}");
            prop_assert_eq!(cert.code.length(), r.length);
            prop_assert_eq!(r.length % 2, 0);
        }
        let all = recipes_for(&cyc, &table).unwrap();
        let r = pick.get(&all);
        let cert = r.materialize(&field, &budget, 1).unwrap();
        prop_assert!(cert.self_dual && cert.mds.result, "{r:?}");
        // q ≡ 3 (mod 4) never yields a length ≡ 2 (mod 4)
        if field.q() % 4 == 3 {
            prop_assert_eq!(r.length % 4, 0);
        }
        let points = r.evaluation_set(&cyc).unwrap().len();
        match r.claim {
            Claim::SigmaG => prop_assert_eq!(points, r.length),
            Claim::SigmaEg => prop_assert_eq!(points + 1, r.length),
        }
    }
}
