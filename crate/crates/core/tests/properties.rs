use proptest::prelude::*;

use rdlab::estimator::{hybrid_minimize, mb_fqm, nb_fqm, AttackParams, Conventions, CostModel, SmPlusModel};
use rdlab::galois::{make_ext_field, Elem};
use rdlab::instances::gen_rd;
use rdlab::labkit::format::{Instance, InstanceFile};
use rdlab::matlin::Matrix;

fn field_params() -> impl Strategy<Value = (u64, usize)> {
    (prop::sample::select(vec![2u64, 3, 4, 5]), 1usize..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws((q, m) in field_params(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let ext = make_ext_field(q, m).unwrap();
        let f = ext.field();
        let (a, b, c) = (a % f.order(), b % f.order(), c % f.order());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        prop_assert_eq!(f.frobenius(a, m), a);
        prop_assert!(ext.base().order() as u64 == q);
        // trace is F_q-linear and lands in F_q
        let t = ext.trace(f.add(a, b));
        prop_assert_eq!(t, ext.base().add(ext.trace(a), ext.trace(b)));
        prop_assert!(t < q as Elem);
    }

    #[test]
    fn rank_nullity((q, m) in field_params(), rows in 1usize..6, cols in 1usize..7, seed in any::<u64>()) {
        let ext = make_ext_field(q, m).unwrap();
        let f = ext.field();
        let mut s = seed;
        let data: Vec<Elem> = (0..rows * cols)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) % f.order() as u64) as Elem
            })
            .collect();
        let mat = Matrix::from_vec(f, rows, cols, data);
        let e = mat.echelonize();
        prop_assert_eq!(e.rank + e.kernel.len(), cols);
        for v in &e.kernel {
            prop_assert!(mat.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn fqm_system_never_square(n in 3usize..40, k in 1usize..30, r in 1usize..8, b in 1usize..5) {
        prop_assume!(k + r < n && !(k == 1 && r == 1));
        prop_assert!(nb_fqm(n, k, r, b) < mb_fqm(n, k, r, b) - 1);
    }

    #[test]
    fn hybrid_not_worse_than_plain(m in 8usize..40, k in 4usize..20, r in 2usize..5) {
        let params = AttackParams::rd(2, m, 2 * k, k, r);
        let conv = Conventions::default();
        let model = SmPlusModel::default();
        let hybrid = hybrid_minimize(&model, &params, &conv);
        if let Some(plain) = model.plain(&params, &conv) {
            prop_assert!(hybrid.bits <= plain.bits + 1e-9);
        }
    }

    #[test]
    fn instance_file_round_trip((q, m) in (prop::sample::select(vec![2u64, 3, 4]), 3usize..6), seed in any::<u64>()) {
        let rd = gen_rd(q, m, 6, 2, 2, seed).unwrap();
        let text = InstanceFile::from_rd(&rd).to_json();
        let Instance::Rd(back) = InstanceFile::parse(&text).unwrap().into_instance().unwrap() else {
            panic!("kind changed");
        };
        prop_assert_eq!(&back.g, &rd.g);
        prop_assert_eq!(&back.y, &rd.y);
        prop_assert!(back.is_solution(&back.witness.as_ref().unwrap().e, 2));
    }
}
