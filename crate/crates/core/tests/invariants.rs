use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trace_goppa::goppa::{random_squarefree, random_support};
use trace_goppa::linalg::MatrixFp;
use trace_goppa::{FieldSpec, GoppaCode, Polynomial, VectorQm};

const FIELDS: [(u32, u32, u32); 6] = [(2, 1, 3), (2, 2, 3), (2, 1, 5), (3, 1, 2), (3, 1, 3), (5, 1, 2)];

fn field(idx: usize) -> FieldSpec {
    let (p, s, m) = FIELDS[idx];
    FieldSpec::new(p, s, m).unwrap()
}

fn arb_field_and_elems(k: usize) -> impl Strategy<Value = (FieldSpec, Vec<u32>)> {
    (0..FIELDS.len()).prop_flat_map(move |i| {
        let f = field(i);
        let order = f.order() as u32;
        (Just(f), proptest::collection::vec(0..order, k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms((f, v) in arb_field_and_elems(3)) {
        let [a, b, c] = [v[0], v[1], v[2]].map(|x| f.element(x as u64).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication((f, v) in arb_field_and_elems(1), e in 0i64..40) {
        let a = f.element(v[0] as u64).unwrap();
        let mut acc = f.one();
        for _ in 0..e {
            acc = f.mul(acc, a);
        }
        prop_assert_eq!(f.pow(a, e).unwrap(), acc);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(f.pow(a, -e).unwrap(), acc), f.one());
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative((f, v) in arb_field_and_elems(2), k in 0u32..4) {
        let (a, b) = (f.element(v[0] as u64).unwrap(), f.element(v[1] as u64).unwrap());
        prop_assert_eq!(f.frobenius_p(f.add(a, b), k), f.add(f.frobenius_p(a, k), f.frobenius_p(b, k)));
        prop_assert_eq!(f.frobenius_p(f.mul(a, b), k), f.mul(f.frobenius_p(a, k), f.frobenius_p(b, k)));
    }

    #[test]
    fn trace_is_additive_into_subfield((f, v) in arb_field_and_elems(2)) {
        let (a, b) = (f.element(v[0] as u64).unwrap(), f.element(v[1] as u64).unwrap());
        let ta = f.trace_rel(a);
        prop_assert!(f.in_subfield_q(ta));
        prop_assert_eq!(f.trace_rel(f.add(a, b)), f.add(ta, f.trace_rel(b)));
    }

    #[test]
    fn division_identity((f, v) in arb_field_and_elems(8)) {
        let a = Polynomial::new(&f, v[..5].iter().map(|&x| f.element(x as u64).unwrap()).collect());
        let mut bc: Vec<_> = v[5..].iter().map(|&x| f.element(x as u64).unwrap()).collect();
        bc.push(f.one());
        let b = Polynomial::new(&f, bc);
        let (quo, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).add(&rem), a);
        prop_assert!(rem.degree().is_none_or(|d| d < b.degree().unwrap()));
    }

    #[test]
    fn rowspace_membership_matches_rank(
        p in prop::sample::select(vec![2u32, 3, 5]),
        rows in proptest::collection::vec(proptest::collection::vec(0u32..5, 7), 1..5),
        v in proptest::collection::vec(0u32..5, 7),
    ) {
        let rows: Vec<Vec<u32>> = rows.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        let v: Vec<u32> = v.into_iter().map(|x| x % p).collect();
        let m = MatrixFp::from_rows(p, 7, &rows).unwrap();
        let mut ext = m.clone();
        ext.push_row(&v).unwrap();
        prop_assert_eq!(m.rowspace_contains(&v).unwrap(), ext.rank() == m.rank());
        let k = m.kernel_basis();
        prop_assert_eq!(k.rows() + m.rank(), 7);
        for r in 0..k.rows() {
            prop_assert!(m.annihilates(&k.row(r)).unwrap());
        }
    }

    #[test]
    fn text_export_round_trips(
        p in prop::sample::select(vec![2u32, 3, 13]),
        rows in proptest::collection::vec(proptest::collection::vec(0u32..13, 9), 0..4),
    ) {
        let rows: Vec<Vec<u32>> = rows.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        let m = MatrixFp::from_rows(p, 9, &rows).unwrap();
        prop_assert_eq!(MatrixFp::from_text(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn dual_is_closed_under_p_powers(idx in 0..FIELDS.len(), seed in any::<u64>(), j in 0i64..6) {
        let f = field(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_squarefree(&f, 2, &mut rng);
        let n = (f.order() as usize - 2).min(12);
        let l = random_support(&f, &g, n, &mut rng).unwrap();
        let code = GoppaCode::build(&f, &l, &g).unwrap();
        let v = trace_goppa::goppa::eval_vector(&f, &l, j, &g, 1).unwrap();
        let contained = code.dual_contains(&v).unwrap();
        prop_assert_eq!(contained, code.dual_contains_rowspace(&v).unwrap());
        if contained {
            let w: VectorQm = v.pth_power(1);
            prop_assert!(code.dual_contains(&w).unwrap());
        }
    }

    #[test]
    fn kernel_words_have_zero_syndrome(idx in 0..FIELDS.len(), seed in any::<u64>()) {
        let f = field(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_squarefree(&f, 1, &mut rng);
        let n = (f.order() as usize - 1).min(20);
        let l = random_support(&f, &g, n, &mut rng).unwrap();
        let code = GoppaCode::build(&f, &l, &g).unwrap();
        let oracle = code.syndrome_oracle().unwrap();
        for r in 0..code.dim() {
            prop_assert!(oracle.is_zero(&code.kernel().row(r)).unwrap());
        }
    }
}
