use num_rational::Ratio;
use proptest::prelude::*;
use zigzag::analysis::{check_property_e, column_bound_check, density, ratio_formula};
use zigzag::code::{encode, CodeArray};
use zigzag::constructions::{build_duplication, build_from_vectors, build_optimal_general, build_optimal_r2};
use zigzag::field::Field;
use zigzag::linalg::{vec_perm, RVector, Subspace};
use zigzag::rebuild::{execute_rebuild, measure_ratio, plan_multi, plan_single, RatioMode};

fn small_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3), (7, 1), (2, 4), (13, 1)])
        .prop_map(|(p, d)| Field::new(p, d, None).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in small_field(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let q = f.q();
        let (a, b, c) = ((a % q) as u16, (b % q) as u16, (c % q) as u16);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn encoding_is_linear(m in 1usize..=3, seed in any::<u64>(), c in 1u16..3) {
        let spec = build_optimal_r2(m).unwrap();
        let f = spec.field();
        let p = spec.p();
        let gen = |s: u64| -> Vec<Vec<u16>> {
            (0..spec.k()).map(|j| (0..p).map(|x| ((s.wrapping_mul(31).wrapping_add((j * p + x) as u64 * 7)) % 3) as u16).collect()).collect()
        };
        let (a, b) = (gen(seed), gen(seed ^ 0x5555));
        let mix: Vec<Vec<u16>> = a.iter().zip(&b).map(|(u, v)| u.iter().zip(v).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect()).collect();
        let (pa, pb, pm) = (encode(&spec, &a).unwrap(), encode(&spec, &b).unwrap(), encode(&spec, &mix).unwrap());
        for l in 0..2 {
            for t in 0..p {
                prop_assert_eq!(pm[l][t], f.add(pa[l][t], f.mul(c, pb[l][t])));
            }
        }
    }

    #[test]
    fn vector_permutations_form_a_group(r in prop::sample::select(vec![2u32, 3, 5]), m in 1usize..=3, a in any::<usize>(), b in any::<usize>()) {
        let p = (r as usize).pow(m as u32);
        let (va, vb) = (RVector::from_int(r, m, a % p), RVector::from_int(r, m, b % p));
        let (fa, fb) = (vec_perm(&va, 1), vec_perm(&vb, 1));
        prop_assert_eq!(fa.compose(&fb), vec_perm(&va.add(&vb), 1));
        prop_assert!(fa.compose(&fa.inverse()).is_identity());
        prop_assert!(vec_perm(&va, r).is_identity());
    }

    #[test]
    fn subspace_dimension(r in prop::sample::select(vec![2u32, 3, 5]), m in 1usize..=3, xs in prop::collection::vec(any::<usize>(), 0..4)) {
        let p = (r as usize).pow(m as u32);
        let vs: Vec<RVector> = xs.iter().map(|&x| RVector::from_int(r, m, x % p)).collect();
        let z = Subspace::span(r, m, &vs).unwrap();
        prop_assert!(z.dimension() <= vs.len().min(m));
        prop_assert_eq!(z.size(), (r as usize).pow(z.dimension() as u32));
        prop_assert_eq!(z.elements().len(), z.size());
        prop_assert_eq!(z.orthogonal_complement().dimension(), m - z.dimension());
        for v in &vs {
            prop_assert!(z.contains(v).unwrap());
        }
    }

    #[test]
    fn single_rebuild_roundtrip(m in 1usize..=3, s in 1usize..=2, seed in any::<u64>(), col in any::<usize>()) {
        let spec = build_duplication(m, s, 3).unwrap();
        let q = spec.field().q() as u64;
        let info: Vec<Vec<u16>> = (0..spec.k())
            .map(|j| (0..spec.p()).map(|x| (seed.rotate_left((j * 7 + x) as u32 % 64) % q) as u16).collect())
            .collect();
        let array = CodeArray::encode(&spec, info).unwrap();
        let j = col % spec.k();
        let plan = plan_single(&spec, j).unwrap();
        let mut damaged = array.clone();
        damaged.erase(&[j]);
        prop_assert_eq!(execute_rebuild(&spec, &plan, &damaged).unwrap(), vec![array.info[j].clone()]);
    }

    #[test]
    fn multi_rebuild_roundtrip(m in 1usize..=3, seed in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let spec = build_optimal_general(m, 3, 2 * m as u32 + 3, None).unwrap();
        let k = spec.k();
        let (a, b) = (a % k, b % k);
        prop_assume!(a != b);
        let q = spec.field().q() as u64;
        let info: Vec<Vec<u16>> = (0..k)
            .map(|j| (0..spec.p()).map(|x| (seed.rotate_left((j * 5 + x) as u32 % 64) % q) as u16).collect())
            .collect();
        let array = CodeArray::encode(&spec, info).unwrap();
        let plan = plan_multi(&spec, &[a, b]).unwrap();
        let mut damaged = array.clone();
        damaged.erase(&[a, b]);
        let mut want = vec![(a, array.info[a].clone()), (b, array.info[b].clone())];
        want.sort();
        prop_assert_eq!(execute_rebuild(&spec, &plan, &damaged).unwrap(), want.into_iter().map(|w| w.1).collect::<Vec<_>>());
    }

    #[test]
    fn two_parity_ratio_at_least_half(m in 1usize..=4, xs in prop::collection::btree_set(1usize..16, 1..6)) {
        let p = 1usize << m;
        let vs: Vec<RVector> = xs.iter().filter(|&&x| x < p).map(|&x| RVector::from_int(2, m, x)).collect();
        prop_assume!(!vs.is_empty());
        let spec = build_from_vectors(vs, 2, m).unwrap();
        let formula = ratio_formula(&spec, RatioMode::Single).unwrap();
        prop_assert!(formula >= Ratio::new(1, 2));
        prop_assert_eq!(formula, measure_ratio(&spec, RatioMode::Single).unwrap());
    }

    #[test]
    fn three_parity_ratio_at_least_e_over_r(xs in prop::collection::btree_set(0usize..9, 3..6), e in 1usize..=2) {
        let vs: Vec<RVector> = xs.iter().map(|&x| RVector::from_int(3, 2, x)).collect();
        let spec = build_from_vectors(vs, 3, 2).unwrap();
        let mode = if e == 1 { RatioMode::Single } else { RatioMode::Sets(e) };
        let measured = measure_ratio(&spec, mode).unwrap();
        prop_assert!(measured >= Ratio::new(e as u64, 3));
        prop_assert_eq!(ratio_formula(&spec, mode).unwrap(), measured);
    }

    #[test]
    fn density_bound(m in 1usize..=4, xs in prop::collection::btree_set(1usize..16, 1..10)) {
        let p = 1usize << m;
        let vs: Vec<RVector> = xs.iter().filter(|&&x| x < p).map(|&x| RVector::from_int(2, m, x)).collect();
        prop_assume!(!vs.is_empty());
        prop_assert!(density(&vs).unwrap() <= Ratio::new(m as u64 - 1, m as u64));
    }

    #[test]
    fn property_e_is_monotone(xs in prop::collection::btree_set(0usize..9, 3..7)) {
        let vs: Vec<RVector> = xs.iter().map(|&x| RVector::from_int(3, 2, x)).collect();
        let mut held = false;
        for e in 1..vs.len() {
            let now = check_property_e(&vs, e).unwrap();
            prop_assert!(!held || now, "property {} lost after holding", e);
            held |= now;
            prop_assert!(column_bound_check(&vs, e).unwrap());
        }
    }
}
