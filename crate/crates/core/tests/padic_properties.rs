use lehmer_core::ff::FqElem;
use lehmer_core::padic::{count_roots_unramified, local_profile, newton_polygon};
use lehmer_core::poly::{discriminant, ord_p_int};
use lehmer_core::IntPoly;
use num_bigint::BigInt;
use proptest::prelude::*;

fn squarefree_poly() -> impl Strategy<Value = IntPoly> {
    (1usize..=5)
        .prop_flat_map(|d| prop::collection::vec(-6i64..=6, d + 1))
        .prop_map(|mut c| {
            if c[0] == 0 {
                c[0] = 1;
            }
            let last = c.len() - 1;
            if c[last] == 0 {
                c[last] = 2;
            }
            IntPoly::from_i64s(&c).primitive_part()
        })
        .prop_filter("squarefree", |f| f.is_squarefree())
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn polygon_mass(f in squarefree_poly(), p in prime()) {
        let poly = newton_polygon(&f, p).unwrap();
        prop_assert_eq!(poly.total_length(), f.deg());
        for w in poly.segments.windows(2) {
            prop_assert!(w[0].slope < w[1].slope);
        }
    }

    #[test]
    fn recursion_stays_within_disc_budget(f in squarefree_poly(), p in prime(), level in 1u32..=3) {
        let s = count_roots_unramified(&f, p, level).unwrap();
        let ord = ord_p_int(&discriminant(&f).unwrap(), &BigInt::from(p)).unwrap();
        prop_assert!(s.max_depth <= ord + 1);
        prop_assert_eq!(s.membership_count, s.integral_count + s.nonintegral_count);
        prop_assert_eq!(s.residue_histogram.values().sum::<usize>(), s.integral_count);
        prop_assert!(s.membership_count <= f.deg());
    }

    #[test]
    fn membership_grows_along_subfields(f in squarefree_poly(), p in prime()) {
        let prof = local_profile(&f, p, 3).unwrap();
        let m: Vec<usize> = prof.levels.iter().map(|s| s.membership_count).collect();
        prop_assert!(m[0] <= m[1] && m[0] <= m[2]);
        let total: usize = prof.exact_generator_counts.values().sum();
        prop_assert_eq!(total + prof.unaccounted_count, f.deg());
        if prof.unaccounted_count > 0 {
            prop_assert!(prof.ramified_or_deep_flag);
        }
        // roots generating a degree-l field come in Frobenius orbits of size l
        for (l, g) in &prof.exact_generator_counts {
            prop_assert_eq!(g % *l as usize, 0);
        }
    }

    #[test]
    fn reverse_duality(f in squarefree_poly(), p in prime(), level in 1u32..=2) {
        let s = count_roots_unramified(&f, p, level).unwrap();
        let r = count_roots_unramified(&f.reverse().unwrap(), p, level).unwrap();
        let zero_class = r.residue_histogram.get(&FqElem::ZERO).copied().unwrap_or(0);
        prop_assert_eq!(s.nonintegral_count, zero_class);
    }
}

#[test]
fn planted_roots_sharing_a_residue() {
    // (x - 1)(x - 6)(x^2 + 2) at p = 5: both roots reduce to 1
    let f = &(&IntPoly::from_i64s(&[-1, 1]) * &IntPoly::from_i64s(&[-6, 1]))
        * &IntPoly::from_i64s(&[2, 0, 1]);
    let s = count_roots_unramified(&f, 5, 1).unwrap();
    assert_eq!(s.integral_count, 2);
    assert_eq!(s.residue_histogram.get(&FqElem::constant(1)), Some(&2));
}
