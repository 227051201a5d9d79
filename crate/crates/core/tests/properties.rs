use proptest::prelude::*;

use tstruct_core::derivedcat::{catalog, DObject, IndecObject};
use tstruct_core::recol::{enumerate_factors, Recollement};
use tstruct_core::repcat::Algebra;
use tstruct_core::tstr::{enumerate_tstructures, normalize, ExtInt};

fn obj(n: usize) -> impl Strategy<Value = IndecObject> {
    (0..n, 1..=n, -3i64..=3).prop_filter_map("interval", |(l, k, d)| (l < k).then(|| IndecObject::new(l, k, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn truncation_triangle(n in 1usize..=3, pick in any::<prop::sample::Index>(), z in obj(3)) {
        prop_assume!(z.k <= n);
        let alg = Algebra::linear(n);
        let ts = enumerate_tstructures(&alg, -2, 0);
        let t = &ts[pick.index(ts.len())];
        let (x, y) = t.truncate(&z.into()).unwrap();
        prop_assert!(x.summands().iter().all(|&a| t.in_aisle(a)));
        prop_assert!(y.summands().iter().all(|&b| t.in_perp(b)));
        let cat = catalog(&alg);
        let (gz, gx, gy) = (cat.groth_class(&z.into()), cat.groth_class(&x), cat.groth_class(&y));
        prop_assert_eq!(gz, gx.iter().zip(&gy).map(|(a, b)| a + b).collect::<Vec<_>>());
    }

    #[test]
    fn recollement_triangle(n in 1usize..=4, g in obj(4), z in obj(4)) {
        prop_assume!(g.k <= n && z.k <= n);
        let alg = Algebra::linear(n);
        let rec = Recollement::exceptional(&alg, g).unwrap();
        let cat = catalog(&alg);
        let zz: DObject = z.into();
        let left = rec.j_bang_j_star(&zz);
        let right = rec.i_lower_star(&rec.i_upper_star(&zz).unwrap());
        let sum: Vec<i64> = cat.groth_class(&left).iter().zip(cat.groth_class(&right)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(cat.groth_class(&zz), sum);
        prop_assert!(right.summands().iter().all(|&y| rec.in_kernel(y)));
        prop_assert_eq!(rec.j_star(&right), DObject::zero());
    }

    #[test]
    fn normalized_level(n in 1usize..=3, pick in any::<prop::sample::Index>(), s in -5i64..=5) {
        let ts = enumerate_tstructures(&Algebra::linear(n), -3, 0);
        let t = ts[pick.index(ts.len())].shifted(s);
        let (nt, level) = normalize(&t).unwrap();
        prop_assert!(nt.thresholds().iter().all(|&c| c <= ExtInt::Fin(1)));
        prop_assert!(nt.thresholds().contains(&ExtInt::Fin(1)));
        let (_, base) = normalize(&ts[pick.index(ts.len())]).unwrap();
        prop_assert_eq!(level, base + s);
    }

    #[test]
    fn induced_is_bounded_when_factors_are(r in 1usize..=3, pick in any::<prop::sample::Index>()) {
        let rec = Recollement::idempotent(3, r).unwrap();
        let fs = enumerate_factors(&rec, -1, 0);
        let f = &fs[pick.index(fs.len())];
        let t = rec.induce(f).unwrap();
        prop_assert_eq!(t.is_bounded(), f.is_bounded());
        prop_assert_eq!(&rec.restrict(&t).unwrap(), f);
    }
}
