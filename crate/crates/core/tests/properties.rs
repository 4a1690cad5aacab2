use lch_core::augment::{
    enumerate_augmentations, evaluate, is_augmentation, kills_differential, twist_has_no_constants, AugBudget,
};
use lch_core::dga::{Dga, Element};
use lch_core::front::{Event, PlatFront};
use lch_core::{Field, Scalar};
use proptest::prelude::*;

/// Plats with standard caps `l1 l3 ...`, the given crossings and cups `r1`.
fn plat(cusps: u32, xs: &[u32]) -> Option<PlatFront> {
    let mut ev: Vec<Event> = (0..cusps).map(|k| Event::L(2 * k + 1)).collect();
    ev.extend(xs.iter().map(|&i| Event::X(i)));
    ev.extend((0..cusps).map(|_| Event::R(1)));
    let f = PlatFront::new(ev);
    f.validate().valid.then_some(f)
}

fn plat_strategy() -> impl Strategy<Value = (u32, Vec<u32>)> {
    (2u32..=3).prop_flat_map(|c| (Just(c), proptest::collection::vec(1..2 * c, 0..=7)))
}

fn over(d: &Dga, field: &str) -> Dga {
    let f = Field::parse(field).unwrap();
    d.at_one().unwrap().specialize(&f, &[]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn augmentation_criteria_agree((cusps, xs) in plat_strategy(), codes in proptest::collection::vec(0i64..4, 16), field in prop::sample::select(vec!["F2", "F4"])) {
        let Some(f) = plat(cusps, &xs) else { return Ok(()) };
        let d = over(&f.dga().unwrap(), field);
        let q = d.field().order() as i64;
        let eps: Vec<Scalar> = (0..d.num_generators())
            .map(|i| if d.degree(i as u32) == 0 { d.field().from_code(codes[i % codes.len()] % q).unwrap() } else { Scalar::ZERO })
            .collect();
        prop_assert_eq!(kills_differential(&d, &eps), twist_has_no_constants(&d, &eps));
    }

    #[test]
    fn enumerated_augmentations_satisfy_both_criteria((cusps, xs) in plat_strategy()) {
        let Some(f) = plat(cusps, &xs) else { return Ok(()) };
        let d = over(&f.dga().unwrap(), "F2");
        for e in enumerate_augmentations(&d, &AugBudget::default()).unwrap() {
            prop_assert!(is_augmentation(&d, &e.values));
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        words in proptest::collection::vec(proptest::collection::vec(0u32..4, 0..4), 1..5),
        others in proptest::collection::vec(proptest::collection::vec(0u32..4, 0..4), 1..5),
        codes in proptest::collection::vec(0i64..4, 4),
    ) {
        let mut d = Dga::new(lch_core::coeff::Ring::scalars(Field::parse("F4").unwrap()), 0).unwrap();
        for name in ["p", "q", "r", "s"] {
            d.add_generator(name, 0, None).unwrap();
        }
        let ring = d.ring().clone();
        let build = |ws: &[Vec<u32>]| {
            let mut x = Element::zero();
            for w in ws {
                let mut m = Element::unit(&ring);
                for &g in w {
                    m = m.mul(&Element::generator(g, &ring), &ring);
                }
                x.add_assign(&m, &ring);
            }
            x
        };
        let (x, y) = (build(&words), build(&others));
        let f = d.field().clone();
        let eps: Vec<Scalar> = codes.iter().map(|&c| f.from_code(c).unwrap()).collect();
        let (ex, ey) = (evaluate(&d, &x, &eps), evaluate(&d, &y, &eps));
        prop_assert_eq!(evaluate(&d, &x.mul(&y, &ring), &eps), f.mul(ex, ey));
        prop_assert_eq!(evaluate(&d, &x.add(&y, &ring), &eps), f.add(ex, ey));
        prop_assert_eq!(evaluate(&d, &Element::unit(&ring), &eps), f.from_int(1));
    }
}
