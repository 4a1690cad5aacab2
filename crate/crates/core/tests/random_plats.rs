use lch_core::border::{partition_by_action, triple_partition, triple_pushout, PushoutSquare};
use lch_core::front::{
    enumerate_disks, knot_dga, region_differentials, side_labels, Column, DiskBudget, Event, PlatFront, RegionBudget,
};
use lch_core::Action;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random single-component plat with at most `max_x` crossings.
fn random_plat(rng: &mut ChaCha8Rng, max_x: usize) -> PlatFront {
    loop {
        let cusps = rng.gen_range(1..=3u32);
        let mut ev = Vec::new();
        for k in 0..cusps {
            ev.push(Event::L(rng.gen_range(1..=2 * k + 1)));
        }
        let n = 2 * cusps;
        if n > 2 {
            for _ in 0..rng.gen_range(0..=max_x) {
                ev.push(Event::X(rng.gen_range(1..n)));
            }
        }
        for k in (0..cusps).rev() {
            ev.push(Event::R(2 * rng.gen_range(0..=k) + 1));
        }
        let f = PlatFront::new(ev);
        if f.validate().valid {
            return f;
        }
    }
}

fn reduce(d: &lch_core::front::LagrangianDiagram, v: Vec<i64>) -> Vec<i64> {
    let m = d.trace().unwrap().modulus() as i64;
    v.into_iter().map(|x| if m > 0 { x.rem_euclid(m) } else { x }).collect()
}

#[test]
fn random_plats_pass_checks_and_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let f = random_plat(&mut rng, 8);
        let d = f.resolve().unwrap();
        let dga = knot_dga(&d).unwrap();
        assert!(dga.check().ok(), "{:?}\n{:?}", f.events, dga.check());
        let mut a: Vec<_> = enumerate_disks(&d, &DiskBudget::default())
            .unwrap()
            .into_iter()
            .map(|k| (k.positive, k.word, k.t))
            .collect();
        a.sort();
        assert_eq!(a, region_differentials(&d, &RegionBudget::default()).unwrap(), "{:?}", f.events);
        assert_eq!(reduce(&d, d.capping_degrees().unwrap()), reduce(&d, d.degrees(&d.trace().unwrap())));
        // every dip position
        let strands = d.strand_counts().unwrap();
        let slots: Vec<usize> = (0..strands.len()).filter(|&s| strands[s] >= 2).collect();
        for &s in &slots {
            if d.columns[..s].iter().any(|c| matches!(c, Column::Loop { .. })) {
                assert!(d.dip(s).is_err());
                continue;
            }
            let dd = d.dip(s).unwrap();
            let ddga = knot_dga(&dd).unwrap();
            assert!(ddga.check().ok(), "dip {s} of {:?}\n{:?}", f.events, ddga.check());
            let mut a: Vec<_> = enumerate_disks(&dd, &DiskBudget::default())
                .unwrap()
                .into_iter()
                .map(|k| (k.positive, k.word, k.t))
                .collect();
            a.sort();
            assert_eq!(a, region_differentials(&dd, &RegionBudget::default()).unwrap(), "dip {s} of {:?}", f.events);
            assert_eq!(reduce(&dd, dd.capping_degrees().unwrap()), reduce(&dd, dd.degrees(&dd.trace().unwrap())));
            let one = Action::from_integer(1);
            let p = partition_by_action(&ddga, &side_labels(&dd), one).unwrap();
            assert_eq!(p.s3.len(), (strands[s] * (strands[s] - 1) / 2) as usize);
            let sq = PushoutSquare::from_partition(&ddga, &p).unwrap();
            assert!(sq.check().ok());
            assert!(sq.a.same_as(&ddga));
            // a second dip further right gives a three-piece split
            if let Some(&s2) =
                slots.iter().find(|&&t| t > s && !d.columns[..t].iter().any(|c| matches!(c, Column::Loop { .. })))
            {
                let shift = (strands[s] * (strands[s] - 1)) as usize;
                let d2 = dd.dip(s2 + shift).unwrap();
                let g2 = knot_dga(&d2).unwrap();
                assert!(g2.check().ok());
                let p = triple_partition(&g2, &side_labels(&d2), one).unwrap();
                let (a13, a23, a3) = p.pieces(&g2).unwrap();
                assert!(triple_pushout(&a3, &a13, &a23).unwrap().a.same_as(&g2));
            }
        }
    }
}
