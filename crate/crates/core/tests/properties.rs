use proptest::prelude::*;

use weyl2uni::type_bd::{self, PairPp, Parity};
use weyl2uni::type_c::{self, PairRp};
use weyl2uni::weyl::{self, GroupKind, JordanType, Series, SignedCycleType};
use weyl2uni::{FamilyTag, Partition};

fn partition(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(|v| Partition::new(v).unwrap())
}

/// Members of T: even parts free, odd parts in pairs.
fn in_t(max_total: u32) -> impl Strategy<Value = Partition> {
    (
        prop::collection::vec((1..=5u32).prop_map(|x| 2 * x), 0..5),
        prop::collection::vec((0..=4u32).prop_map(|x| 2 * x + 1), 0..4),
    )
        .prop_map(|(even, odd)| {
            let mut v = even;
            v.extend(odd.iter().flat_map(|&x| [x, x]));
            Partition::new(v).unwrap()
        })
        .prop_filter("size", move |c| c.size() <= max_total)
}

/// Members of Q: odd parts free, even parts in pairs.
fn in_q(max_total: u32) -> impl Strategy<Value = Partition> {
    (
        prop::collection::vec((0..=5u32).prop_map(|x| 2 * x + 1), 0..6),
        prop::collection::vec((1..=4u32).prop_map(|x| 2 * x), 0..3),
    )
        .prop_map(|(odd, even)| {
            let mut v = odd;
            v.extend(even.iter().flat_map(|&x| [x, x]));
            Partition::new(v).unwrap()
        })
        .prop_filter("size", move |c| c.size() <= max_total)
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

/// Domain of the doubling map: any partition, even length when `kappa` is even.
fn xi_domain() -> impl Strategy<Value = (Partition, Parity)> {
    (partition(12, 10), parity()).prop_filter("even length for kappa = 0", |(p, k)| {
        *k == Parity::Odd || p.len() % 2 == 0
    })
}

proptest! {
    #[test]
    fn merge_laws(a in partition(9, 8), b in partition(9, 8), c in partition(9, 8)) {
        prop_assert_eq!(a.merge(&b), b.merge(&a));
        prop_assert_eq!(a.merge(&b).merge(&c), a.merge(&b.merge(&c)));
        prop_assert_eq!(a.merge(&Partition::empty()), a.clone());
        prop_assert_eq!(a.merge(&b).size(), a.size() + b.size());
    }

    #[test]
    fn family_inclusions(c in partition(8, 10)) {
        use FamilyTag::*;
        if c.is_in(E) {
            prop_assert!(c.is_in(PTilde) && c.is_in(Q));
        }
        if c.is_in(PTilde) {
            prop_assert!(c.is_in(P0));
        }
        prop_assert!(c.is_in(P1));
        if c.is_in(R) && !c.is_empty() {
            prop_assert_eq!(c.parts()[0] % 2, 1);
        }
    }

    #[test]
    fn text_and_json_round_trip(c in partition(20, 10)) {
        prop_assert_eq!(c.to_string().parse::<Partition>().unwrap(), c.clone());
        let json = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), c);
    }

    #[test]
    fn xi_round_trip((pp, kappa) in xi_domain()) {
        let r = type_bd::xi(&pp, kappa).unwrap();
        prop_assert!(r.is_in(FamilyTag::R));
        prop_assert_eq!(r.size(), 2 * pp.size() + kappa.value());
        prop_assert_eq!(r.parts().first().map_or(1, |x| x % 2), 1);
        prop_assert_eq!(type_bd::xi_prime(&r, kappa).unwrap(), pp);
    }

    #[test]
    fn shifted_entries_are_even_and_decreasing((pp, kappa) in xi_domain()) {
        let r = type_bd::xi(&pp, kappa).unwrap();
        let shifted: Vec<i64> = r
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let k = i as i64 + 1;
                let zeta = if x % 2 == 1 { if k % 2 == 0 { 1 } else { -1 } } else { 0 };
                x as i64 + zeta
            })
            .collect();
        prop_assert!(shifted.iter().all(|x| x % 2 == 0));
        prop_assert!(shifted.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn symplectic_section(c in in_t(30)) {
        let s = type_c::iota_prime_c(&c).unwrap();
        prop_assert_eq!(type_c::iota_c(&s).unwrap(), c.clone());
        prop_assert_eq!(type_c::psi_c(&c).unwrap(), s.clone());
        for x in type_c::fiber_c(&c).unwrap() {
            for (e, _) in c.runs() {
                prop_assert!(x.p().multiplicity(e) >= s.p().multiplicity(e), "{} at {}", x, e);
            }
        }
        let text = s.to_string();
        prop_assert_eq!(text.parse::<PairRp>().unwrap(), s.clone());
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<PairRp>(&json).unwrap(), s);
    }

    #[test]
    fn orthogonal_section(c in in_q(27)) {
        let s = type_bd::iota_prime_bd(&c).unwrap();
        prop_assert_eq!(type_bd::iota_bd(&s).unwrap(), c.clone());
        prop_assert_eq!(type_bd::psi_bd(&c).unwrap(), s.clone());
        if let (Some(&first), Some(&last)) = (s.r().parts().first(), s.r().parts().last()) {
            prop_assert_eq!(first % 2, 1);
            if c.size() % 2 == 0 {
                prop_assert_eq!(last % 2, 1);
            }
        }
        for x in type_bd::fiber_bd(&c).unwrap() {
            for (e, _) in c.runs() {
                prop_assert!(x.p().multiplicity(e) >= s.p().multiplicity(e), "{} at {}", x, e);
            }
        }
        let dotted = type_bd::plain_to_dot(&s).unwrap();
        prop_assert_eq!(type_bd::dot_to_plain(&dotted).unwrap(), s);
        prop_assert_eq!(dotted.to_string().parse::<PairPp>().unwrap(), dotted.clone());
        let json = serde_json::to_string(&dotted).unwrap();
        prop_assert_eq!(serde_json::from_str::<PairPp>(&json).unwrap(), dotted);
    }

    #[test]
    fn very_even_fibers_are_trivial(half in prop::collection::vec((1..=5u32).prop_map(|x| 2 * x), 0..5)) {
        let c = Partition::new(half.iter().flat_map(|&x| [x, x]).collect()).unwrap();
        let fiber = type_bd::fiber_bd(&c).unwrap();
        prop_assert_eq!(fiber.len(), 1);
        prop_assert!(fiber[0].r().is_empty());
        prop_assert_eq!(fiber[0].p(), &c);
        prop_assert_eq!(type_bd::restrict_d(&c).unwrap(), type_bd::DClass::VeryEven);
    }

    #[test]
    fn classical_section_is_a_section(c in in_q(21), t in in_t(20), s in prop_oneof![Just(Series::B), Just(Series::D)]) {
        for (series, parts) in [(s, c), (Series::C, t)] {
            let nu = parts.size();
            let Ok(g) = GroupKind::from_nu(series, nu) else { continue };
            let j = JordanType::for_group(parts, &g).unwrap();
            let w = weyl::psi_classical(&j, &g).unwrap();
            prop_assert_eq!(weyl::phi_classical(&w, &g).unwrap(), j);
            prop_assert_eq!(w.to_string().parse::<SignedCycleType>().unwrap(), w.clone());
            let enc = weyl::encode_class(&w, &g).unwrap();
            prop_assert_eq!(weyl::decode_class(&enc).unwrap(), w.clone());
            prop_assert_eq!(enc.p().len() as u32, 2 * weyl::m_c_formula(&w));
        }
    }

    #[test]
    fn fixed_space_formula_matches_matrix(pos in partition(4, 4), neg in partition(4, 4)) {
        let w = SignedCycleType::new(pos, neg);
        prop_assume!(w.rank() >= 2 && w.rank() <= weyl::MATRIX_RANK_BOUND);
        for series in [Series::B, Series::C, Series::D] {
            let g = GroupKind::new(series, w.rank()).unwrap();
            if series == Series::D && w.negative.len() % 2 == 1 {
                continue;
            }
            prop_assert_eq!(weyl::m_c_matrix(&w, &g).unwrap(), weyl::m_c_formula(&w));
        }
    }
}
