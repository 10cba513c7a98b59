//! Randomized invariants across modules.

use hyperdmod::characters::{mult_e, mult_s, mult_sh, mult_sym_v};
use hyperdmod::multiplicities::{m_closed_form, TwoRowTriple};
use hyperdmod::orbits::{classify_orbit, det2, hyperdet, mat2, orbit_dim, GroupElement, Tensor222};
use hyperdmod::simples::{fourier_on_simples, mult_simple, SimpleId};
use hyperdmod::symchar::{kron_invariant_dim, partitions, Partition};
use hyperdmod::weights::{TripleWeight, Weight2};
use num_traits::Zero;
use proptest::prelude::*;

fn dominant_pair(lo: i64, hi: i64) -> impl Strategy<Value = (i64, i64)> {
    (lo..=hi, lo..=hi).prop_map(|(a, b)| (a.max(b), a.min(b)))
}

fn dominant_triple(lo: i64, hi: i64) -> impl Strategy<Value = TripleWeight> {
    [dominant_pair(lo, hi), dominant_pair(lo, hi), dominant_pair(lo, hi)].prop_map(TripleWeight::from_pairs)
}

fn partition_of(d: usize) -> impl Strategy<Value = Partition> {
    let all = partitions(d);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn tensor() -> impl Strategy<Value = Tensor222> {
    proptest::array::uniform2(proptest::array::uniform2(proptest::array::uniform2(-2i64..=2)))
        .prop_map(Tensor222::from_integers)
}

fn invertible() -> impl Strategy<Value = [[i64; 2]; 2]> {
    proptest::array::uniform2(proptest::array::uniform2(-3i64..=3))
        .prop_filter("invertible", |m| m[0][0] * m[1][1] != m[0][1] * m[1][0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kronecker_symmetries(d in 1usize..=7, seed in any::<[usize; 3]>()) {
        let all = partitions(d);
        let [a, b, c] = seed.map(|i| all[i % all.len()].clone());
        let k = kron_invariant_dim(&a, &b, &c).unwrap();
        prop_assert_eq!(k, kron_invariant_dim(&b, &c, &a).unwrap());
        prop_assert_eq!(k, kron_invariant_dim(&b, &a, &c).unwrap());
        prop_assert_eq!(k, kron_invariant_dim(&a.conjugate(), &b.conjugate(), &c).unwrap());
    }

    #[test]
    fn trivial_factor_is_a_delta(d in 1usize..=8, lam in (1usize..=8).prop_flat_map(partition_of), mu in (1usize..=8).prop_flat_map(partition_of)) {
        let triv = Partition::new(vec![d as u32]).unwrap();
        if lam.size() == d && mu.size() == d {
            prop_assert_eq!(kron_invariant_dim(&triv, &lam, &mu).unwrap(), u64::from(lam == mu));
        }
    }

    #[test]
    fn closed_form_matches_characters(d in 0i64..=12, seed in any::<[u16; 3]>()) {
        let rows: Vec<Weight2> = (0..=d / 2).map(|b| Weight2::new(d - b, b)).collect();
        let [l, m, n] = seed.map(|i| rows[usize::from(i) % rows.len()]);
        let t = TwoRowTriple::new(l, m, n).unwrap();
        let direct = kron_invariant_dim(
            &Partition::from_weight(l).unwrap(),
            &Partition::from_weight(m).unwrap(),
            &Partition::from_weight(n).unwrap(),
        ).unwrap();
        prop_assert_eq!(m_closed_form(&t).unwrap(), direct);
    }

    #[test]
    fn characters_commute_with_label_rotation(w in dominant_triple(-8, 8)) {
        prop_assert_eq!(mult_s(&w), mult_s(&w.rotate()));
        prop_assert_eq!(mult_e(&w), mult_e(&w.rotate()));
        prop_assert_eq!(mult_sym_v(&w), mult_sym_v(&w.rotate()));
        prop_assert_eq!(mult_sh(&w).unwrap(), mult_sh(&w.rotate()).unwrap());
    }

    #[test]
    fn localization_contains_polynomials(w in dominant_triple(-8, 2)) {
        prop_assert!(mult_sh(&w).unwrap() >= mult_s(&w));
    }

    #[test]
    fn simples_commute_with_label_rotation(w in dominant_triple(-3, 7)) {
        for s in SimpleId::ALL {
            prop_assert_eq!(mult_simple(s, &w).unwrap(), mult_simple(s.rotate(), &w.rotate()).unwrap());
        }
    }

    #[test]
    fn fourier_exchanges_simples(w in dominant_triple(-2, 6)) {
        for s in SimpleId::ALL {
            let here = mult_simple(s, &w).unwrap().known();
            let there = mult_simple(fourier_on_simples(s), &w.fourier()).unwrap().known();
            if let (Some(a), Some(b)) = (here, there) {
                prop_assert_eq!(a, b, "{} at {:?}", s, w);
            }
        }
    }

    #[test]
    fn hyperdeterminant_is_relatively_invariant(t in tensor(), x in invertible(), y in invertible(), z in invertible()) {
        let (x, y, z) = (mat2(x), mat2(y), mat2(z));
        let scale = (det2(&x) * det2(&y) * det2(&z)).pow(2);
        let g = GroupElement::new(x, y, z).unwrap();
        let moved = g.act(&t);
        prop_assert_eq!(hyperdet(&moved), scale * hyperdet(&t));
        prop_assert_eq!(&moved, &g.act_kronecker(&t));
    }

    #[test]
    fn orbit_data_is_invariant(t in tensor(), x in invertible(), y in invertible(), z in invertible()) {
        let g = GroupElement::new(mat2(x), mat2(y), mat2(z)).unwrap();
        let moved = g.act(&t);
        prop_assert_eq!(classify_orbit(&t).unwrap(), classify_orbit(&moved).unwrap());
        prop_assert_eq!(orbit_dim(&t), orbit_dim(&moved));
        prop_assert_eq!(t.is_zero(), hyperdet(&t).is_zero() && orbit_dim(&t) == 0);
    }
}
