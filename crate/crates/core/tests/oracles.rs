//! Independent recomputations of the algebraic routines.

use std::collections::HashSet;

use clutterlab::enumerate::connected_graphs_up_to_iso;
use clutterlab::ideal::{connected_ideal, Monomial, MonomialIdeal, QuotientOutcome};
use clutterlab::resolution::{
    betti, betti_general, betti_squarefree, has_linear_resolution, regularity, Field, SimplicialComplex,
};
use clutterlab::VertexSet;
use proptest::prelude::*;

/// Replaces `x_i^e` by `x_{i,0} ... x_{i,e-1}`, new variables laid out
/// block by block.
fn polarize(ideal: &MonomialIdeal) -> MonomialIdeal {
    let n = ideal.n();
    let widths: Vec<usize> = (0..n).map(|i| ideal.gens().iter().map(|g| g.exp(i) as usize).max().unwrap_or(0)).collect();
    let offsets: Vec<usize> = widths.iter().scan(0, |acc, w| Some(std::mem::replace(acc, *acc + w))).collect();
    let total: usize = widths.iter().sum();
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let mut e = vec![0u32; total];
            for i in 0..n {
                for k in 0..g.exp(i) as usize {
                    e[offsets[i] + k] = 1;
                }
            }
            Monomial::new(e)
        })
        .collect();
    MonomialIdeal::new(total, gens).unwrap()
}

/// The exchange condition read off exponent vectors directly.
fn brute_force_polymatroidal(gens: &[Vec<u32>]) -> bool {
    let set: HashSet<&Vec<u32>> = gens.iter().collect();
    let n = gens.first().map_or(0, Vec::len);
    gens.iter().all(|u| {
        gens.iter().all(|v| {
            (0..n).filter(|&i| u[i] > v[i]).all(|i| {
                (0..n).filter(|&j| u[j] < v[j]).any(|j| {
                    let mut w = u.clone();
                    w[i] -= 1;
                    w[j] += 1;
                    set.contains(&w)
                })
            })
        })
    })
}

fn arb_ideal(n: usize, max_exp: u32, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=max_gens).prop_filter_map("zero generator", move |gs| {
        if gs.iter().any(|g| g.iter().all(|&e| e == 0)) {
            return None;
        }
        MonomialIdeal::new(n, gs.into_iter().map(Monomial::new).collect()).ok()
    })
}

fn arb_squarefree(n: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(1u64..(1 << n), 1..8).prop_map(move |masks| {
        let gens = masks.into_iter().map(|m| Monomial::squarefree(n, (0..n).filter(|&i| m >> i & 1 == 1).collect())).collect();
        MonomialIdeal::new(n, gens).unwrap()
    })
}

/// Products of ideals generated by sets of variables are polymatroidal.
fn arb_transversal(n: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(1u64..(1 << n), 1..=3).prop_map(move |masks| {
        let factors: Vec<MonomialIdeal> = masks
            .iter()
            .map(|m| MonomialIdeal::new(n, (0..n).filter(|&i| m >> i & 1 == 1).map(|i| Monomial::variable(n, i)).collect()).unwrap())
            .collect();
        factors[1..].iter().fold(factors[0].clone(), |acc, f| acc.product(f).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn polarization_keeps_betti_numbers(i in arb_ideal(3, 3, 4)) {
        let p = polarize(&i);
        prop_assume!(p.n() <= 12);
        for field in [Field::Gf2, Field::Rational] {
            let general = betti_general(&i, field, None).unwrap();
            let hochster = betti_squarefree(&p, field).unwrap();
            prop_assert_eq!(general.entries().collect::<Vec<_>>(), hochster.entries().collect::<Vec<_>>());
        }
    }

    #[test]
    fn hochster_matches_koszul(i in arb_squarefree(6)) {
        let a = betti_squarefree(&i, Field::Gf2).unwrap();
        let b = betti_general(&i, Field::Gf2, None).unwrap();
        prop_assert_eq!(a.entries().collect::<Vec<_>>(), b.entries().collect::<Vec<_>>());
    }

    #[test]
    fn exchange_scan_matches_brute_force(i in arb_ideal(4, 2, 6)) {
        prop_assume!(i.degree_pure().is_some());
        let gens: Vec<Vec<u32>> = i.gens().iter().map(|g| g.exps().to_vec()).collect();
        prop_assert_eq!(i.is_polymatroidal().unwrap().is_ok(), brute_force_polymatroidal(&gens));
    }

    #[test]
    fn transversal_products_are_linear(i in arb_transversal(5)) {
        prop_assert!(i.is_polymatroidal().unwrap().is_ok());
        prop_assert!(i.is_weakly_polymatroidal(&[4, 2, 0, 3, 1]).unwrap().is_ok());
        prop_assert!(matches!(i.has_linear_quotients(1_000_000).unwrap(), QuotientOutcome::Found(_)));
        prop_assert!(has_linear_resolution(&i, Field::Gf2).unwrap());
        prop_assert!(i.power(2).unwrap().is_polymatroidal().unwrap().is_ok());
    }

    #[test]
    fn linear_quotients_imply_linear_resolution(i in arb_ideal(4, 2, 6)) {
        prop_assume!(i.degree_pure().is_some());
        if let QuotientOutcome::Found(order) = i.has_linear_quotients(1_000_000).unwrap() {
            prop_assert_eq!(order.len(), i.gens().len());
            prop_assert!(has_linear_resolution(&i, Field::Gf2).unwrap());
        }
    }
}

#[test]
fn froberg_on_connected_graphs_up_to_seven_vertices() {
    let mut chordal = 0;
    let mut checked = 0;
    for n in 2..=7 {
        for g in connected_graphs_up_to_iso(n).unwrap() {
            let i = connected_ideal(&g, 1).unwrap();
            let linear = has_linear_resolution(&i, Field::Gf2).unwrap();
            assert_eq!(linear, g.complement().is_chordal(), "{:?}", g.edges());
            if let QuotientOutcome::Found(_) = i.has_linear_quotients(1_000_000).unwrap() {
                assert!(linear, "{:?}", g.edges());
            }
            chordal += usize::from(linear);
            checked += 1;
        }
    }
    assert_eq!(checked, 1 + 2 + 6 + 21 + 112 + 853);
    assert!(chordal > 0);
}

#[test]
fn projective_plane_ideal_depends_on_the_field() {
    let tris = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ];
    let k = SimplicialComplex::from_facets(6, tris.iter().map(|t| t.iter().copied().collect::<VertexSet>())).unwrap();
    let gens = k.minimal_nonfaces().into_iter().map(|s| Monomial::squarefree(6, s)).collect();
    let i = MonomialIdeal::new(6, gens).unwrap();
    assert_eq!(i.degree_pure(), Some(3));
    let gf2 = betti(&i, Field::Gf2).unwrap();
    let q = betti(&i, Field::Rational).unwrap();
    assert_ne!(gf2.entries().collect::<Vec<_>>(), q.entries().collect::<Vec<_>>());
    assert_eq!(betti(&i, Field::Prime(3)).unwrap().entries().collect::<Vec<_>>(), q.entries().collect::<Vec<_>>());
    assert!(has_linear_resolution(&i, Field::Rational).unwrap());
    assert!(!has_linear_resolution(&i, Field::Gf2).unwrap());
    assert_eq!(regularity(&i, Field::Gf2).unwrap(), Some(4));
}
