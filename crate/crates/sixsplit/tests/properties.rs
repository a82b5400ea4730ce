//! Property tests for the exact-arithmetic layer and the expression
//! algebra, with brute-force or presentation-matrix oracles where the
//! computation has an independent route.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use sixsplit::abelian::{
    localize_away_2, smith_normal_form, tensor_tor_mod, unimodular_reduce, ChainComplex,
    FgAbGroup, IntMatrix, TorsionSummand,
};
use sixsplit::spaces::{homology_of, normalize, parse, SpaceAtom, SpaceExpr};

fn arb_group() -> impl Strategy<Value = FgAbGroup> {
    let summand = (prop_oneof![Just(2u64), Just(3), Just(5), Just(7)], 1..=3u32)
        .prop_map(|(p, r)| TorsionSummand::new(p, r));
    (0..3usize, proptest::collection::vec(summand, 0..4))
        .prop_map(|(free, torsion)| FgAbGroup::from_parts(free, torsion))
}

/// Presentation matrix of G tensor Z/m: the relations of G (one column of
/// n_i per torsion summand) extended by m times the identity.
fn tensor_by_presentation(g: &FgAbGroup, m: &BigUint) -> FgAbGroup {
    let gens = g.free_rank() + g.torsion().len();
    let rels = g.torsion().len() + gens;
    let mut a = IntMatrix::zeros(gens, rels);
    for (j, t) in g.torsion().iter().enumerate() {
        a[(g.free_rank() + j, j)] = BigInt::from(t.order());
    }
    for i in 0..gens {
        a[(i, g.torsion().len() + i)] = BigInt::from(m.clone());
    }
    let snf = smith_normal_form(&a);
    let mut out = FgAbGroup::free(gens - snf.rank());
    for factor in snf.invariant_factors() {
        if factor.abs() > BigInt::one() {
            out = out.direct_sum(&FgAbGroup::cyclic(factor.magnitude().clone()));
        }
    }
    out
}

/// A random unimodular matrix together with its inverse, as a product of
/// elementary operations.
fn random_unimodular(n: usize, ops: &[(u8, usize, usize, i64)]) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, u_inv);
    }
    for &(kind, i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        match kind % 2 {
            0 => {
                // u <- E u with E adding c*row_j to row_i; inverse subtracts.
                u.add_row_multiple(i, j, &BigInt::from(c));
                u_inv.add_col_multiple(j, i, &BigInt::from(c));
            }
            _ => {
                u.swap_rows(i, j);
                u_inv.swap_cols(i, j);
            }
        }
    }
    (u, u_inv)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tensor_tor_matches_presentation_snf(g in arb_group(), m in 2u64..60) {
        let m = BigUint::from(m);
        let (tensor, tor) = tensor_tor_mod(&g, &m);
        prop_assert_eq!(tensor.clone(), tensor_by_presentation(&g, &m));
        // Tor(G, Z/m) agrees with (torsion G) tensor Z/m.
        prop_assert_eq!(tor, tensor_by_presentation(&g.ext_to_z(), &m));
        // ... and the tensor of the torsion part is the torsion of the tensor.
        prop_assert_eq!(tensor.ext_to_z(), tensor);
    }

    #[test]
    fn localize_away_2_is_idempotent(g in arb_group()) {
        let once = localize_away_2(&g);
        prop_assert_eq!(localize_away_2(&once), once);
    }

    #[test]
    fn unimodular_reduce_contract(
        entries in proptest::collection::vec(-40i64..40, 2..6),
        m in prop_oneof![Just(0u64), 2u64..30],
    ) {
        let a: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
        let m_big = BigUint::from(m);
        let (a_prime, p) = unimodular_reduce(&a, &m_big);
        prop_assert!(p.determinant().abs().is_one());
        prop_assert!(!a_prime.is_negative());
        let row = IntMatrix::from_entries(1, a.len(), a);
        let reduced = row.mul(&p);
        if m == 0 {
            prop_assert_eq!(&reduced[(0, 0)], &a_prime);
            for j in 1..reduced.cols() {
                prop_assert!(reduced[(0, j)].is_zero());
            }
        } else {
            let m_int = BigInt::from(m);
            let norm = |x: &BigInt| ((x % &m_int) + &m_int) % &m_int;
            prop_assert_eq!(norm(&reduced[(0, 0)]), norm(&a_prime));
            for j in 1..reduced.cols() {
                prop_assert!(norm(&reduced[(0, j)]).is_zero());
            }
        }
    }

    /// Homology built from elementary pieces (known answer), then hidden by
    /// a unimodular change of basis in every degree: the groups must not
    /// move.
    #[test]
    fn homology_invariant_under_basis_change(
        ds in proptest::collection::vec(0i64..7, 1..4),
        frees in proptest::collection::vec(0usize..2, 3),
        ops in proptest::collection::vec((any::<u8>(), 0usize..8, 0usize..8, -2i64..3), 0..12),
    ) {
        // Three degrees: C_2 -> C_1 -> C_0. Each d in ds adds an elementary
        // complex Z --d--> Z in degrees (1, 0); frees pad each degree.
        let n_pieces = ds.len();
        let ranks = vec![
            frees[0] + n_pieces,
            frees[1] + n_pieces,
            frees[2],
        ];
        let mut d1 = IntMatrix::zeros(ranks[0], ranks[1]);
        for (i, &d) in ds.iter().enumerate() {
            d1[(frees[0] + i, frees[1] + i)] = BigInt::from(d);
        }
        let base = ChainComplex::new(ranks.clone(), vec![(1, d1.clone())]).unwrap();
        let h_base = base.homology();

        // Known answer for the block-diagonal complex.
        let mut h0 = FgAbGroup::free(frees[0]);
        let mut h1 = FgAbGroup::free(frees[1]);
        for &d in &ds {
            match d {
                0 => {
                    h0 = h0.direct_sum(&FgAbGroup::free(1));
                    h1 = h1.direct_sum(&FgAbGroup::free(1));
                }
                1 => {}
                d => h0 = h0.direct_sum(&FgAbGroup::cyclic(BigUint::from(d as u64))),
            }
        }
        prop_assert_eq!(&h_base[0], &h0);
        prop_assert_eq!(&h_base[1], &h1);
        prop_assert_eq!(&h_base[2], &FgAbGroup::free(frees[2]));

        // Change of basis: d1' = U_0 d1 U_1^{-1}.
        let (u0, _) = random_unimodular(ranks[0], &ops);
        let (_, u1_inv) = random_unimodular(ranks[1], &ops);
        let d1_conj = u0.mul(&d1).mul(&u1_inv);
        let conj = ChainComplex::new(ranks, vec![(1, d1_conj)]).unwrap();
        prop_assert_eq!(conj.homology(), h_base);
    }
}

fn arb_atom() -> impl Strategy<Value = SpaceAtom> {
    prop_oneof![
        (1u32..8).prop_map(SpaceAtom::sphere),
        ((2u32..8), prop_oneof![Just(3u64), Just(9), Just(5), Just(7), Just(12)])
            .prop_map(|(d, m)| SpaceAtom::moore(d, m)),
        Just(SpaceAtom::SigmaCp3),
        Just(SpaceAtom::ConeAlpha1),
        (1u32..4).prop_map(SpaceAtom::cone_iota_alpha1),
        proptest::collection::vec(2u32..8, 1..4)
            .prop_map(|cells| SpaceAtom::opaque("X", cells)),
    ]
}

fn arb_expr() -> impl Strategy<Value = SpaceExpr> {
    arb_atom().prop_map(SpaceExpr::atom).prop_recursive(3, 16, 4, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 0..4).prop_map(SpaceExpr::wedge),
            inner.clone().prop_map(SpaceExpr::suspension),
            (inner.clone(), inner).prop_map(|(l, r)| SpaceExpr::smash(l, r)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_round_trip(e in arb_expr()) {
        let printed = e.to_string();
        let back = parse(&printed).unwrap();
        prop_assert_eq!(back.term, e.term, "through `{}`", printed);
    }

    /// When an expression normalizes, the rewrite preserves its structural
    /// (Kunneth-computed) homology, and the normal form is a fixed point.
    #[test]
    fn normalization_preserves_homology(e in arb_expr()) {
        let e = e.away_from_2();
        if let Ok(nf) = normalize(&e) {
            prop_assert_eq!(normalize(&nf).unwrap(), nf.clone());
            let h_raw = homology_of(&e);
            let h_nf = homology_of(&nf);
            if !h_raw.additive_only {
                prop_assert_eq!(h_raw, h_nf);
            }
        }
    }

    /// Canonical forms print and parse back to themselves.
    #[test]
    fn canonical_forms_round_trip(atoms in proptest::collection::vec(arb_atom(), 0..6)) {
        let canonical = SpaceExpr::canonical_wedge(atoms, sixsplit::spaces::Localization::Integral);
        let back = parse(&canonical.to_string()).unwrap();
        prop_assert_eq!(back.term, canonical.term);
    }
}
