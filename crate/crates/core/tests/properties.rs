use bethecount::characters::{apply_shift, partial_inverse, verma_inverse, CharacterInverse};
use bethecount::counting::{mu_table, mu_untwisted, young_from_magnons};
use bethecount::occupancy::{c_coefficient, schur_specialized, CoefficientTable, SpinChainSpec};
use bethecount::poly::{DegreeBox, ExponentVector, SignedPolynomial};
use bethecount::rootsys::{all_subset_decompositions, positive_roots};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn poly_strategy(
    arity: usize,
    max_exp: u32,
    max_terms: usize,
) -> impl Strategy<Value = SignedPolynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, arity), -6i64..=6),
        0..=max_terms,
    )
    .prop_map(move |terms| SignedPolynomial::from_terms(arity, terms).unwrap())
}

fn unit_constant_poly(arity: usize) -> impl Strategy<Value = SignedPolynomial> {
    (poly_strategy(arity, 2, 5), prop::bool::ANY).prop_map(move |(p, plus)| {
        let c0 = p.constant_term();
        let target = SignedPolynomial::constant(arity, if plus { 1 } else { -1 });
        let fix = SignedPolynomial::constant(arity, c0);
        p.sub(&fix).unwrap().add(&target).unwrap()
    })
}

fn box_strategy(arity: usize) -> impl Strategy<Value = DegreeBox> {
    prop::collection::vec(0u32..=4, arity).prop_map(DegreeBox::new)
}

/// Deterministic pseudo-random test function on the lattice.
fn lattice_fn(seed: u64) -> impl Fn(&[i64]) -> BigInt {
    move |p: &[i64]| {
        let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
        for &x in p {
            h = (h ^ (x as u64))
                .wrapping_mul(0x100_0000_01b3)
                .rotate_left(17);
        }
        BigInt::from((h % 41) as i64 - 20)
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws(a in poly_strategy(2, 3, 6), b in poly_strategy(2, 3, 6), c in poly_strategy(2, 3, 6)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b, None).unwrap(), b.mul(&a, None).unwrap());
        prop_assert_eq!(
            a.mul(&b, None).unwrap().mul(&c, None).unwrap(),
            a.mul(&b.mul(&c, None).unwrap(), None).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap(), None).unwrap(),
            a.mul(&b, None).unwrap().add(&a.mul(&c, None).unwrap()).unwrap()
        );
        prop_assert_eq!(a.mul(&SignedPolynomial::one(2), None).unwrap(), a.clone());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.add(&a.neg()).unwrap(), SignedPolynomial::zero(2));
    }

    #[test]
    fn box_truncation_commutes(a in poly_strategy(3, 3, 6), b in poly_strategy(3, 3, 6), bx in box_strategy(3), k in 0u32..=3) {
        prop_assert_eq!(a.mul(&b, Some(&bx)).unwrap(), a.mul(&b, None).unwrap().truncate(&bx).unwrap());
        prop_assert_eq!(a.pow(k, Some(&bx)).unwrap(), a.pow(k, None).unwrap().truncate(&bx).unwrap());
    }

    #[test]
    fn reciprocal_identity(p in unit_constant_poly(2), bx in box_strategy(2)) {
        let inv = p.series_reciprocal(&bx).unwrap();
        prop_assert_eq!(p.mul(&inv, Some(&bx)).unwrap(), SignedPolynomial::one(2));
    }

    #[test]
    fn stencil_composition(p in poly_strategy(2, 2, 4), q in poly_strategy(2, 2, 4), seed in any::<u64>(), m in prop::collection::vec(-1i64..=5, 2)) {
        let f = lattice_fn(seed);
        let pq = CharacterInverse::polynomial(p.mul(&q, None).unwrap()).stencil();
        let sp = CharacterInverse::polynomial(p).stencil();
        let sq = CharacterInverse::polynomial(q).stencil();
        let composed = sp.apply(|x| sq.apply(&f, x), &m);
        prop_assert_eq!(pq.apply(&f, &m), composed);
    }

    #[test]
    fn multiplicities_nonnegative(r in 1usize..=3, twos in 1u32..=3, l in 1u32..=4, pick in any::<prop::sample::Index>()) {
        let spec = SpinChainSpec::new(r, twos, l).unwrap();
        let decomps = all_subset_decompositions(r);
        let d = &decomps[pick.index(decomps.len())];
        let rows = mu_table(&spec, d).unwrap();
        prop_assert!(rows.iter().all(|row| !row.mu.is_negative()));
    }

    #[test]
    fn raw_stencil_round_trip(r in 1usize..=2, twos in 1u32..=2, l in 1u32..=4, seed in any::<prop::sample::Index>()) {
        // D_χ applied to the unclamped stencil output returns c on the whole box
        let spec = SpinChainSpec::new(r, twos, l).unwrap();
        let support = spec.support();
        let m = &support[seed.index(support.len())];
        let bx = DegreeBox::covering(m).unwrap();
        let table = CoefficientTable::up_to(&spec, m).unwrap();
        let inv = verma_inverse(&positive_roots(r), r).unwrap();
        let raw = |p: &[i64]| inv.stencil().apply(|x| table.get(x), p);
        let chi = inv.poly().series_reciprocal(&bx).unwrap();
        let back = CharacterInverse::polynomial(chi).stencil().apply(raw, m);
        prop_assert_eq!(back, c_coefficient(&spec, m));
    }

    #[test]
    fn partial_stencil_is_product_of_blocks(r in 1usize..=4, pick in any::<prop::sample::Index>()) {
        let decomps = all_subset_decompositions(r);
        let d = &decomps[pick.index(decomps.len())];
        let mut expected = SignedPolynomial::one(r);
        for root in d.preserved_roots() {
            expected = expected.mul(&SignedPolynomial::one_minus(root.exponents(r)), None).unwrap();
        }
        prop_assert_eq!(partial_inverse(d, r).unwrap().poly().clone(), expected);
    }
}

#[test]
fn character_reconstruction() {
    // c(M) = Σ_λ μ_λ [x^M] S_λ(1, x1, x1 x2, …)
    for (r, twos, l) in [
        (1, 1, 6),
        (1, 3, 3),
        (2, 1, 4),
        (2, 2, 3),
        (3, 1, 3),
        (3, 2, 2),
    ] {
        let spec = SpinChainSpec::new(r, twos, l).unwrap();
        let mut rebuilt = SignedPolynomial::zero(r);
        for m in spec.support() {
            if let Some(lam) = young_from_magnons(&spec, &m) {
                let mu = mu_untwisted(&spec, &m).unwrap();
                if !mu.is_zero() {
                    rebuilt = rebuilt
                        .add(&schur_specialized(lam.rows(), r).unwrap().scale(&mu))
                        .unwrap();
                }
            }
        }
        for m in spec.support() {
            assert_eq!(
                rebuilt.coefficient_at(&m),
                c_coefficient(&spec, &m),
                "r={r} 2s={twos} L={l} M={m:?}"
            );
        }
    }
}

#[test]
fn rank_one_reconstruction_on_dominant_half() {
    // Σ_k μ(M - k) = c(M) while 2M ≤ 2sL
    for twos in 1..=3u32 {
        for l in 1..=8u32 {
            let spec = SpinChainSpec::new(1, twos, l).unwrap();
            for m in 0..=spec.boxes() / 2 {
                let sum: BigInt = (0..=m)
                    .map(|k| mu_untwisted(&spec, &[m - k]).unwrap())
                    .sum();
                assert_eq!(sum, c_coefficient(&spec, &[m]));
            }
        }
    }
}

#[test]
fn clamped_reconstruction_breaks_beyond_rank_one() {
    // with μ := 0 off the dominant chamber, D_χ μ = c fails at the valid weight (2,1)
    let spec = SpinChainSpec::new(2, 1, 3).unwrap();
    let m = [2, 1];
    let bx = DegreeBox::covering(&m).unwrap();
    let chi = verma_inverse(&positive_roots(2), 2)
        .unwrap()
        .poly()
        .series_reciprocal(&bx)
        .unwrap();
    let clamped = apply_shift(
        &CharacterInverse::polynomial(chi),
        |p| mu_untwisted(&spec, p).unwrap(),
        &m,
    )
    .unwrap();
    assert_ne!(clamped, c_coefficient(&spec, &m));
}

#[test]
fn exponent_order_is_graded() {
    let a = ExponentVector::new(vec![2, 0]);
    let b = ExponentVector::new(vec![0, 1]);
    assert!(b < a);
}
