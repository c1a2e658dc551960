//! Property tests for the algebraic invariants of every layer.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isotriple::classify::{census_dim2, classify_triple, SummandLabel};
use isotriple::exactla::{char_poly, fitting, generalized_jordan, invariant_factors, min_poly};
use isotriple::hamiltonian::{from_triple, to_triple, LinHamField};
use isotriple::normalforms::{
    build_discrete, build_framed, build_hk, build_hk_prime, compatible_form_eig, compatible_form_hom, dual_framed,
    eta_to_gamma, extract_frame, gamma_to_eta, DiscreteFamily, FormProvenance,
};
use isotriple::sextuple::{decompose_krs, is_isomorphic};
use isotriple::subspace::standard_symplectic;
use isotriple::symplectic::{
    compatible_form_space, orthogonal_decompose, random_symplectic, symplectify, SummandKind,
};
use isotriple::{DimensionVector, FieldCtx, IsotropicTriple, Mat, Poly, Sextuple, Subspace};

fn q() -> FieldCtx {
    FieldCtx::Rational
}

fn fp(p: u64) -> FieldCtx {
    FieldCtx::prime(p).unwrap()
}

fn field() -> impl Strategy<Value = FieldCtx> {
    prop_oneof![Just(q()), Just(fp(3)), Just(fp(5)), Just(fp(7)), Just(fp(101))]
}

fn random_subspace(ctx: FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> Subspace {
    let r = rng.gen_range(0..=n);
    if r == 0 {
        return Subspace::zero(ctx, n);
    }
    Subspace::span(&Mat::random(ctx, r, n, rng, 3))
}

fn dim_vector() -> impl Strategy<Value = DimensionVector> {
    (0usize..8, any::<u64>()).prop_map(|(v, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = [v, 0, 0, 0, 0, 0, 0];
        for j in 0..3 {
            let c = rng.gen_range(0..=v);
            d[1 + 2 * j] = c;
            d[2 + 2 * j] = rng.gen_range(0..=c);
        }
        DimensionVector(d)
    })
}

fn on_line(ctx: FieldCtx, dims: [usize; 6]) -> Sextuple {
    Sextuple::new(dims.map(|d| if d == 0 { Subspace::zero(ctx, 1) } else { Subspace::full(ctx, 1) })).unwrap()
}

fn with_form(s: &Sextuple, h: &Mat) -> IsotropicTriple {
    IsotropicTriple::new(h.clone(), [s.i(1).clone(), s.i(2).clone(), s.i(3).clone()]).unwrap()
}

/// Small symplectic triples over F7 covering split, discrete and continuous summands.
fn triple_pool() -> Vec<IsotropicTriple> {
    let ctx = fp(7);
    let a4 = with_form(
        &build_discrete(ctx, 1, DiscreteFamily::Plus1).unwrap(),
        &build_hk(ctx, 1, &[ctx.one()]).unwrap().h,
    );
    let a2 = with_form(
        &build_discrete(ctx, 1, DiscreteFamily::Minus1).unwrap(),
        &build_hk_prime(ctx, 1, &[ctx.one()]).unwrap().h,
    );
    let half = ctx.frac(1, 2).unwrap();
    let eig = compatible_form_eig(ctx, 2, &[ctx.from_i64(3)], -1).unwrap();
    let eig = with_form(&build_framed(&Mat::jordan(2, &half)).unwrap(), &eig.h);
    let qq = Poly::parse(ctx, "x^2 - x + 1/2").unwrap();
    let hom = compatible_form_hom(&qq, 1, -1).unwrap();
    let FormProvenance::Hom { eta, .. } = &hom.provenance else { unreachable!() };
    let hom = with_form(&build_framed(eta).unwrap(), &hom.h);
    vec![
        a4,
        a2.clone(),
        a2.scale_form(&ctx.from_i64(3)),
        eig,
        hom,
        symplectify(&on_line(ctx, [0, 0, 0, 0, 0, 0])),
        symplectify(&on_line(ctx, [1, 1, 0, 0, 1, 0])),
        symplectify(&on_line(ctx, [1, 0, 1, 0, 1, 0])),
    ]
}

fn pool_sum(picks: &[usize]) -> IsotropicTriple {
    let pool = triple_pool();
    let mut t = pool[picks[0] % pool.len()].clone();
    for &i in &picks[1..] {
        t = t.direct_sum(&pool[i % pool.len()]);
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(ctx in field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = [0; 3].map(|_| ctx.random(&mut rng, 50));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), ctx.zero());
        if !a.is_zero() {
            prop_assert!((&a * &ctx.inv(&a).unwrap()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn square_classes(ctx in field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ctx.random(&mut rng, 40);
        let b = ctx.random(&mut rng, 40);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ra = ctx.square_class_rep(&a).unwrap();
        prop_assert_eq!(ctx.square_class_rep(&(&a * &(&b * &b))).unwrap(), ra.clone());
        prop_assert_eq!(ctx.square_class_rep(&ra).unwrap(), ra.clone());
        let rb = ctx.square_class_rep(&b).unwrap();
        prop_assert_eq!(ra == rb, ctx.is_square(&(&a / &b)));
        if let FieldCtx::Prime(_) = ctx {
            prop_assert_eq!(ctx.is_square(&(&a * &b)), ctx.is_square(&a) == ctx.is_square(&b));
        }
    }
}

#[test]
fn two_square_classes_over_prime_fields() {
    for p in [3u64, 5, 7, 11, 13] {
        let ctx = fp(p);
        let mut reps: Vec<_> = ctx
            .elements()
            .unwrap()
            .into_iter()
            .filter(|a| !a.is_zero())
            .map(|a| ctx.square_class_rep(&a).unwrap())
            .collect();
        reps.sort_by_key(|r| r.residue());
        reps.dedup();
        assert_eq!(reps.len(), 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn smith_form_and_min_poly(ctx in field(), n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Mat::random(ctx, n, n, &mut rng, 3);
        let fs = invariant_factors(&a);
        let mut prod = Poly::one(ctx);
        for f in &fs {
            prod = &prod * f;
        }
        prop_assert_eq!(prod, char_poly(&a));
        for w in fs.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        let m = min_poly(&a);
        prop_assert!(m.eval_mat(&a).is_zero());
        prop_assert!(m.divides(&char_poly(&a)));
    }

    #[test]
    fn fitting_splits(ctx in field(), n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Mat::random(ctx, n, n, &mut rng, 2);
        let s = fitting(&f);
        let p = &s.projector;
        prop_assert_eq!(&(p * &f), &(&f * p));
        prop_assert_eq!(&(p * p), p);
        prop_assert_eq!(s.image_basis.rows + s.kernel_basis.rows, n);
    }

    #[test]
    fn generalized_jordan_roundtrip(ctx in field(), l in 1usize..=2, m in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qpoly = if l == 1 {
            Poly::parse(ctx, "x - 2").unwrap()
        } else {
            // x^2 - 3 is irreducible over Q, F5 and F7 but not over F3 or F101.
            Poly::parse(ctx, "x^2 - 3").unwrap()
        };
        let base = qpoly.pow(m).companion();
        let p = Mat::random_invertible(ctx, base.rows, &mut rng, 3);
        let a = &(&p * &base) * &p.inverse().unwrap();
        if let Ok(gj) = generalized_jordan(&a) {
            let back = &(&gj.p.inverse().unwrap() * &gj.normal_form()) * &gj.p;
            prop_assert_eq!(back, a);
            prop_assert_eq!(gj.l * gj.m, base.rows);
        } else {
            prop_assert!(l == 2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn modular_law_and_dimension_formula(n in 1usize..=5, seed in any::<u64>()) {
        let ctx = fp(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_subspace(ctx, n, &mut rng);
        let b = random_subspace(ctx, n, &mut rng).intersect(&a).unwrap();
        let c = random_subspace(ctx, n, &mut rng);
        let lhs = a.intersect(&b.sum(&c).unwrap()).unwrap();
        let rhs = b.sum(&a.intersect(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.sum(&c).unwrap().dim() + a.intersect(&c).unwrap().dim(), a.dim() + c.dim());
    }

    #[test]
    fn perp_reverses_order(m in 1usize..=3, seed in any::<u64>()) {
        let ctx = fp(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let om = standard_symplectic(ctx, m);
        let b = random_subspace(ctx, 2 * m, &mut rng);
        let a = random_subspace(ctx, 2 * m, &mut rng).intersect(&b).unwrap();
        let (pa, pb) = (a.perp(&om).unwrap(), b.perp(&om).unwrap());
        prop_assert!(pa.contains(&pb));
        prop_assert_eq!(a.dim() + pa.dim(), 2 * m);
        prop_assert_eq!(pa.perp(&om).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tits_form_constant_along_nu(d in dim_vector()) {
        let nu = DimensionVector::nu();
        if d.defect() == 0 {
            prop_assert_eq!(d.add(&nu).tits_form(), d.tits_form());
        }
        prop_assert_eq!(d.dual().dual(), d);
        let self_dual = (1..=3).all(|j| d.c(j) + d.i(j) == d.v());
        prop_assert_eq!(d.is_self_dual(), self_dual);
        prop_assert_eq!(d.dual().tits_form(), d.tits_form());
    }

    #[test]
    fn sextuple_duals(n in 1usize..=4, seed in any::<u64>()) {
        let ctx = fp(7);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let subs: [Subspace; 6] = std::array::from_fn(|_| random_subspace(ctx, n, &mut rng));
        // Force I_j inside C_j.
        let subs = [
            subs[0].sum(&subs[1]).unwrap(), subs[1].clone(),
            subs[2].sum(&subs[3]).unwrap(), subs[3].clone(),
            subs[4].sum(&subs[5]).unwrap(), subs[5].clone(),
        ];
        let psi = Sextuple::new(subs).unwrap();
        prop_assert_eq!(&psi.dual().dual(), &psi);
        prop_assert_eq!(psi.dual().dimension_vector(), psi.dimension_vector().dual());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn krs_multiset_is_scramble_invariant(picks in prop::collection::vec(0usize..6, 1..=3), seed in any::<u64>()) {
        let ctx = q();
        let parts = [
            build_discrete(ctx, 1, DiscreteFamily::Plus1).unwrap(),
            build_discrete(ctx, 1, DiscreteFamily::Minus1).unwrap(),
            build_framed(&Mat::jordan(2, &ctx.from_i64(3))).unwrap(),
            on_line(ctx, [1, 0, 1, 1, 0, 0]),
            on_line(ctx, [1, 1, 1, 0, 0, 0]),
            build_discrete(ctx, 0, DiscreteFamily::Plus1).unwrap(),
        ];
        let mut psi = parts[picks[0]].clone();
        for &i in &picks[1..] {
            psi = psi.direct_sum(&parts[i]);
        }
        let mut want: Vec<_> = picks.iter().map(|&i| parts[i].dimension_vector()).collect();
        want.sort();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Mat::random_invertible(ctx, psi.ambient, &mut rng, 3);
        let summands = decompose_krs(&psi.transform(&g), seed).unwrap();
        let mut got: Vec<_> = summands.iter().map(|s| s.sextuple.dimension_vector()).collect();
        got.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn framed_duals_and_eta_gamma(d in 1usize..=4, seed in any::<u64>()) {
        let ctx = q();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eta = Mat::random(ctx, d, d, &mut rng, 3);
        let lhs = build_framed(&eta).unwrap().dual();
        let rhs = build_framed(&dual_framed(&eta)).unwrap();
        prop_assert!(is_isomorphic(&lhs, &rhs, seed).unwrap().is_some());
        let f = extract_frame(&build_framed(&eta).unwrap()).unwrap().frame;
        prop_assert!((&(&f.h31 * &f.h23) * &f.h12).is_identity());
        let id = Mat::identity(ctx, d);
        if (&eta - &id).is_invertible() {
            let gamma = eta_to_gamma(&eta).unwrap();
            prop_assert_eq!(gamma_to_eta(&gamma).unwrap(), eta);
        }
    }

    #[test]
    fn omega_is_compatible_and_split_identities(picks in prop::collection::vec(0usize..8, 1..=2), seed in any::<u64>()) {
        let phi = pool_sum(&picks);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_symplectic(&phi.omega, &mut rng);
        let phi = phi.transform(&g).unwrap();
        prop_assert!(compatible_form_space(&phi.underlying_sextuple(), -1, seed).unwrap().contains(&phi.omega));
        for part in orthogonal_decompose(&phi, seed).unwrap() {
            if let SummandKind::SplitPair { pi, .. } = &part.kind {
                let pit = part.triple.transpose(pi);
                let id = Mat::identity(phi.ctx, part.triple.ambient());
                prop_assert_eq!(&(pi * pi), pi);
                prop_assert!((pi * &pit).is_zero() && (&pit * pi).is_zero());
                prop_assert_eq!(&(pi + &pit), &id);
            }
        }
    }

    #[test]
    fn classification_labels(picks in prop::collection::vec(0usize..8, 1..=3), seed in any::<u64>()) {
        let phi = pool_sum(&picks);
        let base = classify_triple(&phi, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_symplectic(&phi.omega, &mut rng);
        let rep = classify_triple(&phi.transform(&g).unwrap(), seed).unwrap();
        prop_assert_eq!(rep.label_multiset(), base.label_multiset());
        for s in &rep.summands {
            match &s.label {
                SummandLabel::Split { pair, .. } => prop_assert_eq!(pair[0].dual(), pair[1]),
                SummandLabel::NonSplitDiscrete { .. } => prop_assert!(s.basis.rows % 2 == 0),
                SummandLabel::NonSplitContinuous { r, .. } => {
                    prop_assert!(s.basis.rows % 2 == 0);
                    prop_assert!(r.is_even());
                }
            }
        }
    }

    #[test]
    fn hamiltonian_roundtrip(ctx in prop_oneof![Just(q()), Just(fp(11))], m in 1usize..=2, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let om = standard_symplectic(ctx, m);
        let s = Mat::random(ctx, 2 * m, 2 * m, &mut rng, 3);
        let x = &om.inverse().unwrap() * &(&s + &s.transpose());
        let h = LinHamField::new(om.clone(), x).unwrap();
        prop_assert!((&(&h.x.transpose() * &om) + &(&om * &h.x)).is_zero());
        // Reading a field back needs X + 1 to be invertible.
        prop_assume!((&h.x + &Mat::identity(ctx, 2 * m)).is_invertible());
        let back = from_triple(&to_triple(&h).unwrap()).unwrap();
        prop_assert!((&(&back.x.transpose() * &back.omega) + &(&back.omega * &back.x)).is_zero());
        prop_assert_eq!(char_poly(&back.x), char_poly(&h.x));
    }
}

#[test]
fn census_count_for_odd_primes() {
    for p in [3u64, 5, 7, 11] {
        assert_eq!(census_dim2(fp(p)).unwrap().count, 16);
    }
}
