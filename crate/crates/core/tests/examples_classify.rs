//! Worked examples for the hamiltonian bridge and the classification pipeline.

use isotriple::classify::{
    census_dim2, classify_triple, discrete_selfdual_family, form_scalar_class, solve_x2_minus_y2, FormClassDatum,
    SelfDualFamily, Solvability, SummandLabel,
};
use isotriple::exactla::{char_poly, invariant_factors};
use isotriple::hamiltonian::{from_triple, graph_form, to_triple, LinHamField};
use isotriple::normalforms::{
    build_discrete, build_framed, build_hk, compatible_form_eig, compatible_form_hom, DiscreteFamily, FormProvenance,
};
use isotriple::subspace::standard_symplectic;
use isotriple::symplectic::{is_isometric, random_symplectic, symplectify};
use isotriple::{DimensionVector, Error, FieldCtx, IsotropicTriple, Mat, Poly, Sextuple, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q() -> FieldCtx {
    FieldCtx::Rational
}

fn fp(p: u64) -> FieldCtx {
    FieldCtx::prime(p).unwrap()
}

fn dv(v: [usize; 7]) -> DimensionVector {
    DimensionVector(v)
}

fn on_line(ctx: FieldCtx, dims: [usize; 6]) -> Sextuple {
    Sextuple::new(dims.map(|d| if d == 0 { Subspace::zero(ctx, 1) } else { Subspace::full(ctx, 1) })).unwrap()
}

fn with_form(s: &Sextuple, h: &Mat) -> IsotropicTriple {
    IsotropicTriple::new(h.clone(), [s.i(1).clone(), s.i(2).clone(), s.i(3).clone()]).unwrap()
}

fn three_lines(ctx: FieldCtx, a: i64) -> IsotropicTriple {
    let om = standard_symplectic(ctx, 1);
    let l = |v: Vec<i64>| Subspace::from_i64(ctx, 2, &[v]);
    IsotropicTriple::new(om, [l(vec![1, 0]), l(vec![0, 1]), l(vec![1, a])]).unwrap()
}

fn ham(ctx: FieldCtx, x: &[Vec<i64>]) -> LinHamField {
    let om = standard_symplectic(ctx, x.len() / 2);
    LinHamField::new(om, Mat::from_i64(ctx, x)).unwrap()
}

#[test]
fn graph_forms() {
    let h = ham(q(), &[vec![0, 0], vec![0, 0]]);
    let f = graph_form(&h);
    assert_eq!(f, h.omega.transpose());
    // The antisymmetric part recovers the form and the symmetric part recovers X.
    let h = ham(q(), &[vec![1, 2], vec![3, -1]]);
    let f = graph_form(&h);
    let half = q().frac(1, 2).unwrap();
    let fa = (&f - &f.transpose()).scale(&half);
    let fs = (&f + &f.transpose()).scale(&half);
    assert_eq!(fa, h.omega.transpose());
    assert_eq!(&fa.inverse().unwrap() * &fs, h.x);
    // A singular antisymmetric part is rejected when reading a field back.
    let om = standard_symplectic(q(), 1);
    let z = Subspace::zero(q(), 2);
    let t = IsotropicTriple::new(om, [z.clone(), z.clone(), z]).unwrap();
    assert!(matches!(from_triple(&t), Err(Error::HypothesesFail(_))));
}

#[test]
fn hamiltonian_triples() {
    let t = to_triple(&ham(q(), &[vec![0, 0], vec![0, 0]])).unwrap();
    assert_eq!(t.ambient(), 6);
    let [i1, i2, i3] = &t.iso;
    assert!(i1.sum(i2).unwrap().sum(i3).unwrap().is_full());
    for (a, b) in [(i1, i2), (i2, i3), (i3, i1)] {
        let s = a.sum(b).unwrap();
        assert!(s.intersect(&s.perp(&t.omega).unwrap()).unwrap().is_zero());
    }
    let t2 = to_triple(&ham(q(), &[vec![2, 0], vec![0, -2]])).unwrap();
    let t3 = to_triple(&ham(q(), &[vec![3, 0], vec![0, -3]])).unwrap();
    assert!(is_isometric(&t2, &t3, 0).unwrap().is_none());
}

#[test]
fn hamiltonian_roundtrips() {
    let om = standard_symplectic(q(), 2);
    let s = Mat::from_i64(q(), &[vec![2, 1, 0, 0], vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![0, 1, 0, -1]]);
    let h = LinHamField::new(om.clone(), &om.inverse().unwrap() * &s).unwrap();
    let t = to_triple(&h).unwrap();
    let back = to_triple(&from_triple(&t).unwrap()).unwrap();
    assert!(is_isometric(&t, &back, 0).unwrap().is_some());
    assert_eq!(char_poly(&from_triple(&t).unwrap().x), char_poly(&h.x));

    let half = q().frac(1, 2).unwrap();
    let eta = Mat::jordan(4, &half);
    let r = compatible_form_eig(q(), 4, &[q().one(), q().from_i64(2)], -1).unwrap();
    let x = from_triple(&with_form(&build_framed(&eta).unwrap(), &r.h)).unwrap().x;
    let want = &eta.scale(&q().from_i64(2)) - &Mat::identity(q(), 4);
    assert_eq!(invariant_factors(&x), invariant_factors(&want));

    let e = |i: usize| {
        let mut v = vec![0i64; 6];
        v[i] = 1;
        v
    };
    let t = IsotropicTriple::new(
        standard_symplectic(q(), 3),
        [
            Subspace::from_i64(q(), 6, &[e(0), e(1)]),
            Subspace::from_i64(q(), 6, &[e(1), e(2)]),
            Subspace::from_i64(q(), 6, &[e(3), e(4)]),
        ],
    )
    .unwrap();
    assert!(matches!(from_triple(&t), Err(Error::HypothesesFail(_))));
}

#[test]
fn classify_symplectified_point() {
    let phi = symplectify(&on_line(q(), [0, 0, 0, 0, 0, 0]));
    let rep = classify_triple(&phi, 0).unwrap();
    assert_eq!(rep.summands.len(), 1);
    match &rep.summands[0].label {
        SummandLabel::Split { pair, .. } => {
            let mut got = pair.to_vec();
            got.sort();
            assert_eq!(got, vec![dv([1, 0, 0, 0, 0, 0, 0]), dv([1, 1, 1, 1, 1, 1, 1])]);
        }
        other => panic!("unexpected label {other}"),
    }
}

#[test]
fn classify_a4_with_h1() {
    let s = build_discrete(q(), 1, DiscreteFamily::Plus1).unwrap();
    let h = build_hk(q(), 1, &[q().one()]).unwrap().h;
    let rep = classify_triple(&with_form(&s, &h), 0).unwrap();
    assert_eq!(rep.summands.len(), 1);
    assert!(matches!(
        rep.summands[0].label,
        SummandLabel::NonSplitDiscrete { family: SelfDualFamily::A3kPlus1, k: 1, .. }
    ));
}

#[test]
fn classify_framed_hom_triple() {
    let qq = Poly::parse(q(), "x^2 - x + 1/2").unwrap();
    let r = compatible_form_hom(&qq, 1, -1).unwrap();
    let FormProvenance::Hom { eta, .. } = &r.provenance else { panic!("wrong provenance") };
    let phi = with_form(&build_framed(eta).unwrap(), &r.h);
    let rep = classify_triple(&phi, 0).unwrap();
    assert_eq!(rep.summands.len(), 1);
    let want = qq.shift(&q().frac(1, 2).unwrap());
    assert_eq!(want, Poly::parse(q(), "x^2 + 1/4").unwrap());
    match &rep.summands[0].label {
        SummandLabel::NonSplitContinuous { r, m, .. } => {
            assert_eq!(r, &want);
            assert_eq!(*m, 1);
        }
        other => panic!("unexpected label {other}"),
    }
}

#[test]
fn classify_scrambled_sum() {
    let ctx = fp(7);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let s = build_discrete(ctx, 1, DiscreteFamily::Plus1).unwrap();
    let a4 = with_form(&s, &build_hk(ctx, 1, &[ctx.one()]).unwrap().h);
    let phi = a4.direct_sum(&three_lines(ctx, 3));
    let g = random_symplectic(&phi.omega, &mut rng);
    let rep = classify_triple(&phi.transform(&g).unwrap(), 1).unwrap();
    assert_eq!(rep.summands.len(), 2);
}

#[test]
fn classify_zero_triple_in_plane() {
    let om = standard_symplectic(q(), 1);
    let z = Subspace::zero(q(), 2);
    let rep = classify_triple(&IsotropicTriple::new(om, [z.clone(), z.clone(), z]).unwrap(), 0).unwrap();
    assert_eq!(rep.summands.len(), 1);
    match &rep.summands[0].label {
        SummandLabel::Split { pair, names, .. } => {
            assert_eq!(pair[0], dv([1, 1, 0, 1, 0, 1, 0]));
            assert_eq!(pair[1], dv([1, 1, 0, 1, 0, 1, 0]));
            assert_eq!(names[0].as_deref(), Some("A(1,0)"));
        }
        other => panic!("unexpected label {other}"),
    }
}

#[test]
fn self_dual_family_matching() {
    assert_eq!(discrete_selfdual_family(&dv([4, 3, 1, 3, 1, 3, 1])), Some((SelfDualFamily::A3kPlus1, 1)));
    assert_eq!(discrete_selfdual_family(&dv([8, 5, 3, 5, 3, 5, 3])), Some((SelfDualFamily::A3kPlus2, 2)));
    assert_eq!(discrete_selfdual_family(&dv([2, 2, 0, 2, 0, 2, 0])), None);
}

#[test]
fn form_classes() {
    let f3 = fp(3);
    let canonical = three_lines(f3, 1);
    let s = canonical.underlying_sextuple();
    let (c, _) = form_scalar_class(&three_lines(f3, 2), &s, &canonical.omega, None, 0).unwrap();
    assert_eq!(c, FormClassDatum::ScalarClass(f3.from_i64(2)));
    let (c, _) = form_scalar_class(&canonical, &s, &canonical.omega, None, 0).unwrap();
    assert_eq!(c, FormClassDatum::ScalarClass(f3.one()));

    let f5 = fp(5);
    let k = Mat::from_i64(f5, &[vec![4]]);
    match solve_x2_minus_y2(&k, &[Mat::identity(f5, 1)], &[]) {
        Solvability::Solvable { x, y } => {
            assert_eq!(&(&x * &x) - &(&y * &y), k);
            assert_eq!(x, Mat::from_i64(f5, &[vec![2]]));
            assert!(y.is_zero());
        }
        other => panic!("unexpected verdict {other:?}"),
    }
}

#[test]
fn census_examples() {
    for p in [3, 5, 7] {
        let c = census_dim2(fp(p)).unwrap();
        assert_eq!(c.count, 16);
        assert_eq!(c.representatives.len(), 16);
    }
}
