//! Worked examples for scalar arithmetic and exact linear algebra.

use isotriple::exactla::{
    char_poly, factor_poly, fitting, generalized_jordan, invariant_factors, is_similar, min_poly,
};
use isotriple::{Error, FieldCtx, Mat, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q() -> FieldCtx {
    FieldCtx::Rational
}

fn f5() -> FieldCtx {
    FieldCtx::prime(5).unwrap()
}

fn poly(ctx: FieldCtx, s: &str) -> Poly {
    Poly::parse(ctx, s).unwrap()
}

#[test]
fn inverse_over_q_and_f5() {
    assert_eq!(q().inv(&q().frac(2, 3).unwrap()).unwrap(), q().frac(3, 2).unwrap());
    assert_eq!(f5().inv(&f5().from_i64(2)).unwrap(), f5().from_i64(3));
    assert_eq!(q().inv(&q().zero()), Err(Error::DivisionByZero));
}

#[test]
fn squares() {
    assert!(q().is_square(&q().frac(4, 9).unwrap()));
    assert!(!q().is_square(&q().from_i64(-1)));
    // Squares mod 5 are {0, 1, 4}.
    let squares: Vec<i64> = (0..5).map(|x| x * x % 5).collect();
    assert!(!squares.contains(&2));
    assert!(!f5().is_square(&f5().from_i64(2)));
}

#[test]
fn square_class_representatives() {
    assert_eq!(q().square_class_rep(&q().from_i64(8)).unwrap(), q().from_i64(2));
    assert_eq!(q().square_class_rep(&q().from_i64(-4)).unwrap(), q().from_i64(-1));
    assert_eq!(f5().square_class_rep(&f5().from_i64(3)).unwrap(), f5().from_i64(2));
}

#[test]
fn rank_and_rref() {
    let a = Mat::from_i64(q(), &[vec![2, 4], vec![1, 2]]);
    assert_eq!(a.rank(), 1);
    assert_eq!(a.rref().mat, Mat::from_i64(q(), &[vec![1, 2], vec![0, 0]]));
    let id = Mat::identity(q(), 3);
    assert_eq!(id.rank(), 3);
    assert_eq!(id.rref().mat, id);
    assert_eq!(Mat::zeros(q(), 2, 3).rank(), 0);
}

#[test]
fn kernel_and_solve() {
    let k = Mat::from_i64(q(), &[vec![1, 1]]).kernel_basis();
    assert_eq!(k.rows, 1);
    assert_eq!(k.row_space(), Mat::from_i64(q(), &[vec![1, -1]]));
    let b = Mat::from_i64(q(), &[vec![3], vec![-7]]);
    assert_eq!(Mat::identity(q(), 2).solve(&b).unwrap(), b);
    let a = Mat::from_i64(q(), &[vec![1, 0], vec![1, 0]]);
    assert_eq!(a.solve(&Mat::from_i64(q(), &[vec![0], vec![1]])), Err(Error::NoSolution));
}

#[test]
fn minimal_and_characteristic_polynomials() {
    let n = Mat::jordan(2, &q().zero());
    assert_eq!(min_poly(&n), poly(q(), "x^2"));
    let qq = poly(q(), "x^2 - x + 1/2");
    assert_eq!(min_poly(&qq.companion()), qq);
    let id = Mat::identity(q(), 3);
    assert_eq!(min_poly(&id), poly(q(), "x - 1"));
    assert_eq!(char_poly(&id), poly(q(), "x - 1").pow(3));
}

#[test]
fn invariant_factor_examples() {
    let d = Mat::diag(q(), &[q().zero(), q().one()]);
    assert_eq!(invariant_factors(&d), vec![poly(q(), "x^2 - x")]);
    assert_eq!(invariant_factors(&Mat::jordan(2, &q().zero())), vec![poly(q(), "x^2")]);
    let z = Mat::zeros(q(), 2, 2);
    assert_eq!(invariant_factors(&z), vec![poly(q(), "x"), poly(q(), "x")]);
}

#[test]
fn similarity_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = Mat::random(q(), 4, 4, &mut rng, 5);
    assert!(is_similar(&a, &a.transpose()));
    assert!(!is_similar(&Mat::jordan(2, &q().zero()), &Mat::zeros(q(), 2, 2)));
    let p = Mat::random_invertible(q(), 4, &mut rng, 5);
    let b = &(&p * &a) * &p.inverse().unwrap();
    assert!(is_similar(&a, &b));
}

#[test]
fn factorization_examples() {
    let f = factor_poly(&poly(q(), "x^2 - 1"));
    let mut got: Vec<(Poly, usize)> = f.iter().map(|x| (x.poly.clone(), x.multiplicity)).collect();
    got.sort_by_key(|(p, _)| p.coeff(0).to_rational());
    assert_eq!(got, vec![(poly(q(), "x - 1"), 1), (poly(q(), "x + 1"), 1)]);

    // Over F5, 2^2 = 4 = -1 and 3^2 = 9 = -1.
    let f = factor_poly(&poly(f5(), "x^2 + 1"));
    let mut got: Vec<Poly> = f.iter().map(|x| x.poly.clone()).collect();
    got.sort_by_key(|p| p.coeff(0).residue());
    assert_eq!(got, vec![poly(f5(), "x - 3"), poly(f5(), "x - 2")]);
    for g in &got {
        assert!(g.eval(&f5().from_i64(2)).is_zero() || g.eval(&f5().from_i64(3)).is_zero());
    }

    let f = factor_poly(&poly(q(), "x^2 + 1"));
    assert_eq!(f.len(), 1);
    assert!(f[0].irreducible);
    assert_eq!(f[0].multiplicity, 1);
}

#[test]
fn fitting_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = Mat::random_invertible(q(), 3, &mut rng, 4);
    assert_eq!(fitting(&g).projector, Mat::identity(q(), 3));
    assert!(fitting(&Mat::jordan(3, &q().zero())).projector.is_zero());
    let d = Mat::diag(q(), &[q().one(), q().zero()]);
    assert_eq!(fitting(&d).projector, d);
}

#[test]
fn generalized_jordan_examples() {
    let r = poly(q(), "x^2 + 1");
    let a = r.pow(2).companion();
    let gj = generalized_jordan(&a).unwrap();
    assert_eq!((gj.l, gj.m), (2, 2));
    assert_eq!(gj.z, r.companion());
    assert_eq!(&(&gj.p * &a) * &gj.p.inverse().unwrap(), gj.normal_form());

    let lam = q().frac(-3, 2).unwrap();
    let j = Mat::jordan(3, &lam);
    let gj = generalized_jordan(&j).unwrap();
    assert_eq!((gj.l, gj.m), (1, 3));
    assert_eq!(gj.z, Mat::from_rows(q(), vec![vec![lam]]));

    let d = Mat::diag(q(), &[q().zero(), q().one()]);
    assert!(matches!(generalized_jordan(&d), Err(Error::NotIndecomposable(_))));
}
