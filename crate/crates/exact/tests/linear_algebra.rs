use std::collections::BTreeMap;

use klr_exact::{Field, LaurentPoly, Matrix, Poly, Rat, RatFunc, Solution, SparseVec, Subspace};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-4i64..5, 1i64..4).prop_map(|(n, d)| Rat::new(n, d))
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix<Rat>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(rat(), c), r).prop_map(Matrix::from_rows)
    })
}

/// Sparse rows tend to be rank deficient, which is where elimination bugs hide.
fn sparse_matrix(max: usize) -> impl Strategy<Value = Matrix<Rat>> {
    let entry = prop_oneof![3 => Just(Rat::zero()), 1 => rat()];
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(entry.clone(), c), r).prop_map(Matrix::from_rows)
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((0u32..3, 0u32..3, -3i64..4), 1..4).prop_map(|terms| {
        let (a, b) = (Poly::var(0), Poly::var(1));
        terms.into_iter().fold(Poly::zero(), |acc, (i, j, c)| {
            let mut m = Poly::constant(Rat::from_int(c));
            for _ in 0..i {
                m = m.mul(&a);
            }
            for _ in 0..j {
                m = m.mul(&b);
            }
            acc.add(&m)
        })
    })
}

fn eval(f: &RatFunc, at: &BTreeMap<usize, Rat>) -> Option<Rat> {
    f.substitute(at).ok().and_then(|r| r.as_constant())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in sparse_matrix(6)) {
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn row_rank_is_column_rank(m in sparse_matrix(6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_finds_a_preimage(m in matrix(5), seed in proptest::collection::vec(rat(), 5)) {
        let x: Vec<Rat> = seed.into_iter().cycle().take(m.cols()).collect();
        let b = m.mul_vec(&x);
        match m.solve(&b) {
            Solution::Affine { particular, kernel } => {
                prop_assert_eq!(m.mul_vec(&particular), b);
                prop_assert_eq!(kernel.len(), m.cols() - m.rank());
            }
            Solution::Inconsistent => prop_assert!(false, "b = Ax has no solution"),
        }
    }

    #[test]
    fn inconsistency_matches_augmented_rank(m in sparse_matrix(5), b in proptest::collection::vec(rat(), 5)) {
        let b: Vec<Rat> = b.into_iter().take(m.rows()).chain(std::iter::repeat(Rat::zero())).take(m.rows()).collect();
        let aug: Vec<Vec<Rat>> = (0..m.rows()).map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        }).collect();
        let consistent = Matrix::from_rows(aug).rank() == m.rank();
        prop_assert_eq!(matches!(m.solve(&b), Solution::Affine { .. }), consistent);
    }

    #[test]
    fn inverse_when_full_rank(m in matrix(4)) {
        prop_assume!(m.rows() == m.cols());
        let n = m.rows();
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.rank(), n);
                prop_assert_eq!(m.mul(&inv), Matrix::identity(n));
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn subspace_agrees_with_dense_rank(m in sparse_matrix(6)) {
        let vs: Vec<SparseVec<Rat>> = (0..m.rows()).map(|i| SparseVec::from_dense(m.row(i))).collect();
        let s = Subspace::spanned_by(vs.clone());
        prop_assert_eq!(s.dim(), m.rank());
        for v in &vs {
            prop_assert!(s.contains(v));
            prop_assert!(s.reduce(v).is_zero());
            let coords = s.coordinates(v).expect("in span");
            let back = s.basis().iter().zip(&coords).fold(SparseVec::zero(), |acc, (b, c)| acc.add_scaled(b, c));
            prop_assert_eq!(&back, v);
        }
        for k in s.null_space(m.cols()) {
            prop_assert!(s.basis().iter().all(|b| b.dot(&k).is_zero()));
        }
    }

    #[test]
    fn evaluation_is_a_field_homomorphism(p in poly(), q in poly(), r in poly(), x in rat(), y in rat()) {
        let at = BTreeMap::from([(0, x), (1, y)]);
        let (p, q, r) = (RatFunc::from_poly(p), RatFunc::from_poly(q), RatFunc::from_poly(r));
        prop_assume!(!q.is_zero() && eval(&q, &at).is_some_and(|v| !v.is_zero()));
        let f = p.mul(&r).add(&r.div(&q)).sub(&p);
        let (ep, eq, er) = (eval(&p, &at).unwrap(), eval(&q, &at).unwrap(), eval(&r, &at).unwrap());
        let want = ep.mul(&er).add(&er.div(&eq)).sub(&ep);
        prop_assert_eq!(eval(&f, &at), Some(want));
    }

    #[test]
    fn bar_is_a_ring_involution(a in proptest::collection::vec((-5i32..5, -3i64..4), 0..5),
                                b in proptest::collection::vec((-5i32..5, -3i64..4), 0..5)) {
        let (a, b) = (LaurentPoly::from_terms(a), LaurentPoly::from_terms(b));
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
        prop_assert_eq!(a.add(&b).bar(), a.bar().add(&b.bar()));
        prop_assert_eq!(a.bar().bar(), a);
    }
}

#[test]
fn quantum_integers_multiply_like_characters_of_sl2() {
    // [2][n] = [n+1] + [n-1]
    for n in 2..7 {
        let lhs = LaurentPoly::quantum_int(2, 1).mul(&LaurentPoly::quantum_int(n, 1));
        let rhs = LaurentPoly::quantum_int(n + 1, 1).add(&LaurentPoly::quantum_int(n - 1, 1));
        assert_eq!(lhs, rhs);
    }
    assert_eq!(LaurentPoly::quantum_int(3, 2), LaurentPoly::from_terms([(4, 1), (0, 1), (-4, 1)]));
}

#[test]
fn kernel_over_a_function_field() {
    // [[a, 1], [a^2, a]] has rank one over Q(a)
    let a = RatFunc::var(0);
    let m = Matrix::from_rows(vec![vec![a.clone(), RatFunc::one()], vec![a.mul(&a), a.clone()]]);
    assert_eq!(m.rank(), 1);
    let k = m.kernel();
    assert_eq!(k.len(), 1);
    assert!(m.mul_vec(&k[0]).iter().all(|v| *v == RatFunc::zero()));
}
