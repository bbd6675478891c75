//! SL(2) representations: weights, Anosov types and the invariant form,
//! checked against the Lie algebra action on binary forms.

use flagtwg::flags::{ExactMatrix, GaussianRational};
use flagtwg::sl2reps::{
    admits_symplectic_form, anosov_type, anosov_type_symplectic, cartan_projection, invariant_symplectic_form,
    partition_weights, so2_weight_basis, Partition,
};
use flagtwg::weyl::RootSubset;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn partition_strategy(max_total: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=5, 1..=4)
        .prop_filter("total too large", move |v| v.iter().sum::<usize>() <= max_total)
        .prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
}

/// Matrices of E = u d/dv, F = v d/du and H = u d/du - v d/dv on the weight
/// basis, where the vector of weight w in a part of dimension d is
/// u^a v^(d-1-a), a = (w + d - 1)/2.
fn lie_algebra(p: &Partition) -> [ExactMatrix; 3] {
    let basis = so2_weight_basis(p);
    let n = basis.len();
    let exps: Vec<(usize, i64)> = (0..n)
        .map(|k| {
            let d = p.parts()[basis.part_of(k)] as i64;
            (basis.part_of(k), (basis.weights()[k] + d - 1) / 2)
        })
        .collect();
    let find = |part: usize, a: i64| exps.iter().position(|&e| e == (part, a));
    let mut e = ExactMatrix::zeros(n, n);
    let mut f = ExactMatrix::zeros(n, n);
    let mut h = ExactMatrix::zeros(n, n);
    for (k, &(part, a)) in exps.iter().enumerate() {
        let b = p.parts()[part] as i64 - 1 - a;
        if let Some(i) = find(part, a + 1) {
            e[(i, k)] = GaussianRational::int(b);
        }
        if let Some(i) = find(part, a - 1) {
            f[(i, k)] = GaussianRational::int(a);
        }
        h[(k, k)] = GaussianRational::int(a - b);
    }
    [e, f, h]
}

#[test]
fn weight_vectors_have_their_weights() {
    for total in 1..=7 {
        for p in Partition::all_of(total) {
            let [_, _, h] = lie_algebra(&p);
            let basis = so2_weight_basis(&p);
            for (k, &w) in basis.weights().iter().enumerate() {
                assert_eq!(h[(k, k)], GaussianRational::int(w));
            }
        }
    }
}

#[test]
fn partitions_are_counted() {
    let counts: Vec<usize> = (1..=8).map(|n| Partition::all_of(n).len()).collect();
    assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22]);
}

#[test]
fn invariant_form_is_annihilated_by_the_lie_algebra() {
    let mut checked = 0;
    for total in (2..=8).step_by(2) {
        for p in Partition::all_of(total) {
            if !admits_symplectic_form(&p).unwrap() {
                assert!(invariant_symplectic_form(&p).is_err());
                continue;
            }
            let omega = invariant_symplectic_form(&p).unwrap();
            let g = omega.gram();
            for x in lie_algebra(&p) {
                let lhs = x.transpose().mul(g);
                let rhs = g.mul(&x);
                for i in 0..g.rows() {
                    for j in 0..g.cols() {
                        assert_eq!(&lhs[(i, j)] + &rhs[(i, j)], GaussianRational::int(0), "{p} at ({i},{j})");
                    }
                }
            }
            checked += 1;
        }
    }
    assert!(checked >= 8);
}

proptest! {
    #[test]
    fn weights_are_symmetric(p in partition_strategy(10)) {
        let w = partition_weights(&p);
        prop_assert_eq!(w.len(), p.total());
        prop_assert!(w.windows(2).all(|x| x[0] >= x[1]));
        let mut neg: Vec<i64> = w.iter().map(|x| -x).collect();
        neg.reverse();
        prop_assert_eq!(&neg, &w);
        let basis = so2_weight_basis(&p);
        let mut b = basis.weights().to_vec();
        b.sort_unstable_by(|x, y| y.cmp(x));
        prop_assert_eq!(b, w);
    }

    /// alpha_j is in the type when the j-th and (j+1)-th eigenvalues of
    /// the diagonal element differ.
    #[test]
    fn anosov_type_from_eigenvalue_gaps(p in partition_strategy(10)) {
        let w = partition_weights(&p);
        let mut gaps = RootSubset::new();
        for j in 1..w.len() {
            let above = w.iter().filter(|&&x| x >= w[j - 1]).count();
            if above == j {
                gaps.insert(j);
            }
        }
        prop_assert_eq!(anosov_type(&p), gaps);
    }

    #[test]
    fn symplectic_criterion(p in partition_strategy(10)) {
        if p.total() % 2 == 1 {
            prop_assert!(admits_symplectic_form(&p).is_err());
            return Ok(());
        }
        // odd-dimensional irreducibles are orthogonal, so they must pair up
        let mut parts = p.parts().to_vec();
        parts.dedup();
        let want = parts.iter().all(|&d| d % 2 == 0 || p.parts().iter().filter(|&&e| e == d).count() % 2 == 0);
        prop_assert_eq!(admits_symplectic_form(&p).unwrap(), want);
        if want {
            let n = p.total() / 2;
            let t = anosov_type_symplectic(&p).unwrap();
            let a = anosov_type(&p);
            // type-A roots j and 2n - j fold onto the same symplectic root
            for j in 1..=n {
                prop_assert_eq!(t.contains(&j), a.contains(&j) || a.contains(&(2 * n - j)));
            }
        }
    }

    #[test]
    fn cartan_projection_of_rotated_diagonal(logs in prop::collection::vec(-3.0f64..3.0, 2..=5), seed in any::<u64>()) {
        let n = logs.len();
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let q1 = DMatrix::from_fn(n, n, |_, _| next()).qr().q();
        let q2 = DMatrix::from_fn(n, n, |_, _| next()).qr().q();
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, logs.iter().map(|x| x.exp())));
        let got = cartan_projection(&(q1 * d * q2)).unwrap();
        let mut want = logs.clone();
        want.sort_by(|a, b| b.total_cmp(a));
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).abs() < 1e-9, "{:?} vs {:?}", got, want);
        }
    }
}
