//! Random exact flags and brute-force position oracles shared by the
//! integration tests.
#![allow(dead_code)]

use flagtwg::flags::{intersection_dim, ExactFlag, ExactMatrix, GaussianRational, SymplecticForm};
use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gaussian integer with both parts in [-3, 3].
pub fn entry(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3))
}

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> ExactMatrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| entry(rng)).collect()).collect();
        let m = ExactMatrix::from_rows(rows).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

/// Unit upper triangular: stabilises the standard flag.
pub fn random_borel(rng: &mut ChaCha8Rng, n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = entry(rng);
        }
    }
    m
}

/// Column j is e_{sigma(j)}.
pub fn permutation_matrix(sigma: &[usize]) -> ExactMatrix {
    let n = sigma.len();
    let mut m = ExactMatrix::zeros(n, n);
    for (j, &s) in sigma.iter().enumerate() {
        m[(s - 1, j)] = GaussianRational::int(1);
    }
    m
}

/// F = g E and H = g b P_sigma E with sigma random, so the position of
/// (F, H) is sigma by construction.
pub fn planted_pair(rng: &mut ChaCha8Rng, n: usize) -> (ExactFlag, ExactFlag, Vec<usize>) {
    let mut sigma: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        sigma.swap(i, rng.gen_range(0..=i));
    }
    let g = random_invertible(rng, n);
    let b = random_borel(rng, n);
    let f = ExactFlag::full_from_basis(g.clone()).unwrap();
    let h = ExactFlag::full_from_basis(g.mul(&b).mul(&permutation_matrix(&sigma))).unwrap();
    (f, h, sigma)
}

pub fn generic_pair(rng: &mut ChaCha8Rng, n: usize) -> (ExactFlag, ExactFlag) {
    (
        ExactFlag::full_from_basis(random_invertible(rng, n)).unwrap(),
        ExactFlag::full_from_basis(random_invertible(rng, n)).unwrap(),
    )
}

/// The unique permutation sigma with dim(F^j cap H^k) = #{i <= k : sigma(i) <= j},
/// found by trying all of S_n against the full table.
pub fn d_table_position(f: &ExactFlag, h: &ExactFlag) -> Vec<usize> {
    let n = f.ambient();
    let table: Vec<Vec<usize>> = (1..=n)
        .map(|j| (1..=n).map(|k| intersection_dim(&f.subspace(j), &h.subspace(k)).unwrap()).collect())
        .collect();
    let fits: Vec<Vec<usize>> = (1..=n)
        .permutations(n)
        .filter(|s| {
            (1..=n).all(|j| (1..=n).all(|k| table[j - 1][k - 1] == s[..k].iter().filter(|&&x| x <= j).count()))
        })
        .collect();
    assert_eq!(fits.len(), 1, "D-table fits {} permutations", fits.len());
    fits.into_iter().next().unwrap()
}

/// Index of e_k (k > 0) or e_-|k| in the basis e_1..e_n, e_-n..e_-1.
pub fn signed_index(k: i32, m: usize) -> usize {
    if k > 0 {
        k as usize - 1
    } else {
        m - k.unsigned_abs() as usize
    }
}

/// x -> x + c omega(v, x) v, which preserves omega.
pub fn transvection(omega: &SymplecticForm, v: &[GaussianRational], c: &GaussianRational) -> ExactMatrix {
    let m = v.len();
    let mut t = ExactMatrix::identity(m);
    for col in 0..m {
        let mut e = vec![GaussianRational::int(0); m];
        e[col] = GaussianRational::int(1);
        let s = c * &omega.pair(v, &e);
        for (row, vi) in v.iter().enumerate() {
            t[(row, col)] += &(&s * vi);
        }
    }
    t
}

pub fn random_symplectic(rng: &mut ChaCha8Rng, omega: &SymplecticForm, steps: usize) -> ExactMatrix {
    let m = omega.dim();
    let mut g = ExactMatrix::identity(m);
    for _ in 0..steps {
        let v: Vec<GaussianRational> = (0..m).map(|_| entry(rng)).collect();
        g = transvection(omega, &v, &entry(rng)).mul(&g);
    }
    g
}

/// e_j -> e_w(j), e_-j -> sign(w(j)) e_-w(j), symplectic for the standard form.
pub fn signed_permutation_matrix(images: &[i32]) -> ExactMatrix {
    let n = images.len();
    let m = 2 * n;
    let mut p = ExactMatrix::zeros(m, m);
    for (j, &w) in images.iter().enumerate() {
        let j = j as i32 + 1;
        p[(signed_index(w, m), signed_index(j, m))] = GaussianRational::int(1);
        p[(signed_index(-w, m), signed_index(-j, m))] = GaussianRational::int(w.signum() as i64);
    }
    p
}

pub fn random_signed_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<i32> {
    let mut w: Vec<i32> = (1..=n as i32).collect();
    for i in (1..n).rev() {
        w.swap(i, rng.gen_range(0..=i));
    }
    for x in &mut w {
        if rng.gen_bool(0.5) {
            *x = -*x;
        }
    }
    w
}
