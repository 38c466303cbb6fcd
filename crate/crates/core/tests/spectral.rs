use graph_lda::matrix::Matrix;
use graph_lda::{eigh_symmetric, gft, igft, SymMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Roots of the characteristic polynomial of a symmetric 2×2 matrix.
fn eig2(a: f64, b: f64, d: f64) -> [f64; 2] {
    let mid = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    [mid - rad, mid + rad]
}

/// Roots of the characteristic polynomial of a symmetric 3×3 matrix via
/// the trigonometric solution of the depressed cubic.
fn eig3(m: &[[f64; 3]; 3]) -> [f64; 3] {
    let p1 = m[0][1].powi(2) + m[0][2].powi(2) + m[1][2].powi(2);
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return [q; 3];
    }
    let mut b = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            b[i][j] = (m[i][j] - if i == j { q } else { 0.0 }) / p;
        }
    }
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (det / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let mut out = [lo, 3.0 * q - hi - lo, hi];
    out.sort_by(f64::total_cmp);
    out
}

fn random_sym(d: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = rng.random_range(-2.0..2.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    SymMatrix::new(m).unwrap()
}

proptest! {
    #[test]
    fn two_by_two_matches_characteristic_roots(a in -10.0..10.0f64, b in -10.0..10.0f64, d in -10.0..10.0f64) {
        let s = SymMatrix::from_rows(&[[a, b], [b, d]]).unwrap();
        let basis = eigh_symmetric(&s).unwrap();
        for (got, want) in basis.eigenvalues().iter().zip(eig2(a, b, d)) {
            prop_assert!((got - want).abs() <= 1e-9, "{} vs {}", got, want);
        }
    }

    #[test]
    fn three_by_three_matches_characteristic_roots(v in prop::array::uniform6(-5.0..5.0f64)) {
        let m = [[v[0], v[1], v[2]], [v[1], v[3], v[4]], [v[2], v[4], v[5]]];
        let basis = eigh_symmetric(&SymMatrix::from_rows(&m).unwrap()).unwrap();
        for (got, want) in basis.eigenvalues().iter().zip(eig3(&m)) {
            prop_assert!((got - want).abs() <= 1e-9, "{} vs {}", got, want);
        }
    }

    #[test]
    fn decomposition_invariants(seed in any::<u64>(), d in 1usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_sym(d, &mut rng);
        let b = eigh_symmetric(&s).unwrap();
        prop_assert!(b.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(b.orthonormality_error() <= 1e-8);
        let rec = b.reconstruct().sub(s.as_matrix()).unwrap().max_abs();
        prop_assert!(rec <= 1e-8 * s.as_matrix().max_abs().max(1.0));
    }

    #[test]
    fn gft_preserves_norm(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = eigh_symmetric(&random_sym(12, &mut rng)).unwrap();
        let x: Vec<f64> = (0..12).map(|_| rng.random_range(-3.0..3.0)).collect();
        let xh = gft(&b, &x).unwrap();
        let n = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
        prop_assert!((n(&x) - n(&xh)).abs() <= 1e-10);
    }
}

#[test]
fn round_trip_on_p3_basis() {
    let p3 = SymMatrix::from_rows(&[[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]).unwrap();
    let b = eigh_symmetric(&p3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let x: Vec<f64> = (0..3).map(|_| rng.random_range(-5.0..5.0)).collect();
        let back = igft(&b, &gft(&b, &x).unwrap()).unwrap();
        let xh = gft(&b, &igft(&b, &x).unwrap()).unwrap();
        for i in 0..3 {
            worst = worst.max((back[i] - x[i]).abs()).max((xh[i] - x[i]).abs());
        }
    }
    assert!(worst <= 1e-10, "{worst}");
}

#[test]
fn decomposition_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = random_sym(25, &mut rng);
    assert_eq!(eigh_symmetric(&s).unwrap(), eigh_symmetric(&s).unwrap());
}
