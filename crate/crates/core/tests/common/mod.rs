#![allow(dead_code)]

use bellmax::{ComplexMatrix, PureState};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

fn gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random U(2): Gram–Schmidt on a complex Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let c0: Vec<Complex64> = (0..2).map(|_| gaussian(rng)).collect();
    let n0 = (c0[0].norm_sqr() + c0[1].norm_sqr()).sqrt();
    let e0: Vec<Complex64> = c0.iter().map(|z| z / n0).collect();
    let mut c1: Vec<Complex64> = (0..2).map(|_| gaussian(rng)).collect();
    let proj = e0[0].conj() * c1[0] + e0[1].conj() * c1[1];
    c1[0] -= proj * e0[0];
    c1[1] -= proj * e0[1];
    let n1 = (c1[0].norm_sqr() + c1[1].norm_sqr()).sqrt();
    let e1: Vec<Complex64> = c1.iter().map(|z| z / n1).collect();
    ComplexMatrix::from_columns(&[e0, e1])
}

pub fn random_locals<R: Rng>(rng: &mut R, n: usize) -> Vec<ComplexMatrix> {
    (0..n).map(|_| random_unitary(rng)).collect()
}

pub fn dress(psi: &PureState, locals: &[ComplexMatrix]) -> PureState {
    let refs: Vec<&ComplexMatrix> = locals.iter().collect();
    psi.apply(&bellmax::tensor::kron_all(&refs)).unwrap()
}

pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> PureState {
    PureState::normalized((0..1 << n).map(|_| gaussian(rng)).collect()).unwrap()
}

pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rng.sample(StandardNormal), 0.0);
        for j in i + 1..dim {
            let z = gaussian(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}
