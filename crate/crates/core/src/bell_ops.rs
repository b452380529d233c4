//! CHSH and Mermin–Klyshko Bell operators and their operator identities.

use num_complex::Complex64;
use rand::Rng;

use crate::spin::{cross_observable, inner, observable_from_vector, SpinObservable, UnitVector3};
use crate::tensor::{kron, kron_all, operator_norm, ComplexMatrix};

fn id2() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

/// Measurement settings `(A, A′, B, B′)` for two qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct ChshSettings {
    pub a: SpinObservable,
    pub a_prime: SpinObservable,
    pub b: SpinObservable,
    pub b_prime: SpinObservable,
}

impl ChshSettings {
    pub fn new(a: SpinObservable, a_prime: SpinObservable, b: SpinObservable, b_prime: SpinObservable) -> Self {
        Self { a, a_prime, b, b_prime }
    }

    pub fn from_directions(d: [UnitVector3; 4]) -> Self {
        let [a, ap, b, bp] = d.map(observable_from_vector);
        Self::new(a, ap, b, bp)
    }

    /// `A = σz, A′ = σx, B = (σz+σx)/√2, B′ = (σz−σx)/√2`.
    pub fn standard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_directions([
            UnitVector3::Z,
            UnitVector3::X,
            UnitVector3::new([h, 0.0, h]).unwrap(),
            UnitVector3::new([-h, 0.0, h]).unwrap(),
        ])
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_directions(std::array::from_fn(|_| UnitVector3::random(rng)))
    }

    pub fn observables(&self) -> [&SpinObservable; 4] {
        [&self.a, &self.a_prime, &self.b, &self.b_prime]
    }

    /// Conjugates every observable by its site's unitary.
    pub fn conjugated(&self, ua: &ComplexMatrix, ub: &ComplexMatrix) -> Self {
        Self::new(
            self.a.conjugated(ua),
            self.a_prime.conjugated(ua),
            self.b.conjugated(ub),
            self.b_prime.conjugated(ub),
        )
    }

    /// The same settings with the primed and unprimed observables exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.a_prime.clone(), self.a.clone(), self.b_prime.clone(), self.b.clone())
    }
}

/// Measurement settings `(A, A′, B, B′, C, C′)` for three qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct KlyshkoSettings {
    pub a: SpinObservable,
    pub a_prime: SpinObservable,
    pub b: SpinObservable,
    pub b_prime: SpinObservable,
    pub c: SpinObservable,
    pub c_prime: SpinObservable,
}

impl KlyshkoSettings {
    pub fn from_directions(d: [UnitVector3; 6]) -> Self {
        let [a, a_prime, b, b_prime, c, c_prime] = d.map(observable_from_vector);
        Self { a, a_prime, b, b_prime, c, c_prime }
    }

    /// `A = σzσxσz = −σx, A′ = σzσyσz = −σy, B = C = σx, B′ = C′ = σy`;
    /// the GHZ state is a +4 eigenvector of the resulting operator.
    pub fn ghz_optimal() -> Self {
        Self::from_directions([
            UnitVector3::X.neg(),
            UnitVector3::Y.neg(),
            UnitVector3::X,
            UnitVector3::Y,
            UnitVector3::X,
            UnitVector3::Y,
        ])
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_directions(std::array::from_fn(|_| UnitVector3::random(rng)))
    }

    pub fn observables(&self) -> [&SpinObservable; 6] {
        [&self.a, &self.a_prime, &self.b, &self.b_prime, &self.c, &self.c_prime]
    }

    pub fn conjugated(&self, ua: &ComplexMatrix, ub: &ComplexMatrix, uc: &ComplexMatrix) -> Self {
        Self {
            a: self.a.conjugated(ua),
            a_prime: self.a_prime.conjugated(ua),
            b: self.b.conjugated(ub),
            b_prime: self.b_prime.conjugated(ub),
            c: self.c.conjugated(uc),
            c_prime: self.c_prime.conjugated(uc),
        }
    }

    /// The two-qubit settings on sites A and B.
    pub fn ab(&self) -> ChshSettings {
        ChshSettings::new(self.a.clone(), self.a_prime.clone(), self.b.clone(), self.b_prime.clone())
    }
}

/// Either scenario; used where the maximizer and the CLI are generic over size.
#[derive(Debug, Clone, PartialEq)]
pub enum Settings {
    Chsh(ChshSettings),
    Klyshko(KlyshkoSettings),
}

impl Settings {
    pub fn n_qubits(&self) -> usize {
        match self {
            Settings::Chsh(_) => 2,
            Settings::Klyshko(_) => 3,
        }
    }

    pub fn operator(&self) -> ComplexMatrix {
        match self {
            Settings::Chsh(s) => chsh_operator(s),
            Settings::Klyshko(s) => klyshko_operator(s),
        }
    }

    pub fn orthogonality_residual(&self) -> f64 {
        match self {
            Settings::Chsh(s) => s.orthogonality_residual(),
            Settings::Klyshko(s) => s.orthogonality_residual(),
        }
    }

    /// Direction vectors in `(x, x′)` order per site.
    pub fn directions(&self) -> Vec<UnitVector3> {
        match self {
            Settings::Chsh(s) => s.observables().iter().map(|o| o.direction()).collect(),
            Settings::Klyshko(s) => s.observables().iter().map(|o| o.direction()).collect(),
        }
    }

    /// Inverse of [`Settings::directions`]; panics unless given 4 or 6 vectors.
    pub fn from_directions(d: &[UnitVector3]) -> Self {
        match d.len() {
            4 => Settings::Chsh(ChshSettings::from_directions([d[0], d[1], d[2], d[3]])),
            6 => Settings::Klyshko(KlyshkoSettings::from_directions([d[0], d[1], d[2], d[3], d[4], d[5]])),
            n => panic!("{n} directions do not describe a Bell scenario"),
        }
    }
}

impl From<ChshSettings> for Settings {
    fn from(s: ChshSettings) -> Self {
        Settings::Chsh(s)
    }
}

impl From<KlyshkoSettings> for Settings {
    fn from(s: KlyshkoSettings) -> Self {
        Settings::Klyshko(s)
    }
}

fn pair(x: &SpinObservable, y: &SpinObservable) -> ComplexMatrix {
    kron(x.matrix(), y.matrix())
}

fn triple(x: &SpinObservable, y: &SpinObservable, z: &SpinObservable) -> ComplexMatrix {
    kron_all(&[x.matrix(), y.matrix(), z.matrix()])
}

/// `B₂ = AB + AB′ + A′B − A′B′`.
pub fn chsh_operator(s: &ChshSettings) -> ComplexMatrix {
    let terms =
        [pair(&s.a, &s.b), pair(&s.a, &s.b_prime), pair(&s.a_prime, &s.b), pair(&s.a_prime, &s.b_prime).scale_re(-1.0)];
    terms.iter().fold(ComplexMatrix::zeros(4, 4), |acc, t| &acc + t)
}

/// `B₂′ = A′B′ + A′B + AB′ − AB`, i.e. [`chsh_operator`] with primes exchanged.
pub fn chsh_prime_operator(s: &ChshSettings) -> ComplexMatrix {
    let terms =
        [pair(&s.a_prime, &s.b_prime), pair(&s.a_prime, &s.b), pair(&s.a, &s.b_prime), pair(&s.a, &s.b).scale_re(-1.0)];
    terms.iter().fold(ComplexMatrix::zeros(4, 4), |acc, t| &acc + t)
}

/// `‖B₂² − 4 − 4 (A×A′)(B×B′)‖`.
pub fn chsh_square_residual(s: &ChshSettings) -> f64 {
    let b2 = chsh_operator(s);
    let ca = cross_observable(&s.a, &s.a_prime);
    let cb = cross_observable(&s.b, &s.b_prime);
    let rhs = &ComplexMatrix::identity(4).scale_re(4.0) + &kron(&ca.matrix, &cb.matrix).scale_re(4.0);
    operator_norm(&(&(&b2 * &b2) - &rhs))
}

/// `B₃ = A′B′C + A′BC′ + AB′C′ − ABC`.
pub fn klyshko_operator(s: &KlyshkoSettings) -> ComplexMatrix {
    let terms = [
        triple(&s.a_prime, &s.b_prime, &s.c),
        triple(&s.a_prime, &s.b, &s.c_prime),
        triple(&s.a, &s.b_prime, &s.c_prime),
        triple(&s.a, &s.b, &s.c).scale_re(-1.0),
    ];
    terms.iter().fold(ComplexMatrix::zeros(8, 8), |acc, t| &acc + t)
}

/// `‖B₃² − 4 − 4[(A×A′)(B×B′) + (A×A′)(C×C′) + (B×B′)(C×C′)]‖`, each pair
/// product padded with the identity on the absent site.
pub fn klyshko_square_residual(s: &KlyshkoSettings) -> f64 {
    let b3 = klyshko_operator(s);
    let ca = cross_observable(&s.a, &s.a_prime).matrix;
    let cb = cross_observable(&s.b, &s.b_prime).matrix;
    let cc = cross_observable(&s.c, &s.c_prime).matrix;
    let id = id2();
    let pairs = [kron_all(&[&ca, &cb, &id]), kron_all(&[&ca, &id, &cc]), kron_all(&[&id, &cb, &cc])];
    let rhs = pairs.iter().fold(ComplexMatrix::identity(8), |acc, p| &acc + p).scale_re(4.0);
    // 4 + 4Σ = 4(1 + Σ)
    operator_norm(&(&(&b3 * &b3) - &rhs))
}

/// Right-hand side of `B₃ = B₂ ⊗ ½(C′ − C) + B₂′ ⊗ ½(C + C′)`.
pub fn klyshko_decomposition(s: &KlyshkoSettings) -> ComplexMatrix {
    let ab = s.ab();
    let half = Complex64::new(0.5, 0.0);
    let diff = (s.c_prime.matrix() - s.c.matrix()).scale(half);
    let sum = (s.c.matrix() + s.c_prime.matrix()).scale(half);
    &kron(&chsh_operator(&ab), &diff) + &kron(&chsh_prime_operator(&ab), &sum)
}

/// `‖B₃ − [B₂ ⊗ ½(C′ − C) + B₂′ ⊗ ½(C + C′)]‖`.
pub fn klyshko_decomposition_residual(s: &KlyshkoSettings) -> f64 {
    operator_norm(&(&klyshko_operator(s) - &klyshko_decomposition(s)))
}

impl ChshSettings {
    /// `max(|(A, A′)|, |(B, B′)|)`; zero exactly when both local pairs are orthogonal.
    pub fn orthogonality_residual(&self) -> f64 {
        inner(&self.a, &self.a_prime).abs().max(inner(&self.b, &self.b_prime).abs())
    }
}

impl KlyshkoSettings {
    pub fn orthogonality_residual(&self) -> f64 {
        inner(&self.a, &self.a_prime)
            .abs()
            .max(inner(&self.b, &self.b_prime).abs())
            .max(inner(&self.c, &self.c_prime).abs())
    }
}

/// `max_site |‖x×x′‖² + (x,x′)² − 1|` over the local pairs.
pub fn cross_norm_residual(settings: &Settings) -> f64 {
    let obs: Vec<&SpinObservable> = match settings {
        Settings::Chsh(s) => s.observables().to_vec(),
        Settings::Klyshko(s) => s.observables().to_vec(),
    };
    obs.chunks(2)
        .map(|p| (cross_observable(p[0], p[1]).norm().powi(2) + inner(p[0], p[1]).powi(2) - 1.0).abs())
        .fold(0.0, f64::max)
}
