//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use qsnn_core::neuron::{DriveMode, FinalVariant};
use qsnn_core::scalar::C;
use qsnn_core::{NeuronParams, StateVector};

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct Mat {
    pub dim: usize,
    pub e: Vec<C<f64>>,
}

const Z: C<f64> = C { re: 0.0, im: 0.0 };
const ONE: C<f64> = C { re: 1.0, im: 0.0 };
const I: C<f64> = C { re: 0.0, im: 1.0 };

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, e: vec![Z; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.e[i * dim + i] = ONE;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> C<f64> {
        self.e[r * self.dim + c]
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        let dim = self.dim * o.dim;
        let mut m = Mat::zeros(dim);
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                for r2 in 0..o.dim {
                    for c2 in 0..o.dim {
                        m.e[(r1 * o.dim + r2) * dim + c1 * o.dim + c2] = self.get(r1, c1) * o.get(r2, c2);
                    }
                }
            }
        }
        m
    }

    pub fn axpy(&mut self, a: C<f64>, x: &Mat) {
        for (y, v) in self.e.iter_mut().zip(&x.e) {
            *y += a * v;
        }
    }

    pub fn mul_vec(&self, v: &[C<f64>]) -> Vec<C<f64>> {
        (0..self.dim).map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).sum()).collect()
    }
}

/// 2×2 matrices in the |↓⟩ = |0⟩, |↑⟩ = |1⟩ basis, σz = diag(−1, +1).
pub fn single(name: &str) -> Mat {
    let e = match name {
        "i" => [ONE, Z, Z, ONE],
        "x" => [Z, ONE, ONE, Z],
        "y" => [Z, I, -I, Z],
        "z" => [-ONE, Z, Z, ONE],
        // raising |↓⟩ → |↑⟩
        "+" => [Z, Z, ONE, Z],
        "-" => [Z, ONE, Z, Z],
        _ => panic!("unknown single-qubit operator {name}"),
    };
    Mat { dim: 2, e: e.to_vec() }
}

/// Kronecker chain, first factor on qubit 0 (most significant).
pub fn chain(names: &[&str]) -> Mat {
    names.iter().skip(1).fold(single(names[0]), |acc, n| acc.kron(&single(n)))
}

pub type Drive = (Mat, Box<dyn Fn(f64) -> C<f64> + Send + Sync>);

/// H(t) = S + Σ_k f_k(t)·D_k on three qubits (inputs 0, 1; output 2).
pub struct OracleHamiltonian {
    pub static_part: Mat,
    pub drives: Vec<Drive>,
    pub tau: f64,
}

impl OracleHamiltonian {
    pub fn at(&self, t: f64) -> Mat {
        let mut h = self.static_part.clone();
        for (d, f) in &self.drives {
            h.axpy(f(t), d);
        }
        h
    }
}

fn exchange(j: f64, gamma: f64) -> Mat {
    let mut h = Mat::zeros(8);
    h.axpy(C::new(j / 2.0, 0.0), &chain(&["x", "x", "i"]));
    h.axpy(C::new(j / 2.0, 0.0), &chain(&["y", "y", "i"]));
    h.axpy(C::new(gamma * j / 2.0, 0.0), &chain(&["z", "z", "i"]));
    h
}

/// Written directly from the neuron model definitions.
pub fn oracle_hamiltonian(params: &NeuronParams) -> OracleHamiltonian {
    match *params {
        NeuronParams::Excitation(p) => {
            let a = p.amplitude;
            let beta = p.k * a;
            let j = p.j_sign as f64 * (p.l * p.l - p.k * p.k).sqrt() * a;
            let mut s = exchange(j, p.gamma);
            s.axpy(C::new(beta, 0.0), &chain(&["i", "z", "z"]));
            OracleHamiltonian {
                static_part: s,
                drives: vec![(chain(&["i", "i", "x"]), Box::new(move |t: f64| C::new(a * (2.0 * beta * t).cos(), 0.0)))],
                tau: std::f64::consts::PI / a,
            }
        }
        NeuronParams::Phase(p) => {
            let b = p.amplitude;
            let j = p.exchange.factor() * p.n * b;
            let delta = 2.0 * p.m * b;
            let mut s = exchange(j, p.gamma);
            s.axpy(C::new(delta, 0.0), &chain(&["i", "x", "x"]));
            s.axpy(C::new(b, 0.0), &chain(&["i", "i", "z"]));
            OracleHamiltonian { static_part: s, drives: Vec::new(), tau: std::f64::consts::PI / (2.0 * b) }
        }
        NeuronParams::Final(p) => {
            let a = p.amplitude;
            let sol = qsnn_core::params::solve_final_beta(p.gamma, p.l, p.s, p.parity_k, a).unwrap();
            let beta = if p.variant == FinalVariant::DetectDownDown { -sol.beta } else { sol.beta };
            let mut s = exchange(sol.j, p.gamma);
            s.axpy(C::new(beta, 0.0), &chain(&["i", "z", "z"]));
            let w = 2.0 * beta;
            let drives: Vec<Drive> = match p.drive_mode {
                DriveMode::Rotating => {
                    // (A/2)(e^{∓iωt}σ⁺ + e^{±iωt}σ⁻)
                    let sign = if p.variant == FinalVariant::DetectUpUp { -1.0 } else { 1.0 };
                    vec![
                        (chain(&["i", "i", "+"]), Box::new(move |t: f64| C::from_polar(a / 2.0, sign * w * t))),
                        (chain(&["i", "i", "-"]), Box::new(move |t: f64| C::from_polar(a / 2.0, -sign * w * t))),
                    ]
                }
                DriveMode::LocalField => {
                    let omega = p.omega;
                    s.axpy(C::new(omega / 2.0, 0.0), &chain(&["i", "i", "z"]));
                    let nu = if p.variant == FinalVariant::DetectUpUp { omega + w } else { omega - w };
                    vec![(chain(&["i", "i", "x"]), Box::new(move |t: f64| C::new(a * (nu * t).cos(), 0.0)))]
                }
            };
            OracleHamiltonian { static_part: s, drives, tau: std::f64::consts::PI / a }
        }
    }
}

/// exp(−i·dt·H)v by its Taylor series.
fn taylor_step(h: &Mat, v: &[C<f64>], dt: f64) -> Vec<C<f64>> {
    let mut out = v.to_vec();
    let mut term = v.to_vec();
    for k in 1..60 {
        let hv = h.mul_vec(&term);
        let f = C::new(0.0, -dt / k as f64);
        let mut size = 0.0;
        for (t, x) in term.iter_mut().zip(&hv) {
            *t = f * x;
            size += t.norm_sqr();
        }
        for (o, t) in out.iter_mut().zip(&term) {
            *o += t;
        }
        if size < 1e-36 {
            break;
        }
    }
    out
}

/// Midpoint piecewise-constant exponentials over [0, t_end].
pub fn midpoint_propagate(h: &OracleHamiltonian, v: &[C<f64>], t_end: f64, steps: usize) -> Vec<C<f64>> {
    let dt = t_end / steps as f64;
    let mut y = v.to_vec();
    for s in 0..steps {
        y = taylor_step(&h.at((s as f64 + 0.5) * dt), &y, dt);
    }
    y
}

/// The midpoint scheme is symmetric, so its error expands in even powers of the step;
/// one Richardson stage removes the dt² term.
pub fn oracle_propagate(h: &OracleHamiltonian, v: &[C<f64>], t_end: f64, steps: usize) -> Vec<C<f64>> {
    let coarse = midpoint_propagate(h, v, t_end, steps);
    let fine = midpoint_propagate(h, v, t_end, 2 * steps);
    fine.iter().zip(&coarse).map(|(f, c)| (4.0 * f - c) / 3.0).collect()
}

/// Steps of length ≈ π/10⁵ across the neuron's evolution time.
pub fn oracle_steps(tau: f64) -> usize {
    (tau / (std::f64::consts::PI / 1e5)).round() as usize
}

pub fn distance(a: &[C<f64>], b: &[C<f64>]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

pub fn random_state(n: usize, seed: u64) -> StateVector {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    StateVector::random(n, &mut rng).unwrap()
}
