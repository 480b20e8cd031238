use super::{DriveMode, ExcNeuronParams, FinalLayerParams, FinalVariant, NeuronParams, PhaseNeuronParams};
use crate::quantum::{Axis, DriveForm, DriveTerm, TimeDependentHamiltonian};
use crate::scalar::Real;
use crate::Result;

const IN_A: usize = 0;
const IN_B: usize = 1;
const OUT: usize = 2;

/// (J/2)(σ₁^xσ₂^x + σ₁^yσ₂^y + γσ₁^zσ₂^z) + βσ₂^zσ₃^z + A·cos(2βt)σ₃^x on `targets`.
pub fn build_exc_hamiltonian<T: Real>(
    params: &ExcNeuronParams<T>,
    num_qubits: usize,
    targets: [usize; 3],
) -> Result<TimeDependentHamiltonian<T>> {
    params.validate()?;
    let mut h = TimeDependentHamiltonian::new(3);
    exchange(&mut h, params.j(), params.gamma)?;
    h.add_static(params.beta(), &[(IN_B, Axis::Z), (OUT, Axis::Z)])?;
    h.add_drive(DriveTerm {
        amplitude: params.amplitude,
        angular_frequency: params.drive_frequency(),
        target: OUT,
        form: DriveForm::CosineX,
    })?;
    h.remap(&targets, num_qubits)
}

/// (J/2)(σ₁^xσ₂^x + σ₁^yσ₂^y + γσ₁^zσ₂^z) + δσ₂^xσ₃^x + Bσ₃^z on `targets`.
pub fn build_phase_hamiltonian<T: Real>(
    params: &PhaseNeuronParams<T>,
    num_qubits: usize,
    targets: [usize; 3],
) -> Result<TimeDependentHamiltonian<T>> {
    params.validate()?;
    let mut h = TimeDependentHamiltonian::new(3);
    exchange(&mut h, params.j(), params.gamma)?;
    h.add_static(params.delta(), &[(IN_B, Axis::X), (OUT, Axis::X)])?;
    h.add_drive(DriveTerm {
        amplitude: params.amplitude,
        angular_frequency: T::zero(),
        target: OUT,
        form: DriveForm::StaticZ,
    })?;
    h.remap(&targets, num_qubits)
}

/// Heisenberg exchange plus βσ₂^zσ₃^z with either a single co-rotating drive at 2β or a
/// local field (Ω/2)σ₃^z with a cosine drive at Ω ± 2β.
pub fn build_final_hamiltonian<T: Real>(
    params: &FinalLayerParams<T>,
    num_qubits: usize,
    targets: [usize; 3],
) -> Result<TimeDependentHamiltonian<T>> {
    params.validate()?;
    let beta = params.beta()?;
    let mut h = TimeDependentHamiltonian::new(3);
    exchange(&mut h, params.j()?, params.gamma)?;
    h.add_static(beta, &[(IN_B, Axis::Z), (OUT, Axis::Z)])?;
    let two_beta = T::of(2.0) * beta;
    match params.drive_mode {
        DriveMode::Rotating => {
            let form = match params.variant {
                FinalVariant::DetectUpUp => DriveForm::RotatingPlus,
                FinalVariant::DetectDownDown => DriveForm::RotatingMinus,
            };
            h.add_drive(DriveTerm {
                amplitude: params.amplitude,
                angular_frequency: two_beta,
                target: OUT,
                form,
            })?;
        }
        DriveMode::LocalField => {
            let omega = params.omega;
            h.add_drive(DriveTerm {
                amplitude: omega * T::of(0.5),
                angular_frequency: T::zero(),
                target: OUT,
                form: DriveForm::StaticZ,
            })?;
            let w = match params.variant {
                FinalVariant::DetectUpUp => omega + two_beta,
                FinalVariant::DetectDownDown => omega - two_beta,
            };
            h.add_drive(DriveTerm {
                amplitude: params.amplitude,
                angular_frequency: w,
                target: OUT,
                form: DriveForm::CosineX,
            })?;
        }
    }
    h.remap(&targets, num_qubits)
}

pub fn neuron_hamiltonian<T: Real>(
    params: &NeuronParams<T>,
    num_qubits: usize,
    targets: [usize; 3],
) -> Result<TimeDependentHamiltonian<T>> {
    match params {
        NeuronParams::Excitation(p) => build_exc_hamiltonian(p, num_qubits, targets),
        NeuronParams::Phase(p) => build_phase_hamiltonian(p, num_qubits, targets),
        NeuronParams::Final(p) => build_final_hamiltonian(p, num_qubits, targets),
    }
}

fn exchange<T: Real>(h: &mut TimeDependentHamiltonian<T>, j: T, gamma: T) -> Result<()> {
    let half = j * T::of(0.5);
    h.add_static(half, &[(IN_A, Axis::X), (IN_B, Axis::X)])?;
    h.add_static(half, &[(IN_A, Axis::Y), (IN_B, Axis::Y)])?;
    h.add_static(half * gamma, &[(IN_A, Axis::Z), (IN_B, Axis::Z)])?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::DenseOperator;
    use crate::scalar::cr;
    use crate::ParamError;

    fn pauli3(a: Axis, qa: usize, b: Axis, qb: usize) -> DenseOperator<f64> {
        let mut ops = [DenseOperator::identity(2), DenseOperator::identity(2), DenseOperator::identity(2)];
        ops[qa] = DenseOperator::pauli(a);
        ops[qb] = DenseOperator::pauli(b);
        ops[0].kron(&ops[1]).kron(&ops[2])
    }

    #[test]
    fn exc_static_part_matches_kronecker_sum() {
        let p = ExcNeuronParams::new(8.0, 17.0);
        let h = build_exc_hamiltonian(&p, 3, [0, 1, 2]).unwrap();
        let expected = pauli3(Axis::X, 0, Axis::X, 1)
            .add(&pauli3(Axis::Y, 0, Axis::Y, 1))
            .unwrap()
            .add(&pauli3(Axis::Z, 0, Axis::Z, 1))
            .unwrap()
            .scale(cr(7.5))
            .add(&pauli3(Axis::Z, 1, Axis::Z, 2).scale(cr(8.0)))
            .unwrap();
        assert!(h.static_matrix().max_abs_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn hamiltonians_are_hermitian_over_time() {
        let hs = [
            build_exc_hamiltonian(&ExcNeuronParams::new(8.0, 17.0), 4, [3, 0, 2]).unwrap(),
            build_phase_hamiltonian(&PhaseNeuronParams::new(3.0, 82.0), 3, [0, 1, 2]).unwrap(),
            build_final_hamiltonian(
                &FinalLayerParams::new(FinalVariant::DetectDownDown, 17, 5, 0).with_local_field(50.0),
                3,
                [2, 1, 0],
            )
            .unwrap(),
        ];
        for h in &hs {
            for i in 0..100 {
                assert!(h.hermiticity_error(0.0314 * i as f64) < 1e-12);
            }
        }
    }

    #[test]
    fn invalid_params_are_reported() {
        let err = build_exc_hamiltonian(&ExcNeuronParams::new(2.0, 3.0), 3, [0, 1, 2]).unwrap_err();
        assert!(matches!(err, crate::Error::InvalidParams(ParamError::NonPythagorean { .. })));
    }
}
