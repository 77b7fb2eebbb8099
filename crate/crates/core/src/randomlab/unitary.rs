use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::rng::run_blocks;
use crate::error::{invalid, Result};
use crate::measures::{EmpiricalMoments, MixedAccumulator};

/// Haar-distributed unitary matrix: QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn sample_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * s, im * s)
    });
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        if norm > 0.0 {
            let phase = d / norm;
            q.column_mut(j).scale_mut_complex(phase);
        }
    }
    q
}

trait ScaleComplex {
    fn scale_mut_complex(&mut self, c: Complex64);
}

impl<S> ScaleComplex for nalgebra::Matrix<Complex64, nalgebra::Dyn, nalgebra::U1, S>
where
    S: nalgebra::StorageMut<Complex64, nalgebra::Dyn, nalgebra::U1>,
{
    fn scale_mut_complex(&mut self, c: Complex64) {
        for v in self.iter_mut() {
            *v *= c;
        }
    }
}

/// Mixed moments `E[Tr(U)^a conj(Tr(U))^b]`, `a + b <= max_order`, over
/// `trials` Haar unitaries of size `n`.
pub fn trace_experiment(n: usize, trials: u64, max_order: usize, seed: u64) -> Result<EmpiricalMoments> {
    if n == 0 {
        return invalid("unitary-trace needs n >= 1");
    }
    if trials == 0 {
        return invalid("unitary-trace needs at least one trial");
    }
    run_blocks(
        seed,
        trials,
        || MixedAccumulator::new(max_order),
        |rng, acc| {
            acc.push(sample_unitary(n, rng).trace());
            Ok(())
        },
        |a, b| a.merge(&b),
    )
    .map(|acc| acc.finish())
}
