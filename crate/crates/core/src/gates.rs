//! Canonical gate matrices and the rotation-factor decompositions of CNOT.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::error::{Error, Result};
use crate::linalg::{embed_block, expm_skew_hermitian, Complex64, ComplexMatrix, PauliAxis, Unitary};

/// Which cell of an adjacent (control, target) pair a factor acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Control,
    Target,
}

/// Generator `G` of a factor `exp(i angle G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Single(PauliAxis, Cell),
    /// `Z_control Z_target`
    ZZ,
}

/// `exp(i angle G)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationFactor {
    pub generator: Generator,
    pub angle: f64,
}

const fn z(cell: Cell, angle: f64) -> RotationFactor {
    RotationFactor {
        generator: Generator::Single(PauliAxis::Z, cell),
        angle,
    }
}

const fn x(cell: Cell, angle: f64) -> RotationFactor {
    RotationFactor {
        generator: Generator::Single(PauliAxis::X, cell),
        angle,
    }
}

const fn y(cell: Cell, angle: f64) -> RotationFactor {
    RotationFactor {
        generator: Generator::Single(PauliAxis::Y, cell),
        angle,
    }
}

const fn zz(angle: f64) -> RotationFactor {
    RotationFactor {
        generator: Generator::ZZ,
        angle,
    }
}

const FIFTEEN_PI_4: f64 = 15.0 * FRAC_PI_4;

/// CNOT as eleven x/z rotations, in matrix-product order (the last entry
/// acts first). Equal to CNOT up to a global phase.
///
/// Each outer group of four is a `-pi/2` rotation about y on the target;
/// the middle three form a controlled-Z.
pub fn cnot_factors() -> [RotationFactor; 11] {
    use Cell::*;
    [
        z(Target, -FRAC_PI_2),
        z(Target, -FRAC_PI_4),
        x(Target, FRAC_PI_4),
        z(Target, -FIFTEEN_PI_4),
        zz(FRAC_PI_4),
        z(Control, -FRAC_PI_4),
        z(Target, -FRAC_PI_4),
        z(Target, -FRAC_PI_2),
        z(Target, -FRAC_PI_4),
        x(Target, FRAC_PI_4),
        z(Target, -FIFTEEN_PI_4),
    ]
}

/// CNOT as y rotations around a controlled phase, in matrix-product order.
/// Only used as an analytic reference; schedules never contain y rotations.
pub fn y_decomposition_factors() -> [RotationFactor; 5] {
    use Cell::*;
    [
        y(Target, FRAC_PI_4),
        z(Control, FRAC_PI_4),
        z(Target, -FRAC_PI_4),
        zz(FRAC_PI_4),
        y(Target, -FRAC_PI_4),
    ]
}

impl RotationFactor {
    /// The factor as an operator on an `n`-cell line with the pair at
    /// `(control, control + 1)`.
    pub fn unitary(&self, n: usize, control: usize) -> Result<Unitary> {
        let local = match self.generator {
            Generator::Single(axis, cell) => {
                let rot = axis.rotation(self.angle);
                let id = ComplexMatrix::identity(2);
                match cell {
                    Cell::Control => crate::linalg::kron(&rot, &id)?,
                    Cell::Target => crate::linalg::kron(&id, &rot)?,
                }
            }
            Generator::ZZ => {
                let d = [1.0, -1.0, -1.0, 1.0].map(|s| Complex64::from_polar(1.0, self.angle * s));
                ComplexMatrix::from_diagonal(&d)
            }
        };
        if control == 0 || control >= n {
            return Err(Error::SiteOutOfRange { site: control, n: n - 1 });
        }
        Unitary::new(embed_block(&local, control, n)?)
    }
}

/// Product of factors in the order given (last factor applied first).
pub fn factor_product(factors: &[RotationFactor], n: usize, control: usize) -> Result<Unitary> {
    let mut acc = Unitary::identity(1 << n);
    for f in factors {
        acc = acc.compose(&f.unitary(n, control)?)?;
    }
    Ok(acc)
}

/// CNOT with the control on the most significant of two cells.
pub fn cnot_matrix() -> Unitary {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut m = ComplexMatrix::identity(4);
    m.set(2, 2, zero);
    m.set(3, 3, zero);
    m.set(2, 3, one);
    m.set(3, 2, one);
    Unitary::new(m).expect("permutation matrix")
}

/// CNOT on cells `(control, control + 1)` of an `n`-cell line, identity elsewhere.
pub fn embedded_cnot(n: usize, control: usize) -> Result<Unitary> {
    if control == 0 || control >= n {
        return Err(Error::SiteOutOfRange { site: control, n: n - 1 });
    }
    Unitary::new(embed_block(cnot_matrix().matrix(), control, n)?)
}

/// `exp(i angle sigma_axis)` on a single isolated cell.
pub fn single_rotation(axis: PauliAxis, angle: f64) -> Unitary {
    Unitary::new(axis.rotation(angle)).expect("rotation is unitary")
}

/// `exp(i angle Z Z)` on a pair.
pub fn zz_rotation(angle: f64) -> Unitary {
    let zz = crate::linalg::kron(&PauliAxis::Z.matrix(), &PauliAxis::Z.matrix()).expect("4x4");
    expm_skew_hermitian(&zz, -angle).expect("Hermitian")
}
