//! Hamiltonians of a line of coupled cells.
//!
//! With tunneling `gamma_i`, bias polarization `P_i`, couplings `E_i` and
//! reference energy `E_0`, the line Hamiltonian is
//!
//! ```text
//! H = -sum_i gamma_i X_i - sum_i E_i Z_i Z_{i+1} + sum_i E_0 P_i Z_i
//! ```
//!
//! Matrices are assembled directly on the computational basis: the diagonal
//! from the `Z` eigenvalues of each basis index and the tunneling terms as
//! single bit flips.

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix};

/// Chains longer than this are rejected (dense `4096 x 4096` operators).
pub const MAX_CELLS: usize = 12;

/// The fixed physical line: couplings on each bond, reference energy, and
/// the unit of action. Energies are usually expressed in units of `E_0`
/// with `hbar = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec {
    couplings: Vec<f64>,
    e0: f64,
    hbar: f64,
}

impl ChainSpec {
    /// A chain of `couplings.len() + 1` cells with `hbar = 1`.
    ///
    /// Couplings may be zero so that a decoupled line can be modeled, but not
    /// negative.
    pub fn new(couplings: Vec<f64>, e0: f64) -> Result<Self> {
        let n = couplings.len() + 1;
        if !(2..=MAX_CELLS).contains(&n) {
            return Err(Error::InvalidChain(format!(
                "cell count {n} outside 2..={MAX_CELLS}"
            )));
        }
        if let Some(bad) = couplings.iter().find(|e| !e.is_finite() || **e < 0.0) {
            return Err(Error::InvalidChain(format!("coupling {bad} must be finite and >= 0")));
        }
        if !(e0.is_finite() && e0 > 0.0) {
            return Err(Error::InvalidChain(format!("reference energy {e0} must be positive")));
        }
        Ok(Self {
            couplings,
            e0,
            hbar: 1.0,
        })
    }

    /// `n` cells with every coupling equal to `coupling` and `E_0 = 1`.
    pub fn uniform(n: usize, coupling: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidChain(format!("cell count {n} outside 2..={MAX_CELLS}")));
        }
        Self::new(vec![coupling; n - 1], 1.0)
    }

    pub fn with_hbar(mut self, hbar: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidChain(format!("hbar {hbar} must be positive")));
        }
        self.hbar = hbar;
        Ok(self)
    }

    /// Same chain with every energy multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.couplings.iter().map(|e| e * factor).collect(), self.e0 * factor)?
            .with_hbar(self.hbar)
    }

    pub fn n(&self) -> usize {
        self.couplings.len() + 1
    }

    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Coupling on bond `(bond, bond + 1)`, 1-based.
    pub fn coupling(&self, bond: usize) -> Result<f64> {
        if bond == 0 || bond >= self.n() {
            return Err(Error::SiteOutOfRange {
                site: bond,
                n: self.n() - 1,
            });
        }
        Ok(self.couplings[bond - 1])
    }

    /// Energy scale attributed to a site: the coupling on the bond to its
    /// right, or to its left for the last site.
    pub fn site_energy(&self, site: usize) -> Result<f64> {
        self.check_site(site)?;
        Ok(self.couplings[site.min(self.n() - 1) - 1])
    }

    pub fn is_uniform(&self) -> bool {
        self.couplings.windows(2).all(|w| w[0] == w[1])
    }

    pub fn check_site(&self, site: usize) -> Result<()> {
        if site == 0 || site > self.n() {
            return Err(Error::SiteOutOfRange { site, n: self.n() });
        }
        Ok(())
    }
}

/// Piecewise-constant control knobs: tunneling `gamma_i >= 0` and bias
/// polarization `P_i` in `[-1, 1]` for every cell.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlParams {
    gammas: Vec<f64>,
    biases: Vec<f64>,
}

impl ControlParams {
    pub fn new(gammas: Vec<f64>, biases: Vec<f64>) -> Result<Self> {
        if gammas.len() != biases.len() {
            return Err(Error::InvalidControl(format!(
                "{} gammas but {} biases",
                gammas.len(),
                biases.len()
            )));
        }
        if let Some(g) = gammas.iter().find(|g| !g.is_finite() || **g < 0.0) {
            return Err(Error::InvalidControl(format!("gamma {g} must be finite and >= 0")));
        }
        if let Some(p) = biases.iter().find(|p| !(-1.0..=1.0).contains(*p)) {
            return Err(Error::InvalidControl(format!("bias {p} outside [-1, 1]")));
        }
        Ok(Self { gammas, biases })
    }

    /// All controls off: the line evolves under its couplings alone.
    pub fn idle(n: usize) -> Self {
        Self {
            gammas: vec![0.0; n],
            biases: vec![0.0; n],
        }
    }

    /// Tunneling `gamma` on each of `sites`, everything else off.
    pub fn tunneling(n: usize, sites: &[usize], gamma: f64) -> Result<Self> {
        let mut gammas = vec![0.0; n];
        for &s in sites {
            if s == 0 || s > n {
                return Err(Error::SiteOutOfRange { site: s, n });
            }
            gammas[s - 1] = gamma;
        }
        Self::new(gammas, vec![0.0; n])
    }

    /// A single bias on `site`, everything else off.
    pub fn bias(n: usize, site: usize, polarization: f64) -> Result<Self> {
        if site == 0 || site > n {
            return Err(Error::SiteOutOfRange { site, n });
        }
        let mut biases = vec![0.0; n];
        biases[site - 1] = polarization;
        Self::new(vec![0.0; n], biases)
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn is_idle(&self) -> bool {
        self.gammas.iter().all(|g| *g == 0.0)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::InvalidControl(format!(
                "controls cover {} cells, chain has {n}",
                self.len()
            )));
        }
        Ok(())
    }
}

/// Residual-tunneling model for a finite-amplitude pulse on one cell.
///
/// The pulsed cell `target` sees `gamma_rel * E_target`; every other cell keeps
/// a residual `epsilon * E_i`; couplings stay on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImperfectionModel {
    gamma_rel: f64,
    epsilon: f64,
    target: usize,
}

impl ImperfectionModel {
    pub fn new(gamma_rel: f64, epsilon: f64, target: usize) -> Result<Self> {
        if !(gamma_rel.is_finite() && gamma_rel > 0.0) {
            return Err(Error::InvalidModel(format!("gamma {gamma_rel} must be positive")));
        }
        if !(epsilon.is_finite() && epsilon >= 0.0 && epsilon < gamma_rel) {
            return Err(Error::InvalidModel(format!(
                "epsilon {epsilon} must satisfy 0 <= epsilon < gamma"
            )));
        }
        if target == 0 {
            return Err(Error::InvalidModel("target site is 1-based".into()));
        }
        Ok(Self {
            gamma_rel,
            epsilon,
            target,
        })
    }

    pub fn gamma_rel(&self) -> f64 {
        self.gamma_rel
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Energy scale of the pulsed cell; falls back to `E_0` on a fully
    /// decoupled line where the site energy is zero.
    pub fn pulse_scale(&self, chain: &ChainSpec) -> Result<f64> {
        let e = chain.site_energy(self.target)?;
        Ok(if e > 0.0 { e } else { chain.e0() })
    }

    /// Tunneling amplitude on the pulsed cell, `gamma * E_j`.
    pub fn pulse_amplitude(&self, chain: &ChainSpec) -> Result<f64> {
        Ok(self.gamma_rel * self.pulse_scale(chain)?)
    }

    /// Duration of a pi rotation at the pulse amplitude, `pi hbar / (2 gamma E_j)`.
    pub fn pulse_duration(&self, chain: &ChainSpec) -> Result<f64> {
        Ok(std::f64::consts::PI * chain.hbar() / (2.0 * self.pulse_amplitude(chain)?))
    }
}

fn z_eigenvalue(basis: usize, site: usize, n: usize) -> f64 {
    if (basis >> (n - site)) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `-sum x_fields[i] X_i - sum E_i Z_i Z_{i+1} + sum E_0 biases[i] Z_i`.
fn assemble(chain: &ChainSpec, x_fields: &[f64], biases: &[f64]) -> ComplexMatrix {
    let n = chain.n();
    let dim = chain.dim();
    let mut h = ComplexMatrix::zeros(dim);
    for b in 0..dim {
        let mut diag = 0.0;
        for (k, e) in chain.couplings().iter().enumerate() {
            diag -= e * z_eigenvalue(b, k + 1, n) * z_eigenvalue(b, k + 2, n);
        }
        for (k, p) in biases.iter().enumerate() {
            diag += chain.e0() * p * z_eigenvalue(b, k + 1, n);
        }
        h.set(b, b, Complex64::new(diag, 0.0));
        for (k, g) in x_fields.iter().enumerate() {
            if *g != 0.0 {
                let flipped = b ^ (1 << (n - 1 - k));
                h.add_at(b, flipped, Complex64::new(-g, 0.0));
            }
        }
    }
    h
}

/// The full line Hamiltonian for one control setting.
pub fn build_hamiltonian(chain: &ChainSpec, ctrl: &ControlParams) -> Result<ComplexMatrix> {
    ctrl.check_len(chain.n())?;
    Ok(assemble(chain, ctrl.gammas(), ctrl.biases()))
}

/// Hamiltonian during a finite-amplitude pulse on `model.target()`, with zero biases.
pub fn build_imperfect_pulse_hamiltonian(
    chain: &ChainSpec,
    model: &ImperfectionModel,
) -> Result<ComplexMatrix> {
    chain.check_site(model.target())?;
    let mut fields = Vec::with_capacity(chain.n());
    for site in 1..=chain.n() {
        fields.push(if site == model.target() {
            model.pulse_amplitude(chain)?
        } else {
            model.epsilon() * chain.site_energy(site)?
        });
    }
    Ok(assemble(chain, &fields, &vec![0.0; chain.n()]))
}

/// The idealized pulse generator `-gamma_max X_site` with every other term off.
pub fn ideal_pulse_generator(chain: &ChainSpec, site: usize, gamma_max: f64) -> Result<ComplexMatrix> {
    chain.check_site(site)?;
    let n = chain.n();
    let mut h = ComplexMatrix::zeros(chain.dim());
    for b in 0..chain.dim() {
        h.set(b, b ^ (1 << (n - site)), Complex64::new(-gamma_max, 0.0));
    }
    Ok(h)
}

/// The coupling part `-sum E_i Z_i Z_{i+1}` alone.
pub fn coupling_hamiltonian(chain: &ChainSpec) -> ComplexMatrix {
    assemble(chain, &[], &[])
}
