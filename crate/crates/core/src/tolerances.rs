//! Acceptance thresholds shared by the verification report and the tests.

/// Closed form vs direct sum and vs inverse DFT, per coefficient.
pub const COEFFICIENT_ROUTES: f64 = 1e-12;
/// `|c_k| = 1/√N` on the direct route.
pub const MAGNITUDE_LAW: f64 = 1e-10;
/// Forward DFT reproduces the target phases.
pub const FORWARD_DFT: f64 = 1e-10;
/// CLI `coeffs` exits nonzero above this discrepancy.
pub const COEFFS_COMMAND: f64 = 1e-10;

/// `a|α⟩_φ = αU|α⟩_φ`, truncation row excluded.
pub const EIGEN_RESIDUAL: f64 = 1e-9;
/// Fock series vs coherent-state superposition.
pub const SERIES_VS_SUPERPOSITION: f64 = 1e-10;
/// `a²|α⟩_P = -α²|α⟩_P`.
pub const A_SQUARED: f64 = 1e-10;
/// `(U⁻¹a)^N = μ_N a^N`, relative.
pub const AN_IDENTITY: f64 = 1e-12;
/// `G⁻¹|α⟩ = |α⟩_φ` and `G⁻¹aG = U⁻¹a`.
pub const KERR_IDENTITY: f64 = 1e-12;
/// `e^{-itL}|α⟩_φ = e^{-it/2}|e^{-it}α⟩_φ`.
pub const TIME_EVOLUTION: f64 = 1e-10;
/// Evolution fidelity deviation from 1.
pub const EVOLUTION_FIDELITY: f64 = 1e-9;
/// `[a, a†] = 1` on the untruncated rows; `(√n)²` rounds at the `n·ε` level.
pub const COMMUTATOR: f64 = 1e-12;

/// Mehler quadrature reproduces `e^{-iφn}ψ_n`.
pub const KERNEL_SPECTRAL: f64 = 1e-6;
/// Integro-differential residual through the quadrature.
pub const GENEQ_QUADRATURE: f64 = 1e-5;
/// Parity functional equation, no quadrature.
pub const GENEQ_PARITY: f64 = 1e-10;
/// Parity cat closed form vs superposition.
pub const PSI_CAT_P: f64 = 1e-12;
/// Compass closed form vs superposition, up to a global phase.
pub const PSI_CAT_F: f64 = 1e-10;
/// Closed-form wavefunction vs Hermite series at `D = 64`.
pub const HERMITE_SERIES: f64 = 1e-9;
/// Trapezoid norm of the wavefunction.
pub const NORMALIZATION: f64 = 1e-6;
