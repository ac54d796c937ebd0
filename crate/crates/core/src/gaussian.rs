//! Zero-mean Gaussian states as quadrature covariance matrices, plus the
//! symplectic operations the link pipeline composes: thermal preparation,
//! phase-aligned squeezing, pure loss, and a 50:50 beam splitter.
//!
//! Quadrature convention: x = (a + a†)/√2, p = (a − a†)/(i√2), so the vacuum
//! has variance 1/2 per quadrature. Two-mode matrices are ordered
//! (x₁, p₁, x₂, p₂).

use nalgebra::Matrix4;

use crate::error::{Error, Result};

/// Vacuum variance per quadrature.
pub const VACUUM_VARIANCE: f64 = 0.5;

/// Absolute tolerance on symplectic eigenvalues when deciding physicality;
/// exactly-pure states sit on the boundary and must pass.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Relative tolerance for the symmetry check on two-mode matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Mean photon number of a thermal preparation.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ThermalOccupation(f64);

impl ThermalOccupation {
    pub fn new(nbar: f64) -> Result<Self> {
        if !nbar.is_finite() || nbar < 0.0 {
            return Err(Error::Domain(format!(
                "thermal occupation must be finite and non-negative, got {nbar}"
            )));
        }
        Ok(Self(nbar))
    }

    pub fn vacuum() -> Self {
        Self(0.0)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// How a squeezing magnitude maps to a quadrature variance scaling factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqueezeConvention {
    /// s = e^(−2r): squeeze operator with the conventional 1/2 factor.
    Standard,
    /// s = e^(−4r): the convention under which r = 0.576 corresponds to 10 dB.
    Paper,
    /// s = 10^(−dB/10).
    Decibel,
    /// The variance factor itself, s ∈ (0, 1].
    VarianceFactor,
}

impl SqueezeConvention {
    pub fn name(self) -> &'static str {
        match self {
            Self::Standard => "standard",
            Self::Paper => "paper",
            Self::Decibel => "db",
            Self::VarianceFactor => "factor",
        }
    }
}

/// A squeezing magnitude together with the convention that resolves it to a
/// variance factor. The resolved factor always satisfies 0 < s ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeSpec {
    value: f64,
    convention: SqueezeConvention,
}

impl SqueezeSpec {
    pub fn new(value: f64, convention: SqueezeConvention) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::Domain(format!("squeeze value must be finite, got {value}")));
        }
        match convention {
            SqueezeConvention::VarianceFactor => {
                if !(value > 0.0 && value <= 1.0) {
                    return Err(Error::Domain(format!(
                        "variance factor must lie in (0, 1], got {value}"
                    )));
                }
            }
            _ => {
                if value < 0.0 {
                    return Err(Error::Domain(format!(
                        "squeeze magnitude must be non-negative, got {value}"
                    )));
                }
            }
        }
        let spec = Self { value, convention };
        if spec.factor() <= 0.0 {
            return Err(Error::Domain(format!(
                "squeeze magnitude {value} underflows to a zero variance factor"
            )));
        }
        Ok(spec)
    }

    pub fn standard(r: f64) -> Result<Self> {
        Self::new(r, SqueezeConvention::Standard)
    }

    pub fn paper(r: f64) -> Result<Self> {
        Self::new(r, SqueezeConvention::Paper)
    }

    pub fn decibel(db: f64) -> Result<Self> {
        Self::new(db, SqueezeConvention::Decibel)
    }

    pub fn variance_factor(s: f64) -> Result<Self> {
        Self::new(s, SqueezeConvention::VarianceFactor)
    }

    /// The resolved variance scaling factor s: the squeezed quadrature is
    /// multiplied by s, the anti-squeezed one by 1/s.
    pub fn factor(&self) -> f64 {
        match self.convention {
            SqueezeConvention::Standard => (-2.0 * self.value).exp(),
            SqueezeConvention::Paper => (-4.0 * self.value).exp(),
            SqueezeConvention::Decibel => 10f64.powf(-self.value / 10.0),
            SqueezeConvention::VarianceFactor => self.value,
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn convention(&self) -> SqueezeConvention {
        self.convention
    }
}

/// Single-mode covariance matrix. Construction enforces positivity of the
/// diagonal and the physicality bound ν ≥ 1/2 − tol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMat1 {
    vxx: f64,
    vpp: f64,
    vxp: f64,
}

impl CovMat1 {
    pub fn new(vxx: f64, vpp: f64, vxp: f64) -> Result<Self> {
        if !(vxx.is_finite() && vpp.is_finite() && vxp.is_finite()) {
            return Err(Error::Domain("covariance entries must be finite".into()));
        }
        if vxx <= 0.0 || vpp <= 0.0 {
            return Err(Error::Domain(format!(
                "quadrature variances must be positive, got vxx={vxx}, vpp={vpp}"
            )));
        }
        let cm = Self { vxx, vpp, vxp };
        if !cm.is_physical() {
            return Err(Error::Unphysical(format!(
                "symplectic eigenvalue {} below vacuum bound 1/2",
                cm.symplectic_eigenvalue()
            )));
        }
        Ok(cm)
    }

    pub fn vacuum() -> Self {
        Self { vxx: VACUUM_VARIANCE, vpp: VACUUM_VARIANCE, vxp: 0.0 }
    }

    /// Thermal state of the given occupation: V = (n̄ + 1/2)·I.
    pub fn thermal(nbar: ThermalOccupation) -> Self {
        let v = nbar.get() + VACUUM_VARIANCE;
        Self { vxx: v, vpp: v, vxp: 0.0 }
    }

    pub fn vxx(&self) -> f64 {
        self.vxx
    }

    pub fn vpp(&self) -> f64 {
        self.vpp
    }

    pub fn vxp(&self) -> f64 {
        self.vxp
    }

    pub fn det(&self) -> f64 {
        self.vxx * self.vpp - self.vxp * self.vxp
    }

    /// Modulus of the eigenvalue pair of iΩV; the state is physical iff it
    /// is at least 1/2.
    pub fn symplectic_eigenvalue(&self) -> f64 {
        self.det().sqrt()
    }

    pub fn is_physical(&self) -> bool {
        self.symplectic_eigenvalue() >= VACUUM_VARIANCE - PHYSICALITY_TOL
    }

    /// Phase-aligned squeezing: vxx → vxx·s, vpp → vpp/s. The determinant is
    /// preserved. States with a nonzero x–p covariance are rejected; the
    /// pipeline never rotates phase and a squeezing angle is out of scope.
    pub fn apply_squeeze(&self, spec: &SqueezeSpec) -> Result<Self> {
        if self.vxp != 0.0 {
            return Err(Error::UnsupportedConfig(format!(
                "phase-aligned squeezing requires vxp = 0, got {}",
                self.vxp
            )));
        }
        let s = spec.factor();
        Self::new(self.vxx * s, self.vpp / s, 0.0)
    }

    /// Pure-loss channel: V → η·V + (1−η)·V_vac. A convex mix of physical
    /// states, so the output is physical for any η ∈ [0, 1].
    pub fn apply_loss(&self, eta: f64) -> Result<Self> {
        if !eta.is_finite() || !(0.0..=1.0).contains(&eta) {
            return Err(Error::Domain(format!("transmittance must lie in [0, 1], got {eta}")));
        }
        let vac = (1.0 - eta) * VACUUM_VARIANCE;
        Self::new(eta * self.vxx + vac, eta * self.vpp + vac, eta * self.vxp)
    }
}

/// Two-mode covariance matrix over (x₁, p₁, x₂, p₂). Construction enforces
/// symmetry and the physicality bound on both symplectic eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct CovMat2 {
    m: Matrix4<f64>,
}

impl CovMat2 {
    pub fn from_matrix(m: Matrix4<f64>) -> Result<Self> {
        if m.iter().any(|e| !e.is_finite()) {
            return Err(Error::Domain("covariance entries must be finite".into()));
        }
        let scale = m.iter().fold(1.0f64, |acc, e| acc.max(e.abs()));
        for i in 0..4 {
            for j in (i + 1)..4 {
                if (m[(i, j)] - m[(j, i)]).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::Domain(format!(
                        "matrix is not symmetric at ({i}, {j}): {} vs {}",
                        m[(i, j)],
                        m[(j, i)]
                    )));
                }
            }
        }
        // symmetrize exactly so downstream factorizations see a clean input
        let sym = (m + m.transpose()) * 0.5;
        let cm = Self { m: sym };
        if !cm.is_physical() {
            return Err(Error::Unphysical(format!(
                "smallest symplectic eigenvalue {} below vacuum bound 1/2",
                cm.symplectic_eigenvalues()[0]
            )));
        }
        Ok(cm)
    }

    /// Two uncorrelated vacuum modes: (1/2)·I.
    pub fn vacuum() -> Self {
        Self { m: Matrix4::identity() * VACUUM_VARIANCE }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.m[(row, col)]
    }

    /// The same state after one extra vacuum unit of noise per quadrature,
    /// the measurement penalty of simultaneous x/p detection.
    pub fn with_added_vacuum(&self) -> Self {
        Self { m: self.m + Matrix4::identity() * VACUUM_VARIANCE }
    }

    /// Moduli of the eigenvalues of iΩV, one per mode, ascending.
    ///
    /// Computed from the singular values of LᵀΩL with V = LLᵀ, which come in
    /// pairs {ν₁, ν₁, ν₂, ν₂}. This route stays accurate to O(ε·ν) where the
    /// quartic-invariant formula 2ν² = Δ ± √(Δ² − 4 det V) loses half the
    /// digits near a degenerate spectrum. A state whose V is not even
    /// positive definite is maximally unphysical; that case falls back to
    /// the invariant formula, which is accurate enough to reject it.
    pub fn symplectic_eigenvalues(&self) -> [f64; 2] {
        #[rustfmt::skip]
        let omega = Matrix4::new(
            0.0,  1.0, 0.0, 0.0,
            -1.0, 0.0, 0.0, 0.0,
            0.0,  0.0, 0.0, 1.0,
            0.0,  0.0, -1.0, 0.0,
        );
        if let Some(chol) = nalgebra::Cholesky::new(self.m) {
            let l = chol.l();
            let k = l.transpose() * omega * l;
            let sv = nalgebra::SVD::new(k, false, false).singular_values;
            // descending, paired: average each pair to kill tie wobble
            [(sv[2] + sv[3]) / 2.0, (sv[0] + sv[1]) / 2.0]
        } else {
            let det2 = |r: usize, c: usize| {
                self.m[(r, c)] * self.m[(r + 1, c + 1)] - self.m[(r, c + 1)] * self.m[(r + 1, c)]
            };
            let delta = det2(0, 0) + det2(2, 2) + 2.0 * det2(0, 2);
            let det_v = self.m.determinant();
            let disc = (delta * delta - 4.0 * det_v).max(0.0).sqrt();
            let nu_plus = ((delta + disc) / 2.0).max(0.0).sqrt();
            let nu_minus = ((delta - disc) / 2.0).max(0.0).sqrt();
            [nu_minus, nu_plus]
        }
    }

    pub fn is_physical(&self) -> bool {
        // a matrix of scale S carries ~eps*S of absolute rounding in any
        // eigenvalue extraction, so the 1e-9 floor widens once S exceeds
        // ~1e5; below that (the whole operating regime) it stays absolute
        let scale = self.m.iter().fold(0.0f64, |acc, e| acc.max(e.abs()));
        let tol = PHYSICALITY_TOL.max(64.0 * f64::EPSILON * scale);
        self.symplectic_eigenvalues()[0] >= VACUUM_VARIANCE - tol
    }
}

/// Balanced (50:50) beam splitter acting on two single-mode states:
/// a₁ = (a + b)/√2, a₂ = (a − b)/√2. Output ordering is (x₁, p₁, x₂, p₂).
pub fn beam_splitter(signal: &CovMat1, ancilla: &CovMat1) -> Result<CovMat2> {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    #[rustfmt::skip]
    let s = Matrix4::new(
        inv_sqrt2, 0.0,        inv_sqrt2,  0.0,
        0.0,       inv_sqrt2,  0.0,        inv_sqrt2,
        inv_sqrt2, 0.0,       -inv_sqrt2,  0.0,
        0.0,       inv_sqrt2,  0.0,       -inv_sqrt2,
    );
    #[rustfmt::skip]
    let v = Matrix4::new(
        signal.vxx,  signal.vxp,  0.0,          0.0,
        signal.vxp,  signal.vpp,  0.0,          0.0,
        0.0,         0.0,         ancilla.vxx,  ancilla.vxp,
        0.0,         0.0,         ancilla.vxp,  ancilla.vpp,
    );
    CovMat2::from_matrix(s * v * s.transpose())
}
