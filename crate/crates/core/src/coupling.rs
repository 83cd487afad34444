//! Overlap and dissipation integrals that parameterize the coupled-mode
//! system: the acousto-optic work density Q_b, optical perturbation overlaps
//! Q_i, normalization powers 𝒫, and the viscous acoustic damping α.
//!
//! Carrier-phase convention: all overlaps are evaluated at z = t = 0; the
//! carrier factors `exp(i(qz - Ωt))` are bookkept by the envelope solver.
//! The z-derivative acting on a transverse profile is the carrier derivative
//! `i q` (or `i β` for optical modes).

use crate::constants::{C_LIGHT, EPS_0, MU_0};
use crate::error::{Error, Result};
use crate::fibermode::ModeProfile;
use crate::materials::MaterialParams;
use crate::numerics::grid::VectorField2;
use num_complex::Complex64;

/// The scalar coefficients that close the coupled-envelope system.
///
/// `q_b`, `q_1`, `q_2` are the overlap integrals per unit envelope product;
/// `p_1`, `p_2`, `p_b` are energy-transport normalization powers (W);
/// `alpha_ac` is the acoustic amplitude dissipation (1/m) and `gamma_ac` the
/// corresponding temporal decay rate (1/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSet {
    pub q_b: Complex64,
    pub q_1: Complex64,
    pub q_2: Complex64,
    pub p_1: f64,
    pub p_2: f64,
    pub p_b: f64,
    pub alpha_ac: f64,
    pub gamma_ac: f64,
}

impl CouplingSet {
    pub fn validate(&self) -> Result<()> {
        if !(self.p_1 > 0.0 && self.p_2 > 0.0 && self.p_b > 0.0) {
            return Err(Error::Validation(format!(
                "normalization powers must be > 0: p1={}, p2={}, pb={}",
                self.p_1, self.p_2, self.p_b
            )));
        }
        if self.alpha_ac < 0.0 || self.gamma_ac < 0.0 {
            return Err(Error::Validation(
                "dissipation rates must be >= 0".into(),
            ));
        }
        let finite = [self.p_1, self.p_2, self.p_b, self.alpha_ac, self.gamma_ac]
            .iter()
            .all(|v| v.is_finite())
            && [self.q_b, self.q_1, self.q_2]
                .iter()
                .all(|c| c.re.is_finite() && c.im.is_finite());
        if !finite {
            return Err(Error::Validation("coupling set contains non-finite values".into()));
        }
        Ok(())
    }
}

/// Optical force density per unit envelope product `a1* a2` (N/m³), sampled
/// on the same lattice as the profiles it is integrated against.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceField {
    pub field: VectorField2,
}

/// Perturbations of the electromagnetic constitutive fields driven by the
/// acoustic mode: Δd (photoelastic), Δe (moving-boundary continuity), Δh
/// (dynamic magnetic coupling; no constitutive model — defaults to zero but
/// stays in the integral).
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationFields {
    pub delta_d: VectorField2,
    pub delta_e: VectorField2,
    pub delta_h: VectorField2,
}

impl PerturbationFields {
    /// All-zero perturbation on a given lattice.
    pub fn zeros(grid: crate::numerics::grid::Grid2) -> Self {
        Self {
            delta_d: VectorField2::zeros(grid),
            delta_e: VectorField2::zeros(grid),
            delta_h: VectorField2::zeros(grid),
        }
    }
}

/// Acousto-optic work linear density Q_b = ∫ Φ* · f d²r, evaluated at zero
/// carrier phase. Linear in both arguments.
pub fn acoustic_coupling(phi: &ModeProfile, force: &ForceField) -> Result<Complex64> {
    phi.field.overlap(&force.field)
}

/// Optical perturbation overlap
/// Q_i = ∫ [Ψ* · Δd  -  d* · Δe  -  μ0 h* · Δh] d²r.
///
/// `d_base` and `h_base` are the mode's induction and magnetic fields (the
/// unperturbed partners of Δe and Δh). Antilinear in the mode, linear in the
/// perturbations.
pub fn optical_overlap(
    psi: &ModeProfile,
    d_base: &VectorField2,
    h_base: &VectorField2,
    pert: &PerturbationFields,
) -> Result<Complex64> {
    let t1 = psi.field.overlap(&pert.delta_d)?;
    let t2 = d_base.overlap(&pert.delta_e)?;
    let t3 = h_base.overlap(&pert.delta_h)?;
    Ok(t1 - t2 - MU_0 * t3)
}

/// Viscous acoustic dissipation
/// α = (Ω²/𝒫_b) ∫ Σ (∂_j Φ_i)* η_ijkl (∂_k Φ_l) d²r, in 1/m.
///
/// The viscosity tensor is the isotropic two-parameter form
/// η_ijkl = η_B δ_ij δ_kl + η_S (δ_ik δ_jl + δ_il δ_jk - (2/3) δ_ij δ_kl)
/// with η_B = η_S = `eta_scale`. The operator-ordered integrand is written in
/// its integration-by-parts form (fields decay at the lattice boundary), so
/// the result is manifestly >= 0 for eta_scale >= 0. Transverse derivatives
/// are central differences; the z-derivative is the carrier factor i q.
pub fn acoustic_damping(
    phi: &ModeProfile,
    eta_scale: f64,
    omega_ac: f64,
    p_b: f64,
) -> Result<f64> {
    if !(p_b > 0.0) {
        return Err(Error::Validation(format!("p_b must be > 0, got {p_b}")));
    }
    if eta_scale < 0.0 {
        return Err(Error::Validation(format!(
            "eta_scale must be >= 0, got {eta_scale}"
        )));
    }
    let q = phi.beta;
    // D[j][i] = ∂_j Φ_i with j, i in {x, y, z}
    let dx: Vec<Vec<Complex64>> = (0..3).map(|c| phi.field.partial(c, 0)).collect();
    let dy: Vec<Vec<Complex64>> = (0..3).map(|c| phi.field.partial(c, 1)).collect();
    let iq = Complex64::new(0.0, q);

    let mut integral = 0.0;
    for (k, v) in phi.field.data.iter().enumerate() {
        let d = [
            [dx[0][k], dx[1][k], dx[2][k]],
            [dy[0][k], dy[1][k], dy[2][k]],
            [iq * v[0], iq * v[1], iq * v[2]],
        ];
        let div = d[0][0] + d[1][1] + d[2][2];
        let mut cross = Complex64::new(0.0, 0.0);
        let mut frob = 0.0;
        for j in 0..3 {
            for i in 0..3 {
                cross += d[j][i].conj() * d[i][j];
                frob += d[j][i].norm_sqr();
            }
        }
        let eta_b = eta_scale;
        let eta_s = eta_scale;
        integral += eta_b * div.norm_sqr()
            + eta_s * (cross.re + frob - 2.0 / 3.0 * div.norm_sqr());
    }
    let alpha = omega_ac * omega_ac / p_b * integral * phi.field.grid.cell_area();
    if !alpha.is_finite() {
        return Err(Error::Validation(
            "damping integral is non-finite (grid too coarse for the decay length)".into(),
        ));
    }
    Ok(alpha)
}

/// Electrostrictive body force per unit envelope product:
/// f = (ε0 γ_e / 2) ∇(Ψ1* · Ψ2) with γ_e = n⁴ P12 and the z-derivative taken
/// as the carrier factor i(β2 - β1). Bilinear; swapping the modes conjugates
/// the force.
pub fn electrostrictive_force(
    psi_1: &ModeProfile,
    psi_2: &ModeProfile,
    material: &MaterialParams,
) -> Result<ForceField> {
    psi_1.field.same_grid(&psi_2.field)?;
    let gamma_e = material.n_eff.powi(4) * material.p12;
    let pref = 0.5 * EPS_0 * gamma_e;
    let grid = psi_1.field.grid;

    // scalar product field s = Ψ1* · Ψ2
    let mut s = VectorField2::zeros(grid);
    for (k, (a, b)) in psi_1
        .field
        .data
        .iter()
        .zip(psi_2.field.data.iter())
        .enumerate()
    {
        let mut dot = Complex64::new(0.0, 0.0);
        for c in 0..3 {
            dot += a[c].conj() * b[c];
        }
        s.data[k][0] = dot;
    }
    let sx = s.partial(0, 0);
    let sy = s.partial(0, 1);
    let dq = Complex64::new(0.0, psi_2.beta - psi_1.beta);

    let mut field = VectorField2::zeros(grid);
    for k in 0..grid.len() {
        field.data[k] = [pref * sx[k], pref * sy[k], pref * dq * s.data[k][0]];
    }
    Ok(ForceField { field })
}

/// Photoelastic perturbation fields driven by the acoustic profile:
/// Δd = ε0 γ_e (∇·Φ) Ψ per unit acoustic envelope, Δe = Δh = 0.
pub fn photoelastic_perturbation(
    psi: &ModeProfile,
    phi: &ModeProfile,
    material: &MaterialParams,
) -> Result<PerturbationFields> {
    psi.field.same_grid(&phi.field)?;
    let gamma_e = material.n_eff.powi(4) * material.p12;
    let grid = psi.field.grid;
    let px = phi.field.partial(0, 0);
    let py = phi.field.partial(1, 1);
    let iq = Complex64::new(0.0, phi.beta);

    let mut pert = PerturbationFields::zeros(grid);
    for k in 0..grid.len() {
        let dil = px[k] + py[k] + iq * phi.field.data[k][2];
        let coef = EPS_0 * gamma_e * dil;
        for c in 0..3 {
            pert.delta_d.data[k][c] = coef * psi.field.data[k][c];
        }
    }
    Ok(pert)
}

/// Energy-transport power of an optical mode profile:
/// 𝒫 = (1/2) ε0 c n_eff ∫ |Ψ|² dA (W). Unity for profiles normalized by
/// `fibermode::sample_profile`.
pub fn optical_transport_power(psi: &ModeProfile, n_eff: f64) -> f64 {
    0.5 * EPS_0 * C_LIGHT * n_eff * psi.field.norm_sq_integral()
}

/// Energy-transport power of an acoustic mode profile:
/// 𝒫_b = v_b ρ Ω² ∫ |Φ|² dA (W).
pub fn acoustic_transport_power(phi: &ModeProfile, rho: f64, v_b: f64) -> f64 {
    v_b * rho * phi.omega * phi.omega * phi.field.norm_sq_integral()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibermode::{sample_profile, saw_profile, ModeKind, WaveguideGeometry};
    use crate::materials::{builtin_materials, find_material};
    use crate::numerics::grid::Grid2;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn microwire() -> WaveguideGeometry {
        WaveguideGeometry {
            core_radius: 0.5e-6,
            core_index: 1.65,
            clad_index: 1.0,
            length: 0.08,
        }
    }

    fn lanthano() -> MaterialParams {
        find_material(&builtin_materials(), "lanthano-aluminosilicate")
            .unwrap()
            .clone()
    }

    fn setup(grid_n: usize) -> (ModeProfile, ModeProfile, MaterialParams) {
        let geom = microwire();
        let m = lanthano();
        let grid = Grid2::new(1.5e-6, grid_n).unwrap();
        let psi = sample_profile(&geom, 1534e-9, grid).unwrap();
        let phi = saw_profile(
            geom.core_radius,
            geom.core_radius / 3.0,
            m.omega_acoustic(),
            m.v_s,
            grid,
        )
        .unwrap();
        (psi, phi, m)
    }

    #[test]
    fn orthogonal_polarization_gives_zero_coupling() {
        let grid = Grid2::new(1e-6, 32).unwrap();
        // Φ purely x-polarized, f purely y-polarized
        let phi = ModeProfile {
            field: VectorField2::from_fn(grid, |_x, _y| {
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]
            }),
            beta: 1.0,
            omega: 1.0,
            kind: ModeKind::Acoustic,
        };
        let force = ForceField {
            field: VectorField2::from_fn(grid, |x, y| {
                [Complex64::new(0.0, 0.0), Complex64::new(x + y, 0.5), Complex64::new(0.0, 0.0)]
            }),
        };
        let q = acoustic_coupling(&phi, &force).unwrap();
        assert_eq!(q, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn coupling_is_linear_in_force() {
        let (psi, phi, m) = setup(64);
        let force = electrostrictive_force(&psi, &psi, &m).unwrap();
        let q = acoustic_coupling(&phi, &force).unwrap();
        let s = Complex64::new(-2.5, 1.25);
        let scaled = ForceField {
            field: force.field.scaled(s),
        };
        let qs = acoustic_coupling(&phi, &scaled).unwrap();
        assert_relative_eq!((qs - q * s).norm(), 0.0, epsilon = 1e-12 * q.norm());
    }

    /// Independent brute-force oracle: explicit double loop over lattice
    /// indices, no field-method shortcuts.
    #[test]
    fn coupling_matches_double_loop_oracle() {
        let (psi, phi, m) = setup(96);
        let force = electrostrictive_force(&psi, &psi, &m).unwrap();
        let q = acoustic_coupling(&phi, &force).unwrap();

        let g = phi.field.grid;
        let mut acc = Complex64::new(0.0, 0.0);
        for iy in 0..g.n {
            for ix in 0..g.n {
                let a = phi.field.at(ix, iy);
                let b = force.field.at(ix, iy);
                acc += a[0].conj() * b[0] + a[1].conj() * b[1] + a[2].conj() * b[2];
            }
        }
        acc *= g.cell_area();
        assert_relative_eq!(q.re, acc.re, max_relative = 1e-12);
        assert!((q.im - acc.im).abs() <= 1e-12 * q.norm());
    }

    #[test]
    fn grid_mismatch_is_detected() {
        let (psi, _, m) = setup(32);
        let other = saw_profile(0.5e-6, 0.2e-6, 1e10, 5000.0, Grid2::new(1.5e-6, 64).unwrap())
            .unwrap();
        let force = electrostrictive_force(&psi, &psi, &m).unwrap();
        assert!(matches!(
            acoustic_coupling(&other, &force),
            Err(Error::GridMismatch(_))
        ));
    }

    #[test]
    fn null_perturbation_gives_zero_overlap() {
        let (psi, _, _) = setup(32);
        let grid = psi.field.grid;
        let pert = PerturbationFields::zeros(grid);
        let d = VectorField2::zeros(grid);
        let h = VectorField2::zeros(grid);
        let q = optical_overlap(&psi, &d, &h, &pert).unwrap();
        assert_eq!(q, Complex64::new(0.0, 0.0));
    }

    /// Δd = ε0 δε Ψ with constant δε → Q = ε0 δε ∫|Ψ|², matched to the
    /// closed form computed by independent summation.
    #[test]
    fn constant_perturbation_closed_form() {
        let (psi, _, _) = setup(64);
        let grid = psi.field.grid;
        let delta_eps = 0.037;
        let mut pert = PerturbationFields::zeros(grid);
        for (k, v) in psi.field.data.iter().enumerate() {
            for c in 0..3 {
                pert.delta_d.data[k][c] = EPS_0 * delta_eps * v[c];
            }
        }
        let d = VectorField2::zeros(grid);
        let h = VectorField2::zeros(grid);
        let q = optical_overlap(&psi, &d, &h, &pert).unwrap();

        let norm: f64 = psi
            .field
            .data
            .iter()
            .map(|v| v.iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            * grid.cell_area();
        let expected = EPS_0 * delta_eps * norm;
        assert_relative_eq!(q.re, expected, max_relative = 1e-12);
        assert!(q.im.abs() < 1e-12 * expected);
    }

    /// Conjugating every input conjugates the overlap.
    #[test]
    fn overlap_conjugation_symmetry() {
        let (psi, phi, m) = setup(48);
        let pert = photoelastic_perturbation(&psi, &phi, &m).unwrap();
        let d = psi.field.scaled(Complex64::new(EPS_0 * 1.65 * 1.65, 0.0));
        let h = VectorField2::zeros(psi.field.grid);
        let q = optical_overlap(&psi, &d, &h, &pert).unwrap();

        let conj_field = |f: &VectorField2| VectorField2 {
            grid: f.grid,
            data: f.data.iter().map(|v| [v[0].conj(), v[1].conj(), v[2].conj()]).collect(),
        };
        let psi_c = ModeProfile {
            field: conj_field(&psi.field),
            ..psi.clone()
        };
        let pert_c = PerturbationFields {
            delta_d: conj_field(&pert.delta_d),
            delta_e: conj_field(&pert.delta_e),
            delta_h: conj_field(&pert.delta_h),
        };
        let q_c = optical_overlap(&psi_c, &conj_field(&d), &h, &pert_c).unwrap();
        assert_relative_eq!(q_c.re, q.re, max_relative = 1e-12);
        assert_relative_eq!(q_c.im, -q.im, max_relative = 1e-12);
    }

    #[test]
    fn inviscid_damping_is_zero() {
        let (_, phi, m) = setup(64);
        let pb = acoustic_transport_power(&phi, m.rho, m.v_s);
        let a = acoustic_damping(&phi, 0.0, m.omega_acoustic(), pb).unwrap();
        assert_eq!(a, 0.0);
    }

    /// α scales exactly as Ω² at fixed profile.
    #[test]
    fn damping_quadruples_when_omega_doubles() {
        let (_, phi, m) = setup(64);
        let pb = acoustic_transport_power(&phi, m.rho, m.v_s);
        let om = m.omega_acoustic();
        let a1 = acoustic_damping(&phi, m.eta_scale, om, pb).unwrap();
        let a2 = acoustic_damping(&phi, m.eta_scale, 2.0 * om, pb).unwrap();
        assert_relative_eq!(a2, 4.0 * a1, max_relative = 1e-12);
    }

    /// Bulk plane-wave limit: for Φ = ẑ g(r) with Gaussian g and carrier q,
    /// α = (η/(v ρ)) [(7/3) q² + 2/w²]  (closed form for the chosen tensor).
    #[test]
    fn damping_matches_gaussian_plane_wave_closed_form() {
        let w = 0.5e-6;
        let grid = Grid2::new(1.5e-6, 192).unwrap();
        let m = lanthano();
        let q = m.omega_acoustic() / m.v_s;
        let phi = ModeProfile {
            field: VectorField2::from_fn(grid, |x, y| {
                [
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new((-(x * x + y * y) / (w * w)).exp(), 0.0),
                ]
            }),
            beta: q,
            omega: m.omega_acoustic(),
            kind: ModeKind::Acoustic,
        };
        let pb = acoustic_transport_power(&phi, m.rho, m.v_s);
        let alpha = acoustic_damping(&phi, m.eta_scale, m.omega_acoustic(), pb).unwrap();
        let expected = m.eta_scale / (m.v_s * m.rho) * (7.0 / 3.0 * q * q + 2.0 / (w * w));
        assert_relative_eq!(alpha, expected, max_relative = 1e-3);
    }

    /// SAW-ansatz damping against an independently coded finite-difference
    /// quadrature oracle, Richardson-extrapolated over two resolutions.
    #[test]
    fn saw_damping_matches_refined_oracle() {
        let m = lanthano();
        let geom = microwire();

        // independent oracle: direct loops, forward differences, own tensor
        // contraction
        let oracle = |n: usize| -> f64 {
            let grid = Grid2::new(1.5e-6, n).unwrap();
            let phi = saw_profile(
                geom.core_radius,
                geom.core_radius / 3.0,
                m.omega_acoustic(),
                m.v_s,
                grid,
            )
            .unwrap();
            let pb = acoustic_transport_power(&phi, m.rho, m.v_s);
            let h = grid.spacing();
            let q = phi.beta;
            let mut total = 0.0;
            for iy in 0..n - 1 {
                for ix in 0..n - 1 {
                    let v = phi.field.at(ix, iy);
                    let vx = phi.field.at(ix + 1, iy);
                    let vy = phi.field.at(ix, iy + 1);
                    let d = [
                        [(vx[0] - v[0]) / h, (vx[1] - v[1]) / h, (vx[2] - v[2]) / h],
                        [(vy[0] - v[0]) / h, (vy[1] - v[1]) / h, (vy[2] - v[2]) / h],
                        [
                            Complex64::new(0.0, q) * v[0],
                            Complex64::new(0.0, q) * v[1],
                            Complex64::new(0.0, q) * v[2],
                        ],
                    ];
                    let div = d[0][0] + d[1][1] + d[2][2];
                    let mut acc = m.eta_scale * div.norm_sqr();
                    for j in 0..3 {
                        for i in 0..3 {
                            acc += m.eta_scale
                                * ((d[j][i].conj() * d[i][j]).re + d[j][i].norm_sqr());
                        }
                    }
                    acc -= m.eta_scale * 2.0 / 3.0 * div.norm_sqr();
                    total += acc;
                }
            }
            m.omega_acoustic().powi(2) / pb * total * grid.cell_area()
        };
        // The surface kink of the ansatz makes both routes first-order in h;
        // Richardson-extrapolate each at two resolutions and compare limits.
        let oracle_limit = 2.0 * oracle(256) - oracle(128);

        let this = |n: usize| -> f64 {
            let grid = Grid2::new(1.5e-6, n).unwrap();
            let phi = saw_profile(
                geom.core_radius,
                geom.core_radius / 3.0,
                m.omega_acoustic(),
                m.v_s,
                grid,
            )
            .unwrap();
            let pb = acoustic_transport_power(&phi, m.rho, m.v_s);
            acoustic_damping(&phi, m.eta_scale, m.omega_acoustic(), pb).unwrap()
        };
        let impl_limit = 2.0 * this(512) - this(256);
        assert_relative_eq!(impl_limit, oracle_limit, max_relative = 1e-2);
    }

    #[test]
    fn zero_input_field_gives_zero_force() {
        let (psi, _, m) = setup(32);
        let zero = ModeProfile {
            field: VectorField2::zeros(psi.field.grid),
            ..psi.clone()
        };
        let f = electrostrictive_force(&psi, &zero, &m).unwrap();
        assert!(f.field.data.iter().all(|v| v.iter().all(|c| c.norm() == 0.0)));
    }

    #[test]
    fn swapping_modes_conjugates_the_force() {
        let (psi, _, m) = setup(48);
        // give the second mode a distinct complex structure
        let psi2 = ModeProfile {
            field: psi.field.scaled(Complex64::new(0.8, 0.3)),
            beta: psi.beta * 1.01,
            ..psi.clone()
        };
        let f12 = electrostrictive_force(&psi, &psi2, &m).unwrap();
        let f21 = electrostrictive_force(&psi2, &psi, &m).unwrap();
        for (a, b) in f12.field.data.iter().zip(f21.field.data.iter()) {
            for c in 0..3 {
                assert_relative_eq!(a[c].re, b[c].re, epsilon = 1e-25);
                assert_relative_eq!(a[c].im, -b[c].im, epsilon = 1e-25);
            }
        }
    }

    /// Top-hat intensity: the force vanishes in the interior and localizes
    /// at the core boundary; the signed radial sum telescopes to
    /// -(ε0 γ_e/2) I · 2πR.
    #[test]
    fn top_hat_force_localizes_at_boundary() {
        let grid = Grid2::new(1.5e-6, 256).unwrap();
        let m = lanthano();
        let radius = 0.9e-6;
        let mk = |scale: f64| ModeProfile {
            field: VectorField2::from_fn(grid, |x, y| {
                if x * x + y * y <= radius * radius {
                    [Complex64::new(scale, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]
                } else {
                    [Complex64::new(0.0, 0.0); 3]
                }
            }),
            beta: 6.0e6,
            omega: 1.0,
            kind: ModeKind::Optical,
        };
        let psi = mk(1.0);
        let f = electrostrictive_force(&psi, &psi, &m).unwrap();

        let h = grid.spacing();
        let inner = radius - 2.0 * h;
        let mut radial_sum = 0.0;
        for iy in 0..grid.n {
            for ix in 0..grid.n {
                let (x, y) = (grid.coord(ix), grid.coord(iy));
                let r = (x * x + y * y).sqrt();
                let v = f.field.at(ix, iy);
                if r < inner && r > 0.0 {
                    assert!(
                        v[0].norm() == 0.0 && v[1].norm() == 0.0,
                        "interior transverse force at r={r}"
                    );
                }
                if r > 0.0 {
                    radial_sum += (v[0].re * x + v[1].re * y) / r;
                }
            }
        }
        radial_sum *= grid.cell_area();
        let gamma_e = m.n_eff.powi(4) * m.p12;
        let expected = -0.5 * EPS_0 * gamma_e * 2.0 * PI * radius;
        assert_relative_eq!(radial_sum, expected, max_relative = 0.05);
    }

    /// Integral convergence: Q_b changes by < 1% between the default grid
    /// spacing and its half.
    #[test]
    fn work_integral_converges_under_refinement() {
        let q = |n: usize| {
            let (psi, phi, m) = setup(n);
            let force = electrostrictive_force(&psi, &psi, &m).unwrap();
            acoustic_coupling(&phi, &force).unwrap()
        };
        let q1 = q(128);
        let q2 = q(256);
        assert!(
            (q1 - q2).norm() < 0.01 * q2.norm(),
            "Q_b moved by {} relative",
            (q1 - q2).norm() / q2.norm()
        );
    }

    #[test]
    fn normalized_optical_power_is_unity() {
        let (psi, _, _) = setup(96);
        let geom = microwire();
        let n_eff = crate::fibermode::solve_neff(&geom, 1534e-9).unwrap();
        assert_relative_eq!(optical_transport_power(&psi, n_eff), 1.0, max_relative = 1e-12);
    }
}
