//! Single-qubit unitaries, their SO(3) images, and depolarizing rescaling.
//!
//! A unitary `U` acts on the Bloch ball as a rotation `R`. We obtain `R` the
//! way a lab would: apply `U` to one half of the Bell pair
//! `(|00⟩ + |11⟩)/√2`, read the sixteen two-qubit Pauli expectations
//! `c_ij = Tr(ϱ σ_i⊗σ_j)`, and lay the nine non-local ones out as
//!
//! ```text
//!     ⎡ c_XX  −c_YX  c_ZX ⎤
//! R = ⎢ c_XY  −c_YY  c_ZY ⎥
//!     ⎣ c_XZ  −c_YZ  c_ZZ ⎦
//! ```
//!
//! The negated middle column compensates for `Yᵀ = −Y` on the untouched half
//! of the pair. With it the map `U ↦ R` is a group homomorphism, which the
//! tests check directly.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::pauli::{self, Mat2c, Mat4c, Pauli, Pauli2};

pub const EPS_UNITARY: f64 = 1e-10;
pub const EPS_ORTH: f64 = 1e-9;

/// Residual allowed on the imaginary part of a Pauli expectation value.
const EPS_IMAG: f64 = 1e-12;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct GateAngles {
    pub theta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl GateAngles {
    pub fn new(theta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let a = GateAngles { theta, gamma, delta };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        if self.theta.is_finite() && self.gamma.is_finite() && self.delta.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("gate angles must be finite, got {self:?}")))
        }
    }
}

/// A 2×2 special-unitary matrix.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Unitary2 {
    entries: Mat2c,
}

impl Unitary2 {
    /// Validates unitarity and divides out the global phase so that `det = 1`.
    pub fn new(entries: Mat2c) -> Result<Self> {
        if entries.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("unitary entries must be finite".into()));
        }
        let residual = unitarity_residual(&entries);
        if residual >= EPS_UNITARY {
            return Err(Error::InvalidArgument(format!(
                "matrix is not unitary (max |U†U - I| = {residual:e})"
            )));
        }
        let det = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
        let phase = det.sqrt();
        let mut out = entries;
        for z in out.iter_mut().flatten() {
            *z /= phase;
        }
        let u = Unitary2 { entries: out };
        let det = u.det();
        if (det - C64::new(1.0, 0.0)).norm() >= EPS_UNITARY {
            return Err(Error::InvalidArgument(format!("could not normalize determinant, got {det}")));
        }
        Ok(u)
    }

    /// Row-major `(re, im)` pairs: `u00, u01, u10, u11`.
    pub fn from_re_im(values: &[f64; 8]) -> Result<Self> {
        let z = |k: usize| C64::new(values[2 * k], values[2 * k + 1]);
        Unitary2::new([[z(0), z(1)], [z(2), z(3)]])
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Unitary2 { entries: [[one, zero], [zero, one]] }
    }

    pub fn entries(&self) -> &Mat2c {
        &self.entries
    }

    pub fn det(&self) -> C64 {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    pub fn adjoint(&self) -> Unitary2 {
        let e = &self.entries;
        Unitary2 { entries: [[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]] }
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let (a, b) = (&self.entries, &rhs.entries);
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Unitary2 { entries: out }
    }
}

fn unitarity_residual(u: &Mat2c) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let dot: C64 = (0..2).map(|k| u[k][i].conj() * u[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}

/// General real 3×3 matrix (noisy gates, facets, products).
#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn from_row_major(values: &[f64; 9]) -> Self {
        let mut m = [[0.0; 3]; 3];
        for (k, v) in values.iter().enumerate() {
            m[k / 3][k % 3] = *v;
        }
        Mat3(m)
    }

    pub fn from_int(m: &[[i32; 3]; 3]) -> Self {
        Mat3(m.map(|row| row.map(f64::from)))
    }

    pub fn row_major(&self) -> [f64; 9] {
        let mut out = [0.0; 9];
        for k in 0..9 {
            out[k] = self.0[k / 3][k % 3];
        }
        out
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([[m[0][0], m[1][0], m[2][0]], [m[0][1], m[1][1], m[2][1]], [m[0][2], m[1][2], m[2][2]]])
    }

    pub fn scale(&self, s: f64) -> Mat3 {
        Mat3(self.0.map(|row| row.map(|x| x * s)))
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Frobenius inner product `Σ a_ij b_ij = Tr(aᵀb)`.
    pub fn dot(&self, other: &Mat3) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc += self.0[i][j] * other.0[i][j];
            }
        }
        acc
    }

    /// Frobenius inner product against an integer matrix.
    pub fn dot_int(&self, other: &[[i32; 3]; 3]) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc += self.0[i][j] * f64::from(other[i][j]);
            }
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Mat3) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    /// Entries rounded to integers, if every residual is below `tol`.
    pub fn as_integer(&self, tol: f64) -> Option<[[i32; 3]; 3]> {
        let mut out = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let x = self.0[i][j];
                let r = x.round();
                if !x.is_finite() || (x - r).abs() >= tol || r.abs() > i32::MAX as f64 {
                    return None;
                }
                out[i][j] = r as i32;
            }
        }
        Some(out)
    }

    fn orthogonality_residual(&self) -> f64 {
        (self.transpose() * *self).max_abs_diff(&Mat3::IDENTITY)
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Mul for Mat3 {
    type Output = Mat3;

    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Mat3(out)
    }
}

impl Add for Mat3 {
    type Output = Mat3;

    fn add(self, rhs: Mat3) -> Mat3 {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for Mat3 {
    type Output = Mat3;

    fn sub(self, rhs: Mat3) -> Mat3 {
        self + (-rhs)
    }
}

impl Neg for Mat3 {
    type Output = Mat3;

    fn neg(self) -> Mat3 {
        self.scale(-1.0)
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{:>10.6} {:>10.6} {:>10.6}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// A matrix in SO(3), checked on construction.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Rotation3(Mat3);

impl Rotation3 {
    pub fn new(m: Mat3) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidArgument("rotation entries must be finite".into()));
        }
        let orth = m.orthogonality_residual();
        let det = m.det();
        if orth >= EPS_ORTH || (det - 1.0).abs() >= EPS_ORTH {
            return Err(Error::InvalidArgument(format!(
                "matrix is not in SO(3): |RᵀR - I| = {orth:e}, det = {det}"
            )));
        }
        Ok(Rotation3(m))
    }

    pub fn identity() -> Self {
        Rotation3(Mat3::IDENTITY)
    }

    /// Rotation by `angle` about the unit axis `axis` (Rodrigues).
    pub fn about_axis(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if !(n.is_finite() && n > 0.0 && angle.is_finite()) {
            return Err(Error::InvalidArgument("axis must be a finite nonzero vector".into()));
        }
        let [x, y, z] = axis.map(|a| a / n);
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        Rotation3::new(Mat3([
            [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
            [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
            [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
        ]))
    }

    /// Rotation of a (not necessarily normalized, nonzero) quaternion `w + xi + yj + zk`.
    pub fn from_quaternion(q: [f64; 4]) -> Result<Self> {
        let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidArgument("quaternion must be finite and nonzero".into()));
        }
        let [w, x, y, z] = q.map(|v| v / n);
        Rotation3::new(Mat3([
            [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
            [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
            [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
        ]))
    }

    pub fn as_mat(&self) -> &Mat3 {
        &self.0
    }

    pub fn transpose(&self) -> Rotation3 {
        Rotation3(self.0.transpose())
    }

    /// Products of rotations stay in SO(3); no re-validation.
    pub fn compose(&self, other: &Rotation3) -> Rotation3 {
        Rotation3(self.0 * other.0)
    }

    /// Left/right multiplication by exact signed permutations preserves SO(3).
    pub(crate) fn from_trusted(m: Mat3) -> Rotation3 {
        Rotation3(m)
    }
}

impl Index<(usize, usize)> for Rotation3 {
    type Output = f64;

    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

/// The sixteen real expectations `c_ij = Tr(ϱ σ_i⊗σ_j)` of a two-qubit state.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PauliCoefficients {
    c: [[f64; 4]; 4],
}

impl PauliCoefficients {
    pub fn get(&self, first: Pauli, second: Pauli) -> f64 {
        self.c[first.index()][second.index()]
    }

    pub fn table(&self) -> &[[f64; 4]; 4] {
        &self.c
    }

    /// Expectation of a signed Hermitian Pauli string.
    pub fn expectation(&self, p: Pauli2) -> f64 {
        let sign = p.real_sign().expect("Pauli string must be Hermitian");
        sign * self.get(p.first, p.second)
    }

    /// The six coefficients with exactly one identity factor.
    pub fn local_coefficients(&self) -> [f64; 6] {
        use Pauli::*;
        [
            self.get(I, X),
            self.get(I, Y),
            self.get(I, Z),
            self.get(X, I),
            self.get(Y, I),
            self.get(Z, I),
        ]
    }

    /// Coefficient table of a unital Bell-pair channel whose SO(3) block is `m`.
    ///
    /// Inverts the layout described in the module docs; `c_II = 1` and the
    /// local coefficients are zero, so for `m = (1-p)R` the nine non-local
    /// entries carry the `(1-p)` factor.
    pub fn from_matrix(m: &Mat3) -> PauliCoefficients {
        let mut c = [[0.0; 4]; 4];
        c[0][0] = 1.0;
        for (col, i) in Pauli::AXES.into_iter().enumerate() {
            let sign = if i == Pauli::Y { -1.0 } else { 1.0 };
            for (row, j) in Pauli::AXES.into_iter().enumerate() {
                c[i.index()][j.index()] = sign * m.0[row][col];
            }
        }
        PauliCoefficients { c }
    }

    /// The SO(3) block in the layout described in the module docs.
    pub fn to_matrix(&self) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for (col, i) in Pauli::AXES.into_iter().enumerate() {
            let sign = if i == Pauli::Y { -1.0 } else { 1.0 };
            for (row, j) in Pauli::AXES.into_iter().enumerate() {
                m[row][col] = sign * self.get(i, j);
            }
        }
        Mat3(m)
    }
}

pub fn unitary_from_angles(angles: &GateAngles) -> Result<Unitary2> {
    angles.validate()?;
    let (s, c) = angles.theta.sin_cos();
    let eg = C64::from_polar(1.0, angles.gamma);
    let ed = C64::from_polar(1.0, angles.delta);
    Unitary2::new([[eg * c, -ed * s], [ed.conj() * s, eg.conj() * c]])
}

/// Density matrix `(I⊗U)|Φ⟩⟨Φ|(I⊗U)†` for `|Φ⟩ = (|00⟩+|11⟩)/√2`.
pub fn bell_density_matrix(u: &Unitary2) -> Mat4c {
    let e = u.entries();
    // √2·(I⊗U)|Φ⟩ = |0⟩⊗U|0⟩ + |1⟩⊗U|1⟩
    let psi = [e[0][0], e[1][0], e[0][1], e[1][1]];
    let mut rho = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            rho[i][j] = psi[i] * psi[j].conj() * 0.5;
        }
    }
    rho
}

/// All sixteen Pauli expectations of a two-qubit density matrix.
pub fn coefficients_of_state(rho: &Mat4c) -> Result<PauliCoefficients> {
    let mut c = [[0.0; 4]; 4];
    for a in Pauli::ALL {
        for b in Pauli::ALL {
            let t = pauli::mat4_trace_product(rho, &Pauli2::new(a, b).matrix());
            if t.im.abs() >= EPS_IMAG {
                return Err(Error::InternalConsistency(format!(
                    "expectation of {a}{b} has imaginary part {:e}",
                    t.im
                )));
            }
            c[a.index()][b.index()] = t.re;
        }
    }
    Ok(PauliCoefficients { c })
}

pub fn pauli_coefficients(u: &Unitary2) -> PauliCoefficients {
    coefficients_of_state(&bell_density_matrix(u))
        .expect("a pure state built from a validated unitary has real Pauli expectations")
}

pub fn rotation_from_unitary(u: &Unitary2) -> Result<Rotation3> {
    let m = pauli_coefficients(u).to_matrix();
    Rotation3::new(m).map_err(|e| Error::InternalConsistency(format!("SO(3) image of a unitary: {e}")))
}

pub fn rotation_from_angles(angles: &GateAngles) -> Result<Rotation3> {
    rotation_from_unitary(&unitary_from_angles(angles)?)
}

/// `(1 - p)·R`, the SO(3) block of `R` followed by depolarizing noise of rate `p`.
pub fn depolarize(r: &Rotation3, p: f64) -> Result<Mat3> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("noise rate must lie in [0, 1], got {p}")));
    }
    Ok(r.as_mat().scale(1.0 - p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_angles(rng: &mut ChaCha8Rng) -> GateAngles {
        let mut a = || rng.random_range(0.0..2.0 * PI);
        GateAngles::new(a(), a(), a()).unwrap()
    }

    fn assert_unitary_eq(u: &Unitary2, expected: Mat2c) {
        for i in 0..2 {
            for j in 0..2 {
                assert!((u.entries()[i][j] - expected[i][j]).norm() < 1e-15, "{u:?}");
            }
        }
    }

    #[test]
    fn angles_examples() {
        let u = unitary_from_angles(&GateAngles::new(0.0, 0.0, 0.0).unwrap()).unwrap();
        assert_unitary_eq(&u, *Unitary2::identity().entries());

        let u = unitary_from_angles(&GateAngles::new(0.0, FRAC_PI_8, 0.0).unwrap()).unwrap();
        assert_unitary_eq(
            &u,
            [[C64::from_polar(1.0, FRAC_PI_8), c(0.0, 0.0)], [c(0.0, 0.0), C64::from_polar(1.0, -FRAC_PI_8)]],
        );

        let u = unitary_from_angles(&GateAngles::new(FRAC_PI_2, 0.0, 0.0).unwrap()).unwrap();
        assert_unitary_eq(&u, [[c(0.0, 0.0), c(-1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]);
    }

    #[test]
    fn non_finite_angles_rejected() {
        assert!(matches!(GateAngles::new(f64::NAN, 0.0, 0.0), Err(Error::InvalidArgument(_))));
        let bad = GateAngles { theta: 0.0, gamma: f64::INFINITY, delta: 0.0 };
        assert!(matches!(unitary_from_angles(&bad), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn global_phase_is_stripped() {
        let phase = C64::from_polar(1.0, 0.7);
        let u = Unitary2::new([[phase, c(0.0, 0.0)], [c(0.0, 0.0), phase]]).unwrap();
        assert!((u.det() - 1.0).norm() < 1e-14);
        // Same rotation as the identity regardless of the sign chosen by sqrt.
        let r = rotation_from_unitary(&u).unwrap();
        assert!(r.as_mat().max_abs_diff(&Mat3::IDENTITY) < 1e-14);
    }

    #[test]
    fn non_unitary_rejected() {
        let m = [[c(1.0, 0.0), c(0.1, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(matches!(Unitary2::new(m), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn bell_state_coefficients() {
        // Direct evaluation: |Φ⟩ is stabilized by XX, -YY, ZZ.
        let k = pauli_coefficients(&Unitary2::identity());
        use Pauli::*;
        for a in Pauli::ALL {
            for b in Pauli::ALL {
                let expected = match (a, b) {
                    (I, I) | (X, X) | (Z, Z) => 1.0,
                    (Y, Y) => -1.0,
                    _ => 0.0,
                };
                assert!((k.get(a, b) - expected).abs() < 1e-15, "c_{a}{b}");
            }
        }
    }

    #[test]
    fn identity_maps_to_identity_rotation() {
        let r = rotation_from_unitary(&Unitary2::identity()).unwrap();
        assert_eq!(*r.as_mat(), Mat3::IDENTITY);
    }

    #[test]
    fn pi_over_eight_phase_gate() {
        // Independent route: apply U to |+⟩ and read the Bloch vector, which is
        // the first column of R.
        let u = unitary_from_angles(&GateAngles::new(0.0, FRAC_PI_8, 0.0).unwrap()).unwrap();
        let e = u.entries();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (a, b) = (e[0][0] * h + e[0][1] * h, e[1][0] * h + e[1][1] * h);
        let bloch = [2.0 * (a.conj() * b).re, 2.0 * (a.conj() * b).im, a.norm_sqr() - b.norm_sqr()];

        let r = rotation_from_unitary(&u).unwrap();
        for i in 0..3 {
            assert!((r[(i, 0)] - bloch[i]).abs() < 1e-14);
        }
        // The image of diag(e^{iπ/8}, e^{-iπ/8}) turns the x axis towards -y.
        let (s, co) = FRAC_PI_4.sin_cos();
        let expected = Mat3([[co, s, 0.0], [-s, co, 0.0], [0.0, 0.0, 1.0]]);
        assert!(r.as_mat().max_abs_diff(&expected) < 1e-14, "{}", r.as_mat());
    }

    #[test]
    fn bit_flip_like_gate_inverts_z() {
        let u = unitary_from_angles(&GateAngles::new(FRAC_PI_2, 0.0, 0.0).unwrap()).unwrap();
        let r = rotation_from_unitary(&u).unwrap();
        assert!((r[(0, 2)]).abs() < 1e-15);
        assert!((r[(1, 2)]).abs() < 1e-15);
        assert!((r[(2, 2)] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_angles_give_rotations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let r = rotation_from_angles(&random_angles(&mut rng)).unwrap();
            let m = r.as_mat();
            assert!((m.transpose() * *m).max_abs_diff(&Mat3::IDENTITY) < 1e-9);
            assert!((m.det() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let u = unitary_from_angles(&random_angles(&mut rng)).unwrap();
            let v = unitary_from_angles(&random_angles(&mut rng)).unwrap();
            let ruv = rotation_from_unitary(&(u * v)).unwrap();
            let ru_rv = rotation_from_unitary(&u).unwrap().compose(&rotation_from_unitary(&v).unwrap());
            assert!(ruv.as_mat().max_abs_diff(ru_rv.as_mat()) < 1e-9);
            let radj = rotation_from_unitary(&u.adjoint()).unwrap();
            assert!(radj.as_mat().max_abs_diff(&rotation_from_unitary(&u).unwrap().transpose().0) < 1e-9);
        }
    }

    #[test]
    fn local_coefficients_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..1000 {
            let k = pauli_coefficients(&unitary_from_angles(&random_angles(&mut rng)).unwrap());
            assert!((k.get(Pauli::I, Pauli::I) - 1.0).abs() < 1e-12);
            assert!(k.local_coefficients().iter().all(|x| x.abs() < 1e-12));
        }
    }

    #[test]
    fn coefficient_layout_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let k = pauli_coefficients(&unitary_from_angles(&random_angles(&mut rng)).unwrap());
        let back = PauliCoefficients::from_matrix(&k.to_matrix());
        for a in Pauli::ALL {
            for b in Pauli::ALL {
                assert!((back.get(a, b) - k.get(a, b)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn depolarize_examples() {
        let r = rotation_from_angles(&GateAngles::new(0.3, 1.1, -0.4).unwrap()).unwrap();
        assert_eq!(depolarize(&r, 0.0).unwrap(), *r.as_mat());
        assert_eq!(depolarize(&r, 1.0).unwrap(), Mat3::ZERO);
        assert_eq!(depolarize(&Rotation3::identity(), 0.5).unwrap(), Mat3::IDENTITY.scale(0.5));
        assert!(matches!(depolarize(&r, -0.1), Err(Error::InvalidArgument(_))));
        assert!(matches!(depolarize(&r, 1.5), Err(Error::InvalidArgument(_))));
        assert!(matches!(depolarize(&r, f64::NAN), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn quaternion_and_axis_agree() {
        let (s, co) = (0.35f64).sin_cos();
        let q = Rotation3::from_quaternion([co, 0.0, 0.0, s]).unwrap();
        let a = Rotation3::about_axis([0.0, 0.0, 1.0], 0.7).unwrap();
        assert!(q.as_mat().max_abs_diff(a.as_mat()) < 1e-15);
    }

    #[test]
    fn rotation_rejects_reflections() {
        let m = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert!(Rotation3::new(m).is_err());
        assert!(Rotation3::new(Mat3::IDENTITY.scale(0.5)).is_err());
    }
}
