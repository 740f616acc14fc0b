//! Single- and two-qubit Pauli operators with exact phase tracking, plus the
//! small dense complex matrices needed to simulate a Bell pair.

use num_complex::Complex64 as C64;
use std::fmt;
use std::ops::Mul;

pub type Mat2c = [[C64; 2]; 2];
pub type Mat4c = [[C64; 4]; 4];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    pub const AXES: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn matrix(self) -> Mat2c {
        match self {
            Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
            Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
            Pauli::Y => [[ZERO, -I], [I, ZERO]],
            Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
        }
    }

    /// Cyclic successor on X → Y → Z → X. Identity maps to itself.
    pub fn next(self) -> Pauli {
        match self {
            Pauli::I => Pauli::I,
            Pauli::X => Pauli::Y,
            Pauli::Y => Pauli::Z,
            Pauli::Z => Pauli::X,
        }
    }

    pub fn prev(self) -> Pauli {
        self.next().next()
    }

    pub fn commutes_with(self, other: Pauli) -> bool {
        self == Pauli::I || other == Pauli::I || self == other
    }

    /// `self * other = i^k * p`, returned as `(k, p)`.
    pub fn product(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    pub fn parse(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// A two-qubit Pauli string `i^phase · (first ⊗ second)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pauli2 {
    pub phase: u8,
    pub first: Pauli,
    pub second: Pauli,
}

impl Pauli2 {
    pub fn new(first: Pauli, second: Pauli) -> Self {
        Pauli2 { phase: 0, first, second }
    }

    pub fn negate(self) -> Self {
        Pauli2 { phase: (self.phase + 2) % 4, ..self }
    }

    pub fn times_i(self) -> Self {
        Pauli2 { phase: (self.phase + 1) % 4, ..self }
    }

    pub fn commutes_with(self, other: Pauli2) -> bool {
        let anti = (!self.first.commutes_with(other.first)) as u8
            + (!self.second.commutes_with(other.second)) as u8;
        anti.is_multiple_of(2)
    }

    /// Real sign of a Hermitian string, `None` if the phase is imaginary.
    pub fn real_sign(self) -> Option<f64> {
        match self.phase {
            0 => Some(1.0),
            2 => Some(-1.0),
            _ => None,
        }
    }

    pub fn matrix(self) -> Mat4c {
        let phase = I.powu(self.phase as u32);
        let mut m = kron(&self.first.matrix(), &self.second.matrix());
        for row in m.iter_mut() {
            for z in row.iter_mut() {
                *z *= phase;
            }
        }
        m
    }
}

impl Mul for Pauli2 {
    type Output = Pauli2;

    fn mul(self, rhs: Pauli2) -> Pauli2 {
        let (k1, first) = self.first.product(rhs.first);
        let (k2, second) = self.second.product(rhs.second);
        Pauli2 { phase: (self.phase + rhs.phase + k1 + k2) % 4, first, second }
    }
}

impl fmt::Display for Pauli2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["+", "+i", "-", "-i"][self.phase as usize];
        write!(f, "{prefix}{}{}", self.first, self.second)
    }
}

pub fn kron(a: &Mat2c, b: &Mat2c) -> Mat4c {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn mat4_mul(a: &Mat4c, b: &Mat4c) -> Mat4c {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat4_adjoint(a: &Mat4c) -> Mat4c {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

pub fn mat4_trace(a: &Mat4c) -> C64 {
    (0..4).map(|i| a[i][i]).sum()
}

/// `Tr(a·b)` without forming the product.
pub fn mat4_trace_product(a: &Mat4c, b: &Mat4c) -> C64 {
    let mut acc = ZERO;
    for i in 0..4 {
        for k in 0..4 {
            acc += a[i][k] * b[k][i];
        }
    }
    acc
}

pub fn mat4_identity() -> Mat4c {
    let mut out = [[ZERO; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = ONE;
    }
    out
}
