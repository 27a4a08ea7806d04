//! Core domain types and the elementary vector/redundancy algebra.
//!
//! The state of the model is a pair of three-component vectors over the
//! university (`u`), industry (`i`), and government (`g`) dimensions. All
//! operations here are total pure functions of finite inputs.

use std::ops::{Add, Index, Mul, Neg, Sub};

/// A three-component real vector indexed by helix dimension.
///
/// Components are unitless bits-scale amplitudes. Finite components are a
/// precondition of every operation; none of them produces NaN or infinity
/// from finite inputs.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec3 {
    /// Dimension 1, university.
    pub u: f64,
    /// Dimension 2, industry.
    pub i: f64,
    /// Dimension 3, government.
    pub g: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        u: 0.0,
        i: 0.0,
        g: 0.0,
    };

    pub const fn new(u: f64, i: f64, g: f64) -> Self {
        Vec3 { u, i, g }
    }

    pub const fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    pub const fn to_array(self) -> [f64; 3] {
        [self.u, self.i, self.g]
    }

    pub fn is_finite(self) -> bool {
        self.u.is_finite() && self.i.is_finite() && self.g.is_finite()
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.u * other.u + self.i * other.i + self.g * other.g
    }

    /// Cross product `self x other`, antisymmetric and orthogonal to both
    /// inputs. This is the interaction kernel of the coupled system.
    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3 {
            u: self.i * other.g - self.g * other.i,
            i: self.g * other.u - self.u * other.g,
            g: self.u * other.i - self.i * other.u,
        }
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Sum of the three components.
    pub fn sum(self) -> f64 {
        self.u + self.i + self.g
    }

    /// Componentwise square.
    pub fn squared(self) -> Vec3 {
        Vec3::new(self.u * self.u, self.i * self.i, self.g * self.g)
    }

    pub fn scale(self, k: f64) -> Vec3 {
        Vec3::new(k * self.u, k * self.i, k * self.g)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.u + rhs.u, self.i + rhs.i, self.g + rhs.g)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.u - rhs.u, self.i - rhs.i, self.g - rhs.g)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.u, -self.i, -self.g)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        self.scale(k)
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;

    /// Zero-based component access (0 = u, 1 = i, 2 = g).
    fn index(&self, idx: usize) -> &f64 {
        match idx {
            0 => &self.u,
            1 => &self.i,
            2 => &self.g,
            _ => panic!("Vec3 index {idx} out of range"),
        }
    }
}

/// The full model state at one instant: sending vector `p` and reflexive
/// receiving vector `q`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HelixState {
    pub p: Vec3,
    pub q: Vec3,
}

impl HelixState {
    pub const fn new(p: Vec3, q: Vec3) -> Self {
        HelixState { p, q }
    }

    pub fn is_finite(&self) -> bool {
        self.p.is_finite() && self.q.is_finite()
    }
}

/// Quantities conserved along exact trajectories.
///
/// `alpha`, `beta`, `gamma` are the componentwise sums `P_i + Q_i`; `c1` and
/// `c2` are the squared norms of `P` and `Q` (the two sphere invariants);
/// `c4` is the planar invariant `a P_1 + b P_2 + c P_3` with the coefficients
/// of [`derive_abc`]. The communication-field invariant `c = c2 - c1` is
/// derived on demand rather than stored.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConservedSet {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub c1: f64,
    pub c2: f64,
    pub c4: f64,
}

impl ConservedSet {
    /// The invariant `c = c2 - c1`; the total redundancy is `-c`.
    pub fn c(&self) -> f64 {
        self.c2 - self.c1
    }
}

/// Coefficients of the reduced linear system and its angular frequency.
///
/// `a = -2 g alpha`, `b = -2 g beta`, `c = -2 g gamma`, and
/// `r = sqrt(a^2 + b^2 + c^2)` is the oscillation frequency of the solved
/// system. `r = 0` is a legal degenerate output (decoupled or cancelling
/// state).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Abc {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub r: f64,
}

impl Abc {
    /// The (a, b, c) triple as a vector (the fixed rotation axis, scaled).
    pub fn axis(&self) -> Vec3 {
        Vec3::new(self.a, self.b, self.c)
    }
}

/// Evaluates every conserved quantity of a state under coupling `g`.
pub fn conserved(state: &HelixState, g: f64) -> ConservedSet {
    let sums = state.p + state.q;
    let abc = derive_abc(state, g);
    ConservedSet {
        alpha: sums.u,
        beta: sums.i,
        gamma: sums.g,
        c1: state.p.norm_squared(),
        c2: state.q.norm_squared(),
        c4: abc.axis().dot(state.p),
    }
}

/// Derives the reduced-system coefficients `(a, b, c)` and frequency `r`
/// from an initial state and coupling coefficient.
pub fn derive_abc(state0: &HelixState, g: f64) -> Abc {
    let sums = state0.p + state0.q;
    let a = -2.0 * g * sums.u;
    let b = -2.0 * g * sums.i;
    let c = -2.0 * g * sums.g;
    Abc {
        a,
        b,
        c,
        r: (a * a + b * b + c * c).sqrt(),
    }
}

/// Per-component signed redundancy `R_i = P_i^2 - Q_i^2`.
///
/// Redundancy is additive: the total is the sum of the three components,
/// which equals `c1 - c2` of [`conserved`].
pub fn redundancy_components(state: &HelixState) -> Vec3 {
    state.p.squared() - state.q.squared()
}
