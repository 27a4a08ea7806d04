//! Analytic solution of the coupled system.
//!
//! Substituting `Q_i = s_i - P_i` (with conserved sums `s = (alpha, beta,
//! gamma)`) reduces the nonlinear system to a linear rotation
//!
//! ```text
//! P1' = c P2 - b P3
//! P2' = a P3 - c P1
//! P3' = b P1 - a P2
//! ```
//!
//! whose solution is a fixed offset plus a circular oscillation at angular
//! frequency `r = sqrt(a^2 + b^2 + c^2)`:
//!
//! ```text
//! P1 = a C0 + r K1 cos(rt) + (c K2 - b K3) sin(rt)
//! P2 = b C0 + r K2 cos(rt) + (a K3 - c K1) sin(rt)
//! P3 = c C0 + r K3 cos(rt) + (b K1 - a K2) sin(rt)
//! ```
//!
//! with `C0 = (a P1(0) + b P2(0) + c P3(0)) / r^2` and
//! `K_i = (P_i(0) - coeff_i C0) / r`, which forces the side condition
//! `a K1 + b K2 + c K3 = 0`. The degenerate case `r = 0` (decoupled system
//! or cancelling initial sums) is represented explicitly as a constant
//! solution so that evaluation stays total and exact.

use crate::model::{derive_abc, redundancy_components, Abc, HelixState, Vec3};

/// Constants parameterizing the analytic trajectory for one initial state
/// and coupling coefficient.
#[derive(Clone, Copy, Debug)]
pub struct ClosedFormSolution {
    abc: Abc,
    sums: Vec3,
    state0: HelixState,
    kind: Kind,
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    /// `r = 0`: the state never moves.
    Constant,
    Oscillatory { c0: f64, k: [f64; 3] },
}

/// Builds the closed-form solution from an initial state.
pub fn solve(state0: &HelixState, g: f64) -> ClosedFormSolution {
    let abc = derive_abc(state0, g);
    let sums = state0.p + state0.q;
    let kind = if abc.r == 0.0 {
        Kind::Constant
    } else {
        let Abc { a, b, c, r } = abc;
        let p0 = state0.p;
        let c0 = (a * p0.u + b * p0.i + c * p0.g) / (r * r);
        let k = [
            (p0.u - a * c0) / r,
            (p0.i - b * c0) / r,
            (p0.g - c * c0) / r,
        ];
        Kind::Oscillatory { c0, k }
    };
    ClosedFormSolution {
        abc,
        sums,
        state0: *state0,
        kind,
    }
}

impl ClosedFormSolution {
    pub fn a(&self) -> f64 {
        self.abc.a
    }

    pub fn b(&self) -> f64 {
        self.abc.b
    }

    pub fn c(&self) -> f64 {
        self.abc.c
    }

    /// Angular frequency of the oscillation; 0 for the constant solution.
    pub fn r(&self) -> f64 {
        self.abc.r
    }

    pub fn alpha(&self) -> f64 {
        self.sums.u
    }

    pub fn beta(&self) -> f64 {
        self.sums.i
    }

    pub fn gamma(&self) -> f64 {
        self.sums.g
    }

    /// Offset constant `C0`; `None` for the constant solution.
    pub fn c0(&self) -> Option<f64> {
        match self.kind {
            Kind::Constant => None,
            Kind::Oscillatory { c0, .. } => Some(c0),
        }
    }

    /// Integration constants `(K1, K2, K3)`; `None` for the constant
    /// solution.
    pub fn integration_constants(&self) -> Option<[f64; 3]> {
        match self.kind {
            Kind::Constant => None,
            Kind::Oscillatory { k, .. } => Some(k),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.kind, Kind::Constant)
    }

    pub fn initial_state(&self) -> &HelixState {
        &self.state0
    }

    /// Oscillation period `2 pi / r`; `None` for the constant solution.
    pub fn period(&self) -> Option<f64> {
        (!self.is_constant()).then(|| std::f64::consts::TAU / self.abc.r)
    }

    /// Evaluates the state at time `t`.
    pub fn eval(&self, t: f64) -> HelixState {
        match self.kind {
            Kind::Constant => self.state0,
            Kind::Oscillatory { c0, k } => {
                let Abc { a, b, c, r } = self.abc;
                let (st, ct) = (r * t).sin_cos();
                let p = Vec3::new(
                    a * c0 + r * k[0] * ct + (c * k[1] - b * k[2]) * st,
                    b * c0 + r * k[1] * ct + (a * k[2] - c * k[0]) * st,
                    c * c0 + r * k[2] * ct + (b * k[0] - a * k[1]) * st,
                );
                HelixState::new(p, self.sums - p)
            }
        }
    }
}

/// Redundancy component series sampled from a solution: `R_i(t) = P_i(t)^2 -
/// Q_i(t)^2` and their sum.
#[derive(Clone, Debug, Default)]
pub struct ComponentSeries {
    pub times: Vec<f64>,
    pub r1: Vec<f64>,
    pub r2: Vec<f64>,
    pub r3: Vec<f64>,
    pub total: Vec<f64>,
}

impl ComponentSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn component(&self, idx: usize) -> &[f64] {
        match idx {
            0 => &self.r1,
            1 => &self.r2,
            2 => &self.r3,
            _ => panic!("component index {idx} out of range"),
        }
    }
}

/// Evaluates the per-component redundancy series at the given times.
///
/// The total is constant in `t`: it is the difference of the two sphere
/// invariants.
pub fn redundancy_series(sol: &ClosedFormSolution, times: &[f64]) -> ComponentSeries {
    let mut out = ComponentSeries {
        times: times.to_vec(),
        r1: Vec::with_capacity(times.len()),
        r2: Vec::with_capacity(times.len()),
        r3: Vec::with_capacity(times.len()),
        total: Vec::with_capacity(times.len()),
    };
    for &t in times {
        let r = redundancy_components(&sol.eval(t));
        out.r1.push(r.u);
        out.r2.push(r.i);
        out.r3.push(r.g);
        out.total.push(r.sum());
    }
    out
}
