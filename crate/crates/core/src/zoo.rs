//! Built-in attacks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::attack::{check_qubits, AttackChannel, Basis};
use crate::error::{Error, Result};
use crate::linalg::{tol, StateVector, C64};
use crate::rng::SeededRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackKind {
    Identity,
    PhaseConversion,
    InterceptResend,
    CnotProbe,
    ProbeOverlap,
    RandomUnitary,
}

impl AttackKind {
    pub const ALL: [AttackKind; 6] = [
        AttackKind::Identity,
        AttackKind::PhaseConversion,
        AttackKind::InterceptResend,
        AttackKind::CnotProbe,
        AttackKind::ProbeOverlap,
        AttackKind::RandomUnitary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AttackKind::Identity => "identity",
            AttackKind::PhaseConversion => "phase_conversion",
            AttackKind::InterceptResend => "intercept_resend",
            AttackKind::CnotProbe => "cnot_probe",
            AttackKind::ProbeOverlap => "probe_overlap",
            AttackKind::RandomUnitary => "random_unitary",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            AttackKind::Identity => "no interaction; Eve keeps nothing (eve_dim 1)",
            AttackKind::PhaseConversion => {
                "per-qubit |i> -> (-1)^i |i>; flips every conjugate-basis bit, eve_dim 1"
            }
            AttackKind::InterceptResend => {
                "measure all qubits in b and resend the result; pointer register of dim 2^n"
            }
            AttackKind::CnotProbe => "copy each qubit into a fresh ancilla qubit; eve_dim 2^n",
            AttackKind::ProbeOverlap => {
                "n=1 only; pointers |0> and cos(t)|0> + sin(t)|1>, params = [theta]"
            }
            AttackKind::RandomUnitary => {
                "seeded random unitary on apparatus (eve_dim) and qubits, ancilla |0>"
            }
        }
    }

    fn param_count(self) -> usize {
        match self {
            AttackKind::ProbeOverlap => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AttackKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AttackKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnsupportedCombination(format!("unknown attack kind `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackSpec {
    pub kind: AttackKind,
    pub n: usize,
    #[serde(default)]
    pub params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eve_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl AttackSpec {
    pub fn new(kind: AttackKind, n: usize) -> Self {
        Self {
            kind,
            n,
            params: Vec::new(),
            eve_dim: None,
            seed: None,
        }
    }

    pub fn probe_overlap(theta: f64) -> Self {
        Self {
            params: vec![theta],
            ..Self::new(AttackKind::ProbeOverlap, 1)
        }
    }

    pub fn random_unitary(n: usize, eve_dim: usize, seed: u64) -> Self {
        Self {
            eve_dim: Some(eve_dim),
            seed: Some(seed),
            ..Self::new(AttackKind::RandomUnitary, n)
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_qubits(self.n)?;
        if self.params.len() != self.kind.param_count() {
            return Err(Error::UnsupportedCombination(format!(
                "{} takes {} parameter(s), got {}",
                self.kind,
                self.kind.param_count(),
                self.params.len()
            )));
        }
        if self.params.iter().any(|p| !p.is_finite()) {
            return Err(Error::OutOfRange("attack parameters must be finite".into()));
        }
        match self.kind {
            AttackKind::ProbeOverlap if self.n != 1 => Err(Error::UnsupportedCombination(
                "probe_overlap is defined for n = 1 only".into(),
            )),
            AttackKind::RandomUnitary if self.eve_dim.is_none() || self.seed.is_none() => Err(
                Error::UnsupportedCombination("random_unitary needs eve_dim and seed".into()),
            ),
            AttackKind::RandomUnitary => Ok(()),
            _ if self.eve_dim.is_some() || self.seed.is_some() => Err(
                Error::UnsupportedCombination(format!("{} takes no eve_dim or seed", self.kind)),
            ),
            _ => Ok(()),
        }
    }
}

fn diagonal_table(
    n: usize,
    pointer: impl Fn(usize) -> StateVector,
    eve_dim: usize,
) -> Vec<StateVector> {
    let dim = 1usize << n;
    let mut kraus = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            kraus.push(if i == j {
                pointer(i)
            } else {
                StateVector::zeros(eve_dim)
            });
        }
    }
    kraus
}

pub fn make_attack(spec: &AttackSpec) -> Result<AttackChannel> {
    spec.validate()?;
    let n = spec.n;
    let dim = 1usize << n;
    match spec.kind {
        AttackKind::Identity => AttackChannel::from_kraus(
            n,
            1,
            diagonal_table(n, |_| StateVector::basis(1, 0), 1),
            Basis::B,
        ),
        AttackKind::PhaseConversion => {
            let sign = |i: usize| {
                if i.count_ones().is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            };
            AttackChannel::from_kraus(
                n,
                1,
                diagonal_table(n, |i| StateVector::from_real(&[sign(i)]), 1),
                Basis::B,
            )
        }
        // Both leave a record |i⟩ of the string in a 2^n-dimensional
        // register; they differ only in how the record is produced.
        AttackKind::InterceptResend | AttackKind::CnotProbe => AttackChannel::from_kraus(
            n,
            dim,
            diagonal_table(n, |i| StateVector::basis(dim, i), dim),
            Basis::B,
        ),
        AttackKind::ProbeOverlap => {
            let theta = spec.params[0];
            let pointer = |i: usize| {
                if i == 0 {
                    StateVector::basis(2, 0)
                } else {
                    StateVector::new(vec![C64::new(theta.cos(), 0.0), C64::new(theta.sin(), 0.0)])
                }
            };
            AttackChannel::from_kraus(1, 2, diagonal_table(1, pointer, 2), Basis::B)
        }
        AttackKind::RandomUnitary => {
            random_attack(n, spec.eve_dim.unwrap_or(1), spec.seed.unwrap_or(0))
        }
    }
}

/// Random attack from a Gaussian matrix orthonormalized by Gram–Schmidt,
/// applied with the apparatus starting in `|0⟩`.
pub fn random_attack(n: usize, eve_dim: usize, seed: u64) -> Result<AttackChannel> {
    check_qubits(n)?;
    if eve_dim == 0 {
        return Err(Error::OutOfRange("eve_dim must be at least 1".into()));
    }
    let joint = eve_dim
        .checked_mul(1 << n)
        .filter(|&d| d <= tol::MAX_JOINT_DIM)
        .ok_or_else(|| {
            Error::DimensionTooLarge(format!(
                "eve_dim {eve_dim} with n={n} exceeds joint dimension {}",
                tol::MAX_JOINT_DIM
            ))
        })?;
    let u = SeededRng::new(seed).random_unitary(joint);
    AttackChannel::from_unitary(&u, &StateVector::basis(eve_dim, 0), n)
}
