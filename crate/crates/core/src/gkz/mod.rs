//! Presentations of the hypergeometric systems: GKZ and Fourier-transformed GKZ
//! systems, graph embeddings, chart systems with their gluing, Radon kernels,
//! the `A^s` matrices, the Rees-level system and the duality data.

mod boxes;
mod builders;
mod charts;
mod duality;

pub use boxes::{box_lattice, tilde_box_certificate, toric_box_generators, BoxFlavor};
pub use builders::{
    build_as, build_as_u, build_fl_gkz, build_gkz, build_gkz_named, build_graph_embedded, build_radon_kernel,
    build_rees_gkz, euler_certificates, kernel_fl_cross_check, EulerCertificate,
};
pub use charts::{build_chart_system, chart_glue, chart_signature, verify_glue, GlueCertificate};
pub use duality::{duality_data, duality_morphism, duality_well_defined, DualityCertificate, DualityData, FiberContext};

use serde::Serialize;

use crate::groebner::{BernsteinError, GroebnerError};
use crate::linalg::{IntMatrix, LinalgError};
use crate::toric::ToricError;
use crate::weyl::{Sig, WeylElement, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GkzError {
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("box generators could not be certified: {0}")]
    GenerationUncertified(String),
    #[error("semigroup is not Gorenstein")]
    NotGorenstein,
    #[error("c' = 0: the semigroup is a group, no graph embedding is needed")]
    TrivialCPrime,
    #[error("no nonnegative exponent k with A k = {0:?}")]
    NoExponent(Vec<i64>),
    #[error("parameter has length {found}, expected {expected}")]
    ParameterLength { expected: usize, found: usize },
    #[error("chart index {0} out of range")]
    BadChart(usize),
    #[error("matrix is not homogenized (first row must be all ones)")]
    NotHomogenized,
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
}

impl From<BernsteinError> for GkzError {
    fn from(e: BernsteinError) -> Self {
        match e {
            BernsteinError::Toric(t) => GkzError::Toric(t),
            BernsteinError::Groebner(g) => GkzError::Groebner(g),
            BernsteinError::NotGorenstein => GkzError::NotGorenstein,
            BernsteinError::TrivialCPrime => GkzError::TrivialCPrime,
            other => GkzError::CertificateFailed(other.to_string()),
        }
    }
}

/// Which construction produced a presentation. Matrices are stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flavor {
    Gkz { a: Vec<Vec<i64>>, beta: Vec<i64> },
    FlGkz { b: Vec<Vec<i64>>, beta: Vec<i64> },
    Graph { bprime: Vec<Vec<i64>> },
    Chart { a: Vec<Vec<i64>>, u: usize },
    RadonKernel { a: Vec<Vec<i64>>, u: usize },
    AsU { a: Vec<Vec<i64>>, u: usize },
    Rees { a_tilde: Vec<Vec<i64>> },
}

/// A filtration shift picked up by a construction, with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftEntry {
    pub description: String,
    pub shift: i64,
}

/// A cyclic module `D / (generators)`. `eulers` indexes the Euler-type generators.
#[derive(Clone, Debug)]
pub struct SystemPresentation {
    pub sig: Sig,
    pub generators: Vec<WeylElement>,
    pub eulers: Vec<usize>,
    pub flavor: Flavor,
    pub shift_ledger: Vec<ShiftEntry>,
}

impl SystemPresentation {
    pub fn boxes(&self) -> Vec<WeylElement> {
        (0..self.generators.len()).filter(|i| !self.eulers.contains(i)).map(|i| self.generators[i].clone()).collect()
    }

    pub fn euler_operators(&self) -> Vec<WeylElement> {
        self.eulers.iter().map(|&i| self.generators[i].clone()).collect()
    }

    pub fn total_shift(&self) -> i64 {
        self.shift_ledger.iter().map(|e| e.shift).sum()
    }

    /// Generators as operator literals.
    pub fn literals(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }
}

pub(crate) fn rows_of(m: &IntMatrix) -> Result<Vec<Vec<i64>>, GkzError> {
    Ok(m.to_i64_rows()?)
}
