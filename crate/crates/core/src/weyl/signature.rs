use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::WeylError;

/// Variables of a Weyl algebra (each with its partial `d_<name>`), plus central
/// parameters. An invertible variable or parameter may carry negative exponents.
/// If `homogenizer` is set, that central parameter `h` enters the commutation
/// rule as `[d, x] = h^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    vars: Vec<String>,
    invertible: Vec<bool>,
    central: Vec<String>,
    central_invertible: Vec<bool>,
    marked: Option<usize>,
    homogenizer: Option<usize>,
}

pub type Sig = Arc<Signature>;

impl Signature {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Self, WeylError> {
        let sig = Signature {
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            invertible: vec![false; vars.len()],
            central: vec![],
            central_invertible: vec![],
            marked: None,
            homogenizer: None,
        };
        sig.validate()?;
        Ok(sig)
    }

    pub fn with_central(mut self, name: &str, invertible: bool) -> Result<Self, WeylError> {
        self.central.push(name.to_string());
        self.central_invertible.push(invertible);
        self.validate()?;
        Ok(self)
    }

    pub fn with_invertible(mut self, name: &str) -> Result<Self, WeylError> {
        let i = self.var_index(name).ok_or_else(|| WeylError::UnknownName(name.to_string()))?;
        self.invertible[i] = true;
        Ok(self)
    }

    pub fn with_marked(mut self, name: &str) -> Result<Self, WeylError> {
        let i = self.var_index(name).ok_or_else(|| WeylError::UnknownName(name.to_string()))?;
        self.marked = Some(i);
        Ok(self)
    }

    /// Adds a central parameter `name` that homogenizes the commutation relation.
    pub fn with_homogenizer(self, name: &str) -> Result<Self, WeylError> {
        let mut s = self.with_central(name, false)?;
        s.homogenizer = Some(s.central.len() - 1);
        Ok(s)
    }

    pub fn into_arc(self) -> Sig {
        Arc::new(self)
    }

    fn validate(&self) -> Result<(), WeylError> {
        let mut seen = std::collections::HashSet::new();
        for name in self.vars.iter().chain(&self.central) {
            let ok = !name.is_empty()
                && name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && !name.starts_with("d_");
            if !ok {
                return Err(WeylError::BadName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(WeylError::DuplicateName(name.clone()));
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn ncentral(&self) -> usize {
        self.central.len()
    }

    /// Length of a monomial exponent vector: `[x; n] [d; n] [central; k]`.
    pub fn width(&self) -> usize {
        2 * self.vars.len() + self.central.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn central(&self) -> &[String] {
        &self.central
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn central_name(&self, j: usize) -> &str {
        &self.central[j]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn central_index(&self, name: &str) -> Option<usize> {
        self.central.iter().position(|v| v == name)
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    pub fn is_central_invertible(&self, j: usize) -> bool {
        self.central_invertible[j]
    }

    pub fn marked(&self) -> Option<usize> {
        self.marked
    }

    pub fn homogenizer(&self) -> Option<usize> {
        self.homogenizer
    }

    /// Same algebra with the homogenizer dropped from the central list's role
    /// (the parameter itself is removed).
    pub fn without_central(&self, j: usize) -> Signature {
        let mut s = self.clone();
        s.central.remove(j);
        s.central_invertible.remove(j);
        s.homogenizer = match s.homogenizer {
            Some(h) if h == j => None,
            Some(h) if h > j => Some(h - 1),
            other => other,
        };
        s
    }
}
