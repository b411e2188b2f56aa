//! Labelled grid results shared by every sweep-style operation.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

/// A parameter value echoed into result metadata.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(untagged))]
pub enum ParamValue {
    Flag(bool),
    Integer(i64),
    Number(f64),
    Text(String),
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Number(v)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Integer(v as i64)
    }
}

impl From<bool> for ParamValue {
    fn from(v: bool) -> Self {
        ParamValue::Flag(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

/// One named column of a sweep.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct Observable {
    pub name: String,
    pub values: Vec<f64>,
}

/// Independent variable against one or more computed observables.
///
/// All observables have the same length as `axis_values`; the constructors
/// enforce it. Observables keep insertion order so that tabular output is
/// stable.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct SweepResult {
    pub axis_name: String,
    pub axis_values: Vec<f64>,
    pub observables: Vec<Observable>,
    pub metadata: BTreeMap<String, ParamValue>,
}

impl SweepResult {
    pub fn new(axis_name: impl Into<String>, axis_values: Vec<f64>) -> Self {
        SweepResult {
            axis_name: axis_name.into(),
            axis_values,
            observables: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.axis_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axis_values.is_empty()
    }

    pub fn push_observable(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        if values.len() != self.axis_values.len() {
            return Err(Error::LengthMismatch {
                expected: self.axis_values.len(),
                found: values.len(),
            });
        }
        self.observables.push(Observable {
            name: name.into(),
            values,
        });
        Ok(())
    }

    pub fn with_observable(mut self, name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        self.push_observable(name, values)?;
        Ok(self)
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: impl Into<ParamValue>) {
        self.metadata.insert(key.into(), value.into());
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<ParamValue>) -> Self {
        self.set_meta(key, value);
        self
    }

    pub fn observable(&self, name: &str) -> Option<&[f64]> {
        self.observables
            .iter()
            .find(|o| o.name == name)
            .map(|o| o.values.as_slice())
    }

    /// Checks the shared-length invariant, e.g. after deserialisation.
    pub fn validate(&self) -> Result<()> {
        for o in &self.observables {
            if o.values.len() != self.axis_values.len() {
                return Err(Error::LengthMismatch {
                    expected: self.axis_values.len(),
                    found: o.values.len(),
                });
            }
        }
        Ok(())
    }
}
