//! On-disk category description: optional ring, modular and metric-group sections plus
//! metadata.

use serde::{Deserialize, Serialize};

use crate::fusion_ring::FusionRing;
use crate::modular_data::{validate_modular_with_tolerance, ModularData, ModularError};
use crate::pointed::{metric_modular_data, MetricGroup};
use crate::report::{Check, ValidationReport};

#[derive(Debug, thiserror::Error)]
pub enum CategoryFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot parse category file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("category file has no ring, modular or metric-group section")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fusion_ring: Option<FusionRing>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modular_data: Option<ModularData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric_group: Option<MetricGroup>,
}

impl CategoryFile {
    pub fn from_json(text: &str) -> Result<Self, CategoryFileError> {
        let file: Self = serde_json::from_str(text)?;
        if file.fusion_ring.is_none() && file.modular_data.is_none() && file.metric_group.is_none() {
            return Err(CategoryFileError::Empty);
        }
        Ok(file)
    }

    pub fn read(path: &std::path::Path) -> Result<Self, CategoryFileError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CategoryFileError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("category files serialize");
        s.push('\n');
        s
    }

    /// Modular data from the modular section, else regenerated from the metric group.
    pub fn modular(&self) -> Result<Option<ModularData>, ModularError> {
        if let Some(md) = &self.modular_data {
            return Ok(Some(md.clone()));
        }
        match &self.metric_group {
            Some(mg) => metric_modular_data(mg).map(Some).map_err(|e| ModularError::Input(e.to_string())),
            None => Ok(None),
        }
    }

    /// The ring section, else the ring carried by the modular section.
    pub fn ring(&self) -> Option<&FusionRing> {
        self.fusion_ring.as_ref().or_else(|| self.modular_data.as_ref().and_then(ModularData::ring))
    }

    /// Validates every section and their mutual consistency.
    ///
    /// A singular S-matrix is an error, as in [`validate_modular_with_tolerance`].
    pub fn validate(&self, tolerance: f64) -> Result<ValidationReport, ModularError> {
        let mut report = ValidationReport::default();
        if let Some(ring) = &self.fusion_ring {
            report.extend(ring.validate());
        }
        if let Some(mg) = &self.metric_group {
            report.extend(mg.validate());
        }
        if let Some(md) = &self.modular_data {
            if self.fusion_ring.is_none() {
                if let Some(ring) = md.ring() {
                    report.extend(ring.validate());
                }
            }
            report.extend(validate_modular_with_tolerance(md, tolerance)?);
        } else if let Some(mg) = &self.metric_group {
            if mg.validate().passed() {
                let md = metric_modular_data(mg).map_err(|e| ModularError::Input(e.to_string()))?;
                report.extend(validate_modular_with_tolerance(&md, tolerance)?);
            }
        }
        report.push(Check::from_violation("sections_consistent", self.inconsistency()));
        Ok(report)
    }

    fn inconsistency(&self) -> Option<(Vec<usize>, String)> {
        if let (Some(ring), Some(md)) = (&self.fusion_ring, &self.modular_data) {
            if let Some(own) = md.ring() {
                if own != ring {
                    return Some((vec![], "ring section differs from the modular section's ring".into()));
                }
            } else if ring.rank() != md.rank() {
                return Some((vec![], "ring section and modular section differ in rank".into()));
            }
        }
        if let (Some(mg), Some(md)) = (&self.metric_group, &self.modular_data) {
            match metric_modular_data(mg) {
                Ok(regenerated) if regenerated.same_data(md) => {}
                Ok(_) => return Some((vec![], "metric group does not regenerate the modular section".into())),
                Err(e) => return Some((vec![], format!("metric group unusable: {e}"))),
            }
        }
        None
    }
}
