//! Pipeline configuration: one TOML file, paths relative to the file itself.

use std::path::{Path, PathBuf};

use semlift_core::align::{AlignConfig, FactConfig};
use semlift_core::enrich::{EnrichmentSource, SourceKind};
use semlift_core::rdf::Iri;
use semlift_core::search::FacetDefinition;
use semlift_core::xml::LiftConfig;
use semlift_core::Execution;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub lift: LiftSection,
    pub align: AlignSection,
    #[serde(default)]
    pub enrich: EnrichSection,
    pub search: SearchSection,
    #[serde(default)]
    pub service: ServiceSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftSection {
    pub schema: PathBuf,
    /// Each document's id is its file stem.
    #[serde(default)]
    pub documents: Vec<PathBuf>,
    pub lifting_namespace: String,
    pub instance_namespace: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlignSection {
    #[serde(default)]
    pub ontologies: Vec<PathBuf>,
    #[serde(default)]
    pub import_dirs: Vec<PathBuf>,
    pub threshold: f64,
    /// Hand-written rule files appended after the suggested rules.
    #[serde(default)]
    pub rules: Vec<PathBuf>,
    #[serde(default)]
    pub confidence: AlignConfig,
    /// Where names, formulas and identifiers live in the converted data.
    #[serde(default)]
    pub derived: FactConfig,
    /// The same for the expert ontologies.
    #[serde(default)]
    pub expert: FactConfig,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnrichSection {
    /// Entities typed with one of these classes are enriched.
    #[serde(default)]
    pub target_classes: Vec<Iri>,
    #[serde(default)]
    pub sources: Vec<EnrichmentSource>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub label_predicates: Vec<Iri>,
    #[serde(default)]
    pub facets: Vec<FacetDefinition>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ServiceSection {
    pub bind: String,
    pub port: u16,
    pub allow_reload: bool,
    pub ui_dir: Option<PathBuf>,
}

impl Default for ServiceSection {
    fn default() -> Self {
        ServiceSection {
            bind: "127.0.0.1".into(),
            port: 8080,
            allow_reload: false,
            ui_dir: None,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub execution: Execution,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: PathBuf::from("out"),
            execution: Execution::default(),
        }
    }
}

fn must_exist(path: &Path, what: &str) -> Result<(), CliError> {
    if path.exists() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{what} {} does not exist", path.display())))
    }
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<PipelineConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    /// Parses, resolves relative paths against `base` and validates.
    pub fn parse(text: &str, base: &Path) -> Result<PipelineConfig, CliError> {
        let mut cfg: PipelineConfig = toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))?;
        cfg.resolve(base);
        cfg.validate()?;
        Ok(cfg)
    }

    fn resolve(&mut self, base: &Path) {
        let abs = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        abs(&mut self.lift.schema);
        self.lift.documents.iter_mut().for_each(abs);
        self.align.ontologies.iter_mut().for_each(abs);
        self.align.import_dirs.iter_mut().for_each(abs);
        self.align.rules.iter_mut().for_each(abs);
        for s in &mut self.enrich.sources {
            if s.kind == SourceKind::FixtureDirectory && Path::new(&s.location).is_relative() {
                s.location = base.join(&s.location).display().to_string();
            }
        }
        if let Some(ui) = &mut self.service.ui_dir {
            abs(ui);
        }
        abs(&mut self.output.dir);
    }

    fn validate(&self) -> Result<(), CliError> {
        must_exist(&self.lift.schema, "schema")?;
        for d in &self.lift.documents {
            must_exist(d, "document")?;
        }
        for o in &self.align.ontologies {
            must_exist(o, "ontology")?;
        }
        for d in &self.align.import_dirs {
            must_exist(d, "import directory")?;
        }
        for r in &self.align.rules {
            must_exist(r, "rule file")?;
        }
        if let Some(ui) = &self.service.ui_dir {
            must_exist(ui, "ui directory")?;
        }
        if !(0.0..=1.0).contains(&self.align.threshold) {
            return Err(CliError::Config(format!(
                "threshold {} is outside [0, 1]",
                self.align.threshold
            )));
        }
        self.align.confidence.validate().map_err(|e| CliError::Config(e.to_string()))?;
        self.lift_config("config")?;
        for s in &self.enrich.sources {
            s.validate().map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(())
    }

    pub fn lift_config(&self, document_id: &str) -> Result<LiftConfig, CliError> {
        LiftConfig::new(&self.lift.lifting_namespace, &self.lift.instance_namespace, document_id)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn execution(&self) -> Execution {
        self.output.execution
    }

    pub fn artifact(&self, name: &str) -> PathBuf {
        self.output.dir.join(name)
    }
}
