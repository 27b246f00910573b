//! Resolution of CLI flags plus optional JSON config file into validated
//! library types. Flags override file fields; whatever remains unset falls
//! back to documented defaults.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use sombor::{IndexSpec, ModelFamily};

use crate::{CliError, CliResult, CommonArgs};

/// Config-file schema: a superset of the shared flags, all optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub model: Option<String>,
    pub n: Option<usize>,
    pub n1: Option<usize>,
    pub n2: Option<usize>,
    pub grid: Option<String>,
    pub index: Option<Vec<String>>,
    pub alpha: Option<Vec<f64>>,
    pub beta: Option<f64>,
    pub replicas: Option<usize>,
    pub spectral_replicas: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub sizes: Option<Vec<usize>>,
    pub threshold: Option<f64>,
    pub inputs: Option<Vec<PathBuf>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("malformed config {}: {e}", path.display())))
    }
}

/// Flags merged with their config-file fallbacks, still unvalidated.
#[derive(Debug)]
pub struct Merged {
    pub model: Option<String>,
    pub n: Option<usize>,
    pub n1: Option<usize>,
    pub n2: Option<usize>,
    pub grid: Option<String>,
    pub index: Vec<String>,
    pub alpha: Vec<f64>,
    pub beta: Option<f64>,
    pub replicas: Option<usize>,
    pub spectral_replicas: Option<usize>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub sizes: Vec<usize>,
    pub threshold: Option<f64>,
    pub inputs: Vec<PathBuf>,
}

pub fn merge(args: &CommonArgs, extra_spectral: Option<usize>) -> CliResult<Merged> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    Ok(Merged {
        model: args.model.clone().or(file.model),
        n: args.n.or(file.n),
        n1: args.n1.or(file.n1),
        n2: args.n2.or(file.n2),
        grid: args.grid.clone().or(file.grid),
        index: if args.index.is_empty() {
            file.index.unwrap_or_default()
        } else {
            args.index.clone()
        },
        alpha: if args.alpha.is_empty() {
            file.alpha.unwrap_or_default()
        } else {
            args.alpha.clone()
        },
        beta: args.beta.or(file.beta),
        replicas: args.replicas.or(file.replicas),
        spectral_replicas: extra_spectral.or(file.spectral_replicas),
        seed: args.seed.or(file.seed).unwrap_or(1),
        out: args.out.clone().or(file.out),
        format: args.format.clone().or(file.format),
        sizes: file.sizes.unwrap_or_default(),
        threshold: file.threshold,
        inputs: file.inputs.unwrap_or_default(),
    })
}

impl Merged {
    pub fn family(&self) -> CliResult<ModelFamily> {
        let model = self
            .model
            .as_deref()
            .ok_or_else(|| CliError::config("--model is required (er, rg, or br)"))?;
        match model {
            "er" | "rg" => {
                let n = self.n.ok_or_else(|| {
                    CliError::config(format!("--n is required for model {model}"))
                })?;
                if self.n1.is_some() || self.n2.is_some() {
                    return Err(CliError::config("--n1/--n2 only apply to the br model"));
                }
                Ok(if model == "er" {
                    ModelFamily::Er { n }
                } else {
                    ModelFamily::Rg { n }
                })
            }
            "br" => {
                let n1 = self
                    .n1
                    .ok_or_else(|| CliError::config("--n1 is required for model br"))?;
                let n2 = self
                    .n2
                    .ok_or_else(|| CliError::config("--n2 is required for model br"))?;
                if self.n.is_some() {
                    return Err(CliError::config(
                        "use --n1/--n2 instead of --n for model br",
                    ));
                }
                Ok(ModelFamily::Br { n1, n2 })
            }
            other => Err(CliError::config(format!(
                "unknown model '{other}' (expected er, rg, or br)"
            ))),
        }
    }

    /// Replica default follows the ensemble-size convention `1e7 / n`
    /// capped at a desk-scale budget.
    pub fn replicas_for(&self, n: usize) -> usize {
        self.replicas
            .unwrap_or_else(|| (((1e7 / n as f64).ceil()) as usize).clamp(1, 2000))
    }

    pub fn grid(&self) -> CliResult<GridSpec> {
        let text = self
            .grid
            .as_deref()
            .ok_or_else(|| CliError::config("--grid is required"))?;
        parse_grid(text)
    }

    pub fn index_specs(&self) -> CliResult<Vec<IndexSpec>> {
        resolve_index_specs(&self.index, &self.alpha, self.beta)
    }

    /// Output format, by explicit flag first, file extension second.
    pub fn format_for(&self, path: &Path) -> CliResult<OutputFormat> {
        match self.format.as_deref() {
            Some("csv") => Ok(OutputFormat::Csv),
            Some("json") => Ok(OutputFormat::Json),
            Some(other) => Err(CliError::config(format!(
                "unknown format '{other}' (expected csv or json)"
            ))),
            None => Ok(match path.extension().and_then(|e| e.to_str()) {
                Some("json") => OutputFormat::Json,
                _ => OutputFormat::Csv,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// A parsed grid: either target mean degrees (inverted through each model's
/// analytic formula) or raw control values.
#[derive(Debug, Clone)]
pub enum GridSpec {
    MeanDegree(Vec<f64>),
    Control(Vec<f64>),
}

pub fn parse_grid(text: &str) -> CliResult<GridSpec> {
    let (domain, rest) = match text.split_once(':') {
        Some(("k", rest)) => ("k", rest),
        Some(("control", rest)) => ("control", rest),
        _ => ("k", text),
    };
    let values = if let Some(spec) = rest.strip_prefix("log:") {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::config(format!(
                "log grid must be log:lo:hi:count, got '{rest}'"
            )));
        }
        let lo: f64 = parse_num(parts[0], "grid lower bound")?;
        let hi: f64 = parse_num(parts[1], "grid upper bound")?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| CliError::config(format!("malformed grid count '{}'", parts[2])))?;
        sombor::ensemble::mean_degree_grid(lo, hi, count).map_err(CliError::from)?
    } else {
        rest.split(',')
            .map(|v| parse_num(v.trim(), "grid value"))
            .collect::<CliResult<Vec<f64>>>()?
    };
    if values.is_empty() {
        return Err(CliError::config("grid is empty"));
    }
    Ok(match domain {
        "k" => GridSpec::MeanDegree(values),
        _ => GridSpec::Control(values),
    })
}

fn parse_num(text: &str, what: &str) -> CliResult<f64> {
    text.parse()
        .map_err(|_| CliError::config(format!("malformed {what} '{text}'")))
}

/// Expands named-index selectors plus alpha/beta parameters into concrete
/// specs, deduplicating while preserving order. A bare alpha list with a
/// beta is shorthand for the `ka` selector.
pub fn resolve_index_specs(
    names: &[String],
    alphas: &[f64],
    beta: Option<f64>,
) -> CliResult<Vec<IndexSpec>> {
    let mut names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    if names.is_empty() && !alphas.is_empty() {
        names.push("ka");
    }
    if names.is_empty() {
        return Err(CliError::config(
            "no indices requested: pass --index and/or --alpha/--beta",
        ));
    }
    let mut specs: Vec<IndexSpec> = Vec::new();
    let push = |spec: IndexSpec, specs: &mut Vec<IndexSpec>| {
        if !specs.contains(&spec) {
            specs.push(spec);
        }
    };
    for name in names {
        match name {
            "sombor" => push(IndexSpec::sombor(), &mut specs),
            "msombor" => push(IndexSpec::modified_sombor(), &mut specs),
            "bsombor" => push(IndexSpec::banhatti_sombor(), &mut specs),
            "asombor" => {
                require_alphas(alphas, "asombor")?;
                for &a in alphas {
                    push(IndexSpec::alpha_sombor(a)?, &mut specs);
                }
            }
            "complexity" => {
                require_alphas(alphas, "complexity")?;
                for &a in alphas {
                    push(IndexSpec::complexity(a)?, &mut specs);
                }
            }
            "sumconn" => {
                let b = beta.ok_or_else(|| CliError::config("sumconn requires --beta"))?;
                push(IndexSpec::sum_connectivity(b)?, &mut specs);
            }
            "ka" => {
                require_alphas(alphas, "ka")?;
                let b = beta.ok_or_else(|| CliError::config("ka requires --beta"))?;
                for &a in alphas {
                    push(IndexSpec::new(a, b)?, &mut specs);
                }
            }
            other => {
                return Err(CliError::config(format!(
                    "unknown index '{other}' (expected sombor, msombor, bsombor, asombor, \
                     sumconn, complexity, or ka)"
                )))
            }
        }
    }
    Ok(specs)
}

fn require_alphas(alphas: &[f64], what: &str) -> CliResult<()> {
    if alphas.is_empty() {
        Err(CliError::config(format!("{what} requires --alpha values")))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_forms() {
        match parse_grid("k:1,2,5").unwrap() {
            GridSpec::MeanDegree(v) => assert_eq!(v, vec![1.0, 2.0, 5.0]),
            _ => panic!("expected mean-degree grid"),
        }
        match parse_grid("10,20").unwrap() {
            GridSpec::MeanDegree(v) => assert_eq!(v, vec![10.0, 20.0]),
            _ => panic!("bare grids default to mean degree"),
        }
        match parse_grid("control:log:0.01:1:3").unwrap() {
            GridSpec::Control(v) => {
                assert_eq!(v.len(), 3);
                assert!((v[1] - 0.1).abs() < 1e-12);
            }
            _ => panic!("expected control grid"),
        }
        assert!(parse_grid("k:log:1:20").is_err());
        assert!(parse_grid("k:1,x").is_err());
        assert!(parse_grid("control:log:0:1:5").is_err());
    }

    #[test]
    fn index_resolution() {
        let specs = resolve_index_specs(
            &["sombor".into(), "msombor".into(), "sombor".into()],
            &[],
            None,
        )
        .unwrap();
        assert_eq!(
            specs,
            vec![IndexSpec::sombor(), IndexSpec::modified_sombor()]
        );

        let specs = resolve_index_specs(&[], &[-2.0, 1.0], Some(0.5)).unwrap();
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[0], IndexSpec::new(-2.0, 0.5).unwrap());

        let specs = resolve_index_specs(&["complexity".into()], &[2.0], None).unwrap();
        assert_eq!(specs, vec![IndexSpec::complexity(2.0).unwrap()]);

        assert!(resolve_index_specs(&["asombor".into()], &[0.0], None).is_err());
        assert!(resolve_index_specs(&["ka".into()], &[1.0], None).is_err());
        assert!(resolve_index_specs(&["nope".into()], &[], None).is_err());
        assert!(resolve_index_specs(&[], &[], None).is_err());
    }
}
