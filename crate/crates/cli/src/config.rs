use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use nalgebra::DVector;
use qergodic::catalog::{
    central_state, classical, classical_state, dual, kac_paljutkin, pure_state, regular_representation,
    state_from_positive_definite, ClassicalStateSpec, FiniteGroup, GroupSpec, Origin,
};
use qergodic::hopf::FiniteQuantumGroup;
use qergodic::multimatrix::AlgebraElement;
use qergodic::walks::WalkState;
use qergodic::C64;
use serde::Deserialize;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Vectors entered by hand are accepted this far from unit norm and then normalised.
pub const XI_NORM_TOL: f64 = 1e-4;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkConfig {
    #[serde(default)]
    pub schema: Option<u32>,
    pub group: GroupConfig,
    pub state: StateConfig,
    #[serde(default)]
    pub kmax: Option<u64>,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cyclic,
    Symmetric,
    Dihedral,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalConfig {
    #[serde(default)]
    pub family: Option<Family>,
    #[serde(default)]
    pub n: Option<usize>,
    /// JSON file with `table` and optional `names`, relative to the config file.
    #[serde(default)]
    pub cayley: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub family: Family,
    pub n: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupConfig {
    Classical(ClassicalConfig),
    Dual(FamilyConfig),
    KacPaljutkin,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Name(String),
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl Scalar {
    fn value(self) -> C64 {
        match self {
            Scalar::Real(x) => C64::new(x, 0.0),
            Scalar::Complex([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StateConfig {
    Point(ElementRef),
    Uniform(Vec<ElementRef>),
    Weights(Vec<f64>),
    PositiveDefinite {
        rep: String,
        xi: Vec<Scalar>,
    },
    Pure {
        block: usize,
        vector: Vec<Scalar>,
    },
    /// Density in canonical block coordinates.
    Density(Vec<Scalar>),
    /// Coefficients of the character elements.
    Central(Vec<Scalar>),
    Haar,
    Counit,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CayleyFile {
    table: Vec<Vec<usize>>,
    #[serde(default)]
    names: Option<Vec<String>>,
}

fn config_error(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

/// Parses JSON text, reporting the offending field path together with line and column.
pub fn parse_config(text: &str) -> Result<WalkConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: WalkConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Config(format!("at `{path}` (line {}, column {}): {inner}", inner.line(), inner.column()))
    })?;
    if let Some(v) = config.schema {
        if v != SCHEMA_VERSION {
            return Err(CliError::Config(format!("at `schema`: unsupported version {v}, expected {SCHEMA_VERSION}")));
        }
    }
    if let Some(t) = config.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Config(format!("at `tol`: expected a positive tolerance, got {t}")));
        }
    }
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<(WalkConfig, PathBuf), CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((parse_config(&text)?, base))
}

fn family_spec(family: Family, n: usize) -> GroupSpec {
    match family {
        Family::Cyclic => GroupSpec::Cyclic(n),
        Family::Symmetric => GroupSpec::Symmetric(n),
        Family::Dihedral => GroupSpec::Dihedral(n),
    }
}

/// Library errors raised while building the walk are configuration errors, except
/// combinations the library does not support.
fn build_error(e: qergodic::Error) -> CliError {
    match e {
        qergodic::Error::Unsupported(m) => CliError::Unsupported(m),
        other => CliError::Config(other.to_string()),
    }
}

impl GroupConfig {
    pub fn resolve(&self, base: &Path) -> Result<Arc<FiniteQuantumGroup>, CliError> {
        match self {
            GroupConfig::Classical(c) => {
                let spec = match (c.family, c.n, &c.cayley) {
                    (Some(f), Some(n), None) => family_spec(f, n),
                    (None, None, Some(path)) => {
                        let full = base.join(path);
                        let text = fs::read_to_string(&full)
                            .map_err(|e| config_error(format!("cannot read {}: {e}", full.display())))?;
                        let file: CayleyFile = serde_json::from_str(&text)
                            .map_err(|e| config_error(format!("in {}: {e}", full.display())))?;
                        GroupSpec::FromCayley { table: file.table, names: file.names }
                    }
                    _ => {
                        return Err(config_error("at `group.classical`: give either `family` and `n`, or `cayley`"));
                    }
                };
                classical(&spec).map_err(build_error)
            }
            GroupConfig::Dual(f) => dual(&family_spec(f.family, f.n)).map_err(build_error),
            GroupConfig::KacPaljutkin => kac_paljutkin().map_err(build_error),
        }
    }
}

fn element_index(group: &FiniteGroup, e: &ElementRef) -> Result<usize, CliError> {
    match e {
        ElementRef::Index(i) if *i < group.order() => Ok(*i),
        ElementRef::Index(i) => Err(config_error(format!("at `state`: no element {i} in {}", group.label()))),
        ElementRef::Name(n) => group
            .index_of(n)
            .ok_or_else(|| config_error(format!("at `state`: no element named {n:?} in {}", group.label()))),
    }
}

fn unit_vector(values: &[Scalar], field: &str) -> Result<DVector<C64>, CliError> {
    let v = DVector::from_iterator(values.len(), values.iter().map(|s| s.value()));
    let norm = v.norm();
    if (norm - 1.0).abs() > XI_NORM_TOL {
        return Err(config_error(format!("at `state.{field}`: vector has norm {norm}, expected 1")));
    }
    Ok(v.unscale(norm))
}

fn representation(g: &FiniteQuantumGroup, rep: &str) -> Result<Vec<nalgebra::DMatrix<C64>>, CliError> {
    let Origin::Dual { group, irreps, .. } = g.origin() else {
        return Err(CliError::Unsupported("positive-definite states need a dual group".into()));
    };
    match rep {
        "permutation" => qergodic::catalog::permutation_representation(group).map_err(build_error),
        "regular" => Ok(regular_representation(group)),
        name => irreps.find(name).map(|r| r.matrices.clone()).ok_or_else(|| {
            let known: Vec<&str> = irreps.irreps().iter().map(|r| r.name.as_str()).collect();
            config_error(format!(
                "at `state.positive_definite.rep`: unknown representation {name:?}; expected permutation, regular or one of {known:?}"
            ))
        }),
    }
}

impl StateConfig {
    pub fn resolve(&self, g: &Arc<FiniteQuantumGroup>) -> Result<WalkState, CliError> {
        let classical_group = || {
            g.origin()
                .group()
                .filter(|_| g.origin().kind() == "classical")
                .ok_or_else(|| CliError::Unsupported("point, uniform and weights states need a classical group".into()))
        };
        match self {
            StateConfig::Point(e) => {
                let s = element_index(classical_group()?, e)?;
                classical_state(g, &ClassicalStateSpec::Point(s)).map_err(build_error)
            }
            StateConfig::Uniform(es) => {
                let group = classical_group()?;
                let set = es.iter().map(|e| element_index(group, e)).collect::<Result<Vec<_>, _>>()?;
                classical_state(g, &ClassicalStateSpec::Uniform(set)).map_err(build_error)
            }
            StateConfig::Weights(w) => classical_state(g, &ClassicalStateSpec::Weights(w.clone())).map_err(build_error),
            StateConfig::PositiveDefinite { rep, xi } => {
                let rho = representation(g, rep)?;
                let xi = unit_vector(xi, "positive_definite.xi")?;
                state_from_positive_definite(g, &rho, &xi).map_err(build_error)
            }
            StateConfig::Pure { block, vector } => {
                pure_state(g, *block, &unit_vector(vector, "pure.vector")?).map_err(build_error)
            }
            StateConfig::Density(coords) => {
                let v = DVector::from_iterator(coords.len(), coords.iter().map(|s| s.value()));
                let f = AlgebraElement::from_coords(g.algebra(), &v).map_err(build_error)?;
                WalkState::from_density(g, f).map_err(build_error)
            }
            StateConfig::Central(cs) => {
                let cs: Vec<C64> = cs.iter().map(|s| s.value()).collect();
                central_state(g, &cs).map_err(build_error)
            }
            StateConfig::Haar => Ok(WalkState::haar(g)),
            StateConfig::Counit => Ok(WalkState::counit(g)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inline_examples() {
        let c = parse_config(r#"{"group":{"classical":{"family":"cyclic","n":4}},"state":{"point":2}}"#).unwrap();
        assert!(matches!(c.state, StateConfig::Point(ElementRef::Index(2))));
        let c = parse_config(r#"{"group":"kac_paljutkin","state":"haar","schema":1}"#).unwrap();
        assert!(matches!(c.group, GroupConfig::KacPaljutkin));
        let c = parse_config(r#"{"group":{"dual":{"family":"symmetric","n":3}},"state":{"positive_definite":{"rep":"standard","xi":[[1,0],[0,1]]}}}"#).unwrap();
        let StateConfig::PositiveDefinite { xi, .. } = c.state else { panic!() };
        assert_eq!(xi[1].value(), C64::new(0.0, 1.0));
    }

    #[test]
    fn unknown_fields_name_their_path() {
        let err = parse_config(r#"{"group":{"dual":{"family":"cyclic","n":3,"m":1}},"state":"haar"}"#).unwrap_err();
        let CliError::Config(msg) = err else { panic!() };
        assert!(msg.contains("group.dual"), "{msg}");
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn rejects_other_schema_versions() {
        assert!(matches!(
            parse_config(r#"{"schema":2,"group":"kac_paljutkin","state":"haar"}"#),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn xi_is_normalised_within_tolerance() {
        let v = unit_vector(&[Scalar::Real(0.7071), Scalar::Real(-0.7071), Scalar::Real(0.0)], "xi").unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-15);
        assert!(unit_vector(&[Scalar::Real(1.0), Scalar::Real(1.0)], "xi").is_err());
    }
}
