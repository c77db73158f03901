//! The JSON input format and its validation into core types.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use chowcalc_core::abelian::{in_column_lattice, IntMatrix, PresentedGroup};
use chowcalc_core::chowcalc::{ChowError, PicData, ResolutionData, SmoothTwoStep};
use chowcalc_core::dualcomplex::{build_dual_complex, DualComplex, Stratum};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Divisor,
    Variety,
    Surface,
    #[serde(rename = "smooth-2res")]
    SmoothTwoStep,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Divisor => "divisor",
            Mode::Variety => "variety",
            Mode::Surface => "surface",
            Mode::SmoothTwoStep => "smooth-2res",
        }
    }
}

/// `Z^generators` modulo the listed relation vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumConfig {
    pub id: String,
    pub indices: Vec<usize>,
    #[serde(default = "yes")]
    pub irreducible: bool,
    #[serde(default)]
    pub faces: Option<Vec<String>>,
    #[serde(default)]
    pub pic: Option<GroupConfig>,
    #[serde(default)]
    pub continuous_part: Option<String>,
    #[serde(default)]
    pub lies_over: Option<usize>,
}

fn yes() -> bool {
    true
}

fn one() -> usize {
    1
}

/// Restriction `Pic(from) -> Pic(to)`, a `gens(to) x gens(from)` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionConfig {
    pub from: String,
    pub to: String,
    pub matrix: Vec<Vec<i64>>,
}

/// Restriction `Pic(X~) -> Pic(E_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRestriction {
    pub to: String,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionConfig {
    pub pic: GroupConfig,
    #[serde(default)]
    pub restrictions: Vec<ComponentRestriction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentCounts {
    #[serde(default = "one")]
    pub resolution: usize,
    #[serde(default = "one")]
    pub singular: usize,
    #[serde(default = "one")]
    pub exceptional: usize,
}

impl Default for ComponentCounts {
    fn default() -> Self {
        ComponentCounts { resolution: 1, singular: 1, exceptional: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidenceConfig {
    pub resolution: Vec<usize>,
    pub singular: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothConfig {
    pub pic_resolution: GroupConfig,
    pub pic_singular: GroupConfig,
    pub pic_exceptional: GroupConfig,
    pub from_resolution: Vec<Vec<i64>>,
    pub from_singular: Vec<Vec<i64>>,
    #[serde(default)]
    pub components: ComponentCounts,
    #[serde(default)]
    pub incidence: Option<IncidenceConfig>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub report: Option<PathBuf>,
    #[serde(default)]
    pub json: Option<PathBuf>,
    #[serde(default)]
    pub dot: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub schema_version: u32,
    pub mode: Mode,
    pub dimension: usize,
    #[serde(default = "one")]
    pub singular_points: usize,
    #[serde(default)]
    pub strata: Vec<StratumConfig>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionConfig>,
    #[serde(default)]
    pub resolution: Option<ResolutionConfig>,
    #[serde(default)]
    pub smooth_resolution: Option<SmoothConfig>,
    #[serde(default)]
    pub user_contractible: Option<bool>,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Validated input, ready for the core.
#[derive(Clone, Debug)]
pub enum Input {
    Divisor(ResolutionData),
    Variety {
        data: ResolutionData,
        pic_resolution: PresentedGroup,
        restriction: IntMatrix,
    },
    Surface {
        data: ResolutionData,
        pic_resolution: PresentedGroup,
        restriction: IntMatrix,
    },
    SmoothTwoStep(SmoothTwoStep),
}

impl Input {
    pub fn gamma(&self) -> Option<&DualComplex> {
        match self {
            Input::Divisor(d) => Some(d.gamma()),
            Input::Variety { data, .. } | Input::Surface { data, .. } => Some(data.gamma()),
            Input::SmoothTwoStep(_) => None,
        }
    }
}

pub fn load_config(path: &Path) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}

/// Parses and validates. Syntax errors are `Parse`, missing, unknown or
/// ill-typed fields are `Schema`, dangling ids and shape errors are
/// `Consistency`.
pub fn parse_config(text: &str) -> Result<Config, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let config: Config = serde_path_to_error::deserialize(value).map_err(|e| CliError::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    if config.schema_version != SCHEMA_VERSION {
        return Err(CliError::Schema {
            path: "schema_version".into(),
            message: format!("unsupported version {}, expected {SCHEMA_VERSION}", config.schema_version),
        });
    }
    config.validate()?;
    Ok(config)
}

fn consistency(location: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Consistency {
        location: location.into(),
        message: message.into(),
    }
}

fn matrix(rows: &[Vec<i64>], shape: (usize, usize), location: &str) -> Result<IntMatrix, CliError> {
    let (r, c) = shape;
    let ok = rows.len() == r && rows.iter().all(|row| row.len() == c);
    // an empty list stands for any matrix with no entries
    if !ok && !(rows.is_empty() && r * c == 0) {
        let got_cols = rows.first().map_or(0, Vec::len);
        return Err(consistency(
            location,
            format!("expected a {r}x{c} matrix, got {}x{got_cols}", rows.len()),
        ));
    }
    let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
    Ok(if rows.is_empty() { IntMatrix::zeros(r, c) } else { IntMatrix::from_vec(r, c, data) })
}

impl GroupConfig {
    pub fn to_group(&self, location: &str) -> Result<PresentedGroup, CliError> {
        let n = self.generators;
        for (k, rel) in self.relations.iter().enumerate() {
            if rel.len() != n {
                return Err(consistency(
                    format!("{location}.relations[{k}]"),
                    format!("relation has {} entries but there are {n} generators", rel.len()),
                ));
            }
        }
        let columns = matrix(&self.relations, (self.relations.len(), n), location)?;
        PresentedGroup::new(n, columns.transpose()).map_err(|e| consistency(location, e.to_string()))
    }
}

impl Config {
    fn validate(&self) -> Result<(), CliError> {
        if self.dimension < 2 {
            return Err(consistency("dimension", format!("must be at least 2, got {}", self.dimension)));
        }
        match self.mode {
            Mode::SmoothTwoStep => {
                if self.smooth_resolution.is_none() {
                    return Err(CliError::Schema {
                        path: "smooth_resolution".into(),
                        message: "required in smooth-2res mode".into(),
                    });
                }
                for (field, present) in [
                    ("strata", !self.strata.is_empty()),
                    ("restrictions", !self.restrictions.is_empty()),
                    ("resolution", self.resolution.is_some()),
                ] {
                    if present {
                        return Err(CliError::Schema {
                            path: field.into(),
                            message: "not used in smooth-2res mode".into(),
                        });
                    }
                }
            }
            mode => {
                if self.strata.is_empty() {
                    return Err(CliError::Schema {
                        path: "strata".into(),
                        message: "at least one stratum is required".into(),
                    });
                }
                if self.smooth_resolution.is_some() {
                    return Err(CliError::Schema {
                        path: "smooth_resolution".into(),
                        message: format!("not used in {} mode", mode.as_str()),
                    });
                }
                let needs_resolution = mode != Mode::Divisor;
                if needs_resolution != self.resolution.is_some() {
                    return Err(CliError::Schema {
                        path: "resolution".into(),
                        message: if needs_resolution {
                            format!("required in {} mode", mode.as_str())
                        } else {
                            "not used in divisor mode".into()
                        },
                    });
                }
                self.check_ids()?;
            }
        }
        self.to_input().map(|_| ())
    }

    fn check_ids(&self) -> Result<(), CliError> {
        let mut ids = BTreeSet::new();
        for (k, s) in self.strata.iter().enumerate() {
            if !ids.insert(s.id.as_str()) {
                return Err(consistency(format!("strata[{k}].id"), format!("duplicate id {}", s.id)));
            }
        }
        let known = |id: &str, location: String| {
            if ids.contains(id) {
                Ok(())
            } else {
                Err(consistency(location, format!("unknown stratum {id}")))
            }
        };
        for (k, s) in self.strata.iter().enumerate() {
            for (j, f) in s.faces.iter().flatten().enumerate() {
                known(f, format!("strata[{k}].faces[{j}]"))?;
            }
        }
        for (k, r) in self.restrictions.iter().enumerate() {
            known(&r.from, format!("restrictions[{k}].from"))?;
            known(&r.to, format!("restrictions[{k}].to"))?;
        }
        if let Some(res) = &self.resolution {
            for (k, r) in res.restrictions.iter().enumerate() {
                known(&r.to, format!("resolution.restrictions[{k}].to"))?;
            }
        }
        Ok(())
    }

    /// Builds the core input; all remaining validation happens here.
    pub fn to_input(&self) -> Result<Input, CliError> {
        if self.mode == Mode::SmoothTwoStep {
            return self.smooth_input();
        }
        let strata: Vec<Stratum> = self
            .strata
            .iter()
            .map(|s| Stratum {
                id: s.id.clone(),
                indices: s.indices.clone(),
                irreducible: s.irreducible,
                faces: s.faces.clone(),
            })
            .collect();
        let gamma = build_dual_complex(&strata).map_err(|e| consistency("strata", e.to_string()))?;

        let mut pic = PicData::new();
        let mut groups = BTreeMap::new();
        for (k, s) in self.strata.iter().enumerate() {
            if let Some(g) = &s.pic {
                let group = g.to_group(&format!("strata[{k}].pic"))?;
                groups.insert(s.id.clone(), group.clone());
                pic.set_group(s.id.clone(), group);
            }
            if let Some(label) = &s.continuous_part {
                pic.set_continuous_part(s.id.clone(), label.clone());
            }
        }
        let gens = |id: &str| groups.get(id).map_or(0, PresentedGroup::generators);
        let mut seen = BTreeSet::new();
        for (k, r) in self.restrictions.iter().enumerate() {
            let location = format!("restrictions[{k}].matrix");
            if !seen.insert((r.from.clone(), r.to.clone())) {
                return Err(consistency(
                    format!("restrictions[{k}]"),
                    format!("restriction {} -> {} given twice", r.from, r.to),
                ));
            }
            let m = matrix(&r.matrix, (gens(&r.to), gens(&r.from)), &location)?;
            pic.set_restriction(r.from.clone(), r.to.clone(), m);
        }

        let mut lies_over = BTreeMap::new();
        for (k, s) in self.strata.iter().enumerate() {
            if let Some(x) = s.lies_over {
                if s.indices.len() != 1 {
                    return Err(consistency(
                        format!("strata[{k}].lies_over"),
                        "only components (one index) lie over a singular point",
                    ));
                }
                lies_over.insert(s.id.clone(), x);
            }
        }
        let mut data = ResolutionData::new(self.dimension, self.singular_points, gamma, pic, &lies_over)
            .map_err(|e| {
                let location = match e {
                    ChowError::MissingRestriction { .. } | ChowError::ShapeMismatch(_) => "restrictions",
                    _ => "strata",
                };
                consistency(location, e.to_string())
            })?;
        if let Some(flag) = self.user_contractible {
            data = data.with_user_contractible(flag);
        }

        let Some(res) = &self.resolution else {
            return Ok(Input::Divisor(data));
        };
        let pic_resolution = res.pic.to_group("resolution.pic")?;
        let n = pic_resolution.generators();
        let components = data.gamma().cells(0);
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for c in components {
            offsets.insert(c.id.clone(), total);
            total += gens(&c.id);
        }
        let mut restriction = IntMatrix::zeros(total, n);
        let mut given = BTreeSet::new();
        for (k, r) in res.restrictions.iter().enumerate() {
            let Some(&off) = offsets.get(&r.to) else {
                return Err(consistency(
                    format!("resolution.restrictions[{k}].to"),
                    format!("{} is not a component of the divisor", r.to),
                ));
            };
            if !given.insert(r.to.clone()) {
                return Err(consistency(
                    format!("resolution.restrictions[{k}]"),
                    format!("restriction to {} given twice", r.to),
                ));
            }
            let m = matrix(&r.matrix, (gens(&r.to), n), &format!("resolution.restrictions[{k}].matrix"))?;
            restriction.set_block(off, 0, &m);
        }
        for c in components {
            if !given.contains(&c.id) && gens(&c.id) > 0 && n > 0 {
                return Err(consistency(
                    "resolution.restrictions",
                    format!("no restriction given for Pic(X~) -> Pic({})", c.id),
                ));
            }
        }
        for c in components {
            if let (Some(&off), Some(g)) = (offsets.get(&c.id), groups.get(&c.id)) {
                let block = restriction.submatrix(off..off + g.generators(), 0..n);
                if !in_column_lattice(g.relations(), &(&block * pic_resolution.relations())) {
                    return Err(consistency(
                        "resolution.restrictions",
                        format!("restriction to {} does not respect the relations of Pic(X~)", c.id),
                    ));
                }
            }
        }
        Ok(match self.mode {
            Mode::Variety => Input::Variety { data, pic_resolution, restriction },
            _ => Input::Surface { data, pic_resolution, restriction },
        })
    }

    fn smooth_input(&self) -> Result<Input, CliError> {
        let s = self.smooth_resolution.as_ref().expect("checked by validate");
        let pic_resolution = s.pic_resolution.to_group("smooth_resolution.pic_resolution")?;
        let pic_singular = s.pic_singular.to_group("smooth_resolution.pic_singular")?;
        let pic_exceptional = s.pic_exceptional.to_group("smooth_resolution.pic_exceptional")?;
        let ge = pic_exceptional.generators();
        let from_resolution = matrix(
            &s.from_resolution,
            (ge, pic_resolution.generators()),
            "smooth_resolution.from_resolution",
        )?;
        let from_singular = matrix(
            &s.from_singular,
            (ge, pic_singular.generators()),
            "smooth_resolution.from_singular",
        )?;
        for (name, m, src) in [
            ("from_resolution", &from_resolution, &pic_resolution),
            ("from_singular", &from_singular, &pic_singular),
        ] {
            if !in_column_lattice(pic_exceptional.relations(), &(m * src.relations())) {
                return Err(consistency(
                    format!("smooth_resolution.{name}"),
                    "map does not respect the relations of its source",
                ));
            }
        }
        let c = &s.components;
        if c.resolution == 0 || c.singular == 0 || c.exceptional == 0 {
            return Err(consistency("smooth_resolution.components", "component counts must be positive"));
        }
        let incidence = s.incidence.as_ref().map(|i| (i.resolution.clone(), i.singular.clone()));
        Ok(Input::SmoothTwoStep(SmoothTwoStep {
            pic_resolution,
            pic_singular,
            pic_exceptional,
            from_resolution,
            from_singular,
            components: (c.resolution, c.singular, c.exceptional),
            incidence,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
    }

    fn location(e: CliError) -> String {
        match e {
            CliError::Consistency { location, message } => format!("{location}: {message}"),
            CliError::Schema { path, message } => format!("{path}: {message}"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn minimal_single_vertex() {
        let c = parse_config(r#"{"schema_version":1,"mode":"divisor","dimension":3,"strata":[{"id":"E1","indices":[1]}]}"#)
            .unwrap();
        assert_eq!(c.mode, Mode::Divisor);
        assert_eq!(c.singular_points, 1);
        assert!(matches!(c.to_input().unwrap(), Input::Divisor(_)));
    }

    #[test]
    fn dangling_stratum_is_named() {
        let e = parse_config(
            r#"{"schema_version":1,"mode":"divisor","dimension":3,
                "strata":[{"id":"E1","indices":[1]},{"id":"E2","indices":[2]}],
                "restrictions":[{"from":"E1","to":"E12","matrix":[]}]}"#,
        )
        .unwrap_err();
        assert!(matches!(e, CliError::Consistency { .. }));
        let text = location(e);
        assert!(text.contains("E12"), "{text}");
        assert!(text.starts_with("restrictions[0].to"), "{text}");
    }

    #[test]
    fn hollow_triangle_fixture() {
        let c = load_config(&fixture("hollow-triangle.json")).unwrap();
        assert_eq!(c.strata.len(), 6);
        assert_eq!(c.dimension, 3);
        let input = c.to_input().unwrap();
        let gamma = input.gamma().unwrap();
        assert_eq!((gamma.vertex_count(), gamma.edge_count()), (3, 3));
    }

    #[test]
    fn every_fixture_loads() {
        for entry in std::fs::read_dir(fixture("")).unwrap() {
            let path = entry.unwrap().path();
            let c = load_config(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            c.to_input().unwrap();
        }
    }

    #[test]
    fn schema_errors_carry_paths() {
        let e = parse_config(r#"{"schema_version":1,"mode":"divisor","dimension":3,"strata":[{"id":"E1","indices":[1],"pic":{"gens":1}}]}"#)
            .unwrap_err();
        assert!(location(e).starts_with("strata[0].pic"));
        let e = parse_config(r#"{"schema_version":2,"mode":"divisor","dimension":3,"strata":[{"id":"E1","indices":[1]}]}"#)
            .unwrap_err();
        assert!(location(e).starts_with("schema_version"));
        let e = parse_config(r#"{"schema_version":1,"mode":"threefold","dimension":3,"strata":[]}"#).unwrap_err();
        assert!(location(e).starts_with("mode"));
        let e = parse_config(r#"{"schema_version":1,"mode":"smooth-2res","dimension":3}"#).unwrap_err();
        assert!(location(e).starts_with("smooth_resolution"));
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_config("{\n  \"schema_version\": 1,\n  oops\n}").unwrap_err() {
            CliError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn shape_mismatches() {
        let base = |restriction: &str| {
            format!(
                r#"{{"schema_version":1,"mode":"divisor","dimension":3,
                    "strata":[{{"id":"E1","indices":[1],"pic":{{"generators":2}}}},{{"id":"E2","indices":[2]}},
                              {{"id":"E12","indices":[1,2],"pic":{{"generators":1}}}}],
                    "restrictions":[{restriction}]}}"#
            )
        };
        let ok = parse_config(&base(r#"{"from":"E1","to":"E12","matrix":[[1,2]]}"#)).unwrap();
        ok.to_input().unwrap();
        let e = parse_config(&base(r#"{"from":"E1","to":"E12","matrix":[[1],[2]]}"#))
            .and_then(|c| c.to_input())
            .unwrap_err();
        assert!(location(e).contains("1x2"));
        let e = parse_config(
            r#"{"schema_version":1,"mode":"divisor","dimension":3,
                "strata":[{"id":"E1","indices":[1],"pic":{"generators":2,"relations":[[1,2,3]]}}]}"#,
        )
        .and_then(|c| c.to_input())
        .unwrap_err();
        assert!(location(e).starts_with("strata[0].pic.relations[0]"));
    }

    #[test]
    fn duplicate_ids_and_small_dimension() {
        let e = parse_config(r#"{"schema_version":1,"mode":"divisor","dimension":3,"strata":[{"id":"E1","indices":[1]},{"id":"E1","indices":[2]}]}"#)
            .unwrap_err();
        assert!(location(e).starts_with("strata[1].id"));
        let e = parse_config(r#"{"schema_version":1,"mode":"divisor","dimension":1,"strata":[{"id":"E1","indices":[1]}]}"#)
            .unwrap_err();
        assert!(location(e).starts_with("dimension"));
    }
}
