//! Declarative bundle files (TOML): named references to a Hopf algebra,
//! module/comodule data, the distinguished grouplike or character, the
//! construction kind, and computation limits.

use std::path::Path;

use serde::Deserialize;

use crate::cyclic::DEFAULT_DIMENSION_BUDGET;
use crate::error::{Error, Result};
use crate::hopf::{
    dual_hopf, group_algebra, group_character, sweedler_algebra, GroupTable, HopfAlgebra,
};
use crate::matrix::{SparseMatrix, SparseVec};
use crate::module::{
    character_module, grouplike_comodule, self_comodule_algebra, self_module_coalgebra,
    trivial_comodule, trivial_module, truncated_polynomial_algebra, HComodule, HModule,
};
use crate::presentation;
use crate::scalar::Field;
use crate::smash::{build_smash, sign_action_on_dual_numbers, trivial_action, SmashProduct};
use crate::triple::HopfTriple;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    pub kind: String,
    #[serde(default)]
    pub nmax: Option<usize>,
    #[serde(default)]
    pub budget: Option<usize>,
    pub hopf: HopfSpec,
    #[serde(default)]
    pub module: Option<ModuleSpec>,
    #[serde(default)]
    pub sigma: Option<String>,
    #[serde(default)]
    pub delta: Option<String>,
    #[serde(default)]
    pub smash: Option<SmashSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfSpec {
    #[serde(default)]
    pub builtin: Option<String>,
    #[serde(default)]
    pub file: Option<String>,
    #[serde(default)]
    pub field: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub kind: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmashSpec {
    pub base: String,
    pub action: String,
    #[serde(default)]
    pub pmax: Option<usize>,
    #[serde(default)]
    pub qmax: Option<usize>,
}

pub fn parse_field(text: &str) -> Result<Field> {
    match text {
        "rational" | "Q" => Ok(Field::Rational),
        "rational-function-q" | "Q(q)" => Ok(Field::RationalFunction),
        other => {
            if let Some(p) = other.strip_prefix("prime:").or_else(|| other.strip_prefix("F")) {
                return Field::prime(p.parse().map_err(|_| {
                    Error::structure(format!("invalid prime field `{other}`"))
                })?);
            }
            Err(Error::structure(format!("unknown field `{other}`")))
        }
    }
}

/// Resolve a Hopf algebra reference: a builtin name, possibly wrapped in
/// `dual:`, or a structure/presentation file path.
pub fn resolve_hopf(spec: &HopfSpec, base_dir: &Path) -> Result<HopfAlgebra> {
    let field = spec
        .field
        .as_deref()
        .map(parse_field)
        .transpose()?
        .unwrap_or(Field::Rational);
    if let Some(name) = &spec.builtin {
        return builtin_hopf(name, field);
    }
    if let Some(file) = &spec.file {
        let path = base_dir.join(file);
        let text = std::fs::read_to_string(&path)?;
        if file.ends_with(".hopf") {
            let p = presentation::parse(&text)?;
            return presentation::compile(&p, presentation::DEFAULT_BASIS_BOUND);
        }
        return crate::report::read_hopf_text(&text);
    }
    Err(Error::structure(
        "hopf spec needs either `builtin` or `file`",
    ))
}

pub fn builtin_hopf(name: &str, field: Field) -> Result<HopfAlgebra> {
    if let Some(inner) = name.strip_prefix("dual:") {
        return dual_hopf(&builtin_hopf(inner, field)?);
    }
    match name {
        "kZ2" | "kZ/2" => group_algebra(&GroupTable::cyclic(2), field),
        "kZ3" | "kZ/3" => group_algebra(&GroupTable::cyclic(3), field),
        "kZ4" | "kZ/4" => group_algebra(&GroupTable::cyclic(4), field),
        "kS3" => group_algebra(&GroupTable::symmetric_3(), field),
        "sweedler" => sweedler_algebra(field),
        other => Err(Error::structure(format!("unknown builtin `{other}`"))),
    }
}

/// The distinguished character of a built-in Hopf algebra by name.
pub fn resolve_character(h: &HopfAlgebra, name: &str) -> Result<SparseMatrix> {
    let field = h.field;
    match name {
        "counit" | "eps" => Ok(h.counit.clone()),
        "sign" => {
            // the order-2 character of kZ/n (even n), kZ/2, kS3 or sweedler
            if h.name.contains("S3") {
                Ok(group_character(&GroupTable::symmetric_3(), field, |g| {
                    field.integer(GroupTable::sign_s3(g))
                }))
            } else if h.name == "sweedler" {
                resolve_character(h, "delta")
            } else if h.dim() % 2 == 0 && h.name.starts_with("k[Z/") {
                let n = h.dim();
                Ok(SparseMatrix::from_fn(1, n, field, |g| {
                    SparseVec::from_entries(vec![(
                        0,
                        field.integer(if g % 2 == 0 { 1 } else { -1 }),
                    )])
                })?)
            } else {
                Err(Error::structure(format!(
                    "no sign character for `{}`",
                    h.name
                )))
            }
        }
        "delta" => {
            // sweedler: δ(g) = -1, δ(x) = 0
            if h.name == "sweedler" {
                Ok(SparseMatrix::from_entries(
                    1,
                    4,
                    field,
                    vec![(0, 0, field.one()), (0, 1, field.integer(-1))],
                )?)
            } else {
                Err(Error::structure(format!(
                    "no distinguished character `delta` for `{}`",
                    h.name
                )))
            }
        }
        other => Err(Error::structure(format!("unknown character `{other}`"))),
    }
}

pub fn resolve_module(h: &HopfAlgebra, spec: Option<&ModuleSpec>) -> Result<HModule> {
    let kind = spec.map(|s| s.kind.as_str()).unwrap_or("trivial");
    match kind {
        "trivial" => trivial_module(h),
        "regular" => Ok(HModule {
            space: h.space.clone(),
            action: h.mult.clone(),
            field: h.field,
        }),
        other => {
            let delta = resolve_character(h, other)?;
            character_module(h, &delta, &format!("k_{other}"))
        }
    }
}

pub fn resolve_comodule(h: &HopfAlgebra, spec: Option<&ModuleSpec>) -> Result<HComodule> {
    let kind = spec.map(|s| s.kind.as_str()).unwrap_or("trivial");
    match kind {
        "trivial" => trivial_comodule(h),
        other => {
            let sigma = resolve_grouplike(h, other)?;
            grouplike_comodule(h, &sigma, &format!("k_{other}"))
        }
    }
}

pub fn resolve_grouplike(h: &HopfAlgebra, name: &str) -> Result<SparseVec> {
    if name == "unit" || name == "1" {
        return Ok(h.unit.clone());
    }
    let idx = h
        .space
        .index_of(name)
        .ok_or_else(|| Error::structure(format!("no basis element `{name}`")))?;
    let v = SparseVec::unit(idx, h.field);
    if !crate::hopf::is_grouplike(h, &v) {
        return Err(Error::structure(format!("`{name}` is not grouplike")));
    }
    Ok(v)
}

pub enum Resolved {
    Triple {
        triple: HopfTriple,
        n_max: usize,
        budget: usize,
    },
    Cotriple {
        cotriple: crate::cotriple::HopfCotriple,
        n_max: usize,
        budget: usize,
    },
    Smash {
        smash: SmashProduct,
        module: HModule,
        sigma: SparseVec,
        p_max: usize,
        q_max: usize,
        n_max: usize,
        budget: usize,
    },
}

pub fn load_bundle(path: &Path) -> Result<Bundle> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| Error::structure(format!("bundle parse error: {e}")))
}

pub fn resolve(bundle: &Bundle, base_dir: &Path) -> Result<Resolved> {
    let n_max = bundle.nmax.unwrap_or(3);
    let budget = bundle.budget.unwrap_or(DEFAULT_DIMENSION_BUDGET);
    let hopf = resolve_hopf(&bundle.hopf, base_dir)?;
    match bundle.kind.as_str() {
        "triple" => {
            let module = resolve_module(&hopf, bundle.module.as_ref())?;
            let sigma = resolve_grouplike(&hopf, bundle.sigma.as_deref().unwrap_or("unit"))?;
            let triple = HopfTriple::new(
                self_comodule_algebra(&hopf),
                hopf.clone(),
                module,
                sigma,
            )?;
            Ok(Resolved::Triple {
                triple,
                n_max,
                budget,
            })
        }
        "cotriple" => {
            let comodule = resolve_comodule(&hopf, bundle.module.as_ref())?;
            let delta = resolve_character(&hopf, bundle.delta.as_deref().unwrap_or("counit"))?;
            let cotriple = crate::cotriple::HopfCotriple::new(
                self_module_coalgebra(&hopf),
                hopf.clone(),
                comodule,
                delta,
            )?;
            Ok(Resolved::Cotriple {
                cotriple,
                n_max,
                budget,
            })
        }
        "smash" => {
            let spec = bundle
                .smash
                .as_ref()
                .ok_or_else(|| Error::structure("smash bundle needs a [smash] section"))?;
            let base = match spec.base.as_str() {
                "dual-numbers" | "k[x]/(x^2)" => truncated_polynomial_algebra(hopf.field, 2)?,
                other => {
                    if let Some(d) = other
                        .strip_prefix("k[x]/(x^")
                        .and_then(|s| s.strip_suffix(')'))
                        .and_then(|s| s.parse::<usize>().ok())
                    {
                        truncated_polynomial_algebra(hopf.field, d)?
                    } else {
                        return Err(Error::structure(format!(
                            "unknown smash base `{other}`"
                        )));
                    }
                }
            };
            let action = match spec.action.as_str() {
                "trivial" => trivial_action(&hopf, &base),
                "sign" => sign_action_on_dual_numbers(&hopf, &base)?,
                other => {
                    return Err(Error::structure(format!("unknown action `{other}`")))
                }
            };
            let smash = build_smash(&hopf, action)?;
            let module = resolve_module(&hopf, bundle.module.as_ref())?;
            let sigma = resolve_grouplike(&hopf, bundle.sigma.as_deref().unwrap_or("unit"))?;
            Ok(Resolved::Smash {
                smash,
                module,
                sigma,
                p_max: spec.pmax.unwrap_or(2),
                q_max: spec.qmax.unwrap_or(2),
                n_max,
                budget,
            })
        }
        other => Err(Error::structure(format!(
            "unknown bundle kind `{other}` (expected triple | cotriple | smash)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_bundle_resolves() {
        let bundle: Bundle = toml::from_str(
            r#"
kind = "triple"
nmax = 2

[hopf]
builtin = "kZ2"

[module]
kind = "trivial"
"#,
        )
        .unwrap();
        let r = resolve(&bundle, Path::new(".")).unwrap();
        match r {
            Resolved::Triple { triple, n_max, .. } => {
                assert_eq!(triple.hopf.dim(), 2);
                assert_eq!(n_max, 2);
            }
            _ => panic!("expected triple"),
        }
    }

    #[test]
    fn sweedler_cotriple_bundle() {
        let bundle: Bundle = toml::from_str(
            r#"
kind = "cotriple"
nmax = 2
delta = "delta"

[hopf]
builtin = "sweedler"

[module]
kind = "trivial"
"#,
        )
        .unwrap();
        assert!(resolve(&bundle, Path::new(".")).is_ok());
    }

    #[test]
    fn unknown_builtin_rejected() {
        let bundle: Bundle = toml::from_str(
            r#"
kind = "triple"
[hopf]
builtin = "quantum-foo"
"#,
        )
        .unwrap();
        assert!(resolve(&bundle, Path::new(".")).is_err());
    }
}
