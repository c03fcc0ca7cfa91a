//! Job documents and the payload schema of each job kind.

use pairstab::group::{GroupPresentation, Representation};
use pairstab::kstab::{AffineFunction, Crease, PLFunction, Polytope};
use pairstab::pairs::Pair;
use pairstab_algebra::{parse_rational, MultiPoly, Rational, Ring};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum JobKind {
    #[serde(rename = "algebra.groebner")]
    AlgebraGroebner,
    #[serde(rename = "arcs.weight")]
    ArcsWeight,
    #[serde(rename = "arcs.equiv")]
    ArcsEquiv,
    #[serde(rename = "pairs.check")]
    PairsCheck,
    #[serde(rename = "pairs.stable")]
    PairsStable,
    #[serde(rename = "pairs.falsify")]
    PairsFalsify,
    #[serde(rename = "locus.map")]
    LocusMap,
    #[serde(rename = "locus.degeneration")]
    LocusDegeneration,
    #[serde(rename = "locus.oracle")]
    LocusOracle,
    #[serde(rename = "locus.family")]
    LocusFamily,
    #[serde(rename = "toric.hilb")]
    ToricHilb,
    #[serde(rename = "toric.df")]
    ToricDf,
    #[serde(rename = "toric.norm")]
    ToricNorm,
    #[serde(rename = "toric.uniform")]
    ToricUniform,
    #[serde(rename = "model.df")]
    ModelDf,
    #[serde(rename = "model.norm")]
    ModelNorm,
}

impl JobKind {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDocument {
    pub version: u32,
    pub kind: JobKind,
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl JobDocument {
    pub fn new(kind: JobKind, payload: Value) -> Self {
        JobDocument {
            version: SCHEMA_VERSION,
            kind,
            payload,
            budget: None,
            seed: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: JobDocument = serde_json::from_str(text)?;
        if doc.version != SCHEMA_VERSION {
            return Err(CliError::input(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                doc.version
            )));
        }
        Ok(doc)
    }

    pub fn payload<T: for<'de> Deserialize<'de>>(&self) -> Result<T> {
        serde_json::from_value(self.payload.clone())
            .map_err(|e| CliError::input(format!("invalid {} payload: {e}", self.kind.name())))
    }
}

/// A rational given as an integer or a `"p/q"` string; written as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q(pub Rational);

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Q(Rational::from_integer(n.into()))),
            Raw::Str(s) => parse_rational(&s)
                .map(Q)
                .map_err(|e| serde::de::Error::custom(format!("invalid rational '{s}': {e}"))),
        }
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

pub fn rationals(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// `torus(k)`, `SL(m)` or `GL(m)`.
    Label(String),
    Custom { custom: CustomGroup },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomGroup {
    pub size: usize,
    pub relations: Vec<String>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupPresentation> {
        match self {
            GroupSpec::Custom { custom } => Ok(GroupPresentation::custom(custom.size, &custom.relations)?),
            GroupSpec::Label(label) => {
                let bad = || CliError::input(format!("unknown group '{label}'"));
                let (name, rest) = label.split_once('(').ok_or_else(bad)?;
                let size: usize = rest
                    .strip_suffix(')')
                    .and_then(|n| n.trim().parse().ok())
                    .ok_or_else(bad)?;
                Ok(match name.trim() {
                    "torus" => GroupPresentation::torus(size)?,
                    "SL" => GroupPresentation::special_linear(size)?,
                    "GL" => GroupPresentation::general_linear(size)?,
                    _ => return Err(bad()),
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepSpec {
    /// Torus weights, one vector per coordinate.
    Weights(Vec<Vec<i64>>),
    /// Action matrix entries as polynomials in the group variables.
    Matrix(Vec<Vec<String>>),
    /// `Sym^d` of the standard representation of a size-2 group.
    Sym(u32),
    Standard,
    Trivial,
}

impl RepSpec {
    pub fn build(&self, group: &GroupPresentation) -> Result<Representation> {
        Ok(match self {
            RepSpec::Weights(w) => Representation::torus_weights(group.size(), w.clone())?,
            RepSpec::Matrix(rows) => {
                let matrix = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|e| MultiPoly::parse(e, group.ring()))
                            .collect::<std::result::Result<Vec<_>, _>>()
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Representation::matrix_action(group, matrix)?
            }
            RepSpec::Sym(d) => Representation::symmetric_power(group, *d)?,
            RepSpec::Standard => Representation::standard(group),
            RepSpec::Trivial => Representation::trivial(group),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub group: GroupSpec,
    pub v_rep: RepSpec,
    pub w_rep: RepSpec,
    pub v: Vec<Q>,
    pub w: Vec<Q>,
}

impl PairSpec {
    pub fn build(&self) -> Result<Pair> {
        let group = self.group.build()?;
        let v_rep = self.v_rep.build(&group)?;
        let w_rep = self.w_rep.build(&group)?;
        Ok(Pair::new(group, v_rep, w_rep, rationals(&self.v), rationals(&self.w))?)
    }
}

/// Claimed verdict with certificate, for re-validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictSpec {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    pub certificate: CertificateSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CertificateSpec {
    Vacuous,
    Containment { witnesses: Vec<WitnessSpec> },
    Destabilizing { exponents: Vec<i64>, mu: i64 },
    NormViolation {
        exponents: Vec<i64>,
        mu: i64,
        norm: i64,
        level: u32,
    },
    Cones { count: usize },
    Arc { arc: Vec<Vec<String>>, mu: i64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSpec {
    pub point: Vec<i64>,
    pub combination: Vec<TermSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub vertex: Vec<i64>,
    pub coefficient: Q,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroebnerPayload {
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub order: Option<String>,
    #[serde(default)]
    pub eliminate: Option<Vec<String>>,
    #[serde(default)]
    pub saturate: Option<String>,
    #[serde(default)]
    pub member: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleFamily {
    /// Diagonal arcs `diag(c_i t^{a_i}(1 + …))`, compared with `t^a`.
    TorusUnits,
    /// Products of diagonal and elementary arcs, plus integral units.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSpec {
    pub count: u32,
    pub family: SampleFamily,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcsWeightPayload {
    pub pair: PairSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_mu: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcsEquivPayload {
    pub arc: Vec<Vec<String>>,
    pub other: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairsCheckPayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairSpec>,
    /// Coefficients of `Σ c_i x^i y^(d-i)`, classified under `SL(2)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binary_form: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<VerdictSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckSpec {
    Norm,
    Associated,
    #[default]
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairsStablePayload {
    pub pair: PairSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_level: Option<u32>,
    #[serde(default)]
    pub check: CheckSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<VerdictSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairsFalsifyPayload {
    pub pair: PairSpec,
    pub draws: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub group: GroupSpec,
    pub coords: Vec<String>,
    #[serde(default)]
    pub y: Vec<String>,
    pub w_hat: Vec<String>,
    pub action: RepSpec,
    #[serde(default)]
    pub projective: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocusMapPayload {
    pub problem: ProblemSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocusDegenerationPayload {
    pub problem: ProblemSpec,
    #[serde(default)]
    pub probes: Vec<Vec<Q>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocusOraclePayload {
    pub problem: ProblemSpec,
    pub point: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocusFamilyPayload {
    pub group: GroupSpec,
    pub v_rep: RepSpec,
    pub w_rep: RepSpec,
    pub base: Vec<String>,
    pub v: Vec<String>,
    pub w: Vec<String>,
    /// Number of seeded rational base points checked against the fibers.
    #[serde(default)]
    pub check_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub grad: Vec<Q>,
    pub constant: Q,
}

pub fn build_polytope(vertices: &[Vec<Q>]) -> Result<Polytope> {
    Ok(Polytope::new(vertices.iter().map(|v| rationals(v)).collect())?)
}

pub fn build_function(pieces: &[PieceSpec]) -> Result<PLFunction> {
    Ok(PLFunction::new(
        pieces
            .iter()
            .map(|p| AffineFunction::new(rationals(&p.grad), p.constant.0.clone()))
            .collect(),
    )?)
}

pub fn function_spec(f: &PLFunction) -> Vec<PieceSpec> {
    f.pieces()
        .iter()
        .map(|p| PieceSpec {
            grad: p.grad.iter().cloned().map(Q).collect(),
            constant: Q(p.constant.clone()),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricHilbPayload {
    pub polytope: Vec<Vec<Q>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricFunctionPayload {
    pub polytope: Vec<Vec<Q>>,
    pub function: Vec<PieceSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreaseSpec {
    pub normal: Vec<Q>,
    pub offset: Q,
}

impl CreaseSpec {
    pub fn build(&self) -> Crease {
        Crease::new(rationals(&self.normal), self.offset.0.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniformClaim {
    /// `holds` or `fails`.
    pub verdict: String,
    pub function: Vec<PieceSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricUniformPayload {
    pub polytope: Vec<Vec<Q>>,
    #[serde(default)]
    pub creases: Vec<CreaseSpec>,
    pub epsilon: Q,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<UniformClaim>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDfPayload {
    pub a0: Q,
    pub a1: Q,
    pub b0: Q,
    pub b1: Q,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelNormPayload {
    #[serde(default)]
    pub b0: Option<Q>,
    #[serde(default)]
    pub b1: Option<Q>,
    pub r: Q,
    pub n: u32,
    #[serde(default)]
    pub l_mix: Option<Q>,
    #[serde(default)]
    pub l_top: Option<Q>,
    #[serde(default)]
    pub l_n: Option<Q>,
}

/// Parses polynomial strings in a ring built from `vars`.
pub fn parse_polys(ring: &Ring, polys: &[String]) -> Result<Vec<MultiPoly>> {
    Ok(polys
        .iter()
        .map(|p| MultiPoly::parse(p, ring))
        .collect::<std::result::Result<Vec<_>, _>>()?)
}
