//! Scenario files: one TOML table per run.
//!
//! ```toml
//! kind = "groups"
//! l = 5
//! precision = 1
//! h = 1
//!
//! [expect]
//! order = 120
//! ```
//!
//! Matrices are nested lists whose entries are integers or, over extension
//! rings, ascending coefficient lists such as `[0, 1]` for `x`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use weilkit::ptower::poly;
use weilkit::{Matrix, Modulus, QuotientRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Tower,
    Weil,
    Forms,
    Split2,
    Groups,
    Surject,
    Suite,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Tower => "tower",
            Kind::Weil => "weil",
            Kind::Forms => "forms",
            Kind::Split2 => "split2",
            Kind::Groups => "groups",
            Kind::Surject => "surject",
            Kind::Suite => "suite",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Poly(Vec<i64>),
}

pub type MatrixSpec = Vec<Vec<Entry>>;

/// Values the scenario asserts; each one present becomes its own check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gsp_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutator_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nondegenerate: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balanced: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    /// Ascending integer coefficients of a monic polynomial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<MatrixSpec>,
    /// Action of the generator `x` on the module, over `Z/l^N`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<MatrixSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub similitude: Option<MatrixSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<MatrixSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<MatrixSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<MatrixSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<MatrixSpec>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

/// Malformed input; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("{0}")]
    Kernel(#[from] weilkit::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

impl Scenario {
    pub fn empty(kind: Kind) -> Self {
        Self {
            kind,
            l: None,
            precision: None,
            poly: None,
            h: None,
            r: None,
            basis: None,
            matrix: None,
            gram: None,
            action: None,
            free_rank: None,
            similitude: None,
            t: None,
            u: None,
            form: None,
            generators: None,
            trials: None,
            samples: None,
            seed: None,
            cap: None,
            expect: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_column(text, s.start));
            InputError::Parse {
                line,
                column,
                message: e.message().trim().to_string(),
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn modulus(&self) -> Result<Modulus, InputError> {
        let l = self.l.ok_or_else(|| InputError::Invalid("missing key `l`".into()))?;
        Ok(Modulus::new(l, self.precision.unwrap_or(1))?)
    }

    pub fn integers(&self) -> Result<Arc<QuotientRing>, InputError> {
        Ok(QuotientRing::integers(self.modulus()?))
    }

    pub fn require_poly(&self) -> Result<&[i64], InputError> {
        self.poly
            .as_deref()
            .ok_or_else(|| InputError::Invalid(format!("`{}` scenarios need `poly`", self.kind.name())))
    }

    /// Checks everything that does not need a kernel: keys required by the
    /// kind, the modulus, monic polynomials and rectangular matrices.
    pub fn validate(&self) -> Result<(), InputError> {
        if self.kind == Kind::Suite {
            return Ok(());
        }
        let m = self.modulus()?;
        let needs_poly = matches!(self.kind, Kind::Tower | Kind::Weil | Kind::Forms);
        if needs_poly {
            self.require_poly()?;
        }
        if let Some(p) = &self.poly {
            let reduced = poly::from_i64(&m, p);
            match poly::degree(&reduced) {
                Some(d) if d >= 1 && reduced[d] == 1 => {}
                _ => {
                    return Err(InputError::Invalid(format!(
                        "`poly` {p:?} is not monic of positive degree"
                    )))
                }
            }
        }
        if self.h == Some(0) || self.r == Some(0) {
            return Err(InputError::Invalid("`h` and `r` must be positive".into()));
        }
        if self.kind == Kind::Forms && self.gram.is_none() {
            return Err(InputError::Invalid("`forms` scenarios need `gram`".into()));
        }
        if self.kind == Kind::Forms && self.action.is_some() && self.free_rank.is_some() {
            return Err(InputError::Invalid(
                "give either `action` or `free_rank`, not both".into(),
            ));
        }
        if self.kind == Kind::Split2 && self.t.is_some() != self.u.is_some() {
            return Err(InputError::Invalid("`t` and `u` must be given together".into()));
        }
        let named = [
            ("matrix", &self.matrix),
            ("gram", &self.gram),
            ("action", &self.action),
            ("similitude", &self.similitude),
            ("t", &self.t),
            ("u", &self.u),
            ("form", &self.form),
        ];
        for (name, spec) in named {
            if let Some(s) = spec {
                shape(name, s)?;
            }
        }
        for (i, g) in self.generators.iter().flatten().enumerate() {
            shape(&format!("generators[{i}]"), g)?;
        }
        Ok(())
    }
}

fn shape(name: &str, spec: &MatrixSpec) -> Result<(usize, usize), InputError> {
    let rows = spec.len();
    let cols = spec.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || spec.iter().any(|r| r.len() != cols) {
        return Err(InputError::Invalid(format!(
            "`{name}` is not a non-empty rectangular matrix"
        )));
    }
    Ok((rows, cols))
}

/// Build a matrix over `ring`; integer entries are constants.
pub fn build_matrix(ring: &Arc<QuotientRing>, spec: &MatrixSpec) -> weilkit::Result<Matrix> {
    let rows: Vec<Vec<Vec<i64>>> = spec
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match e {
                    Entry::Int(c) => vec![*c],
                    Entry::Poly(p) => p.clone(),
                })
                .collect()
        })
        .collect();
    Matrix::from_polys(ring.clone(), &rows)
}
