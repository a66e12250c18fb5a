//! JSON file formats: the datum file consumed by the CLI, the pre-Nichols
//! structure-constant bundle, and structure-constant exports of the built
//! algebras. Scalars serialize as integers (prime field) or as coefficient
//! vectors of reduced fractions (cyclotomic), so files round-trip exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::datum::{DatumError, QlsDatum};
use crate::group::{AbelianGroup, Character, GroupElement};
use crate::prenichols::{PreNicholsBundle, Side, SparseVec};
use crate::scalar::{FieldSpec, Scalar, ScalarField};

#[derive(Debug)]
pub enum FileError {
    Json(String),
    BadScalar(String),
    BadField(String),
    Datum(DatumError),
    Shape(String),
}

impl fmt::Display for FileError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileError::Json(e) => write!(out, "json: {e}"),
            FileError::BadScalar(s) => write!(out, "cannot parse scalar: {s}"),
            FileError::BadField(s) => write!(out, "field spec: {s}"),
            FileError::Datum(e) => write!(out, "{e}"),
            FileError::Shape(s) => write!(out, "{s}"),
        }
    }
}

impl std::error::Error for FileError {}

impl From<DatumError> for FileError {
    fn from(e: DatumError) -> Self {
        FileError::Datum(e)
    }
}

/// A scalar in a file: an integer, a fraction string `"n/d"`, or a
/// cyclotomic coefficient vector of fraction strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Frac(String),
    Coeffs(Vec<String>),
}

pub fn parse_scalar(field: &ScalarField, s: &ScalarJson) -> Result<Scalar, FileError> {
    let frac = |txt: &str| -> Result<(i64, i64), FileError> {
        let mut parts = txt.splitn(2, '/');
        let num: i64 = parts
            .next()
            .unwrap()
            .trim()
            .parse()
            .map_err(|_| FileError::BadScalar(txt.to_string()))?;
        let den: i64 = match parts.next() {
            Some(d) => d
                .trim()
                .parse()
                .map_err(|_| FileError::BadScalar(txt.to_string()))?,
            None => 1,
        };
        if den == 0 {
            return Err(FileError::BadScalar(txt.to_string()));
        }
        Ok((num, den))
    };
    match s {
        ScalarJson::Int(v) => Ok(field.from_i64(*v)),
        ScalarJson::Frac(txt) => {
            let (n, d) = frac(txt)?;
            Ok(field.from_rational(n, d))
        }
        ScalarJson::Coeffs(coeffs) => {
            let Some(x) = field.conductor_root() else {
                return Err(FileError::BadScalar(
                    "coefficient vectors are for the cyclotomic backend".into(),
                ));
            };
            let mut acc = field.zero();
            for (k, txt) in coeffs.iter().enumerate() {
                let (n, d) = frac(txt)?;
                let term = field.mul(&field.from_rational(n, d), &field.pow(&x, k as i64));
                acc = field.add(&acc, &term);
            }
            Ok(acc)
        }
    }
}

pub fn render_scalar(field: &ScalarField, s: &Scalar) -> ScalarJson {
    match s {
        Scalar::Fp { val, .. } => ScalarJson::Int(*val as i64),
        Scalar::Cyc { coeffs, .. } => {
            let _ = field;
            ScalarJson::Coeffs(coeffs.iter().map(|c| c.to_string()).collect())
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldJson {
    pub backend: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_prime: Option<u64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

impl FieldJson {
    pub fn to_spec(&self) -> Result<FieldSpec, FileError> {
        match self.backend.as_str() {
            "prime" => {
                if let Some(p) = self.p {
                    Ok(FieldSpec::Prime { p })
                } else if let Some(min) = self.min_prime {
                    Ok(FieldSpec::PrimeAuto { min })
                } else {
                    Err(FileError::BadField(
                        "prime backend needs 'p' or 'min_prime'".into(),
                    ))
                }
            }
            "cyclotomic" => self
                .m
                .map(|m| FieldSpec::Cyclotomic { m })
                .ok_or_else(|| FileError::BadField("cyclotomic backend needs 'M'".into())),
            other => Err(FileError::BadField(format!("unknown backend '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub moduli: Vec<u64>,
}

/// The on-disk datum document. `preset`, when present, selects the built-in
/// datum; an explicit `field` key still overrides the preset's default
/// coefficient field.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatumJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<ScalarJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<u32>>,
}

impl DatumJson {
    pub fn parse(text: &str) -> Result<DatumJson, FileError> {
        serde_json::from_str(text).map_err(|e| FileError::Json(e.to_string()))
    }

    pub fn to_datum(&self) -> Result<QlsDatum, FileError> {
        if let Some(name) = &self.preset {
            let spec = self.field.as_ref().map(|f| f.to_spec()).transpose()?;
            return Ok(QlsDatum::preset(name, spec)?);
        }
        let group_json = self
            .group
            .as_ref()
            .ok_or_else(|| FileError::Shape("missing 'group'".into()))?;
        let group = AbelianGroup::new(group_json.moduli.clone());
        let field_json = self
            .field
            .as_ref()
            .ok_or_else(|| FileError::Shape("missing 'field'".into()))?;
        let field = ScalarField::create(&field_json.to_spec()?, group.exponent())
            .map_err(|e| FileError::BadField(e.to_string()))?;
        let need = |name: &str| FileError::Shape(format!("missing '{name}'"));
        let f_raw = self.f.as_ref().ok_or_else(|| need("f"))?;
        let g_raw = self.g.as_ref().ok_or_else(|| need("g"))?;
        let chi_raw = self.chi.as_ref().ok_or_else(|| need("chi"))?;
        let c_raw = self.c.as_ref().ok_or_else(|| need("c"))?;
        let m_raw = self.m.as_ref().ok_or_else(|| need("m"))?;
        let n = self.rank.unwrap_or(f_raw.len());
        if [
            f_raw.len(),
            g_raw.len(),
            chi_raw.len(),
            c_raw.len(),
            m_raw.len(),
        ]
        .iter()
        .any(|&l| l != n)
        {
            return Err(FileError::Shape(format!(
                "arrays f, g, chi, c, m must all have the stated rank {n}"
            )));
        }
        let e_raw = self.e.clone().unwrap_or_else(|| vec![0; n]);
        if e_raw.len() != n {
            return Err(FileError::Shape("array e must have the stated rank".into()));
        }
        let to_elt = |v: &Vec<i64>| -> Result<GroupElement, FileError> {
            if v.len() != group.rank() {
                return Err(FileError::Shape(format!(
                    "exponent vector {v:?} does not match the group rank {}",
                    group.rank()
                )));
            }
            Ok(group.element(v))
        };
        let mut c = vec![];
        for s in c_raw {
            c.push(parse_scalar(&field, s)?);
        }
        Ok(QlsDatum {
            f: f_raw.iter().map(&to_elt).collect::<Result<_, _>>()?,
            g: g_raw.iter().map(&to_elt).collect::<Result<_, _>>()?,
            chi: chi_raw
                .iter()
                .map(|v| to_elt(v).map(|e| Character(e.0)))
                .collect::<Result<_, _>>()?,
            c,
            m: m_raw.clone(),
            e: e_raw,
            group,
            field,
        })
    }

    /// Echoes a datum back into its file form (used in reports).
    pub fn from_datum(d: &QlsDatum) -> DatumJson {
        let field = match d.field.characteristic() {
            0 => FieldJson {
                backend: "cyclotomic".into(),
                p: None,
                min_prime: None,
                m: d.field.conductor(),
            },
            p => FieldJson {
                backend: "prime".into(),
                p: Some(p),
                min_prime: None,
                m: None,
            },
        };
        DatumJson {
            preset: None,
            field: Some(field),
            group: Some(GroupJson {
                moduli: d.group.moduli().to_vec(),
            }),
            rank: Some(d.rank()),
            f: Some(
                d.f.iter()
                    .map(|x| x.0.iter().map(|&v| v as i64).collect())
                    .collect(),
            ),
            g: Some(
                d.g.iter()
                    .map(|x| x.0.iter().map(|&v| v as i64).collect())
                    .collect(),
            ),
            chi: Some(
                d.chi
                    .iter()
                    .map(|x| x.0.iter().map(|&v| v as i64).collect())
                    .collect(),
            ),
            c: Some(d.c.iter().map(|s| render_scalar(&d.field, s)).collect()),
            m: Some(d.m.clone()),
            e: Some(d.e.clone()),
        }
    }
}

/// One braided algebra's structure constants on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleJson {
    pub side: String,
    pub dim: usize,
    pub degrees: Vec<u32>,
    pub g_degrees: Vec<Vec<i64>>,
    pub action_chars: Vec<Vec<i64>>,
    pub generators: Vec<usize>,
    pub words: Vec<Vec<usize>>,
    /// `products[i][j]` = list of `[k, scalar]` terms.
    pub products: Vec<Vec<Vec<(usize, ScalarJson)>>>,
}

impl BundleJson {
    pub fn from_bundle(b: &PreNicholsBundle, field: &ScalarField) -> BundleJson {
        BundleJson {
            side: match b.side {
                Side::Left => "left".into(),
                Side::Right => "right".into(),
            },
            dim: b.dim,
            degrees: b.degrees.clone(),
            g_degrees: b
                .g_degrees
                .iter()
                .map(|x| x.0.iter().map(|&v| v as i64).collect())
                .collect(),
            action_chars: b
                .action_chars
                .iter()
                .map(|x| x.0.iter().map(|&v| v as i64).collect())
                .collect(),
            generators: b.generators.clone(),
            words: b.words.clone(),
            products: b
                .products
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|sv| {
                            sv.iter()
                                .map(|(k, c)| (*k, render_scalar(field, c)))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_bundle(
        &self,
        field: &ScalarField,
        group: &AbelianGroup,
    ) -> Result<PreNicholsBundle, FileError> {
        let side = match self.side.as_str() {
            "left" => Side::Left,
            "right" => Side::Right,
            other => return Err(FileError::Shape(format!("unknown side '{other}'"))),
        };
        let to_elt = |v: &Vec<i64>| -> GroupElement { group.element(v) };
        let mut products: Vec<Vec<SparseVec>> = vec![];
        for row in &self.products {
            let mut out_row = vec![];
            for sv in row {
                let mut out: SparseVec = vec![];
                for (k, c) in sv {
                    out.push((*k, parse_scalar(field, c)?));
                }
                out.sort_by_key(|(k, _)| *k);
                out_row.push(out);
            }
            products.push(out_row);
        }
        if self.action_chars.len() != self.g_degrees.len() {
            return Err(FileError::Shape("action_chars length mismatch".into()));
        }
        Ok(PreNicholsBundle {
            side,
            dim: self.dim,
            degrees: self.degrees.clone(),
            g_degrees: self.g_degrees.iter().map(&to_elt).collect(),
            action_chars: self
                .action_chars
                .iter()
                .map(|v| Character(to_elt(v).0))
                .collect(),
            generators: self.generators.clone(),
            words: self.words.clone(),
            products,
        })
    }
}

/// A pair of braided factors plus the datum they belong to; the export
/// format of `export --what prenichols`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PreNicholsFile {
    pub datum: DatumJson,
    pub left: BundleJson,
    pub right: BundleJson,
}

/// Sparse structure constants of a built algebra; the export format for
/// `H`, its dual, and the double's straightening table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureConstantsFile {
    pub what: String,
    pub dim: usize,
    /// `[i, j, [[k, c], ...]]` triples with the zero rows omitted.
    pub entries: Vec<(usize, usize, Vec<(usize, ScalarJson)>)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn datum_file_round_trip() {
        let text = r#"{
            "field": {"backend": "prime", "p": 13},
            "group": {"moduli": [4]},
            "rank": 1,
            "f": [[1]],
            "g": [[3]],
            "chi": [[2]],
            "c": [1],
            "m": [2]
        }"#;
        let dj = DatumJson::parse(text).unwrap();
        let d = dj.to_datum().unwrap();
        assert!(d.validate().ok());
        assert_eq!(d.dim_h(), 16);
        let echo = DatumJson::from_datum(&d);
        let d2 = echo.to_datum().unwrap();
        assert_eq!(d2.m, d.m);
        assert_eq!(d2.chi, d.chi);
        assert_eq!(d2.c, d.c);
    }

    #[test]
    fn preset_with_field_override() {
        let text = r#"{"preset": "min-z4", "field": {"backend": "prime", "p": 257}}"#;
        let d = DatumJson::parse(text).unwrap().to_datum().unwrap();
        assert_eq!(d.field.characteristic(), 257);
        assert!(d.validate().ok());
    }

    #[test]
    fn scalar_forms() {
        let f = ScalarField::create(&FieldSpec::Prime { p: 13 }, 4).unwrap();
        assert_eq!(
            parse_scalar(&f, &ScalarJson::Int(-1)).unwrap(),
            f.from_i64(12)
        );
        assert_eq!(
            parse_scalar(&f, &ScalarJson::Frac("1/2".into())).unwrap(),
            f.from_i64(7)
        );
        let fc = ScalarField::create(&FieldSpec::Cyclotomic { m: 4 }, 4).unwrap();
        let s = parse_scalar(&fc, &ScalarJson::Coeffs(vec!["1/3".into(), "2".into()])).unwrap();
        let expected = fc.add(
            &fc.from_rational(1, 3),
            &fc.mul(&fc.from_i64(2), &fc.zeta()),
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn bad_inputs_are_reported() {
        assert!(DatumJson::parse("{ not json").is_err());
        let missing = r#"{"group": {"moduli": [4]}}"#;
        let err = DatumJson::parse(missing).unwrap().to_datum().unwrap_err();
        assert!(matches!(err, FileError::Shape(_)));
        let f = ScalarField::create(&FieldSpec::Prime { p: 13 }, 4).unwrap();
        assert!(parse_scalar(&f, &ScalarJson::Frac("x/y".into())).is_err());
    }

    #[test]
    fn bundle_json_round_trip() {
        use crate::prenichols::{BraidedAlgebra, QlsAlgebra};
        let d = QlsDatum::preset("min-z4", None).unwrap();
        let alg = BraidedAlgebra::Qls(QlsAlgebra::build(&d, Side::Left));
        let bundle = alg.to_bundle(Side::Left);
        let json = BundleJson::from_bundle(&bundle, &d.field);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: BundleJson = serde_json::from_str(&text).unwrap();
        let back = parsed.to_bundle(&d.field, &d.group).unwrap();
        assert_eq!(back.products, bundle.products);
        assert_eq!(back.degrees, bundle.degrees);
        assert_eq!(back.words, bundle.words);
        let reimported = crate::prenichols::import_prenichols(back, &d.field, &d.group).unwrap();
        assert_eq!(reimported.to_bundle(Side::Left).products, bundle.products);
    }
}
