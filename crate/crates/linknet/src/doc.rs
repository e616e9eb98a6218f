//! The versioned JSON net document: hull presentations and explicit
//! window nets over any of the three fields, with an optional colors
//! block for figure fixtures. Parsing canonicalizes; serialization of a
//! canonical document round-trips byte-identically.

use crate::linalg::{Field, FieldSpec, Matrix, PrimeField, RatFns, Rationals};
use crate::net::{NetError, NetPresentation, WindowNet};
use crate::zquiver::{window, ArrowType, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("bad field spec: {0}")]
    Field(#[from] crate::linalg::FieldError),
    #[error("entry parse error in {context}: {message}")]
    Entry { context: String, message: String },
    #[error("document has mode {mode:?} but no matching block")]
    MissingBlock { mode: Mode },
    #[error("matrix in {context} has {got} entries, expected {want}")]
    EntryCount {
        context: String,
        got: usize,
        want: usize,
    },
    #[error(transparent)]
    Net(#[from] NetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Hull,
    Window,
}

/// Matrix serialized as a row-major array of entry strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossMapDoc {
    pub from: usize,
    pub to: usize,
    #[serde(flatten)]
    pub matrix: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullBlock {
    pub vertices: Vec<Vec<i64>>,
    pub dims: Vec<usize>,
    pub cross_maps: Vec<CrossMapDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub from: Vec<i64>,
    pub arrow_type: ArrowType,
    #[serde(flatten)]
    pub matrix: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowBlock {
    pub seed: Vec<Vec<i64>>,
    pub radius: usize,
    pub dims: Vec<usize>,
    pub arrows: Vec<ArrowDoc>,
}

/// Expected arrow colors for figure fixtures (red = zero map).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorDoc {
    pub from: Vec<i64>,
    pub arrow_type: ArrowType,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetDocument {
    pub format_version: u32,
    pub field: FieldSpec,
    pub n: usize,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hull: Option<HullBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<ColorDoc>>,
}

/// A parsed document: either a presentation or an explicit window net,
/// over whichever field the document declares.
pub enum AnyNet {
    QHull(NetPresentation<Rationals>),
    QWindow(WindowNet<Rationals>),
    FpHull(NetPresentation<PrimeField>),
    FpWindow(WindowNet<PrimeField>),
    QtHull(NetPresentation<RatFns>),
    QtWindow(WindowNet<RatFns>),
}

impl NetDocument {
    pub fn from_json(text: &str) -> Result<NetDocument, DocError> {
        let doc: NetDocument = serde_json::from_str(text)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(DocError::Version(doc.format_version));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Parse into typed form, dispatching on the declared field.
    pub fn parse(&self) -> Result<AnyNet, DocError> {
        match &self.field {
            FieldSpec::Rationals => self.parse_in(Rationals).map(|e| match e {
                Parsed::Hull(p) => AnyNet::QHull(p),
                Parsed::Window(w) => AnyNet::QWindow(w),
            }),
            FieldSpec::Prime { p } => {
                let f = PrimeField::new(*p)?;
                self.parse_in(f).map(|e| match e {
                    Parsed::Hull(p) => AnyNet::FpHull(p),
                    Parsed::Window(w) => AnyNet::FpWindow(w),
                })
            }
            FieldSpec::RationalFunctionsT => self.parse_in(RatFns).map(|e| match e {
                Parsed::Hull(p) => AnyNet::QtHull(p),
                Parsed::Window(w) => AnyNet::QtWindow(w),
            }),
        }
    }

    fn parse_in<K: Field>(&self, field: K) -> Result<Parsed<K>, DocError> {
        match self.mode {
            Mode::Hull => {
                let block = self
                    .hull
                    .as_ref()
                    .ok_or(DocError::MissingBlock { mode: self.mode })?;
                let hull: Vec<Vertex> =
                    block.vertices.iter().map(|c| Vertex::normalize(c)).collect();
                let mut cross = BTreeMap::new();
                for cm in &block.cross_maps {
                    let m = parse_matrix(&field, &cm.matrix, &format!("cross_map {}->{}", cm.from, cm.to))?;
                    cross.insert((cm.from, cm.to), m);
                }
                let pres =
                    NetPresentation::new(field, self.n, hull, block.dims.clone(), cross)?;
                Ok(Parsed::Hull(pres))
            }
            Mode::Window => {
                let block = self
                    .window
                    .as_ref()
                    .ok_or(DocError::MissingBlock { mode: self.mode })?;
                let seed: std::collections::BTreeSet<Vertex> =
                    block.seed.iter().map(|c| Vertex::normalize(c)).collect();
                let win = window(&seed, block.radius);
                if win.len() != block.dims.len() {
                    return Err(DocError::EntryCount {
                        context: "window dims".to_string(),
                        got: block.dims.len(),
                        want: win.len(),
                    });
                }
                let mut dims = BTreeMap::new();
                for (v, &d) in win.members().iter().zip(block.dims.iter()) {
                    dims.insert(v.clone(), d);
                }
                let mut arrows = BTreeMap::new();
                for a in &block.arrows {
                    let from = Vertex::normalize(&a.from);
                    let m = parse_matrix(
                        &field,
                        &a.matrix,
                        &format!("arrow ({:?}, type {})", a.from, a.arrow_type),
                    )?;
                    arrows.insert((from, a.arrow_type), m);
                }
                let net = WindowNet::new(field, self.n, win, dims, arrows)?;
                Ok(Parsed::Window(net))
            }
        }
    }

    /// Canonical form: vertices sorted, maps sorted, entries reformatted.
    pub fn canonicalize(&self) -> Result<NetDocument, DocError> {
        let parsed = self.parse()?;
        let mut doc = match parsed {
            AnyNet::QHull(p) => document_from_presentation(&p, FieldSpec::Rationals),
            AnyNet::FpHull(p) => {
                let spec = FieldSpec::Prime { p: p.field.modulus() };
                document_from_presentation(&p, spec)
            }
            AnyNet::QtHull(p) => document_from_presentation(&p, FieldSpec::RationalFunctionsT),
            AnyNet::QWindow(w) => document_from_window(&w, FieldSpec::Rationals),
            AnyNet::FpWindow(w) => {
                let spec = FieldSpec::Prime { p: w.field().modulus() };
                document_from_window(&w, spec)
            }
            AnyNet::QtWindow(w) => document_from_window(&w, FieldSpec::RationalFunctionsT),
        };
        doc.colors = self.colors.clone().map(|mut c| {
            c.sort_by(|x, y| (&x.from, x.arrow_type).cmp(&(&y.from, y.arrow_type)));
            c
        });
        Ok(doc)
    }
}

enum Parsed<K: Field> {
    Hull(NetPresentation<K>),
    Window(WindowNet<K>),
}

fn parse_matrix<K: Field>(
    field: &K,
    doc: &MatrixDoc,
    context: &str,
) -> Result<Matrix<K>, DocError> {
    if doc.entries.len() != doc.rows * doc.cols {
        return Err(DocError::EntryCount {
            context: context.to_string(),
            got: doc.entries.len(),
            want: doc.rows * doc.cols,
        });
    }
    let mut parsed = Vec::with_capacity(doc.entries.len());
    for e in &doc.entries {
        parsed.push(field.parse(e).map_err(|err| DocError::Entry {
            context: context.to_string(),
            message: err.to_string(),
        })?);
    }
    Ok(Matrix::from_fn(
        field.clone(),
        doc.rows,
        doc.cols,
        |r, c| parsed[r * doc.cols + c].clone(),
    ))
}

fn matrix_doc<K: Field>(m: &Matrix<K>) -> MatrixDoc {
    MatrixDoc {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.entries().iter().map(|e| m.field().format(e)).collect(),
    }
}

/// Serialize a presentation in canonical order (hull vertices sorted
/// lexicographically, cross maps sorted by endpoints).
pub fn document_from_presentation<K: Field>(
    pres: &NetPresentation<K>,
    field: FieldSpec,
) -> NetDocument {
    // Reindex so the stored hull is sorted.
    let mut order: Vec<usize> = (0..pres.hull.len()).collect();
    order.sort_by(|&a, &b| pres.hull[a].cmp(&pres.hull[b]));
    let back: BTreeMap<usize, usize> =
        order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let vertices: Vec<Vec<i64>> = order
        .iter()
        .map(|&i| pres.hull[i].coords().to_vec())
        .collect();
    let dims: Vec<usize> = order.iter().map(|&i| pres.dims[i]).collect();
    let mut cross_maps: Vec<CrossMapDoc> = pres
        .cross
        .iter()
        .map(|(&(f, t), m)| CrossMapDoc {
            from: back[&f],
            to: back[&t],
            matrix: matrix_doc(m),
        })
        .collect();
    cross_maps.sort_by_key(|cm| (cm.from, cm.to));
    NetDocument {
        format_version: FORMAT_VERSION,
        field,
        n: pres.n,
        mode: Mode::Hull,
        hull: Some(HullBlock {
            vertices,
            dims,
            cross_maps,
        }),
        window: None,
        colors: None,
    }
}

/// Serialize an explicit window net in canonical order.
pub fn document_from_window<K: Field>(net: &WindowNet<K>, field: FieldSpec) -> NetDocument {
    let seed: Vec<Vec<i64>> = net
        .window()
        .seed()
        .iter()
        .map(|v| v.coords().to_vec())
        .collect();
    let dims: Vec<usize> = net.vertices().iter().map(|v| net.dim_at(v)).collect();
    let mut arrows = Vec::new();
    for v in net.vertices() {
        for a in 0..=net.n() {
            if let Some(m) = net.arrow(v, a) {
                arrows.push(ArrowDoc {
                    from: v.coords().to_vec(),
                    arrow_type: a,
                    matrix: matrix_doc(m),
                });
            }
        }
    }
    NetDocument {
        format_version: FORMAT_VERSION,
        field,
        n: net.n(),
        mode: Mode::Window,
        hull: None,
        window: Some(WindowBlock {
            seed,
            radius: net.window().radius(),
            dims,
            arrows,
        }),
        colors: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{seg2, tri3};

    #[test]
    fn hull_document_roundtrip() {
        let doc = document_from_presentation(&seg2(), FieldSpec::Rationals);
        let text = doc.to_json();
        let doc2 = NetDocument::from_json(&text).unwrap();
        assert_eq!(doc, doc2);
        // Canonical form is a fixed point.
        let canon = doc2.canonicalize().unwrap();
        assert_eq!(canon.to_json(), text);
    }

    #[test]
    fn window_document_roundtrip() {
        let net = tri3().expand(2).unwrap();
        let doc = document_from_window(&net, FieldSpec::Rationals);
        let text = doc.to_json();
        let doc2 = NetDocument::from_json(&text).unwrap();
        let AnyNet::QWindow(net2) = doc2.parse().unwrap() else {
            panic!("expected a rational window net");
        };
        assert_eq!(net.vertices(), net2.vertices());
        for v in net.vertices() {
            for a in 0..=2 {
                assert_eq!(net.arrow(v, a), net2.arrow(v, a));
            }
        }
        assert_eq!(doc2.canonicalize().unwrap().to_json(), text);
    }

    #[test]
    fn bad_version_is_rejected() {
        let mut doc = document_from_presentation(&seg2(), FieldSpec::Rationals);
        doc.format_version = 99;
        let text = doc.to_json();
        assert!(matches!(
            NetDocument::from_json(&text),
            Err(DocError::Version(99))
        ));
    }

    #[test]
    fn prime_field_document() {
        let f = crate::linalg::PrimeField::new(5).unwrap();
        let pres = crate::fixtures::presentation_mod_p(&seg2(), f);
        let doc = document_from_presentation(&pres, FieldSpec::Prime { p: 5 });
        let AnyNet::FpHull(pres2) = NetDocument::from_json(&doc.to_json())
            .unwrap()
            .parse()
            .unwrap()
        else {
            panic!("expected an F_p hull presentation");
        };
        assert_eq!(pres2.hull, pres.hull);
    }
}
