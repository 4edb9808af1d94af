//! File formats: complex JSON, OFF meshes, PIP JSON, JSON reports and DOT.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::cubical::{CollapseCertificate, CubeCell, CubeComplex, Pip};
use crate::error::{Error, Result};
use crate::gradient::{gain_loss_sets, trace_vpaths, DiscreteGradientField, Partner, TraceMode};
use crate::hasse::{HasseDiagram, HasseVariant};
use crate::ordering::OrderedValue;
use crate::poset::{CellId, FacePoset};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Serialize + Clone",
    deserialize = "T: Deserialize<'de> + Scalar"
))]
pub struct VertexEntry<T> {
    pub id: usize,
    pub f: OrderedValue<T>,
}

/// `{"vertices":[{"id":0,"f":1.5},…], "simplices":[[0,1],…]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Serialize + Clone",
    deserialize = "T: Deserialize<'de> + Scalar"
))]
pub struct ComplexFile<T> {
    pub vertices: Vec<VertexEntry<T>>,
    pub simplices: Vec<Vec<usize>>,
}

impl<T: Scalar> ComplexFile<T> {
    pub fn into_complex(self) -> Result<SimplicialComplex<T>> {
        let mut valuation = BTreeMap::new();
        for entry in self.vertices {
            if valuation.insert(entry.id, entry.f).is_some() {
                return Err(Error::Parse(format!("vertex {} listed twice", entry.id)));
            }
        }
        SimplicialComplex::build(&self.simplices, valuation)
    }

    /// The maximal simplices of `complex` with its valuation.
    pub fn from_complex(complex: &SimplicialComplex<T>) -> Self {
        let mut simplices: Vec<Vec<usize>> = complex
            .maximal_simplices()
            .into_iter()
            .map(|s| s.vertices().to_vec())
            .collect();
        simplices.sort();
        ComplexFile {
            vertices: complex
                .valuation()
                .iter()
                .map(|(&id, f)| VertexEntry { id, f: f.clone() })
                .collect(),
            simplices,
        }
    }
}

pub fn parse_complex_json<T: Scalar + DeserializeOwned>(
    text: &str,
) -> Result<SimplicialComplex<T>> {
    serde_json::from_str::<ComplexFile<T>>(text)?.into_complex()
}

pub fn complex_to_json<T: Scalar + Serialize>(complex: &SimplicialComplex<T>) -> String {
    serde_json::to_string_pretty(&ComplexFile::from_complex(complex)).expect("serialisable")
}

/// An OFF mesh plus one whitespace-separated scalar per vertex, in vertex order. Faces with one
/// to three vertices become simplices; larger faces are rejected.
pub fn parse_off(off: &str, scalars: &str) -> Result<SimplicialComplex<f64>> {
    let mut lines = off
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let mut header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty OFF file".into()))?;
    if let Some(rest) = header.strip_prefix("OFF") {
        header = rest.trim();
        if header.is_empty() {
            header = lines
                .next()
                .ok_or_else(|| Error::Parse("OFF file has no counts line".into()))?;
        }
    }
    let counts: Vec<usize> = parse_numbers(header, "OFF counts")?;
    let (nv, nf) = match counts.as_slice() {
        [nv, nf, ..] => (*nv, *nf),
        _ => {
            return Err(Error::Parse(
                "OFF counts line needs vertex and face counts".into(),
            ))
        }
    };
    for k in 0..nv {
        lines
            .next()
            .ok_or_else(|| Error::Parse(format!("OFF file ends before vertex {k}")))?;
    }
    let mut faces = Vec::with_capacity(nf);
    for k in 0..nf {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("OFF file ends before face {k}")))?;
        let numbers: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .take_while(|r| r.is_ok())
            .map(|r| r.expect("checked"))
            .collect();
        let (&len, rest) = numbers
            .split_first()
            .ok_or_else(|| Error::Parse(format!("face {k} is empty")))?;
        if len == 0 || len > 3 || rest.len() < len {
            return Err(Error::Parse(format!(
                "face {k} has {len} vertices; only 1 to 3 are simplicial"
            )));
        }
        if let Some(&v) = rest[..len].iter().find(|&&v| v >= nv) {
            return Err(Error::UnknownVertex(v));
        }
        faces.push(rest[..len].to_vec());
    }
    let values: Vec<f64> = scalars
        .split_whitespace()
        .map(|l| {
            l.parse::<f64>()
                .map_err(|e| Error::Parse(format!("scalar {l:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if values.len() != nv {
        return Err(Error::Parse(format!(
            "{} scalars for {nv} vertices",
            values.len()
        )));
    }
    SimplicialComplex::from_scalars(&faces, values.into_iter().enumerate())
}

fn parse_numbers<N: std::str::FromStr>(line: &str, what: &str) -> Result<Vec<N>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<N>()
                .map_err(|_| Error::Parse(format!("{what}: bad number {t:?}")))
        })
        .collect()
}

/// One V-path with its gained and lost vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VPathReport {
    pub cells: Vec<Vec<usize>>,
    pub gained: Vec<usize>,
    pub lost: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradientReport {
    pub variant: HasseVariant,
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
    pub critical: Vec<Vec<usize>>,
    pub vpaths: Vec<VPathReport>,
}

impl GradientReport {
    /// Pairs, critical cells, and the lowest V-path from each paired `σ`.
    pub fn new<T>(
        complex: &SimplicialComplex<T>,
        field: &DiscreteGradientField,
        variant: HasseVariant,
    ) -> Result<Self> {
        let poset = complex.poset();
        let name = |c: CellId| complex.simplex(c).vertices().to_vec();
        let mut pairs = field.pairs();
        pairs.sort_by_key(|&(s, _)| (poset.dim(s), poset.order(s)));
        let mut vpaths = Vec::with_capacity(pairs.len());
        for &(sigma, _) in &pairs {
            for path in trace_vpaths(
                poset,
                field,
                sigma,
                TraceMode::Single,
                poset.num_cells() + 1,
            )? {
                let (gained, lost) = gain_loss_sets(complex, &path);
                vpaths.push(VPathReport {
                    cells: path.cells.iter().map(|&c| name(c)).collect(),
                    gained: gained.into_iter().collect(),
                    lost: lost.into_iter().collect(),
                });
            }
        }
        Ok(GradientReport {
            variant,
            pairs: pairs.iter().map(|&(s, t)| (name(s), name(t))).collect(),
            critical: field.critical_sorted(poset).into_iter().map(name).collect(),
            vpaths,
        })
    }
}

/// `{"elements":[…], "covers":[["a","b"],…], "inconsistent":[["p","q"],…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
    #[serde(default)]
    pub inconsistent: Vec<(String, String)>,
}

impl PipFile {
    pub fn into_pip(self) -> Result<Pip> {
        Pip::from_names(self.elements, &self.covers, &self.inconsistent)
    }

    pub fn from_pip(pip: &Pip) -> Self {
        let name = |i: usize| pip.names()[i].clone();
        PipFile {
            elements: pip.names().to_vec(),
            covers: pip
                .covers()
                .iter()
                .map(|&(a, b)| (name(a), name(b)))
                .collect(),
            inconsistent: pip
                .minimal_inconsistent()
                .iter()
                .map(|&(a, b)| (name(a), name(b)))
                .collect(),
        }
    }
}

pub fn parse_pip_json(text: &str) -> Result<Pip> {
    serde_json::from_str::<PipFile>(text)?.into_pip()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeLabel {
    pub ideal: Vec<String>,
    pub marks: Vec<String>,
}

impl CubeLabel {
    pub fn new(pip: &Pip, cell: &CubeCell) -> Self {
        CubeLabel {
            ideal: pip.describe(cell.ideal),
            marks: pip.describe(cell.marks),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub cells: usize,
    pub euler_characteristic: i64,
    pub pairs: Vec<(CubeLabel, CubeLabel)>,
    pub critical: Vec<CubeLabel>,
    pub collapse_order: Vec<(CubeLabel, CubeLabel)>,
}

impl CertificateReport {
    pub fn new(complex: &CubeComplex, cert: &CollapseCertificate) -> Self {
        let label = |c: &CubeCell| CubeLabel::new(complex.pip(), c);
        let pair = |&(a, b): &(CubeCell, CubeCell)| (label(&a), label(&b));
        CertificateReport {
            cells: complex.num_cells(),
            euler_characteristic: complex.euler_characteristic(),
            pairs: cert.pairs.iter().map(pair).collect(),
            critical: cert.critical.iter().map(label).collect(),
            collapse_order: cert.collapse_order.iter().map(pair).collect(),
        }
    }
}

pub fn to_json<S: Serialize>(value: &S) -> String {
    serde_json::to_string_pretty(value).expect("report types serialise")
}

/// `{0,1,2}`.
pub fn simplex_label<T>(complex: &SimplicialComplex<T>, cell: CellId) -> String {
    complex.simplex(cell).to_string()
}

/// `C({a,b},{b})`.
pub fn cube_label(complex: &CubeComplex, cell: CellId) -> String {
    let c = complex.cell(cell);
    let pip = complex.pip();
    format!(
        "C({{{}}},{{{}}})",
        pip.describe(c.ideal).join(","),
        pip.describe(c.marks).join(",")
    )
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram in DOT. Arcs point from cofacet to facet and carry their
/// weight; matched arcs are bold and point upward.
pub fn hasse_dot<W>(
    hasse: &HasseDiagram<W>,
    label: impl Fn(CellId) -> String,
    weight_label: impl Fn(&W) -> String,
    field: Option<&DiscreteGradientField>,
) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for c in 0..hasse.num_cells() {
        let style = match field.map(|f| f.partner(c)) {
            Some(Partner::Critical) => ", style=filled, fillcolor=\"#f4a6a6\"",
            _ => "",
        };
        let _ = writeln!(out, "  n{c} [label=\"{}\"{style}];", escape(&label(c)));
    }
    for arc in hasse.arcs() {
        let w = escape(&weight_label(&arc.weight));
        if field.is_some_and(|f| f.up(arc.lower) == Some(arc.upper)) {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{w}\", style=bold];",
                arc.lower, arc.upper
            );
        } else {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{w}\"];", arc.upper, arc.lower);
        }
    }
    out.push_str("}\n");
    out
}

/// The V-path digraph: matched pairs point up, other facet relations point
/// down. Critical cells are filled.
pub fn vpath_dot(
    poset: &FacePoset,
    field: &DiscreteGradientField,
    label: impl Fn(CellId) -> String,
) -> String {
    let mut out = String::from("digraph vpaths {\n  rankdir=BT;\n  node [shape=box];\n");
    for c in 0..poset.num_cells() {
        let style = if field.is_critical(c) {
            ", style=filled, fillcolor=\"#f4a6a6\""
        } else {
            ""
        };
        let _ = writeln!(out, "  n{c} [label=\"{}\"{style}];", escape(&label(c)));
    }
    let mut edges = BTreeSet::new();
    for upper in 0..poset.num_cells() {
        for &lower in poset.facets(upper) {
            if field.up(lower) == Some(upper) {
                edges.insert((lower, upper, true));
            } else {
                edges.insert((upper, lower, false));
            }
        }
    }
    for (a, b, matched) in edges {
        let style = if matched {
            " [style=bold, color=blue]"
        } else {
            ""
        };
        let _ = writeln!(out, "  n{a} -> n{b}{style};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradient::compute_gradient;

    const PATH: &str =
        r#"{"vertices":[{"id":0,"f":1},{"id":1,"f":2},{"id":2,"f":3}],"simplices":[[0,1],[1,2]]}"#;

    #[test]
    fn complex_json_roundtrip() {
        let c: SimplicialComplex<f64> = parse_complex_json(PATH).unwrap();
        assert_eq!(c.num_simplices(), 5);
        let back: SimplicialComplex<f64> = parse_complex_json(&complex_to_json(&c)).unwrap();
        assert_eq!(back.simplices(), c.simplices());
    }

    #[test]
    fn nested_values_load() {
        let text =
            r#"{"vertices":[{"id":0,"f":[1.0]},{"id":1,"f":[1.0,2.0]}],"simplices":[[0,1]]}"#;
        let c: SimplicialComplex<f64> = parse_complex_json(text).unwrap();
        assert_eq!(c.num_simplices(), 3);
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(
            parse_complex_json::<f64>("{"),
            Err(Error::Parse(_))
        ));
        let dup = r#"{"vertices":[{"id":0,"f":1},{"id":0,"f":2}],"simplices":[]}"#;
        assert!(matches!(
            parse_complex_json::<f64>(dup),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn gradient_report_for_path() {
        let c: SimplicialComplex<f64> = parse_complex_json(PATH).unwrap();
        let v = compute_gradient(&c, HasseVariant::Plain).unwrap();
        let report = GradientReport::new(&c, &v, HasseVariant::Plain).unwrap();
        assert_eq!(
            report.pairs,
            vec![(vec![1], vec![0, 1]), (vec![2], vec![1, 2])]
        );
        assert_eq!(report.critical, vec![vec![0]]);
        let long = report.vpaths.iter().find(|p| p.cells.len() == 5).unwrap();
        assert_eq!(long.gained, vec![0, 1]);
        assert_eq!(long.lost, vec![1, 2]);
    }

    #[test]
    fn off_loader() {
        let off =
            "OFF\n# a square split in two\n4 2 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n3 0 1 2\n3 0 2 3\n";
        let c = parse_off(off, "1\n2\n3\n4\n").unwrap();
        assert_eq!(c.counts_by_dim(), vec![4, 5, 2]);
        assert!(parse_off("OFF\n1 1 0\n0 0 0\n4 0 0 0 0\n", "1").is_err());
        assert!(parse_off(off, "1\n2\n").is_err());
    }

    #[test]
    fn pip_json() {
        let pip = parse_pip_json(r#"{"elements":["a","b"],"covers":[["a","b"]]}"#).unwrap();
        assert!(pip.less(0, 1));
        assert_eq!(
            PipFile::from_pip(&pip).covers,
            vec![("a".to_string(), "b".to_string())]
        );
    }

    #[test]
    fn dot_marks_matched_arcs() {
        let c: SimplicialComplex<f64> = parse_complex_json(PATH).unwrap();
        let v = compute_gradient(&c, HasseVariant::Plain).unwrap();
        let h = crate::hasse::build_hasse(&c);
        let dot = hasse_dot(&h, |x| simplex_label(&c, x), |w| w.to_string(), Some(&v));
        assert_eq!(dot.matches("style=bold").count(), 2);
        assert!(dot.contains("fillcolor"));
        let vd = vpath_dot(c.poset(), &v, |x| simplex_label(&c, x));
        assert!(vd.starts_with("digraph vpaths"));
    }
}
