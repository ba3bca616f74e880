//! JSON formats for graphs, clutters, certificates, ideals and cactus
//! decompositions.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::clutter::{Clutter, EliminationCertificate};
use crate::error::{Error, Result};
use crate::families::{CactusDecomposition, Piece, PieceKind};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::ideal::{Monomial, MonomialIdeal};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClutterJson {
    pub n: usize,
    pub d: usize,
    pub edges: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub source_hash: String,
    pub steps: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealJson {
    pub n: usize,
    pub gens: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceJson {
    pub edge: [Vertex; 2],
    pub kind: String,
    pub vertices: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[Vertex; 2]>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub skeleton: GraphJson,
    pub pieces: Vec<PieceJson>,
}

fn parse<T: DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))
}

fn emit<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn set_of(vs: &[Vertex]) -> Result<VertexSet> {
    let mut s = VertexSet::EMPTY;
    for &v in vs {
        if v >= 64 {
            return Err(Error::TooManyVertices { n: v + 1, max: 64 });
        }
        if s.contains(v) {
            return Err(Error::Format(format!("vertex {v} repeated in a set")));
        }
        s.insert(v);
    }
    Ok(s)
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(<[String]>::to_vec),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let edges: Vec<(Vertex, Vertex)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(j.n, &edges)?;
        match j.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    emit(&GraphJson::from(g))
}

/// Rejects repeated edges in either orientation.
pub fn graph_from_json(s: &str) -> Result<Graph> {
    Graph::try_from(parse::<GraphJson>(s)?)
}

pub fn clutter_to_json(c: &Clutter) -> String {
    emit(&ClutterJson { n: c.n(), d: c.d(), edges: c.edges().iter().map(|e| e.to_vec()).collect() })
}

pub fn clutter_from_json(s: &str) -> Result<Clutter> {
    let j: ClutterJson = parse(s)?;
    let edges = j.edges.iter().map(|e| set_of(e)).collect::<Result<Vec<_>>>()?;
    Clutter::new(j.n, j.d, edges)
}

pub fn certificate_to_json(c: &EliminationCertificate) -> String {
    emit(&CertificateJson { source_hash: c.source_hash.clone(), steps: c.steps.iter().map(|s| s.to_vec()).collect() })
}

pub fn certificate_from_json(s: &str) -> Result<EliminationCertificate> {
    let j: CertificateJson = parse(s)?;
    let steps = j.steps.iter().map(|e| set_of(e)).collect::<Result<Vec<_>>>()?;
    Ok(EliminationCertificate { source_hash: j.source_hash, steps })
}

pub fn ideal_to_json(i: &MonomialIdeal) -> String {
    emit(&IdealJson { n: i.n(), gens: i.gens().iter().map(|g| g.exps().to_vec()).collect() })
}

pub fn ideal_from_json(s: &str) -> Result<MonomialIdeal> {
    let j: IdealJson = parse(s)?;
    MonomialIdeal::new(j.n, j.gens.into_iter().map(Monomial::new).collect())
}

pub fn decomposition_to_json(d: &CactusDecomposition) -> String {
    let pieces = d
        .pieces
        .iter()
        .map(|p| PieceJson {
            edge: [p.edge.0, p.edge.1],
            kind: p.kind.name().to_string(),
            vertices: p.vertices.to_vec(),
            edges: p.edges.as_ref().map(|es| es.iter().map(|&(u, v)| [u, v]).collect()),
        })
        .collect();
    emit(&DecompositionJson { skeleton: GraphJson::from(&d.skeleton), pieces })
}

/// Parses the shape only; [`crate::families::validate_decomposition`]
/// checks the cactus conditions.
pub fn decomposition_from_json(s: &str) -> Result<CactusDecomposition> {
    let j: DecompositionJson = parse(s)?;
    let skeleton = Graph::try_from(j.skeleton)?;
    let pieces = j
        .pieces
        .into_iter()
        .map(|p| {
            let kind = match p.kind.as_str() {
                "chordal" => PieceKind::Chordal,
                "cycle" => PieceKind::Cycle,
                other => return Err(Error::Format(format!("unknown piece kind `{other}`"))),
            };
            Ok(Piece {
                edge: (p.edge[0], p.edge[1]),
                kind,
                vertices: set_of(&p.vertices)?,
                edges: p.edges.map(|es| es.into_iter().map(|e| (e[0], e[1])).collect()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CactusDecomposition { skeleton, pieces })
}
