//! The adaptive graph of order `n` of a string `w`.
//!
//! Base vertices are the length-`n` contexts at positions `1..=h-n` and the
//! single symbols at positions `n+1..=h`. A transition edge runs from each
//! context to the symbol that follows it and is labelled with the number
//! of times that happens, plus (after [`AdaptiveGraph::assign_codewords`])
//! the codeword the context's Huffman code gives it.
//!
//! For `n = 1` a symbol followed by itself would be a self-loop. Instead
//! the graph gets an auxiliary vertex `σ_aux`, an edge `σ -> σ_aux` carrying
//! the repeat count, and a return edge `σ_aux -> σ` labelled `(0, λ)`.
//! For `n >= 2` every symbol at positions `n+1..=h-1` is linked back to the
//! context that ends with it by an unlabelled `(0, λ)` edge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use crate::adaptive_code::Alphabet;
use crate::bitstream::BitString;
use crate::error::{Error, Result};
use crate::tuple_huffman::huffman;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexKind {
    Base,
    Aux,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    key: Vec<u8>,
    kind: VertexKind,
}

impl Vertex {
    pub fn base(key: impl Into<Vec<u8>>) -> Self {
        Self {
            key: key.into(),
            kind: VertexKind::Base,
        }
    }

    pub fn aux(symbol: u8) -> Self {
        Self {
            key: vec![symbol],
            kind: VertexKind::Aux,
        }
    }

    pub fn key(&self) -> &[u8] {
        &self.key
    }

    pub fn kind(&self) -> VertexKind {
        self.kind
    }

    pub fn is_aux(&self) -> bool {
        self.kind == VertexKind::Aux
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.key {
            if b.is_ascii_graphic() || b == b' ' {
                f.write_char(b as char)?;
            } else {
                write!(f, "\\x{b:02x}")?;
            }
        }
        if self.is_aux() {
            f.write_str("_aux")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: Vertex,
    pub to: Vertex,
}

impl Edge {
    pub fn new(from: Vertex, to: Vertex) -> Self {
        Self { from, to }
    }
}

/// `f(e) = (frequency, codeword)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeLabel {
    pub frequency: u64,
    pub codeword: BitString,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.codeword.is_empty() {
            write!(f, "({},λ)", self.frequency)
        } else {
            write!(f, "({},{})", self.frequency, self.codeword)
        }
    }
}

/// In/out degree of a vertex, split by whether the other endpoint is a base
/// or an auxiliary vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DegreeStats {
    pub in_base: usize,
    pub out_base: usize,
    pub in_aux: usize,
    pub out_aux: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptiveGraph {
    order: usize,
    alphabet: Option<Alphabet>,
    vertices: BTreeSet<Vertex>,
    edges: BTreeMap<Edge, EdgeLabel>,
}

impl AdaptiveGraph {
    /// `G_n(w)` over the distinct bytes of `w`.
    pub fn build(w: &[u8], order: usize) -> Result<Self> {
        let alphabet = if w.is_empty() {
            None
        } else {
            Some(Alphabet::from_data(w)?)
        };
        Self::construct(w, order, alphabet)
    }

    /// `G_n(w)` with successor order taken from `alphabet`.
    pub fn build_with_alphabet(w: &[u8], order: usize, alphabet: &Alphabet) -> Result<Self> {
        if let Some(&b) = w.iter().find(|&&b| !alphabet.contains(b)) {
            return Err(Error::UnknownSymbol(b));
        }
        Self::construct(w, order, Some(alphabet.clone()))
    }

    fn construct(w: &[u8], order: usize, alphabet: Option<Alphabet>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Argument("adaptive graphs have order at least 1"));
        }
        let mut graph = Self {
            order,
            alphabet,
            vertices: BTreeSet::new(),
            edges: BTreeMap::new(),
        };
        let h = w.len();
        if h <= order {
            return Ok(graph);
        }
        for j in 0..h - order {
            graph.vertices.insert(Vertex::base(&w[j..j + order]));
        }
        for j in order..h {
            graph.vertices.insert(Vertex::base(&w[j..=j]));
        }
        for j in 0..h - order {
            let context = &w[j..j + order];
            let next = w[j + order];
            let transition = if order == 1 && context[0] == next {
                let aux = Vertex::aux(next);
                graph.vertices.insert(aux.clone());
                graph
                    .edges
                    .entry(Edge::new(aux.clone(), Vertex::base([next])))
                    .or_default();
                Edge::new(Vertex::base(context), aux)
            } else {
                Edge::new(Vertex::base(context), Vertex::base([next]))
            };
            graph.edges.entry(transition).or_default().frequency += 1;
        }
        if order >= 2 {
            for j in order..h - 1 {
                let link = Edge::new(Vertex::base([w[j]]), Vertex::base(&w[j + 1 - order..=j]));
                graph.edges.entry(link).or_default();
            }
        }
        Ok(graph)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet(&self) -> Option<&Alphabet> {
        self.alphabet.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Edge, &EdgeLabel)> {
        self.edges.iter()
    }

    pub fn contains_vertex(&self, v: &Vertex) -> bool {
        self.vertices.contains(v)
    }

    pub fn label(&self, from: &Vertex, to: &Vertex) -> Option<&EdgeLabel> {
        self.edges.get(&Edge::new(from.clone(), to.clone()))
    }

    fn is_context(&self, v: &Vertex) -> bool {
        !v.is_aux() && v.key.len() == self.order
    }

    fn is_transition(&self, e: &Edge) -> bool {
        self.is_context(&e.from) && (e.to.is_aux() || e.to.key.len() == 1)
    }

    /// Edges from a context to the symbol that follows it (including
    /// `σ -> σ_aux` for order 1).
    pub fn transitions(&self) -> impl Iterator<Item = (&Edge, &EdgeLabel)> {
        self.edges.iter().filter(|(e, _)| self.is_transition(e))
    }

    /// The context vertices: every length-`n` base vertex.
    pub fn contexts(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter().filter(|v| self.is_context(v))
    }

    pub fn degree_stats(&self, v: &Vertex) -> Result<DegreeStats> {
        if !self.vertices.contains(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let mut stats = DegreeStats::default();
        for e in self.edges.keys() {
            if &e.to == v {
                if e.from.is_aux() {
                    stats.in_aux += 1;
                } else {
                    stats.in_base += 1;
                }
            }
            if &e.from == v {
                if e.to.is_aux() {
                    stats.out_aux += 1;
                } else {
                    stats.out_base += 1;
                }
            }
        }
        Ok(stats)
    }

    fn symbol_rank(&self, symbol: u8) -> usize {
        self.alphabet
            .as_ref()
            .and_then(|a| a.index_of(symbol))
            .unwrap_or(symbol as usize)
    }

    /// Outgoing transitions of `context` in the fixed order used to build
    /// its Huffman code: successors to base vertices by ascending symbol
    /// index, then the auxiliary successor, if any.
    pub fn successors_sorted(&self, context: &Vertex) -> Vec<(&Edge, &EdgeLabel)> {
        if !self.is_context(context) {
            return Vec::new();
        }
        let start = Edge::new(context.clone(), Vertex::base(Vec::new()));
        let mut out: Vec<_> = self
            .edges
            .range(start..)
            .take_while(|(e, _)| &e.from == context)
            .filter(|(e, _)| self.is_transition(e))
            .collect();
        out.sort_by_key(|(e, _)| (e.to.is_aux(), self.symbol_rank(e.to.key[0])));
        out
    }

    /// Labels every transition with the codeword the Huffman code of its
    /// context assigns to it.
    pub fn assign_codewords(&mut self) {
        let contexts: Vec<Vertex> = self.contexts().cloned().collect();
        for context in contexts {
            let (edges, frequencies): (Vec<Edge>, Vec<u64>) = self
                .successors_sorted(&context)
                .into_iter()
                .map(|(e, l)| (e.clone(), l.frequency))
                .unzip();
            if edges.is_empty() {
                continue;
            }
            let code = huffman(&frequencies).expect("transition frequencies are positive");
            for (edge, codeword) in edges.iter().zip(code.into_codewords()) {
                self.edges.get_mut(edge).expect("edge exists").codeword = codeword;
            }
        }
    }

    /// Graphviz rendering. Vertices and edges appear in sorted order, so
    /// equal graphs give byte-identical text.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {};", dot_id(v));
        }
        for (e, label) in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                dot_id(&e.from),
                dot_id(&e.to),
                label
            );
        }
        out.push_str("}\n");
        out
    }
}

fn dot_id(v: &Vertex) -> String {
    let mut s = String::from("\"");
    for c in v.to_string().chars() {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}
