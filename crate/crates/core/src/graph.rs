//! The generalized Petersen graph `P(n,k)` and its unified element universe.
//!
//! Vertices and edges share one id space of `5n` canonical ids:
//!
//! | element           | id       |
//! |-------------------|----------|
//! | `v_i`             | `i`      |
//! | `u_i`             | `n + i`  |
//! | `v_i v_{i+1}`     | `2n + i` |
//! | `v_i u_i` (spoke) | `3n + i` |
//! | `u_i u_{i+k}`     | `4n + i` |

use std::fmt::{self, Write as _};
use std::ops::Range;

use crate::error::{Error, Result};
use crate::set::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphSpec {
    pub n: usize,
    pub k: usize,
}

impl GraphSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let spec = GraphSpec { n, k };
        spec.validate()?;
        Ok(spec)
    }

    /// `n = 2k` is rejected: the inner edges would collapse into duplicates.
    pub fn validate(&self) -> Result<()> {
        if self.n < 3 || self.k < 1 || 2 * self.k >= self.n {
            return Err(Error::InvalidSpec {
                n: self.n,
                k: self.k,
            });
        }
        Ok(())
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{})", self.n, self.k)
    }
}

/// A vertex or an edge of `P(n,k)`. Edges are keyed by their lower
/// construction index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    OuterVertex(usize),
    InnerVertex(usize),
    /// `v_i v_{i+1}`
    OuterEdge(usize),
    /// `v_i u_i`
    Spoke(usize),
    /// `u_i u_{i+k}`
    InnerEdge(usize),
}

impl Element {
    pub fn index(self) -> usize {
        match self {
            Element::OuterVertex(i)
            | Element::InnerVertex(i)
            | Element::OuterEdge(i)
            | Element::Spoke(i)
            | Element::InnerEdge(i) => i,
        }
    }

    fn family(self) -> usize {
        match self {
            Element::OuterVertex(_) => 0,
            Element::InnerVertex(_) => 1,
            Element::OuterEdge(_) => 2,
            Element::Spoke(_) => 3,
            Element::InnerEdge(_) => 4,
        }
    }

    pub fn is_vertex(self) -> bool {
        matches!(self, Element::OuterVertex(_) | Element::InnerVertex(_))
    }

    pub fn is_edge(self) -> bool {
        !self.is_vertex()
    }

    pub fn id(self, n: usize) -> usize {
        self.family() * n + self.index()
    }

    pub fn from_id(n: usize, id: usize) -> Result<Element> {
        if n == 0 || id >= 5 * n {
            return Err(Error::UnknownElement {
                id,
                universe: 5 * n,
            });
        }
        let i = id % n;
        Ok(match id / n {
            0 => Element::OuterVertex(i),
            1 => Element::InnerVertex(i),
            2 => Element::OuterEdge(i),
            3 => Element::Spoke(i),
            _ => Element::InnerEdge(i),
        })
    }

    /// Same element with its index reduced mod `n`.
    pub fn reduced(self, n: usize) -> Element {
        let i = self.index() % n;
        match self {
            Element::OuterVertex(_) => Element::OuterVertex(i),
            Element::InnerVertex(_) => Element::InnerVertex(i),
            Element::OuterEdge(_) => Element::OuterEdge(i),
            Element::Spoke(_) => Element::Spoke(i),
            Element::InnerEdge(_) => Element::InnerEdge(i),
        }
    }

    /// Short tag used by the set file format.
    pub fn tag(self) -> &'static str {
        match self {
            Element::OuterVertex(_) => "v",
            Element::InnerVertex(_) => "u",
            Element::OuterEdge(_) => "vv",
            Element::Spoke(_) => "vu",
            Element::InnerEdge(_) => "uu",
        }
    }

    pub fn from_tag(tag: &str, index: usize) -> Option<Element> {
        Some(match tag {
            "v" => Element::OuterVertex(index),
            "u" => Element::InnerVertex(index),
            "vv" => Element::OuterEdge(index),
            "vu" => Element::Spoke(index),
            "uu" => Element::InnerEdge(index),
            _ => return None,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    spec: GraphSpec,
    // closed mixed neighbourhood of every element, sorted by id
    neighborhoods: Vec<Vec<usize>>,
}

pub fn build_graph(spec: GraphSpec) -> Result<Graph> {
    spec.validate()?;
    let GraphSpec { n, k } = spec;
    let add = |i: usize, d: usize| (i + d) % n;
    let sub = |i: usize, d: usize| (i + n - d) % n;
    let mut neighborhoods = Vec::with_capacity(5 * n);
    for id in 0..5 * n {
        use Element::*;
        let el = Element::from_id(n, id)?;
        let i = el.index();
        let members = match el {
            OuterVertex(_) => [
                el,
                OuterVertex(add(i, 1)),
                OuterVertex(sub(i, 1)),
                InnerVertex(i),
                OuterEdge(i),
                OuterEdge(sub(i, 1)),
                Spoke(i),
            ],
            InnerVertex(_) => [
                el,
                InnerVertex(add(i, k)),
                InnerVertex(sub(i, k)),
                OuterVertex(i),
                InnerEdge(i),
                InnerEdge(sub(i, k)),
                Spoke(i),
            ],
            OuterEdge(_) => [
                el,
                OuterVertex(i),
                OuterVertex(add(i, 1)),
                OuterEdge(sub(i, 1)),
                OuterEdge(add(i, 1)),
                Spoke(i),
                Spoke(add(i, 1)),
            ],
            Spoke(_) => [
                el,
                OuterVertex(i),
                InnerVertex(i),
                OuterEdge(i),
                OuterEdge(sub(i, 1)),
                InnerEdge(i),
                InnerEdge(sub(i, k)),
            ],
            InnerEdge(_) => [
                el,
                InnerVertex(i),
                InnerVertex(add(i, k)),
                InnerEdge(sub(i, k)),
                InnerEdge(add(i, k)),
                Spoke(i),
                Spoke(add(i, k)),
            ],
        };
        let mut ids: Vec<usize> = members.iter().map(|e| e.id(n)).collect();
        ids.sort_unstable();
        ids.dedup();
        neighborhoods.push(ids);
    }
    Ok(Graph {
        spec,
        neighborhoods,
    })
}

impl Graph {
    pub fn new(n: usize, k: usize) -> Result<Graph> {
        build_graph(GraphSpec { n, k })
    }

    pub fn spec(&self) -> GraphSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    /// Number of elements, `5n`.
    pub fn universe(&self) -> usize {
        5 * self.spec.n
    }

    pub fn element(&self, id: usize) -> Result<Element> {
        Element::from_id(self.n(), id)
    }

    pub fn id(&self, el: Element) -> Result<usize> {
        if el.index() >= self.n() {
            return Err(Error::UnknownElement {
                id: el.id(self.n()),
                universe: self.universe(),
            });
        }
        Ok(el.id(self.n()))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let n = self.n();
        (0..5 * n).map(move |id| Element::from_id(n, id).expect("id in range"))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Element> + '_ {
        self.elements().filter(|e| e.is_vertex())
    }

    pub fn edges(&self) -> impl Iterator<Item = Element> + '_ {
        self.elements().filter(|e| e.is_edge())
    }

    /// Endpoints of an edge, `None` for vertices.
    pub fn endpoints(&self, el: Element) -> Option<(Element, Element)> {
        let (n, k) = (self.n(), self.k());
        match el {
            Element::OuterEdge(i) => {
                Some((Element::OuterVertex(i), Element::OuterVertex((i + 1) % n)))
            }
            Element::Spoke(i) => Some((Element::OuterVertex(i), Element::InnerVertex(i))),
            Element::InnerEdge(i) => {
                Some((Element::InnerVertex(i), Element::InnerVertex((i + k) % n)))
            }
            _ => None,
        }
    }

    pub fn degree(&self, vertex: Element) -> usize {
        self.edges()
            .filter_map(|e| self.endpoints(e))
            .filter(|&(a, b)| a == vertex || b == vertex)
            .count()
    }

    /// Sorted ids of `N_m[id]`. Panics on an out-of-range id.
    pub fn neighborhood_ids(&self, id: usize) -> &[usize] {
        &self.neighborhoods[id]
    }

    pub fn mixed_neighborhood(&self, el: Element) -> Result<ElementSet> {
        let id = self.id(el)?;
        Ok(ElementSet::from_ids(
            self.universe(),
            self.neighborhoods[id].iter().copied(),
        ))
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::new(self.universe())
    }

    pub fn set_of<I: IntoIterator<Item = Element>>(&self, elements: I) -> Result<ElementSet> {
        let mut set = self.empty_set();
        for el in elements {
            set.insert(self.id(el)?);
        }
        Ok(set)
    }

    pub fn label(&self, el: Element) -> String {
        match self.endpoints(el) {
            None => match el {
                Element::OuterVertex(i) => format!("v{i}"),
                _ => format!("u{}", el.index()),
            },
            Some((a, b)) => format!("{}{}", self.label(a), self.label(b)),
        }
    }

    pub fn decompose(&self, t: usize) -> Result<BlockDecomposition> {
        decompose(self, t)
    }

    /// Graphviz rendering; members of `highlight` are drawn bold/filled.
    pub fn to_dot(&self, highlight: Option<&ElementSet>) -> String {
        let n = self.n();
        let on = |el: Element| highlight.is_some_and(|s| s.contains(el.id(n)));
        let mut out = String::new();
        let _ = writeln!(out, "graph \"P({},{})\" {{", n, self.k());
        let _ = writeln!(out, "  node [shape=circle];");
        for v in self.vertices() {
            let style = if on(v) {
                " [style=filled, fillcolor=black, fontcolor=white]"
            } else {
                ""
            };
            let _ = writeln!(out, "  {}{};", self.label(v), style);
        }
        for e in self.edges() {
            let (a, b) = self.endpoints(e).expect("edge");
            let style = if on(e) {
                " [style=bold, penwidth=3]"
            } else {
                ""
            };
            let _ = writeln!(out, "  {} -- {}{};", self.label(a), self.label(b), style);
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub index: usize,
    pub columns: Range<usize>,
    pub vertices: Vec<Element>,
    /// Edges with both endpoints inside this block.
    pub internal_edges: Vec<Element>,
    /// Edges whose owning endpoint (`v_i` for `v_i v_{i+1}`, `u_i` for
    /// `u_i u_{i+k}`) lies here and whose other endpoint lies in block
    /// `target`. When every block spans at least `k` columns the target is
    /// the next block, cyclically.
    pub cross_edges: Vec<(Element, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub factor: usize,
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    /// `⌊n/t⌋`
    pub fn full_blocks(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.columns.len() == self.factor)
            .count()
    }

    /// `n mod t`
    pub fn remainder(&self) -> usize {
        self.blocks
            .last()
            .map(|b| b.columns.len() % self.factor)
            .unwrap_or(0)
    }

    pub fn block_of_column(&self, column: usize) -> usize {
        column / self.factor
    }

    /// Cross edges from block `i` into block `j`.
    pub fn cross_between(&self, i: usize, j: usize) -> Vec<Element> {
        self.blocks[i]
            .cross_edges
            .iter()
            .filter(|&&(_, t)| t == j)
            .map(|&(e, _)| e)
            .collect()
    }
}

pub fn decompose(graph: &Graph, t: usize) -> Result<BlockDecomposition> {
    let n = graph.n();
    if t < 1 || t > n {
        return Err(Error::InvalidFactor { t, n });
    }
    let count = n.div_ceil(t);
    let mut blocks: Vec<Block> = (0..count)
        .map(|i| {
            let columns = t * i..(t * (i + 1)).min(n);
            let vertices = columns
                .clone()
                .flat_map(|c| [Element::OuterVertex(c), Element::InnerVertex(c)])
                .collect();
            Block {
                index: i,
                columns,
                vertices,
                internal_edges: Vec::new(),
                cross_edges: Vec::new(),
            }
        })
        .collect();
    for e in graph.edges() {
        let (a, b) = graph.endpoints(e).expect("edge");
        let (ba, bb) = (a.index() / t, b.index() / t);
        if ba == bb {
            blocks[ba].internal_edges.push(e);
        } else {
            blocks[ba].cross_edges.push((e, bb));
        }
    }
    Ok(BlockDecomposition { factor: t, blocks })
}
