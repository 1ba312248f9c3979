//! Plain-text edge lists: one `u v` pair per line, 0-based vertices, an
//! optional `n=<int>` header, `#` comments and blank lines ignored.

use std::fmt::Write as _;

use steklov::graph::GraphError;
use steklov::Tree;

#[derive(Debug, thiserror::Error)]
pub enum EdgeListError {
    #[error("line {line}: expected two vertex indices, found {text:?}")]
    BadLine { line: usize, text: String },
    #[error("line {line}: header {text:?} is not of the form n=<int>")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: header must come before any edge")]
    LateHeader { line: usize },
    #[error("no edges")]
    NoEdges,
    #[error("not a tree: {0}")]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub order: Option<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl EdgeList {
    pub fn parse(text: &str) -> Result<Self, EdgeListError> {
        let mut order = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content
                .strip_prefix("n=")
                .or_else(|| content.strip_prefix("n ="))
            {
                if !edges.is_empty() || order.is_some() {
                    return Err(EdgeListError::LateHeader { line });
                }
                let n = rest.trim().parse().map_err(|_| EdgeListError::BadHeader {
                    line,
                    text: content.to_string(),
                })?;
                order = Some(n);
                continue;
            }
            let mut fields = content.split_whitespace().map(str::parse::<usize>);
            match (fields.next(), fields.next(), fields.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
                _ => {
                    return Err(EdgeListError::BadLine {
                        line,
                        text: content.to_string(),
                    })
                }
            }
        }
        if edges.is_empty() {
            return Err(EdgeListError::NoEdges);
        }
        Ok(Self { order, edges })
    }

    pub fn into_tree(self) -> Result<Tree, EdgeListError> {
        let tree = match self.order {
            Some(n) => Tree::with_order(n, &self.edges)?,
            None => Tree::from_edges(&self.edges)?,
        };
        Ok(tree)
    }
}

pub fn parse_tree(text: &str) -> Result<Tree, EdgeListError> {
    EdgeList::parse(text)?.into_tree()
}

pub fn write_edge_list(tree: &Tree) -> String {
    let mut out = format!("n={}\n", tree.order());
    for &(u, v) in tree.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
