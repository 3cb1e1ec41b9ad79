use std::io::Read;
use std::path::PathBuf;

use clap::Args;
use pspec_core::graph::{kr_plus, turan_graph, Graph};
use pspec_core::io::{parse_graph6, parse_graphs, read_graphs};

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Graph in graph6 format
    #[arg(long)]
    pub graph6: Option<String>,
    /// File with graph6 lines or an edge list ("-" for stdin)
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Built-in constructor: turan:R,N  kr-plus:R,S,T  complete:N  cycle:N
    /// path:N  empty:N  multipartite:A,B,...
    #[arg(long)]
    pub build: Option<String>,
}

impl InputArgs {
    pub fn graphs(&self) -> Result<Vec<Graph>, String> {
        if let Some(text) = &self.graph6 {
            return Ok(vec![parse_graph6(text.trim()).map_err(|e| format!("malformed graph6 {text:?}: {e}"))?]);
        }
        if let Some(path) = &self.file {
            let graphs = if path.as_os_str() == "-" {
                let mut text = String::new();
                std::io::stdin().read_to_string(&mut text).map_err(|e| format!("cannot read stdin: {e}"))?;
                parse_graphs(&text)
            } else {
                read_graphs(path)
            };
            let graphs = graphs.map_err(|e| format!("{}: {e}", path.display()))?;
            if graphs.is_empty() {
                return Err(format!("{}: no graphs found", path.display()));
            }
            return Ok(graphs);
        }
        let spec = self.build.as_deref().expect("clap enforces one source");
        Ok(vec![build(spec)?])
    }

    pub fn single(&self) -> Result<Graph, String> {
        let mut graphs = self.graphs()?;
        if graphs.len() != 1 {
            return Err(format!("this subcommand takes one graph, got {}", graphs.len()));
        }
        Ok(graphs.pop().expect("one graph"))
    }
}

pub fn build(spec: &str) -> Result<Graph, String> {
    let (kind, args) = spec.split_once(':').ok_or_else(|| format!("constructor {spec:?} needs the form kind:args"))?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|a| a.trim().parse::<usize>().map_err(|_| format!("constructor argument {a:?} is not a nonnegative integer")))
        .collect::<Result<_, _>>()?;
    let arity = |k: usize| {
        if nums.len() == k {
            Ok(())
        } else {
            Err(format!("{kind} takes {k} argument(s), got {}", nums.len()))
        }
    };
    let g = match kind {
        "turan" => {
            arity(2)?;
            turan_graph(nums[0], nums[1])
        }
        "kr-plus" => {
            arity(3)?;
            kr_plus(nums[0], nums[1], nums[2])
        }
        "complete" => {
            arity(1)?;
            Graph::complete(nums[0])
        }
        "cycle" => {
            arity(1)?;
            Graph::cycle(nums[0])
        }
        "path" => {
            arity(1)?;
            Graph::path(nums[0])
        }
        "empty" => {
            arity(1)?;
            Graph::empty(nums[0])
        }
        "multipartite" => Graph::complete_multipartite(&nums),
        other => return Err(format!("unknown constructor {other:?}")),
    };
    g.map_err(|e| e.to_string())
}
