//! Plain-text weighted graph format.
//!
//! ```text
//! p 4          # vertex count, must come first
//! v 0 1.5      # vertex weight (default 1)
//! e 0 1        # undirected edge
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::scalar::Scalar;

pub fn read_graph<T: Scalar>(text: &str) -> Result<WeightedGraph<T>> {
    let mut order: Option<usize> = None;
    let mut weights: Vec<Option<T>> = Vec::new();
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        let index = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| err(format!("bad vertex {s:?}")))?;
            let n = order.ok_or_else(|| err("vertex before header".into()))?;
            if v >= n {
                return Err(err(format!("vertex {v} out of range for {n} vertices")));
            }
            Ok(v)
        };
        match (tok[0], tok.len()) {
            ("p", 2) => {
                if order.is_some() {
                    return Err(err("second header".into()));
                }
                let n: usize = tok[1].parse().map_err(|_| err(format!("bad order {:?}", tok[1])))?;
                order = Some(n);
                weights = vec![None; n];
            }
            ("v", 3) => {
                let v = index(tok[1])?;
                let w = T::parse_decimal(tok[2]).ok_or_else(|| err(format!("bad weight {:?}", tok[2])))?;
                if w.is_negative() {
                    return Err(err("negative weight".into()));
                }
                if weights[v].replace(w).is_some() {
                    return Err(err(format!("weight of vertex {v} given twice")));
                }
            }
            ("e", 3) => {
                let (a, b) = (index(tok[1])?, index(tok[2])?);
                if a == b {
                    return Err(err(format!("self-loop at {a}")));
                }
                let key = (a.min(b), a.max(b));
                if edges.contains(&key) {
                    return Err(err(format!("duplicate edge {a}-{b}")));
                }
                edges.push(key);
            }
            _ => return Err(err(format!("unrecognized line {line:?}"))),
        }
    }
    let n = order.ok_or_else(|| Error::Parse { line: 0, msg: "missing header".into() })?;
    let weights = weights.into_iter().map(|w| w.unwrap_or_else(T::one)).collect();
    WeightedGraph::new(n, &edges, weights)
}

/// Canonical text form: header, every weight, then sorted edges.
pub fn write_graph<T: Scalar>(g: &WeightedGraph<T>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p {}", g.order());
    for (v, w) in g.weights().iter().enumerate() {
        let _ = writeln!(s, "v {v} {w}");
    }
    for (a, b) in g.edges() {
        let _ = writeln!(s, "e {a} {b}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn reads_example() {
        let g: WeightedGraph = read_graph("p 3\nv 0 1.0\nv 1 2.0\nv 2 1.0\ne 0 1\ne 1 2\n").unwrap();
        assert_eq!(g.weights(), &[1.0, 2.0, 1.0]);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn round_trip_is_exact() {
        let g = WeightedGraph::new(3, &[(0, 2)], vec![0.1, 1.0 / 3.0, 7e-300]).unwrap();
        assert_eq!(read_graph::<f64>(&write_graph(&g)).unwrap(), g);
        let r = g.map_weights(|w| BigRational::from_float(*w).unwrap());
        assert_eq!(read_graph::<BigRational>(&write_graph(&r)).unwrap(), r);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "v 0 1",
            "p 2\ne 0 2",
            "p 2\ne 0 0",
            "p 2\ne 0 1\ne 1 0",
            "p 2\nv 0 -1",
            "p 2\nv 0 1\nv 0 2",
            "p 2\nx 1",
            "",
        ] {
            assert!(read_graph::<f64>(bad).is_err(), "{bad:?}");
        }
    }
}
