//! Edge-list text format: first line `n m directed|undirected`, then `m`
//! lines `u v` with an optional third column `re,im` for non-unit weights.
//! Undirected files list each edge once.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use super::{Digraph, GraphError};

pub fn write_edge_list(g: &Digraph, directed: bool, out: &mut impl Write) -> Result<(), GraphError> {
    if directed {
        writeln!(out, "{} {} directed", g.vertex_count(), g.arc_count())?;
        for (u, v, c) in g.arcs() {
            write_line(out, u, v, c)?;
        }
    } else {
        if !g.is_symmetric() {
            return Err(GraphError::NotSymmetric);
        }
        let edges: Vec<(usize, usize, Complex64)> =
            g.arcs().filter(|&(u, v, _)| u < v).collect();
        writeln!(out, "{} {} undirected", g.vertex_count(), edges.len())?;
        for (u, v, c) in edges {
            write_line(out, u, v, c)?;
        }
    }
    Ok(())
}

fn write_line(out: &mut impl Write, u: usize, v: usize, c: Complex64) -> std::io::Result<()> {
    if c == Complex64::new(1.0, 0.0) {
        writeln!(out, "{} {}", u, v)
    } else {
        writeln!(out, "{} {} {:e},{:e}", u, v, c.re, c.im)
    }
}

pub fn read_edge_list(input: &mut impl BufRead) -> Result<Digraph, GraphError> {
    let mut lines = input.lines().enumerate();
    let (n, m, directed) = loop {
        let (idx, line) = lines.next().ok_or_else(|| GraphError::Parse {
            line: 1,
            message: "missing header line".into(),
        })?;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        break parse_header(idx + 1, &line)?;
    };

    let mut arcs: Vec<(usize, usize, Complex64)> = Vec::with_capacity(m);
    let mut read = 0usize;
    for (idx, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if read == m {
            return Err(GraphError::Parse {
                line: idx + 1,
                message: format!("expected {} arcs but found more", m),
            });
        }
        let (u, v, c) = parse_arc_line(idx + 1, trimmed)?;
        arcs.push((u, v, c));
        if !directed {
            arcs.push((v, u, c));
        }
        read += 1;
    }
    if read != m {
        return Err(GraphError::Parse {
            line: 0,
            message: format!("header promised {} arcs but file has {}", m, read),
        });
    }
    Digraph::from_weighted_arcs(n, arcs)
}

fn parse_header(line_no: usize, line: &str) -> Result<(usize, usize, bool), GraphError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(GraphError::Parse {
            line: line_no,
            message: format!("header must be 'n m directed|undirected', got '{}'", line),
        });
    }
    let n = parts[0].parse::<usize>().map_err(|e| GraphError::Parse {
        line: line_no,
        message: format!("bad vertex count '{}': {}", parts[0], e),
    })?;
    let m = parts[1].parse::<usize>().map_err(|e| GraphError::Parse {
        line: line_no,
        message: format!("bad arc count '{}': {}", parts[1], e),
    })?;
    let directed = match parts[2] {
        "directed" => true,
        "undirected" => false,
        other => {
            return Err(GraphError::Parse {
                line: line_no,
                message: format!("expected 'directed' or 'undirected', got '{}'", other),
            })
        }
    };
    Ok((n, m, directed))
}

fn parse_arc_line(line_no: usize, line: &str) -> Result<(usize, usize, Complex64), GraphError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 2 && parts.len() != 3 {
        return Err(GraphError::Parse {
            line: line_no,
            message: format!("expected 'u v [re,im]', got '{}'", line),
        });
    }
    let u = parts[0].parse::<usize>().map_err(|e| GraphError::Parse {
        line: line_no,
        message: format!("bad source '{}': {}", parts[0], e),
    })?;
    let v = parts[1].parse::<usize>().map_err(|e| GraphError::Parse {
        line: line_no,
        message: format!("bad target '{}': {}", parts[1], e),
    })?;
    let c = if parts.len() == 3 {
        let (re_s, im_s) = parts[2].split_once(',').ok_or_else(|| GraphError::Parse {
            line: line_no,
            message: format!("weight must be 're,im', got '{}'", parts[2]),
        })?;
        let re = re_s.parse::<f64>().map_err(|e| GraphError::Parse {
            line: line_no,
            message: format!("bad weight real part '{}': {}", re_s, e),
        })?;
        let im = im_s.parse::<f64>().map_err(|e| GraphError::Parse {
            line: line_no,
            message: format!("bad weight imaginary part '{}': {}", im_s, e),
        })?;
        Complex64::new(re, im)
    } else {
        Complex64::new(1.0, 0.0)
    };
    Ok((u, v, c))
}
