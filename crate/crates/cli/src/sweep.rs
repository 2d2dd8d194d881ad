use std::fmt::Write as _;

use rayon::prelude::*;

use boson_bounds::{evaluate, Error, Result};

use crate::config::SweepConfig;

/// One CSV row: the abscissa, then one cell per bound. `None` marks a
/// parameter point where the bound is infeasible or outside its domain.
fn row(cfg: &SweepConfig, x: f64) -> Result<Vec<Option<f64>>> {
    let ch = match cfg.channel_at(x) {
        Ok(ch) => ch,
        Err(Error::Domain(_) | Error::InvalidChannel(_)) => {
            return Ok(vec![None; cfg.bounds.len()])
        }
        Err(e) => return Err(e),
    };
    let ns = cfg.ns_at(x);
    cfg.bounds
        .iter()
        .map(|&k| match evaluate(&ch, ns, k, None) {
            Ok(r) => Ok(Some(r.value_bits)),
            Err(Error::Infeasible(_) | Error::Domain(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect()
}

fn cell(out: &mut String, v: f64) {
    write!(out, "{v:.11e}").expect("writing to a String");
}

/// Evaluates the grid in parallel and renders it as CSV in grid order.
pub fn run(cfg: &SweepConfig) -> Result<String> {
    let xs = cfg.grid();
    let rows: Vec<Vec<Option<f64>>> = xs.par_iter().map(|&x| row(cfg, x)).collect::<Result<_>>()?;

    let mut out = String::from(cfg.var.name());
    for k in &cfg.bounds {
        out.push(',');
        out.push_str(k.as_str());
    }
    out.push('\n');
    for (x, cells) in xs.iter().zip(rows) {
        cell(&mut out, *x);
        for c in cells {
            out.push(',');
            if let Some(v) = c {
                cell(&mut out, v);
            }
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infeasible_cells_are_empty() {
        let cfg = SweepConfig::parse(
            "channel = thermal\neta = 0.6\nsweep = nb\nstart = 0\nstop = 2\npoints = 3\nns = 1\nbounds = QL, RMG",
        )
        .unwrap();
        let csv = run(&cfg).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "nb,QL,RMG");
        // η′ = 0.6 − 0.4·2 < 0 at the last point.
        assert!(lines[3].ends_with(','), "{}", lines[3]);
        assert_eq!(lines[1].split(',').count(), 3);
    }
}
