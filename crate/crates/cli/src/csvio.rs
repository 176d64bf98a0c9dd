//! CSV exchange: `x,value` for sampled functions, `t,x,u` for solution dumps.
//!
//! Numbers are written in shortest round-trip form, so reading a file back
//! reproduces every value bit for bit.

use std::io::{Read, Write};

use fraccore::grid::{make_uniform_grid, SampledFunction};
use fraccore::pde::DiffusionSolution;

use crate::CliError;

/// Shortest decimal that parses back to exactly `v`.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Input(format!("csv: {e}"))
}

pub fn write_sampled(out: impl Write, f: &SampledFunction) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "value"]).map_err(csv_err)?;
    for (x, v) in f.grid.nodes().into_iter().zip(&f.values) {
        w.write_record([format_number(x), format_number(*v)])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::Input(format!("write: {e}")))
}

pub fn write_solution(out: impl Write, s: &DiffusionSolution) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "x", "u"]).map_err(csv_err)?;
    let xs: Vec<String> = s.x_grid.nodes().into_iter().map(format_number).collect();
    for (t, row) in s.t_grid.nodes().into_iter().zip(&s.u) {
        let t = format_number(t);
        for (x, u) in xs.iter().zip(row) {
            w.write_record([t.as_str(), x.as_str(), &format_number(*u)])
                .map_err(csv_err)?;
        }
    }
    w.flush().map_err(|e| CliError::Input(format!("write: {e}")))
}

/// Read an `x,value` file. The x column must be a uniform grid; it is
/// rebuilt from its first and last node.
pub fn read_sampled(input: impl Read) -> Result<SampledFunction, CliError> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(csv_err)?;
    if headers.iter().map(str::trim).ne(["x", "value"]) {
        return Err(CliError::Input(format!(
            "expected header x,value, found {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let num = |i: usize| -> Result<f64, CliError> {
            let field = rec
                .get(i)
                .ok_or_else(|| CliError::Input(format!("row {}: missing column {i}", line + 2)))?;
            field
                .trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("row {}: not a number: {field:?}", line + 2)))
        };
        xs.push(num(0)?);
        vs.push(num(1)?);
    }
    if xs.len() < 2 {
        return Err(CliError::Input("need at least two rows".into()));
    }
    let n = xs.len() - 1;
    let grid = make_uniform_grid(xs[0], xs[n], n)?;
    for (i, x) in xs.iter().enumerate() {
        if (x - grid.node(i)).abs() > 1e-6 * grid.h {
            return Err(CliError::Input(format!(
                "x column is not uniform at row {}",
                i + 2
            )));
        }
    }
    Ok(SampledFunction::new(grid, vs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fraccore::grid::sample;

    #[test]
    fn number_format_round_trips() {
        for v in [
            0.0,
            -0.0,
            1.0,
            0.1,
            1.0 / 3.0,
            1e-300,
            -2.5e300,
            123456.789,
            5e-324,
            1e16,
        ] {
            let s = format_number(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(1e-7), "1e-7");
    }

    #[test]
    fn sampled_round_trip() {
        let g = make_uniform_grid(-1.0, 2.0, 30).unwrap();
        let f = sample(|x| (3.0 * x).sin() / 7.0, &g).unwrap();
        let mut buf = Vec::new();
        write_sampled(&mut buf, &f).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x,value\n-1,"));
        let back = read_sampled(buf.as_slice()).unwrap();
        assert_eq!(back.values, f.values);
        assert_eq!(back.grid.n, 30);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(read_sampled("a,b\n1,2\n2,3\n".as_bytes()).is_err());
        assert!(read_sampled("x,value\n0,1\n".as_bytes()).is_err());
        assert!(read_sampled("x,value\n0,1\n1,oops\n".as_bytes()).is_err());
        assert!(read_sampled("x,value\n0,1\n1,2\n3,3\n".as_bytes()).is_err());
    }
}
