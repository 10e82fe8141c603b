//! CSV form of [`ExperimentResult`]: a header row, integers written plainly,
//! reals with 8 significant digits.

use std::io::{Read, Write};

use coupled_tent::experiments::{Cell, ExperimentResult};

use crate::error::CliError;

pub fn format_cell(c: &Cell) -> String {
    match c {
        Cell::Int(n) => n.to_string(),
        Cell::Real(x) => format!("{x:.7e}"),
    }
}

pub fn parse_cell(s: &str) -> Result<Cell, CliError> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(Cell::Int(n));
    }
    s.parse::<f64>().map(Cell::Real).map_err(|_| CliError::Table(format!("`{s}` is not a number")))
}

pub fn write_csv<W: Write>(out: W, result: &ExperimentResult) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let wrap = |e: csv::Error| CliError::io("writing CSV", e.into());
    w.write_record(&result.columns).map_err(wrap)?;
    for row in &result.rows {
        w.write_record(row.iter().map(format_cell)).map_err(wrap)?;
    }
    w.flush().map_err(|e| CliError::io("writing CSV", e))
}

/// Reads a table written by [`write_csv`]; run metadata is not stored.
pub fn read_csv<R: Read>(input: R) -> Result<ExperimentResult, CliError> {
    let mut r = csv::Reader::from_reader(input);
    let bad = |e: csv::Error| CliError::Table(e.to_string());
    let columns: Vec<String> = r.headers().map_err(bad)?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(bad)?;
        rows.push(record.iter().map(parse_cell).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(ExperimentResult { columns, rows, meta: Default::default() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_use_fixed_precision() {
        assert_eq!(format_cell(&Cell::Int(100_000)), "100000");
        assert_eq!(format_cell(&Cell::Real(0.0031415926535)), "3.1415927e-3");
        assert_eq!(format_cell(&Cell::Real(f64::NAN)), "NaN");
    }

    #[test]
    fn round_trip_keeps_printed_values() {
        let result = ExperimentResult {
            columns: vec!["n_iter".into(), "e1".into()],
            rows: vec![vec![Cell::Int(10), Cell::Real(0.123456789)], vec![Cell::Int(100), Cell::Real(1.5)]],
            meta: Default::default(),
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, &result).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "n_iter,e1\n10,1.2345679e-1\n100,1.5000000e0\n");
        let back = read_csv(&buf[..]).unwrap();
        assert_eq!(back.columns, result.columns);
        assert_eq!(back.rows[0], vec![Cell::Int(10), Cell::Real(0.12345679)]);
        assert_eq!(back.rows[1], vec![Cell::Int(100), Cell::Real(1.5)]);
    }

    #[test]
    fn garbage_is_rejected() {
        assert!(read_csv("a,b\n1,x\n".as_bytes()).is_err());
    }
}
