//! Numeric CSV output: comma separated, `\n` line endings, one header row,
//! every value with 17 significant digits.

use std::io::{self, Write};

use crate::sim::TraceRow;

pub const FREE_RESPONSE_HEADER: &str = "t,x_closed,y_closed,x_rk4,y_rk4,err_x,err_y";

/// Scientific notation with 17 significant digits, which round-trips any f64.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_row<W: Write>(w: &mut W, values: &[f64]) -> io::Result<()> {
    let mut line = String::with_capacity(values.len() * 24);
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        line.push_str(&format_number(*v));
    }
    line.push('\n');
    w.write_all(line.as_bytes())
}

pub fn write_trace<W: Write>(w: &mut W, rows: &[TraceRow]) -> io::Result<()> {
    w.write_all(TraceRow::HEADER.as_bytes())?;
    w.write_all(b"\n")?;
    for r in rows {
        write_row(w, &r.values())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(format_number(1.5), "1.5000000000000000e0");
        assert_eq!(format_number(-0.1), "-1.0000000000000001e-1");
        assert_eq!(format_number(0.0), "0.0000000000000000e0");
    }

    #[test]
    fn trace_layout() {
        let row = TraceRow {
            t: 0.0,
            x: 1.0,
            y: 2.0,
            xdot: 3.0,
            ydot: 4.0,
            xd: 5.0,
            yd: 6.0,
            fex: 7.0,
            fey: 8.0,
            taux: 9.0,
            tauy: 10.0,
            taux_oracle: 11.0,
            tauy_oracle: 12.0,
        };
        let mut buf = Vec::new();
        write_trace(&mut buf, &[row, row]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(
            lines[0],
            "t,x,y,xdot,ydot,xd,yd,fex,fey,taux,tauy,taux_oracle,tauy_oracle"
        );
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[3], "");
        assert_eq!(lines[1].split(',').count(), 13);
        assert!(!text.contains('\r'));
    }

    proptest! {
        #[test]
        fn numbers_round_trip(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let back: f64 = format_number(x).parse().unwrap();
            prop_assert_eq!(back.to_bits(), x.to_bits());
        }
    }
}
