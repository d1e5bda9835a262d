//! Text serialisation helpers shared by the CSV writers.

use std::fmt::Write as _;

/// Formats a float with 17 significant digits, enough to round-trip exactly.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        // Normalises negative zero.
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

/// Builds a CSV document (LF line endings, header row) from rows of cells.
pub fn csv_document<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let mut first = true;
        for cell in row {
            if !first {
                out.push(',');
            }
            first = false;
            let _ = write!(out, "{cell}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn csv_layout() {
        let doc = csv_document(&["x", "y"], vec![vec!["1".to_string(), "2".to_string()]]);
        assert_eq!(doc, "x,y\n1,2\n");
    }

    proptest! {
        #[test]
        fn floats_round_trip(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL) {
            let text = fmt_f64(x);
            prop_assert_eq!(text.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
