//! Plain-text export of a measure.
//!
//! ```text
//! alpha,0.25
//! window_a,1
//! center,weight
//! 0,0.0200...
//! 0.355...,0.0491...
//! known_root,0,4
//! ```
//!
//! `known_root` rows are optional and may appear anywhere after the header.

use crate::error::{Error, Result};

use super::{DeltaMeasure, KnownRoot};

pub fn measure_to_csv(m: &DeltaMeasure<f64>) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let mut put = |rec: &[String]| w.write_record(rec).expect("writing to memory");
    put(&["alpha".into(), format!("{:?}", m.alpha)]);
    put(&["window_a".into(), format!("{:?}", m.window_a)]);
    put(&["center".into(), "weight".into()]);
    for (b, c) in m.centers.iter().zip(&m.weights) {
        put(&[format!("{b:?}"), format!("{c:?}")]);
    }
    for r in &m.known_roots {
        put(&["known_root".into(), format!("{:?}", r.at), r.multiplicity.to_string()]);
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("ascii output")
}

pub fn measure_from_csv(text: &str) -> Result<DeltaMeasure<f64>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut alpha = None;
    let mut window = None;
    let mut header_seen = false;
    let (mut centers, mut weights, mut roots) = (Vec::new(), Vec::new(), Vec::new());
    for (i, rec) in r.records().enumerate() {
        let line = i + 1;
        let rec = rec.map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        let num = |k: usize| -> Result<f64> {
            let s = rec.get(k).ok_or_else(|| Error::Parse { line, msg: "missing field".into() })?;
            s.parse().map_err(|_| Error::Parse { line, msg: format!("not a number: {s}") })
        };
        match rec.get(0).unwrap_or("") {
            "" => continue,
            "alpha" => alpha = Some(num(1)?),
            "window_a" => window = Some(num(1)?),
            "center" => header_seen = true,
            "known_root" => {
                let m = rec.get(2).and_then(|s| s.parse().ok()).ok_or_else(|| Error::Parse { line, msg: "bad multiplicity".into() })?;
                roots.push(KnownRoot { at: num(1)?, multiplicity: m });
            }
            _ if header_seen => {
                centers.push(num(0)?);
                weights.push(num(1)?);
            }
            other => return Err(Error::Parse { line, msg: format!("unexpected row {other}") }),
        }
    }
    let alpha = alpha.ok_or_else(|| Error::MalformedMeasure("missing alpha row".into()))?;
    let window = window.ok_or_else(|| Error::MalformedMeasure("missing window_a row".into()))?;
    Ok(DeltaMeasure::new(alpha, window, centers, weights)?.with_known_roots(roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::three_delta;

    #[test]
    fn round_trip() {
        let m = three_delta(0.5, 0.25, 0.3).unwrap();
        let text = measure_to_csv(&m);
        assert!(text.starts_with("alpha,0.25\nwindow_a,0.5\ncenter,weight\n"), "{text}");
        assert_eq!(measure_from_csv(&text).unwrap(), m);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(measure_from_csv("window_a,1\ncenter,weight\n0,1\n"), Err(Error::MalformedMeasure(_))));
        assert!(matches!(measure_from_csv("alpha,x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(measure_from_csv("alpha,1\n0,1\n"), Err(Error::Parse { line: 2, .. })));
    }
}
