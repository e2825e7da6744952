//! Matrix JSON: `{"rows": n, "cols": m, "entries": [["<scalar>", ...], ...]}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::Mat;
use super::scalar::GaussRational;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<GaussRational>>,
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            entries: (0..self.rows()).map(|i| self.row(i).to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(serde::de::Error::custom(format!(
                "declared shape {}x{} does not match entries",
                raw.rows, raw.cols
            )));
        }
        let cols = raw.cols;
        let rows = raw.rows;
        let flat: Vec<GaussRational> = raw.entries.into_iter().flatten().collect();
        Ok(Mat::from_fn(rows, cols, |i, j| flat[i * cols + j].clone()))
    }
}

impl Mat {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Mat> {
        serde_json::from_str(text).map_err(Error::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_round_trip() {
        let m = Mat::from_fn(2, 3, |i, j| {
            GaussRational::from_parts(i as i64, 2, j as i64 - 1, 3)
        });
        let text = m.to_json();
        assert_eq!(Mat::from_json(&text).unwrap(), m);
        assert!(text.starts_with(r#"{"rows":2,"cols":3,"entries":[["0-1/3i","0",""#));
    }

    #[test]
    fn rejects_shape_mismatch_and_bad_scalars() {
        assert!(Mat::from_json(r#"{"rows":2,"cols":1,"entries":[["1"]]}"#).is_err());
        let err = Mat::from_json(r#"{"rows":1,"cols":1,"entries":[["1/0"]]}"#).unwrap_err();
        assert!(err.to_string().contains("zero denominator"), "{err}");
    }
}
