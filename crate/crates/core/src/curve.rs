//! Distance-versus-time curves and their CSV/JSON forms.
//!
//! CSV columns are frozen: `r,s_exact,s_float,route` for separation and
//! `r,tv_exact,tv_float,route` for total variation, with a trailing `q`
//! column for `GL(n, q)` curves. Exact values are written `num/den`, floats
//! with 17 significant digits, and the route field joins the agreeing
//! computation routes with `+`.

use std::fmt::Write as _;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::scalar::{format_exact, format_float, to_f64, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Separation,
    TotalVariation,
}

impl Metric {
    fn prefix(self) -> &'static str {
        match self {
            Metric::Separation => "s",
            Metric::TotalVariation => "tv",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveRecord {
    pub r: u32,
    pub value: ExactScalar,
    pub float_value: f64,
    pub route: String,
}

impl Serialize for CurveRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CurveRecord", 4)?;
        s.serialize_field("r", &self.r)?;
        s.serialize_field("exact", &format_exact(&self.value))?;
        s.serialize_field("float", &self.float_value)?;
        s.serialize_field("route", &self.route)?;
        s.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Curve {
    pub metric: Metric,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub records: Vec<CurveRecord>,
}

impl Curve {
    pub fn new(metric: Metric, n: usize, q: Option<u64>) -> Self {
        Curve { metric, n, q, records: Vec::new() }
    }

    pub fn push(&mut self, r: u32, value: ExactScalar, route: impl Into<String>) {
        let float_value = to_f64(&value);
        self.records.push(CurveRecord { r, value, float_value, route: route.into() });
    }

    pub fn values(&self) -> Vec<&ExactScalar> {
        self.records.iter().map(|rec| &rec.value).collect()
    }

    /// First `r` where the curve goes up, if any.
    pub fn first_increase(&self) -> Option<u32> {
        self.records
            .windows(2)
            .find(|w| w[1].value > w[0].value)
            .map(|w| w[1].r)
    }

    pub fn csv_header(&self) -> String {
        let p = self.metric.prefix();
        let mut h = format!("r,{p}_exact,{p}_float,route");
        if self.q.is_some() {
            h.push_str(",q");
        }
        h
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.csv_header();
        out.push('\n');
        for rec in &self.records {
            write!(
                out,
                "{},{},{},{}",
                rec.r,
                format_exact(&rec.value),
                format_float(rec.float_value),
                rec.route
            )
            .unwrap();
            if let Some(q) = self.q {
                write!(out, ",{q}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn csv_layout() {
        let mut c = Curve::new(Metric::Separation, 3, None);
        c.push(0, int(1), "closed");
        c.push(2, ratio(1, 3), "closed");
        assert_eq!(
            c.to_csv(),
            "r,s_exact,s_float,route\n0,1/1,1.0000000000000000e0,closed\n\
             2,1/3,3.3333333333333331e-1,closed\n"
        );
        let mut g = Curve::new(Metric::TotalVariation, 2, Some(2));
        g.push(0, ratio(1, 2), "matrix");
        assert_eq!(g.to_csv(), "r,tv_exact,tv_float,route,q\n0,1/2,5.0000000000000000e-1,matrix,2\n");
    }

    #[test]
    fn detects_increase() {
        let mut c = Curve::new(Metric::Separation, 3, None);
        c.push(0, int(1), "x");
        c.push(1, ratio(1, 2), "x");
        assert_eq!(c.first_increase(), None);
        c.push(2, ratio(2, 3), "x");
        assert_eq!(c.first_increase(), Some(2));
    }

    #[test]
    fn json_shape() {
        let mut c = Curve::new(Metric::Separation, 2, Some(2));
        c.push(2, ratio(5, 8), "closed");
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["records"][0]["exact"], "5/8");
        assert_eq!(v["q"], 2);
        assert_eq!(v["metric"], "separation");
    }
}
