//! Canonical JSON text and value encodings.
//!
//! Floats are written as `{:.16e}` (17 significant digits), so parsing and
//! re-serializing a canonical document reproduces it byte for byte. Object
//! keys come out sorted.

use std::io;

use quatplace::{QMatrix, QPoly, Quaternion, SimilarityClass, Spectrum};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Value};

pub struct CanonicalFormatter {
    inner: PrettyFormatter<'static>,
}

impl Default for CanonicalFormatter {
    fn default() -> Self {
        Self {
            inner: PrettyFormatter::with_indent(b"  "),
        }
    }
}

impl Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", fmt_f64(value))
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Serializes with [`CanonicalFormatter`] and a trailing newline.
pub fn to_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter::default());
    value.serialize(&mut ser).expect("serializing into memory");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

/// `NaN` and infinities become `null`.
pub fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}

pub fn quaternion(q: Quaternion) -> Value {
    Value::Array(q.to_array().into_iter().map(number).collect())
}

pub fn matrix(m: &QMatrix) -> Value {
    Value::Array(
        m.iter_rows()
            .map(|row| Value::Array(row.iter().map(|&q| quaternion(q)).collect()))
            .collect(),
    )
}

/// Column vectors as a flat list of quaternions.
pub fn column(m: &QMatrix) -> Value {
    Value::Array(m.as_slice().iter().map(|&q| quaternion(q)).collect())
}

pub fn polynomial(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|&q| quaternion(q)).collect())
}

pub fn spectrum(s: &Spectrum) -> Value {
    Value::Array(
        s.entries()
            .iter()
            .map(|e| {
                json!({
                    "re": number(e.class.re),
                    "im": number(e.class.im_norm),
                    "multiplicity": e.multiplicity,
                    "rounded": rounded_class(e.class),
                })
            })
            .collect(),
    )
}

/// Two significant digits, trailing zeros dropped: `3.3333 → "3.3"`,
/// `0.3333 → "0.33"`, `2.0 → "2"`.
pub fn round_sig2(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v == 0.0 { "0".into() } else { format!("{v}") };
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = 1 - exp;
    let s = if decimals > 0 {
        let s = format!("{:.*}", decimals as usize, v);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let scale = 10f64.powi(-decimals);
        format!("{}", (v / scale).round() * scale)
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Quaternion in the `a+bi+cj+dk` style with two significant digits per
/// component. Components below `1e-9·max(1, |q|)` count as rounding noise
/// and are omitted.
pub fn rounded_quaternion(q: Quaternion) -> String {
    let noise = 1e-9 * q.norm().max(1.0);
    let mut out = String::new();
    for (v, unit) in [(q.w, ""), (q.x, "i"), (q.y, "j"), (q.z, "k")] {
        let r = round_sig2(if v.abs() < noise { 0.0 } else { v });
        if r == "0" {
            continue;
        }
        let (neg, mag) = match r.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, r),
        };
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if unit.is_empty() || mag != "1" {
            out.push_str(&mag);
        }
        out.push_str(unit);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn rounded_class(c: SimilarityClass) -> String {
    format!("[{}]", rounded_quaternion(c.quaternion()))
}

pub fn rounded_matrix(m: &QMatrix) -> Value {
    Value::Array(
        m.iter_rows()
            .map(|row| Value::Array(row.iter().map(|&q| Value::String(rounded_quaternion(q))).collect()))
            .collect(),
    )
}

pub fn rounded_polynomial(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|&q| Value::String(rounded_quaternion(q))).collect())
}
