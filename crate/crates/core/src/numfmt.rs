//! Float formatting shared by the JSON and human-readable outputs.

use serde::ser::{SerializeSeq, Serializer};
use serde_json::value::RawValue;

/// JSON number text with 17 significant digits (`null` for non-finite).
pub fn sig17(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { format!("{x:.16e}") } else { "null".to_owned() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_some(&sig17(*x))
}

pub fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&sig17(*v)),
        None => s.serialize_none(),
    }
}

pub fn ser_f64_slice<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for &x in xs {
        seq.serialize_element(&sig17(x))?;
    }
    seq.end()
}

/// `sig` significant digits in positional notation, trailing zeros trimmed.
pub fn human(x: f64, sig: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_owned();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-6..15).contains(&exp) {
        return format!("{:.*e}", sig - 1, x);
    }
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

/// Human-mode float: 12 significant digits.
pub fn h12(x: f64) -> String {
    human(x, 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(sig17(1.0).get(), "1.0000000000000000e0");
        assert_eq!(sig17(f64::NAN).get(), "null");
        assert_eq!(h12(1.0), "1");
        assert_eq!(h12(0.9999999999999998), "1");
        assert_eq!(h12(2.0f64.sqrt()), "1.41421356237");
        assert_eq!(h12(-0.25), "-0.25");
        assert_eq!(h12(1e-9), "1.00000000000e-9");
    }

    #[test]
    fn sig17_roundtrips() {
        for x in [std::f64::consts::PI, 1e-300, 2.5e10, -7.0 / 3.0] {
            let back: f64 = sig17(x).get().parse().unwrap();
            assert_eq!(back, x);
        }
    }
}
