//! Number formatting shared by the output emitters.
//!
//! Text tables use 12 significant digits, JSON uses 17.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

pub const TEXT_DIGITS: usize = 12;
pub const JSON_DIGITS: usize = 17;

/// `v` rounded to `digits` significant digits; fixed notation for moderate
/// magnitudes, scientific otherwise.
pub fn sig(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let exponent = v.abs().log10().floor() as i32;
    if (-4..15).contains(&exponent) {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        let s = format!("{v:.decimals$}");
        // rounding at the last digit can bump the exponent; fall back to scientific
        let significant = s.trim_start_matches('-').replace('.', "");
        let significant = significant.trim_start_matches('0');
        if significant.len() > digits {
            format!("{v:.prec$e}", prec = digits - 1)
        } else {
            s
        }
    } else {
        format!("{v:.prec$e}", prec = digits - 1)
    }
}

pub fn text(v: f64) -> String {
    sig(v, TEXT_DIGITS)
}

/// Pretty JSON formatter writing every float with 17 significant digits.
pub struct SeventeenDigits<'a> {
    inner: PrettyFormatter<'a>,
}

impl Default for SeventeenDigits<'_> {
    fn default() -> Self {
        SeventeenDigits {
            inner: PrettyFormatter::with_indent(b"  "),
        }
    }
}

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.inner.$name(writer $(, $arg)*)
            }
        )*
    };
}

impl Formatter for SeventeenDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(format!("{value:.prec$e}", prec = JSON_DIGITS - 1).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        begin_object_value(),
        end_object_value(),
    );
}

/// Serialize `value` as pretty JSON with 17-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SeventeenDigits::default());
    value
        .serialize(&mut ser)
        .expect("serializing into memory cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
