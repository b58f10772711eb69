//! JSON output with every float written to 17 significant digits.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

/// Formats a finite float as `d.dddddddddddddddde±x` (17 significant digits).
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// serde_json's default compact layout with our float format.
struct Compact;

impl Formatter for Compact {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }
}

struct Pretty<'a>(PrettyFormatter<'a>);

macro_rules! delegate {
    ($($name:ident $(, $arg:ident : $ty:ty)?;)*) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)?) -> io::Result<()> {
                self.0.$name(writer $(, $arg)?)
            }
        )*
    };
}

impl Formatter for Pretty<'_> {
    delegate! {
        begin_array;
        end_array;
        begin_array_value, first: bool;
        end_array_value;
        begin_object;
        end_object;
        begin_object_key, first: bool;
        begin_object_value;
        end_object_value;
    }

    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }
}

pub fn to_string<T: Serialize>(value: &T, pretty: bool) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    if pretty {
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, Pretty(PrettyFormatter::new()));
        value.serialize(&mut ser)?;
    } else {
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, Compact);
        value.serialize(&mut ser)?;
    }
    // serde_json only emits UTF-8
    Ok(String::from_utf8(buf).expect("utf-8 json"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f64(1.0), "1.0000000000000000e0");
        assert_eq!(format_f64(-0.1), "-1.0000000000000001e-1");
        assert_eq!(format_f64(4.0 / 3.0), "1.3333333333333333e0");
    }

    #[test]
    fn floats_round_trip_exactly() {
        for v in [1.0 / 3.0, 2f64.sqrt(), 1e-300, 123456.789, -0.0, f64::MAX, 5e-324] {
            let s = to_string(&v, false).unwrap();
            let back: f64 = serde_json::from_str(&s).unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{s}");
        }
    }

    #[test]
    fn pretty_and_compact() {
        #[derive(Serialize)]
        struct S {
            a: f64,
            b: Vec<u32>,
        }
        let s = S { a: 0.5, b: vec![1, 2] };
        assert_eq!(to_string(&s, false).unwrap(), r#"{"a":5.0000000000000000e-1,"b":[1,2]}"#);
        let p = to_string(&s, true).unwrap();
        assert!(p.contains("\n  \"a\": 5.0000000000000000e-1"));
    }
}
