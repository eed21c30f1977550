//! Parsers for the compact value syntaxes accepted on the command line.

use std::f64::consts::PI;
use std::str::FromStr;

use equibasis::Complex;

/// Parse one angle in radians: a plain number or a multiple of `pi`, such as
/// `pi`, `-pi/2`, `2pi/3`, `2*pi/5` or `0.5pi`.
pub fn angle(token: &str) -> Result<f64, String> {
    let t = token.trim().to_ascii_lowercase();
    let bad = || format!("invalid angle '{token}'");
    let value = match t.split_once("pi") {
        Some((coef, rest)) => {
            let coef = coef.trim().trim_end_matches('*').trim();
            let coef = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            let rest = rest.trim();
            let den = if rest.is_empty() {
                1.0
            } else {
                rest.strip_prefix('/').ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?
            };
            if den == 0.0 {
                return Err(bad());
            }
            coef * PI / den
        }
        None => t.parse::<f64>().map_err(|_| bad())?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Comma-separated angles in radians.
pub fn angle_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(angle).collect()
}

/// `re,im;re,im;…`. A lone number is taken as a real amplitude.
pub fn coefficient_list(s: &str) -> Result<Vec<Complex>, String> {
    s.split(';')
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            let num = |x: &str| {
                x.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| format!("invalid coefficient '{pair}'"))
            };
            match parts.as_slice() {
                [re] => Ok(Complex::new(num(re)?, 0.0)),
                [re, im] => Ok(Complex::new(num(re)?, num(im)?)),
                _ => Err(format!("invalid coefficient '{pair}' (expected re,im)")),
            }
        })
        .collect()
}

/// Key of a tabulated endpoint row, written `d=4,v=0` (or `4,0`; the
/// variant defaults to 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableKey {
    pub d: usize,
    pub variant: usize,
}

impl FromStr for TableKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("invalid table key '{s}' (expected d=<dim>,v=<variant>)");
        let mut d = None;
        let mut variant = None;
        for (pos, part) in s.split(',').enumerate() {
            let part = part.trim();
            let (key, value) = match part.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None if pos == 0 => ("d", part),
                None => ("v", part),
            };
            let value: usize = value.parse().map_err(|_| bad())?;
            match key {
                "d" if d.is_none() => d = Some(value),
                "v" | "variant" if variant.is_none() => variant = Some(value),
                _ => return Err(bad()),
            }
        }
        Ok(Self { d: d.ok_or_else(bad)?, variant: variant.unwrap_or(0) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(angle("0").unwrap(), 0.0);
        assert_eq!(angle("pi").unwrap(), PI);
        assert_eq!(angle(" -pi/2 ").unwrap(), -PI / 2.0);
        assert_eq!(angle("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(angle("2*pi/5").unwrap(), 2.0 * PI / 5.0);
        assert_eq!(angle("PI").unwrap(), PI);
        assert_eq!(angle("1.25").unwrap(), 1.25);
        for bad in ["", "pie", "pi/0", "x", "pi/", "nan", "inf"] {
            assert!(angle(bad).is_err(), "{bad}");
        }
        assert_eq!(angle_list("0,0,0,pi").unwrap(), vec![0.0, 0.0, 0.0, PI]);
    }

    #[test]
    fn coefficients() {
        let c = coefficient_list("0.6,0;0.6,0").unwrap();
        assert_eq!(c, vec![Complex::new(0.6, 0.0); 2]);
        assert_eq!(coefficient_list("1;0").unwrap(), vec![Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)]);
        assert!(coefficient_list("1,2,3").is_err());
        assert!(coefficient_list("a,b").is_err());
    }

    #[test]
    fn table_keys() {
        assert_eq!("d=4,v=1".parse::<TableKey>().unwrap(), TableKey { d: 4, variant: 1 });
        assert_eq!("5".parse::<TableKey>().unwrap(), TableKey { d: 5, variant: 0 });
        assert_eq!("4,1".parse::<TableKey>().unwrap(), TableKey { d: 4, variant: 1 });
        assert!("v=1".parse::<TableKey>().is_err());
        assert!("d=4,d=5".parse::<TableKey>().is_err());
        assert!("d=x".parse::<TableKey>().is_err());
    }
}
