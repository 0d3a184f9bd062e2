//! Complex literals of the form `a+bi`, `a`, `bi`, `-i`, with optional
//! exponents in either part.

use qpsi_core::qcore::C64;

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let bad = || format!("invalid complex literal '{s}' (expected a+bi)");
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not a leading sign or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(C64::new(re, im))
}

pub fn format_complex(z: C64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{:e}-{:e}i", z.re, -z.im)
    } else {
        format!("{:e}+{:e}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_complex("0.3+0.1i").unwrap(), C64::new(0.3, 0.1));
        assert_eq!(parse_complex("0.2").unwrap(), C64::new(0.2, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("2.5i").unwrap(), C64::new(0.0, 2.5));
        assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), C64::new(1e-3, -20.0));
        assert_eq!(parse_complex("-1.5-0.5i").unwrap(), C64::new(-1.5, -0.5));
        assert_eq!(parse_complex(" 1 + 2i ").unwrap(), C64::new(1.0, 2.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+2").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn round_trip() {
        for z in [C64::new(0.25, -1.5), C64::new(-3e-7, 2.0), C64::new(1.0, 0.0)] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }
}
