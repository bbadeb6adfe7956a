use szf_core::ComplexPoint;

/// Parses `a`, `bi`, `a+bi` or `a-bi` (whitespace allowed, `i` only).
pub fn parse_complex(text: &str) -> Result<ComplexPoint, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("malformed complex literal {text:?} (expected <a>+<b>i)");
    if s.is_empty() {
        return Err(bad());
    }
    let num = |p: &str| -> Result<f64, String> { p.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad) };
    let (re, im) = match s.strip_suffix('i') {
        None => (num(&s)?, 0.0),
        Some(body) => {
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
            let (re_part, im_part) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let im = match im_part {
                "" | "+" => 1.0,
                "-" => -1.0,
                p => num(p)?,
            };
            (num(re_part)?, im)
        }
    };
    ComplexPoint::new(re, im).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> (f64, f64) {
        let z = parse_complex(s).unwrap();
        (z.sigma, z.t)
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(p("2.0+3.0i"), (2.0, 3.0));
        assert_eq!(p("2.0 - 3.0i"), (2.0, -3.0));
        assert_eq!(p("-1"), (-1.0, 0.0));
        assert_eq!(p("0.5+14i"), (0.5, 14.0));
        assert_eq!(p("-2i"), (0.0, -2.0));
        assert_eq!(p("1e-3+2e+1i"), (1e-3, 20.0));
        assert_eq!(p("3-i"), (3.0, -1.0));
    }

    #[test]
    fn rejected_forms() {
        for s in ["2.0+3.0j", "", "abc", "1+2", "inf+1i", "1++2i"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }
}
