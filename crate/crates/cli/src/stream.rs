//! Stream specifications for `converge` and `iterate`.

use std::path::PathBuf;

use num_bigint::BigInt;

use crate::{usage, CliResult};

/// A continued fraction expansion given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StreamSpec {
    /// `prefix` once, then `period` forever.
    Periodic { prefix: Vec<BigInt>, period: Vec<BigInt> },
    /// A finite list of coefficients, read from a file.
    Finite(Vec<BigInt>),
}

impl StreamSpec {
    pub fn parse(spec: &str) -> CliResult<StreamSpec> {
        let spec = spec.trim();
        match spec {
            "golden" => return Ok(constant(1)),
            "silver" => return Ok(constant(2)),
            _ => {}
        }
        if let Some(body) = spec.strip_prefix("periodic:") {
            let (prefix, period) = match body.split_once(';') {
                Some((a, b)) => (parse_list(a)?, parse_list(b)?),
                None => (Vec::new(), parse_list(body)?),
            };
            if period.is_empty() {
                return Err(usage("periodic stream needs a non-empty period"));
            }
            return Ok(StreamSpec::Periodic { prefix, period });
        }
        if let Some(path) = spec.strip_prefix("file:") {
            let path = PathBuf::from(path);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let coefficients = parse_list(&text)?;
            if coefficients.is_empty() {
                return Err(usage(format!("{} holds no coefficients", path.display())));
            }
            return Ok(StreamSpec::Finite(coefficients));
        }
        Err(usage(format!(
            "unknown stream `{spec}`; expected golden, silver, periodic:A;B or file:PATH"
        )))
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = BigInt> + '_> {
        match self {
            StreamSpec::Periodic { prefix, period } => {
                Box::new(prefix.iter().chain(period.iter().cycle()).cloned())
            }
            StreamSpec::Finite(v) => Box::new(v.iter().cloned()),
        }
    }

    /// The first coefficient, used to scale the decay constant.
    pub fn first(&self) -> BigInt {
        self.iter().next().expect("streams are never empty")
    }
}

fn constant(k: i64) -> StreamSpec {
    StreamSpec::Periodic {
        prefix: Vec::new(),
        period: vec![BigInt::from(k)],
    }
}

/// Integers separated by commas and/or whitespace.
fn parse_list(s: &str) -> CliResult<Vec<BigInt>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| usage(format!("`{t}` is not an integer")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn named_and_periodic() {
        assert_eq!(StreamSpec::parse("golden").unwrap(), constant(1));
        assert_eq!(
            StreamSpec::parse("periodic:1,2;3, 4").unwrap(),
            StreamSpec::Periodic {
                prefix: ints(&[1, 2]),
                period: ints(&[3, 4])
            }
        );
        let s = StreamSpec::parse("periodic:5").unwrap();
        let head: Vec<BigInt> = s.iter().take(3).collect();
        assert_eq!(head, ints(&[5, 5, 5]));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(StreamSpec::parse("periodic:1;").is_err());
        assert!(StreamSpec::parse("periodic:x").is_err());
        assert!(StreamSpec::parse("bronze").is_err());
        assert!(StreamSpec::parse("file:/nonexistent/stream.txt").is_err());
    }
}
