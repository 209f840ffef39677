//! Reading point sets and weight functions from paths or inline literals.

use std::fs;
use std::path::Path;

use sumsets::{PointSet, WeightFn};

use crate::CliError;

fn read_source(arg: &str) -> Result<(String, bool), CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))?;
        Ok((text, true))
    } else {
        Ok((arg.to_string(), false))
    }
}

/// Accepts a file in the line or JSON format, or an inline literal: JSON, or
/// points separated by `;` with coordinates separated by `,` or spaces.
pub fn point_set(flag: &str, arg: &str, dim: Option<usize>) -> Result<PointSet, CliError> {
    let (text, from_file) = read_source(arg)?;
    let trimmed = text.trim_start();
    let set = if trimmed.starts_with('[') {
        serde_json::from_str::<PointSet>(trimmed)
            .map_err(|e| CliError::Usage(format!("{flag}: bad JSON point set: {e}")))?
    } else if from_file {
        PointSet::parse_text(&text, dim).map_err(|e| CliError::Usage(format!("{flag}: {e}")))?
    } else {
        let lines: Vec<String> = text
            .split(';')
            .map(|p| {
                p.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect::<Vec<_>>().join(" ")
            })
            .collect();
        PointSet::parse_text(&lines.join("\n"), dim).map_err(|e| CliError::Usage(format!("{flag}: {e}")))?
    };
    if let Some(d) = dim {
        if set.dim() != d {
            return Err(CliError::Usage(format!("{flag}: expected dimension {d}, found {}", set.dim())));
        }
    }
    Ok(set)
}

/// Accepts a JSON map file (`{"0": 1.0}`) or an inline `n:v,n:v` spec.
pub fn weight(flag: &str, arg: &str) -> Result<WeightFn, CliError> {
    let (text, _) = read_source(arg)?;
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        serde_json::from_str(trimmed).map_err(|e| CliError::Usage(format!("{flag}: bad JSON weight: {e}")))
    } else {
        trimmed.parse().map_err(|e: sumsets::Error| CliError::Usage(format!("{flag}: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sumsets::Point;

    #[test]
    fn inline_forms_agree() {
        let expected = PointSet::new(2, [[0, 0], [1, 2]].map(Point::from)).unwrap();
        assert_eq!(point_set("--a", "0,0;1,2", None).unwrap(), expected);
        assert_eq!(point_set("--a", "0 0; 1 2", None).unwrap(), expected);
        assert_eq!(point_set("--a", "[[0,0],[1,2]]", None).unwrap(), expected);
        assert!(point_set("--a", "0,0;1", None).is_err());
        assert!(point_set("--a", "0,0", Some(3)).is_err());
    }

    #[test]
    fn weights_inline_and_json() {
        let w = weight("--a", "0:1,1:1.5").unwrap();
        assert_eq!(w.eval(1), 1.5);
        assert_eq!(weight("--a", r#"{"0": 1.0, "1": 1.5}"#).unwrap(), w);
        assert!(weight("--a", "0:-1").is_err());
    }
}
