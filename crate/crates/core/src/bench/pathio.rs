/*
  Copyright 2026 The manifold-rrt Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/
//! Plain-text path files: a header line `n k`, then one configuration per
//! line with space-separated coordinates.

use std::fmt::Write as _;

use crate::AmbientPoint;

pub fn format_path(n: usize, k: usize, path: &[AmbientPoint]) -> String {
    let mut out = format!("{n} {k}\n");
    for q in path {
        let line: Vec<String> = q.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

/// Parses a path file into `(n, k, configurations)`.
pub fn parse_path(text: &str) -> Result<(usize, usize, Vec<AmbientPoint>), String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or("empty path file")?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|e| format!("bad header '{header}': {e}")))
        .collect::<Result<_, _>>()?;
    let [n, k] = dims[..] else {
        return Err(format!("header must hold n and k, got '{header}'"));
    };
    let mut path = Vec::new();
    for (i, line) in lines.enumerate() {
        let coords: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| format!("line {}: {e}", i + 2)))
            .collect::<Result<_, _>>()?;
        if coords.len() != n {
            return Err(format!("line {} has {} coordinates, expected {n}", i + 2, coords.len()));
        }
        path.push(AmbientPoint::from_vec(coords));
    }
    Ok((n, k, path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn layout() {
        let text = format_path(2, 1, &[AmbientPoint::from_vec(vec![1.0, 0.0]), AmbientPoint::from_vec(vec![0.5, -0.25])]);
        assert_eq!(text, "2 1\n1 0\n0.5 -0.25\n");
    }

    #[test]
    fn malformed_files_rejected() {
        assert!(parse_path("").is_err());
        assert!(parse_path("2\n1 0\n").is_err());
        assert!(parse_path("2 1\n1 0 3\n").is_err());
        assert!(parse_path("2 1\n1 x\n").is_err());
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(rows in prop::collection::vec(prop::collection::vec(-1e6f64..1e6, 3), 0..20)) {
            let path: Vec<_> = rows.into_iter().map(AmbientPoint::from_vec).collect();
            let (n, k, back) = parse_path(&format_path(3, 2, &path)).unwrap();
            prop_assert_eq!((n, k), (3, 2));
            prop_assert_eq!(back, path);
        }
    }
}
