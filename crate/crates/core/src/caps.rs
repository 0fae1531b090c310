//! Resource caps for the exponential procedures.
//!
//! Every exact procedure in this crate is exponential in some size parameter.
//! The caps bound those parameters; exceeding one yields [`Error::Resource`].
//! The `SHRUBKIT_CAPS` environment variable overrides individual caps using a
//! comma separated `key=value` list, e.g. `tm_vertices=12,sc_vertices=10`.

use crate::error::{Error, Result};

pub const CAPS_ENV: &str = "SHRUBKIT_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Vertex limit for exact tree-depth.
    pub td_vertices: usize,
    /// Vertex limit for tree-model membership search.
    pub tm_vertices: usize,
    /// Vertex limit for SC-depth membership search.
    pub sc_vertices: usize,
    /// Largest `m` accepted by the path-model generator.
    pub path_model_colors: usize,
    /// Universe limit for the naive CMSO1 evaluator.
    pub eval_vertices: usize,
    /// Nesting limit for set quantifiers in the naive evaluator.
    pub set_quantifier_depth: usize,
    /// Vertex limit when enumerating all labelings of a transduction.
    pub labeling_vertices: usize,
    /// Predicate limit when enumerating all labelings of a transduction.
    pub labeling_predicates: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            td_vertices: 16,
            tm_vertices: 10,
            sc_vertices: 9,
            path_model_colors: 4,
            eval_vertices: 12,
            set_quantifier_depth: 3,
            labeling_vertices: 6,
            labeling_predicates: 2,
        }
    }
}

impl Caps {
    /// Defaults overridden by `SHRUBKIT_CAPS`, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::format(format!("cap override `{item}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::format(format!("cap `{key}` needs a non-negative integer")))?;
            let slot = match key.trim() {
                "td_vertices" => &mut self.td_vertices,
                "tm_vertices" => &mut self.tm_vertices,
                "sc_vertices" => &mut self.sc_vertices,
                "path_model_colors" => &mut self.path_model_colors,
                "eval_vertices" => &mut self.eval_vertices,
                "set_quantifier_depth" => &mut self.set_quantifier_depth,
                "labeling_vertices" => &mut self.labeling_vertices,
                "labeling_predicates" => &mut self.labeling_predicates,
                other => return Err(Error::format(format!("unknown cap `{other}`"))),
            };
            *slot = value;
        }
        // Bitmask-based searches cannot go past 64 vertices regardless of overrides.
        for (name, v) in [
            ("td_vertices", self.td_vertices),
            ("tm_vertices", self.tm_vertices),
            ("sc_vertices", self.sc_vertices),
            ("eval_vertices", self.eval_vertices),
        ] {
            if v > 64 {
                return Err(Error::format(format!("cap `{name}` cannot exceed 64")));
            }
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let caps = Caps::default()
            .with_overrides("tm_vertices=12, sc_vertices=7")
            .unwrap();
        assert_eq!(caps.tm_vertices, 12);
        assert_eq!(caps.sc_vertices, 7);
        assert_eq!(caps.td_vertices, 16);
    }

    #[test]
    fn bad_overrides_rejected() {
        assert!(Caps::default().with_overrides("bogus=1").is_err());
        assert!(Caps::default().with_overrides("tm_vertices").is_err());
        assert!(Caps::default().with_overrides("tm_vertices=-3").is_err());
        assert!(Caps::default().with_overrides("eval_vertices=99").is_err());
    }
}
