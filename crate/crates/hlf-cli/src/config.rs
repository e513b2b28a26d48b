//! Property-suite configuration file.
//!
//! `{"seed": u64, "cases": n, "window": w, "dims": [d,...],
//!   "primes": [p,...], "shapes": [[n,r],...]}`
//!
//! `sabotage` (optional, test fixture) names a suite whose oracle is
//! deliberately broken so the harness can prove it reports failures.

use hlf::FieldShape;
use serde_json::Value;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub window: i64,
    pub dims: Vec<usize>,
    pub primes: Vec<u64>,
    pub shapes: Vec<FieldShape>,
    pub sabotage: Option<String>,
}

impl SuiteConfig {
    pub fn default_config() -> SuiteConfig {
        let mut shapes = Vec::new();
        for d in 1..=2usize {
            for r in 0..=d {
                shapes.push(FieldShape::new(d + 1, r).unwrap());
            }
        }
        SuiteConfig {
            seed: 42,
            cases: 40,
            window: 8,
            dims: vec![1, 2],
            primes: vec![2, 3, 5],
            shapes,
            sabotage: None,
        }
    }

    pub fn from_json(text: &str) -> Result<SuiteConfig, String> {
        let value: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        let map = value.as_object().ok_or("config: expected an object")?;
        let int = |key: &str| -> Result<i64, String> {
            map.get(key)
                .ok_or(format!("config: missing field {key:?}"))?
                .as_i64()
                .ok_or(format!("config: {key} must be an integer"))
        };
        let seed = int("seed")? as u64;
        let cases = usize::try_from(int("cases")?).map_err(|_| "config: cases must be >= 0")?;
        let window = int("window")?;
        let list = |key: &str| -> Result<Vec<i64>, String> {
            map.get(key)
                .ok_or(format!("config: missing field {key:?}"))?
                .as_array()
                .ok_or(format!("config: {key} must be an array"))?
                .iter()
                .map(|v| {
                    v.as_i64()
                        .ok_or(format!("config: {key} entries must be integers"))
                })
                .collect()
        };
        let dims: Vec<usize> = list("dims")?
            .into_iter()
            .map(|d| usize::try_from(d).map_err(|_| "config: dims must be positive".to_string()))
            .collect::<Result<_, _>>()?;
        let primes: Vec<u64> = list("primes")?
            .into_iter()
            .map(|p| u64::try_from(p).map_err(|_| "config: primes must be positive".to_string()))
            .collect::<Result<_, _>>()?;
        let shapes_value = map
            .get("shapes")
            .ok_or("config: missing field \"shapes\"")?
            .as_array()
            .ok_or("config: shapes must be an array")?;
        let mut shapes = Vec::with_capacity(shapes_value.len());
        for entry in shapes_value {
            let pair = entry
                .as_array()
                .ok_or("config: each shape must be [n, r]")?;
            if pair.len() != 2 {
                return Err("config: each shape must be [n, r]".into());
            }
            let n = pair[0]
                .as_u64()
                .ok_or("config: shape n must be an integer")? as usize;
            let r = pair[1]
                .as_u64()
                .ok_or("config: shape r must be an integer")? as usize;
            shapes.push(FieldShape::new(n, r).map_err(|e| format!("config: invalid shape: {e}"))?);
        }
        let sabotage = match map.get("sabotage") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err("config: sabotage must be a string".into()),
        };
        let config = SuiteConfig {
            seed,
            cases,
            window,
            dims,
            primes,
            shapes,
            sabotage,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.cases < 1 {
            return Err("config: cases must be at least 1".into());
        }
        if self.window < 4 {
            return Err("config: window must be at least 4".into());
        }
        if self.dims.is_empty() || self.primes.is_empty() || self.shapes.is_empty() {
            return Err("config: dims, primes and shapes must be non-empty".into());
        }
        for shape in &self.shapes {
            if !self.dims.contains(&shape.dim()) {
                return Err(format!(
                    "config: shape (n={}, r={}) has index dimension {} not listed in dims",
                    shape.n(),
                    shape.r(),
                    shape.dim()
                ));
            }
        }
        for p in &self.primes {
            let p = *p;
            if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                return Err(format!("config: {p} is not prime"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        assert!(SuiteConfig::default_config().validate().is_ok());
    }

    #[test]
    fn zero_cases_is_invalid() {
        let text = r#"{"seed":1,"cases":0,"window":8,"dims":[1],"primes":[2],"shapes":[[2,0]]}"#;
        assert!(SuiteConfig::from_json(text).is_err());
    }

    #[test]
    fn shape_dimension_must_be_listed() {
        let text = r#"{"seed":1,"cases":5,"window":8,"dims":[1],"primes":[2],"shapes":[[3,1]]}"#;
        assert!(SuiteConfig::from_json(text).is_err());
    }

    #[test]
    fn round_trip_parse() {
        let text = r#"{"seed":7,"cases":10,"window":6,"dims":[1,2],"primes":[2,3],
                       "shapes":[[2,0],[3,2]],"sabotage":"gauge-sup"}"#;
        let cfg = SuiteConfig::from_json(text).unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.sabotage.as_deref(), Some("gauge-sup"));
    }
}
