//! Sweep axes on the command line.
//!
//! * `0.8`: a single fixed value
//! * `0.3,0.5,0.8`: an explicit list
//! * `2:200:20`: `count` evenly spaced values, endpoints included
//! * `1:1000:30:log`: the same, evenly spaced in `log10`

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub enum Axis {
    Fixed(f64),
    List(Vec<f64>),
    Range {
        min: f64,
        max: f64,
        count: usize,
        log: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxisError(String);

impl fmt::Display for AxisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for AxisError {}

fn number(s: &str) -> Result<f64, AxisError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| AxisError(format!("'{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(AxisError(format!("'{s}' is not finite")));
    }
    Ok(v)
}

impl FromStr for Axis {
    type Err = AxisError;

    fn from_str(s: &str) -> Result<Self, AxisError> {
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let log = match parts.len() {
                3 => false,
                4 if parts[3] == "log" => true,
                _ => {
                    return Err(AxisError(format!(
                        "range '{s}' must be min:max:count or min:max:count:log"
                    )))
                }
            };
            let (min, max) = (number(parts[0])?, number(parts[1])?);
            let count: usize = parts[2]
                .trim()
                .parse()
                .map_err(|_| AxisError(format!("count '{}' is not an integer", parts[2])))?;
            if count < 2 {
                return Err(AxisError(format!("range '{s}' needs count >= 2")));
            }
            if max <= min {
                return Err(AxisError(format!("range '{s}' needs max > min")));
            }
            if log && min <= 0.0 {
                return Err(AxisError(format!("log range '{s}' needs min > 0")));
            }
            return Ok(Axis::Range {
                min,
                max,
                count,
                log,
            });
        }
        if s.contains(',') {
            let values = s.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
            return Ok(Axis::List(values));
        }
        Ok(Axis::Fixed(number(s)?))
    }
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::Fixed(v) => vec![*v],
            Axis::List(v) => v.clone(),
            &Axis::Range {
                min,
                max,
                count,
                log,
            } => {
                let (lo, hi) = if log {
                    (min.log10(), max.log10())
                } else {
                    (min, max)
                };
                (0..count)
                    .map(|i| {
                        // pin the endpoints so they print exactly as given
                        if i == 0 {
                            return min;
                        }
                        if i == count - 1 {
                            return max;
                        }
                        let t = lo + (hi - lo) * i as f64 / (count - 1) as f64;
                        if log {
                            10f64.powf(t)
                        } else {
                            t
                        }
                    })
                    .collect()
            }
        }
    }

    /// Whether the axis has more than one value.
    pub fn is_swept(&self) -> bool {
        !matches!(self, Axis::Fixed(_))
    }

    pub fn describe(&self) -> serde_json::Value {
        match self {
            Axis::Fixed(v) => serde_json::json!(v),
            Axis::List(v) => serde_json::json!(v),
            &Axis::Range {
                min,
                max,
                count,
                log,
            } => {
                serde_json::json!({ "min": min, "max": max, "count": count, "log": log })
            }
        }
    }
}
