//! Evaluation grids: a linearly spaced axis per coordinate.

use anyhow::{bail, Context, Result};

pub const DEFAULT_MIN: f64 = -2.0;
pub const DEFAULT_MAX: f64 = 2.0;
pub const DEFAULT_COUNT: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for Axis {
    fn default() -> Self {
        Self {
            min: DEFAULT_MIN,
            max: DEFAULT_MAX,
            count: DEFAULT_COUNT,
        }
    }
}

impl Axis {
    /// `count` equally spaced points from `min` to `max`; a single point is `min`.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + step * i as f64).collect()
    }

    fn parse(min: &str, max: &str, count: &str) -> Result<Self> {
        let min: f64 = min.trim().parse().with_context(|| format!("axis minimum {min:?}"))?;
        let max: f64 = max.trim().parse().with_context(|| format!("axis maximum {max:?}"))?;
        let count: usize = count.trim().parse().with_context(|| format!("axis count {count:?}"))?;
        if count == 0 {
            bail!("axis count must be at least 1");
        }
        if !(min.is_finite() && max.is_finite()) || min > max {
            bail!("axis range {min}..{max} is not a finite increasing interval");
        }
        Ok(Self { min, max, count })
    }
}

/// Parsed `--grid` value, resolved against a target's axis names by
/// [`GridSpec::axes`].
#[derive(Debug, Clone, PartialEq, Default)]
pub enum GridSpec {
    /// The default axis on every coordinate.
    #[default]
    Default,
    /// The same axis on every coordinate.
    Uniform(Axis),
    /// Axes in coordinate order.
    Positional(Vec<Axis>),
    /// Axes by coordinate name; unnamed coordinates get the default axis.
    Named(Vec<(String, Axis)>),
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Ok(count) = text.parse::<usize>() {
            if count == 0 {
                bail!("grid count must be at least 1");
            }
            return Ok(GridSpec::Uniform(Axis {
                count,
                ..Axis::default()
            }));
        }
        let parts: Vec<&str> = text.split(',').collect();
        let fields: Vec<Vec<&str>> = parts.iter().map(|p| p.split(':').collect()).collect();
        if fields.iter().all(|f| f.len() == 3) {
            let axes = fields.iter().map(|f| Axis::parse(f[0], f[1], f[2])).collect::<Result<Vec<_>>>()?;
            return Ok(if axes.len() == 1 {
                GridSpec::Uniform(axes[0])
            } else {
                GridSpec::Positional(axes)
            });
        }
        if fields.iter().all(|f| f.len() == 4) {
            let axes = fields
                .iter()
                .map(|f| Ok((f[0].trim().to_string(), Axis::parse(f[1], f[2], f[3])?)))
                .collect::<Result<Vec<_>>>()?;
            return Ok(GridSpec::Named(axes));
        }
        bail!("expected COUNT, MIN:MAX:COUNT or NAME:MIN:MAX:COUNT entries separated by commas")
    }

    /// One axis per name in `names`.
    pub fn axes(&self, names: &[&str]) -> Result<Vec<Axis>> {
        match self {
            GridSpec::Default => Ok(vec![Axis::default(); names.len()]),
            GridSpec::Uniform(a) => Ok(vec![*a; names.len()]),
            GridSpec::Positional(axes) => {
                if axes.len() != names.len() {
                    bail!("grid has {} axes but this target needs {} ({})", axes.len(), names.len(), names.join(","));
                }
                Ok(axes.clone())
            }
            GridSpec::Named(axes) => {
                for (n, _) in axes {
                    if !names.contains(&n.as_str()) {
                        bail!("unknown grid axis {n:?}; this target has axes {}", names.join(","));
                    }
                }
                Ok(names
                    .iter()
                    .map(|name| {
                        axes.iter()
                            .rev()
                            .find(|(n, _)| n == name)
                            .map(|(_, a)| *a)
                            .unwrap_or_default()
                    })
                    .collect())
            }
        }
    }
}

/// All grid points, first axis slowest.
pub fn points(axes: &[Axis]) -> Vec<Vec<f64>> {
    let values: Vec<Vec<f64>> = axes.iter().map(Axis::points).collect();
    let total: usize = values.iter().map(Vec::len).product();
    (0..total)
        .map(|mut k| {
            let mut p = vec![0.0; values.len()];
            for (slot, v) in values.iter().enumerate().rev() {
                p[slot] = v[k % v.len()];
                k /= v.len();
            }
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(GridSpec::parse("5").unwrap().axes(&["a", "b"]).unwrap(), vec![Axis::default(); 2]);
        let g = GridSpec::parse("p:-2:2:5,q:-1:1:3").unwrap();
        let axes = g.axes(&["p", "q"]).unwrap();
        assert_eq!(axes[1].points(), vec![-1.0, 0.0, 1.0]);
        assert!(g.axes(&["x1", "y1"]).is_err());
        let g = GridSpec::parse("0:1:2").unwrap();
        assert_eq!(points(&g.axes(&["a", "b"]).unwrap()).len(), 4);
        assert!(GridSpec::parse("1:0:3").is_err());
        assert!(GridSpec::parse("0").is_err());
        assert!(GridSpec::parse("a:b").is_err());
    }

    #[test]
    fn ordering() {
        let axes = [Axis { min: 0.0, max: 1.0, count: 2 }, Axis { min: 5.0, max: 6.0, count: 2 }];
        assert_eq!(points(&axes), vec![vec![0.0, 5.0], vec![0.0, 6.0], vec![1.0, 5.0], vec![1.0, 6.0]]);
    }
}
