//! Sweep configurations: `key = value` files, one setting per line, `#`
//! starts a comment.
//!
//! | key      | meaning                                                     |
//! |----------|-------------------------------------------------------------|
//! | channel  | `thermal`, `amplifier` or `additive`                        |
//! | eta, g, nbar, nb, ns | fixed parameters (`nb` defaults to 0)           |
//! | sweep    | swept variable: `ns`, `eta`, `nb`, `g` or `nbar`            |
//! | start, stop, points | grid range, `points ≥ 2`                         |
//! | scale    | `linear` (default) or `log`                                 |
//! | bounds   | comma-separated list, e.g. `QL, QU1, QU2`                   |

use std::fmt;
use std::str::FromStr;

use boson_bounds::{BoundKind, Error, PhaseInsensitiveChannel, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Thermal,
    Amplifier,
    Additive,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "thermal" => Ok(Self::Thermal),
            "amplifier" | "amp" => Ok(Self::Amplifier),
            "additive" | "additive_noise" => Ok(Self::Additive),
            _ => Err(bad(format!(
                "unknown channel '{s}' (thermal, amplifier, additive)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    Ns,
    Eta,
    Nb,
    G,
    Nbar,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            Self::Ns => "ns",
            Self::Eta => "eta",
            Self::Nb => "nb",
            Self::G => "g",
            Self::Nbar => "nbar",
        }
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ns" => Ok(Self::Ns),
            "eta" => Ok(Self::Eta),
            "nb" => Ok(Self::Nb),
            "g" => Ok(Self::G),
            "nbar" => Ok(Self::Nbar),
            _ => Err(bad(format!(
                "unknown sweep variable '{s}' (ns, eta, nb, g, nbar)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// Fixed channel parameters and input energy.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub eta: Option<f64>,
    pub g: Option<f64>,
    pub nbar: Option<f64>,
    pub nb: Option<f64>,
    pub ns: Option<f64>,
}

impl Point {
    fn slot(&mut self, var: SweepVar) -> &mut Option<f64> {
        match var {
            SweepVar::Ns => &mut self.ns,
            SweepVar::Eta => &mut self.eta,
            SweepVar::Nb => &mut self.nb,
            SweepVar::G => &mut self.g,
            SweepVar::Nbar => &mut self.nbar,
        }
    }

    pub fn with(mut self, var: SweepVar, x: f64) -> Self {
        *self.slot(var) = Some(x);
        self
    }

    pub fn channel(&self, family: Family) -> Result<PhaseInsensitiveChannel> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| bad(format!("missing parameter '{name}'")))
        };
        let nb = self.nb.unwrap_or(0.0);
        match family {
            Family::Thermal => PhaseInsensitiveChannel::thermal(need(self.eta, "eta")?, nb),
            Family::Amplifier => PhaseInsensitiveChannel::amplifier(need(self.g, "g")?, nb),
            Family::Additive => PhaseInsensitiveChannel::additive_noise(need(self.nbar, "nbar")?),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: Family,
    pub fixed: Point,
    pub var: SweepVar,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
    pub bounds: Vec<BoundKind>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn number(key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>()
        .map_err(|_| bad(format!("'{key}': cannot parse '{v}' as a number")))
}

/// Whether `kind` is defined for this channel family.
fn supports(family: Family, kind: BoundKind) -> bool {
    use BoundKind::*;
    match family {
        Family::Thermal => true,
        Family::Amplifier => !matches!(kind, QU4 | PL | RMG),
        Family::Additive => matches!(kind, QU1 | PU1 | QU4 | PLOB),
    }
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut family = None;
        let mut fixed = Point::default();
        let (mut var, mut start, mut stop, mut points) = (None, None, None, None);
        let mut scale = Scale::Linear;
        let mut bounds = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("line {}: expected key = value", i + 1)))?;
            let (k, v) = (k.trim().to_ascii_lowercase(), v.trim());
            match k.as_str() {
                "channel" => family = Some(v.parse()?),
                "eta" => fixed.eta = Some(number(&k, v)?),
                "g" => fixed.g = Some(number(&k, v)?),
                "nbar" => fixed.nbar = Some(number(&k, v)?),
                "nb" => fixed.nb = Some(number(&k, v)?),
                "ns" => fixed.ns = Some(number(&k, v)?),
                "sweep" => var = Some(v.parse()?),
                "start" => start = Some(number(&k, v)?),
                "stop" => stop = Some(number(&k, v)?),
                "points" => {
                    points = Some(
                        v.parse::<usize>()
                            .map_err(|_| bad(format!("'points': bad count '{v}'")))?,
                    )
                }
                "scale" => {
                    scale = match v.to_ascii_lowercase().as_str() {
                        "linear" => Scale::Linear,
                        "log" => Scale::Log,
                        _ => {
                            return Err(bad(format!("'scale': expected linear or log, got '{v}'")))
                        }
                    }
                }
                "bounds" => {
                    bounds = v
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::parse)
                        .collect::<Result<_>>()?
                }
                _ => return Err(bad(format!("line {}: unknown key '{k}'", i + 1))),
            }
        }
        let missing = |what: &str| bad(format!("missing '{what}'"));
        let cfg = Self {
            family: family.ok_or_else(|| missing("channel"))?,
            fixed,
            var: var.ok_or_else(|| missing("sweep"))?,
            start: start.ok_or_else(|| missing("start"))?,
            stop: stop.ok_or_else(|| missing("stop"))?,
            points: points.ok_or_else(|| missing("points"))?,
            scale,
            bounds,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(bad(format!("points = {} must be at least 2", self.points)));
        }
        if !(self.start < self.stop) || !self.start.is_finite() || !self.stop.is_finite() {
            return Err(bad(format!(
                "need start < stop, got {} and {}",
                self.start, self.stop
            )));
        }
        if self.scale == Scale::Log && !(self.start > 0.0) {
            return Err(bad("log scale needs start > 0"));
        }
        if self.bounds.is_empty() {
            return Err(bad("no bounds listed"));
        }
        let var_ok = match self.var {
            SweepVar::Ns => true,
            SweepVar::Eta => self.family == Family::Thermal,
            SweepVar::Nb => self.family != Family::Additive,
            SweepVar::G => self.family == Family::Amplifier,
            SweepVar::Nbar => self.family == Family::Additive,
        };
        if !var_ok {
            return Err(bad(format!(
                "cannot sweep '{}' for a {:?} channel",
                self.var, self.family
            )));
        }
        if let Some(k) = self.bounds.iter().find(|&&k| !supports(self.family, k)) {
            return Err(Error::KindMismatch(format!(
                "{k} is not defined for a {:?} channel",
                self.family
            )));
        }
        let uses_ns = self
            .bounds
            .iter()
            .any(|k| !matches!(k, BoundKind::PLOB | BoundKind::RMG));
        if uses_ns && self.var != SweepVar::Ns && self.fixed.ns.is_none() {
            return Err(bad("missing 'ns'"));
        }
        // Surface missing channel parameters now rather than as empty cells.
        self.fixed
            .with(self.var, self.start)
            .channel(self.family)
            .map(|_| ())
            .or_else(|e| match e {
                Error::Domain(m) if m.starts_with("missing") => Err(Error::Domain(m)),
                _ => Ok(()),
            })
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        let mut xs: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * t,
                    Scale::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * t).exp(),
                }
            })
            .collect();
        xs[0] = self.start;
        xs[n - 1] = self.stop;
        xs
    }

    /// Channel at grid abscissa `x`.
    pub fn channel_at(&self, x: f64) -> Result<PhaseInsensitiveChannel> {
        self.fixed.with(self.var, x).channel(self.family)
    }

    pub fn ns_at(&self, x: f64) -> f64 {
        if self.var == SweepVar::Ns {
            x
        } else {
            self.fixed.ns.unwrap_or(0.0)
        }
    }
}

/// Figure configurations shipped with the binary.
pub const FIGS: &[(&str, &str)] = &[
    ("3a", include_str!("../figs/3a.conf")),
    ("3b", include_str!("../figs/3b.conf")),
    ("3c", include_str!("../figs/3c.conf")),
    ("3d", include_str!("../figs/3d.conf")),
    ("4a", include_str!("../figs/4a.conf")),
    ("4b", include_str!("../figs/4b.conf")),
    ("5a", include_str!("../figs/5a.conf")),
    ("5b", include_str!("../figs/5b.conf")),
    ("5c", include_str!("../figs/5c.conf")),
    ("5d", include_str!("../figs/5d.conf")),
    ("6a", include_str!("../figs/6a.conf")),
    ("6b", include_str!("../figs/6b.conf")),
];

pub fn fig(name: &str) -> Result<SweepConfig> {
    let key = name.trim().trim_start_matches("fig").to_ascii_lowercase();
    let (_, text) = FIGS.iter().find(|(n, _)| *n == key).ok_or_else(|| {
        let names: Vec<&str> = FIGS.iter().map(|(n, _)| *n).collect();
        bad(format!(
            "unknown figure '{name}' (available: {})",
            names.join(", ")
        ))
    })?;
    SweepConfig::parse(text)
}
