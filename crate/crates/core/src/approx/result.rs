use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Candidate, Repr, ReprKind, SolverConfig, TargetFn};
use crate::numeric::LinearSpline;
use crate::{Error, Result};

/// Iterate order written as an integer when whole, else as `"p/q"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterOrder(pub Ratio<i64>);

impl fmt::Display for IterOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for IterOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("invalid iterate order {s:?}"));
        let s = s.trim();
        let r = match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ratio::new(p, q)
            }
            None => Ratio::from_integer(s.parse().map_err(|_| bad())?),
        };
        if r <= Ratio::from_integer(0) {
            return Err(bad());
        }
        Ok(IterOrder(r))
    }
}

impl Serialize for IterOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            s.serialize_i64(*self.0.numer())
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for IterOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) if n > 0 => Ok(IterOrder(Ratio::from_integer(n))),
            Raw::Int(n) => Err(serde::de::Error::custom(format!("iterate order must be positive, got {n}"))),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetInfo {
    pub label: String,
    pub interval: (f64, f64),
}

/// Persisted outcome of a solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub method: String,
    pub target: TargetInfo,
    pub repr: ReprKind,
    pub terms: usize,
    pub k: IterOrder,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knots: Option<LinearSpline>,
    /// Written as `null` when infinite.
    #[serde(deserialize_with = "loss_or_infinity")]
    pub loss: f64,
    pub seed: u64,
    pub config: SolverConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<f64>,
}

fn loss_or_infinity<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

impl SolveResult {
    pub fn new(method: &str, target: &TargetFn, candidate: &Candidate, loss: f64, cfg: &SolverConfig) -> Self {
        let (coeffs, knots, terms) = match &candidate.repr {
            Repr::Fourier(c) | Repr::Taylor(c) => (Some(c.clone()), None, c.len()),
            Repr::Spline(s) => (None, Some(s.clone()), s.len()),
        };
        SolveResult {
            method: method.to_string(),
            target: TargetInfo { label: target.label().to_string(), interval: target.domain() },
            repr: candidate.kind(),
            terms,
            k: IterOrder(candidate.k),
            coeffs,
            knots,
            loss,
            seed: cfg.seed,
            config: cfg.clone(),
            x_start: None,
            w: None,
        }
    }

    pub fn candidate(&self) -> Result<Candidate> {
        let missing = |what: &str| Error::InvalidConfig(format!("{} result without {what}", self.repr));
        let repr = match self.repr {
            ReprKind::Fourier => Repr::Fourier(self.coeffs.clone().ok_or_else(|| missing("coeffs"))?),
            ReprKind::Taylor => Repr::Taylor(self.coeffs.clone().ok_or_else(|| missing("coeffs"))?),
            ReprKind::Spline => Repr::Spline(self.knots.clone().ok_or_else(|| missing("knots"))?),
        };
        let mut c = Candidate::new(repr, self.k.0)?;
        c.loss = Some(self.loss);
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_formats() {
        let whole = serde_json::to_string(&IterOrder(Ratio::from_integer(2))).unwrap();
        assert_eq!(whole, "2");
        let frac = serde_json::to_string(&IterOrder(Ratio::new(6, 5))).unwrap();
        assert_eq!(frac, "\"6/5\"");
        let back: IterOrder = serde_json::from_str(&frac).unwrap();
        assert_eq!(back.0, Ratio::new(6, 5));
        assert!(serde_json::from_str::<IterOrder>("0").is_err());
        assert!("3/0".parse::<IterOrder>().is_err());
        assert!("-1/2".parse::<IterOrder>().is_err());
        assert_eq!("4/2".parse::<IterOrder>().unwrap().0, Ratio::from_integer(2));
    }

    #[test]
    fn round_trip_fourier_and_spline() {
        let cfg = SolverConfig { seed: 42, ..Default::default() };
        let g = Candidate::fourier(vec![0.1, -1.0 / 3.0, std::f64::consts::PI], 2).unwrap();
        let r = SolveResult::new("genetic", &TargetFn::sin(), &g, 1.25e-6, &cfg);
        let json = r.to_json();
        let back: SolveResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.candidate().unwrap().repr, g.repr);
        assert_eq!(back.to_json(), json);

        let s = Candidate::identity((0.0, 3.0)).unwrap();
        let r = SolveResult::new("additive", &TargetFn::shift(), &s, f64::INFINITY, &cfg);
        let back: SolveResult = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back.loss, f64::INFINITY);
        assert_eq!(back.candidate().unwrap().repr, s.repr);
        assert!(r.to_json().contains("\"knots\""));
        assert!(!r.to_json().contains("\"coeffs\""));
    }
}
