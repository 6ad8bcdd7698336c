use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{character, SectorId};
use crate::modgroup::HalfPlanePoint;
use crate::qseries::AnySeries;
use crate::specfun::{
    dedekind_eta, eisenstein, jacobi_theta, partition_gf, q_twisted, Theta, TwistParams,
};
use crate::Rational;

/// A named series as accepted on the command line:
/// `eta`, `theta1`..`theta4`, `E<k>`, `Q<k>[@j,T,l,T1]`, `partition`, `char:i,j`.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesSpec {
    Eta,
    Theta(Theta),
    Eisenstein(u32),
    Q { k: u32, twist: Option<TwistParams> },
    Partition,
    Character(SectorId),
}

pub fn parse_twist(s: &str) -> Result<TwistParams> {
    let v = parse_list::<u64>(s, 4, "twist j,T,l,T1")?;
    TwistParams::new(v[0], v[1], v[2], v[3])
}

fn parse_list<T: FromStr>(s: &str, n: usize, what: &str) -> Result<Vec<T>> {
    let v: Vec<T> = s
        .split(',')
        .map(|x| x.trim().parse::<T>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("cannot parse {what} from {s:?}")))?;
    if v.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{what} needs {n} comma-separated values, got {s:?}"
        )));
    }
    Ok(v)
}

/// `NUM` or `NUM/DEN`.
pub fn parse_order(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::InvalidArgument(format!("bad order {s:?}: {e}")))
}

/// `re,im` with `im > 0`.
pub fn parse_point(s: &str) -> Result<HalfPlanePoint> {
    let v = parse_list::<f64>(s, 2, "point re,im")?;
    HalfPlanePoint::new(Complex64::new(v[0], v[1]))
}

pub fn parse_complex(s: &str) -> Result<Complex64> {
    let v = parse_list::<f64>(s, 2, "complex re,im")?;
    Ok(Complex64::new(v[0], v[1]))
}

impl SeriesSpec {
    pub fn with_twist(self, twist: Option<TwistParams>) -> Self {
        match (self, twist) {
            (SeriesSpec::Q { k, .. }, Some(t)) => SeriesSpec::Q { k, twist: Some(t) },
            (s, _) => s,
        }
    }

    pub fn build(&self, order: &Rational) -> Result<AnySeries> {
        Ok(match self {
            SeriesSpec::Eta => dedekind_eta(order).into(),
            SeriesSpec::Theta(t) => jacobi_theta(*t, order).into(),
            SeriesSpec::Eisenstein(k) => eisenstein(*k, order)?.into(),
            SeriesSpec::Partition => partition_gf(order).into(),
            SeriesSpec::Character(s) => character(*s, order).series.into(),
            SeriesSpec::Q { k, twist } => {
                let tw = match twist {
                    Some(t) => *t,
                    None if *k == 0 => TwistParams::new(0, 1, 0, 1)?,
                    None => {
                        return Err(Error::InvalidArgument(format!(
                            "Q{k} needs a twist j,T,l,T1"
                        )));
                    }
                };
                if tw.is_exact() {
                    q_twisted::<Rational>(*k, &tw, order)?.into()
                } else {
                    q_twisted::<Complex64>(*k, &tw, order)?.into()
                }
            }
        })
    }
}

impl FromStr for SeriesSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("unknown series {s:?}"));
        match s {
            "eta" => return Ok(SeriesSpec::Eta),
            "partition" => return Ok(SeriesSpec::Partition),
            _ => {}
        }
        if let Some(i) = s.strip_prefix("theta") {
            return Ok(SeriesSpec::Theta(Theta::from_index(
                i.parse().map_err(|_| bad())?,
            )?));
        }
        if let Some(pair) = s.strip_prefix("char:") {
            let v = parse_list::<u32>(pair, 2, "pair i,j")?;
            return Ok(SeriesSpec::Character(SectorId::new(v[0], v[1])?));
        }
        if let Some(k) = s.strip_prefix('E') {
            return Ok(SeriesSpec::Eisenstein(k.parse().map_err(|_| bad())?));
        }
        if let Some(rest) = s.strip_prefix('Q') {
            let (k, twist) = match rest.split_once('@') {
                Some((k, tw)) => (k, Some(parse_twist(tw)?)),
                None => (rest, None),
            };
            return Ok(SeriesSpec::Q {
                k: k.parse().map_err(|_| bad())?,
                twist,
            });
        }
        Err(bad())
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesSpec::Eta => f.write_str("eta"),
            SeriesSpec::Partition => f.write_str("partition"),
            SeriesSpec::Theta(t) => write!(f, "theta{}", *t as u8 + 1),
            SeriesSpec::Eisenstein(k) => write!(f, "E{k}"),
            SeriesSpec::Character(s) => write!(f, "char:{},{}", s.pair().g(), s.pair().h()),
            SeriesSpec::Q { k, twist: None } => write!(f, "Q{k}"),
            SeriesSpec::Q { k, twist: Some(tw) } => {
                write!(f, "Q{k}@{},{},{},{}", tw.j, tw.t, tw.l, tw.t1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_series_names() {
        assert_eq!("eta".parse::<SeriesSpec>().unwrap(), SeriesSpec::Eta);
        assert_eq!(
            "theta3".parse::<SeriesSpec>().unwrap(),
            SeriesSpec::Theta(Theta::Three)
        );
        assert_eq!(
            "E4".parse::<SeriesSpec>().unwrap(),
            SeriesSpec::Eisenstein(4)
        );
        assert_eq!(
            "Q2@1,2,0,1".parse::<SeriesSpec>().unwrap(),
            SeriesSpec::Q {
                k: 2,
                twist: Some(TwistParams::new(1, 2, 0, 1).unwrap())
            }
        );
        assert_eq!(
            "char:1,0".parse::<SeriesSpec>().unwrap(),
            SeriesSpec::Character(SectorId::sigma_one())
        );
        for bad in ["theta5", "zeta", "E", "Qx", "char:2,0", "Q1@1,2,0"] {
            assert!(bad.parse::<SeriesSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn builds_in_the_right_domain() {
        let o = parse_order("5").unwrap();
        let exact = SeriesSpec::Q {
            k: 1,
            twist: Some(TwistParams::new(0, 1, 1, 2).unwrap()),
        };
        assert!(matches!(exact.build(&o).unwrap(), AnySeries::Exact(_)));
        let cx = SeriesSpec::Q {
            k: 1,
            twist: Some(TwistParams::new(0, 1, 1, 3).unwrap()),
        };
        assert!(matches!(cx.build(&o).unwrap(), AnySeries::Complex(_)));
        assert!(SeriesSpec::Q { k: 2, twist: None }.build(&o).is_err());
        assert!(SeriesSpec::Q { k: 0, twist: None }.build(&o).is_ok());
        assert!(SeriesSpec::Eisenstein(5).build(&o).is_err());
    }

    #[test]
    fn parses_orders_and_points() {
        assert_eq!(parse_order("61/2").unwrap(), crate::qseries::rat(61, 2));
        assert!(parse_order("x").is_err());
        assert!(parse_point("0,2").is_ok());
        assert!(parse_point("0,-2").is_err());
        assert!(parse_point("1").is_err());
    }
}
