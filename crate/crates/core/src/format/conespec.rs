use std::f64::consts::PI;

use super::FormatError;
use crate::cone2d::{AngleUnit, Cone2};

/// Slack on the wedge opening that absorbs the rounding of printed angles.
const TOL_PARSE: f64 = 1e-9;

fn bad(spec: &str, reason: impl Into<String>) -> FormatError {
    FormatError::BadConeSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// Parses `zero`, `plane`, `ray:θ`, `line:θ` and `wedge[lo,hi]`; the
/// separators `:`, `[..]` and `(..)` are interchangeable. A wedge runs
/// counterclockwise from `lo` to `hi` with `0 ≤ hi − lo ≤ 180°`.
pub fn parse_cone_spec(spec: &str, unit: AngleUnit) -> Result<Cone2, FormatError> {
    let s = spec.trim().to_ascii_lowercase();
    let split = s
        .find(|c: char| !c.is_ascii_alphabetic())
        .unwrap_or(s.len());
    let (kind, rest) = s.split_at(split);
    let rest = rest.trim();
    let args = rest
        .strip_prefix(':')
        .or_else(|| rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
        .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
        .unwrap_or(rest);
    let nums: Vec<f64> = if args.trim().is_empty() {
        vec![]
    } else {
        args.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .map(|v| unit.to_radians(v))
                    .ok_or_else(|| bad(spec, format!("not a finite angle: {:?}", t.trim())))
            })
            .collect::<Result<_, _>>()?
    };
    let arity = |k: usize| {
        if nums.len() == k {
            Ok(())
        } else {
            Err(bad(spec, format!("{kind} takes {k} angle(s)")))
        }
    };
    match kind {
        "zero" => arity(0).map(|_| Cone2::Zero),
        "plane" => arity(0).map(|_| Cone2::Plane),
        "ray" => arity(1).map(|_| Cone2::ray(nums[0])),
        "line" => arity(1).map(|_| Cone2::line(nums[0])),
        "halfplane" => arity(1).map(|_| Cone2::halfplane(nums[0])),
        "wedge" => {
            arity(2)?;
            let width = nums[1] - nums[0];
            if !(-TOL_PARSE..=PI + TOL_PARSE).contains(&width) {
                return Err(bad(spec, "wedge opening must lie in [0, 180] degrees"));
            }
            Cone2::wedge(nums[0], width.clamp(0.0, PI)).map_err(|e| bad(spec, e.to_string()))
        }
        "" => Err(bad(spec, "missing cone kind")),
        other => Err(bad(spec, format!("unknown cone kind {other:?}"))),
    }
}

/// Inverse of [`parse_cone_spec`] up to rounding (12 significant digits).
pub fn format_cone(cone: &Cone2, unit: AngleUnit) -> String {
    cone.display_in(unit).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn parses_all_forms() {
        let d = AngleUnit::Degrees;
        assert_eq!(parse_cone_spec("ray:0", d).unwrap(), Cone2::ray(0.0));
        assert_eq!(parse_cone_spec(" Zero ", d).unwrap(), Cone2::Zero);
        assert_eq!(parse_cone_spec("plane", d).unwrap(), Cone2::Plane);
        assert!(parse_cone_spec("wedge[0,90]", d)
            .unwrap()
            .approx_eq(&Cone2::wedge(0.0, FRAC_PI_2).unwrap(), 1e-15));
        assert!(parse_cone_spec("line(45)", d).unwrap().approx_eq(&Cone2::line(PI / 4.0), 1e-15));
        assert!(parse_cone_spec("wedge[0,1.5707963267948966]", AngleUnit::Radians)
            .unwrap()
            .approx_eq(&Cone2::wedge(0.0, FRAC_PI_2).unwrap(), 1e-15));
        assert!(parse_cone_spec("wedge[-90,90]", d).unwrap().is_halfplane());
    }

    #[test]
    fn rejects_malformed() {
        let d = AngleUnit::Degrees;
        for s in ["", "ray", "ray:a", "wedge[0]", "wedge[0,200]", "wedge[90,0]", "cone:1", "zero:1", "ray:inf"] {
            assert!(parse_cone_spec(s, d).is_err(), "{s}");
        }
    }

    #[test]
    fn print_parse_round_trip() {
        for spec in ["wedge[0,135]", "ray[-90]", "line[30]", "zero", "plane", "wedge[-90,90]"] {
            let k = parse_cone_spec(spec, AngleUnit::Degrees).unwrap();
            assert_eq!(format_cone(&k, AngleUnit::Degrees), spec);
        }
    }
}
