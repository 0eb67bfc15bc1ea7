//! Quantity parsing with SI unit suffixes.
//!
//! Physical inputs accept suffixed values ("9.15GHz", "32.8mm", "45deg",
//! "100ps"); bare numbers mean base SI units (meters, hertz, seconds,
//! radians). Everything is stored internally in base SI plus radians.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum UnitError {
    #[error("cannot parse `{text}` as a number{unit}", unit = if .unit.is_empty() { String::new() } else { format!(" with unit `{}`", .unit) })]
    BadNumber { text: String, unit: String },
    #[error("unit `{unit}` does not measure {dimension}; accepted: {accepted}")]
    WrongDimension {
        unit: String,
        dimension: &'static str,
        accepted: &'static str,
    },
    #[error("non-finite quantity `{text}`")]
    NotFinite { text: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Frequency,
    Time,
    Angle,
    Dimensionless,
}

impl Dimension {
    fn table(self) -> &'static [(&'static str, f64)] {
        match self {
            Dimension::Length => &[
                ("km", 1e3),
                ("m", 1.0),
                ("cm", 1e-2),
                ("mm", 1e-3),
                ("um", 1e-6),
                ("nm", 1e-9),
            ],
            Dimension::Frequency => &[
                ("THz", 1e12),
                ("GHz", 1e9),
                ("MHz", 1e6),
                ("kHz", 1e3),
                ("Hz", 1.0),
            ],
            Dimension::Time => &[
                ("s", 1.0),
                ("ms", 1e-3),
                ("us", 1e-6),
                ("ns", 1e-9),
                ("ps", 1e-12),
                ("fs", 1e-15),
            ],
            Dimension::Angle => &[("rad", 1.0), ("deg", std::f64::consts::PI / 180.0)],
            Dimension::Dimensionless => &[],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Dimension::Length => "length",
            Dimension::Frequency => "frequency",
            Dimension::Time => "time",
            Dimension::Angle => "angle",
            Dimension::Dimensionless => "a dimensionless quantity",
        }
    }

    fn accepted(self) -> &'static str {
        match self {
            Dimension::Length => "km, m, cm, mm, um, nm or a bare number in meters",
            Dimension::Frequency => "THz, GHz, MHz, kHz, Hz or a bare number in hertz",
            Dimension::Time => "s, ms, us, ns, ps, fs or a bare number in seconds",
            Dimension::Angle => "rad, deg or a bare number in radians",
            Dimension::Dimensionless => "a bare number",
        }
    }
}

/// Parse a quantity with an optional unit suffix into base SI units.
pub fn parse_quantity(text: &str, dimension: Dimension) -> Result<f64, UnitError> {
    let trimmed = text.trim();
    let split = trimmed
        .rfind(|c: char| c.is_ascii_digit() || c == '.')
        .map(|i| i + 1)
        .unwrap_or(0);
    let (number_part, unit_part) = trimmed.split_at(split);
    let unit_part = unit_part.trim();

    let factor = if unit_part.is_empty() {
        1.0
    } else {
        match dimension.table().iter().find(|(u, _)| *u == unit_part) {
            Some((_, f)) => *f,
            None => {
                return Err(UnitError::WrongDimension {
                    unit: unit_part.to_string(),
                    dimension: dimension.name(),
                    accepted: dimension.accepted(),
                })
            }
        }
    };

    let value: f64 = number_part
        .trim()
        .parse()
        .map_err(|_| UnitError::BadNumber {
            text: trimmed.to_string(),
            unit: unit_part.to_string(),
        })?;
    let scaled = value * factor;
    if !scaled.is_finite() {
        return Err(UnitError::NotFinite {
            text: trimmed.to_string(),
        });
    }
    Ok(scaled)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() <= 1e-12 * b.abs(), "{a} vs {b}");
    }

    #[test]
    fn suffixed_values() {
        close(parse_quantity("9.15GHz", Dimension::Frequency).unwrap(), 9.15e9);
        close(parse_quantity("32.8mm", Dimension::Length).unwrap(), 0.0328);
        close(parse_quantity("100ps", Dimension::Time).unwrap(), 100e-12);
        let deg = parse_quantity("45deg", Dimension::Angle).unwrap();
        assert!((deg - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn bare_numbers_are_base_si() {
        assert_eq!(parse_quantity("0.0328", Dimension::Length).unwrap(), 0.0328);
        assert_eq!(parse_quantity("1e9", Dimension::Frequency).unwrap(), 1e9);
        assert_eq!(parse_quantity(" 0.5 ", Dimension::Dimensionless).unwrap(), 0.5);
    }

    #[test]
    fn whitespace_between_number_and_unit() {
        assert_eq!(parse_quantity("10 mm", Dimension::Length).unwrap(), 0.010);
    }

    #[test]
    fn wrong_dimension_is_named() {
        let err = parse_quantity("3GHz", Dimension::Length).unwrap_err();
        assert!(matches!(err, UnitError::WrongDimension { ref unit, .. } if unit == "GHz"));
    }

    #[test]
    fn garbage_is_rejected() {
        assert!(parse_quantity("abc", Dimension::Length).is_err());
        assert!(parse_quantity("", Dimension::Length).is_err());
        assert!(parse_quantity("1e400mm", Dimension::Length).is_err());
    }

    #[test]
    fn negative_and_scientific_forms() {
        close(parse_quantity("-4.5mm", Dimension::Length).unwrap(), -0.0045);
        close(parse_quantity("2.5e-3s", Dimension::Time).unwrap(), 2.5e-3);
    }
}
