//! Unit strings such as `"0.1 mD"`, `"1 GPa"` or `"0.125 km"`, converted to SI.

use crate::{Error, Result};

/// 1 darcy in m².
pub const DARCY: f64 = 9.869233e-13;

/// Physical dimension of a configured quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Permeability,
    Pressure,
    Viscosity,
    /// Normal Darcy velocity q·n and fracture sources (m/s).
    Velocity,
    /// Volumetric source (1/s).
    Rate,
    /// Force per unit volume (N/m³).
    ForceDensity,
    /// Square-root width profile coefficient (m^½).
    SqrtLength,
    Dimensionless,
}

fn factor(dim: Dimension, unit: &str) -> Option<f64> {
    use Dimension::*;
    Some(match (dim, unit) {
        (Length, "m") => 1.0,
        (Length, "km") => 1e3,
        (Length, "cm") => 1e-2,
        (Length, "mm") => 1e-3,
        (Permeability, "m2" | "m^2") => 1.0,
        (Permeability, "D") => DARCY,
        (Permeability, "mD") => 1e-3 * DARCY,
        (Pressure, "Pa") => 1.0,
        (Pressure, "kPa") => 1e3,
        (Pressure, "MPa") => 1e6,
        (Pressure, "GPa") => 1e9,
        (Viscosity, "Pa*s" | "Pa.s") => 1.0,
        (Viscosity, "mPa*s" | "mPa.s" | "cP") => 1e-3,
        (Velocity, "m/s") => 1.0,
        (Velocity, "m/d" | "m/day") => 1.0 / 86400.0,
        (Rate, "1/s") => 1.0,
        (ForceDensity, "N/m3" | "N/m^3") => 1.0,
        (SqrtLength, "m^0.5" | "sqrt(m)") => 1.0,
        (Dimensionless, "" | "1") => 1.0,
        _ => return None,
    })
}

/// Parses `"<number> <unit>"` for the given dimension into SI.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64> {
    let t = text.trim();
    let (num, unit) = match t.find(char::is_whitespace) {
        Some(i) => (&t[..i], t[i..].trim()),
        None => (t, ""),
    };
    let value: f64 = num.parse().map_err(|_| Error::param("quantity", format!("`{text}` does not start with a number")))?;
    let f = factor(dim, unit)
        .ok_or_else(|| Error::param("quantity", format!("unit `{unit}` is not a valid {dim:?} unit")))?;
    Ok(value * f)
}
