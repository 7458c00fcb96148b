//! Closed-form bounds on codes of nodal surfaces in `P^3` of even degree `b`.
//!
//! All bounds are signed; a non-positive value means the bound says nothing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nodal::binomial;

fn check_even(b: u64) -> Result<i128> {
    if !b.is_multiple_of(2) || b < 4 {
        return Err(Error::domain(format!("degree must be even and at least 4, got {b}")));
    }
    if b > 1_000_000 {
        return Err(Error::domain(format!("degree {b} is too large")));
    }
    Ok(b as i128)
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::domain("bound does not fit in 64 bits"))
}

/// Second Betti number of the minimal resolution of the double cover branched
/// along the surface: `b^3 - 4b^2 + 6b - 2`.
pub fn b2_double_cover(b: u64) -> Result<i64> {
    let b = check_even(b)?;
    narrow(b * b * b - 4 * b * b + 6 * b - 2)
}

/// Lower bound on `dim C_bar` from the double cover:
/// `mu - b2/2 + 1`, or `mu - b(b^2 - 4b + 6)/2` when `printed_closed_form`
/// is set. The two differ by exactly 2.
pub fn beauville_bound(b: u64, mu: u64, printed_closed_form: bool) -> Result<i64> {
    let bb = check_even(b)?;
    let mu = mu as i128;
    let v = if printed_closed_form {
        mu - bb * (bb * bb - 4 * bb + 6) / 2
    } else {
        mu - (bb * bb * bb - 4 * bb * bb + 6 * bb - 2) / 2 + 1
    };
    narrow(v)
}

/// `mu - (b - 2)(23b^2 - 38b + 24)/48`.
pub fn improved_bound(b: u64, mu: u64) -> Result<i64> {
    let b = check_even(b)?;
    let num = (b - 2) * (23 * b * b - 38 * b + 24);
    debug_assert_eq!(num % 48, 0);
    narrow(mu as i128 - num / 48)
}

/// `floor(4 b (b - 1)^2 / 9)`.
pub fn miyaoka_max_nodes(b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::domain("degree must be positive"));
    }
    let b = b as u128;
    u64::try_from(4 * b * (b - 1) * (b - 1) / 9).map_err(|_| Error::domain("degree too large"))
}

/// `4 * C(b/2, 3)`.
pub fn jacobian_slice_dim(b: u64) -> Result<u64> {
    let b = check_even(b)?;
    Ok(4 * binomial(b as i64 / 2, 3) as u64)
}

/// Ranks of the 2-torsion: `(h3, total)` with `h3 = dim_code - defect` and
/// `total = 2 * h3` counting the copies in `H^3` and `H^4`.
pub fn torsion_rank(dim_code: u64, defect: u64) -> Result<(u64, u64)> {
    if dim_code < defect {
        return Err(Error::Inconsistent(format!(
            "code dimension {dim_code} is smaller than the defect {defect}"
        )));
    }
    let h3 = dim_code - defect;
    Ok((h3, 2 * h3))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub b: u64,
    pub mu: u64,
    pub beauville: i64,
    pub beauville_printed: i64,
    pub improved: i64,
    pub miyaoka_max: u64,
    pub jacobian_slice_dim: u64,
    /// Whether `mu` exceeds the Miyaoka cap, so no such surface exists.
    pub exceeds_miyaoka: bool,
}

impl BoundReport {
    pub fn new(b: u64, mu: u64) -> Result<Self> {
        let miyaoka_max = miyaoka_max_nodes(b)?;
        Ok(Self {
            b,
            mu,
            beauville: beauville_bound(b, mu, false)?,
            beauville_printed: beauville_bound(b, mu, true)?,
            improved: improved_bound(b, mu)?,
            miyaoka_max,
            jacobian_slice_dim: jacobian_slice_dim(b)?,
            exceeds_miyaoka: mu > miyaoka_max,
        })
    }
}
