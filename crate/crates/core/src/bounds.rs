//! Closed-form bounds on `μ` and `μ_t` for the three topology families.
//!
//! Integer bounds use checked `u128` arithmetic; the only floating-point
//! quantity is the analytic hypercube threshold.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::topology::TopologyKind;

/// Known optima of `μ(Q_d)` for `d = 1..=5`.
pub const HYPERCUBE_OPTIMA: [u128; 5] = [2, 3, 5, 9, 16];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub kind: TopologyKind,
    pub d: usize,
    pub vertex_count: u128,
    pub lower_bound: u128,
    pub lower_source: String,
    pub upper_bound: u128,
    pub upper_source: String,
    pub exact: Option<u128>,
    /// Guarantee of the construction behind `lower_bound` (upper / lower).
    #[serde(serialize_with = "ser_ratio")]
    pub approx_ratio: Ratio<u128>,
    /// Sizes above this are known to be achievable (hypercubes, `d ≥ 6`).
    pub threshold: Option<f64>,
    pub total_exact: Option<u128>,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub total_lower: Option<Ratio<u128>>,
    pub notes: Vec<String>,
}

fn ratio_json(r: &Ratio<u128>) -> serde_json::Value {
    serde_json::json!({
        "numer": r.numer().to_string(),
        "denom": r.denom().to_string(),
        "value": ratio_f64(r),
    })
}

fn ser_ratio<S: Serializer>(r: &Ratio<u128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    ratio_json(r).serialize(s)
}

fn ser_opt_ratio<S: Serializer>(
    r: &Option<Ratio<u128>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    r.as_ref().map(ratio_json).serialize(s)
}

pub fn ratio_f64(r: &Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl BoundsReport {
    pub fn approx_ratio_f64(&self) -> f64 {
        ratio_f64(&self.approx_ratio)
    }

    /// Whether `value` is consistent with the reported bounds.
    pub fn admits(&self, value: u128) -> bool {
        self.lower_bound <= value
            && value <= self.upper_bound
            && self.exact.is_none_or(|e| e == value)
    }
}

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

fn pow2(e: usize) -> Result<u128> {
    1u128
        .checked_shl(e as u32)
        .filter(|_| e < 128)
        .ok_or_else(|| overflow("2^d"))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or_else(|| overflow("binomial"))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// Size of the middle-layer construction: `C(d,⌊d/2⌋) + C(d,⌊d/2⌋+3)`.
pub fn hypercube_lower(d: usize) -> Result<u128> {
    let h = d / 2;
    binomial(d, h)?
        .checked_add(binomial(d, h + 3)?)
        .ok_or_else(|| overflow("hypercube lower bound"))
}

/// `2^d / sqrt(πd/2)`.
pub fn hypercube_threshold(d: usize) -> f64 {
    2f64.powi(d as i32) / (std::f64::consts::PI * d as f64 / 2.0).sqrt()
}

pub fn hypercube_bounds(d: usize) -> Result<BoundsReport> {
    if d == 0 {
        return Err(Error::InvalidDimension(
            "hypercube bounds need d ≥ 1".into(),
        ));
    }
    let n = pow2(d)?;
    let lower = hypercube_lower(d)?;
    let mut notes = Vec::new();
    let (upper, upper_source, exact) = if d <= HYPERCUBE_OPTIMA.len() {
        let v = HYPERCUBE_OPTIMA[d - 1];
        (v, "exhaustive search".to_string(), Some(v))
    } else {
        (pow2(d - 1)?, "halving from Q_5".to_string(), None)
    };
    let threshold = (d >= 6).then(|| hypercube_threshold(d));
    notes.push("total lower bound is probabilistic; no certificate".into());
    Ok(BoundsReport {
        kind: TopologyKind::Hypercube,
        d,
        vertex_count: n,
        lower_bound: lower,
        lower_source: "middle layers".into(),
        upper_bound: upper,
        upper_source,
        exact,
        approx_ratio: Ratio::new(upper, lower),
        threshold,
        total_exact: None,
        total_lower: if d >= 2 {
            Some(hamming_total_lower(2, d)?)
        } else {
            None
        },
        notes,
    })
}

pub fn ccc_bounds(d: usize) -> Result<BoundsReport> {
    if d < 3 {
        return Err(Error::InvalidDimension(format!(
            "d must be ≥ 3 for ccc, got {d}"
        )));
    }
    let n = (d as u128)
        .checked_mul(pow2(d)?)
        .ok_or_else(|| overflow("ccc order"))?;
    let lower = pow2(d.div_ceil(2) - 1)?;
    let upper = pow2(d - 2)?
        .checked_mul(3)
        .ok_or_else(|| overflow("ccc upper bound"))?;
    let exact = (d == 3).then_some(6);
    Ok(BoundsReport {
        kind: TopologyKind::Ccc,
        d,
        vertex_count: n,
        lower_bound: lower,
        lower_source: "level-zero set".into(),
        upper_bound: upper,
        upper_source: "three per supervertex pair".into(),
        exact,
        approx_ratio: Ratio::new(upper, lower),
        threshold: None,
        total_exact: Some(0),
        total_lower: None,
        notes: vec!["no bypass vertices, so the total number is zero".into()],
    })
}

pub fn bf_exact(d: usize) -> Result<BoundsReport> {
    if d == 0 {
        return Err(Error::InvalidDimension(
            "butterfly bounds need d ≥ 1".into(),
        ));
    }
    let n = (d as u128 + 1)
        .checked_mul(pow2(d)?)
        .ok_or_else(|| overflow("butterfly order"))?;
    let construction = pow2(d + 1)? - 2;
    // BF(1) is C4, whose optimum 3 exceeds the general formula.
    let (mu, upper_source, notes) = if d == 1 {
        (
            3,
            "BF(1) is C4",
            vec!["d=1: the formula 2^(d+1)-2 = 2 is not optimal; C4 admits 3".to_string()],
        )
    } else {
        (construction, "column cap", Vec::new())
    };
    Ok(BoundsReport {
        kind: TopologyKind::Butterfly,
        d,
        vertex_count: n,
        lower_bound: construction,
        lower_source: "two per column minus corners".into(),
        upper_bound: mu,
        upper_source: upper_source.into(),
        exact: Some(mu),
        approx_ratio: Ratio::new(mu, construction),
        threshold: None,
        total_exact: Some(pow2(d)?),
        total_lower: None,
        notes,
    })
}

pub fn bounds_for(kind: TopologyKind, d: usize) -> Result<BoundsReport> {
    match kind {
        TopologyKind::Hypercube => hypercube_bounds(d),
        TopologyKind::Ccc => ccc_bounds(d),
        TopologyKind::Butterfly => bf_exact(d),
    }
}

/// `s^(r-2) / (r(r+1))`, a lower bound on `μ_t` of the `r`-fold Cartesian
/// power of `K_s`.
pub fn hamming_total_lower(s: usize, r: usize) -> Result<Ratio<u128>> {
    if s < 2 || r < 2 {
        return Err(Error::InvalidDimension(format!(
            "need s ≥ 2 and r ≥ 2, got s={s}, r={r}"
        )));
    }
    let num = (s as u128)
        .checked_pow((r - 2) as u32)
        .ok_or_else(|| overflow("s^(r-2)"))?;
    let den = (r as u128) * (r as u128 + 1);
    Ok(Ratio::new(num, den))
}

/// Hypercube bounds in the layout `d,n,mu` with one row per `d` and a
/// closing symbolic row for `d ≥ 6`.
pub fn hypercube_table_csv(ds: impl IntoIterator<Item = usize>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fmt = |e: csv::Error| Error::Format(e.to_string());
    w.write_record(["d", "n", "mu"]).map_err(fmt)?;
    for d in ds {
        let b = hypercube_bounds(d)?;
        let mu = match b.exact {
            Some(e) => format!("={e}"),
            None => format!("<={}", b.upper_bound),
        };
        w.write_record([d.to_string(), b.vertex_count.to_string(), mu])
            .map_err(fmt)?;
    }
    w.write_record(["d>=6", "2^d", "<=2^(d-1)"]).map_err(fmt)?;
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

/// One row per report with numeric columns.
pub fn bounds_csv(reports: &[BoundsReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fmt = |e: csv::Error| Error::Format(e.to_string());
    w.write_record([
        "kind",
        "d",
        "n",
        "lower",
        "upper",
        "exact",
        "ratio",
        "total_exact",
    ])
    .map_err(fmt)?;
    let opt = |v: Option<u128>| v.map(|x| x.to_string()).unwrap_or_default();
    for b in reports {
        w.write_record([
            b.kind.name().to_string(),
            b.d.to_string(),
            b.vertex_count.to_string(),
            b.lower_bound.to_string(),
            b.upper_bound.to_string(),
            opt(b.exact),
            b.approx_ratio.to_string(),
            opt(b.total_exact),
        ])
        .map_err(fmt)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypercube_examples() {
        assert_eq!(hypercube_bounds(5).unwrap().exact, Some(16));
        assert_eq!(hypercube_bounds(4).unwrap().exact, Some(9));
        let b6 = hypercube_bounds(6).unwrap();
        assert_eq!((b6.lower_bound, b6.upper_bound, b6.exact), (21, 32, None));
        assert!(hypercube_bounds(0).is_err());
        assert!(hypercube_bounds(64).is_ok());
    }

    #[test]
    fn ccc_examples() {
        let b3 = ccc_bounds(3).unwrap();
        assert_eq!((b3.upper_bound, b3.exact), (6, Some(6)));
        let b4 = ccc_bounds(4).unwrap();
        assert_eq!((b4.lower_bound, b4.upper_bound), (2, 12));
        assert_eq!(b4.approx_ratio, Ratio::from_integer(6));
        // 3 * 2^(floor(d/2) - 1) = 6 at d = 5, the quotient 24 / 4.
        assert_eq!(ccc_bounds(5).unwrap().approx_ratio, Ratio::from_integer(6));
        for d in 3..=40 {
            let expect = 3u128 << (d / 2 - 1);
            assert_eq!(
                ccc_bounds(d).unwrap().approx_ratio,
                Ratio::from_integer(expect)
            );
        }
        assert!(ccc_bounds(2).is_err());
    }

    #[test]
    fn butterfly_examples() {
        let b = bf_exact(2).unwrap();
        assert_eq!((b.exact, b.total_exact), (Some(6), Some(4)));
        let b = bf_exact(3).unwrap();
        assert_eq!((b.exact, b.total_exact), (Some(14), Some(8)));
        assert_eq!(bf_exact(10).unwrap().exact, Some(2046));
        let b1 = bf_exact(1).unwrap();
        assert_eq!(
            (b1.lower_bound, b1.exact, b1.total_exact),
            (2, Some(3), Some(2))
        );
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_total_lower(2, 4).unwrap(), Ratio::new(1, 5));
        assert_eq!(hamming_total_lower(2, 2).unwrap(), Ratio::new(1, 6));
        assert_eq!(hamming_total_lower(3, 3).unwrap(), Ratio::new(1, 4));
        assert!(hamming_total_lower(1, 3).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3).unwrap(), 20);
        assert_eq!(binomial(4, 5).unwrap(), 0);
        assert_eq!(binomial(64, 32).unwrap(), 1_832_624_140_942_590_534);
    }

    #[test]
    fn table_layout() {
        let csv = hypercube_table_csv(1..=5).unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(
            lines,
            [
                "d,n,mu",
                "1,2,=2",
                "2,4,=3",
                "3,8,=5",
                "4,16,=9",
                "5,32,=16",
                "d>=6,2^d,<=2^(d-1)"
            ]
        );
        let json = serde_json::to_value(hypercube_bounds(6).unwrap()).unwrap();
        assert_eq!(json["approx_ratio"]["numer"], "32");
        assert_eq!(json["approx_ratio"]["denom"], "21");
    }
}
