//! CSV output for bound scans.

use std::io::Write;

use num_rational::Ratio;
use syscodes_core::surface_family::BoundReport;

pub const SCAN_HEADER: [&str; 10] = [
    "descriptor",
    "n",
    "k",
    "d",
    "d2_over_n",
    "R_delta2_n2",
    "bound36",
    "csys_primal",
    "csys_dual",
    "triangulation",
];

/// Fixed-point rendering with `places` digits, rounded half up.
pub fn decimal(r: Ratio<u64>, places: u32) -> String {
    let scale = 10u128.pow(places);
    let (num, den) = (*r.numer() as u128, *r.denom() as u128);
    let scaled = (num * scale * 2 + den) / (den * 2);
    let (whole, frac) = (scaled / scale, scaled % scale);
    if places == 0 {
        whole.to_string()
    } else {
        format!("{whole}.{frac:0width$}", width = places as usize)
    }
}

pub fn scan_record(r: &BoundReport) -> [String; 10] {
    [
        r.descriptor.clone(),
        r.n.to_string(),
        r.k.to_string(),
        r.d.to_string(),
        decimal(r.d2_over_n, 6),
        decimal(r.rate_delta2_n2, 6),
        r.bound_36_satisfied.to_string(),
        r.primal_systole.to_string(),
        r.dual_systole.to_string(),
        r.is_triangulation.to_string(),
    ]
}

pub fn write_scan_csv<W: Write>(out: W, reports: &[BoundReport]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_HEADER)?;
    for r in reports {
        w.write_record(scan_record(r))?;
    }
    w.flush()?;
    Ok(())
}
