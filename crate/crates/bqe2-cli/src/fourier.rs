use bqe2::qexp::{fourier_coeffs, FourierRow, QexpError};
use serde::Serialize;

/// One table entry with its mirror (-|q|)^m F_{-m}(|q|^{n-m}).
#[derive(Debug, Serialize)]
pub struct FourierRecord {
    pub n: i64,
    pub m: i64,
    pub value: f64,
    pub mirror: f64,
    pub symmetry_residual: f64,
}

pub fn records(modulus: f64, n_lo: i64, n_hi: i64, m_max: i64, samples: usize) -> Result<Vec<FourierRecord>, QexpError> {
    let rows: Vec<FourierRow> = (n_lo - m_max..=n_hi + m_max)
        .map(|n| fourier_coeffs(n, m_max, samples, modulus))
        .collect::<Result<_, _>>()?;
    let row = |n: i64| &rows[(n - n_lo + m_max) as usize];
    let mut out = Vec::new();
    for n in n_lo..=n_hi {
        for m in -m_max..=m_max {
            let value = row(n).get(m).expect("m within the stored range");
            let other = row(n - m).get(-m).expect("m within the stored range");
            let mirror = (-modulus).powi(m as i32) * other;
            out.push(FourierRecord {
                n,
                m,
                value,
                mirror,
                symmetry_residual: (value - mirror).abs(),
            });
        }
    }
    Ok(out)
}
