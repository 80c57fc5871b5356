//! The `analyze` table.

use serde::Serialize;
use urs_core::decoders::independent_budget;
use urs_core::reliability::{
    bb_failure_rate, bb_miscorrection_bound, collaborative_radius, dense_miscorrection_rate,
    failure_weight, power_radius, ChipkillTerm, DenseDecoders, DenseRate, DenseShape, ToF64,
    WithinBound,
};
use urs_core::urs::UrsCode;
use urs_core::{Error, ExactProb, Prob};

#[derive(Serialize, Debug)]
pub struct ViewRadii {
    pub ell: usize,
    pub rows: Vec<(usize, usize)>,
    /// Columns collaborative decoding handles, ⌊(N-K)/(ℓ+1)⌋.
    pub collaborative_radius: usize,
    /// Power-decoding radius of the first row code.
    pub power_radius: usize,
}

#[derive(Serialize, Debug)]
pub struct DenseEntry {
    pub decoders: String,
    pub rate: Prob,
    pub exact: bool,
}

#[derive(Serialize, Debug)]
pub struct Analysis {
    pub code: String,
    pub q: usize,
    pub big_n: usize,
    pub big_k: usize,
    pub ell: usize,
    pub metadata_symbols: usize,
    /// Fast-chipkill failure probability on a uniform single-column error.
    pub due_single_column: Option<Prob>,
    pub due_single_column_exact: Option<String>,
    pub miscorrection_bound: Option<Prob>,
    pub failure_weight: usize,
    pub views: Vec<ViewRadii>,
    pub dense: Vec<DenseEntry>,
}

impl Analysis {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<Prob>| v.map_or(String::new(), |x| format!("{x:e}"));
        let mut s = String::from("quantity,value\n");
        s += &format!("code,{}\n", self.code);
        s += &format!("due_single_column,{}\n", opt(self.due_single_column));
        s += &format!("miscorrection_bound,{}\n", opt(self.miscorrection_bound));
        s += &format!("failure_weight,{}\n", self.failure_weight);
        for v in &self.views {
            s += &format!(
                "collaborative_radius_ell{},{}\n",
                v.ell, v.collaborative_radius
            );
            s += &format!("power_radius_ell{},{}\n", v.ell, v.power_radius);
        }
        for d in &self.dense {
            s += &format!("dense_{},{:e}\n", d.decoders, d.rate);
        }
        s
    }
}

fn dense(shape: &DenseShape, label: &str, dec: DenseDecoders) -> Option<DenseEntry> {
    let r: DenseRate<Prob> = dense_miscorrection_rate(shape, &dec).ok()?;
    Some(DenseEntry {
        decoders: label.to_string(),
        rate: r.rate,
        exact: r.exact,
    })
}

pub fn analyze(urs: &UrsCode) -> Result<Analysis, Error> {
    let q = urs.field().order();
    let (n, k, ell) = (urs.big_n(), urs.big_k(), urs.ell());
    let exact: Option<ExactProb> = bb_failure_rate(q as u64, n, k, ell).ok();
    let mut views = Vec::new();
    for w in (2..=ell).filter(|w| ell % w == 0) {
        let Ok(v) = urs.view(w) else { continue };
        let rows: Vec<(usize, usize)> = v.row_codes().iter().map(|c| (c.n(), c.k())).collect();
        views.push(ViewRadii {
            ell: w,
            collaborative_radius: collaborative_radius(n, k, w),
            power_radius: power_radius(rows[0].0, rows[0].1, w),
            rows,
        });
    }
    let shape = DenseShape::of(urs);
    let r = n - k;
    let mut dense_rows = Vec::new();
    let floor = DenseDecoders {
        within: None,
        chipkill: Some(ChipkillTerm::Floor),
    };
    let exact_ck = DenseDecoders {
        within: None,
        chipkill: Some(ChipkillTerm::Exact),
    };
    dense_rows.extend(dense(&shape, "chipkill_floor", floor));
    dense_rows.extend(dense(&shape, "chipkill", exact_ck));
    if ell % 2 == 0 {
        let budget = independent_budget(r, 2, 0);
        if budget > 0 {
            let within = Some(WithinBound::Columns { width: 2, budget });
            let label = format!("columns2x{budget}+chipkill");
            dense_rows.extend(dense(
                &shape,
                &label,
                DenseDecoders {
                    within,
                    chipkill: Some(ChipkillTerm::Exact),
                },
            ));
        }
    }
    dense_rows.extend(dense(
        &shape,
        "direct",
        DenseDecoders {
            within: Some(WithinBound::Symbols { t: r / 2 }),
            chipkill: None,
        },
    ));
    Ok(Analysis {
        code: format!("URS(GF({q}); {n},{k}) ell={ell}"),
        q,
        big_n: n,
        big_k: k,
        ell,
        metadata_symbols: urs.a(),
        due_single_column: exact.as_ref().map(|x| x.to_f64_lossy()),
        due_single_column_exact: exact.map(|x| x.to_string()),
        miscorrection_bound: bb_miscorrection_bound(q as u64, n, k, ell).ok(),
        failure_weight: failure_weight(n, k, ell),
        views,
        dense: dense_rows,
    })
}
