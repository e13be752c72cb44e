//! Parameter sweep: classify every cell of a `(p, a)` grid for fixed
//! `(N, q)` and emit a region-map CSV. In the supercritical strip the
//! verdict boundary tracks `a = 2p/(p-1)`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::json;

use wavecrit::exponents::{
    classify_fujita, classify_second, fujita_exponent, second_critical_exponent, Classification,
    ProblemParams, Verdict,
};
use wavecrit::parallel::par_map;

use crate::output::RunWriter;

fn default_k() -> u32 {
    2
}

#[derive(Debug, Deserialize, Serialize)]
pub struct SweepConfig {
    #[serde(rename = "N")]
    pub dim: u32,
    #[serde(default = "default_k")]
    pub k: u32,
    pub q: f64,
    pub p: RangeSpec,
    pub a: RangeSpec,
}

#[derive(Debug, Deserialize, Serialize)]
pub struct RangeSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl RangeSpec {
    fn values(&self) -> Result<Vec<f64>> {
        if self.count < 2 || !(self.max > self.min) {
            bail!(
                "range needs min < max and count >= 2 (got [{}, {}] x {})",
                self.min,
                self.max,
                self.count
            );
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        Ok((0..self.count).map(|i| self.min + step * i as f64).collect())
    }
}

/// Verdict for one `(p, a)` cell: the first-exponent result where it
/// decides, the second-exponent result in the supercritical strip.
fn classify_cell(params: &ProblemParams, a: f64) -> Classification {
    let fujita = classify_fujita(params);
    if fujita.verdict == Verdict::GlobalExistencePossible {
        classify_second(params, a)
    } else {
        fujita
    }
}

pub fn cmd_sweep(out_dir: &Path, config_path: &Path) -> Result<u8> {
    let text = std::fs::read_to_string(config_path)
        .with_context(|| format!("reading {}", config_path.display()))?;
    let config: SweepConfig = match config_path.extension().and_then(|e| e.to_str()) {
        Some("json") => serde_json::from_str(&text).context("parsing JSON sweep config")?,
        _ => toml::from_str(&text).context("parsing TOML sweep config")?,
    };
    if !(config.p.min > 1.0) {
        bail!("sweep requires p > 1 over the whole grid (got p.min = {})", config.p.min);
    }
    if !(config.q > 1.0) {
        bail!("sweep requires q > 1 (got {})", config.q);
    }

    let ps = config.p.values()?;
    let avs = config.a.values()?;
    let cells: Vec<(usize, usize)> = (0..ps.len())
        .flat_map(|i| (0..avs.len()).map(move |j| (i, j)))
        .collect();

    let dim = config.dim;
    let k = config.k;
    let q = config.q;
    let rows = par_map(&cells, |&(i, j)| {
        let p = ps[i];
        let a = avs[j];
        let params = ProblemParams::new(k, p, q, dim).expect("grid validated");
        let cls = classify_cell(&params, a);
        (i, j, p, a, cls)
    });

    let p_star = fujita_exponent(dim)?;
    let mut csv = String::from("i,j,p,a,p_star,a_star,verdict,theorem_tag\n");
    let mut counts = std::collections::BTreeMap::<String, usize>::new();
    for (i, j, p, a, cls) in &rows {
        let a_star = second_critical_exponent(*p).expect("p > 1");
        csv.push_str(&format!(
            "{i},{j},{p},{a},{p_star},{a_star},{:?},{}\n",
            cls.verdict, cls.theorem_tag
        ));
        *counts.entry(format!("{:?}", cls.verdict)).or_default() += 1;
    }

    let settings = serde_json::to_value(&config)?;
    let report = json!({
        "command": "sweep",
        "theorem_tag": "Theorem 2 + Theorem 3",
        "settings": settings,
        "result": {
            "cells": rows.len(),
            "verdict_counts": counts,
            "region_map": "region.csv",
        },
    });
    let mut writer = RunWriter::new(out_dir, &settings)?;
    writer.emit_report(&report)?;
    writer.emit_csv("region.csv", &csv)?;
    writer.finish()?;
    Ok(0)
}
