// Copyright 2026 The lgcavity Authors
// SPDX-License-Identifier: Apache-2.0

//! Fixed-format CSV writers and the minima CSV reader.

use std::fmt::Write;

use lgcavity::analysis::{CouplingExponents, FitResult, MinimumRecord, ScanSeries};

use crate::CliError;

pub const SCAN_HEADER: &str = "T,lg_pp,lg_pm,lg_mp,lg_mm,exp_A0,exp_A1,corr_A0A1,v_re,v_im,terms_used";
pub const MINIMA_HEADER: &str = "inv_beta,g,T_min,LG_min,refined";
pub const SWEEP_HEADER: &str =
    "g,n_records,a1,b1,c1,rms1,converged1,a2,b2,c2,rms2,converged2,beyond_validity";

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn scan_csv(series: &ScanSeries) -> String {
    let mut out = String::with_capacity(200 * series.len());
    out.push_str(SCAN_HEADER);
    out.push('\n');
    for q in &series.lg_values {
        let fields = [q.t, q.lg_pp, q.lg_pm, q.lg_mp, q.lg_mm, q.exp_a0, q.exp_a1, q.corr_a0a1, q.v.value.re, q.v.value.im];
        let row: Vec<String> = fields.iter().map(|&x| num(x)).collect();
        let _ = writeln!(out, "{},{}", row.join(","), q.v.terms_used);
    }
    out
}

pub fn minima_csv(records: &[MinimumRecord]) -> String {
    let mut out = String::from(MINIMA_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(r.temperature),
            num(r.coupling),
            num(r.t_min),
            num(r.lg_min),
            r.refined
        );
    }
    out
}

fn fit_fields(f: Option<FitResult>) -> String {
    match f {
        Some(f) => format!("{},{},{},{},{}", num(f.a), num(f.b), num(f.c), num(f.residual_rms), f.converged),
        None => ",,,,false".into(),
    }
}

pub fn sweep_csv(rows: &[CouplingExponents]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(r.coupling),
            r.records.len(),
            fit_fields(r.lg_fit),
            fit_fields(r.t_fit),
            r.beyond_validity
        );
    }
    out
}

fn bad(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("line {line}: {msg}"))
}

/// Reads a `minima` CSV. Columns are located by header name.
pub fn parse_minima_csv(text: &str) -> Result<Vec<MinimumRecord>, CliError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return Err(CliError::Config("input is empty".into()));
    };
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let find = |name: &str| {
        cols.iter().position(|c| *c == name).ok_or_else(|| bad(1, format!("missing column `{name}`")))
    };
    let (ib, ig, it, il) = (find("inv_beta")?, find("g")?, find("T_min")?, find("LG_min")?);
    let ir = cols.iter().position(|c| *c == "refined");
    let mut records = Vec::new();
    for (i, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != cols.len() {
            return Err(bad(i + 1, format!("expected {} fields, found {}", cols.len(), fields.len())));
        }
        let get = |k: usize| fields[k].parse::<f64>().map_err(|_| bad(i + 1, format!("`{}` is not a number", fields[k])));
        let refined = match ir {
            Some(k) => fields[k]
                .parse::<bool>()
                .map_err(|_| bad(i + 1, format!("`{}` is not true/false", fields[k])))?,
            None => false,
        };
        records.push(MinimumRecord {
            temperature: get(ib)?,
            coupling: get(ig)?,
            t_min: get(it)?,
            lg_min: get(il)?,
            refined,
        });
    }
    Ok(records)
}
