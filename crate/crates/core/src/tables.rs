//! The fully supported scattered Dirac series: loading, per-row checks, and shared
//! contributed K~-types between spin-lowest K-types.

use crate::data::{self, TABLES_FILE};
use crate::dirac::{hp_integral, norm_sq_infchar, spin_norm, InfChar, KType};
use crate::error::{Error, Result};
use crate::pencil::Classifier;
use crate::rational::*;
use crate::rootdata::{datum, Weight};
use crate::weyl::conjugate_under_wg;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub table_id: String,
    pub inf_char: InfChar,
    /// KGB number; provenance only.
    pub x: i64,
    pub lambda_param: Vec8,
    pub nu_param: Vec8,
    pub spin_lkts: Vec<KType>,
    /// Spin-lowest K-type that is also a lowest K-type.
    pub lkt_flags: Vec<bool>,
    pub unipotent: bool,
    pub cancellation: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    table_id: String,
    inf_char: [i64; 8],
    x: i64,
    lambda: [String; 8],
    nu: [String; 8],
    spin_lkts: Vec<[i64; 8]>,
    bold: Vec<bool>,
    unipotent: bool,
    cancellation: bool,
}

fn row_error(label: &str, i: usize, msg: impl ToString) -> Error {
    Error::Data {
        locus: format!("{label} row {i}"),
        msg: msg.to_string(),
    }
}

fn parse_params(v: &[String; 8], label: &str, i: usize) -> Result<Vec8> {
    let parsed: Vec<Q> = v.iter().map(|s| parse_q(s)).collect::<Result<_>>().map_err(|e| row_error(label, i, e))?;
    Ok(parsed.try_into().expect("eight entries"))
}

pub fn parse_tables(text: &str, label: &str) -> Result<Vec<TableRow>> {
    let values: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| Error::Data {
        locus: label.into(),
        msg: e.to_string(),
    })?;
    let mut seen: HashSet<(i64, Vec8, Vec8)> = HashSet::new();
    let mut rows = Vec::with_capacity(values.len());
    for (i, v) in values.into_iter().enumerate() {
        let raw: RawRow = serde_json::from_value(v).map_err(|e| row_error(label, i, e))?;
        if raw.spin_lkts.is_empty() {
            return Err(row_error(label, i, "no spin-lowest K-types"));
        }
        if raw.bold.len() != raw.spin_lkts.len() {
            return Err(row_error(label, i, "bold flags do not match the K-type list"));
        }
        let spin_lkts = raw
            .spin_lkts
            .iter()
            .map(|c| KType::new(*c))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| row_error(label, i, e))?;
        let inf_char = InfChar::from_ints(raw.inf_char).map_err(|e| row_error(label, i, e))?;
        let lambda_param = parse_params(&raw.lambda, label, i)?;
        let nu_param = parse_params(&raw.nu, label, i)?;
        if !seen.insert((raw.x, lambda_param, nu_param)) {
            return Err(row_error(label, i, format!("duplicate parameter (x={})", raw.x)));
        }
        rows.push(TableRow {
            table_id: raw.table_id,
            inf_char,
            x: raw.x,
            lambda_param,
            nu_param,
            spin_lkts,
            lkt_flags: raw.bold,
            unipotent: raw.unipotent,
            cancellation: raw.cancellation,
        });
    }
    Ok(rows)
}

pub fn load_tables(path: Option<&Path>) -> Result<Vec<TableRow>> {
    let (text, label) = data::read(TABLES_FILE, path)?;
    parse_tables(&text, &label)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub table_id: String,
    pub x: i64,
    pub parity_all: bool,
    pub dirac_gap_zero: bool,
    pub usmall_all: bool,
    pub hp_ok: bool,
    pub hpconj_ok: bool,
    pub inf_char_norm_sq: String,
    pub spin_norm_sq: Vec<String>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.parity_all && self.dirac_gap_zero && self.usmall_all && self.hp_ok && self.hpconj_ok
    }
}

pub fn validate_row(row: &TableRow) -> RowReport {
    let norm = norm_sq_infchar(&row.inf_char);
    let lam = row.inf_char.weight();
    let rho_c = &datum().rho_c;
    let mut cls = Classifier::new();
    let spins: Vec<_> = row.spin_lkts.iter().map(spin_norm).collect();
    RowReport {
        table_id: row.table_id.clone(),
        x: row.x,
        parity_all: row.spin_lkts.iter().all(KType::is_group_level),
        dirac_gap_zero: spins.iter().all(|s| s.spin_norm_sq == norm),
        usmall_all: row.spin_lkts.iter().all(|m| cls.classify(m).is_inside()),
        hp_ok: hp_integral(&row.inf_char),
        hpconj_ok: spins
            .iter()
            .all(|s| s.gammas.iter().all(|g| conjugate_under_wg(&g.plus(rho_c), &lam))),
        inf_char_norm_sq: format_q(&norm),
        spin_norm_sq: spins.iter().map(|s| format_q(&s.spin_norm_sq)).collect(),
    }
}

/// Contributed K~-types shared by two K-types.
pub fn pairing_evidence(mu1: &KType, mu2: &KType) -> BTreeSet<Weight> {
    let a = spin_norm(mu1).gammas;
    let b = spin_norm(mu2).gammas;
    a.intersection(&b).cloned().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharedPair {
    pub first: KType,
    pub second: KType,
    pub gammas: BTreeSet<Weight>,
}

/// Every pair of spin-lowest K-types of the row with a common contributed K~-type.
pub fn shared_pairs(row: &TableRow) -> Vec<SharedPair> {
    let spins: Vec<BTreeSet<Weight>> = row.spin_lkts.iter().map(|m| spin_norm(m).gammas).collect();
    let mut out = Vec::new();
    for i in 0..spins.len() {
        for k in i + 1..spins.len() {
            let gammas: BTreeSet<Weight> = spins[i].intersection(&spins[k]).cloned().collect();
            if !gammas.is_empty() {
                out.push(SharedPair {
                    first: row.spin_lkts[i],
                    second: row.spin_lkts[k],
                    gammas,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationSummary {
    pub rows: usize,
    pub passed: usize,
    pub parity_failures: usize,
    pub dirac_gap_failures: usize,
    pub usmall_failures: usize,
    pub hp_failures: usize,
    pub hpconj_failures: usize,
    pub cancellation_rows: usize,
    pub cancellation_rows_with_shared_gamma: usize,
    pub unipotent_rows: usize,
    pub captions: usize,
    pub captions_outside_phi1: Vec<InfChar>,
    /// Captions with no zero coordinate; these sit outside Φ by definition.
    pub regular_captions: Vec<InfChar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub rows: Vec<RowReport>,
    pub summary: ValidationSummary,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        let s = &self.summary;
        s.passed == s.rows && s.cancellation_rows == s.cancellation_rows_with_shared_gamma && s.captions_outside_phi1.is_empty()
    }
}

fn has_zero(c: &InfChar) -> bool {
    c.coords().iter().any(|x| x.is_zero())
}

fn table_key(id: &str) -> (u32, String) {
    (id.parse().unwrap_or(u32::MAX), id.to_string())
}

pub fn validate_tables(rows: &[TableRow], phi1: &[InfChar]) -> ValidationReport {
    let mut reports: Vec<(RowReport, bool)> = rows
        .par_iter()
        .map(|r| (validate_row(r), r.cancellation && !shared_pairs(r).is_empty()))
        .collect();
    reports.sort_by(|a, b| (table_key(&a.0.table_id), a.0.x).cmp(&(table_key(&b.0.table_id), b.0.x)));
    let count = |f: fn(&RowReport) -> bool| reports.iter().filter(|r| !f(&r.0)).count();
    let captions: BTreeSet<InfChar> = rows.iter().map(|r| r.inf_char).collect();
    let summary = ValidationSummary {
        rows: reports.len(),
        passed: reports.iter().filter(|r| r.0.passed()).count(),
        parity_failures: count(|r| r.parity_all),
        dirac_gap_failures: count(|r| r.dirac_gap_zero),
        usmall_failures: count(|r| r.usmall_all),
        hp_failures: count(|r| r.hp_ok),
        hpconj_failures: count(|r| r.hpconj_ok),
        cancellation_rows: rows.iter().filter(|r| r.cancellation).count(),
        cancellation_rows_with_shared_gamma: reports.iter().filter(|r| r.1).count(),
        unipotent_rows: rows.iter().filter(|r| r.unipotent).count(),
        captions: captions.len(),
        captions_outside_phi1: captions.iter().filter(|c| has_zero(c) && !phi1.contains(c)).copied().collect(),
        regular_captions: captions.iter().filter(|c| !has_zero(c)).copied().collect(),
    };
    ValidationReport {
        rows: reports.into_iter().map(|r| r.0).collect(),
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::dirac_gap;
    use crate::rootdata::Basis;

    fn k(v: [i64; 8]) -> KType {
        KType::new(v).unwrap()
    }

    fn rows() -> Vec<TableRow> {
        load_tables(None).unwrap()
    }

    #[test]
    fn shipped_counts() {
        let r = rows();
        assert_eq!(r.len(), 211);
        assert_eq!(r.iter().filter(|x| x.cancellation).count(), 15);
    }

    #[test]
    fn trivial_row() {
        let r = rows();
        let t = r.iter().find(|x| x.table_id == "25").unwrap();
        assert_eq!(t.inf_char, InfChar::from_ints([1; 8]).unwrap());
        assert_eq!(t.spin_lkts, vec![KType::zero()]);
        assert!(t.unipotent);
        let rep = validate_row(t);
        assert!(rep.passed());
        assert_eq!(rep.spin_norm_sq, vec!["620"]);
    }

    #[test]
    fn minimal_representation_row() {
        let r = rows();
        let m = r.iter().find(|x| x.x == 67078).unwrap();
        assert_eq!(m.table_id, "19");
        let expected: Vec<KType> = (1..=10).map(|n| k([0, 0, 0, 0, 0, 0, 0, 8]).plus_beta(n)).collect();
        assert_eq!(m.spin_lkts, expected);
        assert!(m.cancellation && m.unipotent);
        let rep = validate_row(m);
        assert!(rep.passed());
        assert!(rep.spin_norm_sq.iter().all(|s| s == "380"));
    }

    #[test]
    fn row_with_a_single_first_coordinate_lkt() {
        let r = rows();
        let row = r.iter().find(|x| x.x == 60705).unwrap();
        assert_eq!(row.table_id, "7");
        assert!(row.spin_lkts.contains(&k([6, 0, 0, 0, 0, 0, 0, 0])));
        let l = InfChar::from_ints([1, 0, 0, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(row.inf_char, l);
        assert_eq!(dirac_gap(&k([6, 0, 0, 0, 0, 0, 0, 0]), &l), q(0));
    }

    #[test]
    fn pairing_examples() {
        let base = k([0, 0, 0, 0, 0, 0, 0, 8]);
        let p = pairing_evidence(&base.plus_beta(1), &base.plus_beta(10));
        assert!(p.contains(&Weight::from_ints([0, 0, 0, 0, 0, 0, 0, 18], Basis::Omega)));
        for n in 1..=5 {
            assert!(!pairing_evidence(&base.plus_beta(n), &base.plus_beta(11 - n)).is_empty());
        }
        let p = pairing_evidence(&k([1, 0, 3, 0, 0, 0, 1, 11]), &k([0, 0, 4, 0, 0, 0, 0, 10]));
        assert!(p.contains(&Weight::zero(Basis::Omega)));
        let p = pairing_evidence(&k([1, 3, 0, 0, 0, 0, 4, 5]), &k([0, 3, 1, 0, 0, 0, 3, 4]));
        assert!(p.contains(&Weight::zero(Basis::Omega)));
    }

    fn euclid(v: [&str; 8]) -> Weight {
        Weight::new(parse_vec8(&v.join(",")).unwrap(), Basis::Euclidean)
    }

    #[test]
    fn paired_lkts_share_gammas_in_euclidean_coordinates() {
        let cases: [([i64; 8], [i64; 8], Vec<[&str; 8]>); 4] = [
            ([5, 1, 0, 0, 0, 0, 0, 5], [0, 6, 0, 0, 0, 0, 0, 10], vec![["0", "0", "0", "0", "0", "0", "5", "5"]]),
            ([3, 3, 0, 0, 0, 0, 2, 5], [2, 2, 2, 0, 0, 0, 0, 10], vec![["0", "0", "0", "0", "0", "2", "-1", "1"]]),
            (
                [4, 1, 1, 0, 0, 0, 0, 7],
                [1, 5, 0, 0, 0, 0, 1, 8],
                vec![["0", "0", "0", "0", "0", "1", "3", "4"], ["0", "0", "0", "0", "0", "0", "2", "4"]],
            ),
            (
                [3, 1, 2, 0, 0, 0, 0, 9],
                [2, 4, 0, 0, 0, 0, 2, 6],
                vec![["1/2", "1/2", "1/2", "1/2", "1/2", "1/2", "1/2", "5/2"], ["0", "0", "0", "0", "1", "1", "0", "2"]],
            ),
        ];
        let shared = |a: [i64; 8], b: [i64; 8]| pairing_evidence(&k(a), &k(b));
        for (a, b, printed) in &cases {
            let got: BTreeSet<Vec8> = shared(*a, *b).iter().map(|g| *g.to(Basis::Euclidean).coords()).collect();
            let want: BTreeSet<Vec8> = printed.iter().map(|v| *euclid(*v).coords()).collect();
            assert_eq!(got, want, "{a:?} {b:?}");
        }
        let as_omega = Weight::from_ints([0, 0, 0, 0, 0, 0, 5, 5], Basis::Omega);
        assert!(!shared(cases[0].0, cases[0].1).contains(&as_omega));
        assert!(shared(cases[0].0, cases[0].1).contains(&Weight::from_ints([0, 0, 0, 0, 0, 0, 0, 10], Basis::Omega)));
    }

    #[test]
    fn regular_caption_is_reported_apart() {
        let phi1 = crate::hjsearch::load_phi1().unwrap();
        let rep = validate_tables(&rows(), &phi1);
        assert_eq!(rep.summary.regular_captions, vec![InfChar::from_ints([1; 8]).unwrap()]);
        assert!(rep.summary.captions_outside_phi1.is_empty());
        assert_eq!(rep.summary.captions, 25);
        assert!(rep.ok());
    }

    #[test]
    fn rejects_bad_files() {
        let e = parse_tables("[{\"table_id\":\"1\"}]", "t.json").unwrap_err().to_string();
        assert!(e.starts_with("t.json row 0"), "{e}");
        let row = r#"{"table_id":"1","inf_char":[1,1,1,1,1,1,1,1],"x":5,"lambda":["1","1","1","1","1","1","1","1"],"nu":["0","0","0","0","0","0","0","0"],"spin_lkts":[[0,0,0,0,0,0,0,0]],"bold":[true],"unipotent":false,"cancellation":false}"#;
        assert_eq!(parse_tables(&format!("[{row}]"), "t").unwrap().len(), 1);
        let e = parse_tables(&format!("[{row},{row}]"), "t").unwrap_err().to_string();
        assert!(e.contains("row 1") && e.contains("duplicate"), "{e}");
        let bad = row.replace("[[0,0,0,0,0,0,0,0]]", "[]");
        assert!(parse_tables(&format!("[{bad}]"), "t").is_err());
    }
}
