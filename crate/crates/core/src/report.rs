//! Rendering of profiles and survey results as text, CSV and Markdown.
//! Everything here reads finished results; nothing is recomputed.

use crate::analysis::VineProfile;
use crate::obstruction::{CyclotomicVerdict, EliminatedBy};
use crate::survey::{Check, SurveyResult, VineResult};
use crate::Error;
use std::fmt::Write as _;

/// Column order of the vine table.
pub const TABLE_A_COLUMNS: [&str; 8] = ["row", "graph", "s", "K", "R", "N", "primes", "exceptions"];

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn exceptions_cell(v: &VineResult) -> String {
    let e = v.cyclotomic_exceptions();
    if e.is_empty() {
        "none".into()
    } else {
        join(&e, " ")
    }
}

fn table_a_record(v: &VineResult) -> Vec<String> {
    match &v.profile {
        Some(p) => vec![
            v.label.clone(),
            v.graph.clone(),
            p.s.to_string(),
            p.k.to_string(),
            p.r_bound.to_string(),
            p.n_bound.to_string(),
            join(&v.failing_primes(), " "),
            exceptions_cell(v),
        ],
        None => {
            let mut r = vec![v.label.clone(), v.graph.clone()];
            r.extend(std::iter::repeat(String::new()).take(5));
            r.push(format!("rejected: {}", v.error.as_deref().unwrap_or("")));
            r
        }
    }
}

pub fn table_a_csv(r: &SurveyResult) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    w.write_record(TABLE_A_COLUMNS).map_err(csv_err)?;
    for v in &r.vines {
        w.write_record(table_a_record(v)).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn md_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for r in rows {
        let cells: Vec<String> = r.into_iter().map(|c| c.replace('|', "\\|")).collect();
        let _ = writeln!(s, "| {} |", cells.join(" | "));
    }
    s
}

pub fn table_a_markdown(r: &SurveyResult) -> String {
    md_table(&TABLE_A_COLUMNS, r.vines.iter().map(table_a_record))
}

/// Translates eliminated by the d-number test, with the minimal polynomial
/// of the global even dimension.
pub fn table_b_markdown(r: &SurveyResult) -> String {
    let rows = r.vines.iter().flat_map(|v| {
        v.eliminated_by(EliminatedBy::DNumber).map(move |rep| {
            let d = rep.d_number.as_ref().expect("d-number report present");
            vec![v.label.clone(), v.graph.clone(), rep.j.to_string(), d.min_poly.to_string(), format!("{:?}", d.verdict)]
        })
    });
    md_table(&["row", "graph", "j", "global even dimension", "verdict"], rows)
}

/// Derivative-bound certificates of the non-Salem vines.
pub fn table_c_markdown(r: &SurveyResult) -> String {
    let rows = r.vines.iter().filter_map(|v| {
        let p = v.profile.as_ref()?;
        if p.salem {
            return None;
        }
        let c = &p.d_certificate;
        Some(vec![
            v.label.clone(),
            v.graph.clone(),
            c.n.to_string(),
            if c.holds { "positive" } else { "not certified" }.to_string(),
            format!("{:.6}", c.min_sampled),
            c.evaluations.to_string(),
            p.d_min.to_string(),
        ])
    });
    md_table(&["row", "graph", "n", "certificate", "min sampled", "evaluations", "smallest certified n"], rows)
}

/// Translates eliminated for a non-integral vertex dimension.
pub fn non_integral_markdown(r: &SurveyResult) -> String {
    let rows = r.vines.iter().flat_map(|v| {
        v.eliminated_by(EliminatedBy::AlgebraicInteger).map(move |rep| {
            let a = rep.algebraic_integer.as_ref().expect("algebraic-integer report present");
            vec![v.label.clone(), rep.j.to_string(), a.vertex.to_string(), a.depth.to_string(), a.min_poly.to_string()]
        })
    });
    md_table(&["row", "j", "vertex", "depth", "minimal polynomial"], rows)
}

pub fn survivors_markdown(r: &SurveyResult) -> String {
    let rows = r.survivors.iter().map(|s| {
        vec![
            s.label.clone(),
            s.graph.clone(),
            s.j.to_string(),
            s.norm_squared.get(..32).unwrap_or(&s.norm_squared).to_string(),
            if s.in_window { "yes" } else { "no" }.to_string(),
        ]
    });
    md_table(&["row", "graph", "j", "norm²", "4 < norm² < 5"], rows)
}

pub fn checks_markdown(checks: &[Check]) -> String {
    let rows = checks.iter().map(|c| {
        vec![
            if c.passed { "PASS" } else { "FAIL" }.to_string(),
            c.name.clone(),
            if c.table { "table" } else { "report" }.to_string(),
            c.detail.clone(),
        ]
    });
    md_table(&["status", "check", "kind", "detail"], rows)
}

/// All tables of a survey in one document.
pub fn survey_markdown(r: &SurveyResult, checks: &[Check]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Vine survey\n");
    let _ = writeln!(
        s,
        "Prime bound {}, {} translates pass the cyclotomic test, {} survive every test.\n",
        r.prime_bound,
        r.cyclotomic_survivors,
        r.survivors.len()
    );
    for (title, body) in [
        ("Vines and effective constants", table_a_markdown(r)),
        ("d-number eliminations", table_b_markdown(r)),
        ("Non-integral dimensions", non_integral_markdown(r)),
        ("Derivative-bound certificates", table_c_markdown(r)),
        ("Survivors", survivors_markdown(r)),
    ] {
        let _ = writeln!(s, "## {title}\n\n{body}");
    }
    if !checks.is_empty() {
        let _ = writeln!(s, "## Cross-checks\n\n{}", checks_markdown(checks));
    }
    s
}

fn profile_fields(p: &VineProfile) -> Vec<(&'static str, String)> {
    vec![
        ("graph", p.graph.clone()),
        ("A", p.a.to_string_var("t")),
        ("s", p.s.to_string()),
        ("K", p.k.to_string()),
        ("B", p.b.to_string_var("t")),
        ("C", p.c.to_string_var("t")),
        ("L", p.l.to_string()),
        ("S", join(&p.s_set(), " ")),
        ("ell", p.ell.to_string()),
        ("r1", p.r1.to_string()),
        ("r2", p.r2.to_string()),
        ("r3", p.r3.to_string()),
        ("r4", p.r4.to_string()),
        ("R", p.r_bound.to_string()),
        ("N", p.n_bound.to_string()),
        ("salem", p.salem.to_string()),
        ("d", p.d_bound.to_string()),
        ("d_min", p.d_min.to_string()),
        ("r3_guard", p.r3_guard.to_string()),
    ]
}

/// `name: value` lines, with extra trailing fields.
pub fn profile_text(p: &VineProfile, extra: &[(&str, String)]) -> String {
    let mut s = String::new();
    for (k, v) in profile_fields(p).iter().map(|(k, v)| (*k, v)).chain(extra.iter().map(|(k, v)| (*k, v))) {
        let _ = writeln!(s, "{k:>12}: {v}");
    }
    s
}

pub fn profile_markdown(p: &VineProfile, extra: &[(&str, String)]) -> String {
    let rows = profile_fields(p)
        .into_iter()
        .map(|(k, v)| vec![k.to_string(), format!("`{v}`")])
        .chain(extra.iter().map(|(k, v)| vec![k.to_string(), format!("`{v}`")]));
    md_table(&["field", "value"], rows)
}

pub fn profile_csv(p: &VineProfile, extra: &[(&str, String)]) -> Result<String, Error> {
    let fields = profile_fields(p);
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    w.write_record(fields.iter().map(|(k, _)| *k).chain(extra.iter().map(|(k, _)| *k))).map_err(csv_err)?;
    w.write_record(fields.iter().map(|(_, v)| v.as_str()).chain(extra.iter().map(|(_, v)| v.as_str())))
        .map_err(csv_err)?;
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// One-line description of a cyclotomic verdict.
pub fn cyclotomic_cell(v: &CyclotomicVerdict) -> String {
    match v {
        CyclotomicVerdict::Pass { bound } => format!("passed with bound {bound}"),
        CyclotomicVerdict::Fail { prime } => format!("fails mod {prime}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::survey::{parse_vine_list, run_survey, SurveyConfig};

    #[test]
    fn csv_mirrors_table_columns() {
        let r = run_survey(&parse_vine_list("1\tgbg1v1v1p1p1\n9\tgbg1v1"), &SurveyConfig::default()).unwrap();
        let csv = table_a_csv(&r).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("row,graph,s,K,R,N,primes,exceptions"));
        let first = lines.next().unwrap();
        assert!(first.starts_with("1,gbg1v1v1p1p1,6,10,4,76,"), "{first}");
        assert!(first.ends_with(",0 1"), "{first}");
        assert!(lines.next().unwrap().contains("rejected"));
        let md = survey_markdown(&r, &[]);
        assert!(md.contains("x^2 - 32x + 56"));
        assert!(md.contains("3x^4 - 8x^2 + 1"));
    }

    #[test]
    fn profile_renderings_agree() {
        let p = crate::analysis::profile(&crate::Bigraph::parse("gbg1v1v1p1p1").unwrap()).unwrap();
        let text = profile_text(&p, &[]);
        assert!(text.contains("           N: 76"));
        let csv = profile_csv(&p, &[("norm_squared", "4.3".into())]).unwrap();
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().next().unwrap().ends_with(",norm_squared"));
        assert!(profile_markdown(&p, &[]).contains("| S | `4 12` |"));
    }
}
