//! Output formatting. Everything written here is deterministic; timing goes
//! to stderr elsewhere.

use num_rational::BigRational;
use num_traits::{One, Signed};
use qumbral::verify::VerifyReport;
use qumbral::{Basis, ExpansionResult, QRat, XPoly};
use serde_json::{json, Value};

use crate::{Format, TableKind};

pub enum TableValue {
    Number(QRat),
    Poly(XPoly),
}

impl TableValue {
    fn json(&self) -> Value {
        match self {
            TableValue::Number(v) => v.to_json(),
            TableValue::Poly(p) => p.to_json(),
        }
    }

    fn human(&self) -> String {
        match self {
            TableValue::Number(v) => v.to_string(),
            TableValue::Poly(p) => p.to_string(),
        }
    }

    fn latex(&self) -> String {
        match self {
            TableValue::Number(v) => v.to_latex(),
            TableValue::Poly(p) => p.to_latex(),
        }
    }
}

fn kind_name(kind: TableKind) -> &'static str {
    match kind {
        TableKind::Number => "number",
        TableKind::Poly => "poly",
        TableKind::HigherNumber => "higher_number",
        TableKind::HigherPoly => "higher_poly",
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON value serializes")
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for row in rows {
        w.write_record(&row).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV is UTF-8")
}

fn label_latex(kind: TableKind, r: Option<usize>, n: usize) -> String {
    let order = r.map(|r| format!("^{{({r})}}")).unwrap_or_default();
    match kind {
        TableKind::Number | TableKind::HigherNumber => format!("B{order}_{{{n},q}}"),
        TableKind::Poly | TableKind::HigherPoly => format!("B{order}_{{{n},q}}(x)"),
    }
}

fn label_human(kind: TableKind, r: Option<usize>, n: usize) -> String {
    let order = r.map(|r| format!("^({r})")).unwrap_or_default();
    match kind {
        TableKind::Number | TableKind::HigherNumber => format!("B{order}[{n}]"),
        TableKind::Poly | TableKind::HigherPoly => format!("B{order}[{n}](x)"),
    }
}

pub fn table(format: Format, kind: TableKind, r: Option<usize>, rows: &[(usize, TableValue)]) -> String {
    match format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(n, v)| json!({ "n": n, "value": v.json() }))
                .collect();
            pretty(&json!({ "kind": kind_name(kind), "r": r, "rows": rows }))
        }
        Format::Csv => {
            let header: &[&str] = if r.is_some() { &["n", "r", "value"] } else { &["n", "value"] };
            csv_rows(
                header,
                rows.iter().map(|(n, v)| {
                    let mut row = vec![n.to_string()];
                    if let Some(r) = r {
                        row.push(r.to_string());
                    }
                    row.push(compact(&v.json()));
                    row
                }),
            )
        }
        Format::Latex => {
            let mut out = String::from("\\begin{align*}\n");
            let last = rows.len().saturating_sub(1);
            for (i, (n, v)) in rows.iter().enumerate() {
                let end = if i == last { "" } else { " \\\\" };
                out.push_str(&format!("{} &= {}{end}\n", label_latex(kind, r, *n), v.latex()));
            }
            out.push_str("\\end{align*}\n");
            out
        }
        Format::Human => rows
            .iter()
            .map(|(n, v)| format!("{} = {}\n", label_human(kind, r, *n), v.human()))
            .collect(),
    }
}

fn basis_element_latex(basis: Basis, k: usize) -> String {
    match basis {
        Basis::Monomial => format!("x^{{{k}}}"),
        Basis::Bernoulli => format!("B_{{{k},q}}(x)"),
        Basis::BernoulliOrder(r) => format!("B^{{({r})}}_{{{k},q}}(x)"),
        Basis::QPochXMinus1 => format!("(x-1)_q^{{{k}}}"),
    }
}

fn basis_element_human(basis: Basis, k: usize) -> String {
    match basis {
        Basis::Monomial => format!("x^{k}"),
        Basis::Bernoulli => format!("B[{k}](x)"),
        Basis::BernoulliOrder(r) => format!("B^({r})[{k}](x)"),
        Basis::QPochXMinus1 => format!("(x-1)_q^{k}"),
    }
}

pub fn expansion(format: Format, input: &XPoly, result: &ExpansionResult, ok: bool) -> String {
    let r = match result.basis {
        Basis::BernoulliOrder(r) => Some(r),
        _ => None,
    };
    match format {
        Format::Json => {
            let mut body = result.to_json();
            let obj = body.as_object_mut().expect("expansion JSON is an object");
            obj.insert("reconstruction_ok".to_string(), json!(ok));
            let mut out = serde_json::Map::new();
            out.insert("input".to_string(), input.to_json());
            out.extend(std::mem::take(obj));
            pretty(&Value::Object(out))
        }
        Format::Csv => csv_rows(
            &["basis", "r", "k", "coeff", "reconstruction_ok"],
            result.coeffs.iter().enumerate().map(|(k, c)| {
                vec![
                    result.basis.tag().to_string(),
                    r.map(|r| r.to_string()).unwrap_or_default(),
                    k.to_string(),
                    compact(&c.to_json()),
                    ok.to_string(),
                ]
            }),
        ),
        Format::Latex => {
            let terms: Vec<String> = result
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| {
                    let e = basis_element_latex(result.basis, k);
                    if c.is_one() {
                        e
                    } else {
                        format!("\\left({}\\right) {e}", c.to_latex())
                    }
                })
                .collect();
            let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            format!(
                "{} = {rhs}\n% reconstruction_ok: {ok}\n",
                input.to_latex()
            )
        }
        Format::Human => {
            let mut out = format!("input: {input}\nbasis: {}", result.basis.tag());
            if let Some(r) = r {
                out.push_str(&format!(" (r = {r})"));
            }
            out.push('\n');
            for (k, c) in result.coeffs.iter().enumerate() {
                out.push_str(&format!("b[{k}] = {c}    # {}\n", basis_element_human(result.basis, k)));
            }
            out.push_str(&format!("reconstruction_ok: {ok}\n"));
            out
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn verify(format: Format, seed: u64, reports: &[VerifyReport]) -> String {
    let overall = reports.iter().all(VerifyReport::pass);
    match format {
        Format::Json => {
            let reports: Vec<Value> = reports.iter().map(VerifyReport::to_json).collect();
            pretty(&json!({ "pass": overall, "seed": seed, "reports": reports }))
        }
        Format::Csv => csv_rows(
            &["suite", "case", "pass"],
            reports.iter().flat_map(|rep| {
                rep.cases.iter().map(move |c| {
                    vec![rep.identity.name().to_string(), c.key.clone(), c.pass.to_string()]
                })
            }),
        ),
        Format::Latex => {
            let mut out = String::from(
                "\\begin{tabular}{llrl}\n\\hline\nsuite & range & cases & result \\\\\n\\hline\n",
            );
            for rep in reports {
                out.push_str(&format!(
                    "\\texttt{{{}}} & ${}$ & {} & {} \\\\\n",
                    rep.identity.name(),
                    rep.ranges.replace("<=", "\\le"),
                    rep.cases.len(),
                    verdict(rep.pass())
                ));
            }
            out.push_str("\\hline\n\\end{tabular}\n");
            out
        }
        Format::Human => {
            let mut out = String::new();
            for rep in reports {
                let passed = rep.cases.iter().filter(|c| c.pass).count();
                out.push_str(&format!(
                    "{} {:<9} {passed}/{} cases  [{}]  {}\n",
                    verdict(rep.pass()),
                    rep.identity.name(),
                    rep.cases.len(),
                    rep.ranges,
                    rep.identity.description()
                ));
                for c in rep.failures() {
                    match &c.detail {
                        Some(d) => out.push_str(&format!("    failed: {} ({d})\n", c.key)),
                        None => out.push_str(&format!("    failed: {}\n", c.key)),
                    }
                }
                for note in &rep.notes {
                    out.push_str(&format!("    note: {note}\n"));
                }
            }
            out.push_str(&format!("overall: {}\n", verdict(overall)));
            out
        }
    }
}

fn rational_latex(v: &BigRational) -> String {
    if v.denom().is_one() {
        return v.numer().to_string();
    }
    let sign = if v.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", v.numer().abs(), v.denom())
}

pub fn eval(
    format: Format,
    quantity: &str,
    q0: &BigRational,
    x0: Option<&BigRational>,
    value: &BigRational,
) -> String {
    match format {
        Format::Json => pretty(&json!({
            "quantity": quantity,
            "q": q0.to_string(),
            "x": x0.map(ToString::to_string),
            "value": value.to_string(),
        })),
        Format::Csv => csv_rows(
            &["quantity", "q", "x", "value"],
            [vec![
                quantity.to_string(),
                q0.to_string(),
                x0.map(ToString::to_string).unwrap_or_default(),
                value.to_string(),
            ]],
        ),
        Format::Latex => format!("{}\n", rational_latex(value)),
        Format::Human => format!("{value}\n"),
    }
}
