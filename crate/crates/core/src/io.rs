//! File formats: channel-pair and state inputs, analysis reports, and curve sweeps.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::minimax::{CaseLabel, CaseTag, DiscriminationReport, InputConstruction};
use crate::oracle::{check_density, matrix_pairs, HermitianMatrix, MinimaxStates, C64};
use crate::pauli::{ChannelPair, PauliChannel, PAULI_LABELS};
use crate::pwa::{MaxPoint, PwaFunction};
use crate::risk::{bayes_risk_eigenstate, bayes_risk_entangled, bayes_risk_no_ancilla, Axis};

/// A probability entry may be written as a JSON string ("3/7", "0.45") or a plain number.
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Number(serde_json::Number),
}

impl Entry {
    fn text(&self) -> String {
        match self {
            Entry::Text(s) => s.clone(),
            Entry::Number(n) => n.to_string(),
        }
    }
}

#[derive(Deserialize)]
struct ChannelSpec {
    q: Vec<Entry>,
}

#[derive(Deserialize)]
struct RawPairFile {
    label: Option<String>,
    channel1: ChannelSpec,
    channel2: ChannelSpec,
}

/// A parsed and validated channel-pair file.
#[derive(Clone, Debug, PartialEq)]
pub struct PairFile {
    pub label: Option<String>,
    pub pair: ChannelPair,
}

fn format_error(origin: &str, err: &serde_json::Error) -> Error {
    Error::Format { origin: origin.to_string(), line: err.line(), column: err.column(), message: err.to_string() }
}

/// Line and column (1-based) of the first occurrence of `needle` at or after `from`.
fn locate(text: &str, from: usize, needle: &str) -> (usize, usize) {
    let at = text[from..].find(needle).map_or(from, |i| from + i);
    let line = text[..at].matches('\n').count() + 1;
    let column = at - text[..at].rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn parse_channel(text: &str, origin: &str, name: &str, spec: &ChannelSpec) -> Result<PauliChannel> {
    let section = text.find(&format!("\"{name}\"")).unwrap_or(0);
    if spec.q.len() != 4 {
        let (line, column) = locate(text, section, "\"q\"");
        return Err(Error::Format {
            origin: origin.to_string(),
            line,
            column,
            message: format!("{name}: expected 4 entries in q, found {}", spec.q.len()),
        });
    }
    let mut q = [Rational::ZERO; 4];
    for (slot, entry) in q.iter_mut().zip(&spec.q) {
        let raw = entry.text();
        *slot = raw.parse().map_err(|e: Error| {
            let (line, column) = locate(text, section, &raw);
            Error::Format { origin: origin.to_string(), line, column, message: format!("{name}: {e}") }
        })?;
    }
    PauliChannel::new_named(q, name)
}

/// Parse pair-file JSON; `origin` names the source in diagnostics.
pub fn parse_pair_file(text: &str, origin: &str) -> Result<PairFile> {
    let raw: RawPairFile = serde_json::from_str(text).map_err(|e| format_error(origin, &e))?;
    let ch1 = parse_channel(text, origin, "channel1", &raw.channel1)?;
    let ch2 = parse_channel(text, origin, "channel2", &raw.channel2)?;
    Ok(PairFile { label: raw.label, pair: ChannelPair::new(ch1, ch2)? })
}

pub fn read_pair_file(path: &Path) -> Result<PairFile> {
    let text = read_text(path)?;
    parse_pair_file(&text, &path.display().to_string())
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format {
        origin: path.display().to_string(),
        line: 0,
        column: 0,
        message: e.to_string(),
    })
}

/// Pair-file JSON for a pair.
pub fn pair_file_json(label: Option<&str>, pair: &ChannelPair) -> Value {
    let mut v = json!({
        "channel1": channel_json(pair.channel1()),
        "channel2": channel_json(pair.channel2()),
    });
    if let Some(label) = label {
        v["label"] = json!(label);
    }
    v
}

fn channel_json(ch: &PauliChannel) -> Value {
    json!({ "q": ch.q().iter().map(|r| r.to_string()).collect::<Vec<_>>() })
}

fn exact(r: Rational) -> Value {
    json!(r.to_string())
}

fn max_point_json(m: &MaxPoint) -> Value {
    json!({
        "R_M": exact(m.value),
        "R_M_float": m.value.to_f64(),
        "p_star": exact(m.p_star),
        "p_star_float": m.p_star.to_f64(),
        "plateau": m.plateau.map(|(lo, hi)| json!([lo.to_string(), hi.to_string()])),
    })
}

fn curve_json(f: &PwaFunction) -> Value {
    Value::Array(
        f.knots()
            .iter()
            .map(|k| json!({ "p": exact(k.p), "value": exact(k.value), "value_float": k.value.to_f64() }))
            .collect(),
    )
}

/// The five risk curves in sweep-column order.
pub struct Curves {
    pub entangled: PwaFunction,
    pub eigenstate: [PwaFunction; 3],
    pub no_ancilla: PwaFunction,
}

impl Curves {
    pub fn of(pair: &ChannelPair) -> Result<Self> {
        Ok(Curves {
            entangled: bayes_risk_entangled(pair)?,
            eigenstate: [
                bayes_risk_eigenstate(pair, Axis::X)?,
                bayes_risk_eigenstate(pair, Axis::Y)?,
                bayes_risk_eigenstate(pair, Axis::Z)?,
            ],
            no_ancilla: bayes_risk_no_ancilla(pair)?,
        })
    }

    fn all(&self) -> [&PwaFunction; 5] {
        [&self.entangled, &self.eigenstate[0], &self.eigenstate[1], &self.eigenstate[2], &self.no_ancilla]
    }
}

/// Machine-readable report: exact rationals as strings, floats alongside.
pub fn report_json(label: Option<&str>, report: &DiscriminationReport) -> Result<Value> {
    let pair = &report.pair;
    let curves = Curves::of(pair)?;
    let breakpoints: Vec<Value> = pair
        .entries()
        .iter()
        .map(|e| {
            json!({
                "index": e.original_index,
                "pauli": PAULI_LABELS[e.original_index],
                "t": exact(e.t_alpha),
                "t_float": e.t_alpha.to_f64(),
                "p": e.p_alpha.map(exact),
                "p_float": e.p_alpha.map(Rational::to_f64),
            })
        })
        .collect();
    let inputs = &report.optimal_inputs_no_ancilla;
    let mut v = pair_file_json(label, pair);
    let obj = v.as_object_mut().expect("object");
    obj.insert("breakpoints".into(), Value::Array(breakpoints));
    let mut entangled = max_point_json(&report.entangled);
    entangled["optimal_input"] = json!(report.optimal_input_entangled);
    obj.insert("entangled".into(), entangled);
    let mut no_ancilla = max_point_json(&report.no_ancilla);
    no_ancilla["optimal_inputs"] = json!({
        "p_star_prime": exact(inputs.p_star_prime),
        "construction": serde_json::to_value(&inputs.construction).map_err(internal)?,
        "unique": inputs.is_unique(),
        "states": serde_json::to_value(&inputs.states).map_err(internal)?,
    });
    obj.insert("no_ancilla".into(), no_ancilla);
    obj.insert(
        "case".into(),
        json!({
            "tag": report.case.tag.name(),
            "label": report.case.to_string(),
            "mirrored": report.case.mirrored,
            "condition_holds": report.case.condition_holds,
            "entanglement_required": report.case.entanglement_required(),
        }),
    );
    obj.insert("entanglement_strictly_helps".into(), json!(report.entanglement_strictly_helps));
    obj.insert(
        "curves".into(),
        json!({
            "R_B": curve_json(&curves.entangled),
            "RpB_x": curve_json(&curves.eigenstate[0]),
            "RpB_y": curve_json(&curves.eigenstate[1]),
            "RpB_z": curve_json(&curves.eigenstate[2]),
            "RpB": curve_json(&curves.no_ancilla),
        }),
    );
    Ok(v)
}

fn internal(e: serde_json::Error) -> Error {
    Error::InternalInconsistency(e.to_string())
}

fn case_narrative(case: &CaseLabel) -> String {
    let side = if case.mirrored { " (found on the swapped pair, prior 1 − p)" } else { "" };
    let body = match case.tag {
        CaseTag::Identical => "The channels are identical; every input gives risk 1/2 at p = 1/2.".to_string(),
        CaseTag::DegenerateSlope => {
            "Some Pauli weight vanishes in both channels, so the entangled and no-ancilla curves coincide.".to_string()
        }
        CaseTag::P0StrictlyFirst => {
            "The worst prior is the smallest breakpoint and no other breakpoint equals it; entanglement is needed."
                .to_string()
        }
        CaseTag::DoubleLeft => {
            "The worst prior is where the two smallest breakpoints coincide; no entanglement is needed.".to_string()
        }
        CaseTag::TripleLeft => format!(
            "The three smallest breakpoints coincide at the worst prior; test t3 + 2·min(t0,t1,t2) ≤ t0+t1+t2 {}.",
            verdict(case.condition_holds)
        ),
        CaseTag::MiddleEqualSlopes => format!(
            "The maximum lies on a flat stretch starting at the second breakpoint; test t0 + t1 = t2 + t3 {}.",
            verdict(case.condition_holds)
        ),
        CaseTag::MiddleDouble => format!(
            "The second and third breakpoints coincide at the worst prior; test |t0 − t3| ≤ |t1 − t2| {}.",
            verdict(case.condition_holds)
        ),
    };
    format!("{body}{side}")
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn fmt_vec(n: &[f64; 3]) -> String {
    // Adding 0.0 turns −0 into +0.
    format!("({:+.12}, {:+.12}, {:+.12})", n[0] + 0.0, n[1] + 0.0, n[2] + 0.0)
}

/// Human-readable report.
pub fn report_text(label: Option<&str>, report: &DiscriminationReport) -> String {
    let pair = &report.pair;
    let mut out = String::new();
    if let Some(label) = label {
        let _ = writeln!(out, "{label}");
    }
    let q = |ch: &PauliChannel| ch.q().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
    let _ = writeln!(out, "channel1 q = ({})", q(pair.channel1()));
    let _ = writeln!(out, "channel2 q = ({})", q(pair.channel2()));
    let _ = writeln!(out, "sorted breakpoints:");
    for e in pair.entries() {
        let p = e.p_alpha.map_or("none (t = 0)".to_string(), |p| format!("{p} ≈ {:.6}", p.to_f64()));
        let _ = writeln!(out, "  {}: t = {}, p = {}", PAULI_LABELS[e.original_index], e.t_alpha, p);
    }
    let plateau = |m: &MaxPoint| m.plateau.map_or(String::new(), |(lo, hi)| format!(", maximal on [{lo}, {hi}]"));
    let e = &report.entangled;
    let _ =
        writeln!(out, "entangled:  R_M  = {} ≈ {:.12} at p* = {}{}", e.value, e.value.to_f64(), e.p_star, plateau(e));
    let n = &report.no_ancilla;
    let _ =
        writeln!(out, "no ancilla: R'_M = {} ≈ {:.12} at p'* = {}{}", n.value, n.value.to_f64(), n.p_star, plateau(n));
    let _ = writeln!(out, "case: {}", report.case);
    let _ = writeln!(out, "  {}", case_narrative(&report.case));
    let _ = writeln!(
        out,
        "entanglement {} the minimax risk",
        if report.entanglement_strictly_helps { "strictly lowers" } else { "does not lower" }
    );
    let inputs = &report.optimal_inputs_no_ancilla;
    let how = match &inputs.construction {
        InputConstruction::Eigenstate { axis } => format!("eigenstates of σ_{axis}"),
        InputConstruction::Crossing { axes, tan_squared } => {
            format!("crossing of the σ_{} and σ_{} curves, tan² = {}", axes[0], axes[1], tan_squared)
        }
        InputConstruction::MultiCrossing { crossings } => {
            format!("{} curve pairs meet; candidates below are verified but may not be all", crossings.len())
        }
    };
    let _ = writeln!(out, "optimal single-qubit inputs ({how}):");
    for s in &inputs.states {
        let _ = writeln!(out, "  n = {}", fmt_vec(&s.n));
    }
    let _ = writeln!(out, "optimal entangled input: {}", report.optimal_input_entangled);
    out
}

/// Render with 12 significant digits as a plain decimal, trailing zeros trimmed.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = 1 + exp;
    let mut body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{int}.{frac}")
    };
    if body.contains('.') {
        body = body.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

pub const SWEEP_HEADER: &str = "p,R_B,RpB_x,RpB_y,RpB_z,RpB";

/// One sweep row with exact values.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub p: Rational,
    /// R_B, R'_B for σx, σy, σz, and their minimum R'_B.
    pub values: [Rational; 5],
}

/// Uniform grid i/(points−1) merged with every breakpoint and curve knot.
pub fn sweep_rows(pair: &ChannelPair, points: usize) -> Result<Vec<SweepRow>> {
    if points < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 points, got {points}")));
    }
    let steps = i64::try_from(points - 1).map_err(|_| Error::Overflow)?;
    let curves = Curves::of(pair)?;
    let mut grid = (0..=steps).map(|i| Rational::new(i, steps)).collect::<Result<Vec<_>>>()?;
    grid.extend(pair.breakpoints().map(|(_, p)| p));
    for f in curves.all() {
        grid.extend(f.knots().iter().map(|k| k.p));
    }
    grid.sort();
    grid.dedup();
    grid.into_iter()
        .map(|p| {
            let mut values = [Rational::ZERO; 5];
            for (slot, f) in values.iter_mut().zip(curves.all()) {
                *slot = f.eval(p)?;
            }
            Ok(SweepRow { p, values })
        })
        .collect()
}

pub fn sweep_csv(pair: &ChannelPair, points: usize) -> Result<String> {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for row in sweep_rows(pair, points)? {
        out.push_str(&format_sig12(row.p.to_f64()));
        for v in row.values {
            out.push(',');
            out.push_str(&format_sig12(v.to_f64()));
        }
        out.push('\n');
    }
    Ok(out)
}

#[derive(Deserialize)]
struct RawStateFile {
    rho1: Vec<Vec<[f64; 2]>>,
    rho2: Vec<Vec<[f64; 2]>>,
}

/// Two density matrices given as rows of `[re, im]` pairs.
#[derive(Clone, Debug)]
pub struct StateFile {
    pub rho1: HermitianMatrix,
    pub rho2: HermitianMatrix,
}

fn density(origin: &str, name: &str, rows: &[Vec<[f64; 2]>]) -> Result<HermitianMatrix> {
    let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect()).collect();
    let wrap = |e: Error| match e {
        Error::NotDensityMatrix(m) => Error::NotDensityMatrix(format!("{origin}: {name}: {m}")),
        other => Error::NotDensityMatrix(format!("{origin}: {name}: {other}")),
    };
    let m = HermitianMatrix::from_rows(&rows).map_err(wrap)?;
    check_density(&m).map_err(wrap)?;
    Ok(m)
}

pub fn parse_state_file(text: &str, origin: &str) -> Result<StateFile> {
    let raw: RawStateFile = serde_json::from_str(text).map_err(|e| format_error(origin, &e))?;
    let rho1 = density(origin, "rho1", &raw.rho1)?;
    let rho2 = density(origin, "rho2", &raw.rho2)?;
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch(format!("rho1 is {0}×{0}, rho2 is {1}×{1}", rho1.dim(), rho2.dim())));
    }
    Ok(StateFile { rho1, rho2 })
}

pub fn read_state_file(path: &Path) -> Result<StateFile> {
    let text = read_text(path)?;
    parse_state_file(&text, &path.display().to_string())
}

pub fn states_json(m: &MinimaxStates) -> Value {
    serde_json::to_value(m).expect("plain data serializes")
}

pub fn states_text(m: &MinimaxStates) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "R_M = {:.12}", m.risk);
    let _ = writeln!(out, "p_star = {:.12}", m.p_star);
    for (name, b) in [("B1", &m.povm.b1), ("B2", &m.povm.b2)] {
        let _ = writeln!(out, "{name} =");
        for row in matrix_pairs(b) {
            let cells: Vec<String> = row.iter().map(|[re, im]| format!("{re:+.9}{im:+.9}i")).collect();
            let _ = writeln!(out, "  [{}]", cells.join(", "));
        }
    }
    let _ = writeln!(out, "equalizer residual |Tr[rho1 B2] - Tr[rho2 B1]| = {:.3e}", m.equalizer_residual);
    out
}

/// Write via a sibling temporary file and rename, so readers never see partial output.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| std::io::Error::other("output path has no file name"))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimax::full_report;

    const WORKED: &str = r#"{
  "label": "worked",
  "channel1": {"q": ["0.3", "0.4", "0.2", "0.1"]},
  "channel2": {"q": ["0.1", "0.3", "0.15", "0.45"]}
}"#;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn parses_pair_file() {
        let f = parse_pair_file(WORKED, "worked.json").unwrap();
        assert_eq!(f.label.as_deref(), Some("worked"));
        assert_eq!(f.pair.channel2().q()[2], r(3, 20));
    }

    #[test]
    fn numbers_are_accepted() {
        let text = r#"{"channel1": {"q": [1, 0, 0, 0]}, "channel2": {"q": [0.5, 0.5, "0", "0"]}}"#;
        let f = parse_pair_file(text, "n").unwrap();
        assert_eq!(f.pair.channel2().q()[1], r(1, 2));
    }

    #[test]
    fn bad_sum_names_channel() {
        let text = WORKED.replace("0.45", "0.5");
        let err = parse_pair_file(&text, "bad").unwrap_err();
        assert!(matches!(&err, Error::InvalidDistribution { channel, .. } if channel == "channel2"), "{err}");
    }

    #[test]
    fn syntax_error_reports_line() {
        let text = WORKED.replace("\"0.2\",", "\"0.2\"");
        match parse_pair_file(&text, "broken").unwrap_err() {
            Error::Format { line, .. } => assert_eq!(line, 3),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unparsable_entry_reports_its_line() {
        let text = WORKED.replace("\"0.15\"", "\"0.1x\"");
        match parse_pair_file(&text, "broken").unwrap_err() {
            Error::Format { line, message, .. } => {
                assert_eq!(line, 4);
                assert!(message.contains("channel2"));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn wrong_length_is_rejected() {
        let text = WORKED.replace("\"0.3\", \"0.4\",", "\"0.7\",");
        assert!(matches!(parse_pair_file(&text, "short"), Err(Error::Format { .. })));
    }

    #[test]
    fn report_round_trips() {
        let f = parse_pair_file(WORKED, "worked").unwrap();
        let report = full_report(&f.pair).unwrap();
        let v = report_json(f.label.as_deref(), &report).unwrap();
        assert_eq!(v["entangled"]["R_M"], "5/14");
        assert_eq!(v["case"]["tag"], "T5_middle_double");
        assert_eq!(v["no_ancilla"]["optimal_inputs"]["states"].as_array().unwrap().len(), 4);
        let again = parse_pair_file(&serde_json::to_string_pretty(&v).unwrap(), "again").unwrap();
        assert_eq!(again.pair, f.pair);
        let v2 = report_json(again.label.as_deref(), &full_report(&again.pair).unwrap()).unwrap();
        assert_eq!(v, v2);
    }

    #[test]
    fn text_report_mentions_case() {
        let f = parse_pair_file(WORKED, "worked").unwrap();
        let text = report_text(None, &full_report(&f.pair).unwrap());
        assert!(text.contains("T5_middle_double"));
        assert!(text.contains("5/14"));
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(3.0 / 7.0), "0.428571428571");
        assert_eq!(format_sig12(5.0 / 14.0), "0.357142857143");
        assert_eq!(format_sig12(0.5), "0.5");
        assert_eq!(format_sig12(1.0), "1");
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(-0.0125), "-0.0125");
        assert_eq!(format_sig12(2.0 / 11.0), "0.181818181818");
        assert_eq!(format_sig12(1e-3 / 3.0), "0.000333333333333");
    }

    #[test]
    fn sweep_endpoints_and_breakpoints() {
        let f = parse_pair_file(WORKED, "worked").unwrap();
        let rows = sweep_rows(&f.pair, 2).unwrap();
        let ps: Vec<Rational> = rows.iter().map(|row| row.p).collect();
        for bp in [r(0, 1), r(1, 4), r(3, 7), r(9, 11), r(1, 1)] {
            assert!(ps.contains(&bp), "{bp}");
        }
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(sweep_rows(&f.pair, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sweep_csv_worked_row() {
        let f = parse_pair_file(WORKED, "worked").unwrap();
        let csv = sweep_csv(&f.pair, 201).unwrap();
        assert!(csv.starts_with("p,R_B,RpB_x,RpB_y,RpB_z,RpB\n"));
        assert!(!csv.contains('\r'));
        let row = csv.lines().find(|l| l.starts_with("0.428571428571,")).unwrap();
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[1], "0.357142857143");
        assert_eq!(cols[5], "0.357142857143");
    }

    #[test]
    fn state_file_validation() {
        let good = r#"{"rho1": [[[1,0],[0,0]],[[0,0],[0,0]]], "rho2": [[[0.5,0],[0.5,0]],[[0.5,0],[0.5,0]]]}"#;
        assert!(parse_state_file(good, "s").is_ok());
        let bad_trace = r#"{"rho1": [[[1,0],[0,0]],[[0,0],[1,0]]], "rho2": [[[1,0],[0,0]],[[0,0],[0,0]]]}"#;
        assert!(matches!(parse_state_file(bad_trace, "s"), Err(Error::NotDensityMatrix(m)) if m.contains("rho1")));
        let negative = r#"{"rho1": [[[1,0],[0,0]],[[0,0],[0,0]]], "rho2": [[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]}"#;
        assert!(matches!(parse_state_file(negative, "s"), Err(Error::NotDensityMatrix(m)) if m.contains("rho2")));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        write_atomic(&path, "one").unwrap();
        write_atomic(&path, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
