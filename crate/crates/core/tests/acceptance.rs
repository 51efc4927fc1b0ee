//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any failure.

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pauli_minimax::io::sweep_csv;
use pauli_minimax::oracle::{apply_channel, bell_output, helstrom_risk, minimax_states, unitary_bayes_risk, C64};
use pauli_minimax::verify::{random_bloch, random_pair, random_perfect_pair};
use pauli_minimax::{
    bayes_risk_bloch, bayes_risk_entangled, bayes_risk_no_ancilla, classify, full_report, minimax_entangled,
    minimax_no_ancilla, Axis, CaseTag, ChannelPair, InputConstruction, Rational,
};

const RANDOM_PAIRS: usize = 1000;
const PRIORS: usize = 20;
const EQUALIZER_PAIRS: usize = 100;
const PERFECT_INSTANCES: usize = 100;
const GRID: i64 = 200;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn worked_pair() -> ChannelPair {
    let q = |v: [&str; 4]| v.map(|s| s.parse::<Rational>().unwrap());
    ChannelPair::from_probabilities(q(["0.3", "0.4", "0.2", "0.1"]), q(["0.1", "0.3", "0.15", "0.45"])).unwrap()
}

fn random_pairs(seed: u64, count: usize) -> Vec<ChannelPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_pair(&mut rng)).collect()
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let pair = worked_pair();
    let ps: Vec<Rational> = pair.breakpoints().map(|(_, p)| p).collect();
    let ts: Vec<Rational> = pair.breakpoints().map(|(t, _)| t).collect();
    ensure(ps == [r(1, 4), r(3, 7), r(3, 7), r(9, 11)], || format!("breakpoints {ps:?}"))?;
    ensure(ts == [r(2, 5), r(7, 10), r(7, 20), r(11, 20)], || format!("slopes {ts:?}"))?;
    let report = full_report(&pair).map_err(|e| e.to_string())?;
    ensure(report.entangled.p_star == r(3, 7), || format!("p* = {}", report.entangled.p_star))?;
    ensure(report.case.tag == CaseTag::MiddleDouble && !report.case.mirrored && report.case.condition_holds, || {
        format!("case {:?}", report.case)
    })?;
    let (lhs, rhs) = ((ts[0].checked_sub(ts[3]).unwrap()).abs(), (ts[1].checked_sub(ts[2]).unwrap()).abs());
    ensure(lhs == r(3, 20) && rhs == r(7, 20), || format!("|t0−t3| = {lhs}, |t1−t2| = {rhs}"))?;
    let inputs = &report.optimal_inputs_no_ancilla;
    ensure(
        inputs.construction == InputConstruction::Crossing { axes: [Axis::X, Axis::Y], tan_squared: r(2, 5) },
        || format!("construction {:?}", inputs.construction),
    )?;
    let (a, b) = ((5.0f64 / 7.0).sqrt(), (2.0f64 / 7.0).sqrt());
    let mut expected = vec![[a, b, 0.0], [a, -b, 0.0], [-a, b, 0.0], [-a, -b, 0.0]];
    ensure(inputs.states.len() == 4, || format!("{} states", inputs.states.len()))?;
    for s in &inputs.states {
        let k = expected
            .iter()
            .position(|e| e.iter().zip(&s.n).all(|(x, y)| (x - y).abs() < 1e-12))
            .ok_or_else(|| format!("unexpected state {:?}", s.n))?;
        expected.swap_remove(k);
    }
    ensure(report.risk_entangled() == r(5, 14) && report.risk_no_ancilla() == r(5, 14), || {
        format!("R_M = {}, R'_M = {}", report.risk_entangled(), report.risk_no_ancilla())
    })?;
    Ok("breakpoints, slopes, p* = 3/7, T5_middle_double (3/20 ≤ 7/20), tan² = 2/5, four states, R_M = R'_M = 5/14"
        .into())
}

fn criterion_2(pairs: &[ChannelPair]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut bell_max, mut qubit_max, mut checks) = (0.0f64, 0.0f64, 0usize);
    for pair in pairs {
        let (b1, b2) = (bell_output(pair.channel1()), bell_output(pair.channel2()));
        let curve = bayes_risk_entangled(pair).map_err(|e| e.to_string())?;
        for _ in 0..PRIORS {
            let p: f64 = rand::Rng::gen(&mut rng);
            let state = random_bloch(&mut rng);
            let bell = helstrom_risk(&b1, &b2, p).map_err(|e| e.to_string())?;
            bell_max = bell_max.max((curve.eval_f64(p) - bell).abs());
            let out1 = apply_channel(pair.channel1(), &state);
            let out2 = apply_channel(pair.channel2(), &state);
            let qubit = helstrom_risk(&out1, &out2, p).map_err(|e| e.to_string())?;
            qubit_max = qubit_max.max((bayes_risk_bloch(pair, p, &state) - qubit).abs());
            checks += 1;
        }
    }
    ensure(bell_max < 1e-12, || format!("entangled closed form vs Bell oracle: {bell_max:e}"))?;
    ensure(qubit_max < 1e-9, || format!("Bloch closed form vs qubit oracle: {qubit_max:e}"))?;
    Ok(format!(
        "{} pairs × {PRIORS} priors ({checks} cases): max |Δ| {bell_max:.1e} (entangled), {qubit_max:.1e} (Bloch)",
        pairs.len()
    ))
}

fn criterion_3(pairs: &[ChannelPair]) -> Outcome {
    let mut disagreements = 0;
    let mut first = None;
    for pair in pairs {
        let label = classify(pair).map_err(|e| e.to_string())?;
        let rm = minimax_entangled(pair).map_err(|e| e.to_string())?.value;
        let rpm = minimax_no_ancilla(pair).map_err(|e| e.to_string())?.value;
        if label.entanglement_required() != (rm < rpm) {
            disagreements += 1;
            first.get_or_insert_with(|| format!("{pair:?}: {label} vs R_M = {rm}, R'_M = {rpm}"));
        }
    }
    ensure(disagreements == 0, || format!("{disagreements} disagreements, first {}", first.unwrap()))?;
    Ok(format!("{} pairs, 0 disagreements", pairs.len()))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..PERFECT_INSTANCES {
        let pair = random_perfect_pair(&mut rng);
        let rm = minimax_entangled(&pair).map_err(|e| e.to_string())?.value;
        let rpm = minimax_no_ancilla(&pair).map_err(|e| e.to_string())?.value;
        ensure(rm.is_zero() && rpm.is_positive(), || format!("{pair:?}: R_M = {rm}, R'_M = {rpm}"))?;
    }
    Ok(format!("{PERFECT_INSTANCES} instances: R_M = 0 and R'_M > 0 exactly"))
}

fn criterion_5(pairs: &[ChannelPair]) -> Outcome {
    let (mut residual, mut risk_dev) = (0.0f64, 0.0f64);
    for pair in pairs.iter().take(EQUALIZER_PAIRS) {
        let (b1, b2) = (bell_output(pair.channel1()), bell_output(pair.channel2()));
        let m = minimax_states(&b1, &b2).map_err(|e| e.to_string())?;
        m.povm.check().map_err(|e| e.to_string())?;
        let exact = minimax_entangled(pair).map_err(|e| e.to_string())?.value.to_f64();
        residual = residual.max(m.equalizer_residual);
        risk_dev = risk_dev.max((m.risk - exact).abs());
    }
    ensure(residual < 1e-7, || format!("equalizer residual {residual:e}"))?;
    ensure(risk_dev < 1e-8, || format!("risk deviation {risk_dev:e}"))?;
    Ok(format!("{EQUALIZER_PAIRS} pairs: max residual {residual:.1e}, max |R − R_M| {risk_dev:.1e}"))
}

fn structural(pair: &ChannelPair) -> Result<(), String> {
    let e = |x: pauli_minimax::Error| x.to_string();
    let rb = bayes_risk_entangled(pair).map_err(e)?;
    let rpb = bayes_risk_no_ancilla(pair).map_err(e)?;
    let ps: Vec<Rational> = pair.breakpoints().map(|(_, p)| p).collect();
    let (first, last) = (ps[0], ps[ps.len() - 1]);
    for i in 0..GRID {
        let p = r(i, GRID - 1);
        let (a, b) = (rb.eval(p).map_err(e)?, rpb.eval(p).map_err(e)?);
        let floor = p.min(p.complement().unwrap());
        ensure(a <= b && b <= floor, || format!("ordering at {p}: {a}, {b}, {floor}"))?;
        if p.is_positive() && p < first {
            ensure(a == p, || format!("R_B({p}) = {a}"))?;
        }
        if p > last && p < Rational::ONE {
            ensure(a == p.complement().unwrap(), || format!("R_B({p}) = {a}"))?;
        }
    }
    ensure(rb.is_concave().map_err(e)? && rpb.is_concave().map_err(e)?, || "concavity".into())?;
    let m = minimax_entangled(pair).map_err(e)?;
    let ms = minimax_entangled(&pair.swapped().map_err(e)?).map_err(e)?;
    let mirrored = Rational::ONE.checked_sub(m.right_end()).unwrap();
    ensure(ms.value == m.value && ms.p_star == mirrored, || format!("swap: {} vs {}", ms.p_star, mirrored))?;
    if m.plateau.is_none() {
        ensure(ms.p_star == m.p_star.complement().unwrap(), || "swap p* → 1 − p*".into())?;
    }
    Ok(())
}

fn criterion_6(pairs: &[ChannelPair]) -> Outcome {
    for pair in pairs {
        structural(pair).map_err(|msg| format!("{pair:?}: {msg}"))?;
    }
    Ok(format!("{} pairs on a {GRID}-point grid: ordering, edge slopes, concavity, swap symmetry", pairs.len()))
}

fn criterion_7() -> Outcome {
    let csv = sweep_csv(&worked_pair(), 201).map_err(|e| e.to_string())?;
    let mut lines = csv.lines();
    ensure(lines.next() == Some("p,R_B,RpB_x,RpB_y,RpB_z,RpB"), || "header".into())?;
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    for row in &rows {
        let lowest = row[2].min(row[3]).min(row[4]);
        ensure((row[5] - lowest).abs() < 1e-12 && row[5] >= row[1] - 1e-12, || format!("row {row:?}"))?;
    }
    let row = csv.lines().find(|l| l.starts_with("0.428571428571,")).ok_or("no row at p = 0.428571428571")?;
    let cols: Vec<&str> = row.split(',').collect();
    ensure(cols[2] == cols[3] && cols[2] == cols[1], || format!("x, y, R_B at 3/7: {row}"))?;
    ensure(cols[1] == "0.357142857143" && cols[5] == "0.357142857143", || format!("row {row}"))?;
    ensure(cols[4] != cols[1], || "z curve should stay above at 3/7".into())?;
    Ok(format!("{} rows; at p = 0.428571428571 R_B = RpB_x = RpB_y = RpB = 0.357142857143", rows.len()))
}

fn criterion_8() -> Outcome {
    let one = C64::new(1.0, 0.0);
    let cases = [
        ([one, C64::new(-1.0, 0.0)], 0.0),
        ([one, one], 0.5),
        ([one, C64::new(0.0, 1.0)], 0.5 * (1.0 - 0.5f64.sqrt())),
    ];
    for (z, want) in cases {
        let got = unitary_bayes_risk(&z, 0.5).map_err(|e| e.to_string())?;
        ensure((got - want).abs() < 1e-12, || format!("{z:?}: {got} vs {want}"))?;
    }
    Ok("{1,−1} → 0, {1,1} → 1/2, {1,i} → ½(1−√½)".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let pairs = random_pairs(20_241_014, RANDOM_PAIRS);
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "worked example", criterion_1()),
        (2, "oracle equivalence", criterion_2(&pairs)),
        (3, "case analysis vs exact comparison", criterion_3(&pairs)),
        (4, "perfect-discrimination family", criterion_4()),
        (5, "equalizer measurement", criterion_5(&pairs)),
        (6, "structural invariants", criterion_6(&pairs)),
        (7, "figure sweep", criterion_7()),
        (8, "unitary discrimination", criterion_8()),
    ];
    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {n} ({name}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n} ({name}): {why}");
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let timing_ok = elapsed < 60.0;
    println!("{} runtime: {elapsed:.2} s (limit 60 s)", if timing_ok { "PASS" } else { "FAIL" });
    if failed == 0 && timing_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
