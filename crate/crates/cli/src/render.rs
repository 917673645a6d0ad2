use std::fmt::Write;

use glrmc_core::feasibility::{ColumnEvidence, Counterexample, FeasibilityVerdict};

use crate::report::{Report, WitnessRecord};

pub fn text(r: &Report) -> String {
    let mut out = String::new();
    let c = &r.config;
    if let Some(p) = &c.pattern_path {
        let _ = writeln!(
            out,
            "pattern: {p}{}",
            if r.transposed { " (transposed)" } else { "" }
        );
    }
    let _ = writeln!(out, "seed: {}  mode: {:?}", c.seed, c.mode);
    if let Some(v) = &r.verdict {
        let _ = writeln!(
            out,
            "verdict: {:?} (k = {}, rank <= {})",
            v.decision, v.k, v.target_rank
        );
        for (name, fv) in [
            ("exact", &v.exact),
            ("sufficient", &v.sufficient),
            ("necessary", &v.necessary),
        ] {
            if let Some(fv) = fv {
                line(&mut out, name, fv);
            }
        }
        if let Some(o) = &v.oracle {
            let method = o.method.map(|m| format!(" via {m:?}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "  oracle: {}{method}, {}/{} trials feasible",
                o.verdict, o.feasible_trials, o.trials
            );
            if o.conditional {
                let _ = writeln!(
                    out,
                    "  note: negative answer is conditional on the basis search for k > 1"
                );
            }
        }
        if let Some(mr) = &v.min_rank {
            let steps: Vec<String> = mr
                .steps
                .iter()
                .map(|s| format!("{}:{}", s.rank, s.verdict))
                .collect();
            let _ = writeln!(out, "  min rank: {} [{}]", mr.rank, steps.join(" "));
            if mr.uncertain {
                let _ = writeln!(out, "  note: some smaller rank was inconclusive");
            }
        }
    }
    if let Some(b) = &r.bounds {
        let _ = writeln!(
            out,
            "bounds: [{}, {}]  grank_bar = {}",
            b.lower, b.upper, b.grank_bar
        );
        let _ = writeln!(
            out,
            "  confirmed: lower {} upper {}",
            b.lower_confirmed, b.upper_confirmed
        );
        if b.inconsistent {
            let _ = writeln!(
                out,
                "  warning: lower exceeds upper (a sampled test missed)"
            );
        }
        for s in &r.trace {
            let status = s
                .status
                .map(|s| format!("{s:?}"))
                .unwrap_or_else(|| "trivial".into());
            let _ = writeln!(
                out,
                "  {:?} r={} k={}: {status} ({})",
                s.condition,
                s.r_mid,
                s.k,
                if s.success { "success" } else { "fail" }
            );
        }
    }
    match &r.witness {
        Some(WitnessRecord::Basis { witness, .. }) => {
            let _ = writeln!(out, "witness basis: {} ({:?})", witness.basis, witness.form);
            for e in &witness.evidence {
                let _ = writeln!(out, "  {}", evidence(e));
            }
        }
        Some(WitnessRecord::Rows { counterexample, .. }) => {
            let _ = writeln!(out, "counterexample: {}", counter(counterexample));
        }
        Some(WitnessRecord::Completion {
            completion, lifted, ..
        }) => {
            let _ = writeln!(
                out,
                "completion over GF({}):",
                completion.matrix.field().modulus()
            );
            for row in lifted {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
                let _ = writeln!(out, "  {}", cells.join(" "));
            }
        }
        None => {}
    }
    if let Some(ms) = r.timing_ms {
        let _ = writeln!(out, "time: {ms:.3} ms");
    }
    out
}

fn line(out: &mut String, name: &str, v: &FeasibilityVerdict) {
    let _ = writeln!(
        out,
        "  {name}: {:?}{}{}",
        v.status,
        if v.exhaustive { " (exhaustive)" } else { "" },
        if v.trials_used > 0 {
            format!(", {} draws", v.trials_used)
        } else {
            String::new()
        }
    );
    for n in &v.notes {
        let _ = writeln!(out, "    {n}");
    }
}

fn evidence(e: &ColumnEvidence) -> String {
    match e {
        ColumnEvidence::NoStarInCoBasis { column } => {
            format!("column {column}: no * in a co-basis row")
        }
        ColumnEvidence::QueryInCoBasis { column, row } => {
            format!("column {column}: ? in co-basis row {row}")
        }
        ColumnEvidence::OverlapReached { column, rho } => {
            format!("column {column}: overlap bound met (rho = {rho})")
        }
    }
}

fn counter(c: &Counterexample) -> String {
    match c {
        Counterexample::NoPreservableBasis => "no basis keeps full rank".into(),
        Counterexample::Column { basis, column, row } => match row {
            Some(r) => format!("basis {basis} fails at column {column}, row {r}"),
            None => format!("basis {basis} fails at column {column}"),
        },
        Counterexample::Rows { rows, detail } => match detail {
            Some(d) => format!(
                "rows {rows}: {} (row numbered within the subset)",
                counter(d)
            ),
            None => format!("rows {rows}"),
        },
    }
}

pub fn csv(r: &Report) -> String {
    let mut out = String::from("command,k,target_rank,decision,lower,upper,grank_bar\n");
    let (k, t, d) = match &r.verdict {
        Some(v) => (
            v.k.to_string(),
            v.target_rank.to_string(),
            format!("{:?}", v.decision),
        ),
        None => Default::default(),
    };
    let (lo, up, g) = match &r.bounds {
        Some(b) => (
            b.lower.to_string(),
            b.upper.to_string(),
            b.grank_bar.to_string(),
        ),
        None => Default::default(),
    };
    let _ = writeln!(out, "{},{k},{t},{d},{lo},{up},{g}", r.config.command);
    out
}
