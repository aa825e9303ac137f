//! Table, JSON and CSV output. Rationals are exact `p/q` strings in JSON
//! and CSV; table mode scales utilities by the weight denominator and
//! social welfare by that times the player count.

use clap::ValueEnum;
use grapheq::amplification::{PenaltyReport, PlayersNeeded};
use grapheq::classical::{BestSocialWelfare, Criterion, EquilibriumReport, RatioRegimes};
use grapheq::quantum::{BeliefReport, NashDecision, PerfectWinReport};
use grapheq::rational::{big_to_f64, fmt_affine_v, to_f64};
use grapheq::{GameSpec, PayoffParams, Rational};
use grapheq::rational::BigRational;
use serde_json::{json, Value};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

fn q(r: &Rational) -> String {
    r.to_string()
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..width).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn params_json(p: &PayoffParams) -> Value {
    json!({ "v0": q(&p.v0), "v1": q(&p.v1), "ng": q(&p.ng) })
}

fn params_text(p: &PayoffParams) -> String {
    format!("v0={} v1={} ng={}", p.v0, p.v1, p.ng)
}

pub fn report(rep: &EquilibriumReport, format: Format) -> String {
    match format {
        Format::Json => pretty(report_json(rep)),
        Format::Csv => report_csv(rep),
        Format::Table => report_table(rep),
    }
}

fn report_json(rep: &EquilibriumReport) -> Value {
    json!({
        "game": rep.game,
        "criterion": rep.criterion.to_string(),
        "params": params_json(&rep.params),
        "regime": rep.regime.as_ref().map(|r| r.to_string()),
        "count": rep.len(),
        "symmetryOrder": rep.symmetry_order,
        "orbits": rep.orbits.iter().map(|o| json!({
            "id": o.id,
            "representative": o.representative.to_string(),
            "size": o.size,
        })).collect::<Vec<_>>(),
        "profiles": rep.profiles.iter().map(|p| json!({
            "profile": p.profile.to_string(),
            "utilities": p.utilities.iter().map(q).collect::<Vec<_>>(),
            "socialWelfare": q(&p.social_welfare),
            "pWin": q(&p.p_win),
            "orbit": p.orbit,
        })).collect::<Vec<_>>(),
    })
}

fn report_csv(rep: &EquilibriumReport) -> String {
    let n = rep.profiles.first().map(|p| p.utilities.len()).unwrap_or(0);
    let mut header = vec!["profile".to_string()];
    header.extend((0..n).map(|j| format!("f{j}")));
    header.extend((0..n).map(|j| format!("u{j}")));
    header.extend(["sw".into(), "p_win".into(), "orbit".into()]);
    let mut out = header.join(",");
    out.push('\n');
    for p in &rep.profiles {
        let mut row = vec![p.profile.to_string()];
        row.extend(p.profile.0.iter().map(|f| f.code().to_string()));
        row.extend(p.utilities.iter().map(q));
        row.push(q(&p.social_welfare));
        row.push(q(&p.p_win));
        row.push(p.orbit.map(|o| o.to_string()).unwrap_or_default());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn report_table(rep: &EquilibriumReport) -> String {
    let n = rep.profiles.first().map(|p| p.utilities.len()).unwrap_or(0);
    let scale = Rational::from_integer(rep.weight_scale);
    let sw_scale = scale * Rational::from_integer(n as i64);
    let mut out = format!(
        "# {} {} profiles at {}{}\n# {} profiles, {} orbits (symmetry group of order {}); utilities x{}, SW x{}\n",
        rep.game,
        rep.criterion,
        params_text(&rep.params),
        rep.regime.as_ref().map(|r| format!(", v0/v1 in {r}")).unwrap_or_default(),
        rep.len(),
        rep.orbits.len(),
        rep.symmetry_order,
        scale,
        sw_scale,
    );
    let mut rows = vec![];
    let mut header = vec!["profile".to_string()];
    header.extend((0..n).map(|j| format!("u{j}")));
    header.extend(["SW".into(), "SW value".into(), "orbit".into()]);
    rows.push(header);
    for p in &rep.profiles {
        let mut row = vec![p.profile.to_string()];
        let ng = rep.params.ng;
        let mut total = (Rational::from_integer(0), Rational::from_integer(0));
        for pay in &p.payoffs {
            let (a, b) = pay.coefficients(ng);
            total = (total.0 + a, total.1 + b);
            row.push(fmt_affine_v(&(a * scale), &(b * scale)));
        }
        row.push(fmt_affine_v(&(total.0 * scale), &(total.1 * scale)));
        row.push(format!("{:.4}", to_f64(&p.social_welfare)));
        row.push(p.orbit.map(|o| o.to_string()).unwrap_or_else(|| "-".into()));
        rows.push(row);
    }
    out.push_str(&columns(&rows));
    out
}

pub fn csw(game: &GameSpec, params: &PayoffParams, criterion: Criterion, best: &BestSocialWelfare, format: Format) -> String {
    let argmax: Vec<String> = best.argmax.iter().map(|p| p.to_string()).collect();
    match format {
        Format::Json => pretty(json!({
            "game": game.name,
            "criterion": criterion.to_string(),
            "params": params_json(params),
            "csw": q(&best.value),
            "argmax": argmax,
        })),
        Format::Csv => format!("game,criterion,csw,argmax\n{},{},{},{}\n", game.name, criterion, best.value, argmax.join(" ")),
        Format::Table => format!(
            "{} best {} social welfare at {}: {} ({:.2})\nattained by {}\n",
            game.name,
            criterion,
            params_text(params),
            best.value,
            to_f64(&best.value),
            argmax.join(", ")
        ),
    }
}

pub fn regimes(game: &GameSpec, reg: &RatioRegimes, format: Format) -> String {
    match format {
        Format::Json => pretty(json!({
            "game": game.name,
            "breakpoints": reg.breakpoints.iter().map(q).collect::<Vec<_>>(),
            "intervals": reg.intervals.iter().map(|i| json!({
                "regime": i.regime.as_ref().map(|r| r.to_string()),
                "count": i.len(),
                "orbits": i.orbits.len(),
                "representatives": i.orbits.iter().map(|o| o.representative.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "points": reg.points.iter().map(|p| json!({
                "r": q(&p.r),
                "count": p.report.len(),
                "orbits": p.report.orbits.len(),
                "unionOfNeighbors": p.union_of_neighbors,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("kind,regime,count,orbits,union_of_neighbors\n");
            for i in &reg.intervals {
                let regime = i.regime.as_ref().map(|r| r.to_string()).unwrap_or_default();
                out.push_str(&format!("interval,\"{regime}\",{},{},\n", i.len(), i.orbits.len()));
            }
            for p in &reg.points {
                out.push_str(&format!("point,{},{},{},{}\n", p.r, p.report.len(), p.report.orbits.len(), p.union_of_neighbors));
            }
            out
        }
        Format::Table => {
            let mut rows = vec![vec!["v0/v1".to_string(), "profiles".into(), "orbits".into(), "note".into()]];
            let mut points = reg.points.iter().peekable();
            for i in &reg.intervals {
                if let Some(p) = points.next() {
                    rows.push(point_row(p));
                }
                let reps: Vec<String> = i.orbits.iter().map(|o| o.representative.to_string()).collect();
                rows.push(vec![
                    i.regime.as_ref().map(|r| r.to_string()).unwrap_or_default(),
                    i.len().to_string(),
                    i.orbits.len().to_string(),
                    reps.join(" "),
                ]);
            }
            for p in points {
                rows.push(point_row(p));
            }
            format!("# {} equilibria by v0/v1 (v1 = 1)\n{}", game.name, columns(&rows))
        }
    }
}

fn point_row(p: &grapheq::classical::PointAnalysis) -> Vec<String> {
    vec![
        p.r.to_string(),
        p.report.len().to_string(),
        p.report.orbits.len().to_string(),
        if p.union_of_neighbors { "union of neighbours".into() } else { "differs from neighbours".into() },
    ]
}

pub struct QuantumData {
    pub perfect: PerfectWinReport,
    pub belief: BeliefReport,
    pub decision: NashDecision,
    pub qsw: Rational,
}

fn quantum_json(game: &GameSpec, params: &PayoffParams, d: &QuantumData) -> Value {
    let t = &d.decision.threshold;
    json!({
        "game": game.name,
        "params": params_json(params),
        "perfectWin": d.perfect.passed(),
        "uniformMarginals": d.belief.uniform(),
        "beliefInvariant": d.belief.belief_invariant(),
        "questions": d.perfect.questions.iter().map(|qw| json!({
            "id": qw.id,
            "rank": qw.rank,
            "winProbability": q(&qw.win_probability),
            "marginals": qw.marginals.iter().map(q).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "threshold": {
            "p": q(&t.p),
            "bound": t.condition(),
            "holdsAt": d.decision.by_threshold,
            "argmin": { "player": t.argmin.0, "type": t.argmin.1 as u8 },
        },
        "isNash": d.decision.is_nash(),
        "methodsAgree": d.decision.agree(),
        "witness": d.decision.witness.as_ref().map(|w| json!({
            "player": w.player,
            "policy": format!("{:04b}", w.policy.0),
            "gain": q(&w.gain),
        })),
        "qsw": q(&d.qsw),
    })
}

pub fn quantum(game: &GameSpec, params: &PayoffParams, d: &QuantumData, format: Format) -> String {
    match format {
        Format::Json => pretty(quantum_json(game, params, d)),
        Format::Csv => {
            let mut out = String::from("question,rank,win_probability\n");
            for qw in &d.perfect.questions {
                out.push_str(&format!("{},{},{}\n", qw.id, qw.rank, qw.win_probability));
            }
            out
        }
        Format::Table => {
            let t = &d.decision.threshold;
            let mut out = format!(
                "{} with graph-state advice at {}\nperfect win: {}  uniform marginals: {}  belief invariant: {}\n\
                 threshold p = {}, equilibrium iff {}\nequilibrium here: {} (threshold test {}, deviation scan {})\nQSW = {} ({:.2})\n",
                game.name,
                params_text(params),
                d.perfect.passed(),
                d.belief.uniform(),
                d.belief.belief_invariant(),
                t.p,
                t.condition(),
                d.decision.is_nash(),
                d.decision.by_threshold,
                d.decision.by_deviation,
                d.qsw,
                to_f64(&d.qsw),
            );
            if let Some(w) = &d.decision.witness {
                out.push_str(&format!(
                    "profitable deviation: player {} policy {:04b} gains {}\n",
                    w.player, w.policy.0, w.gain
                ));
            }
            out
        }
    }
}

pub fn corr_lp(game: &GameSpec, params: &PayoffParams, value: Rational, pure: Rational, format: Format) -> String {
    match format {
        Format::Json => pretty(json!({
            "game": game.name,
            "params": params_json(params),
            "correlatedSw": q(&value),
            "pureNashSw": q(&pure),
        })),
        Format::Csv => format!("game,correlated_sw,pure_nash_sw\n{},{},{}\n", game.name, value, pure),
        Format::Table => format!(
            "{} at {}\nbest correlated equilibrium SW: {} ({:.4})\nbest pure Nash SW:             {} ({:.4})\n",
            game.name,
            params_text(params),
            value,
            to_f64(&value),
            pure,
            to_f64(&pure)
        ),
    }
}

pub fn penalty(rep: &PenaltyReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut v = report_json(&rep.report);
            v["qsw"] = json!(q(&rep.qsw));
            v["csw"] = json!(rep.csw().map(|c| q(&c)));
            pretty(v)
        }
        Format::Csv => report_csv(&rep.report),
        Format::Table => {
            let mut out = report_table(&rep.report);
            out.push_str(&format!(
                "CSW = {}  QSW = {}\n",
                rep.csw().map(|c| c.to_string()).unwrap_or_else(|| "none".into()),
                rep.qsw
            ));
            out
        }
    }
}

pub fn kfold(k: usize, csw: &BigRational, qsw: Rational, decay: &BigRational, method: &str, format: Format) -> String {
    let qsw_big = grapheq::rational::to_big(&qsw);
    let ratio = csw / &qsw_big;
    match format {
        Format::Json => pretty(json!({
            "k": k,
            "csw": csw.to_string(),
            "qsw": q(&qsw),
            "ratio": ratio.to_string(),
            "decayFactor": decay.to_string(),
            "method": method,
        })),
        Format::Csv => format!("k,csw,qsw,ratio,decay_factor,method\n{k},{csw},{qsw},{ratio},{decay},{method}\n"),
        Format::Table => format!(
            "k = {k} ({method})\nCSW = {csw} ({:.4})\nQSW = {qsw}\nCSW/QSW = {ratio} ({:.4})\ndecay factor per group = {decay}\n",
            big_to_f64(csw),
            big_to_f64(&ratio)
        ),
    }
}

pub fn players_needed(eps: &BigRational, res: &PlayersNeeded, format: Format) -> String {
    match format {
        Format::Json => pretty(json!({
            "eps": eps.to_string(),
            "k": res.k,
            "players": res.players,
            "ratio": res.ratio.to_string(),
            "ratioApprox": big_to_f64(&res.ratio),
            "baseRatio": res.base_ratio.to_string(),
            "decayFactor": res.decay.to_string(),
            "logConstant": res.log_constant,
        })),
        Format::Csv => format!(
            "eps,k,players,ratio,decay_factor\n{eps},{},{},{},{}\n",
            res.k, res.players, res.ratio, res.decay
        ),
        Format::Table => format!(
            "eps = {eps}: k = {} groups, {} players, CSW/QSW = {:.3e}\n(base ratio {}, decay {} per group)\n",
            res.k,
            res.players,
            big_to_f64(&res.ratio),
            res.base_ratio,
            res.decay
        ),
    }
}
