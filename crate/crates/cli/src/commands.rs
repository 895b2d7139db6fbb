use std::fs;
use std::path::Path;

use coevent_engine::{quadratic_witness, run_scheme, CoEvent, Scheme, SchemeResult};
use collapse_lattice::{verify_lattice, LatticeModel, LatticeSpec};
use cournot::{approx_scheme, h_epsilon, hypothesis_test, uniform_counterexample_support_size, CoinModel, HEpsilon};
use measure_core::io::{Mode, SystemFile};
use measure_core::registry::{self, SystemEntry};
use measure_core::{parse_rational, HistoriesTheory, Partition};
use pks_lab::{
    linear_pks_coevent, peres_colouring_pair, prove_no_consistent_colouring, r_set, symmetry_group, table71,
    verify_pks_nullity, Colour, Kind, PeresSet, PksCoEvent, Ray,
};
use scheme_analysis::{
    anhomomorphism_report, consistency_check, is_classical_on, is_superdecoherent, preclusive_separability, restrict,
    Verdict as ConsistencyVerdict, Witness,
};
use serde_json::{json, Value};

use crate::args::{Cli, CoinCommand, Command, LatticeCommand, PksCommand};
use crate::error::{at, CliError};
use crate::render::{bit, table, yes_no};
use crate::Report;

const LATTICE_TOLERANCE: f64 = 1e-10;

pub(crate) fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let tol = cli.tolerance;
    if let Some(t) = tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::new("tolerance", t.to_string(), "must be a finite non-negative number"));
        }
    }
    match &cli.command {
        Command::Systems { export } => match export {
            Some(name) => export_system(name),
            None => Ok(systems()),
        },
        Command::Nullsets { system, minimal } => nullsets(&load_system(&system.system, tol)?, *minimal),
        Command::Coevents { system, scheme } => coevents(&load_system(&system.system, tol)?, &scheme.scheme),
        Command::Classify { system, scheme, partition, table } => {
            let sys = load_system(&system.system, tol)?;
            classify(&sys, &scheme.scheme, &partition.partition, *table)
        }
        Command::Consistency { system, partition, scheme } => {
            let sys = load_system(&system.system, tol)?;
            consistency(&sys, &partition.partition, &scheme.scheme)
        }
        Command::Pks { action } => match action {
            PksCommand::Verify => Ok(pks_verify()),
            PksCommand::Coevent { scheme, ray, colour } => pks_coevent(scheme, ray, colour),
        },
        Command::Lattice { action: LatticeCommand::Verify { width, steps, x, seed, spec } } => {
            let model = match spec {
                Some(path) => {
                    let shown = path.display().to_string();
                    let text = fs::read_to_string(path).map_err(at("lattice spec", &shown))?;
                    LatticeSpec::from_json(&text).and_then(|s| s.build()).map_err(at("lattice spec", &shown))?
                }
                None => {
                    let (w, n, x) = match (width, steps, x) {
                        (Some(w), Some(n), Some(x)) => (*w, *n, *x),
                        _ => return Err(CliError::new("lattice", "", "give --N, --steps and --X, or --spec")),
                    };
                    let shown = format!("N={w} steps={n} X={x}");
                    LatticeModel::random(w, n, x, *seed).map_err(at("lattice", &shown))?
                }
            };
            lattice_verify(&model, tol.unwrap_or(LATTICE_TOLERANCE))
        }
        Command::Coin { action } => match action {
            CoinCommand::Test { p, n, eps, observed } => coin_test(p, *n, eps, *observed),
            CoinCommand::Support { n, eps } => coin_support(*n, eps),
        },
        Command::Witness { system } => witness(&load_system(&system.system, tol)?),
    }
}

struct Loaded {
    name: String,
    entry: Option<&'static SystemEntry>,
    theory: HistoriesTheory,
}

impl Loaded {
    fn partition(&self, text: &str) -> Result<Partition, CliError> {
        let space = self.theory.space();
        if let Some(p) = self.entry.and_then(|e| e.partition(&self.theory, text)) {
            return Ok(p);
        }
        match text {
            "finest" => Ok(Partition::finest(space)),
            "trivial" => Ok(Partition::trivial(space)),
            _ => Partition::parse(space, text).map_err(at("partition", text)),
        }
    }
}

/// Registry name first, then a system file, then a Hilbert-space description.
fn load_system(spec: &str, tol: Option<f64>) -> Result<Loaded, CliError> {
    if let Ok(entry) = registry::lookup(spec) {
        return Ok(Loaded { name: spec.to_string(), entry: Some(entry), theory: entry.build() });
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(CliError::new("system", spec, "neither a registry name nor a readable file (see `coevent systems`)"));
    }
    let text = fs::read_to_string(path).map_err(at("system", spec))?;
    let value: Value = serde_json::from_str(&text).map_err(at("system", spec))?;
    let mut file: SystemFile = if value.get("histories").is_some() {
        serde_json::from_value(value).map_err(at("system", spec))?
    } else {
        let hs = hilbert_bridge::parse_spec(&text).map_err(at("system", spec))?;
        let theory = hilbert_bridge::build_decoherence(&hs).map_err(at("system", spec))?;
        SystemFile::from_theory(&theory)
    };
    if let (Some(t), Mode::Float) = (tol, &file.mode) {
        file.tolerance = Some(t);
    }
    let theory = file.into_theory().map_err(at("system", spec))?;
    Ok(Loaded { name: spec.to_string(), entry: None, theory })
}

fn systems() -> Report {
    let rows: Vec<Vec<String>> = registry::systems()
        .iter()
        .map(|e| {
            let parts: Vec<&str> = e.partitions.iter().map(|(n, _)| *n).collect();
            vec![e.name.to_string(), e.build().len().to_string(), parts.join(","), e.description.to_string()]
        })
        .collect();
    let json = registry::systems()
        .iter()
        .map(|e| {
            let parts: serde_json::Map<String, Value> =
                e.partitions.iter().map(|(n, t)| (n.to_string(), Value::String(t.to_string()))).collect();
            json!({ "name": e.name, "histories": e.build().space().labels(), "description": e.description, "partitions": parts })
        })
        .collect();
    Report { human: table(&["system", "histories", "partitions", "description"], &rows), json: Value::Array(json) }
}

fn export_system(name: &str) -> Result<Report, CliError> {
    let theory = registry::by_name(name).map_err(at("system", name))?;
    let file = SystemFile::from_theory(&theory);
    let json = serde_json::to_value(&file).expect("system files serialize");
    Ok(Report { human: measure_core::io::to_json(&theory), json })
}

fn nullsets(sys: &Loaded, minimal: bool) -> Result<Report, CliError> {
    let t = &sys.theory;
    let mut nulls = t.enumerate_null_sets().map_err(at("system", &sys.name))?;
    if minimal {
        let all = nulls.clone();
        nulls.retain(|z| !all.iter().any(|y| y != z && y.is_subset(*z)));
    }
    let names: Vec<String> = nulls.iter().map(|z| t.space().describe(*z)).collect();
    let mut human = format!("{}: {} null event{}\n", sys.name, names.len(), if names.len() == 1 { "" } else { "s" });
    for n in &names {
        human.push_str(&format!("  {n}\n"));
    }
    let json = json!({ "system": sys.name, "minimal": minimal, "null_sets": names });
    Ok(Report { human, json })
}

fn scheme_result(theory: &HistoriesTheory, text: &str) -> Result<SchemeResult, CliError> {
    let scheme = Scheme::parse(text).map_err(at("scheme", text))?;
    match &scheme {
        Scheme::Approximate { epsilon } => {
            let eps = parse_rational(epsilon).map_err(at("scheme", text))?;
            approx_scheme(theory, &eps).map_err(at("scheme", text))
        }
        s => run_scheme(theory, s).map_err(at("scheme", text)),
    }
}

fn coevent_json(phi: &CoEvent) -> Value {
    json!({ "name": phi.to_string(), "dual": phi.describe(), "degree": phi.degree(), "unital": phi.is_unital() })
}

fn coevents(sys: &Loaded, scheme: &str) -> Result<Report, CliError> {
    let r = scheme_result(&sys.theory, scheme)?;
    let rows: Vec<Vec<String>> = r
        .coevents
        .iter()
        .map(|c| {
            let dual = c.describe();
            let short = if dual == c.to_string() { String::new() } else { dual };
            vec![c.to_string(), short, c.degree().to_string(), yes_no(c.is_unital())]
        })
        .collect();
    let d = &r.diagnostics;
    let mut human = format!("{}, {} scheme: {} co-events, {} unital\n", sys.name, r.scheme, r.len(), d.unital);
    human.push_str(&table(&["co-event", "dual", "degree", "unital"], &rows));
    human.push_str(&format!("null events {}, candidates examined {}\n", d.null_sets, d.candidates));
    let json = json!({
        "system": sys.name,
        "scheme": r.scheme.to_string(),
        "coevents": r.coevents.iter().map(coevent_json).collect::<Vec<_>>(),
        "diagnostics": d,
    });
    Ok(Report { human, json })
}

fn classify(sys: &Loaded, scheme: &str, partition: &str, with_table: bool) -> Result<Report, CliError> {
    let t = &sys.theory;
    let p = sys.partition(partition)?;
    let coarse = t.coarse_grain(&p).map_err(at("partition", partition))?;
    let r = scheme_result(t, scheme)?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut tables = String::new();
    for phi in &r.coevents {
        let classical = is_classical_on(phi, &p);
        let restriction = restrict(phi, &p, coarse.space()).map_or_else(|| "0".to_string(), |c| c.to_string());
        let report = anhomomorphism_report(t, phi, &p).map_err(at("partition", partition))?;
        if with_table {
            tables.push('\n');
            tables.push_str(&report.to_string());
        }
        rows.push(vec![phi.to_string(), yes_no(classical), restriction.clone()]);
        entries.push(json!({
            "coevent": coevent_json(phi),
            "classical": classical,
            "restriction": restriction,
            "table": serde_json::to_value(&report).expect("tables serialize"),
        }));
    }
    let classical = rows.iter().filter(|r| r[1] == "yes").count();
    let mut human = format!(
        "{}, {} scheme on {}: {} of {} co-events classical\n",
        sys.name,
        r.scheme,
        p.names().join(" | "),
        classical,
        r.len()
    );
    human.push_str(&table(&["co-event", "classical", "restriction"], &rows));
    human.push_str(&tables);
    let json = json!({ "system": sys.name, "scheme": r.scheme.to_string(), "partition": p.names(), "coevents": entries });
    Ok(Report { human, json })
}

fn verdict_text(v: &ConsistencyVerdict) -> String {
    match &v.witness {
        None => "holds".into(),
        Some(Witness::Unaffirmed { coarse, event }) => format!("fails: {coarse} affirms {event}, no fine co-event does"),
        Some(Witness::Uncovered { coarse }) => format!("fails: no fine co-event affirms everything {coarse} does"),
        Some(Witness::ForeignRestriction { fine, restriction }) => {
            format!("fails: {fine} restricts to {restriction}, outside the coarse scheme")
        }
        Some(Witness::MissingRestriction { coarse }) => format!("fails: {coarse} is no restriction of a fine co-event"),
    }
}

fn consistency(sys: &Loaded, partition: &str, scheme: &str) -> Result<Report, CliError> {
    let t = &sys.theory;
    let p = sys.partition(partition)?;
    let s = Scheme::parse(scheme).map_err(at("scheme", scheme))?;
    let r = consistency_check(t, &p, &s).map_err(at("scheme", scheme))?;
    let separable = preclusive_separability(t, &p, false).map_err(at("partition", partition))?;
    let strongly = preclusive_separability(t, &p, true).map_err(at("partition", partition))?;
    let superdecoherent = is_superdecoherent(t, &p);
    let list = |v: &[String]| if v.is_empty() { "(none)".to_string() } else { v.join(", ") };
    let mut human = format!("{}, {} scheme on {}\n", sys.name, r.scheme, r.partition.join(" | "));
    human.push_str(&format!("coarse co-events      {}\n", list(&r.coarse)));
    human.push_str(&format!("fine co-events        {}\n", list(&r.fine)));
    human.push_str(&format!("restrictions          {}\n", list(&r.restricted)));
    human.push_str(&format!("weak consistency      {}\n", verdict_text(&r.weak)));
    human.push_str(&format!("strong consistency    {}\n", verdict_text(&r.strong)));
    human.push_str(&format!("total consistency     {}\n", verdict_text(&r.total)));
    human.push_str(&format!("preclusive separable  {} (strong form {})\n", yes_no(separable), yes_no(strongly)));
    human.push_str(&format!("superdecoherent       {}\n", yes_no(superdecoherent)));
    let mut json = serde_json::to_value(&r).expect("reports serialize");
    json["system"] = json!(sys.name);
    json["preclusively_separable"] = json!(separable);
    json["strongly_preclusively_separable"] = json!(strongly);
    json["superdecoherent"] = json!(superdecoherent);
    Ok(Report { human, json })
}

fn colour_letter(c: Colour) -> String {
    match c {
        Colour::Green => "g".into(),
        Colour::Red => "r".into(),
    }
}

fn pks_verify() -> Report {
    let set = PeresSet::build();
    let search = prove_no_consistent_colouring(&set);
    let r11 = r_set(&set, set.basis_mask(set.basis(11)));
    let nullity = verify_pks_nullity(&set);
    let (p, q) = peres_colouring_pair(&set);
    let rows = table71(&set, p, q);
    let phi = PksCoEvent::new(Kind::Multiplicative, &[p, q]);
    let linear = linear_pks_coevent(&set);

    let mut human = format!(
        "Peres set: {} rays, {} bases, {} orthogonal pairs\n",
        set.len(),
        set.bases.len(),
        set.pairs.len()
    );
    human.push_str(&format!(
        "consistent colouring: {} ({} search nodes)\n",
        if search.satisfiable { "found" } else { "none" },
        search.nodes
    ));
    human.push_str(&format!("|r_B11| = {}\n", r11.len()));
    human.push_str(&format!(
        "spin-1 nullity: max vanishing norm {:.3e}, min surviving norm {:.3e}, mismatches {}\n",
        nullity.max_vanishing, nullity.min_surviving, nullity.mismatches
    ));
    human.push_str(&format!(
        "{{γP, γP'}}*: preclusive {}, unital {}\n\n",
        yes_no(phi.is_preclusive(&set)),
        yes_no(phi.is_unital())
    ));
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![r.ray.clone(), colour_letter(r.first), colour_letter(r.second), bit(r.green), bit(r.red)])
        .collect();
    human.push_str(&table(&["ray", "γP", "γP'", "φ(G)", "φ(R)"], &cells));
    let linear_json = match &linear {
        Ok(l) => {
            human.push_str(&format!(
                "\nγ11* + γ17* + γ117*: preclusive {}, unital {}\n",
                yes_no(l.coevent.is_preclusive(&set)),
                yes_no(l.coevent.is_unital())
            ));
            for (name, c) in [("γ11", l.gamma11), ("γ17", l.gamma17), ("γ117", l.gamma117)] {
                human.push_str(&format!("  {name} green on {}\n", c.green_names(&set).join(" ")));
            }
            json!({
                "preclusive": l.coevent.is_preclusive(&set),
                "unital": l.coevent.is_unital(),
                "gamma11": l.gamma11.green_names(&set),
                "gamma17": l.gamma17.green_names(&set),
                "gamma117": l.gamma117.green_names(&set),
            })
        }
        Err(e) => {
            human.push_str(&format!("\nlinear co-event search failed: {e}\n"));
            json!({ "error": e.to_string() })
        }
    };
    let json = json!({
        "rays": set.len(),
        "bases": set.bases.len(),
        "pairs": set.pairs.len(),
        "search": { "satisfiable": search.satisfiable, "nodes": search.nodes },
        "r_b11": r11.len(),
        "nullity": nullity,
        "table": rows,
        "pair_coevent": { "preclusive": phi.is_preclusive(&set), "unital": phi.is_unital() },
        "linear_coevent": linear_json,
    });
    Report { human, json }
}

fn pks_coevent(scheme: &str, ray: &str, colour: &str) -> Result<Report, CliError> {
    let set = PeresSet::build();
    let kind = match scheme {
        "linear" => Kind::Linear,
        "multiplicative" => Kind::Multiplicative,
        _ => return Err(CliError::new("scheme", scheme, "expected linear or multiplicative")),
    };
    let colour = match colour {
        "green" => Colour::Green,
        "red" => Colour::Red,
        _ => return Err(CliError::new("colour", colour, "expected green or red")),
    };
    Ray::parse(ray).map_err(at("ray", ray))?;
    let index = set.index_of_str(ray).map_err(at("ray", ray))?;
    let group = symmetry_group(&set);
    let phi = pks_lab::coevent_for_ray(&set, &group, kind, index, colour).map_err(at("ray", ray))?;
    let support: Vec<Vec<String>> = phi.support.iter().map(|c| c.green_names(&set)).collect();
    let mut human = format!(
        "{scheme} co-event affirming {} on ray {}: preclusive {}, unital {}\n",
        if colour == Colour::Green { "green" } else { "red" },
        set.name(index),
        yes_no(phi.is_preclusive(&set)),
        yes_no(phi.is_unital())
    );
    for (i, s) in support.iter().enumerate() {
        human.push_str(&format!("  colouring {} green on {}\n", i + 1, s.join(" ")));
    }
    let json = json!({
        "scheme": scheme,
        "ray": set.name(index),
        "colour": colour,
        "support": support,
        "preclusive": phi.is_preclusive(&set),
        "unital": phi.is_unital(),
    });
    Ok(Report { human, json })
}

fn lattice_verify(model: &LatticeModel, tol: f64) -> Result<Report, CliError> {
    let shown = format!("N={} steps={} X={}", model.width(), model.steps(), model.x());
    let r = verify_lattice(model, tol).map_err(at("lattice", &shown))?;
    let opt = |v: Option<f64>| v.map_or_else(|| "skipped".to_string(), |d| format!("{d:.3e}"));
    let rows = vec![
        vec!["hermitian defect".into(), format!("{:.3e}", r.hermitian)],
        vec!["collapse trace defect".into(), format!("{:.3e}", r.collapse_trace)],
        vec!["coarse D_qc vs D_q".into(), format!("{:.3e}", r.coarse_over_quantum)],
        vec!["suppression factor law".into(), format!("{:.3e}", r.factor_law)],
        vec!["level one".into(), format!("{:.3e}", r.level_one)],
        vec!["D_qe vs D_qc".into(), opt(r.environment)],
        vec!["product form".into(), opt(r.product_form)],
        vec!["spacelike relabelling".into(), opt(r.relabelling)],
    ];
    let mut human = format!("lattice {shown}, tolerance {:e}\n", r.tolerance);
    human.push_str(&table(&["check", "max deviation"], &rows));
    human.push_str(&format!("result: {}\n", if r.ok { "pass" } else { "FAIL" }));
    let json = serde_json::to_value(&r).expect("reports serialize");
    Ok(Report { human, json })
}

fn coin_model(p: &str, n: usize, eps: &str) -> Result<CoinModel, CliError> {
    let pr = parse_rational(p).map_err(at("p", p))?;
    let er = parse_rational(eps).map_err(at("eps", eps))?;
    CoinModel::new(pr, n, er).map_err(at("coin model", &format!("p={p} n={n} eps={eps}")))
}

fn h_text(h: HEpsilon) -> String {
    h.heads().map_or_else(|| "none below".to_string(), |k| k.to_string())
}

fn coin_test(p: &str, n: usize, eps: &str, observed: usize) -> Result<Report, CliError> {
    let model = coin_model(p, n, eps)?;
    let out = hypothesis_test(&model, observed).map_err(at("observed", &observed.to_string()))?;
    let h = h_epsilon(&model);
    let human = format!(
        "verdict      {:?}\nobserved     {}\nCP           {}\nCP decimal   {}\nH_eps        {}\n",
        out.verdict,
        out.observed,
        out.cumulative,
        out.decimal,
        h_text(h)
    );
    let mut json = serde_json::to_value(&out).expect("outcomes serialize");
    json["h_epsilon"] = serde_json::to_value(h).expect("serializes");
    Ok(Report { human, json })
}

fn coin_support(n: usize, eps: &str) -> Result<Report, CliError> {
    let model = coin_model("1/2", n, eps)?;
    let c = uniform_counterexample_support_size(&model).map_err(at("coin model", eps))?;
    let (support, primitive) = (c.support.to_string(), c.primitive_size.to_string());
    let human = format!(
        "H_eps           {}\n|S|             {} ({} digits)\nprimitive size  {} ({} digits)\n",
        h_text(c.h_epsilon),
        support,
        support.len(),
        primitive,
        primitive.len()
    );
    let json = serde_json::to_value(&c).expect("counts serialize");
    Ok(Report { human, json })
}

fn witness(sys: &Loaded) -> Result<Report, CliError> {
    let t = &sys.theory;
    let w = quadratic_witness(t).map_err(at("system", &sys.name))?;
    let preclusive = w.is_preclusive(t).map_err(at("system", &sys.name))?;
    let human = format!(
        "{}: witness {}\ndegree {}, preclusive {}, unital {}\n",
        sys.name,
        w,
        w.degree(),
        yes_no(preclusive),
        yes_no(w.is_unital())
    );
    let mut json = coevent_json(&w);
    json["system"] = json!(sys.name);
    json["preclusive"] = json!(preclusive);
    Ok(Report { human, json })
}
