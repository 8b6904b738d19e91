use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use jdom_core::graph::{
    gnp, parse_edge_list, random_regular, random_split, random_tree, split_recognition, Graph, SplitPartition,
};
use jdom_core::lll::{mt_construct, mt_trials, summarize_trials, ClauseChoice, LllError, MtConfig};
use jdom_core::oracle::{exact_bands, uniform_bands, verify_1j_set, verify_bands, Engine, ExactOptions, ExactOutcome, Witness};
use jdom_core::reduction::{build_reduction, forward_witness, Ex3cInstance};
use jdom_core::split::gamma_1j_split;
use jdom_core::tree::{gamma_m, parse_labels, MLabeledTree};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::{ClauseOrder, CliError, ConstructArgs, GenArgs, Method, ReduceArgs, SolveArgs, VerifyArgs, SCHEMA};

/// Share of runs that must land within this multiple of `n · p`.
const SIZE_SLACK: f64 = 1.25;

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    String::from_utf8(read(path)?).map_err(|_| CliError::Parse(format!("{}: not valid UTF-8", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    writeln!(out, "{value}").map_err(|e| CliError::io("<stdout>", e))
}

fn load_graph(path: &Path) -> Result<(Graph, String), CliError> {
    let bytes = read(path)?;
    let digest = hex::encode(Sha256::digest(&bytes));
    Ok((parse_edge_list(&bytes)?, digest))
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Auto => "auto",
        Method::Brute => "brute",
        Method::Bnb => "bnb",
        Method::Tree => "tree",
        Method::Split => "split",
    }
}

fn with_path(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn solve(a: &SolveArgs, timing: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let (g, digest) = load_graph(&a.graph)?;
    let labels = match &a.labels {
        Some(p) => Some(parse_labels(&read_text(p)?, g.n())?),
        None => None,
    };
    if labels.is_some() && a.j.is_some() {
        return Err(CliError::Precondition("give either --j or --labels, not both".into()));
    }
    if let Some(0) = a.j {
        return Err(CliError::Precondition("j must be at least 1".into()));
    }
    let bands = match (&labels, a.j) {
        (Some(b), _) => b.clone(),
        (None, Some(j)) => uniform_bands(&g, 1, j),
        (None, None) => return Err(CliError::Precondition("--j is required unless --labels is given".into())),
    };
    let partition = match &a.partition {
        Some(p) => Some(SplitPartition::parse(&read_text(p)?)?),
        None => None,
    };

    let method = match a.method {
        Method::Auto if g.is_tree() => Method::Tree,
        Method::Auto if labels.is_none() && g.is_connected() && (partition.is_some() || split_recognition(&g).is_some()) => {
            Method::Split
        }
        Method::Auto => Method::Bnb,
        m => m,
    };

    let mut report = json!({
        "schema": SCHEMA,
        "command": "solve",
        "input_sha256": digest,
        "requested_method": method_name(a.method),
        "method": method_name(method),
        "j": a.j,
        "labels": a.labels.is_some(),
        "n": g.n(),
        "m": g.m(),
    });

    let solved: Option<Witness> = match method {
        Method::Tree => {
            if !g.is_tree() {
                return Err(CliError::Precondition("method tree needs a tree".into()));
            }
            let t = MLabeledTree::new(g.clone(), bands.clone())?;
            Some(gamma_m(&t).1)
        }
        Method::Split => {
            let j = a.j.ok_or_else(|| CliError::Precondition("method split does not take labels".into()))?;
            let part = match partition {
                Some(p) => p,
                None => split_recognition(&g).ok_or_else(|| CliError::Precondition("graph is not split".into()))?,
            };
            let sol = gamma_1j_split(&g, &part, j)?;
            report["split_mode"] = json!(sol.mode);
            report["split_cases"] = json!(sol.cases);
            Some(sol.witness)
        }
        Method::Brute | Method::Bnb => {
            let opts = ExactOptions {
                engine: if method == Method::Brute { Engine::Enumeration } else { Engine::BranchAndBound },
                budget: a.budget,
                allow_large: a.allow_large,
            };
            match exact_bands(&g, &bands, &opts)? {
                ExactOutcome::Solved { witness, .. } => Some(witness),
                ExactOutcome::InfeasibleWithinBudget { .. } => None,
            }
        }
        Method::Auto => unreachable!("auto resolved above"),
    };

    match solved {
        Some(w) => {
            if !verify_bands(&g, w.vertices(), &bands)?.valid {
                return Err(CliError::Internal(format!("{} returned an invalid set {:?}", method_name(method), w)));
            }
            report["value"] = json!(w.cardinality());
            report["witness"] = json!(w);
            if let Some(b) = a.budget {
                report["budget"] = json!(b);
                report["within_budget"] = json!(w.cardinality() <= b);
            }
        }
        None => {
            report["value"] = Value::Null;
            report["witness"] = Value::Null;
            report["budget"] = json!(a.budget);
            report["within_budget"] = json!(false);
        }
    }
    if timing {
        report["wall_time_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    }
    emit(out, &report)?;
    Ok(0)
}

pub fn construct(a: &ConstructArgs, timing: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let (g, digest) = load_graph(&a.graph)?;
    let clause_choice = match a.clause_order {
        ClauseOrder::Lowest => ClauseChoice::LowestId,
        ClauseOrder::Random => ClauseChoice::Random,
    };
    let base = json!({
        "schema": SCHEMA,
        "command": "construct",
        "method": "mt",
        "input_sha256": digest,
        "j": a.j,
        "n": g.n(),
        "seed": a.seed,
        "clause_order": clause_choice,
    });
    let mut code = 0;

    if a.trials <= 1 {
        let config = MtConfig { seed: a.seed, stream: 0, max_resamples: a.max_resamples, clause_choice };
        let mut report = base;
        match mt_construct(&g, a.j, &config) {
            Ok(run) => {
                let valid = verify_1j_set(&g, run.result.vertices(), a.j)?.valid;
                if !valid {
                    return Err(CliError::Internal("resampling ended on an invalid set".into()));
                }
                report["terminated"] = json!(true);
                report["size"] = json!(run.result.cardinality());
                report["resamples"] = json!(run.resample_count);
                report["domination_resamples"] = json!(run.domination_resamples);
                report["upper_resamples"] = json!(run.upper_resamples);
                report["p"] = json!(run.p);
                report["bound"] = json!(run.p * g.n() as f64);
                report["valid"] = json!(valid);
                if a.witness {
                    report["witness"] = json!(run.result);
                }
            }
            Err(LllError::DidNotTerminate { resamples, undominated, overdominated }) => {
                report["terminated"] = json!(false);
                report["resamples"] = json!(resamples);
                report["undominated"] = json!(undominated);
                report["overdominated"] = json!(overdominated);
                report["valid"] = json!(false);
                code = 4;
            }
            Err(e) => return Err(e.into()),
        }
        if timing {
            report["wall_time_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
        }
        emit(out, &report)?;
        return Ok(code);
    }

    let records = mt_trials(&g, a.j, a.seed, a.trials, a.max_resamples, clause_choice)?;
    for r in &records {
        let mut line = base.clone();
        let obj = line.as_object_mut().expect("object");
        for (k, v) in json!(r).as_object().expect("record serializes to an object") {
            obj.insert(k.clone(), v.clone());
        }
        emit(out, &line)?;
        if !r.terminated {
            code = 4;
        }
    }
    let summary = summarize_trials(&records, SIZE_SLACK);
    let mut line = base;
    line["summary"] = json!(summary);
    if timing {
        line["wall_time_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    }
    emit(out, &line)?;
    Ok(code)
}

pub fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (g, digest) = load_graph(&a.graph)?;
    let set = read_text(&a.set)?
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| CliError::Parse(format!("set file: bad vertex id `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let set = Witness::new(set);
    let report = verify_1j_set(&g, set.vertices(), a.j)?;
    emit(
        out,
        &json!({
            "schema": SCHEMA,
            "command": "verify",
            "input_sha256": digest,
            "j": a.j,
            "size": set.cardinality(),
            "valid": report.valid,
            "undominated": report.undominated,
            "overdominated": report.overdominated,
        }),
    )?;
    Ok(if report.valid { 0 } else { 1 })
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.parse().map_err(|_| CliError::Parse(format!("{what}: cannot parse `{s}`")))
}

pub fn generate(a: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut partition = None;
    let (family, g) = if let Some(n) = a.tree {
        if n == 0 {
            return Err(CliError::Precondition("a tree needs at least one vertex".into()));
        }
        ("tree", random_tree(n, a.seed))
    } else if let Some(v) = &a.gnp {
        let p: f64 = num(&v[1], "P")?;
        if !(0.0..=1.0).contains(&p) {
            return Err(CliError::Precondition(format!("edge probability {p} outside [0, 1]")));
        }
        ("gnp", gnp(num(&v[0], "N")?, p, a.seed))
    } else if let Some(v) = &a.regular {
        ("regular", random_regular(num(&v[0], "N")?, num(&v[1], "D")?, a.seed)?)
    } else if let Some(v) = &a.split {
        let (g, part) = random_split(num(&v[0], "N1")?, num(&v[1], "N2")?, num(&v[2], "P")?, a.seed)?;
        partition = Some(part);
        ("split", g)
    } else if let Some(n) = a.path {
        ("path", Graph::path(n))
    } else if let Some(n) = a.cycle {
        if n < 3 {
            return Err(CliError::Precondition("a cycle needs at least 3 vertices".into()));
        }
        ("cycle", Graph::cycle(n))
    } else if let Some(n) = a.complete {
        ("complete", Graph::complete(n))
    } else if let Some(k) = a.star {
        ("star", Graph::star(k))
    } else {
        unreachable!("clap requires one family")
    };

    let text = g.to_edge_list();
    match &a.out {
        Some(path) => {
            write_file(path, &text)?;
            if let (Some(pp), Some(part)) = (&a.partition_out, &partition) {
                write_file(pp, &part.to_text())?;
            }
            emit(
                out,
                &json!({
                    "schema": SCHEMA,
                    "command": "gen",
                    "family": family,
                    "seed": a.seed,
                    "n": g.n(),
                    "m": g.m(),
                    "output_sha256": hex::encode(Sha256::digest(text.as_bytes())),
                }),
            )?;
        }
        None => {
            out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))?;
        }
    }
    Ok(0)
}

pub fn reduce(a: &ReduceArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let inst = Ex3cInstance::parse(&read_text(&a.ex3c)?)?;
    let art = build_reduction(&inst, a.j)?;
    let witness = match &a.emit_witness {
        Some(path) => {
            let cover = read_text(path)?
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(CliError::Parse(format!("cover file: bad triple index `{t}`"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let w = forward_witness(&art, &cover)?;
            if !verify_1j_set(&art.graph, w.vertices(), a.j)?.valid || w.cardinality() != art.k {
                return Err(CliError::Internal("forward witness failed verification".into()));
            }
            Some(w)
        }
        None => None,
    };

    let text = art.graph.to_edge_list();
    write_file(&a.out, &text)?;
    let mut sidecar = json!({
        "schema": SCHEMA,
        "q": inst.q(),
        "t": inst.t(),
        "j": a.j,
        "k": art.k,
        "roles": art.roles,
    });
    if let Some(w) = &witness {
        sidecar["witness"] = json!(w);
        let ids: Vec<String> = w.vertices().iter().map(usize::to_string).collect();
        write_file(&with_path(&a.out, ".witness"), &(ids.join(" ") + "\n"))?;
    }
    write_file(&with_path(&a.out, ".json"), &(sidecar.to_string() + "\n"))?;
    emit(
        out,
        &json!({
            "schema": SCHEMA,
            "command": "reduce",
            "q": inst.q(),
            "t": inst.t(),
            "j": a.j,
            "k": art.k,
            "n": art.graph.n(),
            "m": art.graph.m(),
            "output_sha256": hex::encode(Sha256::digest(text.as_bytes())),
            "witness_size": witness.as_ref().map(Witness::cardinality),
        }),
    )?;
    Ok(0)
}
