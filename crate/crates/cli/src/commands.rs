use std::io::Read;
use std::path::{Path, PathBuf};

use bicover_core::automata::{
    cover_from_nfa, eliminate_epsilon, graph_of, language_of, nfa_from_cover, nfa_from_network, Nfa,
    TwoLetterLanguage,
};
use bicover_core::biclique::{BicliqueCover, CoverJson};
use bicover_core::families::{self, is_permutation_invariant, midpoint_cut_cover, perm_invariant_network, BitVectorGraphSpec};
use bicover_core::measures::{cov_lower_bound_with, induced_ratio_max_with, kappa_with, max_balanced_k_with};
use bicover_core::rational::{self, Rational};
use bicover_core::rectifier::{cover_to_depth2, exact_rect_search, RectBudget};
use bicover_core::report::bound_report;
use bicover_core::setcover::{
    biclique_instance_with, eta_star, eta_star_sampled, exact_opt, greedy, lp_solve, verify_chain, BicliqueInstance,
    SetCoverInstance, MAX_ETA_UNIVERSE,
};
use bicover_core::{BipartiteGraph, Error, RectifierNetwork};
use serde_json::{json, Value};

use crate::output::{columns, render};
use crate::{CliError, Format, GraphInput, Options};

type Out = Result<String, CliError>;

/// Random subsets drawn when eta* is too large to enumerate.
const ETA_SAMPLES: u64 = 4096;

/// Largest dimension for which the bridge also tries the layered network.
const BRIDGE_MAX_DIMENSION: usize = 4;

fn read_text(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io(p.to_path_buf(), e)),
    }
}

fn read_stdin() -> Result<String, CliError> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| CliError::Io(PathBuf::from("-"), e))?;
    Ok(s)
}

fn load_graph(o: &Options, input: &GraphInput) -> Result<BipartiteGraph, CliError> {
    match &input.family {
        Some(name) => Ok(families::from_name(name, o.seed)?),
        None => Ok(BipartiteGraph::from_json_str(&read_text(input.graph.as_deref())?)?),
    }
}

fn r(x: &Rational) -> Value {
    Value::String(rational::format(x))
}

/// Runs an optional computation. A resource limit skips it (recording why)
/// unless `--exact` asks for a failure instead.
fn optional<T>(o: &Options, skipped: &mut Vec<String>, what: &str, f: impl FnOnce() -> bicover_core::Result<T>) -> Result<Option<T>, CliError> {
    match f() {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::ResourceLimit { .. }) if !o.exact => {
            skipped.push(format!("{what}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn edge_guard(o: &Options, g: &BipartiteGraph, what: &str) -> bicover_core::Result<()> {
    if g.edge_count() > o.guard_edges {
        return Err(Error::ResourceLimit {
            what: format!("{what} needs |E| <= --guard-edges"),
            limit: o.guard_edges as u64,
        });
    }
    Ok(())
}

pub fn gen(o: &Options, family: &str) -> Out {
    let g = families::from_name(family, o.seed)?;
    let value = serde_json::to_value(g.to_json()).expect("graph JSON");
    match o.format {
        Format::Table => {
            let summary = json!({
                "a": g.a_len(),
                "b": g.b_len(),
                "edges": g.edge_count(),
                "family": family,
            });
            render(o.format, &summary, None)
        }
        _ => render(o.format, &value, Some(g.to_dot())),
    }
}

/// The biclique instance for greedy covers and eta*: every biclique when
/// `|E|` is within `--guard-edges`, otherwise only the maximal ones.
fn cover_instance(o: &Options, g: &BipartiteGraph) -> bicover_core::Result<(BicliqueInstance, bool)> {
    let all = g.edge_count() <= o.guard_edges;
    Ok((biclique_instance_with(g, !all, o.guard_subsets)?, all))
}

pub fn measure(o: &Options, input: &GraphInput) -> Out {
    let g = load_graph(o, input)?;
    if g.edge_count() == 0 {
        return Err(CliError::Core(Error::Domain("graph has no edges".into())));
    }
    let guard = o.guard_subsets;
    let kappa = kappa_with(&g, guard)?;
    let k = max_balanced_k_with(&g, guard)?;
    let lb = cov_lower_bound_with(&g, guard)?;
    let mut skipped = Vec::new();

    let (greedy_inst, all_sets) = cover_instance(o, &g)?;
    let greedy_sol = greedy(&greedy_inst.instance)?;

    let mut cov_exact = Value::Null;
    let mut eta = Value::Null;
    let mut eta_exact = Value::Null;
    let mut lp = Value::Null;
    let mut induced = Value::Null;
    let mut rect = Value::Null;
    if !o.greedy_only {
        let exact = optional(o, &mut skipped, "exact cover", || {
            edge_guard(o, &g, "exact cover")?;
            let bi = biclique_instance_with(&g, false, guard)?;
            exact_opt(&bi.instance)
        })?;
        if let Some(sol) = exact {
            cov_exact = r(&sol.total_cost);
        }
        let inst = &greedy_inst.instance;
        if inst.len() <= MAX_ETA_UNIVERSE {
            eta = r(&eta_star(inst)?);
            eta_exact = json!(true);
        } else if o.exact {
            return Err(Error::ResourceLimit { what: "universe size for exact eta*".into(), limit: MAX_ETA_UNIVERSE as u64 }.into());
        } else {
            eta = r(&eta_star_sampled(inst, ETA_SAMPLES, o.seed)?.value);
            eta_exact = json!(false);
        }
        if let Some(sol) = optional(o, &mut skipped, "LP relaxation", || lp_solve(inst))? {
            lp = r(&sol.value);
        }
        if let Some(ir) = optional(o, &mut skipped, "induced ratio", || induced_ratio_max_with(&g, guard))? {
            induced = json!({
                "value": r(&ir.value),
                "a": ir.a.iter().map(|&i| g.a_labels()[i].clone()).collect::<Vec<_>>(),
                "b": ir.b.iter().map(|&j| g.b_labels()[j].clone()).collect::<Vec<_>>(),
            });
        }
        let search = optional(o, &mut skipped, "exact network search", || {
            edge_guard(o, &g, "exact network search")?;
            exact_rect_search(&g, RectBudget::default())
        })?;
        if let Some(s) = search {
            rect = json!({"lower": s.lower, "upper": s.upper, "exact": s.exact});
        }
    }

    let value = json!({
        "a": g.a_len(),
        "b": g.b_len(),
        "edges": g.edge_count(),
        "stripped": g.stripped(),
        "kappa": r(&kappa),
        "max_balanced_k": k,
        "cov_lower": r(&lb.cov),
        "rect_lower": r(&lb.rect),
        "cov_exact": cov_exact,
        "cov_greedy": r(&greedy_sol.total_cost),
        "instance": if all_sets { "all bicliques" } else { "maximal bicliques" },
        "eta_star": eta,
        "eta_star_exact": eta_exact,
        "lp": lp,
        "induced_ratio_max": induced,
        "rect": rect,
        "skipped": skipped,
    });
    render(o.format, &value, Some(g.to_dot()))
}

pub fn chain(o: &Options, instance: Option<&Path>, family: Option<&str>) -> Out {
    let inst = match family {
        Some(name) => {
            let g = families::from_name(name, o.seed)?;
            biclique_instance_with(&g, false, o.guard_subsets)?.instance
        }
        None => SetCoverInstance::from_json_str(&read_text(instance)?)?,
    };
    let report = verify_chain(&inst)?;
    let mut value = serde_json::to_value(&report).expect("chain report JSON");
    value["sets"] = json!(inst.sets().len());
    value["holds"] = json!(true);
    render(o.format, &value, None)
}

fn words_match(m: &Nfa, l: &TwoLetterLanguage) -> Result<bool, CliError> {
    Ok(m.language_enumerate()? == l.word_set())
}

fn network_entry(kind: &str, net: &RectifierNetwork, l: &TwoLetterLanguage) -> Result<(Value, Nfa), CliError> {
    let m = nfa_from_network(net, l)?;
    let e = eliminate_epsilon(&m);
    let value = json!({
        "kind": kind,
        "network_size": net.size(),
        "nfa_size": m.size(),
        "recognizes": words_match(&m, l)?,
        "epsilon_free_size": e.size(),
        "epsilon_free_recognizes": words_match(&e, l)?,
    });
    Ok((value, m))
}

pub fn bridge(o: &Options, input: Option<&Path>, family: Option<&str>) -> Out {
    let (l, g) = match family {
        Some(name) => {
            let g = families::from_name(name, o.seed)?;
            (language_of(&g)?, g)
        }
        None => {
            let text = read_text(input)?;
            let v: Value = serde_json::from_str(&text).map_err(Error::from)?;
            if v.get("first").is_some() {
                let l = TwoLetterLanguage::from_json_str(&text)?;
                (l.clone(), graph_of(&l)?)
            } else {
                let g = BipartiteGraph::from_json_str(&text)?;
                (language_of(&g)?, g)
            }
        }
    };
    let mut skipped = Vec::new();
    let mut cover_exact = false;
    let mut cover: Option<BicliqueCover> = None;
    if !o.greedy_only {
        let exact = optional(o, &mut skipped, "exact cover", || {
            edge_guard(o, &g, "exact cover")?;
            let bi = biclique_instance_with(&g, false, o.guard_subsets)?;
            let sol = exact_opt(&bi.instance)?;
            Ok(bi.cover(&sol))
        })?;
        if let Some(c) = exact {
            cover = Some(c);
            cover_exact = true;
        }
    }
    let cover = match cover {
        Some(c) => c,
        None => {
            let (bi, _) = cover_instance(o, &g)?;
            bi.cover(&greedy(&bi.instance)?)
        }
    };
    let m_cover = nfa_from_cover(&cover, &l)?;
    let back = cover_from_nfa(&m_cover)?;

    let mut networks = Vec::new();
    let mut automata = vec![m_cover.clone()];
    let depth2 = cover_to_depth2(&g, &cover)?;
    let (entry, m) = network_entry("depth2", &depth2, &l)?;
    networks.push(entry);
    automata.push(m);
    if let Ok(Some(spec)) = is_permutation_invariant(&g) {
        if spec.dimension() <= BRIDGE_MAX_DIMENSION {
            let pn = perm_invariant_network(&spec)?;
            let (entry, m) = network_entry("layered", &pn.network, &l)?;
            networks.push(entry);
            automata.push(m);
        }
    }
    let words = l.word_set();
    let mut equivalent = true;
    for m in &automata {
        equivalent &= m.language_enumerate()? == words;
    }
    let value = json!({
        "words": l.len(),
        "cover": {
            "weight": cover.weight(),
            "exact": cover_exact,
            "bicliques": serde_json::to_value(cover.to_json(&g)).expect("cover JSON"),
        },
        "nfa_from_cover": {
            "size": m_cover.size(),
            "epsilon_free": m_cover.is_epsilon_free(),
            "recognizes": words_match(&m_cover, &l)?,
            "round_trip_weight": back.cover.weight(),
            "nfa": serde_json::to_value(m_cover.to_json()).expect("NFA JSON"),
        },
        "networks": networks,
        "equivalent": equivalent,
        "skipped": skipped,
    });
    render(o.format, &value, Some(m_cover.to_dot()))
}

pub fn report(o: &Options, graph: &Path, network: &Path, cover: &Path) -> Out {
    let g = BipartiteGraph::from_json_str(&read_text(Some(graph))?)?;
    let net = RectifierNetwork::from_json_str(&read_text(Some(network))?)?;
    let cj: CoverJson = serde_json::from_str(&read_text(Some(cover))?).map_err(Error::from)?;
    let c = BicliqueCover::from_json(&g, &cj)?;
    let rep = bound_report(&g, &net, &c, o.guard_subsets)?;
    let value = serde_json::to_value(&rep).expect("report JSON");
    render(o.format, &value, Some(net.to_dot()))
}

pub fn blowup(o: &Options, dmax: usize) -> Out {
    if dmax < 2 || dmax % 2 == 1 || dmax > families::MAX_DIMENSION {
        return Err(Error::Domain(format!("dmax must be even and in 2..={}", families::MAX_DIMENSION)).into());
    }
    let mut rows = Vec::new();
    let mut ratios: Vec<Rational> = Vec::new();
    for d in (2..=dmax).step_by(2) {
        let spec = BitVectorGraphSpec::orthogonal(d)?;
        let g = spec.graph()?;
        let kappa = kappa_with(&g, o.guard_subsets)?;
        let cov_lower = rational::int(g.edge_count() as i64) / &kappa;
        let pn = perm_invariant_network(&spec)?;
        let (mid, mid_bound) = midpoint_cut_cover(&pn, &g)?;
        let size = pn.network.size();
        let ratio = &cov_lower / rational::int(size as i64);
        rows.push(json!({
            "d": d,
            "n": g.vertex_count(),
            "edges": g.edge_count(),
            "kappa": r(&kappa),
            "cov_lower": r(&cov_lower),
            "network_size": size,
            "network_bound": pn.size_bound.to_string(),
            "midpoint_weight": mid.weight(),
            "midpoint_bound": mid_bound.to_string(),
            "ratio": r(&ratio),
            "ratio_approx": format!("{:.6}", rational::to_f64(&ratio)),
        }));
        ratios.push(ratio);
    }
    let monotone = ratios.windows(2).all(|w| w[0] < w[1]);
    let value = json!({ "rows": rows, "ratio_increasing": monotone });
    match o.format {
        Format::Table => {
            let headers = ["d", "n", "|E|", "kappa", "cov_lower", "net_size", "mid_weight", "ratio", "ratio~"];
            let keys = ["d", "n", "edges", "kappa", "cov_lower", "network_size", "midpoint_weight", "ratio", "ratio_approx"];
            let body: Vec<Vec<Value>> = rows.iter().map(|row| keys.iter().map(|k| row[*k].clone()).collect()).collect();
            Ok(columns(&headers, &body) + &format!("ratio increasing: {monotone}\n"))
        }
        _ => render(o.format, &value, None),
    }
}
