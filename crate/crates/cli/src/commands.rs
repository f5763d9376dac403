use std::path::Path;

use occam_core::family_file::FamilyFile;
use occam_core::fusion::{fusion_sequence_group, FusionReport, FusionTerm};
use occam_core::group_radius::{occ_of_group, radius_report, subgroup_radius};
use occam_core::groups::{make_group, FiniteGroup, SubgroupMask};
use occam_core::occ::{best_construction, exact_occ, theorem_upper_bound, verify_family_radius, OccInstance};
use occam_core::published::{printed_fusion, printed_occ, FUSION_TABLE, OCC_TABLE};
use occam_core::{Budget, Term, TermStatus};
use serde::Serialize;

use crate::table::{Format, Rendered, Table};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn term_cell(t: Term, format: Format) -> String {
    match (t.value, t.status, format) {
        (Some(v), _, _) => v.to_string(),
        (None, _, Format::Text) => t.to_string(),
        (None, TermStatus::NoMaximum, _) => "no_maximum".into(),
        (None, _, _) => "budget_exceeded".into(),
    }
}

fn instance(m: Option<usize>, n: Option<usize>, r: Option<usize>) -> Result<OccInstance> {
    let (Some(m), Some(n), Some(r)) = (m, n, r) else {
        return Err(usage("--m, --n and --r are required"));
    };
    Ok(OccInstance::new(m, n, r)?)
}

pub fn parse_group(spec: Option<&str>) -> Result<FiniteGroup> {
    let spec = spec.ok_or_else(|| usage("--group is required"))?;
    Ok(make_group(spec)?)
}

#[derive(Serialize)]
struct BoundDoc<'a> {
    p: u64,
    x: &'a [u64],
}

pub fn occ_bound(m: Option<usize>, n: Option<usize>, r: Option<usize>) -> Result<Rendered> {
    let inst = instance(m, n, r)?;
    let w = theorem_upper_bound(&inst)?;
    let xs = w.x.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    let mut table = Table::new(["m", "n", "r", "p", "x"]);
    table.push([inst.m().to_string(), inst.n().to_string(), inst.r().to_string(), w.p.to_string(), xs]);
    Ok(Rendered::new(&BoundDoc { p: w.p, x: &w.x }, table))
}

#[derive(Serialize)]
struct ConstructionDoc {
    m: usize,
    n: usize,
    r: usize,
    size: usize,
    verified: bool,
    family: FamilyFile,
}

pub fn occ_construct(m: Option<usize>, n: Option<usize>, r: Option<usize>) -> Result<Rendered> {
    let inst = instance(m, n, r)?;
    let family = best_construction(&inst)?;
    let verified = verify_family_radius(&family, inst.r())?;
    let alphabet: Vec<String> = (0..inst.n()).map(|i| if inst.n() <= 26 { char::from(b'a' + i as u8).to_string() } else { i.to_string() }).collect();
    let file = FamilyFile::from_family(&family, alphabet.clone());
    let mut table = Table::new(["word", "radius"]);
    for (i, f) in family.functions().iter().enumerate() {
        table.push([f.render(&alphabet), family.radius(i)?.value.to_string()]);
    }
    let doc = ConstructionDoc { m: inst.m(), n: inst.n(), r: inst.r(), size: family.len(), verified, family: file };
    let note = format!("{} functions, every radius <= {}: {}", family.len(), inst.r(), verified);
    Ok(Rendered::new(&doc, table).note(note))
}

pub fn occ_exact(m: Option<usize>, n: Option<usize>, r: Option<usize>, budget: Budget) -> Result<Rendered> {
    let inst = instance(m, n, r)?;
    let cert = exact_occ(&inst, budget)?;
    let doc = cert.document();
    let exact = doc.exact.map_or_else(|| "-".to_string(), |e| e.to_string());
    let method = serde_json::to_value(doc.method)?.as_str().unwrap_or_default().to_string();
    let mut table = Table::new(["m", "n", "r", "lower", "upper", "exact", "method"]);
    table.push([doc.m.to_string(), doc.n.to_string(), doc.r.to_string(), doc.lower.to_string(), doc.upper.to_string(), exact, method]);
    Ok(Rendered::new(&doc, table))
}

/// A 0/1 word over the elements, or comma-separated generators given by label or index.
pub fn parse_subgroup(g: &FiniteGroup, text: &str) -> Result<SubgroupMask> {
    if text.len() == g.order() && text.bytes().all(|b| b == b'0' || b == b'1') {
        let bits = text.bytes().enumerate().filter(|(_, b)| *b == b'1').fold(0u64, |m, (i, _)| m | 1 << i);
        return Ok(g.subgroup(bits)?);
    }
    let mut seed = 0u64;
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let x = g
            .labels()
            .iter()
            .position(|l| l == tok)
            .or_else(|| tok.parse::<usize>().ok().filter(|&i| i < g.order()))
            .ok_or_else(|| usage(format!("unknown element {tok:?} of {}", g.name())))?;
        seed |= 1 << x;
    }
    Ok(g.closure(seed))
}

pub fn group_radius(g: &FiniteGroup, subgroup: Option<&str>) -> Result<Rendered> {
    let mut report = radius_report(g)?;
    if let Some(text) = subgroup {
        let h = parse_subgroup(g, text)?;
        let r = subgroup_radius(g, h)?;
        report.entries.retain(|e| e.mask == h.bits());
        debug_assert_eq!(report.entries[0].radius, r.value);
    }
    let mut table = Table::new(["chi", "radius", "witness"]);
    for e in &report.entries {
        table.push([e.chi.clone(), e.radius.to_string(), format!("{{{}}}", e.witness_elements.join(","))]);
    }
    Ok(Rendered::new(&report, table))
}

#[derive(Serialize)]
struct OccDoc {
    group: String,
    order: usize,
    rank: usize,
    occ: usize,
    witness: Vec<String>,
    printed_occ: Option<usize>,
    occ_discrepancy: bool,
}

fn occ_doc(g: &FiniteGroup) -> OccDoc {
    let occ = occ_of_group(g);
    let printed = printed_occ(g.name()).map(|p| p.2);
    OccDoc {
        group: g.name().to_string(),
        order: g.order(),
        rank: g.rank(),
        occ: occ.value,
        witness: occ.witness.iter().map(|x| g.label(x).to_string()).collect(),
        printed_occ: printed,
        occ_discrepancy: printed.is_some_and(|p| p != occ.value),
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

pub fn group_occ(g: &FiniteGroup) -> Result<Rendered> {
    let doc = occ_doc(g);
    let mut table = Table::new(["group", "order", "rank", "occ", "witness", "printed_occ", "occ_discrepancy"]);
    table.push([
        doc.group.clone(),
        doc.order.to_string(),
        doc.rank.to_string(),
        doc.occ.to_string(),
        format!("{{{}}}", doc.witness.join(",")),
        opt(doc.printed_occ),
        doc.occ_discrepancy.to_string(),
    ]);
    let mut out = Rendered::new(&doc, table);
    if doc.occ_discrepancy {
        out = out.note(format!("note: computed Occ({}) = {} differs from the printed {}", doc.group, doc.occ, opt(doc.printed_occ)));
    }
    Ok(out)
}

fn fusion_header(k: usize) -> Vec<String> {
    std::iter::once("group".to_string()).chain((0..=k).map(|i| format!("F{i}"))).collect()
}

pub fn group_fusion(g: &FiniteGroup, terms: usize, budget: Budget, format: Format) -> Result<Rendered> {
    let report: FusionReport = fusion_sequence_group(g, terms, budget)?;
    let mut table = Table::new(fusion_header(terms));
    table.push(std::iter::once(report.group.clone()).chain(report.terms.iter().map(|t| term_cell(t.term(), format))));
    let exceeded = report.any_exceeded();
    let mut out = Rendered::new(&report, table).exceeded(exceeded);
    if let Some(printed) = printed_fusion(g.name()) {
        let cells: Vec<String> = printed.iter().map(|v| v.map_or_else(|| "?".into(), |v| v.to_string())).collect();
        out = out.note(format!("printed: {}", cells.join(", ")));
    }
    Ok(out)
}

fn load_family(path: Option<&Path>) -> Result<occam_core::FunctionFamily> {
    let path = path.ok_or_else(|| usage("--family is required"))?;
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(FamilyFile::parse(&text)?.to_family()?)
}

#[derive(Serialize)]
struct MemberRadius {
    index: usize,
    function: String,
    radius: usize,
    witness: String,
}

pub fn poset_radius(path: Option<&Path>) -> Result<Rendered> {
    let family = load_family(path)?;
    let file = FamilyFile::from_family(&family, FamilyFile::default_alphabet(family.codomain_size()));
    let mut rows = Vec::new();
    let mut table = Table::new(["index", "function", "radius", "witness"]);
    for (index, word) in file.functions.iter().enumerate() {
        let r = family.radius(index)?;
        let function = match word {
            occam_core::family_file::WordField::Word(w) => w.clone(),
            occam_core::family_file::WordField::Symbols(s) => s.join(" "),
        };
        let row = MemberRadius { index, function, radius: r.value, witness: r.witness.to_string() };
        table.push([index.to_string(), row.function.clone(), row.radius.to_string(), row.witness.clone()]);
        rows.push(row);
    }
    Ok(Rendered::new(&rows, table))
}

#[derive(Serialize)]
struct PosetFusionDoc {
    members: usize,
    terms: Vec<FusionTerm>,
    budget: u64,
}

pub fn poset_fusion(path: Option<&Path>, terms: usize, budget: Budget, format: Format) -> Result<Rendered> {
    let family = load_family(path)?;
    let seq = family.fusion_sequence(terms, budget)?;
    let terms_out: Vec<FusionTerm> = seq.iter().enumerate().map(|(index, t)| FusionTerm { index, value: t.value, status: t.status }).collect();
    let exceeded = seq.iter().any(|t| t.status == TermStatus::BudgetExceeded);
    let mut table = Table::new((0..=terms).map(|i| format!("F{i}")));
    table.push(seq.iter().map(|&t| term_cell(t, format)));
    let doc = PosetFusionDoc { members: family.len(), terms: terms_out, budget: budget.0 };
    Ok(Rendered::new(&doc, table).exceeded(exceeded))
}

/// Groups of the printed tables plus the trivial group, by order.
pub fn census_groups(max_order: usize) -> Result<Vec<FiniteGroup>> {
    let mut specs: Vec<&str> = vec!["Z1"];
    for s in OCC_TABLE.iter().map(|r| r.0).chain(FUSION_TABLE.iter().map(|r| r.0)) {
        if !specs.contains(&s) {
            specs.push(s);
        }
    }
    let mut groups = specs.into_iter().map(make_group).collect::<std::result::Result<Vec<_>, _>>()?;
    groups.retain(|g| g.order() <= max_order);
    groups.sort_by_key(FiniteGroup::order);
    Ok(groups)
}

#[derive(Serialize)]
struct CensusRow {
    group: String,
    order: usize,
    rank: usize,
    occ: usize,
    printed_occ: Option<usize>,
    occ_discrepancy: bool,
    terms: Vec<FusionTerm>,
}

pub fn census(max_order: usize, terms: usize, budget: Budget, format: Format) -> Result<Rendered> {
    if max_order > 64 {
        return Err(usage(format!("--max-order {max_order} exceeds the order cap 64")));
    }
    let mut rows = Vec::new();
    let header = ["group", "order", "rank", "occ", "printed_occ", "occ_discrepancy"].map(String::from).into_iter().chain((0..=terms).map(|i| format!("F{i}")));
    let mut table = Table::new(header);
    let mut notes = Vec::new();
    for g in census_groups(max_order)? {
        let occ = occ_doc(&g);
        let fusion = fusion_sequence_group(&g, terms, budget)?;
        let row = CensusRow {
            group: occ.group,
            order: occ.order,
            rank: occ.rank,
            occ: occ.occ,
            printed_occ: occ.printed_occ,
            occ_discrepancy: occ.occ_discrepancy,
            terms: fusion.terms,
        };
        if row.occ_discrepancy {
            notes.push(format!("note: computed Occ({}) = {} differs from the printed {}", row.group, row.occ, opt(row.printed_occ)));
        }
        let fixed = [row.group.clone(), row.order.to_string(), row.rank.to_string(), row.occ.to_string(), opt(row.printed_occ), row.occ_discrepancy.to_string()];
        table.push(fixed.into_iter().chain(row.terms.iter().map(|t| term_cell(t.term(), format))));
        rows.push(row);
    }
    let exceeded = rows.iter().any(|r| r.terms.iter().any(|t| t.status == TermStatus::BudgetExceeded));
    let mut out = Rendered::new(&rows, table).exceeded(exceeded);
    for n in notes {
        out = out.note(n);
    }
    Ok(out)
}
