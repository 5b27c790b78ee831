//! One function per subcommand. Each returns a [`Report`] holding the text
//! to print; nothing here touches stdout directly.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use atomdec::decomposition::{
    all_decompositions_lazy, metric_d, minimal_decompositions_lazy, nmin_closed_form,
    nmin_closed_form_with, nmin_oracle,
};
use atomdec::factorization::count_all_decompositions;
use atomdec::graph::graph_of_partition;
use atomdec::partition::all_partitions;
use atomdec::properties::{check_with, CheckOptions};
use atomdec::red::{oracle_table, reachable_count, CountEngine, OracleEngine, RecursiveEngine};
use atomdec::{
    BigCount, CountQuery, Counted, Engine, FinestPolicy, Limits, Property, PropertyReport,
    RedAtomSet, SetPartition,
};
use serde::Serialize;

use crate::envelope::OutputEnvelope;
use crate::labels::Labels;
use crate::{
    CheckArgs, CliError, DecompsArgs, EngineChoice, EnumerateArgs, ExportDotArgs, Format,
    MetricArgs, NminArgs, RedCountArgs, RedTableArgs, Report,
};

type CmdResult = Result<Report, CliError>;

fn parse_partition(text: &str, labels: &Labels) -> Result<SetPartition, CliError> {
    let pi: SetPartition = labels.resolve(text).parse()?;
    labels.check_n(pi.n())?;
    Ok(pi)
}

fn parse_reds(n: usize, text: &str, labels: &Labels) -> Result<RedAtomSet, CliError> {
    labels.check_n(n)?;
    Ok(RedAtomSet::parse(n, &labels.resolve(text))?)
}

fn closed(value: BigCount) -> Counted {
    Counted {
        value,
        engine: Engine::ClosedForm,
    }
}

/// Echo of a partition argument.
#[derive(Serialize)]
struct PartitionInput {
    partition: SetPartition,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    labeled: Option<String>,
}

impl PartitionInput {
    fn new(pi: &SetPartition, labels: &Labels) -> Self {
        PartitionInput {
            partition: pi.clone(),
            n: pi.n(),
            labeled: labels.render_partition(pi),
        }
    }
}

#[derive(Serialize)]
struct LabelsEcho<T: Serialize> {
    #[serde(flatten)]
    inner: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

fn echo<T: Serialize>(inner: T, labels: &Labels) -> LabelsEcho<T> {
    LabelsEcho {
        inner,
        labels: (!labels.is_empty()).then(|| labels.names().to_vec()),
    }
}

fn engines(counts: &[&Counted]) -> BTreeSet<Engine> {
    counts.iter().map(|c| c.engine).collect()
}

// ---------------------------------------------------------------- enumerate

#[derive(Serialize)]
struct EnumeratedPartition {
    partition: SetPartition,
    rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    labeled: Option<String>,
    nmin: Counted,
}

#[derive(Serialize)]
struct EnumerateResult {
    /// Partitions matching the rank filter.
    total: usize,
    emitted: usize,
    truncated: bool,
    partitions: Vec<EnumeratedPartition>,
}

pub fn cmd_enumerate(args: &EnumerateArgs, labels: &Labels) -> CmdResult {
    labels.check_n(args.n)?;
    let limit = args.limit.unwrap_or(usize::MAX);
    let mut total = 0;
    let mut partitions = Vec::new();
    for pi in all_partitions(args.n)?.filter(|p| args.rank.is_none_or(|r| p.rank() == r)) {
        total += 1;
        if partitions.len() < limit {
            partitions.push(EnumeratedPartition {
                rank: pi.rank(),
                labeled: labels.render_partition(&pi),
                nmin: closed(nmin_closed_form(&pi)),
                partition: pi,
            });
        }
    }
    let result = EnumerateResult {
        total,
        emitted: partitions.len(),
        truncated: partitions.len() < total,
        partitions,
    };
    let provenance = if result.emitted > 0 {
        BTreeSet::from([Engine::ClosedForm])
    } else {
        BTreeSet::new()
    };
    #[derive(Serialize)]
    struct Inputs {
        n: usize,
        rank: Option<usize>,
        limit: Option<usize>,
    }
    let inputs = echo(
        Inputs {
            n: args.n,
            rank: args.rank,
            limit: args.limit,
        },
        labels,
    );
    Ok(Report::ok(
        OutputEnvelope::new("enumerate", inputs, result, provenance).render(),
    ))
}

// --------------------------------------------------------------------- nmin

#[derive(Serialize)]
struct NminResult {
    block_sizes: Vec<usize>,
    closed_form: Counted,
    oracle: Option<Counted>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_skipped: Option<String>,
    /// `null` when the oracle did not run.
    agree: Option<bool>,
}

pub fn cmd_nmin(args: &NminArgs, labels: &Labels) -> CmdResult {
    let pi = parse_partition(&args.partition, labels)?;
    let convention = args.convention.into();
    let closed_form = closed(nmin_closed_form_with(&pi, convention));
    // the oracle counts spanning forests; the empty forest of m_X is the
    // one place the conventions differ
    let oracle = match nmin_oracle(&pi) {
        Ok(v) if pi.is_finest() && convention == atomdec::NminConvention::EmptyProduct => {
            Ok(v + BigCount::one())
        }
        other => other,
    };
    let (oracle, oracle_skipped) = match oracle {
        Ok(value) => (
            Some(Counted {
                value,
                engine: Engine::Oracle,
            }),
            None,
        ),
        Err(e) if e.is_resource_limit() => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let agree = oracle.as_ref().map(|o| o.value == closed_form.value);
    let mut provenance = engines(&[&closed_form]);
    provenance.extend(oracle.as_ref().map(|o| o.engine));
    let failed = agree == Some(false);
    let result = NminResult {
        block_sizes: pi.block_sizes(),
        closed_form,
        oracle,
        oracle_skipped,
        agree,
    };
    #[derive(Serialize)]
    struct Inputs {
        #[serde(flatten)]
        partition: PartitionInput,
        convention: &'static str,
    }
    let inputs = echo(
        Inputs {
            partition: PartitionInput::new(&pi, labels),
            convention: match args.convention {
                crate::Convention::FinestZero => "finest-zero",
                crate::Convention::EmptyProduct => "empty-product",
            },
        },
        labels,
    );
    Ok(Report {
        stdout: OutputEnvelope::new("nmin", inputs, result, provenance).render(),
        stderr: if failed {
            "error: closed form and oracle disagree\n".into()
        } else {
            String::new()
        },
        failed,
    })
}

// ------------------------------------------------------------------- metric

#[derive(Serialize)]
struct MetricResult {
    d: Counted,
    meet: SetPartition,
    nmin_left: Counted,
    nmin_right: Counted,
    nmin_meet: Counted,
}

pub fn cmd_metric(args: &MetricArgs, labels: &Labels) -> CmdResult {
    let left = parse_partition(&args.left, labels)?;
    let right = parse_partition(&args.right, labels)?;
    if left.n() != right.n() {
        return Err(CliError::Usage(format!(
            "partitions are on {} and {} elements",
            left.n(),
            right.n()
        )));
    }
    let meet = left.meet(&right)?;
    let result = MetricResult {
        d: closed(metric_d(&left, &right)?),
        nmin_left: closed(nmin_closed_form(&left)),
        nmin_right: closed(nmin_closed_form(&right)),
        nmin_meet: closed(nmin_closed_form(&meet)),
        meet,
    };
    #[derive(Serialize)]
    struct Inputs {
        left: PartitionInput,
        right: PartitionInput,
    }
    let inputs = echo(
        Inputs {
            left: PartitionInput::new(&left, labels),
            right: PartitionInput::new(&right, labels),
        },
        labels,
    );
    let provenance = engines(&[&result.d]);
    Ok(Report::ok(
        OutputEnvelope::new("metric", inputs, result, provenance).render(),
    ))
}

// ------------------------------------------------------------------ decomps

#[derive(Serialize)]
struct DecompRecord {
    atoms: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    labeled: Option<String>,
    size: usize,
    minimal: bool,
}

#[derive(Serialize)]
struct DecompsResult {
    /// `minimal` lists spanning forests in Prüfer order; `all` lists every
    /// decomposition ordered by the atoms left out.
    order: &'static str,
    emitted: usize,
    total: Option<Counted>,
    #[serde(skip_serializing_if = "Option::is_none")]
    total_skipped: Option<String>,
    truncated: bool,
    records: Vec<DecompRecord>,
}

pub fn cmd_decomps(args: &DecompsArgs, labels: &Labels) -> CmdResult {
    let pi = parse_partition(&args.partition, labels)?;
    let limit = args.limit;
    let (total, total_skipped, records, more) = if args.minimal_only {
        let mut it = minimal_decompositions_lazy(&pi, FinestPolicy::Skip);
        let records: Vec<_> = it.by_ref().take(limit).collect();
        let more = it.next().is_some();
        (Some(closed(nmin_closed_form(&pi))), None, records, more)
    } else {
        let mut it = all_decompositions_lazy(&pi)?;
        let records: Vec<_> = it.by_ref().take(limit).collect();
        let more = it.next().is_some();
        match count_all_decompositions(&pi) {
            Ok(value) => (
                Some(Counted {
                    value,
                    engine: Engine::Oracle,
                }),
                None,
                records,
                more,
            ),
            Err(e) if e.is_resource_limit() => (None, Some(e.to_string()), records, more),
            Err(e) => return Err(e.into()),
        }
    };
    let records: Vec<DecompRecord> = records
        .iter()
        .map(|d| DecompRecord {
            atoms: atomdec::partition::format_atom_list(d.atoms()),
            labeled: labels.render_atoms(d.atoms()),
            size: d.len(),
            minimal: d.is_minimal(),
        })
        .collect();
    let provenance: BTreeSet<Engine> = total.iter().map(|c| c.engine).collect();
    let result = DecompsResult {
        order: if args.minimal_only { "minimal" } else { "all" },
        emitted: records.len(),
        total,
        total_skipped,
        truncated: more,
        records,
    };
    #[derive(Serialize)]
    struct Inputs {
        #[serde(flatten)]
        partition: PartitionInput,
        minimal_only: bool,
        limit: usize,
    }
    let inputs = echo(
        Inputs {
            partition: PartitionInput::new(&pi, labels),
            minimal_only: args.minimal_only,
            limit,
        },
        labels,
    );
    let stderr = if result.truncated {
        format!("note: output truncated after {} records\n", result.emitted)
    } else {
        String::new()
    };
    Ok(Report {
        stdout: OutputEnvelope::new("decomps", inputs, result, provenance).render(),
        stderr,
        failed: false,
    })
}

// ---------------------------------------------------------------- red-count

#[derive(Serialize)]
struct RedInputs {
    n: usize,
    reds: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    labeled: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
    engine: &'static str,
    nonempty_joins: bool,
}

fn engine_name(e: EngineChoice) -> &'static str {
    match e {
        EngineChoice::Oracle => "oracle",
        EngineChoice::Recursive => "recursive",
        EngineChoice::Both => "both",
    }
}

#[derive(Serialize)]
struct ReachableTotal {
    #[serde(flatten)]
    count: Counted,
    nonempty_joins: bool,
}

fn reachable(reds: &RedAtomSet, nonempty: bool) -> Result<ReachableTotal, CliError> {
    Ok(ReachableTotal {
        count: closed(reachable_count(reds, nonempty)?),
        nonempty_joins: nonempty,
    })
}

#[derive(Serialize)]
struct RedCountResult {
    rank: usize,
    size: usize,
    counts: Vec<Counted>,
    agree: Option<bool>,
    reachable_total: ReachableTotal,
}

/// The engines a choice stands for, in a fixed order.
fn engines_for(choice: EngineChoice) -> Vec<Box<dyn CountEngine>> {
    let oracle = || {
        Box::new(OracleEngine {
            limits: *Limits::global(),
        }) as Box<dyn CountEngine>
    };
    let recursive = || Box::new(RecursiveEngine::new(*Limits::global())) as Box<dyn CountEngine>;
    match choice {
        EngineChoice::Oracle => vec![oracle()],
        EngineChoice::Recursive => vec![recursive()],
        EngineChoice::Both => vec![oracle(), recursive()],
    }
}

pub fn cmd_red_count(args: &RedCountArgs, labels: &Labels) -> CmdResult {
    let mut engines = engines_for(args.engine);
    cmd_red_count_with(args, labels, &mut engines)
}

/// `red-count` with caller-supplied engines. With more than one engine any
/// disagreement fails the run.
pub fn cmd_red_count_with(
    args: &RedCountArgs,
    labels: &Labels,
    engines: &mut [Box<dyn CountEngine>],
) -> CmdResult {
    let reds = parse_reds(args.n, &args.reds, labels)?;
    let q = CountQuery::new(reds.clone(), args.rank, args.size)?;
    let counts = engines
        .iter_mut()
        .map(|e| e.count(&q))
        .collect::<Result<Vec<_>, _>>()?;
    let agree = (counts.len() > 1).then(|| counts.windows(2).all(|w| w[0].value == w[1].value));
    let reachable_total = reachable(&reds, args.nonempty_joins)?;
    let mut provenance: BTreeSet<Engine> = counts.iter().map(|c| c.engine).collect();
    provenance.insert(reachable_total.count.engine);
    let failed = agree == Some(false);
    let stderr = if failed {
        let values: Vec<String> = counts
            .iter()
            .map(|c| format!("{}={}", c.engine, c.value))
            .collect();
        format!(
            "error: engines disagree at rank {} size {}: {}\n",
            args.rank,
            args.size,
            values.join(", ")
        )
    } else {
        String::new()
    };
    let inputs = echo(
        RedInputs {
            n: args.n,
            reds: reds.to_string(),
            labeled: labels.render_atoms(reds.atoms()),
            rank: Some(args.rank),
            size: Some(args.size),
            engine: engine_name(args.engine),
            nonempty_joins: args.nonempty_joins,
        },
        labels,
    );
    let result = RedCountResult {
        rank: args.rank,
        size: args.size,
        counts,
        agree,
        reachable_total,
    };
    Ok(Report {
        stdout: OutputEnvelope::new("red-count", inputs, result, provenance).render(),
        stderr,
        failed,
    })
}

// ---------------------------------------------------------------- red-table

#[derive(Serialize)]
struct Cell {
    j: usize,
    s: usize,
    value: BigCount,
    engine: Engine,
    /// `null` with a single engine.
    agree: Option<bool>,
}

#[derive(Serialize)]
struct RedTableResult {
    ranks: usize,
    sizes: usize,
    agree: Option<bool>,
    reachable_total: ReachableTotal,
    cells: Vec<Cell>,
}

pub fn cmd_red_table(args: &RedTableArgs, labels: &Labels) -> CmdResult {
    // the oracle answers the whole table from one subset pass
    let table = match args.engine {
        EngineChoice::Recursive => None,
        _ => Some(oracle_table(&parse_reds(args.n, &args.reds, labels)?)?),
    };
    let mut engines = match args.engine {
        EngineChoice::Oracle => Vec::new(),
        _ => engines_for(EngineChoice::Recursive),
    };
    cmd_red_table_with(args, labels, &mut engines, table)
}

/// `red-table` with caller-supplied engines. `oracle_cells`, when given, is
/// an oracle table `t[j][s]` compared against every engine.
pub fn cmd_red_table_with(
    args: &RedTableArgs,
    labels: &Labels,
    engines: &mut [Box<dyn CountEngine>],
    oracle_cells: Option<Vec<Vec<BigCount>>>,
) -> CmdResult {
    let reds = parse_reds(args.n, &args.reds, labels)?;
    if oracle_cells.is_none() && engines.is_empty() {
        return Err(CliError::Usage(
            "red-table needs at least one engine".into(),
        ));
    }
    let sources = engines.len() + usize::from(oracle_cells.is_some());
    let mut cells = Vec::new();
    let mut provenance = BTreeSet::new();
    let mut disagreements = Vec::new();
    for j in 0..args.n {
        for s in 0..=reds.len() {
            let q = CountQuery::new(reds.clone(), j, s)?;
            let mut counts = Vec::with_capacity(sources);
            if let Some(t) = &oracle_cells {
                counts.push(Counted {
                    value: t[j][s].clone(),
                    engine: Engine::Oracle,
                });
            }
            for e in engines.iter_mut() {
                counts.push(e.count(&q)?);
            }
            let agree =
                (counts.len() > 1).then(|| counts.windows(2).all(|w| w[0].value == w[1].value));
            if agree == Some(false) {
                disagreements.push(format!("({j},{s})"));
            }
            provenance.extend(counts.iter().map(|c| c.engine));
            let last = counts.pop().expect("at least one source");
            cells.push(Cell {
                j,
                s,
                value: last.value,
                engine: last.engine,
                agree,
            });
        }
    }
    let failed = !disagreements.is_empty();
    let stderr = if failed {
        format!(
            "error: engines disagree at cells {}\n",
            disagreements.join(" ")
        )
    } else {
        String::new()
    };
    let stdout = match args.format {
        Format::Csv => {
            let mut out = String::from("j,s,value,engine,agree\n");
            for c in &cells {
                let agree = c.agree.map_or(String::new(), |a| a.to_string());
                let _ = writeln!(out, "{},{},{},{},{}", c.j, c.s, c.value, c.engine, agree);
            }
            out
        }
        Format::Json => {
            let reachable_total = reachable(&reds, args.nonempty_joins)?;
            provenance.insert(reachable_total.count.engine);
            let inputs = echo(
                RedInputs {
                    n: args.n,
                    reds: reds.to_string(),
                    labeled: labels.render_atoms(reds.atoms()),
                    rank: None,
                    size: None,
                    engine: engine_name(args.engine),
                    nonempty_joins: args.nonempty_joins,
                },
                labels,
            );
            let result = RedTableResult {
                ranks: args.n,
                sizes: reds.len() + 1,
                agree: (sources > 1).then_some(!failed),
                reachable_total,
                cells,
            };
            OutputEnvelope::new("red-table", inputs, result, provenance).render()
        }
    };
    Ok(Report {
        stdout,
        stderr,
        failed,
    })
}

// -------------------------------------------------------------------- check

fn engine_of(p: Property) -> Engine {
    match p {
        Property::Accp
        | Property::Ffm
        | Property::Bfm
        | Property::Hfm
        | Property::Ufm
        | Property::Hfrl
        | Property::TypeInvariance => Engine::Oracle,
        _ => Engine::ClosedForm,
    }
}

#[derive(Serialize)]
struct CheckResult {
    passed: Vec<Property>,
    failed: Vec<Property>,
    skipped: Vec<Property>,
    reports: Vec<PropertyReport>,
}

pub fn cmd_check(args: &CheckArgs, labels: &Labels) -> CmdResult {
    labels.check_n(args.n)?;
    let properties = args
        .properties
        .clone()
        .unwrap_or_else(|| Property::ALL.to_vec());
    let opts = CheckOptions {
        convention: args.convention.into(),
    };
    let mut reports = Vec::with_capacity(properties.len());
    for &p in &properties {
        reports.push(check_with(p, args.n, opts, Limits::global())?);
    }
    let pick = |f: &dyn Fn(&PropertyReport) -> bool| {
        reports
            .iter()
            .filter(|r| f(r))
            .map(|r| r.property)
            .collect()
    };
    let result = CheckResult {
        passed: pick(&|r| r.holds),
        failed: pick(&|r| !r.holds && !r.is_skipped()),
        skipped: pick(&|r| r.is_skipped()),
        reports: reports.clone(),
    };
    let provenance: BTreeSet<Engine> = reports
        .iter()
        .filter(|r| !r.is_skipped())
        .map(|r| engine_of(r.property))
        .collect();
    let failed = !result.failed.is_empty();
    let stderr = result
        .failed
        .iter()
        .map(|p| format!("fail: {p} at n = {}\n", args.n))
        .collect();
    #[derive(Serialize)]
    struct Inputs {
        n: usize,
        properties: Vec<Property>,
        convention: &'static str,
    }
    let inputs = echo(
        Inputs {
            n: args.n,
            properties,
            convention: match args.convention {
                crate::Convention::FinestZero => "finest-zero",
                crate::Convention::EmptyProduct => "empty-product",
            },
        },
        labels,
    );
    Ok(Report {
        stdout: OutputEnvelope::new("check", inputs, result, provenance).render(),
        stderr,
        failed,
    })
}

// --------------------------------------------------------------- export-dot

/// The Hasse diagram of the partitions of an `n`-set: one node per
/// partition in restricted-growth order, one edge per cover, drawn from the
/// finer partition to the coarser one.
pub fn hasse_dot(n: usize, labels: &Labels) -> Result<String, CliError> {
    labels.check_n(n)?;
    let parts: Vec<SetPartition> = all_partitions(n)?.collect();
    let index: std::collections::HashMap<&SetPartition, usize> =
        parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut out = String::from("digraph Hasse {\n  rankdir=BT;\n");
    for (i, p) in parts.iter().enumerate() {
        let text = labels.render_partition(p).unwrap_or_else(|| p.to_string());
        let _ = writeln!(out, "  p{i} [label=\"{text}\", rank={}];", p.rank());
    }
    for (i, p) in parts.iter().enumerate() {
        let blocks = p.blocks();
        let mut ups = BTreeSet::new();
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                let mut merged: Vec<Vec<usize>> = blocks.to_vec();
                let moved = merged.remove(b);
                merged[a].extend(moved);
                let up = SetPartition::from_blocks(n, merged)?;
                ups.insert(index[&up]);
            }
        }
        for j in ups {
            let _ = writeln!(out, "  p{i} -> p{j};");
        }
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn cmd_export_dot(args: &ExportDotArgs, labels: &Labels) -> CmdResult {
    let dot = if let Some(p) = &args.partition {
        graph_of_partition(&parse_partition(p, labels)?).to_dot()
    } else if let Some(r) = &args.reds {
        let n = args
            .n
            .ok_or_else(|| CliError::Usage("--reds needs --n".into()))?;
        parse_reds(n, r, labels)?.graph().to_dot()
    } else if let Some(n) = args.hasse {
        hasse_dot(n, labels)?
    } else {
        return Err(CliError::Usage(
            "one of --partition, --reds or --hasse is required".into(),
        ));
    };
    Ok(Report::ok(dot))
}
