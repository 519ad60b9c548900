//! Command-line surface over `qiso-core`: classification, oracle
//! verification and the reference tables.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qiso_core::classify::classify_with_cap;
use qiso_core::oracle::{verify, VerifyOptions, VerifyReport, DEFAULT_ORACLE_CAP, DEFAULT_POINT_CAP};
use qiso_core::rational::format_rational;
use qiso_core::{AffineDiagram, CartanType, CocharLattice, Error, Family, QuasiIsolatedClass, SimpleType};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "qiso", version, about = "Quasi-isolated semisimple classes of reductive groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the quasi-isolated classes of a group.
    Classify(ClassifyArgs),
    /// Compare the classification with a brute-force search over the Weyl group.
    ///
    /// E8 needs `--oracle-cap 700000000` and a lot of patience; it is refused
    /// by default.
    Verify(VerifyArgs),
    /// Print the reference tables: marks and automorphisms, classical adjoint
    /// groups, and adjoint E6 and E7.
    Tables(TablesArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Family letter (with --rank), or a full type such as `E6` or `A1xA2`.
    #[arg(long = "type")]
    pub cartan_type: String,
    #[arg(long)]
    pub rank: Option<usize>,
    /// `sc`, `ad`, or comma-separated automorphism names such as `z1`.
    #[arg(long, default_value = "ad")]
    pub lattice: String,
    /// Characteristic: 0 or a prime.
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,
    /// Largest subset of nodes searched.
    #[arg(long, default_value_t = qiso_core::classify::DEFAULT_SUBSET_CAP)]
    pub subset_cap: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Write JSON to this file instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Denominator of the searched alcove grid.
    #[arg(long)]
    pub max_den: Option<u64>,
    /// Largest Weyl group enumerated.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u128,
    /// Largest number of grid points searched.
    #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
    pub point_cap: u128,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    /// 1, 2 or 3; all three when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub table: Option<u8>,
    /// Rank at which the classical families are instantiated.
    #[arg(long, default_value_t = 4)]
    pub rank: usize,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GroupRecord {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub lattice: String,
    #[serde(rename = "char")]
    pub characteristic: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TypeRecord {
    pub family: String,
    pub rank: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ComponentGroupRecord {
    pub order: usize,
    pub structure: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub omega: Vec<String>,
    pub lambda: Vec<String>,
    pub order: u64,
    pub centralizer: Vec<TypeRecord>,
    pub component_group: ComponentGroupRecord,
    pub isolated: bool,
    pub p_condition: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub group: GroupRecord,
    pub classes: Vec<ClassRecord>,
}

/// What a command produced: text for stdout and an exit code.
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

pub fn cartan_type(args: &GroupArgs) -> Result<CartanType, Error> {
    let spec = args.cartan_type.trim();
    match (spec.len(), args.rank) {
        (1, Some(rank)) => {
            let family = spec
                .chars()
                .next()
                .and_then(|c| Family::from_letter(c.to_ascii_uppercase()))
                .ok_or_else(|| Error::ParseType(spec.to_string()))?;
            CartanType::simple(family, rank)
        }
        (1, None) => Err(Error::ParseType(format!("{spec} needs --rank"))),
        _ => {
            let t: CartanType = spec.parse()?;
            match args.rank {
                Some(r) if r != t.rank() => Err(Error::DimensionMismatch { expected: t.rank(), found: r }),
                _ => Ok(t),
            }
        }
    }
}

pub fn lattice(args: &GroupArgs) -> Result<CocharLattice, Error> {
    let d = Arc::new(AffineDiagram::new(&cartan_type(args)?)?);
    CocharLattice::new(d, &args.lattice)
}

pub fn record(lattice: &CocharLattice, p: u64, classes: &[QuasiIsolatedClass]) -> Classification {
    let d = lattice.diagram();
    let t = d.cartan_type();
    Classification {
        group: GroupRecord {
            cartan_type: t.to_string(),
            rank: t.rank(),
            lattice: lattice.name().to_string(),
            characteristic: p,
        },
        classes: classes
            .iter()
            .map(|c| ClassRecord {
                omega: c.omega.nodes().iter().map(|&u| d.node_label(u)).collect(),
                lambda: c.lambda.coords().iter().map(format_rational).collect(),
                order: c.order,
                centralizer: c
                    .centralizer
                    .components()
                    .iter()
                    .map(|s| TypeRecord { family: s.family.to_string(), rank: s.rank })
                    .collect(),
                component_group: ComponentGroupRecord {
                    order: c.component_group.len(),
                    structure: c.component_group_structure.clone(),
                },
                isolated: c.isolated,
                p_condition: c.p_condition(),
            })
            .collect(),
    }
}

fn centralizer_name(types: &[TypeRecord]) -> String {
    if types.is_empty() {
        return "T".into();
    }
    types.iter().map(|t| format!("{}{}", t.family, t.rank)).collect::<Vec<_>>().join(" x ")
}

/// Aligned text columns.
fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|k| rows.iter().map(|r| r[k].chars().count()).chain([header[k].chars().count()]).max().unwrap())
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out += &line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn render_table(c: &Classification) -> String {
    let g = &c.group;
    let mut out = format!("{} ({}), char {}: {} classes\n", g.cartan_type, g.lattice, g.characteristic, c.classes.len());
    let rows: Vec<Vec<String>> = c
        .classes
        .iter()
        .map(|k| {
            vec![
                format!("{{{}}}", k.omega.join(",")),
                k.p_condition.clone(),
                k.order.to_string(),
                centralizer_name(&k.centralizer),
                k.component_group.order.to_string(),
                if k.isolated { "yes" } else { "no" }.to_string(),
            ]
        })
        .collect();
    out += &columns(&["Ω", "p ?", "o(s_Ω)", "C_G°(s_Ω)", "|A(s_Ω)|", "isolated ?"], &rows);
    out
}

pub fn run_classify(args: &ClassifyArgs) -> Result<Outcome, Error> {
    let l = lattice(&args.group)?;
    let p = args.group.characteristic;
    let classes = classify_with_cap(&l, p, args.group.subset_cap)?;
    let report = record(&l, p, &classes);
    let output = match args.format {
        Format::Table => render_table(&report),
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
    };
    Ok(Outcome { output, code: EXIT_OK })
}

pub fn render_verify(l: &CocharLattice, p: u64, r: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{l}, char {p}: |W| = {}, grid denominator {}, {} classes, {} oracle orbits",
        r.weyl_order,
        r.max_den,
        r.classes.len(),
        r.orbits.len()
    );
    let d = l.diagram();
    if let Ok(nodes) = CocharLattice::p_prime_nodes(d, p) {
        let _ = writeln!(out, "  nodes with vertex order prime to p: {}", d.format_nodes(&nodes));
    }
    for o in &r.orbits {
        let x = &o.report;
        let _ = writeln!(
            out,
            "  orbit at {}: order {}, |W°| {}, |A| {}, isolated {}, grid points {}",
            o.coords, x.order, x.reflection_subgroup_order, x.component_group_order, x.isolated, o.points
        );
    }
    for m in &r.mismatches {
        let _ = writeln!(out, "  MISMATCH {m}");
    }
    out += if r.passed() { "PASS\n" } else { "FAIL\n" };
    out
}

pub fn run_verify(args: &VerifyArgs) -> Result<Outcome, Error> {
    let l = lattice(&args.group)?;
    let p = args.group.characteristic;
    let opts = VerifyOptions {
        max_den: args.max_den,
        oracle_cap: Some(args.oracle_cap),
        point_cap: Some(args.point_cap),
        subset_cap: Some(args.group.subset_cap),
    };
    let report = verify(&l, p, &opts)?;
    let code = if report.passed() { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Outcome { output: render_verify(&l, p, &report), code })
}

pub fn table_i(rank: usize) -> Result<String, Error> {
    let mut rows = Vec::new();
    let mut types: Vec<SimpleType> = [Family::A, Family::B, Family::C, Family::D]
        .into_iter()
        .filter_map(|f| SimpleType::new(f, rank).ok())
        .collect();
    types.extend([(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)].map(|(f, r)| SimpleType { family: f, rank: r }));
    for t in types {
        let d = AffineDiagram::new(&CartanType::new(vec![t])?)?;
        let group = d.automorphisms();
        let marks: Vec<String> = d.marks().iter().map(|m| m.to_string()).collect();
        let gens: Vec<&str> = group.generators().iter().map(|&g| group.name(g)).collect();
        let all: Vec<usize> = (0..group.len()).collect();
        rows.push(vec![
            t.to_string(),
            marks.join(" "),
            group.len().to_string(),
            if gens.is_empty() { "-".into() } else { gens.join(", ") },
            qiso_core::classify::abelian_structure(&d, &all),
        ]);
    }
    Ok(format!(
        "Table I. Affine Dynkin diagrams (marks of a0..an)\n{}",
        columns(&["type", "marks", "|A|", "generators", "structure"], &rows)
    ))
}

fn adjoint_block(t: &CartanType) -> Result<String, Error> {
    let l = CocharLattice::new(Arc::new(AffineDiagram::new(t)?), "ad")?;
    let classes = classify_with_cap(&l, 0, qiso_core::classify::DEFAULT_SUBSET_CAP)?;
    Ok(render_table(&record(&l, 0, &classes)))
}

pub fn table_ii(rank: usize) -> Result<String, Error> {
    let mut out = format!("Table II. Quasi-isolated elements in adjoint classical groups of rank {rank}\n");
    for f in [Family::A, Family::B, Family::C, Family::D] {
        if let Ok(t) = CartanType::simple(f, rank) {
            out += "\n";
            out += &adjoint_block(&t)?;
        }
    }
    Ok(out)
}

pub fn table_iii() -> Result<String, Error> {
    let mut out = "Table III. Quasi-isolated elements in adjoint E6 and E7\n".to_string();
    for t in ["E6", "E7"] {
        out += "\n";
        out += &adjoint_block(&t.parse()?)?;
    }
    Ok(out)
}

pub fn run_tables(args: &TablesArgs) -> Result<Outcome, Error> {
    let mut parts = Vec::new();
    if args.table.is_none_or(|t| t == 1) {
        parts.push(table_i(args.rank)?);
    }
    if args.table.is_none_or(|t| t == 2) {
        parts.push(table_ii(args.rank)?);
    }
    if args.table.is_none_or(|t| t == 3) {
        parts.push(table_iii()?);
    }
    Ok(Outcome { output: parts.join("\n"), code: EXIT_OK })
}

/// Runs a parsed command; errors become a message and the usage exit code.
pub fn run(cli: &Cli) -> Outcome {
    let (result, out) = match &cli.command {
        Command::Classify(a) => (run_classify(a), a.out.as_ref()),
        Command::Verify(a) => (run_verify(a), None),
        Command::Tables(a) => (run_tables(a), a.out.as_ref()),
    };
    match result {
        Ok(outcome) => match out {
            Some(path) => match std::fs::write(path, &outcome.output) {
                Ok(()) => Outcome { output: String::new(), code: outcome.code },
                Err(e) => Outcome { output: format!("error: cannot write {}: {e}\n", path.display()), code: EXIT_USAGE },
            },
            None => outcome,
        },
        Err(e) => Outcome { output: format!("error: {e}\n"), code: EXIT_USAGE },
    }
}
