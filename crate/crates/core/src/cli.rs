//! Command-line jobs: resolve input, flag and weights, run one stage and
//! build its report.
//!
//! Exit codes: 0 success, 1 input error, 2 invariant violation.

use std::path::PathBuf;

use clap::ValueEnum;
use rayon::prelude::*;

use crate::complex::{build_complex, ComplexError, TwistedComplex};
use crate::degree::{degree_tables, DegreeError, DegreeOptions};
use crate::faces::{enumerate_chambers, enumerate_faces, is_bounded};
use crate::flag::{build_flag_with, is_generic_with, partition_unchecked, sign_of, ChamberPartition, OrientedFlag};
use crate::geometry::Arrangement;
use crate::io::{self, flag_to_json, InputError, InputSpec};
use crate::lattice::{beta, build_lattice, poincare, Lattice, Polynomial};
use crate::local_system::WeightAssignment;
use crate::pi1::presentation;
use crate::rational::Rational;
use crate::report::{tuple, Report};
use crate::salvetti::from_faces;

/// Largest number of assignments a `--q-grid` may expand to.
pub const MAX_GRID: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Lattice,
    Chambers,
    Partition,
    Salvetti,
    Degrees,
    Complex,
    Homology,
    ResonanceScan,
    Pi1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlagSource {
    Seed(u64),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct JobSpec {
    pub input: PathBuf,
    pub command: Command,
    pub flag: Option<FlagSource>,
    pub q: Option<String>,
    pub q_grid: Option<String>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Input(String),
    Invariant(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Invariant(_) => 2,
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<DegreeError> for Failure {
    fn from(e: DegreeError) -> Self {
        match e {
            DegreeError::Unsupported(_) | DegreeError::Flag(_) | DegreeError::Geometry(_) => {
                Failure::Input(e.to_string())
            }
            DegreeError::Degenerate { .. } | DegreeError::Mismatch { .. } => Failure::Invariant(e.to_string()),
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::Degree(d) => d.into(),
            ComplexError::NotAComplex { .. } => Failure::Invariant(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(job: &JobSpec) -> Outcome {
    match io::read_input(&job.input).map_err(Failure::from).and_then(|spec| execute(job, &spec)) {
        Ok(report) => Outcome {
            code: 0,
            stdout: match job.format {
                Format::Text => report.render_text(),
                Format::Structured => report.render_structured(),
            },
            stderr: String::new(),
        },
        Err(f) => {
            let msg = match &f {
                Failure::Input(m) => format!("input error: {m}\n"),
                Failure::Invariant(m) => format!("invariant violation: {m}\n"),
            };
            Outcome {
                code: f.code(),
                stdout: String::new(),
                stderr: msg,
            }
        }
    }
}

struct Context<'a> {
    arr: &'a Arrangement,
    lattice: Lattice,
    poly: Polynomial,
}

impl Context<'_> {
    fn betti(&self) -> Vec<usize> {
        (0..=self.arr.dim()).map(|k| self.poly.coeff(k) as usize).collect()
    }
}

pub fn execute(job: &JobSpec, spec: &InputSpec) -> Result<Report, Failure> {
    let arr = &spec.arrangement;
    let lattice = build_lattice(arr);
    let poly = poincare(&lattice);
    let ctx = Context { arr, lattice, poly };
    let mut r = Report::default();
    r.field("command", command_name(job.command));
    r.field("dim", arr.dim());
    r.field("hyperplanes", arr.len());
    match job.command {
        Command::Lattice => lattice_report(&ctx, &mut r),
        Command::Chambers => chambers_report(&ctx, &mut r),
        Command::Salvetti => salvetti_report(&ctx, &mut r)?,
        cmd => {
            let flag = resolve_flag(job, spec, &ctx, &mut r)?;
            let part = partition_unchecked(arr, &flag).map_err(|e| Failure::Input(e.to_string()))?;
            if part.sizes() != ctx.betti() {
                return Err(Failure::Invariant(format!(
                    "partition sizes {} differ from Betti numbers {}",
                    tuple(&part.sizes()),
                    tuple(&ctx.betti())
                )));
            }
            match cmd {
                Command::Partition => partition_report(&part, &mut r),
                Command::Degrees => degrees_report(&ctx, &flag, &part, &mut r)?,
                Command::Pi1 => pi1_report(&ctx, &flag, &part, &mut r)?,
                _ => {
                    let cx = build_complex(arr, &flag, &DegreeOptions::default())?;
                    cx.verify_d2()?;
                    match cmd {
                        Command::Complex => complex_report(&cx, &mut r),
                        Command::Homology => homology_report(job, spec, &cx, &mut r)?,
                        Command::ResonanceScan => scan_report(job, spec, &cx, &mut r)?,
                        _ => unreachable!("remaining commands are handled above"),
                    }
                }
            }
        }
    }
    Ok(r)
}

pub fn command_name(c: Command) -> String {
    c.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn resolve_flag(job: &JobSpec, spec: &InputSpec, ctx: &Context, r: &mut Report) -> Result<OrientedFlag, Failure> {
    let checked = |flag: OrientedFlag, origin: &str| -> Result<OrientedFlag, Failure> {
        if !is_generic_with(&flag, &ctx.lattice) {
            return Err(Failure::Input(format!("the {origin} flag is not generic for this arrangement")));
        }
        Ok(flag)
    };
    let (flag, source) = match (&job.flag, &spec.flag) {
        (Some(FlagSource::File(p)), _) => (checked(io::read_flag(p, ctx.arr.dim())?, "supplied")?, "file".to_string()),
        (Some(FlagSource::Seed(s)), _) => (build_flag_with(ctx.arr, &ctx.lattice, *s), format!("seed {s}")),
        (None, Some(f)) => (checked(f.clone(), "input file's")?, "input".to_string()),
        (None, None) => (build_flag_with(ctx.arr, &ctx.lattice, 0), "seed 0".to_string()),
    };
    r.line(format!("flag ({source}): {}", flag_to_json(&flag)));
    r.field("flag.source", source);
    r.field("flag", flag_to_json(&flag));
    Ok(flag)
}

fn lattice_report(ctx: &Context, r: &mut Report) {
    let counts = ctx.lattice.count_by_rank();
    r.line(format!("flats by rank: {}", tuple(&counts)));
    r.line(format!("Poincaré polynomial: {}", ctx.poly));
    r.line(format!("chambers: {}, beta: {}", ctx.poly.eval(1), beta(&ctx.poly)));
    r.field("lattice.rank_counts", tuple(&counts));
    r.field("poincare", &ctx.poly);
    r.field("poincare.coeffs", tuple(&ctx.poly.coeffs));
    r.field("chambers", ctx.poly.eval(1));
    r.field("beta", beta(&ctx.poly));
    for (i, (f, mu)) in ctx.lattice.flats.iter().zip(&ctx.lattice.mobius).enumerate() {
        let ids: Vec<String> = f.hyperplane_ids().iter().map(|h| format!("H{}", h + 1)).collect();
        let ids = if ids.is_empty() { "V".to_string() } else { ids.join(" ") };
        r.line(format!("  X{i}: rank {}, mu {mu}, {ids}", f.rank));
        r.field(format!("flat.{i}"), format!("rank {} mu {mu} {ids}", f.rank));
    }
}

fn chambers_report(ctx: &Context, r: &mut Report) {
    let chambers = enumerate_chambers(ctx.arr);
    let bounded: Vec<bool> = chambers.iter().map(|c| is_bounded(ctx.arr, &c.signs)).collect();
    let nb = bounded.iter().filter(|&&b| b).count();
    r.line(format!("chambers: {} ({} bounded)", chambers.len(), nb));
    r.field("chambers.count", chambers.len());
    r.field("chambers.bounded", nb);
    for (i, (c, b)) in chambers.iter().zip(&bounded).enumerate() {
        let kind = if *b { "bounded" } else { "unbounded" };
        r.line(format!("  {} {kind}", c.signs));
        r.field(format!("chamber.{i}"), format!("{} {kind}", c.signs));
    }
}

fn salvetti_report(ctx: &Context, r: &mut Report) -> Result<(), Failure> {
    let s = from_faces(enumerate_faces(ctx.arr));
    let counts = s.counts();
    let chi = s.euler_characteristic();
    let expected: i64 = ctx
        .betti()
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    if chi != expected {
        return Err(Failure::Invariant(format!(
            "Salvetti Euler characteristic {chi} differs from the Betti sum {expected}"
        )));
    }
    r.line(format!("cells by dimension: {}", tuple(&counts)));
    r.line(format!("Euler characteristic: {chi}"));
    r.field("salvetti.counts", tuple(&counts));
    r.field("salvetti.euler", chi);
    let label = |i: usize| {
        let c = &s.cells[i];
        format!("[{}|{}]", s.poset.faces[c.face].signs, s.poset.faces[c.chamber].signs)
    };
    for i in 0..s.cells.len() {
        r.field(format!("salvetti.cell.{i}"), label(i));
    }
    r.line("edges:");
    for (n, (a, b)) in s.edges().into_iter().enumerate() {
        r.line(format!("  {} -> {}", label(a), label(b)));
        r.field(format!("salvetti.edge.{n}"), format!("{a} {b}"));
    }
    Ok(())
}

fn sign_label(c: &crate::flag::LeveledChamber) -> String {
    match sign_of(c) {
        Ok(s) => format!("{:+}", s.to_i8()),
        Err(_) => "none".to_string(),
    }
}

fn partition_report(part: &ChamberPartition, r: &mut Report) {
    let sizes = part.sizes();
    let summary: Vec<String> = sizes.iter().enumerate().map(|(k, n)| format!("ch{k}: {n}")).collect();
    r.line(summary.join(", "));
    r.field("partition.sizes", tuple(&sizes));
    for (k, level) in part.levels.iter().enumerate() {
        for (i, c) in level.iter().enumerate() {
            r.line(format!("  ch{k}[{}] {} sign {}", i + 1, c.signs, sign_label(c)));
            r.field(format!("ch{k}.{}", i + 1), format!("{} sign {}", c.signs, sign_label(c)));
        }
    }
}

fn degrees_report(ctx: &Context, flag: &OrientedFlag, part: &ChamberPartition, r: &mut Report) -> Result<(), Failure> {
    let tables = degree_tables(ctx.arr, flag, part, &DegreeOptions::default())?;
    for t in &tables {
        let k = t.level;
        let cols: Vec<String> = part.levels[k - 1].iter().map(|c| c.signs.to_string()).collect();
        r.line(format!("deg: ch{k} x ch{} (columns {})", k - 1, cols.join(" ")));
        for (i, (c, row)) in part.levels[k].iter().zip(&t.values).enumerate() {
            let cells: Vec<String> = row.iter().map(|d| format!("{d:>2}")).collect();
            r.line(format!("  {} : {}", c.signs, cells.join(" ")));
            for (j, d) in row.iter().enumerate() {
                r.field(format!("deg.{k}.{}.{}", i + 1, j + 1), d);
            }
        }
    }
    Ok(())
}

fn complex_report(cx: &TwistedComplex, r: &mut Report) {
    let part = &cx.partition;
    for (idx, m) in cx.boundaries.iter().enumerate() {
        let k = idx + 1;
        r.field(format!("d{k}.shape"), format!("{}x{}", m.rows, m.cols));
        for (j, c) in part.levels[k].iter().enumerate() {
            let terms: Vec<String> = (0..m.rows)
                .filter(|&i| !m.get(i, j).is_zero())
                .map(|i| format!("({})[{}]", m.get(i, j), part.levels[k - 1][i].signs))
                .collect();
            let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            r.line(format!("d{k}[{}] = {rhs}", c.signs));
        }
        for i in 0..m.rows {
            for j in 0..m.cols {
                r.field(format!("d{k}.{}.{}", i + 1, j + 1), m.get(i, j));
            }
        }
    }
    r.line("d^2 = 0");
    r.field("d2_zero", true);
}

fn weights_for(spec: &InputSpec, text: Option<&str>, n: usize) -> Result<Option<WeightAssignment>, Failure> {
    let values = match text {
        Some(t) => Some(io::parse_rational_list(t)?),
        None => spec.weights.clone(),
    };
    values.map(|v| assignment(v, n)).transpose()
}

fn assignment(v: Vec<Rational>, n: usize) -> Result<WeightAssignment, Failure> {
    if v.len() != n {
        return Err(Failure::Input(format!("expected {n} weights, got {}", v.len())));
    }
    WeightAssignment::new(v).map_err(|e| Failure::Input(e.to_string()))
}

fn homology_report(job: &JobSpec, spec: &InputSpec, cx: &TwistedComplex, r: &mut Report) -> Result<(), Failure> {
    let generic = cx.generic_homology()?;
    match weights_for(spec, job.q.as_deref(), cx.nvars)? {
        Some(w) => {
            let rep = cx.resonance_against(&w, &generic)?;
            let euler: i64 = euler(&rep.homology);
            if euler != cx.euler_characteristic() {
                return Err(Failure::Invariant(format!(
                    "Euler sum {euler} of homology differs from the chain Euler characteristic"
                )));
            }
            r.line(format!("q = {}", tuple(w.values())));
            r.line(format!("h = {}", tuple(&rep.homology)));
            r.line(format!("resonant: {}", rep.resonant));
            r.field("q", tuple(w.values()));
            r.field("h", tuple(&rep.homology));
            r.field("generic", tuple(&generic));
            r.field("resonant", rep.resonant);
        }
        None => {
            r.line(format!("h = {} (generic weights)", tuple(&generic)));
            r.field("q", "generic");
            r.field("h", tuple(&generic));
            r.field("generic", tuple(&generic));
        }
    }
    Ok(())
}

fn euler(h: &[usize]) -> i64 {
    h.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// `v1,v2,...` (the same values for every coordinate) or `l1;l2;...;ln`
/// (one comma-separated list per coordinate); expands to the product grid.
pub fn parse_q_grid(spec: &str, n: usize) -> Result<Vec<Vec<Rational>>, InputError> {
    let err = |m: String| InputError { line: None, message: m };
    let lists: Vec<Vec<Rational>> = if spec.contains(';') {
        let parts: Vec<&str> = spec.split(';').collect();
        if parts.len() != n {
            return Err(err(format!("q-grid has {} coordinate lists, expected {n}", parts.len())));
        }
        parts.iter().map(|p| io::parse_rational_list(p)).collect::<Result<_, _>>()?
    } else {
        vec![io::parse_rational_list(spec)?; n]
    };
    let total = lists.iter().try_fold(1usize, |acc, l| acc.checked_mul(l.len()));
    if total.map_or(true, |t| t > MAX_GRID) {
        return Err(err(format!("q-grid expands to more than {MAX_GRID} assignments")));
    }
    let mut grid: Vec<Vec<Rational>> = vec![Vec::new()];
    for l in &lists {
        grid = grid
            .into_iter()
            .flat_map(|prefix| {
                l.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    Ok(grid)
}

fn scan_report(job: &JobSpec, spec: &InputSpec, cx: &TwistedComplex, r: &mut Report) -> Result<(), Failure> {
    let n = cx.nvars;
    let points: Vec<Vec<Rational>> = match (&job.q_grid, &job.q) {
        (Some(g), _) => parse_q_grid(g, n)?,
        (None, Some(q)) => vec![io::parse_rational_list(q)?],
        (None, None) => match &spec.weights {
            Some(w) => vec![w.clone()],
            None => return Err(Failure::Input("resonance-scan needs --q-grid, --q or input weights".into())),
        },
    };
    let assignments = points
        .into_iter()
        .map(|p| assignment(p, n))
        .collect::<Result<Vec<_>, _>>()?;
    let generic = cx.generic_homology()?;
    let reports = assignments
        .par_iter()
        .map(|w| cx.resonance_against(w, &generic))
        .collect::<Result<Vec<_>, _>>()?;
    let hits = reports.iter().filter(|x| x.resonant).count();
    r.line(format!("generic h = {}", tuple(&generic)));
    r.field("scan.count", reports.len());
    r.field("scan.resonant_count", hits);
    r.field("generic", tuple(&generic));
    for (i, rep) in reports.iter().enumerate() {
        let tag = if rep.resonant { "resonant" } else { "generic" };
        r.line(format!("q = {}: h = {} {tag}", tuple(rep.weights.values()), tuple(&rep.homology)));
        r.field(format!("scan.{}.q", i + 1), tuple(rep.weights.values()));
        r.field(format!("scan.{}.h", i + 1), tuple(&rep.homology));
        r.field(format!("scan.{}.resonant", i + 1), rep.resonant);
    }
    r.line(format!("resonant: {hits} of {}", reports.len()));
    Ok(())
}

fn pi1_report(ctx: &Context, flag: &OrientedFlag, part: &ChamberPartition, r: &mut Report) -> Result<(), Failure> {
    if ctx.arr.dim() != 2 {
        return Err(Failure::Input(format!(
            "pi1 needs a planar arrangement, got dimension {}",
            ctx.arr.dim()
        )));
    }
    let tables = degree_tables(ctx.arr, flag, part, &DegreeOptions::default())?;
    let pres = presentation(part, &tables);
    if !pres.relations_are_commutators() {
        return Err(Failure::Invariant("a relation has nonzero exponent sum".into()));
    }
    let (rank, torsion) = pres.abelianization();
    let mut ab = format!("Z^{rank}");
    for t in &torsion {
        ab.push_str(&format!(" + Z/{t}"));
    }
    r.line(pres.to_string());
    r.line(format!("abelianization: {ab}"));
    r.field("pi1.generators", pres.generators);
    r.field("pi1.relations", pres.relations.len());
    for (i, (w, c)) in pres.relations.iter().zip(&pres.relation_chambers).enumerate() {
        r.line(format!("  R({c}) = {w}"));
        r.field(format!("pi1.relation.{}", i + 1), w);
    }
    r.field("pi1.abelianization", ab);
    Ok(())
}
