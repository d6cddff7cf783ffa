use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use canon_core::embedding::{
    euler_genus, fixing_triple, is_polyhedral, polyhedral_embeddings, polyhedral_fixing_set,
    trace_faces, RotationSystem, TripleKind,
};
use canon_core::format::{parse_cg, parse_graph6, parse_rs, write_cg, write_graph6, write_rs};
use canon_core::generate::{gen_family, platonic, Family, ManifestEntry};
use canon_core::invariant::bf_canonical_order;
use canon_core::iso::oracle_cap;
use canon_core::oracle::{automorphisms, orbits, rigidity_index};
use canon_core::report::format_diagnostics;
use canon_core::rigidity::{canon_rigidity, is_fixing_bf};
use canon_core::separator::{find_isomorphism, SeparatorCanon};
use canon_core::{
    apply_permutation, are_isomorphic_bf, ColoredGraph, Diagnostic, Error, Invariant, Labeling,
};

use crate::{
    BenchArgs, CanonArgs, Command, EmbedCommand, FamilyArgs, Format, GenArgs, GraphInput,
    IsoArgs, Method,
};

pub const EXIT_NOT_ISOMORPHIC: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;
pub const EXIT_OTHER: u8 = 4;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::InvalidGraph(_)
            | Error::InvalidRotation(_)
            | Error::InvalidLabeling(_) => EXIT_INPUT,
            Error::OracleCapacity { .. } | Error::BackendCapacity(_) => EXIT_CAPACITY,
            _ => EXIT_OTHER,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> CliError {
    CliError {
        code: EXIT_INPUT,
        message,
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs one subcommand, printing its report to standard output. Returns the
/// exit code.
pub fn run(command: Command, workers: usize) -> CliResult<u8> {
    let mut out = String::new();
    let code = match command {
        Command::Canon(args) => canon(&args, &mut out)?,
        Command::Iso(args) => iso(&args, &mut out)?,
        Command::Rigidity(input) => {
            let g = read_graph(&input)?;
            let (k, witness) = rigidity_index(&g)?;
            writeln!(out, "rig = {k}").unwrap();
            writeln!(out, "witness = {}", vertex_list(&witness)).unwrap();
            0
        }
        Command::Aut(input) => {
            let group = automorphisms(&read_graph(&input)?)?;
            writeln!(out, "order = {}", group.order()).unwrap();
            for alpha in &group.elements {
                writeln!(out, "{}", vertex_list(alpha.as_slice())).unwrap();
            }
            0
        }
        Command::Orbits(input) => {
            for orbit in orbits(&read_graph(&input)?)? {
                writeln!(out, "{}", vertex_list(&orbit)).unwrap();
            }
            0
        }
        Command::Embed(cmd) => embed(cmd, &mut out)?,
        Command::Gen(args) => gen(&args, &mut out)?,
        Command::Bench(args) => bench(&args, workers, &mut out)?,
    };
    print!("{out}");
    Ok(code)
}

fn read_text(path: Option<&Path>) -> CliResult<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| input_error(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| input_error(format!("cannot read standard input: {e}")))?;
            Ok(text)
        }
    }
}

fn parse_graph(text: &str, format: Format) -> CliResult<ColoredGraph> {
    Ok(match format {
        Format::Cg => parse_cg(text)?,
        Format::Graph6 => parse_graph6(text)?,
    })
}

fn read_graph(input: &GraphInput) -> CliResult<ColoredGraph> {
    parse_graph(&read_text(input.input.as_deref())?, input.format)
}

fn read_rs(path: &Option<PathBuf>) -> CliResult<RotationSystem> {
    Ok(parse_rs(&read_text(path.as_deref())?)?)
}

fn parse_invariant(s: &str) -> CliResult<Invariant> {
    Ok(s.parse::<Invariant>()?)
}

/// One-based, space separated.
fn vertex_list(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_mapping(out: &mut String, sigma: &Labeling) {
    for v in 0..sigma.len() {
        writeln!(out, "{} -> {}", v + 1, sigma.image(v) + 1).unwrap();
    }
}

struct Canonized {
    labeling: Labeling,
    depth: usize,
    invariant_calls: u64,
    diagnostics: Vec<Diagnostic>,
}

fn canonize(
    g: &ColoredGraph,
    method: Method,
    f: &Invariant,
    r: usize,
    check: bool,
) -> CliResult<Canonized> {
    Ok(match method {
        Method::Separator => {
            let o = SeparatorCanon::new(r, *f).with_cross_check(check).canonize(g)?;
            Canonized {
                labeling: o.labeling,
                depth: o.depth,
                invariant_calls: o.invariant_calls,
                diagnostics: o.diagnostics,
            }
        }
        Method::Rigidity => {
            let o = canon_rigidity(g, r, f)?;
            let mut diagnostics = o.diagnostics;
            if let Some(s) = &o.fixing_sequence {
                if check && g.n() <= oracle_cap() && !is_fixing_bf(g, s)? {
                    diagnostics.push(Diagnostic::VerificationFailed);
                }
            }
            Canonized {
                labeling: o.labeling,
                depth: 1,
                invariant_calls: o.invariant_calls,
                diagnostics,
            }
        }
        Method::Bf => {
            let (order, _) = bf_canonical_order(g)?;
            Canonized {
                labeling: Labeling::from_order(&order)?,
                depth: 0,
                invariant_calls: 1,
                diagnostics: Vec::new(),
            }
        }
    })
}

fn canon(args: &CanonArgs, out: &mut String) -> CliResult<u8> {
    let f = parse_invariant(&args.invariant)?;
    let g = read_graph(&args.input)?;
    let c = canonize(&g, args.method, &f, args.r, args.check)?;
    write_mapping(out, &c.labeling);
    out.push_str(&write_cg(&apply_permutation(&g, &c.labeling)?));
    if !c.diagnostics.is_empty() {
        eprintln!("diagnostics: {}", format_diagnostics(&c.diagnostics));
    }
    Ok(0)
}

fn iso(args: &IsoArgs, out: &mut String) -> CliResult<u8> {
    let f = parse_invariant(&args.invariant)?;
    let g = parse_graph(&read_text(Some(&args.a))?, args.format)?;
    let h = parse_graph(&read_text(Some(&args.b))?, args.format)?;
    let canon = SeparatorCanon::new(args.r, f).with_cross_check(args.check);
    let outcome = find_isomorphism(&g, &h, &canon)?;
    let mut notes = Vec::new();
    let mut mapping = outcome.mapping;

    if args.check {
        let oracle = if g.n() <= oracle_cap() && h.n() <= oracle_cap() {
            Some(are_isomorphic_bf(&g, &h)?)
        } else {
            notes.push("oracle: skipped (above cap)".to_string());
            None
        };
        let same_code = f.eval(&g)? == f.eval(&h)?;
        match &oracle {
            Some(None) if same_code => notes.push(format!(
                "collision: {f} codes agree on non-isomorphic graphs"
            )),
            Some(Some(witness)) if mapping.is_none() => {
                notes.push("invariant-failure: the oracle found an isomorphism".to_string());
                mapping = Some(witness.clone());
            }
            _ => {}
        }
    }

    let code = match &mapping {
        Some(sigma) => {
            out.push_str("isomorphic\n");
            write_mapping(out, sigma);
            0
        }
        None => {
            out.push_str("non-isomorphic\n");
            EXIT_NOT_ISOMORPHIC
        }
    };
    for note in notes {
        writeln!(out, "{note}").unwrap();
    }
    if !outcome.diagnostics.is_empty() {
        writeln!(out, "diagnostics: {}", format_diagnostics(&outcome.diagnostics)).unwrap();
    }
    Ok(code)
}

fn embed(cmd: EmbedCommand, out: &mut String) -> CliResult<u8> {
    match cmd {
        EmbedCommand::Faces(input) => {
            let rs = read_rs(&input.input)?;
            let faces = trace_faces(&rs)?;
            writeln!(out, "faces = {}", faces.len()).unwrap();
            for walk in &faces {
                writeln!(out, "{}", vertex_list(&walk.vertices())).unwrap();
            }
            writeln!(out, "genus = {}", euler_genus(&rs)?).unwrap();
        }
        EmbedCommand::Genus(input) => {
            writeln!(out, "genus = {}", euler_genus(&read_rs(&input.input)?)?).unwrap();
        }
        EmbedCommand::Polyhedral(input) => {
            writeln!(out, "polyhedral = {}", is_polyhedral(&read_rs(&input.input)?)?).unwrap();
        }
        EmbedCommand::FixingTriple(input) => {
            let t = fixing_triple(&read_rs(&input.input)?)?;
            let kind = match t.kind {
                TripleKind::Path => "path",
                TripleKind::Cycle => "cycle",
                TripleKind::Segment => "segment",
            };
            writeln!(out, "set = {}", vertex_list(&t.set)).unwrap();
            writeln!(out, "kind = {kind}").unwrap();
            writeln!(out, "faithful = {}", flag(t.faithful)).unwrap();
            writeln!(out, "verified = {}", flag(t.verified)).unwrap();
        }
        EmbedCommand::FixingSet(input) => {
            let rs = read_rs(&input.input)?;
            let genus = euler_genus(&rs)?;
            let list = polyhedral_embeddings(rs.graph(), genus)?;
            let fs = polyhedral_fixing_set(rs.graph(), &list)?;
            writeln!(out, "genus = {genus}").unwrap();
            writeln!(out, "embeddings = {}", list.len()).unwrap();
            writeln!(out, "c = {}", fs.c).unwrap();
            writeln!(out, "set = {}", vertex_list(&fs.set)).unwrap();
            writeln!(out, "bound = {}", 4 * fs.c).unwrap();
            writeln!(out, "verified = {}", flag(fs.verified)).unwrap();
        }
    }
    Ok(0)
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    }
}

fn family(args: &FamilyArgs) -> CliResult<Family> {
    let mut params = Vec::new();
    if args.family == "star" {
        let n = args
            .n
            .ok_or_else(|| input_error("star needs --n".into()))?;
        params.push(format!("leaves={}", n.saturating_sub(1)));
    } else {
        for (key, value) in [
            ("k", args.k.map(|v| v.to_string())),
            ("n", args.n.map(|v| v.to_string())),
            ("drop", args.drop.map(|v| v.to_string())),
            ("p", args.p.map(|v| v.to_string())),
            ("solid", args.solid.clone()),
        ] {
            if let Some(v) = value {
                params.push(format!("{key}={v}"));
            }
        }
    }
    Ok(Family::parse(&args.family, &params.join(","))?)
}

fn gen(args: &GenArgs, out: &mut String) -> CliResult<u8> {
    let fam = family(&args.family)?;
    if args.rs {
        let Family::Platonic(solid) = fam else {
            return Err(input_error("--rs is only available for platonic solids".into()));
        };
        out.push_str(&write_rs(&platonic(solid).1));
        return Ok(0);
    }
    if args.count > 1 && args.out_dir.is_none() && args.format == Format::Cg {
        return Err(input_error(
            "several cg graphs need --out-dir or --format graph6".into(),
        ));
    }
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir)
            .map_err(|e| input_error(format!("cannot create {}: {e}", dir.display())))?;
    }
    for seed in args.seed..args.seed + args.count {
        let g = gen_family(fam, seed)?;
        match &args.out_dir {
            Some(dir) => {
                let path = dir.join(format!("{}_{seed}.cg", fam.name()));
                fs::write(&path, write_cg(&g))
                    .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
                let entry = ManifestEntry {
                    family: fam,
                    seed,
                    path: path.display().to_string(),
                };
                writeln!(out, "{entry}").unwrap();
            }
            None => match args.format {
                Format::Cg => out.push_str(&write_cg(&g)),
                Format::Graph6 => writeln!(out, "{}", write_graph6(&g)).unwrap(),
            },
        }
    }
    Ok(0)
}

/// Observed recursion depth may not exceed this when every level found a
/// separator.
pub fn depth_bound(n: usize) -> usize {
    let mut ceil_log = 0;
    while (1usize << ceil_log) < n {
        ceil_log += 1;
    }
    ceil_log + 1
}

fn bench(args: &BenchArgs, workers: usize, out: &mut String) -> CliResult<u8> {
    let fam = family(&args.family)?;
    let f = parse_invariant(&args.invariant)?;
    let invariant_name = match args.method {
        Method::Bf => "bf".to_string(),
        _ => f.to_string(),
    };
    out.push_str("family,n,seed,method,invariant,depth,invariant_calls,wall_ms,workers,diagnostics\n");
    let mut violations = 0;
    let mut max_depth = 0;
    for seed in args.seed..args.seed + args.trials {
        let g = gen_family(fam, seed)?;
        let start = Instant::now();
        let c = canonize(&g, args.method, &f, args.r, false)?;
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let separators_everywhere = !c
            .diagnostics
            .iter()
            .any(|d| matches!(d, Diagnostic::NoSeparator { .. }));
        if args.method == Method::Separator && separators_everywhere {
            max_depth = max_depth.max(c.depth);
            if c.depth > depth_bound(g.n()) {
                violations += 1;
            }
        }
        writeln!(
            out,
            "{},{},{seed},{},{invariant_name},{},{},{wall_ms:.3},{workers},{}",
            fam.name(),
            g.n(),
            args.method.name(),
            c.depth,
            c.invariant_calls,
            format_diagnostics(&c.diagnostics)
        )
        .unwrap();
    }
    if args.method == Method::Separator {
        eprintln!("max depth {max_depth}, depth bound violations {violations}");
    }
    Ok(0)
}
