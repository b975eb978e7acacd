use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};

use sppda::analysis::{
    compare, f_construction_a_pair, f_man_pair, rate_construction_a, rate_man_pair,
    sweep as run_sweep, FirstPda, SchemeTag, SweepConfig,
};
use sppda::binom::{parse_rational, to_decimal, Rational};
use sppda::format::{
    parse_array, read_pda, read_sppda, sppda_to_json, write_pda, write_sppda, ArrayDoc,
};
use sppda::pda::{verify_pda, Verdict};
use sppda::perm::{exhaustive_best, heuristic_reorder, s_for_pair, Side};
use sppda::sim::{
    dedicated_run, report_csv_header, report_csv_row, report_text, sp_run, write_transmission_log,
    FileLibrary,
};
use sppda::sppda::{
    man_sppda_params, s_closed_form_construction_a, s_closed_form_man, verify_sppda, Grouping,
    SpVerdict,
};
use sppda::{construct_sppda, construction_a_pda, man_pda, AssociationProfile, PdaArray};

use crate::{ConstructArgs, FormulaCommand, SearchArgs, SimulateArgs, SweepArgs, VerifyArgs};

const DIGITS: usize = 6;

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn profile(s: &str) -> Result<AssociationProfile> {
    s.parse().with_context(|| format!("profile {s:?}"))
}

fn numbers(s: &str, what: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("{what}: not a number: {t:?}"))
        })
        .collect()
}

/// `man:K,t`, `consa:q,m`, or a PDA file.
fn load_pda(spec: &str) -> Result<PdaArray> {
    if let Some(args) = spec.strip_prefix("man:") {
        let v = numbers(args, "man:K,t")?;
        let [k, t] = v[..] else {
            bail!("man:K,t expects two numbers, got {spec:?}")
        };
        return Ok(man_pda(k, t)?);
    }
    if let Some(args) = spec.strip_prefix("consa:") {
        let v = numbers(args, "consa:q,m")?;
        let [q, m] = v[..] else {
            bail!("consa:q,m expects two numbers, got {spec:?}")
        };
        return Ok(construction_a_pda(q, m)?);
    }
    let path = Path::new(spec);
    read_pda(&read(path)?).with_context(|| format!("loading {spec}"))
}

fn one_based(perm: &[usize]) -> String {
    perm.iter()
        .map(|p| (p + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn construct(a: ConstructArgs) -> Result<ExitCode> {
    let p1 = load_pda(&a.first)?;
    let p2 = load_pda(&a.second)?;
    let mut q = construct_sppda(&p1, &p2, &profile(&a.profile)?)?;
    if a.canonical {
        q = q.canonical();
    }
    let text = if a.json {
        sppda_to_json(&q)
    } else {
        write_sppda(&q)
    };
    emit(a.output.as_deref(), &text)?;
    if a.output.is_some() {
        println!("{}", q.params());
    }
    Ok(ExitCode::SUCCESS)
}

fn print_violations(grid_verdict: &Verdict) {
    if let Verdict::Invalid(vs) = grid_verdict {
        println!("invalid: {} violation(s)", vs.len());
        for v in vs {
            println!("  [{}] {v}", v.kind());
        }
    }
}

pub fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let doc = parse_array(&read(&a.file)?)?;
    let verdict = verify_pda(doc.grid())?;
    let Some(actual) = verdict.params() else {
        print_violations(&verdict);
        return Ok(ExitCode::from(1));
    };
    let (claimed_z, claimed_s) = match &doc {
        ArrayDoc::Pda { header, .. } => (header.z, header.s),
        ArrayDoc::SpPda { header, .. } => (header.z, header.s),
    };
    if (claimed_z, claimed_s) != (actual.z, actual.s) {
        println!(
            "invalid: header declares Z={claimed_z}, S={claimed_s} but the array has Z={}, S={}",
            actual.z, actual.s
        );
        return Ok(ExitCode::from(1));
    }
    let ArrayDoc::SpPda {
        header,
        profile,
        grouping,
        grid,
    } = &doc
    else {
        println!("valid PDA {actual}");
        let pda = PdaArray::new(doc.grid().clone())?;
        match pda.regularity() {
            Some(g) => println!("regularity={g}"),
            None => println!("regularity=none"),
        }
        return Ok(ExitCode::SUCCESS);
    };
    let zh = a.zh.unwrap_or(header.zh);
    let mode = if a.search {
        Grouping::Search
    } else {
        Grouping::Given(grouping.clone())
    };
    match verify_sppda(grid, profile, zh, &mode)? {
        SpVerdict::Valid { params, witness } => {
            println!("valid SP-PDA {params}");
            println!("pi={}", one_based(&witness));
            println!("mh_ratio={}", params.mh_ratio());
            println!("mp_ratio={}", params.mp_ratio());
            println!("rate={}", params.rate());
            Ok(ExitCode::SUCCESS)
        }
        SpVerdict::NotPda(vs) => {
            print_violations(&Verdict::Invalid(vs));
            Ok(ExitCode::from(1))
        }
        SpVerdict::GroupShort {
            group,
            all_star_rows,
            required,
        } => {
            println!(
                "invalid: helper group {} has {all_star_rows} all-star rows, {required} required",
                group + 1
            );
            Ok(ExitCode::from(1))
        }
        SpVerdict::NoWitness => {
            println!("invalid: no column grouping gives every group {zh} all-star rows");
            Ok(ExitCode::from(1))
        }
    }
}

fn library(a: &SimulateArgs, f: usize) -> Result<FileLibrary> {
    match (&a.synthetic, &a.library) {
        (Some(spec), None) => {
            let v: Vec<&str> = spec.split(',').map(str::trim).collect();
            let [n, b, seed] = v[..] else {
                bail!("--synthetic expects N,B,seed, got {spec:?}")
            };
            let n: usize = n.parse().context("--synthetic N")?;
            let b: usize = b.parse().context("--synthetic B")?;
            let seed: u64 = seed.parse().context("--synthetic seed")?;
            Ok(FileLibrary::synthetic(n, b, seed, f)?)
        }
        (None, Some(dir)) => Ok(FileLibrary::from_dir(dir, f)?),
        _ => bail!("pass exactly one of --synthetic or --library"),
    }
}

pub fn simulate(a: SimulateArgs) -> Result<ExitCode> {
    let text = read(&a.file)?;
    let doc = parse_array(&text)?;
    let k = doc.grid().cols();
    let f = doc.grid().rows();
    let lib = library(&a, f)?;
    let demands: Vec<usize> = match (&a.demands, a.worst_case) {
        (Some(d), false) => {
            let v = numbers(d, "--demands")?;
            if v.contains(&0) {
                bail!("--demands are 1-based file indices");
            }
            v.into_iter().map(|d| d - 1).collect()
        }
        (None, true) => {
            if lib.len() < k {
                bail!(
                    "--worst-case needs at least {k} files, the library has {}",
                    lib.len()
                );
            }
            (0..k).collect()
        }
        _ => bail!("pass exactly one of --demands or --worst-case"),
    };
    if demands.len() != k {
        bail!("{} demands given for {k} users", demands.len());
    }
    let report = match doc {
        ArrayDoc::SpPda { .. } => sp_run(&read_sppda(&text)?, &lib, &demands)?,
        ArrayDoc::Pda { .. } => dedicated_run(&read_pda(&text)?, &lib, &demands)?,
    };
    if let Some(log) = &a.log {
        emit(
            Some(log),
            &write_transmission_log(&report.transmissions, &demands),
        )?;
    }
    if let Some(csv) = &a.csv {
        emit(
            Some(csv),
            &format!("{}\n{}\n", report_csv_header(), report_csv_row(&report)),
        )?;
    }
    emit(a.report.as_deref(), &report_text(&report))?;
    Ok(if report.all_decoded() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn csv_out(path: Option<&Path>) -> Result<csv::Writer<Box<dyn std::io::Write>>> {
    let sink: Box<dyn std::io::Write> = match path {
        Some(p) => {
            Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)
        }
        None => Box::new(std::io::stdout()),
    };
    Ok(csv::Writer::from_writer(sink))
}

pub fn search(a: SearchArgs) -> Result<ExitCode> {
    let p1 = load_pda(&a.first)?;
    let p2 = load_pda(&a.second)?;
    let profile = profile(&a.profile)?;
    let mut out = csv_out(a.csv.as_deref())?;
    let (pi1, pi2) = if a.greedy {
        let before = sppda::s_count(&p1, &p2, &profile)?;
        let r1 = heuristic_reorder(&p1, &profile, Side::First)?;
        let r2 = heuristic_reorder(&p2, &profile, Side::Second)?;
        let s = s_for_pair(&p1, &p2, &profile, &r1.perm, &r2.perm)?;
        out.write_record(["method", "pi1", "pi2", "s", "s_before"])?;
        out.write_record([
            "greedy",
            &one_based(&r1.perm),
            &one_based(&r2.perm),
            &s.to_string(),
            &before.to_string(),
        ])?;
        eprintln!("greedy: S {before} -> {s}");
        (r1.perm, r2.perm)
    } else if a.exhaustive {
        let res = exhaustive_best(&p1, &p2, &profile, a.budget, a.top.max(1))?;
        out.write_record(["rank", "pi1", "pi2", "s", "s_min", "s_max"])?;
        for (i, pair) in res.top.iter().enumerate() {
            out.write_record([
                (i + 1).to_string(),
                one_based(&pair.pi1),
                one_based(&pair.pi2),
                pair.s_value.to_string(),
                res.s_min.to_string(),
                res.s_max.to_string(),
            ])?;
        }
        eprintln!(
            "s_min={} s_max={} evaluations={}",
            res.s_min, res.s_max, res.evaluations
        );
        (res.best.pi1, res.best.pi2)
    } else {
        bail!("pass --exhaustive or --greedy");
    };
    out.flush()?;
    if let Some(path) = &a.write_first {
        emit(Some(path), &write_pda(&p1.permute_columns(&pi1)?))?;
    }
    if let Some(path) = &a.write_second {
        emit(Some(path), &write_pda(&p2.permute_columns(&pi2)?))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn t2_values(spec: &str, l1: usize) -> Result<Vec<usize>> {
    let spec = spec.trim();
    if spec == "all" {
        return Ok((0..=l1).collect());
    }
    if let Some((lo, hi)) = spec.split_once('-') {
        let lo: usize = lo.trim().parse().context("--t2 range start")?;
        let hi: usize = hi.trim().parse().context("--t2 range end")?;
        return Ok((lo..=hi).collect());
    }
    numbers(spec, "--t2")
}

pub fn sweep(a: SweepArgs) -> Result<ExitCode> {
    let profile = profile(&a.profile)?;
    let mh_ratio =
        parse_rational(&a.mh).ok_or_else(|| anyhow!("--mh: not a fraction: {:?}", a.mh))?;
    let schemes = a
        .schemes
        .split(',')
        .map(|s| s.parse::<SchemeTag>())
        .collect::<sppda::Result<Vec<_>>>()?;
    let config = SweepConfig {
        users: a.k,
        lambda: a.lambda,
        t2: t2_values(&a.t2, profile.largest())?,
        profile,
        mh_ratio,
        schemes,
        verify_cap: a.verify_cap,
    };
    let rows = run_sweep(&config)?;
    let mut out = csv_out(a.out.as_deref())?;
    out.write_record([
        "scheme",
        "users",
        "lambda",
        "profile",
        "t1",
        "q",
        "m",
        "t2",
        "mh_ratio",
        "mp_ratio",
        "mp_decimal",
        "rate",
        "rate_decimal",
        "subpacketization",
        "codes",
        "verified",
    ])?;
    let parts = |p: &AssociationProfile| {
        p.parts()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    for r in &rows {
        let (t1, q, m) = match r.first {
            FirstPda::Man { t1 } => (t1.to_string(), String::new(), String::new()),
            FirstPda::ConstructionA { q, m } => (String::new(), q.to_string(), m.to_string()),
        };
        out.write_record([
            r.scheme.to_string(),
            r.profile.users().to_string(),
            r.lambda.to_string(),
            parts(&r.profile),
            t1,
            q,
            m,
            r.t2.to_string(),
            r.mh_ratio.to_string(),
            r.mp_ratio.to_string(),
            to_decimal(&r.mp_ratio, DIGITS),
            r.rate.to_string(),
            to_decimal(&r.rate, DIGITS),
            r.subpacketization.to_string(),
            r.codes.to_string(),
            r.verified
                .map_or_else(|| "skipped".into(), |v| v.to_string()),
        ])?;
    }
    out.flush()?;
    Ok(if rows.iter().any(|r| r.verified == Some(false)) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn rational_line(out: &mut String, key: &str, r: &Rational) {
    let _ = writeln!(out, "{key}={r}");
    let _ = writeln!(out, "{key}_decimal={}", to_decimal(r, DIGITS));
}

pub fn formulas(cmd: FormulaCommand) -> Result<ExitCode> {
    let mut out = String::new();
    match cmd {
        FormulaCommand::Man {
            lambda,
            t1,
            profile: p,
            t2,
        } => {
            let p = profile(&p)?;
            let _ = writeln!(out, "s={}", s_closed_form_man(lambda, t1, &p, t2)?);
            let _ = writeln!(out, "f={}", f_man_pair(lambda, t1, &p, t2));
            rational_line(&mut out, "rate", &rate_man_pair(lambda, t1, &p, t2)?);
        }
        FormulaCommand::Consa {
            q,
            m,
            profile: p,
            t2,
        } => {
            let p = profile(&p)?;
            let _ = writeln!(out, "s={}", s_closed_form_construction_a(q, m, &p, t2)?);
            let _ = writeln!(out, "f={}", f_construction_a_pair(q, m, &p, t2));
            rational_line(&mut out, "rate", &rate_construction_a(q, m, &p, t2)?);
        }
        FormulaCommand::Compare {
            q,
            m,
            profile: p,
            t2,
        } => {
            let r = compare(q, m, t2, &profile(&p)?)?;
            let _ = writeln!(out, "lambda={}", r.lambda);
            let _ = writeln!(out, "t1={}", r.t1);
            let _ = writeln!(out, "t2={}", r.t2);
            let _ = writeln!(out, "f_man={}", r.f_man);
            let _ = writeln!(out, "f_a={}", r.f_a);
            rational_line(&mut out, "f_ratio_exact", &r.f_ratio_exact);
            let _ = writeln!(out, "f_ratio_approx={}", r.f_ratio_approx);
            rational_line(&mut out, "rate_man", &r.rate_man);
            rational_line(&mut out, "rate_a", &r.rate_a);
            match &r.rate_ratio {
                Some(x) => rational_line(&mut out, "rate_ratio", x),
                None => out.push_str("rate_ratio=undefined\n"),
            }
            match &r.rate_ratio_uniform {
                Some(x) => {
                    let _ = writeln!(out, "rate_ratio_uniform={x}");
                }
                None => out.push_str("rate_ratio_uniform=n/a\n"),
            }
        }
        FormulaCommand::ManSppda { k, t, profile: p } => {
            let params = man_sppda_params(k, t, &profile(&p)?)?;
            let _ = writeln!(out, "params={params}");
            let _ = writeln!(out, "mh_ratio={}", params.mh_ratio());
            let _ = writeln!(out, "mp_ratio={}", params.mp_ratio());
            let _ = writeln!(out, "rate={}", params.rate());
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}
