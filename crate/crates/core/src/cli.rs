//! Command-line driver. Exit status: 0 success, 1 mathematical failure,
//! 2 usage or input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{
    construct_family_a, construct_family_b, filter_by_fs, galois_images, galois_orbit,
    manifest_markdown, run_campaign, solve_t_ideal, CampaignConfig, FsFilter, Manifest, TSolveResult,
    PRINTED_T_RELATIONS,
};
use crate::exact::Cyclotomic;
use crate::modular::{admissibility_check, ModularData};

#[derive(Parser, Debug)]
#[command(name = "rank6", version, about = "Rank-6 modular data: verification, elimination campaign, T-matrix solve")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the admissibility conditions for modular data in a JSON file.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
    /// Run the degenerate-spectrum elimination campaign.
    Campaign {
        #[arg(long = "sign-choice")]
        sign_choice: Vec<u8>,
        #[arg(long)]
        case: Vec<u8>,
        #[arg(long = "degree-cap")]
        degree_cap: Option<u32>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Primes for the modular computations (comma separated).
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u32>,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
        /// Also write the JSON manifest here.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Solve for the T-matrix given a 6x6 S-matrix (or modular data) file.
    SolveT {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
    /// Write both families of modular data and their Galois orbits.
    Families {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Galois orbit of modular data in a JSON file.
    Orbit {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
    /// Render a campaign manifest as tables and the comparison with the
    /// published ones.
    Report { manifest: PathBuf },
}

/// Text to print and the exit status.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub status: i32,
}

impl Output {
    fn new(text: String, ok: bool) -> Self {
        Output {
            text,
            status: if ok { 0 } else { 1 },
        }
    }
}

/// Errors that are the caller's fault: unreadable or malformed input.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    Input { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            _ => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

/// Modular data from JSON, with the parse location on failure.
pub fn load_modular_data(path: &Path) -> Result<ModularData, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        msg: format!("line {}, column {}: {e}", e.line(), e.column()),
    })
}

/// A bare S-matrix, or modular data whose S is used.
pub fn load_s_matrix(path: &Path) -> Result<Vec<Vec<Cyclotomic>>, CliError> {
    let text = read(path)?;
    if let Ok(md) = serde_json::from_str::<ModularData>(&text) {
        return Ok(md.s().to_vec());
    }
    let s: Vec<Vec<Cyclotomic>> = serde_json::from_str(&text).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        msg: format!("line {}, column {}: expected a square matrix or modular data: {e}", e.line(), e.column()),
    })?;
    if s.len() != 6 || s.iter().any(|r| r.len() != 6) {
        return Err(CliError::Input {
            path: path.display().to_string(),
            msg: format!("S must be 6x6, got {} rows", s.len()),
        });
    }
    Ok(s)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

pub fn cmd_verify(path: &Path, format: Format) -> Result<Output, CliError> {
    let md = load_modular_data(path)?;
    let rep = admissibility_check(&md);
    let text = match format {
        Format::Json => json(&rep),
        Format::Markdown => rep.to_markdown(),
    };
    Ok(Output::new(text, rep.all_pass()))
}

pub fn campaign_config(
    choices: &[u8],
    cases: &[u8],
    degree_cap: Option<u32>,
    jobs: Option<usize>,
    primes: &[u32],
) -> Result<CampaignConfig, CliError> {
    let mut cfg = CampaignConfig::default();
    if let Some(bad) = choices.iter().find(|c| !cfg.choices.contains(c)) {
        return Err(CliError::Usage(format!(
            "sign choice {bad} is not one of the representatives {:?}",
            cfg.choices
        )));
    }
    if let Some(bad) = cases.iter().find(|c| !(1..=5).contains(*c)) {
        return Err(CliError::Usage(format!("case {bad} is not in 1..=5")));
    }
    if !choices.is_empty() {
        cfg.choices = choices.to_vec();
    }
    if !cases.is_empty() {
        cfg.cases = cases.to_vec();
    }
    cfg.degree_cap = degree_cap;
    if let Some(j) = jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        cfg.jobs = j;
    }
    if !primes.is_empty() {
        if primes.iter().any(|&p| p < 3 || p >= 1 << 31) {
            return Err(CliError::Usage("primes must lie in 3..2^31".into()));
        }
        cfg.primes = primes.to_vec();
    }
    Ok(cfg)
}

pub fn cmd_campaign(cfg: &CampaignConfig, format: Format, manifest: Option<&Path>) -> Result<Output, CliError> {
    let res = run_campaign(cfg).map_err(|e| CliError::Compute(e.to_string()))?;
    let m = &res.manifest;
    if let Some(path) = manifest {
        std::fs::write(path, m.to_json()).map_err(|e| CliError::Input {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
    }
    let text = match format {
        Format::Json => m.to_json() + "\n",
        Format::Markdown => manifest_markdown(m).map_err(|e| CliError::Compute(e.to_string()))?,
    };
    Ok(Output::new(text, m.verdict()))
}

#[derive(Serialize)]
struct SolveTReport<'a> {
    result: &'a TSolveResult,
    printed_relations: Vec<&'static str>,
    fs: &'a FsFilter,
    conjugate_pair: bool,
}

fn solve_t_markdown(res: &TSolveResult, fs: &FsFilter, pair: bool) -> String {
    let mut out = String::from("## T-matrix solve\n\n");
    let _ = writeln!(out, "d5 = {}, minimal polynomial {}\n", res.d5, res.d5_min_poly);
    out.push_str("Reduced basis of the T-ideal:\n\n");
    for r in &res.relations {
        let _ = writeln!(out, "- {r}");
    }
    out.push_str("\nPrinted relations:\n\n");
    for r in PRINTED_T_RELATIONS {
        let _ = writeln!(out, "- {r}");
    }
    let _ = writeln!(
        out,
        "\nPrinted relations in the T-ideal: {}. Basis elements outside the printed ideal: {}.",
        res.printed_in_ideal,
        res.not_in_printed.len()
    );
    let _ = writeln!(
        out,
        "\nZeros of the printed relations: {} (orders dividing {}). Zeros of the T-ideal: {}.\n",
        res.solutions.len(),
        res.search_order,
        res.ideal_solutions.len()
    );
    out.push_str("| # | d5 | theta_1 .. theta_5 | x | nu_2 all +-1 |\n|---|---|---|---|---|\n");
    for (i, s) in res.solutions.iter().enumerate() {
        let th: Vec<String> = s.thetas[1..].iter().map(root_label).collect();
        let _ = writeln!(
            out,
            "| {i} | {} | {} | {} | {} |",
            if s.d5 == res.d5 { "S_05".to_string() } else { s.d5.to_string() },
            th.join(", "),
            root_label(&s.x),
            if fs.survivors.contains(&i) { "yes" } else { "no" }
        );
    }
    let _ = writeln!(
        out,
        "\nIndicator evaluations: {}. Survivors: {}, of which {} for S itself (complex-conjugate pair: {}).",
        fs.evaluations,
        fs.survivors.len(),
        fs.survivors_for_s.len(),
        pair
    );
    out
}

/// `e(k/n)` for a root of unity, the plain value otherwise.
pub fn root_label(z: &Cyclotomic) -> String {
    match z.root_of_unity_order() {
        Some((1, _)) => "1".into(),
        Some((n, k)) => format!("e({k}/{n})"),
        None => z.to_string(),
    }
}

pub fn cmd_solve_t(path: &Path, format: Format) -> Result<Output, CliError> {
    let s = load_s_matrix(path)?;
    let res = solve_t_ideal(&s).map_err(|e| CliError::Compute(e.to_string()))?;
    let (fs, _) = filter_by_fs(&res).map_err(|e| CliError::Compute(e.to_string()))?;
    let pair = fs.conjugate_pair(&res.solutions);
    let ok = res.matches_printed() && res.solutions.len() == 12 && fs.survivors_for_s.len() == 2 && pair;
    let mut text = match format {
        Format::Json => json(&SolveTReport {
            result: &res,
            printed_relations: PRINTED_T_RELATIONS.to_vec(),
            fs: &fs,
            conjugate_pair: pair,
        }),
        Format::Markdown => solve_t_markdown(&res, &fs, pair),
    };
    if !ok && format == Format::Markdown {
        let mut why = Vec::new();
        if !res.matches_printed() {
            why.push("the T-ideal differs from the ideal of the printed relations".to_string());
        }
        if res.solutions.len() != 12 {
            why.push(format!("{} solutions instead of 12", res.solutions.len()));
        }
        if fs.survivors_for_s.len() != 2 || !pair {
            why.push("the indicator filter does not leave one conjugate pair".into());
        }
        let _ = writeln!(text, "\nFailed: {}.", why.join("; "));
    }
    Ok(Output::new(text, ok))
}

#[derive(Serialize)]
struct OrbitMember {
    exponent: u32,
    t: Vec<String>,
    data: ModularData,
}

#[derive(Serialize)]
struct OrbitReport {
    /// Conjugates distinct up to relabeling.
    up_to_relabeling: Vec<OrbitMember>,
    /// Conjugates distinct as labeled data.
    labeled: Vec<OrbitMember>,
    all_admissible: bool,
}

fn orbit_report(md: &ModularData) -> OrbitReport {
    let member = |(k, d): (u32, ModularData)| OrbitMember {
        exponent: k,
        t: d.t().iter().map(root_label).collect(),
        data: d,
    };
    let up: Vec<OrbitMember> = galois_orbit(md).into_iter().map(member).collect();
    let labeled: Vec<OrbitMember> = galois_images(md).into_iter().map(member).collect();
    let all_admissible = labeled.iter().all(|m| admissibility_check(&m.data).all_pass());
    OrbitReport {
        up_to_relabeling: up,
        labeled,
        all_admissible,
    }
}

fn orbit_markdown(r: &OrbitReport) -> String {
    let mut out = String::from("## Galois orbit\n\n| Exponent | T |\n|---|---|\n");
    for m in &r.labeled {
        let _ = writeln!(out, "| {} | {} |", m.exponent, m.t.join(", "));
    }
    let _ = writeln!(
        out,
        "\n{} distinct labeled T-spectra, {} up to relabeling; all admissible: {}.",
        r.labeled.len(),
        r.up_to_relabeling.len(),
        r.all_admissible
    );
    out
}

pub fn cmd_orbit(path: &Path, format: Format) -> Result<Output, CliError> {
    let md = load_modular_data(path)?;
    let r = orbit_report(&md);
    let text = match format {
        Format::Json => json(&r),
        Format::Markdown => orbit_markdown(&r),
    };
    Ok(Output::new(text, r.all_admissible))
}

pub fn cmd_families(out: Option<&Path>) -> Result<Output, CliError> {
    let fams = [("family_A", construct_family_a()), ("family_B", construct_family_b())];
    let mut text = String::new();
    let mut ok = true;
    for (name, md) in &fams {
        let rep = admissibility_check(md);
        let orbit = orbit_report(md);
        ok &= rep.all_pass() && orbit.all_admissible;
        let _ = writeln!(
            text,
            "{name}: admissible {}, D^2 = {}, N = {}, Galois group {}, orbit {} labeled / {} up to relabeling",
            rep.all_pass(),
            rep.scalars.dsq,
            rep.t_order.map_or("-".into(), |n| n.to_string()),
            rep.galois_group.join(" "),
            orbit.labeled.len(),
            orbit.up_to_relabeling.len()
        );
        if let Some(dir) = out {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Input {
                path: dir.display().to_string(),
                msg: e.to_string(),
            })?;
            for (file, body) in [
                (format!("{name}.json"), json(md)),
                (format!("{name}_orbit.json"), json(&orbit)),
            ] {
                let p = dir.join(file);
                std::fs::write(&p, body).map_err(|e| CliError::Input {
                    path: p.display().to_string(),
                    msg: e.to_string(),
                })?;
            }
        } else {
            text.push_str(&json(md));
        }
    }
    Ok(Output::new(text, ok))
}

pub fn cmd_report(path: &Path) -> Result<Output, CliError> {
    let m = Manifest::from_json(&read(path)?).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    let text = manifest_markdown(&m).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    Ok(Output::new(text, m.verdict()))
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Verify { file, format } => cmd_verify(&file, format),
        Command::Campaign {
            sign_choice,
            case,
            degree_cap,
            jobs,
            primes,
            format,
            manifest,
        } => {
            let cfg = campaign_config(&sign_choice, &case, degree_cap, jobs, &primes)?;
            cmd_campaign(&cfg, format, manifest.as_deref())
        }
        Command::SolveT { file, format } => cmd_solve_t(&file, format),
        Command::Families { out } => cmd_families(out.as_deref()),
        Command::Orbit { file, format } => cmd_orbit(&file, format),
        Command::Report { manifest } => cmd_report(&manifest),
    }
}

/// Parses `args`, runs the command, prints, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            out.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.status()
        }
    }
}
