//! One function per subcommand. Each returns the text report printed on
//! success or a [`Failure`] carrying the exit code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::json;

use skewbrace::brace::BraceError;
use skewbrace::enumerate::{count_by_provenance, count_by_type, enumerate_braces, pq_catalog};
use skewbrace::hgs::{regular_to_brace, HgsError, InducedSetting};
use skewbrace::io::{self, IoError};
use skewbrace::sdp::{make_sdp_brace, pair_code, SdpError, SdpSpec};
use skewbrace::{are_isomorphic, BraceCatalog, EnumerateError, FiniteGroup, PqKind, SkewBrace};

pub struct Options {
    pub output: Option<PathBuf>,
    pub limit: Option<usize>,
    pub seed: Option<u64>,
}

pub enum Failure {
    /// Valid input, negative answer.
    Negative(String),
    /// Malformed or unusable input.
    Input(String),
    /// The enumeration guard was exceeded.
    Guard(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Input(_) => 2,
            Failure::Guard(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Negative(m) | Failure::Input(m) | Failure::Guard(m) => m,
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Brace(BraceError::BraceAxiomFails { .. }) => Failure::Negative(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn write_output(opts: &Options, contents: &str) -> Result<(), Failure> {
    if let Some(path) = &opts.output {
        std::fs::write(path, contents)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

/// Writes `contents` to `--output`, or appends it to the report if no file
/// was given.
fn emit(opts: &Options, report: &mut String, contents: &str) -> Result<(), Failure> {
    if opts.output.is_some() {
        write_output(opts, contents)
    } else {
        report.push_str(contents);
        Ok(())
    }
}

fn load_brace_groups(path: &Path) -> Result<(FiniteGroup, FiniteGroup), Failure> {
    Ok(io::parse_brace_groups(&io::read_file(path)?)?)
}

fn load_brace(path: &Path) -> Result<SkewBrace, Failure> {
    let (dot, circ) = load_brace_groups(path)?;
    SkewBrace::new(dot, circ).map_err(brace_failure)
}

fn brace_failure(e: BraceError) -> Failure {
    match e {
        BraceError::BraceAxiomFails { .. } => Failure::Negative(e.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

fn load_group(path: &Path) -> Result<FiniteGroup, Failure> {
    Ok(io::parse_group(&io::read_file(path)?)?)
}

pub fn verify(opts: &Options, path: &Path) -> Outcome {
    let (dot, circ) = load_brace_groups(path)?;
    match SkewBrace::new(dot, circ) {
        Ok(b) => {
            write_output(opts, &io::brace_to_json(&b))?;
            Ok(format!("valid skew brace of order {}\n", b.n()))
        }
        Err(BraceError::BraceAxiomFails { x, y, z }) => Err(Failure::Negative(format!(
            "not a skew brace: x ∘ (y · z) ≠ (x ∘ y) · x⁻¹ · (x ∘ z) at (x, y, z) = ({x}, {y}, {z})"
        ))),
        Err(e) => Err(Failure::Input(e.to_string())),
    }
}

pub fn gamma(opts: &Options, path: &Path) -> Outcome {
    let b = load_brace(path)?;
    assert!(
        b.gamma().respects(b.circ()),
        "γ is a homomorphism of (G, ∘)"
    );
    assert!(b.gamma().lands_in_aut(b.dot()), "γ lands in Aut(G, ·)");
    let rows: Vec<&[usize]> = b.gamma().images().iter().map(|p| p.as_slice()).collect();
    let mut report = String::new();
    for (x, row) in rows.iter().enumerate() {
        writeln!(report, "gamma[{x}] = {row:?}").unwrap();
    }
    writeln!(report, "gamma is a homomorphism into Aut(G, ·)").unwrap();
    let mut s = serde_json::to_string(&json!({"gamma": rows})).unwrap();
    s.push('\n');
    write_output(opts, &s)?;
    Ok(report)
}

pub fn ideals(opts: &Options, path: &Path) -> Outcome {
    let b = load_brace(path)?;
    let classes = b.classify_subgroups();
    let mut report = String::new();
    writeln!(report, "subset | left ideal | strong left ideal | ideal").unwrap();
    for c in &classes {
        writeln!(
            report,
            "{:?} | {} | {} | {}",
            c.subset, c.is_left_ideal, c.is_strong_left_ideal, c.is_ideal
        )
        .unwrap();
    }
    let count = |f: fn(&skewbrace::IdealClass) -> bool| classes.iter().filter(|c| f(c)).count();
    writeln!(
        report,
        "{} subgroups, {} left ideals, {} strong left ideals, {} ideals",
        classes.len(),
        count(|c| c.is_left_ideal),
        count(|c| c.is_strong_left_ideal),
        count(|c| c.is_ideal)
    )
    .unwrap();
    let rows: Vec<_> = classes
        .iter()
        .map(|c| {
            json!({
                "subset": c.subset,
                "subgroup_circ": c.is_subgroup_circ,
                "subgroup_dot": c.is_subgroup_dot,
                "left_ideal": c.is_left_ideal,
                "strong_left_ideal": c.is_strong_left_ideal,
                "ideal": c.is_ideal,
            })
        })
        .collect();
    let mut s = serde_json::to_string(&json!({ "subgroups": rows })).unwrap();
    s.push('\n');
    write_output(opts, &s)?;
    Ok(report)
}

pub fn opposite(opts: &Options, path: &Path) -> Outcome {
    let b = load_brace(path)?;
    let mut report = String::new();
    emit(opts, &mut report, &io::brace_to_json(&b.opposite()))?;
    Ok(report)
}

pub fn sdp(opts: &Options, path: &Path, check_only: bool) -> Outcome {
    let base = path.parent().unwrap_or(Path::new("."));
    let input = io::parse_sdp(&io::read_file(path)?, base)?;
    let spec = SdpSpec::new(input.a, input.b, input.phi, input.theta)
        .map_err(|e| Failure::Input(e.to_string()))?;
    if let Err(w) = spec.check_admissible() {
        return Err(Failure::Negative(format!("θ is not admissible: {w}")));
    }
    let mut report = String::from("θ is admissible\n");
    if check_only {
        return Ok(report);
    }
    let brace = make_sdp_brace(&spec).map_err(|e| match e {
        SdpError::NotAdmissible(w) => Failure::Negative(w.to_string()),
        other => Failure::Input(other.to_string()),
    })?;
    let (na, nb) = (spec.a().n(), spec.b().n());
    let a_part: Vec<usize> = (0..na).map(|a| pair_code(a, 0, nb)).collect();
    let b_part: Vec<usize> = (0..nb).map(|b| pair_code(0, b, nb)).collect();
    writeln!(report, "semidirect product of order {}", brace.n()).unwrap();
    writeln!(
        report,
        "(A, e) is an ideal: {}",
        brace.classify_subset(&a_part).is_ideal
    )
    .unwrap();
    writeln!(
        report,
        "(e, B) is a left ideal: {}",
        brace.classify_subset(&b_part).is_left_ideal
    )
    .unwrap();
    emit(opts, &mut report, &io::brace_to_json(&brace))?;
    Ok(report)
}

fn catalog_report(cat: &BraceCatalog, report: &mut String) {
    writeln!(report, "{} braces", cat.len()).unwrap();
    for (label, count) in count_by_type(cat) {
        writeln!(report, "  type {label}: {count}").unwrap();
    }
    for (kind, count) in count_by_provenance(cat) {
        writeln!(report, "  provenance {kind}: {count}").unwrap();
    }
}

pub fn enumerate(opts: &Options, path: &Path) -> Outcome {
    let g = load_group(path)?;
    let cat = enumerate_braces(&g, opts.limit, opts.seed).map_err(|e| match e {
        EnumerateError::OrderGuardExceeded { .. } => {
            Failure::Guard(format!("{e}; raise it with --limit"))
        }
        other => Failure::Input(other.to_string()),
    })?;
    let mut report = String::new();
    catalog_report(&cat, &mut report);
    write_output(opts, &io::catalog_to_json(&cat))?;
    Ok(report)
}

pub fn pq(opts: &Options, p: usize, q: usize, which: PqKind) -> Outcome {
    let cat = pq_catalog(p, q, which).map_err(|e| Failure::Input(e.to_string()))?;
    let mut report = String::new();
    writeln!(report, "order {} = {p}·{q}, {which} circ group", p * q).unwrap();
    catalog_report(&cat, &mut report);
    write_output(opts, &io::catalog_to_json(&cat))?;
    Ok(report)
}

/// The first normal subgroup (in sorted order) complementing `b`.
fn find_complement(g: &FiniteGroup, b: &[usize]) -> Option<Vec<usize>> {
    if b.is_empty() || !g.n().is_multiple_of(b.len()) {
        return None;
    }
    g.subgroups_of_order(g.n() / b.len()).into_iter().find(|a| {
        g.is_normal(a).unwrap_or(false) && a.iter().filter(|x| b.contains(x)).count() == 1
    })
}

fn hgs_failure(e: HgsError) -> Failure {
    match e {
        HgsError::MNotRegular
        | HgsError::MNotNormalized
        | HgsError::NNotRegular
        | HgsError::NNotNormalized
        | HgsError::NotRegular
        | HgsError::NotNormalized => Failure::Negative(e.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

pub fn induce(
    opts: &Options,
    m_path: &Path,
    n_path: &Path,
    group_path: &Path,
    b_text: &str,
    a_text: Option<&str>,
) -> Outcome {
    let m = io::parse_perm_set(&io::read_file(m_path)?)?;
    let n = io::parse_perm_set(&io::read_file(n_path)?)?;
    let g = load_group(group_path)?;
    let mut b = io::parse_subset(b_text)?;
    b.sort_unstable();
    b.dedup();
    let a = match a_text {
        Some(t) => io::parse_subset(t)?,
        None => find_complement(&g, &b)
            .ok_or_else(|| Failure::Input("B has no normal complement".to_string()))?,
    };
    let setting = InducedSetting::new(&g, &a, &b).map_err(hgs_failure)?;
    let induced = setting.induce(&m, &n).map_err(hgs_failure)?;
    let brace = regular_to_brace(&induced, &g).map_err(hgs_failure)?;

    let a_brace =
        regular_to_brace(&setting.psi().forward_set(&m), &setting.a_circ()).map_err(hgs_failure)?;
    let b_brace = regular_to_brace(&n, &setting.b_circ()).map_err(hgs_failure)?;
    let product =
        SdpSpec::with_trivial_theta(a_brace.clone(), b_brace.clone(), setting.phi().clone())
            .map_err(|e| Failure::Input(e.to_string()))?;

    let mut report = String::new();
    writeln!(report, "A = {:?}, B = {:?}", setting.a(), setting.b()).unwrap();
    writeln!(report, "induced brace of order {}", brace.n()).unwrap();
    if product.is_admissible() {
        let equal = setting
            .induced_equals_sdp(&a_brace, &b_brace)
            .map_err(hgs_failure)?;
        assert!(equal, "the induced brace is the product with trivial θ");
        writeln!(report, "equals the semidirect product with trivial θ").unwrap();
    } else {
        writeln!(
            report,
            "the product with trivial θ is not a brace; no comparison"
        )
        .unwrap();
    }
    emit(opts, &mut report, &io::brace_to_json(&brace))?;
    Ok(report)
}

pub fn isomorphic(opts: &Options, first: &Path, second: &Path) -> Outcome {
    let g = load_group(first)?;
    let h = load_group(second)?;
    match are_isomorphic(&g, &h) {
        Some(w) => {
            let mut s = serde_json::to_string(&json!({"witness": w.as_slice()})).unwrap();
            s.push('\n');
            write_output(opts, &s)?;
            Ok(format!("isomorphic via {:?}\n", w.as_slice()))
        }
        None => Err(Failure::Negative("not isomorphic".to_string())),
    }
}
