//! Command implementations behind the `postlie` binary.

pub mod document;
pub mod report;

use std::collections::BTreeMap;

use postlie::catalog::{self, CatalogError, EntryKind};
use postlie::ffsearch::{self, HeisenbergOptions, Limits, SearchError, SearchSpec, Strategy};
use postlie::grading::{self, Grading, GradingError};
use postlie::linalg::vector::format_basis;
use postlie::symmetrization::{self, CpaOutcome, SymmetrizationError};
use postlie::{pa, BilinearProduct, Field, LieAlgebra, PaError, PaPair, Subspace};
use thiserror::Error;

use document::{DocumentError, InputDocument, Loaded};
use report::{Check, Report};

/// Errors that map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error("{0}")]
    Input(String),
}

impl From<PaError> for CliError {
    fn from(e: PaError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    G,
    N,
}

impl Target {
    fn name(self) -> &'static str {
        match self {
            Target::G => "g",
            Target::N => "n",
        }
    }
}

/// Parses `Q`, `p`, or `Fp:p`.
pub fn parse_field(text: &str) -> Result<Field, CliError> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    let digits = t.strip_prefix("Fp:").or_else(|| t.strip_prefix("F")).unwrap_or(t);
    let p: u32 = digits
        .parse()
        .map_err(|_| CliError::Input(format!("field must be Q, a prime p, or Fp:p, got {text:?}")))?;
    Field::prime(p).map_err(|e| CliError::Input(e.to_string()))
}

pub fn load(text: &str) -> Result<Loaded, CliError> {
    Ok(InputDocument::parse(text)?.load()?)
}

/// A bracket of the document, or a failed check when it is not a Lie bracket.
fn algebra_or_fail(doc: &Loaded, which: &str, report: &mut Report) -> Option<LieAlgebra> {
    match doc.algebra(which) {
        Ok(a) => Some(a),
        Err(e) => {
            report.check(Check::flag(format!("{which} is a Lie algebra ({e})"), false));
            None
        }
    }
}

fn subspace_text(s: &Subspace) -> String {
    let basis = s.basis();
    if basis.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = basis.iter().map(|v| format_basis(v)).collect();
    format!("<{}>", parts.join(", "))
}

fn pair_of(doc: &Loaded, report: &mut Report) -> Option<PaPair> {
    let g = algebra_or_fail(doc, "g", report);
    let n = algebra_or_fail(doc, "n", report);
    let (g, n) = (g?, n?);
    Some(PaPair::new(g, n, doc.product_or_zero()).expect("dimensions agree in a loaded document"))
}

pub fn check_lie(doc: &Loaded) -> Report {
    let mut report = Report::new("check-lie");
    let mut any = false;
    for (which, tensor) in [("g", &doc.g), ("n", &doc.n)] {
        if tensor.is_none() {
            continue;
        }
        any = true;
        let name = format!("{which}: antisymmetry and Jacobi identity");
        match doc.algebra(which) {
            Ok(_) => report.check(Check::flag(name, true)),
            Err(e) => report.check(Check::flag(format!("{name} ({e})"), false)),
        }
    }
    if !any {
        report.fact("note", "no brackets given; every bracket is zero");
    }
    report
}

pub fn check_pa(doc: &Loaded) -> Report {
    let mut report = Report::new("check-pa");
    if let Some(pair) = pair_of(doc, &mut report) {
        report.verdict("post-Lie axioms", &pair.check_pa());
    }
    report
}

pub fn check_cpa(doc: &Loaded) -> Result<Report, CliError> {
    let mut report = Report::new("check-cpa");
    if doc.n.is_some() && doc.g.is_some() && doc.n != doc.g {
        return Err(CliError::Input(
            "check-cpa needs a single bracket: give g only, or n equal to g".into(),
        ));
    }
    let which = if doc.g.is_some() { "g" } else { "n" };
    let Some(g) = algebra_or_fail(doc, which, &mut report) else {
        return Ok(report);
    };
    let prod = doc.product_or_zero();
    report.verdict("CPA axioms", &pa::check_cpa(&g, &prod)?);
    if report.passed {
        let pair = PaPair::cpa(g, prod)?;
        report.fact("complete (all L(x) nilpotent)", pair.all_left_mults_nilpotent());
    }
    Ok(report)
}

pub fn check_lr(doc: &Loaded) -> Result<Report, CliError> {
    let mut report = Report::new("check-lr");
    if let Some(g) = &doc.g {
        if g.iter().any(|c| !c.is_zero()) {
            return Err(CliError::Input("check-lr needs g abelian (omit g)".into()));
        }
    }
    let Some(n) = algebra_or_fail(doc, "n", &mut report) else {
        return Ok(report);
    };
    let prod = doc.product_or_zero();
    report.verdict("post-Lie axioms on (abelian, n)", &pa::check_lr(&n, &prod)?);
    if report.passed {
        let complete = symmetrization::lr_completeness(&n, &prod).map_err(|e| CliError::Input(e.to_string()))?;
        report.fact("LR product", "negative of the given product");
        report.fact("complete (all L(x) nilpotent)", complete);
    }
    Ok(report)
}

fn describe_algebra(report: &mut Report, which: &str, a: &LieAlgebra) {
    let dims = |s: Vec<Subspace>| s.iter().map(|x| x.dim().to_string()).collect::<Vec<_>>().join(" > ");
    report.fact(format!("{which} lower central series"), dims(a.lower_central_series()));
    report.fact(format!("{which} derived series"), dims(a.derived_series()));
    let class = match a.nilpotency_class().class() {
        Some(c) => c.to_string(),
        None => "not nilpotent".into(),
    };
    report.fact(format!("{which} nilpotency class"), class);
    report.fact(format!("{which} solvable"), a.is_solvable());
    report.fact(format!("{which} center"), subspace_text(&a.center()));
    report.fact(format!("{which} stem"), a.is_stem());
    report.fact(format!("{which} Heisenberg"), a.is_heisenberg());
}

pub fn analyze(doc: &Loaded) -> Report {
    let mut report = Report::new("analyze");
    report.fact("field", doc.field);
    report.fact("dim", doc.dim);
    let g = algebra_or_fail(doc, "g", &mut report);
    let n = algebra_or_fail(doc, "n", &mut report);
    if let Some(g) = &g {
        describe_algebra(&mut report, "g", g);
    }
    if let Some(n) = &n {
        describe_algebra(&mut report, "n", n);
    }
    if let (Some(g), Some(n), Some(prod)) = (g, n, &doc.product) {
        let pair = PaPair::new(g, n, prod.clone()).expect("dimensions agree");
        report.verdict("post-Lie axioms", &pair.check_pa());
        report.fact("Ann_L", subspace_text(&pair.ann_left()));
        report.fact("Ann_R", subspace_text(&pair.ann_right()));
        report.fact("H0", subspace_text(&pair.h0()));
        report.fact("all L(x) nilpotent", pair.all_left_mults_nilpotent());
    }
    report
}

fn product_table(report: &mut Report, prod: &BilinearProduct, op: &str) {
    let d = prod.dim();
    let mut any = false;
    for i in 0..d {
        for j in 0..d {
            let v = prod.basis_product(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                any = true;
                report.fact(format!("e{}{op}e{}", i + 1, j + 1), format_basis(v));
            }
        }
    }
    if !any {
        report.fact(format!("x{op}y"), "0");
    }
}

pub fn symmetrize(doc: &Loaded, target: Target) -> Result<Report, CliError> {
    let mut report = Report::new("symmetrize");
    let Some(pair) = pair_of(doc, &mut report) else {
        return Ok(report);
    };
    let pa_verdict = pair.check_pa();
    report.verdict("post-Lie axioms", &pa_verdict);
    if !pa_verdict.is_ok() {
        return Ok(report);
    }
    let outcome = match target {
        Target::G => symmetrization::cpa_on_g(&pair),
        Target::N => symmetrization::cpa_on_n(&pair),
    }
    .map_err(|e: SymmetrizationError| CliError::Input(e.to_string()))?;
    let condition = match target {
        Target::G => "[L(x)+R(x), ad(y)] = ad(x·y + y·x)",
        Target::N => "[ad(x),Ad(y)] = Ad([x,y]) and its companion",
    };
    match &outcome {
        CpaOutcome::Cpa(sym) => {
            report.check(Check::flag(condition, true));
            let base = match target {
                Target::G => pair.g(),
                Target::N => pair.n(),
            };
            report.verdict(
                &format!("x∘y is a CPA-structure on {}", target.name()),
                &pa::check_cpa(base, sym.product())?,
            );
            product_table(&mut report, sym.product(), "∘");
        }
        CpaOutcome::ConditionFailure { verdict, .. } => {
            report.verdict(condition, verdict);
        }
    }
    Ok(report)
}

pub fn grading(doc: &Loaded, target: Target) -> Result<Report, CliError> {
    let mut report = Report::new("grading");
    let degrees = doc
        .grading
        .clone()
        .ok_or_else(|| CliError::Input("document has no `grading`".into()))?;
    let Some(alg) = algebra_or_fail(doc, target.name(), &mut report) else {
        return Ok(report);
    };
    let gr = Grading::new(alg, degrees)?;
    report.verdict("bracket respects degrees", &grading::grading_check(&gr));
    let support = grading::support(&gr);
    let listed: Vec<String> = support
        .iter()
        .map(|d| format!("({})", d.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    report.fact("support", format!("{{{}}}", listed.join(", ")));
    let free = grading::is_arithmetically_free(&support);
    report.fact("arithmetically free", free);
    let class = gr.algebra().nilpotency_class().class();
    report.fact(
        "nilpotency class",
        class.map_or_else(|| "not nilpotent".to_string(), |c| c.to_string()),
    );
    if free && report.passed {
        match grading::class_bound(&support) {
            Ok(bound) => {
                report.fact("class bound", &bound);
                let within = class.is_some_and(|c| grading::within_bound(c, &bound));
                report.check(Check::flag("nilpotency class within bound", within));
            }
            Err(GradingError::BoundTooLarge(s)) => report.fact("class bound", format!("not evaluated (|X| = {s})")),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(report)
}

pub fn catalog_list() -> Report {
    let mut report = Report::new("catalog list");
    for e in catalog::list_entries() {
        let kind = match e.kind {
            EntryKind::Algebra => "algebra",
            EntryKind::Pair => "pair",
        };
        let mut value = format!("[{kind}] params({})", e.params.join(", "));
        if !e.constraints.is_empty() {
            value.push_str(&format!(" where {}", e.constraints.join(", ")));
        }
        value.push_str(&format!(" -- {}", e.description));
        report.fact(e.name, value);
    }
    report
}

pub fn catalog_build(name: &str, field: Field, params: &[(String, String)]) -> Result<InputDocument, CliError> {
    let mut map = BTreeMap::new();
    for (k, v) in params {
        if map.insert(k.clone(), v.clone()).is_some() {
            return Err(CliError::Input(format!("parameter {k} given twice")));
        }
    }
    let obj = catalog::build(name, field, &map)?;
    let source = if map.is_empty() {
        name.to_string()
    } else {
        let kv: Vec<String> = map.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{name} {}", kv.join(" "))
    };
    Ok(InputDocument::from_object(&obj, Some(source)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchPair {
    Heis3,
    Dim2,
}

#[derive(Clone, Debug)]
pub struct SearchArgs {
    pub p: u32,
    pub pair: SearchPair,
    pub strategy: Option<Strategy>,
    pub limit: Option<u128>,
    pub membership_limit: Option<usize>,
    pub list: bool,
}

/// `#{(α,β,γ) ∈ F_p³ : β(β+1) = αγ}`
pub fn dim2_condition_count(p: u32) -> usize {
    let p = u64::from(p);
    let mut count = 0;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                if (b * (b + 1)) % p == (a * c) % p {
                    count += 1;
                }
            }
        }
    }
    count
}

pub fn ffsearch(args: &SearchArgs) -> Result<Report, CliError> {
    let field = Field::prime(args.p).map_err(|e| CliError::Input(e.to_string()))?;
    let (g, n, default) = match args.pair {
        SearchPair::Heis3 => (
            catalog::heis3(field),
            catalog::heis3(field),
            Strategy::HomThroughDerivations,
        ),
        SearchPair::Dim2 => (LieAlgebra::abelian(field, 2), catalog::r2(field), Strategy::RawTensor),
    };
    let strategy = args.strategy.unwrap_or(default);
    let limits = Limits {
        max_candidates: args.limit,
        time_budget: None,
    };
    let spec = SearchSpec::new(g, n, strategy)?.with_limits(limits);
    let mut report = Report::new("ffsearch");
    report.fact("field", field);
    report.fact("strategy", strategy);
    let result = match ffsearch::enumerate_pa(&spec) {
        Ok(r) => r,
        Err(SearchError::ResourceExceeded { partial }) => {
            report.fact("candidates", partial.nominal_candidates);
            report.fact("examined", partial.examined);
            report.fact("structures found before the limit", partial.structures.len());
            report.check(Check::flag("search completed within limits", false));
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    report.fact("candidates", result.nominal_candidates);
    report.fact("examined", result.examined);
    report.fact("structures", result.structures.len());
    match args.pair {
        SearchPair::Dim2 => {
            let expected = dim2_condition_count(args.p);
            report.fact("solutions of beta*(beta+1) = alpha*gamma", expected);
            let all_in_family = result.structures.iter().all(|pair| {
                let prod = pair.product();
                let e1 = |i: usize, j: usize| prod.basis_product(i, j)[0].clone();
                catalog::ex2_5(field, e1(0, 0), e1(0, 1), e1(1, 1)).is_ok_and(|expected| &expected == pair)
            });
            report.check(Check::flag("every structure is an ex2.5 member", all_in_family));
            report.check(Check::flag(
                "count matches the family condition",
                expected == result.structures.len(),
            ));
        }
        SearchPair::Heis3 => {
            let options = HeisenbergOptions {
                catalog_membership: true,
                max_algebras: args.membership_limit.or(if args.p == 3 { None } else { Some(8) }),
                limits,
            };
            let h = ffsearch::corroborate_heisenberg(args.p, &options)?;
            report.fact("brackets n swept", h.algebras_swept);
            report.fact("structures checked", h.structures_checked);
            report.fact("catalog instances checked", h.catalog_instances);
            report.fact("catalog instances skipped", h.catalog_skipped);
            for v in &h.violations {
                report.fact(
                    format!("violation: {}", v.property),
                    format!("n = {:?}, product = {:?}", v.n, v.product),
                );
            }
            report.check(Check::flag(
                "structural identities hold on every structure found",
                h.violations.is_empty(),
            ));
            for (family, params) in &h.catalog_missing {
                report.fact(format!("missing {family}"), format!("{params:?}"));
            }
            report.check(Check::flag(
                "catalog instances appear in the search output",
                h.catalog_missing.is_empty(),
            ));
        }
    }
    if args.list {
        for (idx, pair) in result.structures.iter().enumerate() {
            let mut parts = Vec::new();
            let prod = pair.product();
            for i in 0..prod.dim() {
                for j in 0..prod.dim() {
                    let v = prod.basis_product(i, j);
                    if v.iter().any(|c| !c.is_zero()) {
                        parts.push(format!("e{}·e{} = {}", i + 1, j + 1, format_basis(v)));
                    }
                }
            }
            let text = if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(", ")
            };
            report.fact(format!("structure {}", idx + 1), text);
        }
    }
    Ok(report)
}
