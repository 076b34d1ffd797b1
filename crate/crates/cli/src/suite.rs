//! Cross-consistency checks over a fixed zoo of algebras.

use std::collections::BTreeMap;

use liealg::algebra::{direct_sum, simplicity_status, BracketEntry};
use liealg::families::{
    aff1, case_i_ii, case_v, depth2_status, heisenberg, mna_status, sl2, solvable_mna_status, Depth2Witness,
    DEFAULT_SAMPLES,
};
use liealg::oracle::{depth_bruteforce, property_bruteforce, reduce_mod_p, Property};
use liealg::quat::{certified_report, pure_lie_algebra};
use liealg::spectral::{anisotropy_status, regularity_status};
use liealg::{FieldSpec, LieAlgebra, LieError, Mat, Result, SearchBudget, TriState, UPoly};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::format::{emit_algebra, parse_algebra};
use crate::replay;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Zoo {
    All,
    Reductive,
    Quaternion,
    Solvable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    Pass,
    Fail,
    Unknown,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub fixture: String,
    pub check: String,
    pub status: RowStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub zoo: Zoo,
    pub seed: u64,
    pub rows: Vec<SuiteRow>,
    pub counts: BTreeMap<String, usize>,
}

impl SuiteReport {
    pub fn failed(&self) -> bool {
        self.rows.iter().any(|r| r.status == RowStatus::Fail)
    }

    pub fn has_unknown(&self) -> bool {
        self.rows.iter().any(|r| r.status == RowStatus::Unknown)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub zoo: Zoo,
    pub seed: u64,
    pub include_corrupted: bool,
    pub budget: SearchBudget,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { zoo: Zoo::All, seed: 0, include_corrupted: false, budget: SearchBudget::default() }
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Reductive,
    Quaternion(i64, i64),
    /// Cases (i) and (ii), with the matrix of `ad t`.
    Matrix(Mat),
    /// Case (v) with a single action matrix.
    Action(Mat),
    Prototype,
}

/// A zoo member, stored as raw upper-triangular entries so validation runs inside
/// the suite.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    field: FieldSpec,
    dim: usize,
    entries: Vec<BracketEntry>,
    labels: Option<Vec<String>>,
    kinds: Vec<Kind>,
}

impl Fixture {
    fn from_algebra(name: impl Into<String>, l: &LieAlgebra, kinds: Vec<Kind>) -> Self {
        let entries = l
            .upper_entries()
            .map(|(i, j, v)| {
                BracketEntry::new(
                    i,
                    j,
                    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect(),
                )
            })
            .collect();
        Fixture {
            name: name.into(),
            field: l.field(),
            dim: l.dim(),
            entries,
            labels: l.labels().map(<[String]>::to_vec),
            kinds,
        }
    }

    pub fn build(&self) -> Result<LieAlgebra> {
        let l = LieAlgebra::validate(self.field, self.dim, &self.entries)?;
        match &self.labels {
            Some(ls) => l.with_labels(ls.clone()),
            None => Ok(l),
        }
    }
}

const Q: FieldSpec = FieldSpec::Rationals;

fn pure(a: i64, b: i64) -> LieAlgebra {
    pure_lie_algebra(&rat(a), &rat(b)).expect("nonzero parameters")
}

fn plus_line(l: &LieAlgebra) -> LieAlgebra {
    direct_sum(l, &LieAlgebra::abelian(l.field(), 1)).expect("same field")
}

fn m2(rows: [[i64; 2]; 2]) -> Mat {
    Mat::from_i64(Q, &[&rows[0], &rows[1]])
}

/// Random `2x2` integer matrices of trace 0 or 1 with small entries.
fn seeded_matrices(seed: u64, count: usize) -> Vec<Mat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a: i64 = rng.gen_range(-2..=2);
            let b: i64 = rng.gen_range(-2..=2);
            let c: i64 = rng.gen_range(-2..=2);
            let tr: i64 = rng.gen_range(0..=1);
            m2([[a, b], [c, tr - a]])
        })
        .collect()
}

/// The fixtures selected by `zoo`; `seed` drives the random family members.
pub fn zoo_fixtures(zoo: Zoo, seed: u64) -> Vec<Fixture> {
    use Kind::*;
    let mut out = Vec::new();
    let want = |z: Zoo| zoo == Zoo::All || zoo == z;
    if want(Zoo::Reductive) {
        out.push(Fixture::from_algebra("sl2", &sl2(Q), vec![Reductive]));
        out.push(Fixture::from_algebra("sl2+K", &plus_line(&sl2(Q)), vec![Reductive]));
        out.push(Fixture::from_algebra("sl2+sl2", &direct_sum(&sl2(Q), &sl2(Q)).expect("same field"), vec![Reductive]));
    }
    for (a, b) in [(-1, -1), (2, 3), (1, 1), (-1, -3)] {
        let reductive = matches!((a, b), (-1, -1) | (2, 3));
        let mut kinds = Vec::new();
        if reductive && want(Zoo::Reductive) {
            kinds.push(Reductive);
        }
        if want(Zoo::Quaternion) {
            kinds.push(Quaternion(a, b));
        }
        if !kinds.is_empty() {
            out.push(Fixture::from_algebra(format!("pure({a},{b})"), &pure(a, b), kinds));
        }
        if reductive && want(Zoo::Reductive) {
            out.push(Fixture::from_algebra(format!("pure({a},{b})+K"), &plus_line(&pure(a, b)), vec![Reductive]));
        }
    }
    if want(Zoo::Solvable) {
        out.push(Fixture::from_algebra("heisenberg", &heisenberg(Q), vec![Prototype]));
        out.push(Fixture::from_algebra("aff1", &aff1(Q), vec![Prototype]));
        let mut mats = vec![m2([[0, 0], [0, 0]]), m2([[0, -1], [1, 0]]), m2([[0, -1], [1, 1]]), m2([[1, 0], [0, -1]])];
        mats.extend(seeded_matrices(seed, 3));
        for m in mats {
            let inst = case_i_ii(&m).expect("trace is 0 or 1");
            let name = format!("{:?}{}", inst.tag, serde_json::to_string(&m).expect("matrix serializes"));
            out.push(Fixture::from_algebra(name, &inst.algebra, vec![Matrix(m)]));
        }
        let cp = UPoly::from_i64(Q, &[1, 0, 1]).mul(&UPoly::from_i64(Q, &[-2, 0, 1]));
        let rho = cp.companion();
        let inst = case_v(std::slice::from_ref(&rho), DEFAULT_SAMPLES, &SearchBudget::default()).expect("single action");
        out.push(Fixture::from_algebra("CaseV(companion((x^2+1)(x^2-2)))", &inst.algebra, vec![Action(rho)]));
    }
    out
}

/// `sl(2)` with `[h,f] = -3f`: fails Jacobi on `(e,h,f)`.
pub fn corrupted_fixture() -> Fixture {
    let mut f = Fixture::from_algebra("corrupted-sl2", &sl2(Q), vec![Kind::Reductive]);
    for e in &mut f.entries {
        if (e.i, e.j) == (1, 2) {
            e.v = vec![(2, Q.from_i64(-3))];
        }
    }
    f
}

struct Rows<'a> {
    fixture: &'a str,
    rows: Vec<SuiteRow>,
}

impl Rows<'_> {
    fn push(&mut self, check: &str, status: RowStatus, detail: impl Into<String>) {
        self.rows.push(SuiteRow {
            fixture: self.fixture.to_string(),
            check: check.to_string(),
            status,
            detail: detail.into(),
        });
    }

    fn verdict(&mut self, check: &str, ok: bool, detail: impl Into<String>) {
        self.push(check, if ok { RowStatus::Pass } else { RowStatus::Fail }, detail);
    }

    fn error(&mut self, check: &str, e: LieError) {
        self.push(check, RowStatus::Fail, format!("error: {e}"));
    }
}

/// Budget of the 2-dimensional subalgebra search on anisotropic fixtures.
const PLANE_HEIGHT: u64 = 5;
const PLANE_PAIRS: usize = 5_000;

fn check_reductive(l: &LieAlgebra, budget: &SearchBudget, rows: &mut Rows) -> Result<()> {
    match anisotropy_status(l, budget)? {
        TriState::True(_) => {
            let (hit, tried) = replay::nonabelian_plane_search(l, PLANE_HEIGHT, PLANE_PAIRS);
            match hit {
                None => rows.verdict("anisotropic-planes", true, format!("anisotropic; {tried} pairs, no nonabelian plane")),
                Some(p) => rows.verdict("anisotropic-planes", false, format!("anisotropic yet nonabelian plane {p:?}")),
            }
        }
        TriState::False(w) => {
            let replayed = replay::anisotropy(l, &w)?;
            match replay::plane_from_witness(l, &w)? {
                Some(p) if replayed => rows.verdict("anisotropic-planes", true, format!("witness yields plane {}", json(&p))),
                Some(_) => rows.verdict("anisotropic-planes", false, "witness does not replay"),
                None => rows.push("anisotropic-planes", RowStatus::Unknown, "no plane built from the witness"),
            }
        }
        TriState::Unknown(u) => rows.push("anisotropic-planes", RowStatus::Unknown, u.reason),
    }
    let reg = regularity_status(l, budget)?;
    let ok = match &reg {
        TriState::True(_) => {
            // Regular and not nilpotent forces simple and anisotropic.
            !simplicity_status(l)?.is_false() && !anisotropy_status(l, budget)?.is_false()
        }
        TriState::False(w) => replay::regularity(l, w)?,
        TriState::Unknown(_) => true,
    };
    if reg.is_unknown() {
        rows.push("regular-simple-anisotropic", RowStatus::Unknown, "regularity undecided");
    } else {
        rows.verdict("regular-simple-anisotropic", ok, format!("regularity {}", reg.label()));
    }
    Ok(())
}

fn check_quaternion(l: &LieAlgebra, a: i64, b: i64, budget: &SearchBudget, rows: &mut Rows) -> Result<()> {
    let rep = certified_report(&rat(a), &rat(b))?;
    let d = rep.division;
    let verdicts = [
        ("anisotropic", anisotropy_status(l, budget)?.as_bool()),
        ("regular", regularity_status(l, budget)?.as_bool()),
        ("mna", mna_status(l, budget)?.as_bool()),
        ("depth2", depth2_status(l, budget)?.as_bool()),
    ];
    let expect = [d, d, d, !d];
    let mut detail = Vec::new();
    let mut status = RowStatus::Pass;
    for ((name, got), want) in verdicts.iter().zip(expect) {
        match got {
            None => {
                if status == RowStatus::Pass {
                    status = RowStatus::Unknown;
                }
                detail.push(format!("{name}=Unknown"));
            }
            Some(g) => {
                if *g != want {
                    status = RowStatus::Fail;
                }
                detail.push(format!("{name}={g}"));
            }
        }
    }
    rows.push("quaternion-report", status, format!("division={d}; {}", detail.join(", ")));
    Ok(())
}

/// Reductions mod 3 and 5: the solvable classifier against enumeration, MNA against
/// depth one, and validated families against depth two.
fn check_oracle(l: &LieAlgebra, kinds: &[Kind], budget: &SearchBudget, rows: &mut Rows) -> Result<()> {
    for p in [3u64, 5] {
        let check = format!("oracle-mod-{p}");
        let lp = match reduce_mod_p(l, p) {
            Ok(lp) => lp,
            Err(LieError::BadDenominator { .. }) => {
                rows.push(&check, RowStatus::Pass, "not p-integral, skipped");
                continue;
            }
            Err(e) => return Err(e),
        };
        let brute = property_bruteforce(&lp, Property::Mna)?;
        let depth = depth_bruteforce(&lp)?.depth;
        let mut ok = brute.holds == (depth == 1);
        let mut detail = format!("depth {depth}, mna {}", brute.holds);
        match solvable_mna_status(&lp, budget)?.as_bool() {
            Some(c) => {
                ok &= c == brute.holds;
                detail += &format!(", classifier {c}");
            }
            None => detail += ", classifier Unknown",
        }
        for k in kinds {
            let validated = match k {
                Kind::Matrix(m) => case_i_ii(&m.map_field(lp.field())?)?.validation.is_true(),
                Kind::Action(r) => case_v(&[r.map_field(lp.field())?], DEFAULT_SAMPLES, budget)?.validation.is_true(),
                _ => false,
            };
            if validated {
                ok &= depth == 2;
                detail += ", validated mod p";
            }
        }
        rows.verdict(&check, ok, detail);
    }
    Ok(())
}

fn check_depth2(l: &LieAlgebra, budget: &SearchBudget, rows: &mut Rows) -> Result<()> {
    match depth2_status(l, budget)? {
        TriState::True(_) => rows.verdict("depth2", true, "True"),
        TriState::False(w) => {
            let ok = replay::depth2(l, &w, budget)?;
            let what = match &w {
                Depth2Witness::Abelian => "abelian",
                Depth2Witness::MinimalNonabelian { .. } => "minimal nonabelian",
                Depth2Witness::DeepSubalgebra { .. } => "deep subalgebra",
            };
            rows.verdict("depth2", ok, format!("False ({what})"));
        }
        TriState::Unknown(u) => rows.push("depth2", RowStatus::Unknown, u.reason),
    }
    Ok(())
}

fn json<T: Serialize>(t: &T) -> String {
    serde_json::to_string(t).expect("serializable")
}

fn run_fixture(f: &Fixture, budget: &SearchBudget) -> Vec<SuiteRow> {
    let mut rows = Rows { fixture: &f.name, rows: Vec::new() };
    let l = match f.build() {
        Ok(l) => l,
        Err(e) => {
            rows.push("validation", RowStatus::Rejected, e.to_string());
            return rows.rows;
        }
    };
    rows.push("validation", RowStatus::Pass, "Jacobi holds");
    let text = emit_algebra(&l);
    let rt = parse_algebra(text.as_bytes()).map(|back| back == l && emit_algebra(&back) == text);
    rows.verdict("round-trip", matches!(rt, Ok(true)), "parse(emit(L)) = L");
    for k in &f.kinds {
        let res = match k {
            Kind::Reductive => check_reductive(&l, budget, &mut rows).map_err(|e| ("reductive", e)),
            Kind::Quaternion(a, b) => check_quaternion(&l, *a, *b, budget, &mut rows).map_err(|e| ("quaternion", e)),
            _ => Ok(()),
        };
        if let Err((c, e)) = res {
            rows.error(c, e);
        }
    }
    if f.kinds.iter().any(|k| matches!(k, Kind::Matrix(_) | Kind::Action(_) | Kind::Prototype)) {
        if let Err(e) = check_depth2(&l, budget, &mut rows) {
            rows.error("depth2", e);
        }
        if let Err(e) = check_oracle(&l, &f.kinds, budget, &mut rows) {
            rows.error("oracle", e);
        }
    }
    rows.rows
}

pub fn verify_suite(opts: &SuiteOptions) -> SuiteReport {
    let mut fixtures = zoo_fixtures(opts.zoo, opts.seed);
    if opts.include_corrupted {
        fixtures.push(corrupted_fixture());
    }
    let rows: Vec<SuiteRow> = fixtures.iter().flat_map(|f| run_fixture(f, &opts.budget)).collect();
    let mut counts = BTreeMap::new();
    for r in &rows {
        *counts.entry(format!("{:?}", r.status)).or_insert(0) += 1;
    }
    SuiteReport { zoo: opts.zoo, seed: opts.seed, rows, counts }
}
