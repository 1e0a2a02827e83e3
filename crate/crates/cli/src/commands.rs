//! Input documents and handlers, one per subcommand.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use qtorus::delta::{Character, OneRelatorModule};
use qtorus::groups::Class2Presentation;
use qtorus::random::{self, RelatorShape};
use qtorus::wire::{self, from_json};
use qtorus::{
    AlternatingFormZ, AlternatingMapQ, CocycleForm, Error, Fan, QTorusElement, Rat, Result, Seed, Sublattice,
    Subspace, SymplecticBase,
};

use crate::{Command, Context, Outcome};

#[derive(Deserialize)]
struct ModuleInput {
    #[serde(flatten)]
    module: OneRelatorModule,
    #[serde(default)]
    chi: Option<Character>,
    /// Generators of the sublattice carrying the relator, for `check-induced`.
    #[serde(default)]
    sublattice: Option<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
struct FanPoint {
    #[serde(flatten)]
    fan: Fan,
    #[serde(with = "wire::rat_vec")]
    point: Vec<Rat>,
}

#[derive(Deserialize)]
struct MulInput {
    cocycle: CocycleForm,
    a: QTorusElement,
    b: QTorusElement,
}

#[derive(Deserialize)]
struct FormWith {
    #[serde(flatten)]
    form: AlternatingMapQ,
    #[serde(default)]
    base: Option<SymplecticBase>,
    #[serde(default)]
    subspace: Option<Subspace>,
    #[serde(default)]
    x: Option<Subspace>,
    #[serde(default)]
    omega: Option<Vec<Subspace>>,
    #[serde(default)]
    probes: Option<Vec<Subspace>>,
}

#[derive(Deserialize)]
struct AuditInput {
    #[serde(flatten)]
    form: AlternatingFormZ,
    /// Each part as a list of generators.
    parts: Vec<Vec<Vec<i64>>>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn verdict(ok: bool, v: Value) -> Outcome {
    if ok {
        Outcome::Holds(v)
    } else {
        Outcome::Violated(v)
    }
}

fn require<T>(v: Option<T>, field: &str) -> Result<T> {
    v.ok_or_else(|| Error::Invalid(format!("missing field `{field}`")))
}

pub fn run(cmd: Command, ctx: &Context, text: &str) -> Result<Outcome> {
    match cmd {
        Command::Delta => {
            let m: ModuleInput = from_json(text)?;
            Ok(Outcome::Holds(to_value(&m.module.delta_set())))
        }
        Command::Initform => {
            let m: ModuleInput = from_json(text)?;
            let chi = require(m.chi, "chi")?;
            Ok(Outcome::Holds(to_value(&m.module.initial_form(&chi)?)))
        }
        Command::Tc => {
            let m: ModuleInput = from_json(text)?;
            let chi = require(m.chi, "chi")?;
            Ok(Outcome::Holds(to_value(&m.module.tc_delta(&chi)?)))
        }
        Command::Lc => {
            let d: FanPoint = from_json(text)?;
            Ok(Outcome::Holds(to_value(&d.fan.local_cone(&d.point)?)))
        }
        Command::CheckLocalCone => {
            let m: ModuleInput = from_json(text)?;
            let module = m.module;
            checked(ctx, &module, m.chi, false, |chi| {
                let r = module.check_local_cone(chi)?;
                Ok((r.equal, to_value(&r)))
            })
        }
        Command::CheckDim => {
            let m: ModuleInput = from_json(text)?;
            let module = m.module;
            checked(ctx, &module, m.chi, true, |chi| {
                let r = module.check_dim_identity(chi)?;
                Ok((r.holds, to_value(&r)))
            })
        }
        Command::CheckInduced => {
            let m: ModuleInput = from_json(text)?;
            let module = m.module;
            let gens = require(m.sublattice, "sublattice")?;
            let a1 = Sublattice::from_i64(module.rank(), &gens)?;
            checked(ctx, &module, m.chi, false, |chi| {
                let r = module.check_induced(&a1, chi)?;
                Ok((r.equal, to_value(&r)))
            })
        }
        Command::TorusMul => {
            let d: MulInput = from_json(text)?;
            Ok(Outcome::Holds(to_value(&d.cocycle.multiply(&d.a, &d.b)?)))
        }
        Command::Center => {
            let probe: Value = from_json(text)?;
            if probe.get("rank").is_some() {
                let f: AlternatingFormZ = from_json(text)?;
                Ok(Outcome::Holds(to_value(&f.center_lattice())))
            } else {
                let f: AlternatingMapQ = from_json(text)?;
                Ok(Outcome::Holds(to_value(&f.center())))
            }
        }
        Command::Symbase => {
            let f = read_form(text)?;
            Ok(Outcome::Holds(match f.symplectic_base(ctx.seed, ctx.retries) {
                Ok(base) => json!({ "status": "found", "base": to_value(&base) }),
                Err(nb) => {
                    let mut v = to_value(&nb);
                    v.as_object_mut().expect("struct").insert("status".into(), json!("no-base-found"));
                    v
                }
            }))
        }
        Command::VerifyBase => {
            let d: FormWith = from_json(text)?;
            let base = require(d.base, "base")?;
            let r = d.form.verify_base(&base);
            Ok(verdict(r.passed, to_value(&r)))
        }
        Command::AbelianSplit => {
            let d: FormWith = from_json(text)?;
            let u = require(d.subspace, "subspace")?;
            let base = match d.base {
                Some(b) => b,
                None => d.form.symplectic_base(ctx.seed, ctx.retries).map_err(|nb| {
                    Error::Invalid(format!("no symplectic base after {} attempts", nb.attempts))
                })?,
            };
            let parts = d.form.decompose_abelian(&base, &u)?;
            Ok(Outcome::Holds(json!({ "base": to_value(&base), "parts": to_value(&parts) })))
        }
        Command::CheckAmple => {
            let d: FormWith = from_json(text)?;
            let x = d.x.unwrap_or_else(|| Subspace::full(d.form.n()));
            let omega = require(d.omega, "omega")?;
            let r = d.form.check_ample(&x, &omega, d.probes.as_deref(), ctx.seed)?;
            Ok(verdict(r.passed, to_value(&r)))
        }
        Command::GroupStructure => {
            let p: Class2Presentation = from_json(text)?;
            Ok(Outcome::Holds(to_value(&p.structure_report(ctx.seed))))
        }
        Command::AuditDecomposition => {
            let d: AuditInput = from_json(text)?;
            let parts = d
                .parts
                .iter()
                .map(|g| Sublattice::from_i64(d.form.rank(), g))
                .collect::<Result<Vec<_>>>()?;
            let audit = d.form.audit_decomposition(&parts)?;
            let mut v = to_value(&audit);
            v.as_object_mut().expect("struct").insert("passed".into(), json!(audit.passed()));
            Ok(verdict(audit.passed(), v))
        }
        Command::RandomModule { rank, support, s } => {
            if rank == 0 || support < 2 {
                return Err(Error::Invalid("need rank >= 1 and support >= 2".into()));
            }
            let mut rng = ctx.seed.rng("random-module");
            Ok(Outcome::Holds(to_value(&random::module(&mut rng, RelatorShape::new(rank, support, s)))))
        }
        Command::Heisenberg { m, cyclic } => {
            let mut p = Class2Presentation::heisenberg(m)?;
            for i in 1..=cyclic {
                p = p.with_cyclic(&format!("c{i}"));
            }
            Ok(Outcome::Holds(to_value(&p)))
        }
    }
}

/// Rational forms carry `n`; integer forms carry `rank`.
fn read_form(text: &str) -> Result<AlternatingMapQ> {
    let probe: Value = from_json(text)?;
    if probe.get("rank").is_some() {
        Ok(AlternatingMapQ::from(&from_json::<AlternatingFormZ>(text)?))
    } else {
        from_json(text)
    }
}

/// Run `check` on the character from the input, or on `--sample N` sampled
/// characters: relative-interior points of the cones of the Delta-set and,
/// unless `delta_only`, points of a small rational grid, alternately.
fn checked(
    ctx: &Context,
    module: &OneRelatorModule,
    chi: Option<Character>,
    delta_only: bool,
    check: impl Fn(&Character) -> Result<(bool, Value)>,
) -> Result<Outcome> {
    let Some(count) = ctx.sample else {
        let (ok, report) = check(&require(chi, "chi")?)?;
        return Ok(verdict(ok, report));
    };
    let chars = sample_characters(module, count, delta_only, ctx.seed)?;
    let mut results = Vec::with_capacity(chars.len());
    let mut failures = Vec::new();
    for chi in &chars {
        let (ok, report) = check(chi)?;
        results.push(json!({ "chi": to_value(chi), "holds": ok }));
        if !ok {
            failures.push(json!({ "chi": to_value(chi), "report": report }));
        }
    }
    let holds = failures.is_empty();
    let doc = json!({
        "samples": chars.len(),
        "passed": chars.len() - failures.len(),
        "holds": holds,
        "results": results,
        "failures": failures,
    });
    Ok(verdict(holds, doc))
}

fn sample_characters(module: &OneRelatorModule, count: usize, delta_only: bool, seed: Seed) -> Result<Vec<Character>> {
    let cones = module.delta_set().cones().len();
    if cones == 0 && delta_only {
        return Err(Error::Invalid("the Delta-set is empty, nothing to sample".into()));
    }
    (0..count)
        .map(|i| {
            if cones > 0 && (delta_only || i % 2 == 0) {
                module.sample_delta_point(i % cones, seed.split(&format!("sample/{i}")))
            } else {
                Ok(random::grid_character(&mut seed.rng(&format!("grid/{i}")), module.rank()))
            }
        })
        .collect()
}
