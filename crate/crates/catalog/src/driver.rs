//! Running a resolved case: checks in order, then the threefold pipeline and
//! the Hodge chain, then the table comparison and discrepancy flags.

use std::collections::BTreeMap;
use std::time::Instant;

use dpverify_core::threefold::{
    dpd_transform, dpd_transform_by_system, h12_chain, FiberGame, GameResult, HodgeBase, HodgeStep,
};
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::builtin;
use crate::case::{load_case, Case, LoadError, Pipeline, TableField};
use crate::ops::{self, blowup, triple};
use crate::report::{FlagReport, Remark, Status, StepReport, TableRow, VerificationReport};
use crate::value::{self, mismatches, rational};

struct Run {
    steps: Vec<StepReport>,
    remarks: Vec<Remark>,
    computed: BTreeMap<TableField, BigRational>,
}

impl Run {
    fn step(
        &mut self,
        op: &str,
        args: Value,
        got: Result<Value, String>,
        expected: Value,
        anchor: &str,
    ) -> Option<Value> {
        let (got, error) = match got {
            Ok(v) => (v, None),
            Err(e) => (Value::Null, Some(e)),
        };
        let problems = if error.is_some() { Vec::new() } else { mismatches(&expected, &got) };
        let pass = error.is_none() && problems.is_empty();
        self.steps.push(StepReport {
            op: op.to_string(),
            args,
            got: got.clone(),
            expected,
            pass,
            anchor: anchor.to_string(),
            mismatches: problems,
            error: error.clone(),
        });
        error.is_none().then_some(got)
    }
}

fn game_value(g: &GameResult) -> Value {
    json!({"kx3": rational(&g.kx3), "kx_dot_c": rational(&g.kx_dot_c), "z": rational(&g.z)})
}

fn hodge_step(s: &HodgeStep) -> Value {
    match s {
        HodgeStep::Blowup { genus } => json!({"blowup": genus}),
        HodgeStep::Flop => json!("flop"),
        HodgeStep::Blowdown { genus } => json!({"blowdown": genus}),
    }
}

fn hodge_base(b: &HodgeBase) -> Value {
    match b {
        HodgeBase::Named(n) => json!(n.name()),
        HodgeBase::Explicit(v) => json!(v),
    }
}

pub fn run_case(case: &Case) -> VerificationReport {
    let started = Instant::now();
    let mut run = Run { steps: Vec::new(), remarks: Vec::new(), computed: BTreeMap::new() };

    for check in &case.checks {
        let got = ops::execute(&check.op, case);
        let Some(got) = run.step(&check.op_name, check.args.clone(), got, check.expect.clone(), &check.anchor) else {
            continue;
        };
        if let Some(printed) = &check.paper_printed {
            let differences = mismatches(printed, &got);
            if !differences.is_empty() {
                run.remarks.push(Remark {
                    step: check.op_name.clone(),
                    args: check.args.clone(),
                    paper_printed: printed.clone(),
                    differences,
                    anchor: check.anchor.clone(),
                });
            }
        }
        if let (Some(field), Some(pipeline)) = (check.bind, &case.pipeline) {
            let bound = got.get("value").or_else(|| got.get("kx3")).cloned().unwrap_or(Value::Null);
            let name = format!("bind.{}", field.name());
            run.step(
                &name,
                check.args.clone(),
                Ok(json!({"value": bound})),
                json!({"value": value::int(pipeline.field(field))}),
                &check.anchor,
            );
        }
    }

    let e = &case.expected;
    match &case.pipeline {
        Some(Pipeline::Game(input)) => {
            let game = FiberGame::new(input.degree);
            let args = json!({"d": input.degree.get()});
            let admissible = game.admissible_triple();
            let mut found = ops::feasible(&game.feasible_triples());
            found["admissible"] = match &admissible {
                Ok(t) => triple(t),
                Err(_) => Value::Null,
            };
            let expect_admissible = json!({"admissible": admissible.as_ref().map(triple).unwrap_or(Value::Null)});
            let got = admissible.as_ref().map(|_| found).map_err(|e| e.to_string());
            run.step("dpd_feasible_triples", args.clone(), got, expect_admissible, &e.anchor);
            run.step(
                "dpd_eliminations",
                args,
                Ok(ops::eliminations(&game.eliminations())),
                json!({"all_excluded": true}),
                &e.anchor,
            );

            let pipeline_args = json!({
                "kw3": value::int(&input.kw3),
                "kw_dot_b": value::int(&input.kw_dot_b),
                "g_b": value::int(&input.g_b),
                "d": input.degree.get(),
            });
            let closed = dpd_transform(input);
            let mut got = game_value(&closed);
            got["blowup"] = blowup(&input.blowup());
            let mut expected = json!({"kx3": rational(&e.kx3)});
            if let Some(v) = &e.kx_dot_c {
                expected["kx_dot_c"] = rational(v);
            }
            if let Some(v) = &e.z {
                expected["z"] = rational(v);
            }
            run.step("dpd_transform", pipeline_args.clone(), Ok(got), expected, &e.anchor);
            run.computed.insert(TableField::Kx3, closed.kx3.clone());
            run.computed.insert(TableField::KxDotC, closed.kx_dot_c.clone());
            run.computed.insert(TableField::Z, closed.z.clone());

            let solved = dpd_transform_by_system(input).map(|g| game_value(&g)).map_err(|e| e.to_string());
            run.step("dpd_transform_by_system", pipeline_args.clone(), solved, game_value(&closed), &e.anchor);
            run.step(
                "dp_degree",
                pipeline_args,
                Ok(json!({"value": input.degree.get()})),
                json!({"value": e.dp_degree}),
                &e.anchor,
            );
        }
        Some(Pipeline::BlowupOnly { kw3, kw_dot_b, g_b }) => {
            let inv = dpverify_core::threefold::blowup_curve_invariants(kw3, kw_dot_b, g_b);
            let args = json!({"kw3": value::int(kw3), "kw_dot_b": value::int(kw_dot_b), "g_b": value::int(g_b)});
            run.step("blowup_invariants", args, Ok(blowup(&inv)), json!({"kx3": rational(&e.kx3)}), &e.anchor);
            run.computed.insert(TableField::Kx3, BigRational::from(inv.kx3));
        }
        None => {
            run.step(
                "dpd_transform",
                Value::Null,
                Err("case has no pipeline".into()),
                json!({"kx3": rational(&e.kx3)}),
                &e.anchor,
            );
        }
    }

    match &case.hodge {
        Some(h) => {
            let args =
                json!({"base": hodge_base(&h.base), "steps": h.steps.iter().map(hodge_step).collect::<Vec<_>>()});
            let got = h12_chain(h.base, &h.steps).map_err(|e| e.to_string());
            if let Ok(rec) = &got {
                run.computed.insert(TableField::H12, BigRational::from(rec.value.clone()));
            }
            let got = got.map(|rec| {
                json!({
                    "base_value": h.base.value(),
                    "running": rec.steps.iter().map(|(_, v)| value::int(v)).collect::<Vec<_>>(),
                    "value": value::int(&rec.value),
                })
            });
            run.step("h12_chain", args, got, json!({"value": rational(&e.h12)}), &h.anchor);
        }
        None => {
            run.step(
                "h12_chain",
                Value::Null,
                Err("case has no Hodge chain".into()),
                json!({"value": rational(&e.h12)}),
                &e.anchor,
            );
        }
    }

    let discrepancy_flags: Vec<FlagReport> = case
        .flags
        .iter()
        .filter_map(|f| {
            let computed = run.computed.get(&f.field);
            (computed != Some(&f.paper_value)).then(|| FlagReport {
                field: f.field.name().to_string(),
                paper_value: rational(&f.paper_value),
                computed: computed.map(rational).unwrap_or(Value::Null),
                anchor: f.anchor.clone(),
                note: f.note.clone(),
            })
        })
        .collect();

    let status = if run.steps.iter().any(|s| !s.pass) {
        Status::Fail
    } else if !discrepancy_flags.is_empty() {
        Status::Flagged
    } else {
        Status::Pass
    };
    let show = |f: TableField| run.computed.get(&f).map(rational).unwrap_or(Value::Null);
    let table = TableRow {
        name: case.id.clone(),
        dp_degree: e.dp_degree,
        kx3: show(TableField::Kx3),
        h12: show(TableField::H12),
    };
    VerificationReport {
        case: case.id.clone(),
        construction: case.construction,
        status,
        steps: run.steps,
        discrepancy_flags,
        remarks: run.remarks,
        table,
        timing_us: Some(u64::try_from(started.elapsed().as_micros()).unwrap_or(u64::MAX)),
    }
}

/// Verify cases in parallel; reports come back in table order.
pub fn run_cases(cases: &[Case]) -> Vec<VerificationReport> {
    let mut reports: Vec<VerificationReport> = cases.par_iter().map(run_case).collect();
    reports.sort_by_key(|r| builtin::rank(&r.case));
    reports
}

pub fn load_builtins() -> Result<Vec<Case>, LoadError> {
    builtin::ids().map(load_case).collect()
}

pub fn run_all() -> Result<Vec<VerificationReport>, LoadError> {
    Ok(run_cases(&load_builtins()?))
}
