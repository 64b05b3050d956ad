//! Execution of a typed check against its case.

use dpverify_core::arith::NonSquareWitness;
use dpverify_core::k3::{BasePoints, FixedPartSquare, FreeBecause};
use dpverify_core::surfaces::{adjunction_genus, Surface};
use dpverify_core::threefold::{
    blowup_curve_invariants, h0_bidegree, quadric_pencil_h12, BlowupInvariants, Eliminations, FeasibleTriples,
    FiberGame, FiberTriple, FibrationDegree,
};
use dpverify_core::{enum_classes, Constraint, Definiteness, DegreeWindow, PolarizedK3Model};
use serde_json::{json, Value};

use crate::case::{Case, Model, Op};
use crate::value::{class, classes, int, ints, rational};

fn k3(case: &Case) -> Result<&PolarizedK3Model, String> {
    match &case.model {
        Model::K3(m) => Ok(m),
        _ => Err("not a K3 model".into()),
    }
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

pub fn polynomial(p: &FixedPartSquare) -> Value {
    json!({
        "constant": int(&p.constant),
        "linear": ints(&p.linear),
        "quadratic": p.quadratic.iter().map(ints).collect::<Vec<_>>(),
    })
}

pub fn blowup(b: &BlowupInvariants) -> Value {
    json!({"kx3": int(&b.kx3), "k2e": int(&b.k2e), "ke2": int(&b.ke2), "e3": int(&b.e3)})
}

pub fn triple(t: &FiberTriple) -> Value {
    json!([t.m, rational(&t.x), rational(&t.y)])
}

fn witness(w: &Option<NonSquareWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "value": int(&w.value),
            "floor_sqrt": w.floor_sqrt.as_ref().map(int),
            "holds": w.holds(),
        }),
    }
}

pub fn feasible(f: &FeasibleTriples) -> Value {
    json!({
        "triples": f.triples.iter().map(triple).collect::<Vec<_>>(),
        "searches": f.searches.iter().map(|s| json!({
            "m": s.m,
            "discriminant": int(&s.discriminant),
            "non_square": witness(&s.non_square),
            "solutions": s.solutions.iter().map(triple).collect::<Vec<_>>(),
            "non_integral": s.non_integral.iter().map(triple).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "discriminants": f.searches.iter().map(|s| int(&s.discriminant)).collect::<Vec<_>>(),
    })
}

pub fn eliminations(e: &Eliminations) -> Value {
    let s = &e.surface;
    json!({
        "all_excluded": e.all_excluded(),
        "radicands": e.divisorial.iter().map(|d| int(&d.radicand)).collect::<Vec<_>>(),
        "divisorial": e.divisorial.iter().map(|d| json!({
            "n": d.n,
            "derived": ints(&d.derived),
            "radicand": int(&d.radicand),
            "denominator": int(&d.denominator),
            "normal_form_matches": d.normal_form_matches,
            "x_squared": rational(&d.x_squared),
            "x_is_rational": d.x_is_rational,
            "non_square": witness(&d.witness),
        })).collect::<Vec<_>>(),
        "surface": {
            "derived": ints(&s.derived),
            "center": int(&s.center),
            "radicand": int(&s.radicand),
            "denominator": int(&s.denominator),
            "normal_form_matches": s.normal_form_matches,
            "discriminant": int(&s.discriminant),
            "roots_are_rational": s.roots_are_rational,
            "non_square": witness(&s.witness),
        },
    })
}

fn degree(case: &Case, c: &dpverify_core::DivisorClass) -> Value {
    match &case.model {
        Model::K3(m) => m.degree(c).map(|d| int(&d)).unwrap_or(Value::Null),
        _ => Value::Null,
    }
}

/// Run one check; errors become failed steps, never panics.
pub fn execute(op: &Op, case: &Case) -> Result<Value, String> {
    Ok(match op {
        Op::Classify => {
            let ns = case.namespace.as_ref().ok_or("no lattice")?;
            let c = ns.lattice().classify();
            json!({
                "even": c.is_even,
                "signature": [c.signature.positive, c.signature.negative, c.signature.zero],
                "k3_type": c.is_k3_type(),
            })
        }
        Op::Pair { left, right } => json!({"value": int(&left.pair(right).map_err(err)?)}),
        Op::Class { expr } => {
            json!({"class": class(expr), "square": int(&expr.square()), "degree": degree(case, expr)})
        }
        Op::H0Rr { class: c } => json!({"value": int(&k3(case)?.h0_rr(c).map_err(err)?)}),
        Op::EffectiveCandidate { class: c } => json!({"value": k3(case)?.effective_candidate(c)}),
        Op::Enum { square, constraints, window } => {
            let ns = case.namespace.as_ref().ok_or("no lattice")?;
            let cons: Vec<Constraint> =
                constraints.iter().map(|(c, v)| Constraint::new(c.clone(), v.clone())).collect();
            let w = window.as_ref().map(|w| DegreeWindow::new(w.functional.clone(), w.min.clone(), w.max.clone()));
            let found = enum_classes(ns.lattice(), square, &cons, w.as_ref()).map_err(err)?;
            json!({"classes": classes(&found), "count": found.len()})
        }
        Op::ClassesOfDegree { square, min, max } => {
            let found = k3(case)?.classes_of_degree(square.clone(), min.clone(), max.clone()).map_err(err)?;
            json!({"classes": classes(&found), "count": found.len()})
        }
        Op::MinusTwoUpTo { max } => {
            let found = k3(case)?.minus_two_up_to(max.clone()).map_err(err)?;
            json!({"classes": classes(&found), "count": found.len()})
        }
        Op::MinusTwoOfDegreeZero => {
            let found = k3(case)?.minus_two_of_degree_zero().map_err(err)?;
            json!({"classes": classes(&found), "count": found.len()})
        }
        Op::IsNegativeDefinite { classes: cs } => {
            let ns = case.namespace.as_ref().ok_or("no lattice")?;
            match ns.lattice().is_negative_definite(cs).map_err(err)? {
                Definiteness::NegativeDefinite => json!({"verdict": "negative_definite"}),
                Definiteness::NotNegativeDefinite { witness, square } => {
                    json!({"verdict": "not_negative_definite", "witness": ints(&witness), "square": int(&square)})
                }
                Definiteness::Degenerate => json!({"verdict": "degenerate"}),
            }
        }
        Op::Bpf { class: c } => match k3(case)?.bpf_check(c).map_err(err)? {
            BasePoints::Free(why) => json!({
                "free": true,
                "reason": match why {
                    FreeBecause::NoIsotropicDegreeOne => "no_isotropic_degree_one",
                    FreeBecause::EllipticPencil => "elliptic_pencil",
                },
                "witnesses": [],
            }),
            BasePoints::Fixed { witnesses } => json!({"free": false, "reason": null, "witnesses": classes(&witnesses)}),
        },
        Op::VeryAmple { class: c } => {
            let v = k3(case)?.very_ample_check(c).map_err(err)?;
            json!({
                "very_ample": v.is_very_ample(),
                "witnesses": v.witnesses.iter().map(|(clause, d)| json!({
                    "clause": clause.tag(),
                    "class": class(d),
                    "square": int(&d.square()),
                    "degree": int(&c.pair(d).unwrap_or_default()),
                })).collect::<Vec<_>>(),
            })
        }
        Op::QuadricEmbedding => {
            let q = k3(case)?.quadric_embedding_check().map_err(err)?;
            json!({"smooth_quadric": q.is_smooth_quadric(), "witnesses": classes(&q.witnesses)})
        }
        Op::Nef { class: c } => {
            let n = k3(case)?.nef_check(c).map_err(err)?;
            json!({
                "nef": n.is_nef(),
                "violators": classes(&n.violators),
                "pairings": n.pairings.iter().map(|(d, v)| json!({"class": class(d), "value": int(v)})).collect::<Vec<_>>(),
            })
        }
        Op::Movable { class: c } => {
            let m = k3(case)?.movable_check(c).map_err(err)?;
            json!({
                "movable": m.is_movable(),
                "curves": classes(&m.curves),
                "polynomial": polynomial(&m.polynomial),
                "examined": m.examined,
                "feasible": m.feasible.iter().map(ints).collect::<Vec<_>>(),
            })
        }
        Op::FixedPartSquare { class: c, curves } => polynomial(&k3(case)?.fixed_part_square(c, curves).map_err(err)?),
        Op::BnGeneral => {
            let bn = k3(case)?.bn_general_check().map_err(err)?;
            json!({
                "general": bn.is_general(),
                "h0_polarization": int(&bn.h0_polarization),
                "parts": bn.candidates.iter().map(|d| class(&d.part)).collect::<Vec<_>>(),
                "candidates": bn.candidates.iter().map(|d| json!({
                    "part": class(&d.part),
                    "rest": class(&d.rest),
                    "h0_part": int(&d.h0_part),
                    "h0_rest": int(&d.h0_rest),
                    "product": int(&d.product()),
                })).collect::<Vec<_>>(),
                "failures": bn.failures().count(),
            })
        }
        Op::RelativeNef { restriction, fiber } => {
            let r = k3(case)?.relative_nef_check(restriction, fiber).map_err(err)?;
            json!({
                "passes": r.passes(),
                "witnesses": r.witnesses.iter().map(|(d, _)| class(d)).collect::<Vec<_>>(),
                "fiber_degrees": r.witnesses.iter().map(|(d, f)| json!({"class": class(d), "value": int(f)})).collect::<Vec<_>>(),
                "degree_bound": int(&r.degree_bound),
                "restriction_is_rigid": r.restriction_is_rigid,
            })
        }
        Op::AdjunctionGenus { class: c } => {
            let s: &dyn Surface = case.model.surface().ok_or("not a surface model")?;
            json!({"value": int(&adjunction_genus(s, c).map_err(err)?)})
        }
        Op::MinusOneClasses => {
            let Model::DelPezzo(dp) = &case.model else { return Err("not a del Pezzo model".into()) };
            let found = dp.minus_one_classes().map_err(err)?;
            json!({"classes": classes(&found), "count": found.len()})
        }
        Op::NefDelPezzo { class: c } => {
            let Model::DelPezzo(dp) = &case.model else { return Err("not a del Pezzo model".into()) };
            let violators = dp.nef_check(c).map_err(err)?;
            let lines = dp.minus_one_classes().map_err(err)?;
            json!({"nef": violators.is_empty(), "violators": classes(&violators), "lines_checked": lines.len()})
        }
        Op::RestrictedClass { expr } => {
            let Model::Ruled(r) = &case.model else { return Err("not a ruled surface model".into()) };
            let c = r.restricted_class(expr).map_err(err)?;
            json!({"class": class(&c), "square": int(&c.square())})
        }
        Op::BlowupInvariants { kv3, kv_dot_b, genus } => blowup(&blowup_curve_invariants(kv3, kv_dot_b, genus)),
        Op::DpdFeasibleTriples { d } => {
            feasible(&FiberGame::new(FibrationDegree::new(*d).map_err(err)?).feasible_triples())
        }
        Op::DpdEliminations { d } => {
            eliminations(&FiberGame::new(FibrationDegree::new(*d).map_err(err)?).eliminations())
        }
        Op::H0Bidegree { a, b, m, n } => json!({"value": int(&h0_bidegree(*a, *b, *m, *n).map_err(err)?)}),
        Op::QuadricPencilH12 { size, degree } => {
            let q = quadric_pencil_h12(*size, *degree).map_err(err)?;
            json!({"delta": int(&q.delta), "euler": int(&q.euler), "b3": int(&q.b3), "h12": int(&q.h12)})
        }
    })
}
