//! Ten end-to-end acceptance checks, one line of output each. Oracles are
//! computed here from first principles (coset arithmetic, explicit tensor
//! elements) rather than by calling the routine under test twice.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use dtwo::action::{action_invariants, t_action, LeftModule};
use dtwo::algebra::{ideal_closure, normality_audit, AlgebraMorphism, Extension, FiniteAlgebra};
use dtwo::bialgebroid::{axiom_audit, commutative_flip_check, RightBialgebroid, TeeContext};
use dtwo::catalog::{self, A3};
use dtwo::galois::{coaction, comodule_algebra_audit, d2_iff_corollary_audit, main_theorem_audit};
use dtwo::group::{group_pair, GroupExtension, GroupTable};
use dtwo::linalg::{axpy, unit_vector, Matrix, Subspace, Vector};
use dtwo::quasibase::{
    h_separability_test, left_d2_quasibase, right_d2_quasibase, split_projectivity_audit, transversal_quasibases,
    verify_quasibase, QuasibaseSet, Side,
};
use dtwo::tensor::TensorPowers;
use dtwo::Field;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Coset projections and `g_i⁻¹ ⊗ g_i`, `g_i ⊗ g_i⁻¹` built straight from
/// the Cayley table.
fn coset_quasibases(ge: &GroupExtension, powers: &TensorPowers) -> (QuasibaseSet, QuasibaseSet) {
    let g = &ge.group;
    let n = g.order();
    let field = powers.field();
    let mut right = Vec::new();
    let mut left = Vec::new();
    for &gi in &ge.transversal {
        let mut proj = Matrix::zeros(field, n, n);
        for x in 0..n {
            // x ∈ g_i N  iff  g_i⁻¹ x ∈ N
            if ge.subgroup.contains(&g.mul(g.inverse(gi), x)) {
                proj.set(x, x, field.one());
            }
        }
        let inv = g.inverse(gi);
        right.push((proj.clone(), powers.elementary_basis(&[inv, gi])));
        left.push((proj, powers.elementary_basis(&[gi, inv])));
    }
    (QuasibaseSet { side: Side::Right, pairs: right }, QuasibaseSet { side: Side::Left, pairs: left })
}

/// Counts basis pairs `(x, y)` on which `x ⊗ y = Σ xγ_i(y)u_i` (right) or
/// `x ⊗ y = Σ t_i β_i(x) y` (left) holds.
fn quasibase_equation_pairs(powers: &TensorPowers, qb: &QuasibaseSet) -> usize {
    let a = powers.extension().a();
    let q2 = powers.tensor(2);
    let n = a.dim();
    let one = powers.field().one();
    let mut good = 0;
    for x in 0..n {
        for y in 0..n {
            let mut acc = vec![powers.field().zero(); q2.dim()];
            for (endo, tensor) in &qb.pairs {
                let term = match qb.side {
                    Side::Right => powers.left_by(2, &a.mul(&a.basis(x), &endo.column(y))).mul_vec(tensor),
                    Side::Left => powers.right_by(2, &a.mul(&endo.column(x), &a.basis(y))).mul_vec(tensor),
                };
                axpy(&mut acc, &one, &term);
            }
            if acc == q2.pure(&a.basis(x), &a.basis(y)) {
                good += 1;
            }
        }
    }
    good
}

fn criterion1() -> Outcome {
    let mut lines = Vec::new();
    for field in [Field::Rationals, Field::prime(5).map_err(e)?] {
        let ge = group_pair(field, &GroupTable::symmetric3(), &A3).map_err(e)?;
        let powers = TensorPowers::new(&ge.extension, 2).map_err(e)?;
        ensure(right_d2_quasibase(&powers).map_err(e)?.is_some(), format!("{field}: no right quasibase"))?;
        ensure(left_d2_quasibase(&powers).map_err(e)?.is_some(), format!("{field}: no left quasibase"))?;
        let (r, l) = coset_quasibases(&ge, &powers);
        let (lib_r, lib_l) = transversal_quasibases(&ge, &powers);
        ensure(r.pairs == lib_r.pairs && l.pairs == lib_l.pairs, "library transversal quasibase differs")?;
        let (pr, pl) = (quasibase_equation_pairs(&powers, &r), quasibase_equation_pairs(&powers, &l));
        ensure(pr == 36 && pl == 36, format!("{field}: equation holds on {pr}/{pl} of 36 pairs"))?;
        verify_quasibase(&powers, &r).map_err(e)?;
        verify_quasibase(&powers, &l).map_err(e)?;
        lines.push(format!("{field} 36/36 both sides"));
    }
    Ok(lines.join(", "))
}

const AXIOMS: &[&str] = &[
    "source_homomorphism",
    "target_anti_homomorphism",
    "images_commute",
    "induced_bimodule",
    "counit_unital",
    "coproduct_unital",
    "counit_left",
    "counit_right",
    "coassociativity",
    "right_r_linearity",
    "left_r_linearity",
    "takeuchi_times_r",
    "coproduct_multiplicative",
];

fn criterion2() -> Outcome {
    let mut dims = Vec::new();
    for name in ["s3-a3", "field-sqrt2", "trivial-M2"] {
        let ext = catalog::build(name).map_err(e)?;
        let ctx = Arc::new(TeeContext::new(&ext).map_err(e)?);
        let rqb = right_d2_quasibase(ctx.powers()).map_err(e)?.ok_or(format!("{name}: not right D2"))?;
        let bgd = RightBialgebroid::from_quasibase(ctx, &rqb).map_err(e)?;
        let rep = axiom_audit(&bgd);
        for ax in AXIOMS {
            let r = rep.get(ax).ok_or(format!("{name}: axiom {ax} not audited"))?;
            ensure(r.pass, format!("{name}: {ax} fails at {:?}", r.witness))?;
        }
        dims.push(format!("{name} dim T={}", bgd.total().dim()));
    }
    Ok(format!("{} axioms; {}", AXIOMS.len(), dims.join(", ")))
}

fn criterion3() -> Outcome {
    let ext = catalog::build("field-sqrt2").map_err(e)?;
    let ctx = Arc::new(TeeContext::new(&ext).map_err(e)?);
    let bgd = RightBialgebroid::canonical(Arc::clone(&ctx)).map_err(e)?;
    ensure(ctx.t_dim() == 4 && ctx.r_dim() == 2, format!("dim T = {}, dim R = {}", ctx.t_dim(), ctx.r_dim()))?;
    let flip = commutative_flip_check(&bgd).map_err(e)?;
    ensure(flip.pass(), format!("{flip:?}"))?;
    ensure(flip.pairs_checked == 16, format!("{} pairs", flip.pairs_checked))?;
    // Δ(x ⊗ y) pushed through t ⊗ u ↦ t¹ ⊗ t²u¹ ⊗ u² must be x ⊗ 1 ⊗ y
    let a = ext.a();
    let powers = ctx.powers();
    let q2 = powers.tensor(2);
    for i in 0..2 {
        for j in 0..2 {
            let t = ctx.t_coords(&q2.pure(&a.basis(i), &a.basis(j))).ok_or("x ⊗ y not in T")?;
            let image = bgd.witness.forward3.mul_vec(&bgd.delta(&t));
            ensure(image == powers.elementary(&[a.basis(i), a.unit().to_vec(), a.basis(j)]), format!("x={i}, y={j}"))?;
        }
    }
    // ε = μ
    for i in 0..2 {
        for j in 0..2 {
            let t = ctx.t_coords(&q2.pure(&a.basis(i), &a.basis(j))).ok_or("x ⊗ y not in T")?;
            ensure(ctx.r_vector(&bgd.epsilon(&t)) == a.mul(&a.basis(i), &a.basis(j)), "ε differs from μ")?;
        }
    }
    Ok("dim T=4, R=A, Sweedler Δ, ε=μ, τ involutive anti-automorphism on 16 pairs".into())
}

fn criterion4() -> Outcome {
    let mut summary = Vec::new();
    for name in catalog::NAMES {
        let rep = main_theorem_audit(&catalog::build(name).map_err(e)?).map_err(e)?;
        ensure(rep.consistent(), format!("{name}: {rep:?}"))?;
        let expected = catalog::expected_d2(name);
        ensure(rep.lhs == expected && rep.rhs == expected, format!("{name}: lhs={} rhs={}", rep.lhs, rep.rhs))?;
        summary.push(format!("{name}={}", rep.lhs));
    }
    Ok(summary.join(" "))
}

fn criterion5() -> Outcome {
    for name in catalog::NAMES {
        let rep = d2_iff_corollary_audit(&catalog::build(name).map_err(e)?).map_err(e)?;
        ensure(rep.agree, format!("{name}: {rep:?}"))?;
        ensure(rep.quasibase_verdict == catalog::expected_d2(name), format!("{name}: unexpected verdict"))?;
    }
    Ok(format!("{} entries agree", catalog::NAMES.len()))
}

fn flat_span(field: Field, mats: &[Matrix]) -> Subspace {
    let n = mats[0].rows();
    let flats: Vec<Vector> = mats.iter().map(|m| m.flat().to_vec()).collect();
    Subspace::span(field, n * n, flats.iter()).expect("square")
}

fn criterion6() -> Outcome {
    let q = Field::Rationals;
    // regular module of k[S_3]: End_A A is right multiplication
    let s3 = catalog::build("s3-a3").map_err(e)?;
    let bgd = RightBialgebroid::canonical(Arc::new(TeeContext::new(&s3).map_err(e)?)).map_err(e)?;
    let me = t_action(&bgd, &LeftModule::regular(s3.a())).map_err(e)?;
    ensure(me.checks.all_pass(), format!("s3-a3 measuring: {:?}", me.checks.failures()))?;
    let inv = action_invariants(&me).map_err(e)?;
    let rho: Vec<Matrix> = (0..6).map(|i| s3.a().right_mult(i).clone()).collect();
    ensure(inv.invariants == flat_span(q, &rho), "s3-a3 invariants differ from ρ(A)")?;
    ensure(inv.equal_to_end_a, "s3-a3 invariants differ from End_A")?;

    // √2 acting by −√2: a module whose action matrices are not the regular ones
    let a = catalog::sqrt2_algebra(q);
    let sigma = Matrix::from_rows(q, 2, &[vec![q.one(), q.zero()], vec![q.zero(), q.from_i64(-1)]]).map_err(e)?;
    let m = LeftModule::twisted_regular(&AlgebraMorphism::new(a.clone(), a.clone(), sigma).map_err(e)?).map_err(e)?;
    ensure(m != LeftModule::regular(&a), "twisted module coincides with the regular one")?;
    let bgd = RightBialgebroid::canonical(Arc::new(TeeContext::new(&Extension::over_ground(a.clone())).map_err(e)?)).map_err(e)?;
    let me2 = t_action(&bgd, &m).map_err(e)?;
    ensure(me2.checks.all_pass(), format!("sqrt2 measuring: {:?}", me2.checks.failures()))?;
    let inv2 = action_invariants(&me2).map_err(e)?;
    // End_A M: the span of 1 and the action of √2
    let oracle = flat_span(q, &[Matrix::identity(q, 2), m.action()[1].clone()]);
    ensure(inv2.invariants == oracle && inv2.equal_to_end_a, "sqrt2 invariants differ from End_A M")?;
    Ok(format!(
        "s3-a3 End_B dim {} → invariants dim {}; sqrt2 twisted End_B dim {} → invariants dim {}",
        me.dim(),
        inv.invariants_dim,
        me2.dim(),
        inv2.invariants_dim
    ))
}

fn criterion7() -> Outcome {
    let mut ideals = 0;
    for name in catalog::NAMES.iter().filter(|n| catalog::expected_d2(n)) {
        let ext = catalog::build(name).map_err(e)?;
        let a = ext.a();
        for i in 0..a.dim() {
            let ideal = ideal_closure(a, &[a.basis(i)]).map_err(e)?;
            let rep = normality_audit(&ext, &ideal).map_err(e)?;
            ensure(rep.equal(), format!("{name}: ideal of e{i}: {rep:?}"))?;
            ideals += 1;
        }
    }
    let ge = group_pair(Field::Rationals, &GroupTable::symmetric3(), &A3).map_err(e)?;
    let powers = TensorPowers::new(&ge.extension, 2).map_err(e)?;
    let (rqb, _) = coset_quasibases(&ge, &powers);
    // p(g) = g for g ∈ N, 0 otherwise
    let mut p = Matrix::zeros(Field::Rationals, 3, 6);
    for (k, &g) in ge.subgroup.iter().enumerate() {
        p.set(k, g, Field::Rationals.one());
    }
    let db = split_projectivity_audit(&powers, &rqb, &p).map_err(e)?;
    let a = ge.extension.a();
    for y in 0..6 {
        let mut acc = a.zero();
        for (f, x) in db.functionals.iter().zip(&db.elements) {
            axpy(&mut acc, &Field::Rationals.one(), &a.mul(&ge.extension.iota().apply(&f.column(y)), x));
        }
        ensure(acc == unit_vector(Field::Rationals, 6, y), format!("basis element {y} not reconstructed"))?;
    }
    Ok(format!("{ideals} principal ideals normal; 6/6 basis elements reconstructed"))
}

fn criterion8() -> Outcome {
    let q = Field::Rationals;
    let inner = catalog::scalars_in_m2(q);
    let inner_powers = TensorPowers::new(&inner, 2).map_err(e)?;
    ensure(h_separability_test(&inner_powers).map_err(e)?.is_some(), "Q ⊆ M2 is not H-separable")?;
    let outer = Extension::trivial(FiniteAlgebra::matrix_units(q, 2));
    ensure(right_d2_quasibase(&TensorPowers::new(&outer, 2).map_err(e)?).map_err(e)?.is_some(), "outer not D2")?;
    let composite = catalog::composite_m2(q).map_err(e)?;
    let powers = TensorPowers::new(&composite, 2).map_err(e)?;
    let qb = right_d2_quasibase(&powers).map_err(e)?.ok_or("composite not right D2")?;
    ensure(quasibase_equation_pairs(&powers, &qb) == 16, "composite quasibase equation fails")?;
    Ok(format!("composite right D2 with {} pairs", qb.len()))
}

fn criterion9() -> Outcome {
    let ge = group_pair(Field::Rationals, &GroupTable::symmetric3(), &A3).map_err(e)?;
    let ctx = Arc::new(TeeContext::new(&ge.extension).map_err(e)?);
    let solver = right_d2_quasibase(ctx.powers()).map_err(e)?.ok_or("no quasibase")?;
    let (cosets, _) = coset_quasibases(&ge, ctx.powers());
    ensure(solver.pairs != cosets.pairs, "the two quasibases coincide")?;
    let b1 = RightBialgebroid::from_quasibase(Arc::clone(&ctx), &solver).map_err(e)?;
    let b2 = RightBialgebroid::from_quasibase(ctx, &cosets).map_err(e)?;
    ensure(b1.coproduct == b2.coproduct, "Δ differs")?;
    ensure(b1.counit == b2.counit, "ε differs")?;
    ensure(b1.source == b2.source, "s_R differs")?;
    ensure(b1.target == b2.target, "t_R differs")?;
    Ok(format!("{} vs {} pairs, identical Δ, ε, s_R, t_R", solver.len(), cosets.len()))
}

/// Adds one to a single entry.
fn bump(m: &Matrix, i: usize, j: usize) -> Matrix {
    let mut out = m.clone();
    let v = out.get(i, j) + &m.field().one();
    out.set(i, j, v);
    out
}

fn criterion10() -> Outcome {
    let mut mutants = 0;
    for name in ["field-sqrt2", "s3-a3", "trivial-M2"] {
        let ext = catalog::build(name).map_err(e)?;
        let ctx = Arc::new(TeeContext::new(&ext).map_err(e)?);
        let bgd = RightBialgebroid::canonical(Arc::clone(&ctx)).map_err(e)?;
        ensure(axiom_audit(&bgd).all_pass(), format!("{name}: unmutated audit fails"))?;
        let maps: [(&str, fn(&mut RightBialgebroid) -> &mut Matrix); 4] = [
            ("source", |b| &mut b.source),
            ("target", |b| &mut b.target),
            ("counit", |b| &mut b.counit),
            ("coproduct", |b| &mut b.coproduct),
        ];
        for (label, field_of) in maps {
            let original = field_of(&mut bgd.clone()).clone();
            for i in 0..original.rows() {
                for j in 0..original.cols() {
                    let mut m = bgd.clone();
                    *field_of(&mut m) = bump(&original, i, j);
                    let rep = axiom_audit(&m);
                    let caught = rep.0.values().any(|r| !r.pass && r.witness.is_some());
                    ensure(caught, format!("{name}: {label}[{i},{j}] mutation undetected"))?;
                    mutants += 1;
                }
            }
        }
        // coaction entries
        let rqb = right_d2_quasibase(ctx.powers()).map_err(e)?.ok_or("not D2")?;
        let delta = coaction(&ctx, &rqb).map_err(e)?;
        ensure(comodule_algebra_audit(&bgd, &delta).all_pass(), format!("{name}: unmutated coaction fails"))?;
        for i in 0..delta.rows() {
            for j in 0..delta.cols() {
                let rep = comodule_algebra_audit(&bgd, &bump(&delta, i, j));
                ensure(rep.0.values().any(|r| !r.pass && r.witness.is_some()), format!("{name}: δ[{i},{j}] undetected"))?;
                mutants += 1;
            }
        }
        // quasibase endomorphisms
        for k in 0..rqb.len() {
            let mut bad = rqb.clone();
            bad.pairs[k].0 = bump(&bad.pairs[k].0, 0, 0);
            ensure(verify_quasibase(ctx.powers(), &bad).is_err(), format!("{name}: γ_{k} mutation undetected"))?;
            mutants += 1;
        }
    }
    Ok(format!("{mutants} single-entry mutants all caught"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("quasibase soundness", criterion1),
        ("bialgebroid axiom suite", criterion2),
        ("commutative specialization", criterion3),
        ("main theorem as executable property", criterion4),
        ("corollary oracle cross-check", criterion5),
        ("invariants of the T-action", criterion6),
        ("necessary conditions", criterion7),
        ("composite depth two", criterion8),
        ("quasibase independence", criterion9),
        ("mutation sensitivity", criterion10),
    ];
    let mut failed = 0;
    for (k, (label, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {label}: {detail} ({:.2?})", k + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {label}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
