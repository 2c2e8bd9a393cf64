//! The right `T`-action `f ◁ t = t¹ f(t² −)` on `End_B M`, its invariants,
//! and the anchor `r ◁ t = t¹ r t²` on `R`.

use serde::Serialize;

use crate::algebra::{AlgebraMorphism, Extension, FiniteAlgebra};
use crate::bialgebroid::{AuditReport, RightBialgebroid};
use crate::bimodule::{hom_space, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, support, Matrix, Subspace, Vector};
use crate::scalar::{Field, Scalar};

/// A finite-dimensional unital left module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule {
    algebra: FiniteAlgebra,
    dim: usize,
    action: Vec<Matrix>,
}

impl LeftModule {
    pub fn new(algebra: FiniteAlgebra, dim: usize, action: Vec<Matrix>) -> Result<LeftModule> {
        let field = algebra.field();
        Bimodule::new(algebra.clone(), FiniteAlgebra::ground(field), dim, action.clone(), vec![Matrix::identity(field, dim)])?;
        Ok(LeftModule { algebra, dim, action })
    }

    pub fn regular(a: &FiniteAlgebra) -> LeftModule {
        LeftModule { algebra: a.clone(), dim: a.dim(), action: (0..a.dim()).map(|i| a.left_mult(i).clone()).collect() }
    }

    /// `A` with `a·m = σ(a)m` for an automorphism `σ`.
    pub fn twisted_regular(sigma: &AlgebraMorphism) -> Result<LeftModule> {
        let a = sigma.source();
        if sigma.target() != a || sigma.matrix().rank() != a.dim() {
            return Err(Error::NotAMorphism("twist must be an automorphism".into()));
        }
        let action = (0..a.dim()).map(|i| a.left_mult_by(&sigma.apply(&a.basis(i)))).collect();
        LeftModule::new(a.clone(), a.dim(), action)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn act(&self, a: &[Scalar]) -> Matrix {
        Matrix::combination(self.algebra.field(), self.dim, self.dim, a, &self.action)
    }

    pub fn as_bimodule(&self) -> Bimodule {
        let field = self.algebra.field();
        Bimodule::new(
            self.algebra.clone(),
            FiniteAlgebra::ground(field),
            self.dim,
            self.action.clone(),
            vec![Matrix::identity(field, self.dim)],
        )
        .expect("validated module")
    }

    /// `M` as a left `B`-module through `ι`.
    pub fn restrict(&self, ext: &Extension) -> Result<Bimodule> {
        if ext.a() != &self.algebra {
            return Err(Error::AlgebraMismatch("module is not over A".into()));
        }
        let field = self.algebra.field();
        Bimodule::new(
            ext.b().clone(),
            FiniteAlgebra::ground(field),
            self.dim,
            ext.b_images().iter().map(|b| self.act(b)).collect(),
            vec![Matrix::identity(field, self.dim)],
        )
    }
}

/// `𝓔 = End_B M` with the right `T`-action.
#[derive(Clone, Debug)]
pub struct MeasuredEndos {
    bgd: RightBialgebroid,
    module: LeftModule,
    endos: Vec<Matrix>,
    space: Subspace,
    /// One `dim 𝓔 × dim 𝓔` matrix per basis element of `T`.
    action: Vec<Matrix>,
    pub checks: AuditReport,
}

fn flat_space(field: Field, dim: usize, mats: &[Matrix]) -> Subspace {
    let flats: Vec<Vector> = mats.iter().map(|m| m.flat().to_vec()).collect();
    Subspace::span(field, dim * dim, flats.iter()).expect("square matrices")
}

impl MeasuredEndos {
    pub fn module(&self) -> &LeftModule {
        &self.module
    }

    pub fn endos(&self) -> &[Matrix] {
        &self.endos
    }

    /// `End_B M` as a subspace of flattened `dim M × dim M` matrices.
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn dim(&self) -> usize {
        self.endos.len()
    }

    pub fn coords(&self, f: &Matrix) -> Option<Vector> {
        self.space.coordinates(f.flat())
    }

    pub fn matrix_of(&self, coords: &[Scalar]) -> Matrix {
        let d = self.module.dim();
        Matrix::combination(self.module.algebra().field(), d, d, coords, &self.endos)
    }

    /// `f ◁ t` for a `T` coordinate vector, straight from `t¹ f(t² −)`.
    pub fn act(&self, f: &Matrix, t: &[Scalar]) -> Matrix {
        let ctx = self.bgd.context();
        let q2 = ctx.powers().tensor(2);
        let d = self.module.dim();
        let mut acc = Matrix::zeros(ctx.field(), d, d);
        for (x, y, c) in q2.lift(&ctx.t_vector(t)) {
            acc = acc.add(&self.module.action[x].mul(f).mul(&self.module.action[y]).scale(&c));
        }
        acc
    }
}

/// Builds the action on `End_B M` and checks unitality, associativity, the
/// measuring identity on all basis triples, and `id ◁ t = λ(ε(t))`.
pub fn t_action(bgd: &RightBialgebroid, m: &LeftModule) -> Result<MeasuredEndos> {
    let ctx = bgd.context();
    let ext = ctx.extension();
    let field = ctx.field();
    let restricted = m.restrict(ext)?;
    let space = flat_space(field, m.dim(), &hom_space(&restricted, &restricted)?);
    // the RREF basis, so coordinates are read off at pivots
    let endos = space
        .basis()
        .iter()
        .map(|v| Matrix::from_flat(field, m.dim(), m.dim(), v.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut me = MeasuredEndos { bgd: bgd.clone(), module: m.clone(), endos, space, action: Vec::new(), checks: AuditReport::default() };
    let de = me.dim();
    let dt = ctx.t_dim();
    let t = ctx.total();
    let mut action = Vec::with_capacity(dt);
    for k in 0..dt {
        let cols = me
            .endos
            .iter()
            .map(|e| me.coords(&me.act(e, &t.basis(k))).ok_or_else(|| Error::Construction("f ◁ t left End_B M".into())))
            .collect::<Result<Vec<_>>>()?;
        action.push(Matrix::from_columns(field, de, &cols)?);
    }
    me.action = action;

    let mut checks = AuditReport::default();
    let unit_action = Matrix::combination(field, de, de, t.unit(), &me.action);
    checks.record("unital", if unit_action.is_identity() { Ok(()) } else { Err("f ◁ 1_T ≠ f".into()) });

    let assoc = (0..dt)
        .flat_map(|i| (0..dt).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let tu = Matrix::combination(field, de, de, t.basis_product(i, j), &me.action);
            me.action[j].mul(&me.action[i]) != tu
        })
        .map(|(i, j)| format!("t={i}, u={j}"));
    checks.record("associative", assoc.map_or(Ok(()), Err));

    // acted[k][e] = e ◁ t_k as a matrix on M
    let acted: Vec<Vec<Matrix>> =
        (0..dt).map(|k| (0..de).map(|e| me.matrix_of(&me.action[k].column(e))).collect()).collect();
    let tt = ctx.tt();
    let mut measuring = Ok(());
    'outer: for k in 0..dt {
        let delta = bgd.delta(&t.basis(k));
        let terms: Vec<(usize, usize, Scalar)> =
            support(&delta).map(|(q, c)| (tt.section(q).0, tt.section(q).1, c.clone())).collect();
        for f in 0..de {
            for g in 0..de {
                let d = m.dim();
                let mut lhs = Matrix::zeros(field, d, d);
                for (a, b, c) in &terms {
                    lhs = lhs.add(&acted[*a][f].mul(&acted[*b][g]).scale(c));
                }
                let rhs = me.act(&me.endos[f].mul(&me.endos[g]), &t.basis(k));
                if lhs != rhs {
                    measuring = Err(format!("f={f}, g={g}, t={k}"));
                    break 'outer;
                }
            }
        }
    }
    checks.record("measuring", measuring);

    let id = Matrix::identity(field, m.dim());
    let twisted = (0..dt)
        .find(|&k| me.act(&id, &t.basis(k)) != lambda_eps(&me, k))
        .map(|k| format!("t={k}"));
    checks.record("identity_twisted", twisted.map_or(Ok(()), Err));
    me.checks = checks;
    Ok(me)
}

/// `λ(ε(t_k))` on `M`.
fn lambda_eps(me: &MeasuredEndos, k: usize) -> Matrix {
    let ctx = me.bgd.context();
    me.module.act(&ctx.r_vector(&me.bgd.counit.column(k)))
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsReport {
    pub end_b_dim: usize,
    pub invariants_dim: usize,
    pub end_a_dim: usize,
    /// `{φ : φ ◁ t = φ ∘ λ(ε(t))}` equals `End_A M`.
    pub equal_to_end_a: bool,
    /// `{φ : φ ◁ t = λ(ε(t)) ∘ φ}` equals `End_A M`.
    pub left_form_equal_to_end_a: bool,
    pub identity_invariant: bool,
    #[serde(skip)]
    pub invariants: Subspace,
}

fn invariant_subspace(me: &MeasuredEndos, twist_on_right: bool) -> Subspace {
    let ctx = me.bgd.context();
    let field = ctx.field();
    let d = me.module.dim();
    let de = me.dim();
    let mut equations = Vec::new();
    for k in 0..ctx.t_dim() {
        let lam = lambda_eps(me, k);
        let diffs: Vec<Matrix> = (0..de)
            .map(|e| {
                let acted = me.matrix_of(&me.action[k].column(e));
                let twisted = if twist_on_right { me.endos[e].mul(&lam) } else { lam.mul(&me.endos[e]) };
                acted.sub(&twisted)
            })
            .collect();
        for p in 0..d * d {
            equations.push(diffs.iter().map(|m| m.flat()[p].clone()).collect::<Vector>());
        }
    }
    let sols = nullspace(field, de, equations);
    let flats: Vec<Vector> = sols.iter().map(|c| me.matrix_of(c).flat().to_vec()).collect();
    Subspace::span(field, d * d, flats.iter()).expect("square matrices")
}

/// `𝓔^T` against `End_A M` computed by a separate hom-space solve.
pub fn action_invariants(me: &MeasuredEndos) -> Result<InvariantsReport> {
    let field = me.module.algebra().field();
    let d = me.module.dim();
    let right = invariant_subspace(me, true);
    let left = invariant_subspace(me, false);
    let bm = me.module.as_bimodule();
    let end_a = flat_space(field, d, &hom_space(&bm, &bm)?);
    let id = Matrix::identity(field, d);
    Ok(InvariantsReport {
        end_b_dim: me.dim(),
        invariants_dim: right.dim(),
        end_a_dim: end_a.dim(),
        equal_to_end_a: right == end_a,
        left_form_equal_to_end_a: left == end_a,
        identity_invariant: right.contains(id.flat()),
        invariants: right,
    })
}

/// The anchor `r ◁ t = t¹ r t²` as one `dim R × dim R` matrix per basis
/// element of `T`.
#[derive(Clone, Debug)]
pub struct Anchor {
    pub matrices: Vec<Matrix>,
    pub checks: AuditReport,
}

pub fn anchor(bgd: &RightBialgebroid) -> Result<Anchor> {
    let ctx = bgd.context();
    let field = ctx.field();
    let a = ctx.extension().a();
    let powers = ctx.powers();
    let q2 = powers.tensor(2);
    let mu = powers.mu();
    let (dr, dt) = (ctx.r_dim(), ctx.t_dim());
    let r_basis = ctx.r_embedding().columns();
    let contract: Vec<Matrix> = r_basis.iter().map(|r| mu.mul(&q2.act_right(&a.left_mult_by(r)))).collect();
    let mut matrices = Vec::with_capacity(dt);
    for t in ctx.t_embedding().columns() {
        let cols = contract
            .iter()
            .map(|c| ctx.r_coords(&c.mul_vec(&t)).ok_or_else(|| Error::Construction("t¹rt² outside R".into())))
            .collect::<Result<Vec<_>>>()?;
        matrices.push(Matrix::from_columns(field, dr, &cols)?);
    }
    let total = ctx.total();
    let base = ctx.base();
    let at = |t: &[Scalar]| Matrix::combination(field, dr, dr, t, &matrices);
    let mut checks = AuditReport::default();
    checks.record("unit", if at(total.unit()).is_identity() { Ok(()) } else { Err("r ◁ 1_T ≠ r".into()) });
    let counit = (0..dt).find(|&k| matrices[k].mul_vec(base.unit()) != bgd.counit.column(k)).map(|k| format!("t={k}"));
    checks.record("counit_at_one", counit.map_or(Ok(()), Err));
    let assoc = (0..dt)
        .flat_map(|i| (0..dt).map(move |j| (i, j)))
        .find(|&(i, j)| matrices[j].mul(&matrices[i]) != at(total.basis_product(i, j)))
        .map(|(i, j)| format!("t={i}, u={j}"));
    checks.record("associative", assoc.map_or(Ok(()), Err));
    let tt = ctx.tt();
    let mut module_algebra = Ok(());
    'outer: for k in 0..dt {
        let delta = bgd.delta(&total.basis(k));
        for i in 0..dr {
            for j in 0..dr {
                let mut lhs = base.zero();
                for (q, c) in support(&delta) {
                    let (x, y) = tt.section(q);
                    let term = base.mul(&matrices[x].column(i), &matrices[y].column(j));
                    crate::linalg::axpy(&mut lhs, c, &term);
                }
                if lhs != matrices[k].mul_vec(base.basis_product(i, j)) {
                    module_algebra = Err(format!("r={i}, s={j}, t={k}"));
                    break 'outer;
                }
            }
        }
    }
    checks.record("module_algebra", module_algebra);
    Ok(Anchor { matrices, checks })
}

/// `λ(r) ◁ t = λ(r ◁ t)` on the regular module.
pub fn anchor_compatibility(me: &MeasuredEndos, anchor: &Anchor) -> std::result::Result<(), String> {
    let ctx = me.bgd.context();
    let a = ctx.extension().a();
    if me.module != LeftModule::regular(a) {
        return Err("module is not the regular module".into());
    }
    let t = ctx.total();
    for k in 0..ctx.t_dim() {
        for j in 0..ctx.r_dim() {
            let r = ctx.r_embedding().column(j);
            let lhs = me.act(&a.left_mult_by(&r), &t.basis(k));
            let rhs = a.left_mult_by(&ctx.r_vector(&anchor.matrices[k].column(j)));
            if lhs != rhs {
                return Err(format!("r={j}, t={k}"));
            }
        }
    }
    Ok(())
}
