//! Depth-two quasibases: extraction from a summand factorization,
//! verification, the group-algebra transversal construction, and the
//! necessary conditions that follow from right depth two.

use serde::Serialize;

use crate::algebra::Extension;
use crate::bimodule::{coproduct_summand_test, hom_space, Acting, Bimodule, Factorization};
use crate::error::{Error, Result};
use crate::group::GroupExtension;
use crate::linalg::{axpy, is_zero_vector, Matrix, Vector};
use crate::tensor::TensorPowers;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// `(γ_i, u_i)` on the right or `(β_i, t_i)` on the left. Endomorphisms are
/// `dim A × dim A` matrices and tensors are coordinates in `A ⊗_B A`.
#[derive(Clone, Debug)]
pub struct QuasibaseSet {
    pub side: Side,
    pub pairs: Vec<(Matrix, Vector)>,
}

impl QuasibaseSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn endos(&self) -> impl Iterator<Item = &Matrix> {
        self.pairs.iter().map(|p| &p.0)
    }

    pub fn tensors(&self) -> impl Iterator<Item = &Vector> {
        self.pairs.iter().map(|p| &p.1)
    }
}

/// `a ↦ 1 ⊗ a` (right side) or `a ↦ a ⊗ 1` (left side) into `A ⊗_B A`.
fn unit_insertion(powers: &TensorPowers, side: Side) -> Matrix {
    let a = powers.extension().a();
    let one = a.unit().to_vec();
    let t = powers.tensor(2);
    let cols: Vec<Vector> = (0..a.dim())
        .map(|j| match side {
            Side::Right => t.pure(&one, &a.basis(j)),
            Side::Left => t.pure(&a.basis(j), &one),
        })
        .collect();
    Matrix::from_columns(a.field(), t.dim(), &cols).expect("dims")
}

fn from_factorization(powers: &TensorPowers, side: Side, fac: &Factorization) -> QuasibaseSet {
    let one = powers.extension().a().unit();
    let insert = unit_insertion(powers, side);
    let pairs = fac.pairs.iter().map(|(f, g)| (g.mul(&insert), f.mul_vec(one))).collect();
    QuasibaseSet { side, pairs }
}

/// Right D2 decision: is `_A A⊗_B A_B` a summand of `A^n`? On success the
/// factorization becomes `u_i = f_i(1)`, `γ_i = g_i(1 ⊗ −)`.
pub fn right_d2_quasibase(powers: &TensorPowers) -> Result<Option<QuasibaseSet>> {
    let ext = powers.extension();
    let m = Bimodule::of_tensor_power(powers, 2, Acting::A, Acting::B);
    let p = Bimodule::of_algebra(ext, Acting::A, Acting::B);
    let Some(fac) = coproduct_summand_test(&m, &p)? else {
        return Ok(None);
    };
    let qb = from_factorization(powers, Side::Right, &fac);
    verify_quasibase(powers, &qb)?;
    Ok(Some(qb))
}

/// Left D2 decision on `_B A⊗_B A_A` against `_B A_A`, with `t_i = f_i(1)`
/// and `β_i = g_i(− ⊗ 1)`.
pub fn left_d2_quasibase(powers: &TensorPowers) -> Result<Option<QuasibaseSet>> {
    let ext = powers.extension();
    let m = Bimodule::of_tensor_power(powers, 2, Acting::B, Acting::A);
    let p = Bimodule::of_algebra(ext, Acting::B, Acting::A);
    let Some(fac) = coproduct_summand_test(&m, &p)? else {
        return Ok(None);
    };
    let qb = from_factorization(powers, Side::Left, &fac);
    verify_quasibase(powers, &qb)?;
    Ok(Some(qb))
}

/// Checks that every endomorphism is `B`-`B`-linear, every tensor is
/// `B`-central, and the defining equation holds on all basis pairs:
/// `x ⊗ y = Σ xγ_i(y)u_i` on the right, `x ⊗ y = Σ t_iβ_i(x)y` on the left.
pub fn verify_quasibase(powers: &TensorPowers, qb: &QuasibaseSet) -> Result<()> {
    let ext = powers.extension();
    let a = ext.a();
    let field = a.field();
    let n = a.dim();
    let bad = |msg: String| Err(Error::InvalidQuasibase(msg));
    for (i, (e, t)) in qb.pairs.iter().enumerate() {
        if e.rows() != n || e.cols() != n || t.len() != powers.dim(2) {
            return bad(format!("pair {i} has the wrong shape"));
        }
        for b in ext.b_images() {
            let (l, r) = (a.left_mult_by(b), a.right_mult_by(b));
            if e.mul(&l) != l.mul(e) || e.mul(&r) != r.mul(e) {
                return bad(format!("endomorphism {i} is not B-B-linear"));
            }
            if powers.left_by(2, b).mul_vec(t) != powers.right_by(2, b).mul_vec(t) {
                return bad(format!("tensor {i} is not B-central"));
            }
        }
    }
    let level = powers.level(2);
    for fixed in 0..n {
        // w = 1 ⊗ y (right) or x ⊗ 1 (left), rebuilt from the quasibase
        let mut w = vec![field.zero(); powers.dim(2)];
        for (e, t) in &qb.pairs {
            let img = e.column(fixed);
            let act = match qb.side {
                Side::Right => powers.left_by(2, &img),
                Side::Left => powers.right_by(2, &img),
            };
            axpy(&mut w, &field.one(), &act.mul_vec(t));
        }
        for other in 0..n {
            let (x, y, got) = match qb.side {
                Side::Right => (other, fixed, level.left[other].mul_vec(&w)),
                Side::Left => (fixed, other, level.right[other].mul_vec(&w)),
            };
            if got != powers.elementary_basis(&[x, y]) {
                return bad(format!("defining equation fails on basis pair ({x}, {y})"));
            }
        }
    }
    Ok(())
}

/// Coset projections `γ_i` with `u_i = g_i⁻¹ ⊗ g_i` (right) and
/// `t_i = g_i ⊗ g_i⁻¹` (left), for a transversal `{g_i}` of `N` in `G`.
pub fn transversal_quasibases(ge: &GroupExtension, powers: &TensorPowers) -> (QuasibaseSet, QuasibaseSet) {
    let g = &ge.group;
    let field = powers.field();
    let n = g.order();
    let mut right = Vec::new();
    let mut left = Vec::new();
    for (i, &gi) in ge.transversal.iter().enumerate() {
        let mut proj = Matrix::zeros(field, n, n);
        for x in 0..n {
            if g.coset_of(&ge.transversal, &ge.subgroup, x) == i {
                proj.set(x, x, field.one());
            }
        }
        let inv = g.inverse(gi);
        right.push((proj.clone(), powers.elementary_basis(&[inv, gi])));
        left.push((proj, powers.elementary_basis(&[gi, inv])));
    }
    (QuasibaseSet { side: Side::Right, pairs: right }, QuasibaseSet { side: Side::Left, pairs: left })
}

/// H-separability: `_A A⊗_B A_A` a summand of `A^n` as `A`-`A`-bimodules.
pub fn h_separability_test(powers: &TensorPowers) -> Result<Option<Factorization>> {
    let m = Bimodule::of_tensor_power(powers, 2, Acting::A, Acting::A);
    let p = Bimodule::of_algebra(powers.extension(), Acting::A, Acting::A);
    coproduct_summand_test(&m, &p)
}

/// Dual bases `y = Σ f_k(y) x_k` for `_B A`, with `f_k: A → B` as
/// `dim B × dim A` matrices.
#[derive(Clone, Debug)]
pub struct DualBasis {
    pub functionals: Vec<Matrix>,
    pub elements: Vec<Vector>,
}

/// `y = Σ p(γ_i(y)u_i¹)u_i²` for a `B`-`B`-bimodule projection `p: A → B`
/// with `p∘ι = id_B`; the tensors `u_i` are expanded into elementary terms.
pub fn split_projectivity_audit(powers: &TensorPowers, rqb: &QuasibaseSet, p: &Matrix) -> Result<DualBasis> {
    let ext = powers.extension();
    let (a, b) = (ext.a(), ext.b());
    let field = a.field();
    if rqb.side != Side::Right {
        return Err(Error::Precondition("a right quasibase is required".into()));
    }
    if p.rows() != b.dim() || p.cols() != a.dim() {
        return Err(Error::NotASplitting(format!("projection must be {}x{}", b.dim(), a.dim())));
    }
    if !p.mul(ext.iota().matrix()).is_identity() {
        return Err(Error::NotASplitting("p∘ι is not the identity of B".into()));
    }
    for j in 0..b.dim() {
        let ib = &ext.b_images()[j];
        if p.mul(&a.left_mult_by(ib)) != b.left_mult(j).mul(p) || p.mul(&a.right_mult_by(ib)) != b.right_mult(j).mul(p) {
            return Err(Error::NotASplitting(format!("p is not B-B-linear at basis element {j}")));
        }
    }
    let q2 = powers.tensor(2);
    let mut functionals = Vec::new();
    let mut elements = Vec::new();
    for (gamma, u) in &rqb.pairs {
        for (x, y, c) in q2.lift(u) {
            // y ↦ c·p(γ(y) e_x)
            let f = p.mul(&a.right_mult(x).mul(gamma)).scale(&c);
            functionals.push(f);
            elements.push(a.basis(y));
        }
    }
    for y in 0..a.dim() {
        let mut acc = a.zero();
        for (f, x) in functionals.iter().zip(&elements) {
            let coeff = ext.iota().apply(&f.column(y));
            axpy(&mut acc, &field.one(), &a.mul(&coeff, x));
        }
        if acc != a.basis(y) {
            return Err(Error::Construction(format!("dual basis fails to reconstruct basis element {y}")));
        }
    }
    Ok(DualBasis { functionals, elements })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractReport {
    pub end_dim: usize,
    pub index_size: usize,
    pub pass: bool,
}

/// `End _B A` is a retract of `A^I`: `φ ↦ (u_i¹φ(u_i²))_i` followed by
/// `(a_i) ↦ (y ↦ Σ γ_i(y)a_i)` is the identity on every basis `φ`.
pub fn endomorphism_retract_check(powers: &TensorPowers, rqb: &QuasibaseSet) -> Result<RetractReport> {
    let ext = powers.extension();
    let a = ext.a();
    let n = a.dim();
    let module = Bimodule::of_algebra(ext, Acting::B, Acting::Ground);
    let ends = hom_space(&module, &module)?;
    let q2 = powers.tensor(2);
    let mut pass = true;
    for phi in &ends {
        // x ⊗ y ↦ xφ(y) descends because φ is left B-linear
        let images: Vec<Vector> = (0..n * n).map(|c| a.mul(&a.basis(c / n), &phi.column(c % n))).collect();
        let contract = q2.descend(n, &images)?;
        let coords: Vec<Vector> = rqb.tensors().map(|u| contract.mul_vec(u)).collect();
        for y in 0..n {
            let mut acc = a.zero();
            for ((gamma, _), ai) in rqb.pairs.iter().zip(&coords) {
                axpy(&mut acc, &a.field().one(), &a.mul(&gamma.column(y), ai));
            }
            if acc != phi.column(y) {
                pass = false;
            }
        }
    }
    Ok(RetractReport { end_dim: ends.len(), index_size: rqb.len(), pass })
}

/// True when some pair has a zero tensor or a zero endomorphism.
pub fn has_degenerate_pair(qb: &QuasibaseSet) -> bool {
    qb.pairs.iter().any(|(e, t)| e.is_zero() || is_zero_vector(t))
}

/// Convenience: the right quasibase of an extension, building its tensor
/// square on the way.
pub fn right_d2(ext: &Extension) -> Result<Option<QuasibaseSet>> {
    right_d2_quasibase(&crate::tensor::tensor_square(ext)?)
}
