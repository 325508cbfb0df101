//! Twisted matrix algebras `M_n(Q^theta Gamma_1)`, their embedding into
//! `End V` for a fine structure `(Gamma_1, chi, iota)`, and the recovery of
//! such a structure from a graded-irreducible subalgebra of `End V`.

use std::collections::BTreeSet;

use crate::algebra::GradedAlgebraFD;
use crate::cohomology::{check_mult_cocycle_z, mult_cocycle_violation, chi_from_theta, MultCocycleZ};
use crate::error::{Error, Result};
use crate::group::{FineSubgroupData, FiniteGroup};
use crate::irreducible::{check_homogeneous, coordinates_by_degree, graded_irreducible_seeded, Irreducibility, DEFAULT_SEED};
use crate::matrix::{Matrix, Subspace};
use crate::scalar::{ExactField, Scalar};
use crate::semisimple::{center, split_commutative};

/// Basis label `E_{(m,i),(k,j)} gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwistedLabel {
    pub row: (usize, usize),
    pub col: (usize, usize),
    pub gamma: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedMatrixAlgebra<F> {
    fine: FineSubgroupData,
    sizes: Vec<usize>,
    theta: Vec<Vec<F>>,
    labels: Vec<TwistedLabel>,
    algebra: GradedAlgebraFD<F>,
}

impl<F: Scalar> TwistedMatrixAlgebra<F> {
    /// Rows and columns are indexed by pairs `(k, j)` with `j < sizes[k]`;
    /// `theta` is a full table whose restriction to `Gamma_1` is a
    /// normalized 2-cocycle. `E_{(m,i),(k,j)} gamma` has degree
    /// `gamma_m gamma gamma_k^{-1}`.
    pub fn new(group: &FiniteGroup, fine: &FineSubgroupData, sizes: &[usize], theta: Vec<Vec<F>>) -> Result<Self> {
        let p = fine.num_cosets();
        if sizes.len() != p {
            return Err(Error::DimensionMismatch(format!("{} sizes for {p} cosets", sizes.len())));
        }
        if sizes.contains(&0) {
            return Err(Error::Invalid("block sizes must be positive".into()));
        }
        if let Some(msg) = mult_cocycle_violation(group, fine.gamma1(), &theta) {
            return Err(Error::NotACocycle(msg));
        }
        let e = group.identity();
        if !theta[e][e].is_one() {
            return Err(Error::NotACocycle("theta(e, e) must be 1".into()));
        }
        let slots: Vec<(usize, usize)> = (0..p).flat_map(|k| (0..sizes[k]).map(move |j| (k, j))).collect();
        let mut labels = Vec::new();
        for &row in &slots {
            for &col in &slots {
                for &gamma in fine.gamma1() {
                    labels.push(TwistedLabel { row, col, gamma });
                }
            }
        }
        let index = |l: &TwistedLabel| labels.binary_search(l).expect("label present");
        let dim = labels.len();
        let mut mult = vec![vec![vec![F::zero(); dim]; dim]; dim];
        for (a, la) in labels.iter().enumerate() {
            for (b, lb) in labels.iter().enumerate() {
                if la.col != lb.row {
                    continue;
                }
                let c = index(&TwistedLabel { row: la.row, col: lb.col, gamma: group.mul(la.gamma, lb.gamma) });
                mult[a][b][c] = theta[la.gamma][lb.gamma].clone();
            }
        }
        let degrees = labels
            .iter()
            .map(|l| group.mul(group.mul(fine.rep(l.row.0), l.gamma), group.inv(fine.rep(l.col.0))))
            .collect();
        let algebra = GradedAlgebraFD::new(group.clone(), degrees, mult)?;
        Ok(TwistedMatrixAlgebra { fine: fine.clone(), sizes: sizes.to_vec(), theta, labels, algebra })
    }

    pub fn fine(&self) -> &FineSubgroupData {
        &self.fine
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn theta(&self) -> &[Vec<F>] {
        &self.theta
    }

    pub fn labels(&self) -> &[TwistedLabel] {
        &self.labels
    }

    pub fn algebra(&self) -> &GradedAlgebraFD<F> {
        &self.algebra
    }
}

/// Data `(Gamma_1, gamma_k, chi, iota)` describing a graded-irreducible
/// subalgebra of `End V` with `dim V_gamma = sizes[k]` on `Gamma_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FineStructure<F> {
    chi: MultCocycleZ<F>,
    sizes: Vec<usize>,
    iota: Vec<Option<Matrix<F>>>,
}

impl<F: Scalar> FineStructure<F> {
    /// `iota[g]` maps `V_{gamma_k}` to `V_g` and is `None` exactly on
    /// `Gamma_0`.
    pub fn new(group: &FiniteGroup, chi: MultCocycleZ<F>, sizes: Vec<usize>, iota: Vec<Option<Matrix<F>>>) -> Result<Self> {
        if let Some(msg) = crate::cohomology::mult_cocycle_z_violation(group, &chi) {
            return Err(Error::NotACocycle(msg));
        }
        let fine = chi.fine();
        if sizes.len() != fine.num_cosets() || sizes.contains(&0) {
            return Err(Error::DimensionMismatch("one positive size per coset".into()));
        }
        if iota.len() != group.order() {
            return Err(Error::DimensionMismatch("one iota entry per group element".into()));
        }
        for g in group.elements() {
            match (fine.coset_of(g), &iota[g]) {
                (None, None) => {}
                (Some(k), Some(m)) => {
                    let n = sizes[k];
                    if m.rows() != n || m.cols() != n || m.determinant().is_zero() {
                        return Err(Error::Invalid(format!("iota_{} must be an invertible {n}x{n} matrix", group.label(g))));
                    }
                    if g == fine.rep(k) && *m != Matrix::identity(n) {
                        return Err(Error::Invalid(format!("iota_{} must be the identity", group.label(g))));
                    }
                }
                _ => return Err(Error::Invalid(format!("iota_{} is defined exactly off Gamma_0", group.label(g)))),
            }
        }
        Ok(FineStructure { chi, sizes, iota })
    }

    /// `chi` induced from `theta` on `Gamma_1`, all `iota` identities.
    pub fn standard(group: &FiniteGroup, fine: &FineSubgroupData, sizes: &[usize], theta: &[Vec<F>]) -> Result<Self> {
        let chi = chi_from_theta(group, theta, fine)?;
        let iota = group.elements().map(|g| fine.coset_of(g).map(|k| Matrix::identity(sizes[k]))).collect();
        Self::new(group, chi, sizes.to_vec(), iota)
    }

    /// Replaces `iota_g` for `g` off the representatives.
    pub fn with_iota(mut self, group: &FiniteGroup, g: usize, m: Matrix<F>) -> Result<Self> {
        self.iota[g] = Some(m);
        Self::new(group, self.chi, self.sizes, self.iota)
    }

    pub fn fine(&self) -> &FineSubgroupData {
        self.chi.fine()
    }

    pub fn chi(&self) -> &MultCocycleZ<F> {
        &self.chi
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn iota(&self, g: usize) -> Option<&Matrix<F>> {
        self.iota[g].as_ref()
    }

    fn size_at(&self, g: usize) -> usize {
        self.fine().coset_of(g).map_or(0, |k| self.sizes[k])
    }

    /// Coordinate degrees of `V`: each `g` off `Gamma_0`, in element order,
    /// repeated `dim V_g` times.
    pub fn v_degrees(&self, group: &FiniteGroup) -> Vec<usize> {
        group.elements().flat_map(|g| std::iter::repeat(g).take(self.size_at(g))).collect()
    }

    /// Homogeneous spanning set of the subalgebra of `End V` determined by
    /// this structure: for every degree `alpha` and coset `Gamma_k` not
    /// sent into `Gamma_0`, the matrices
    /// `sum_gamma chi(alpha, gamma) iota_{alpha gamma} iota_{alpha gamma_k}^{-1} a iota_gamma^{-1} T_gamma`
    /// with `a` a matrix unit of `Hom(V_{gamma_k}, V_{alpha gamma_k})`.
    pub fn reproduce(&self, group: &FiniteGroup, v_degrees: &[usize]) -> Result<Vec<(usize, Matrix<F>)>> {
        let coords = coordinates_by_degree(group.order(), v_degrees);
        for g in group.elements() {
            if coords[g].len() != self.size_at(g) {
                return Err(Error::DimensionMismatch(format!("dim V_{} does not match the structure", group.label(g))));
            }
        }
        let fine = self.fine();
        let dim = v_degrees.len();
        let inv = self.inverses();
        let mut out = Vec::new();
        for alpha in group.elements() {
            for k in 0..fine.num_cosets() {
                let gk = fine.rep(k);
                let agk = group.mul(alpha, gk);
                if fine.in_gamma0(agk) {
                    continue;
                }
                let (nk, nm) = (self.sizes[k], self.size_at(agk));
                for r in 0..nm {
                    for s in 0..nk {
                        let a = Matrix::unit(nm, nk, r, s);
                        let mut m = Matrix::zeros(dim, dim);
                        for &gamma in fine.class(k) {
                            let ag = group.mul(alpha, gamma);
                            let c = self.chi.get(alpha, gamma).clone();
                            let block = self.iota[ag]
                                .as_ref()
                                .expect("defined off Gamma_0")
                                .mul(inv[agk].as_ref().expect("defined off Gamma_0"))
                                .mul(&a)
                                .mul(inv[gamma].as_ref().expect("defined off Gamma_0"))
                                .scale(&c);
                            m.place(&coords[ag], &coords[gamma], &block);
                        }
                        out.push((alpha, m));
                    }
                }
            }
        }
        Ok(out)
    }

    fn inverses(&self) -> Vec<Option<Matrix<F>>> {
        self.iota.iter().map(|m| m.as_ref().map(|m| m.inverse().expect("iota is invertible"))).collect()
    }
}

/// The images of the basis of a twisted matrix algebra in `End V`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiMap<F> {
    pub v_degrees: Vec<usize>,
    pub images: Vec<(usize, Matrix<F>)>,
}

/// `Phi: E_{(m,i),(k,j)} gamma -> chi(gamma_m, gamma) X_{(m,i),(k,j)}(gamma)`,
/// verified multiplicative, injective and degree-preserving.
pub fn phi_isomorphism<F: Scalar>(
    group: &FiniteGroup,
    t: &TwistedMatrixAlgebra<F>,
    target: &FineStructure<F>,
) -> Result<PhiMap<F>> {
    let chi = target.chi().clone();
    let fine = target.fine().clone();
    phi_isomorphism_with(group, t, target, |m, gamma| chi.get(fine.rep(m), gamma).clone())
}

/// `phi_isomorphism` with the prefactor of `X(gamma)` supplied as a
/// function of `(m, gamma)`.
pub fn phi_isomorphism_with<F: Scalar>(
    group: &FiniteGroup,
    t: &TwistedMatrixAlgebra<F>,
    target: &FineStructure<F>,
    prefactor: impl Fn(usize, usize) -> F,
) -> Result<PhiMap<F>> {
    let fine = target.fine();
    if t.fine() != fine || t.sizes() != target.sizes() {
        return Err(Error::VerificationFailed("algebra and structure have different coset data or sizes".into()));
    }
    let v_degrees = target.v_degrees(group);
    let coords = coordinates_by_degree(group.order(), &v_degrees);
    let dim = v_degrees.len();
    let inv = target.inverses();
    let mut images = Vec::with_capacity(t.labels().len());
    for (idx, l) in t.labels().iter().enumerate() {
        let ((m, i), (k, j)) = (l.row, l.col);
        let g = t.algebra().degree(idx);
        let mut x = Matrix::zeros(dim, dim);
        for &beta in fine.class(k) {
            let gb = group.mul(g, beta);
            let unit = Matrix::unit(target.sizes()[m], target.sizes()[k], i, j);
            let block = target.iota(gb).expect("defined off Gamma_0").mul(&unit).mul(inv[beta].as_ref().expect("defined off Gamma_0"));
            x.place(&coords[gb], &coords[beta], &block.scale(target.chi().get(g, beta)));
        }
        images.push((g, x.scale(&prefactor(m, l.gamma))));
    }
    verify_phi(group, t, &v_degrees, &images)?;
    Ok(PhiMap { v_degrees, images })
}

fn verify_phi<F: Scalar>(group: &FiniteGroup, t: &TwistedMatrixAlgebra<F>, v_degrees: &[usize], images: &[(usize, Matrix<F>)]) -> Result<()> {
    check_homogeneous(group, v_degrees, images).map_err(|e| Error::VerificationFailed(format!("degree preservation: {e}")))?;
    let dim = images.len();
    let flat: Vec<Vec<F>> = images.iter().map(|(_, m)| m.as_slice().to_vec()).collect();
    if dim > 0 && Matrix::from_rows(flat).rank() != dim {
        return Err(Error::VerificationFailed("Phi is not injective".into()));
    }
    let n = v_degrees.len();
    for a in 0..dim {
        for b in 0..dim {
            let lhs = images[a].1.mul(&images[b].1);
            let rhs = t.algebra().structure(a, b).iter().zip(images).fold(Matrix::zeros(n, n), |acc, (c, (_, m))| {
                if c.is_zero() {
                    acc
                } else {
                    acc.add(&m.scale(c))
                }
            });
            if lhs != rhs {
                return Err(Error::VerificationFailed(format!("Phi(e_{a} e_{b}) != Phi(e_{a}) Phi(e_{b})")));
            }
        }
    }
    Ok(())
}

/// Spans of the given matrices per degree, as flattened subspaces.
pub fn spans_by_degree<F: Scalar>(order: usize, basis: &[(usize, Matrix<F>)]) -> Vec<Subspace<F>> {
    let size = basis.first().map_or(0, |(_, m)| m.rows() * m.cols());
    (0..order)
        .map(|g| Subspace::span(size, basis.iter().filter(|(d, _)| *d == g).map(|(_, m)| m.as_slice().to_vec())))
        .collect()
}

/// Reconstructs `(Gamma_1, gamma_k, chi, iota)` from a graded-irreducible
/// subalgebra `A` of `End V` given by homogeneous basis matrices.
pub fn recover_fine_structure<F: ExactField>(
    group: &FiniteGroup,
    v_degrees: &[usize],
    basis: &[(usize, Matrix<F>)],
) -> Result<FineStructure<F>> {
    recover_fine_structure_seeded(group, v_degrees, basis, DEFAULT_SEED)
}

/// As [`recover_fine_structure`], with the seed of the randomized
/// submodule search made explicit.
pub fn recover_fine_structure_seeded<F: ExactField>(
    group: &FiniteGroup,
    v_degrees: &[usize],
    basis: &[(usize, Matrix<F>)],
    seed: u64,
) -> Result<FineStructure<F>> {
    match graded_irreducible_seeded(group, v_degrees, basis, seed)? {
        Irreducibility::Irreducible => {}
        Irreducibility::Reducible(w) => {
            return Err(Error::NotIrreducible(format!("invariant subspace of dimension {}", w.dim())))
        }
        Irreducibility::Inconclusive(msg) => return Err(Error::NotIrreducible(format!("undecided: {msg}"))),
    }
    let e = group.identity();
    let coords = coordinates_by_degree(group.order(), v_degrees);
    if coords[e].is_empty() {
        return Err(Error::Invalid("V_e must be nonzero; shift the grading of V".into()));
    }
    let gamma0: Vec<usize> = group.elements().filter(|&g| coords[g].is_empty()).collect();
    let dim_v = v_degrees.len();

    // Wedderburn blocks of A_e through its primitive central idempotents.
    let a_e: Vec<(usize, Matrix<F>)> = basis.iter().filter(|(d, _)| *d == e).map(|(_, m)| (0, m.clone())).collect();
    let alg_e = GradedAlgebraFD::from_matrices(FiniteGroup::trivial(), &a_e)?;
    let combine = |v: &[F]| a_e.iter().zip(v).fold(Matrix::zeros(dim_v, dim_v), |acc, ((_, m), c)| acc.add(&m.scale(c)));
    let one = alg_e.unit().ok_or_else(|| Error::VerificationFailed("A_e has no unit".into()))?;
    let idems = split_commutative(&alg_e, center(&alg_e).basis(), &one)?;
    let proj: Vec<Matrix<F>> = idems.iter().map(|v| combine(v)).collect();

    // Gamma_k = { gamma : pi_gamma(I_k) != 0 }.
    let support = |p: &Matrix<F>| -> BTreeSet<usize> {
        group.elements().filter(|&g| !coords[g].is_empty() && !p.select(&coords[g], &coords[g]).is_zero()).collect()
    };
    let mut blocks: Vec<(BTreeSet<usize>, Matrix<F>)> = proj.into_iter().map(|p| (support(&p), p)).collect();
    blocks.sort_by_key(|(s, _)| (!s.contains(&e), s.iter().next().copied()));
    let gamma1: Vec<usize> = blocks[0].0.iter().copied().collect();
    let reps: Vec<usize> = blocks.iter().map(|(s, _)| if s.contains(&e) { e } else { *s.iter().next().expect("nonempty") }).collect();
    let fine = FineSubgroupData::with_representatives(group, &gamma1, &gamma0, &reps)
        .map_err(|err| Error::VerificationFailed(format!("block supports are not cosets: {err}")))?;
    for (k, (s, _)) in blocks.iter().enumerate() {
        if fine.class(k).iter().copied().collect::<BTreeSet<_>>() != *s {
            return Err(Error::VerificationFailed(format!("block {k} is not supported on a left coset of Gamma_1")));
        }
    }
    let sizes: Vec<usize> = reps.iter().map(|&r| coords[r].len()).collect();

    // Intertwiners iota_gamma with pi_gamma(b) iota_gamma = iota_gamma pi_{gamma_k}(b).
    let mut iota: Vec<Option<Matrix<F>>> = vec![None; group.order()];
    for (k, (_, p)) in blocks.iter().enumerate() {
        let block_basis = Subspace::span(dim_v * dim_v, a_e.iter().map(|(_, m)| p.mul(m).as_slice().to_vec()));
        let nk = sizes[k];
        if block_basis.dim() != nk * nk {
            return Err(Error::SplitFieldRequired(format!(
                "Wedderburn block {k} has dimension {} but acts on a space of dimension {nk}",
                block_basis.dim()
            )));
        }
        let mats: Vec<Matrix<F>> = block_basis.basis().iter().map(|v| Matrix::from_flat(dim_v, dim_v, v.clone())).collect();
        let rk = reps[k];
        for &g in fine.class(k) {
            if g == rk {
                iota[g] = Some(Matrix::identity(nk));
                continue;
            }
            let sol = intertwiner(&mats, &coords[g], &coords[rk])?;
            iota[g] = Some(sol);
        }
    }

    // chi(alpha, gamma) from iota_{alpha gamma_k} iota_{alpha gamma}^{-1} a_gamma iota_gamma = chi a_k.
    let inv: Vec<Option<Matrix<F>>> = iota.iter().map(|m| m.as_ref().and_then(|m| m.inverse())).collect();
    let n = group.order();
    let mut chi = vec![vec![F::zero(); n]; n];
    for alpha in group.elements() {
        for gamma in group.elements() {
            let Some(k) = fine.coset_of(gamma) else { continue };
            let ag = group.mul(alpha, gamma);
            if fine.in_gamma0(ag) {
                continue;
            }
            let gk = fine.rep(k);
            let agk = group.mul(alpha, gk);
            let mut found = None;
            for (_, a) in basis.iter().filter(|(d, _)| *d == alpha) {
                let ak = a.select(&coords[agk], &coords[gk]);
                if ak.is_zero() {
                    continue;
                }
                let ag_block = a.select(&coords[ag], &coords[gamma]);
                let y = iota[agk]
                    .as_ref()
                    .expect("defined")
                    .mul(inv[ag].as_ref().expect("defined"))
                    .mul(&ag_block)
                    .mul(iota[gamma].as_ref().expect("defined"));
                let pos = (0..ak.rows()).flat_map(|r| (0..ak.cols()).map(move |c| (r, c))).find(|&rc| !ak[rc].is_zero()).expect("nonzero");
                let c = y[pos].clone() / ak[pos].clone();
                if y != ak.scale(&c) {
                    return Err(Error::VerificationFailed(format!(
                        "component at ({}, {}) is not a scalar multiple",
                        group.label(alpha),
                        group.label(gamma)
                    )));
                }
                found = Some(c);
                break;
            }
            chi[alpha][gamma] = found.ok_or_else(|| {
                Error::VerificationFailed(format!("no element of degree {} acts on V_{}", group.label(alpha), group.label(gk)))
            })?;
        }
    }
    let chi = MultCocycleZ::new(chi, fine);
    if !check_mult_cocycle_z(group, &chi) {
        return Err(Error::VerificationFailed(format!(
            "recovered chi violates the Z-condition: {}",
            crate::cohomology::mult_cocycle_z_violation(group, &chi).unwrap_or_default()
        )));
    }
    let fs = FineStructure::new(group, chi, sizes, iota).map_err(|e| Error::VerificationFailed(e.to_string()))?;
    let reproduced = fs.reproduce(group, v_degrees)?;
    if spans_by_degree(n, &reproduced) != spans_by_degree(n, basis) {
        return Err(Error::VerificationFailed("recovered structure does not reproduce the algebra".into()));
    }
    Ok(fs)
}

/// A nonzero `X` with `b[g, g] X = X b[r, r]` for all `b`; unique up to
/// scalars when the block is a split matrix algebra.
fn intertwiner<F: Scalar>(mats: &[Matrix<F>], g: &[usize], r: &[usize]) -> Result<Matrix<F>> {
    let n = r.len();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let mut rows = Vec::new();
    for b in mats {
        let bg = b.select(g, g);
        let br = b.select(r, r);
        for p in 0..n {
            for q in 0..n {
                // (bg X - X br)[p][q]
                rows.push(
                    cells
                        .iter()
                        .map(|&(i, j)| {
                            let mut v = F::zero();
                            if j == q {
                                v = v + bg[(p, i)].clone();
                            }
                            if i == p {
                                v = v - br[(j, q)].clone();
                            }
                            v
                        })
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    let kernel = Matrix::from_rows(rows).kernel();
    if kernel.len() != 1 {
        return Err(Error::SplitFieldRequired(format!("intertwiner space has dimension {}", kernel.len())));
    }
    let x = Matrix::from_flat(n, n, kernel.into_iter().next().expect("one vector"));
    if x.determinant().is_zero() {
        return Err(Error::VerificationFailed("intertwiner is singular".into()));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::coset_decomposition;
    use crate::scalar::{q, Rational};

    fn ones(n: usize) -> Vec<Vec<Rational>> {
        vec![vec![q(1); n]; n]
    }

    fn z2_minus() -> Vec<Vec<Rational>> {
        vec![vec![q(1), q(1)], vec![q(1), q(-1)]]
    }

    fn full(group: &FiniteGroup) -> FineSubgroupData {
        coset_decomposition(group, &group.elements().collect::<Vec<_>>(), &[]).unwrap()
    }

    #[test]
    fn trivial_group_gives_full_matrix_algebra() {
        let g = FiniteGroup::trivial();
        let t = TwistedMatrixAlgebra::new(&g, &full(&g), &[2], ones(1)).unwrap();
        let m2 = GradedAlgebraFD::<Rational>::matrix_algebra(g, 2);
        assert_eq!(t.algebra().structure_table(), m2.structure_table());
    }

    #[test]
    fn untwisted_z2_is_group_algebra() {
        let g = FiniteGroup::z2();
        let t = TwistedMatrixAlgebra::new(&g, &full(&g), &[1], ones(2)).unwrap();
        assert_eq!(t.algebra(), &GradedAlgebraFD::group_algebra(g));
    }

    #[test]
    fn twisted_z2_squares_to_minus_one() {
        let g = FiniteGroup::z2();
        let t = TwistedMatrixAlgebra::new(&g, &full(&g), &[1], z2_minus()).unwrap();
        assert_eq!(t.algebra().structure(1, 1), &[q(-1), q(0)]);
        assert_eq!(t.algebra().degrees(), &[0, 1]);
    }

    #[test]
    fn rejects_non_cocycle() {
        let g = FiniteGroup::cyclic(3);
        let mut theta = ones(3);
        theta[1][1] = q(2);
        assert!(matches!(TwistedMatrixAlgebra::new(&g, &full(&g), &[1], theta), Err(Error::NotACocycle(_))));
    }

    #[test]
    fn phi_is_identity_for_trivial_data() {
        let g = FiniteGroup::trivial();
        let fine = full(&g);
        let t = TwistedMatrixAlgebra::new(&g, &fine, &[2], ones(1)).unwrap();
        let fs = FineStructure::standard(&g, &fine, &[2], &ones(1)).unwrap();
        let phi = phi_isomorphism(&g, &t, &fs).unwrap();
        let expected: Vec<_> = (0..2).flat_map(|i| (0..2).map(move |j| (0, Matrix::<Rational>::unit(2, 2, i, j)))).collect();
        assert_eq!(phi.images, expected);
    }

    #[test]
    fn phi_on_z2_with_arbitrary_iota() {
        let g = FiniteGroup::z2();
        let fine = full(&g);
        let t = TwistedMatrixAlgebra::new(&g, &fine, &[1], ones(2)).unwrap();
        let fs = FineStructure::standard(&g, &fine, &[1], &ones(2))
            .unwrap()
            .with_iota(&g, 1, Matrix::from_rows(vec![vec![q(5)]]))
            .unwrap();
        let phi = phi_isomorphism(&g, &t, &fs).unwrap();
        assert_eq!(phi.images.len(), 2);
        assert_eq!(phi.images[1].1, Matrix::from_rows(vec![vec![q(0), Rational::new(1.into(), 5.into())], vec![q(5), q(0)]]));
    }

    #[test]
    fn planted_prefactor_fails_verification() {
        let g = FiniteGroup::z2();
        let fine = full(&g);
        let t = TwistedMatrixAlgebra::new(&g, &fine, &[1], z2_minus()).unwrap();
        let fs = FineStructure::standard(&g, &fine, &[1], &z2_minus()).unwrap();
        let chi = fs.chi().clone();
        let res = phi_isomorphism_with(&g, &t, &fs, |m, gamma| {
            let base = chi.get(fine.rep(m), gamma).clone();
            if gamma == g.identity() {
                base
            } else {
                base * q(2)
            }
        });
        assert!(matches!(res, Err(Error::VerificationFailed(_))));
    }

    fn round_trip(g: &FiniteGroup, fine: &FineSubgroupData, sizes: &[usize], theta: Vec<Vec<Rational>>, iotas: &[(usize, Matrix<Rational>)]) {
        let t = TwistedMatrixAlgebra::new(g, fine, sizes, theta.clone()).unwrap();
        let mut fs = FineStructure::standard(g, fine, sizes, &theta).unwrap();
        for (h, m) in iotas {
            fs = fs.with_iota(g, *h, m.clone()).unwrap();
        }
        let phi = phi_isomorphism(g, &t, &fs).unwrap();
        let rec = recover_fine_structure(g, &phi.v_degrees, &phi.images).unwrap();
        let again = rec.reproduce(g, &phi.v_degrees).unwrap();
        assert_eq!(spans_by_degree(g.order(), &again), spans_by_degree(g.order(), &phi.images));
        assert_eq!(rec.fine().gamma1(), fine.gamma1());
    }

    #[test]
    fn recovers_full_matrix_algebra() {
        let g = FiniteGroup::trivial();
        let basis: Vec<_> = (0..2).flat_map(|i| (0..2).map(move |j| (0, Matrix::<Rational>::unit(2, 2, i, j)))).collect();
        let fs = recover_fine_structure(&g, &[0, 0], &basis).unwrap();
        assert_eq!(fs.sizes(), &[2]);
        assert_eq!(fs.iota(0), Some(&Matrix::identity(2)));
        assert_eq!(fs.chi().table(), &[vec![q(1)]]);
    }

    #[test]
    fn recovers_twisted_z2() {
        let g = FiniteGroup::z2();
        round_trip(&g, &full(&g), &[1], z2_minus(), &[(1, Matrix::from_rows(vec![vec![q(3)]]))]);
    }

    #[test]
    fn recovers_z4_with_two_cosets() {
        let g = FiniteGroup::cyclic(4);
        let fine = coset_decomposition(&g, &[0, 2], &[]).unwrap();
        let mut theta = ones(4);
        theta[2][2] = q(-1);
        round_trip(&g, &fine, &[1, 1], theta, &[(2, Matrix::from_rows(vec![vec![q(2)]])), (3, Matrix::from_rows(vec![vec![q(-7)]]))]);
    }

    #[test]
    fn recovery_rejects_reducible_input() {
        let g = FiniteGroup::trivial();
        let basis = vec![(0, Matrix::<Rational>::unit(2, 2, 0, 0)), (0, Matrix::unit(2, 2, 1, 1))];
        assert!(matches!(recover_fine_structure(&g, &[0, 0], &basis), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn recovers_s3_with_zero_coset() {
        // Gamma_1 = <(12)>, one of its left cosets carries V = 0.
        let g = FiniteGroup::symmetric3();
        let t12 = (0..6).find(|&x| x != g.identity() && g.mul(x, x) == g.identity()).unwrap();
        let gamma1 = vec![g.identity(), t12];
        let other = (0..6).find(|x| !gamma1.contains(x)).unwrap();
        let zero = g.left_coset(other, &gamma1);
        let fine = coset_decomposition(&g, &gamma1, &zero).unwrap();
        assert_eq!(fine.num_cosets(), 2);
        let mut theta = ones(6);
        theta[t12][t12] = q(-1);
        let third = fine.class(1)[1];
        round_trip(&g, &fine, &[1, 2], theta, &[(t12, Matrix::from_rows(vec![vec![q(4)]])), (third, Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(0), q(1)]]))]);
    }

    #[test]
    fn field_plus_twisted_block_decomposes_in_two() {
        let g = FiniteGroup::z2();
        let t = TwistedMatrixAlgebra::new(&g, &full(&g), &[2], z2_minus()).unwrap();
        let a = GradedAlgebraFD::field(g.clone()).direct_sum(t.algebra()).unwrap();
        let blocks = crate::semisimple::decompose_semisimple_graded(&a).unwrap();
        assert_eq!(blocks.len(), 2);
        let mut dims: Vec<usize> = blocks.iter().map(|b| b.basis.len()).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 8]);
        for b in &blocks {
            assert!(crate::semisimple::is_graded_simple(&b.algebra).unwrap());
        }
    }
}
