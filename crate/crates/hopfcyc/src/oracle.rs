//! Independent reference computations: Hopf homology via the bar complex,
//! Hopf cohomology via the explicit cochain complex, the decomposition
//! theorems for cocommutative and commutative Hopf algebras, and the
//! path-space (co)cyclic structures.

use crate::cyclic::{
    check_budget, operator_from_tuples, CyclicModuleData, DegreeData, Direction,
};
use crate::error::{Error, Result};
use crate::homology::{cyclic_homology, homology_subquotients, Quotient, Subquotient};
use crate::hopf::HopfAlgebra;
use crate::matrix::{SparseMatrix, SparseVec};
use crate::module::{HComodule, HModule};
use crate::scalar::ExactScalar;
use crate::space::{encode_index, total_dim};
use crate::triple::reduced_model;

/// The bar-complex differential `H^{⊗n} ⊗ M -> H^{⊗(n-1)} ⊗ M`:
/// counit on the left end, merges in the middle, the action on the right end.
pub fn bar_differential(hopf: &HopfAlgebra, module: &HModule, n: usize) -> Result<SparseMatrix> {
    assert!(n >= 1);
    let dh = hopf.dim();
    let dm = module.dim();
    let field = hopf.field;
    let mut dims = vec![dh; n];
    dims.push(dm);
    let mut target = vec![dh; n - 1];
    target.push(dm);
    operator_from_tuples(&dims, total_dim(&target), field, |tu| {
        let h = &tu[..n];
        let m = tu[n];
        let mut out = Vec::new();
        // ε(h_1) drop
        let e = hopf.counit_of(h[0]);
        if !e.is_zero() {
            let mut u = h[1..].to_vec();
            u.push(m);
            out.push((encode_index(&target, &u), e));
        }
        // merges
        for i in 0..n.saturating_sub(1) {
            let sign = if (i + 1) % 2 == 0 {
                field.one()
            } else {
                field.integer(-1)
            };
            for (p, c) in hopf.product(h[i], h[i + 1]).iter() {
                let mut u = h.to_vec();
                u.remove(i + 1);
                u[i] = *p;
                u.push(m);
                out.push((encode_index(&target, &u), sign.mul(c)));
            }
        }
        // action on the right end
        let sign = if n % 2 == 0 {
            field.one()
        } else {
            field.integer(-1)
        };
        for (mi, cm) in module.act(h[n - 1], m).iter() {
            let mut u = h[..n - 1].to_vec();
            u.push(*mi);
            out.push((encode_index(&target, &u), sign.mul(cm)));
        }
        SparseVec::from_entries(out)
    })
}

/// Hopf homology `H_n(H, M)` (derived functors of ε-coinvariants), degrees
/// `0..n_max-1`, from the bar complex. `d² = 0` is verified exactly.
pub fn hopf_homology(hopf: &HopfAlgebra, module: &HModule, n_max: usize, budget: usize) -> Result<Vec<usize>> {
    Ok(hopf_homology_subquotients(hopf, module, n_max, budget)?
        .iter()
        .map(|s| s.dim())
        .collect())
}

/// Hopf homology with explicit bases (used by the spectral sequence).
pub fn hopf_homology_subquotients(
    hopf: &HopfAlgebra,
    module: &HModule,
    n_max: usize,
    budget: usize,
) -> Result<Vec<Subquotient>> {
    let dh = hopf.dim();
    let dm = module.dim();
    let field = hopf.field;
    let dims: Vec<usize> = (0..=n_max).map(|n| dh.pow(n as u32) * dm).collect();
    for d in &dims {
        check_budget(*d, budget)?;
    }
    let diffs: Vec<SparseMatrix> = (1..=n_max)
        .map(|n| bar_differential(hopf, module, n))
        .collect::<Result<Vec<_>>>()?;
    for n in 0..diffs.len().saturating_sub(1) {
        if !diffs[n].mul(&diffs[n + 1])?.is_zero() {
            return Err(Error::structure(format!("bar complex d² != 0 at degree {n}")));
        }
    }
    homology_subquotients(&dims, &diffs, field)
}

/// The Hopf cochain differential `V ⊗ H^{⊗n} -> V ⊗ H^{⊗(n+1)}`:
/// `d_n = Σ (-1)^i δ_i` with `d_0(v) = v⊗1 - v^{(0)}⊗v^{(-1)}`.
pub fn hopf_cochain_differential(
    hopf: &HopfAlgebra,
    comodule: &HComodule,
    n: usize,
) -> Result<SparseMatrix> {
    let dh = hopf.dim();
    let dv = comodule.dim();
    let field = hopf.field;
    let mut dims = vec![dh; n];
    dims.insert(0, dv);
    let mut target = vec![dh; n + 1];
    target.insert(0, dv);
    operator_from_tuples(&dims, total_dim(&target), field, |tu| {
        let v = tu[0];
        let h = &tu[1..];
        let mut out = Vec::new();
        // v ⊗ 1 ⊗ h_1 ... h_n
        for (one, c) in hopf.unit.iter() {
            let mut u = tu.to_vec();
            u.insert(1, *one);
            out.push((encode_index(&target, &u), c.clone()));
        }
        // comultiplications
        for i in 1..=n {
            let sign = if i % 2 == 0 {
                field.one()
            } else {
                field.integer(-1)
            };
            for ((a, b), c) in hopf.comult_of(h[i - 1]) {
                let mut u = tu.to_vec();
                u[i] = a;
                u.insert(i + 1, b);
                out.push((encode_index(&target, &u), sign.mul(&c)));
            }
        }
        // (-1)^{n+1} v^{(0)} ⊗ h_1 ... h_n ⊗ v^{(-1)}
        let sign = if (n + 1) % 2 == 0 {
            field.one()
        } else {
            field.integer(-1)
        };
        for ((hleg, v0), c) in comodule.coact(v) {
            let mut u = Vec::with_capacity(n + 2);
            u.push(v0);
            u.extend_from_slice(h);
            u.push(hleg);
            out.push((encode_index(&target, &u), sign.mul(&c)));
        }
        SparseVec::from_entries(out)
    })
}

/// Hopf cohomology `H^n(H, V)` (derived functors of comodule coinvariants),
/// degrees `0..n_max-1`, from the explicit cochain complex.
pub fn hopf_cohomology(
    hopf: &HopfAlgebra,
    comodule: &HComodule,
    n_max: usize,
    budget: usize,
) -> Result<Vec<usize>> {
    let dh = hopf.dim();
    let dv = comodule.dim();
    let field = hopf.field;
    let dims: Vec<usize> = (0..=n_max).map(|n| dv * dh.pow(n as u32)).collect();
    for d in &dims {
        check_budget(*d, budget)?;
    }
    let diffs: Vec<SparseMatrix> = (0..n_max)
        .map(|n| hopf_cochain_differential(hopf, comodule, n))
        .collect::<Result<Vec<_>>>()?;
    for n in 0..diffs.len().saturating_sub(1) {
        if !diffs[n + 1].mul(&diffs[n])?.is_zero() {
            return Err(Error::structure(format!(
                "Hopf cochain complex d² != 0 at degree {n}"
            )));
        }
    }
    // cohomology: transpose to a chain complex
    let tdiffs: Vec<SparseMatrix> = diffs.iter().map(|d| d.transpose()).collect();
    Ok(
        homology_subquotients(&dims, &tdiffs, field)?
            .iter()
            .map(|s| s.dim())
            .collect(),
    )
}

/// Report of a decomposition check: degreewise dimensions of both sides.
#[derive(Debug)]
pub struct DecompositionReport {
    pub invariant_hc: Vec<usize>,
    pub oracle_homology: Vec<usize>,
    pub direct_sum: Vec<usize>,
    pub equal: bool,
}

/// For cocommutative `H`: compare the invariant cyclic homology of
/// `(H, H, M)` with `⊕_{i≥0} H_{n-2i}(H, M)` from the independent bar
/// oracle.
pub fn decomposition_check_cocommutative(
    hopf: &HopfAlgebra,
    module: &HModule,
    n_max: usize,
    budget: usize,
) -> Result<DecompositionReport> {
    if !hopf.is_cocommutative() {
        return Err(Error::precondition(
            "the Hopf homology decomposition needs a cocommutative Hopf algebra",
        ));
    }
    let mut reduced = reduced_model(hopf, module, &hopf.unit.clone(), n_max, budget)?;
    reduced.certify()?;
    let hc = cyclic_homology(&reduced)?;
    let hopf_h = hopf_homology(hopf, module, n_max, budget)?;
    let bound = hc.len().min(hopf_h.len());
    let hc = hc[..bound].to_vec();
    let direct_sum: Vec<usize> = (0..bound)
        .map(|n| (0..=n / 2).map(|i| hopf_h[n - 2 * i]).sum())
        .collect();
    let equal = hc == direct_sum;
    Ok(DecompositionReport {
        invariant_hc: hc,
        oracle_homology: hopf_h[..bound].to_vec(),
        direct_sum,
        equal,
    })
}

/// For commutative `H`: compare the invariant cyclic cohomology of the
/// ε-compatible cotriple `(H, H, V)` with `⊕_{i≥0} H^{n-2i}(H, V)`.
pub fn decomposition_check_commutative(
    hopf: &HopfAlgebra,
    comodule: &HComodule,
    n_max: usize,
    budget: usize,
) -> Result<DecompositionReport> {
    if !hopf.is_commutative() {
        return Err(Error::precondition(
            "the Hopf cohomology decomposition needs a commutative Hopf algebra",
        ));
    }
    let mut reduced =
        crate::cotriple::reduced_cocyclic_model(hopf, comodule, &hopf.counit.clone(), n_max, budget)?;
    reduced.certify()?;
    let hc = cyclic_homology(&reduced)?;
    let hopf_h = hopf_cohomology(hopf, comodule, n_max, budget)?;
    let bound = hc.len().min(hopf_h.len());
    let hc = hc[..bound].to_vec();
    let direct_sum: Vec<usize> = (0..bound)
        .map(|n| (0..=n / 2).map(|i| hopf_h[n - 2 * i]).sum())
        .collect();
    let equal = hc == direct_sum;
    Ok(DecompositionReport {
        invariant_hc: hc,
        oracle_homology: hopf_h[..bound].to_vec(),
        direct_sum,
        equal,
    })
}

/// Path-space data: the cyclic module, the comparison map θ, and the
/// coinvariant identification.
#[derive(Debug)]
pub struct PathSpaceReport {
    pub module: CyclicModuleData,
    pub theta_is_cyclic_map: bool,
    pub coinvariant_dims_match: bool,
}

/// The path space `EC_n = C_{n+1}^H(H,M)` of a cocommutative Hopf algebra,
/// with operators shifted by one and the extra cyclic operator
/// `t_n(m⊗h_0⊗...⊗h_n) = h_n^{(3)}m ⊗ h_0h_1^{(1)}...h_n^{(1)} ⊗
/// S(h_1^{(2)}...h_n^{(2)}) ⊗ h_1^{(3)} ⊗ ... ⊗ h_{n-1}^{(3)}`
/// (`t_0 = id`: the degree-zero case is fixed by cyclicity).
pub fn path_space_cyclic(
    hopf: &HopfAlgebra,
    module: &HModule,
    n_max: usize,
    budget: usize,
) -> Result<PathSpaceReport> {
    if !hopf.is_cocommutative() {
        return Err(Error::precondition(
            "the path space carries a cyclic structure only for cocommutative Hopf algebras",
        ));
    }
    let base = reduced_model(hopf, module, &hopf.unit.clone(), n_max + 1, budget)?;
    let dh = hopf.dim();
    let dm = module.dim();
    let field = hopf.field;
    let mut degrees = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        // spaces: M ⊗ H^{⊗(n+1)}; faces and degeneracies shifted by one
        let faces = if n == 0 {
            Vec::new()
        } else {
            base.degrees[n + 1].faces[1..].to_vec()
        };
        let degeneracies = if n == n_max {
            Vec::new()
        } else {
            base.degrees[n + 1].degeneracies[1..].to_vec()
        };
        let mut dims = vec![dh; n + 2];
        dims[0] = dm;
        let cyclic = if n == 0 {
            SparseMatrix::identity(dm * dh, field)
        } else {
            operator_from_tuples(&dims, total_dim(&dims), field, |tu| {
                let m = tu[0];
                let h = &tu[1..]; // h_0 .. h_n
                // split h_1..h_n into three legs each
                let mut out = Vec::new();
                let mut stack: Vec<(usize, SparseVec, SparseVec, Vec<usize>, ExactScalar)> =
                    vec![(
                        1,
                        SparseVec::unit(h[0], field), // running product h_0 h_i^{(1)}
                        hopf.unit.clone(),            // product of second legs
                        Vec::new(),                   // third legs
                        field.one(),
                    )];
                while let Some((k, first, second, thirds, coeff)) = stack.pop() {
                    if k == n + 1 {
                        // m-leg: h_n^{(3)} = thirds[n-1]
                        let acted = module.act(thirds[n - 1], m);
                        let s_leg = hopf.antipode.apply(&second);
                        for (mi, cm) in acted.iter() {
                            for (fi, cf) in first.iter() {
                                for (si, cs) in s_leg.iter() {
                                    let mut u = Vec::with_capacity(n + 2);
                                    u.push(*mi);
                                    u.push(*fi);
                                    u.push(*si);
                                    u.extend_from_slice(&thirds[..n - 1]);
                                    out.push((
                                        encode_index(&dims, &u),
                                        coeff.mul(cm).mul(cf).mul(cs),
                                    ));
                                }
                            }
                        }
                        continue;
                    }
                    for (legs, c) in hopf.iterated_comult(h[k], 3) {
                        let f = hopf.mul_vec(&first, &SparseVec::unit(legs[0], field));
                        let s = hopf.mul_vec(&second, &SparseVec::unit(legs[1], field));
                        let mut t3 = thirds.clone();
                        t3.push(legs[2]);
                        stack.push((k + 1, f, s, t3, coeff.mul(&c)));
                    }
                }
                SparseVec::from_entries(out)
            })?
        };
        degrees.push(DegreeData {
            space: base.degrees[n + 1].space.clone(),
            faces,
            degeneracies,
            cyclic,
        });
    }
    let mut module_data = CyclicModuleData {
        name: format!("E{}", base.name),
        field,
        direction: Direction::Homological,
        degrees,
        status: None,
    };
    let report = module_data.certify()?;
    if !report.is_cyclic() {
        return Err(Error::structure(format!(
            "path space failed cyclic certification: {report:?}"
        )));
    }
    // θ(m⊗h_0⊗...⊗h_n) = ε(h_0) m⊗h_1⊗...⊗h_n is a cyclic module map
    let mut theta_cyclic = true;
    let mut thetas = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut dims = vec![dh; n + 2];
        dims[0] = dm;
        let mut tdims = vec![dh; n + 1];
        tdims[0] = dm;
        let theta = operator_from_tuples(&dims, total_dim(&tdims), field, |tu| {
            let e = hopf.counit_of(tu[1]);
            if e.is_zero() {
                return SparseVec::zero();
            }
            let mut u = Vec::with_capacity(n + 1);
            u.push(tu[0]);
            u.extend_from_slice(&tu[2..]);
            SparseVec::from_entries(vec![(encode_index(&tdims, &u), e)])
        })?;
        thetas.push(theta);
    }
    for n in 0..=n_max {
        for (i, f) in module_data.degrees[n].faces.iter().enumerate() {
            if thetas[n - 1].mul(f)? != base.degrees[n].faces[i].mul(&thetas[n])? {
                theta_cyclic = false;
            }
        }
        for (i, s) in module_data.degrees[n].degeneracies.iter().enumerate() {
            if thetas[n + 1].mul(s)? != base.degrees[n].degeneracies[i].mul(&thetas[n])? {
                theta_cyclic = false;
            }
        }
        if thetas[n].mul(&module_data.degrees[n].cyclic)?
            != base.degrees[n].cyclic.mul(&thetas[n])?
        {
            theta_cyclic = false;
        }
    }
    // k ⊗_H EC ≅ C^H dimensionwise: quotient by span{m⊗(g h_0)⊗... - ε(g)(...)}
    let mut dims_match = true;
    for n in 0..=n_max {
        let mut dims = vec![dh; n + 2];
        dims[0] = dm;
        let total = total_dim(&dims);
        let mut relations = Vec::new();
        for g in 0..dh {
            for idx in 0..total {
                let tu = crate::space::decode_index(&dims, idx);
                let mut out: Vec<(usize, ExactScalar)> = Vec::new();
                for (p, c) in hopf.product(g, tu[1]).iter() {
                    let mut u = tu.clone();
                    u[1] = *p;
                    out.push((encode_index(&dims, &u), c.clone()));
                }
                out.push((idx, hopf.counit_of(g).neg()));
                let rel = SparseVec::from_entries(out);
                if !rel.is_zero() {
                    relations.push(rel);
                }
            }
        }
        let q = Quotient::new(total, field, relations);
        if q.dim() != dm * dh.pow(n as u32) {
            dims_match = false;
        }
    }
    Ok(PathSpaceReport {
        module: module_data,
        theta_is_cyclic_map: theta_cyclic,
        coinvariant_dims_match: dims_match,
    })
}

/// The cocyclic path space of a commutative Hopf algebra on
/// `V ⊗ H^{⊗(n+1)}`, built as the term-wise dual of the cyclic path space
/// of the (cocommutative) dual Hopf algebra, then certified directly. The
/// degree-zero cyclic operator is the identity, as cocyclicity forces.
pub fn path_space_cocyclic(
    hopf: &HopfAlgebra,
    comodule: &HComodule,
    n_max: usize,
    budget: usize,
) -> Result<PathSpaceReport> {
    if !hopf.is_commutative() {
        return Err(Error::precondition(
            "the cocyclic path space needs a commutative Hopf algebra",
        ));
    }
    let dh = hopf.dim();
    let dv = comodule.dim();
    let field = hopf.field;
    let dual = crate::hopf::dual_hopf(hopf)?;
    // V as an H-comodule dualizes to a module over the dual Hopf algebra,
    // with the action matrix the transpose of the coaction
    let dual_module = HModule {
        space: comodule.space.clone(),
        action: comodule.coaction.transpose(),
        field,
    };
    let primal = path_space_cyclic(&dual, &dual_module, n_max, budget)?;
    let mut module_data = primal.module.dualize();
    module_data.name = format!("EC({},{})", hopf.name, comodule.space.name);
    let report = module_data.certify()?;
    if !report.is_cyclic() {
        return Err(Error::structure(format!(
            "cocyclic path space failed certification: {report:?}"
        )));
    }
    // (EC)^{coH} ≅ C_H dimensionwise, via ρ(v⊗h_0⊗...) = h_0^{(1)} ⊗ v⊗h_0^{(2)}⊗...
    let mut dims_match = true;
    for n in 0..=n_max {
        let mut dims = vec![dh; n + 2];
        dims[0] = dv;
        let total = total_dim(&dims);
        let rho = operator_from_tuples(&dims, dh * total, field, |tu| {
            let mut out = Vec::new();
            for ((a, b), c) in hopf.comult_of(tu[1]) {
                let mut u = tu.to_vec();
                u[1] = b;
                out.push((a * total + encode_index(&dims, &u), c));
            }
            SparseVec::from_entries(out)
        })?;
        let unit_tensor = SparseMatrix::from_fn(dh * total, total, field, |x| {
            SparseVec::from_entries(
                hopf.unit
                    .iter()
                    .map(|(s, c)| (s * total + x, c.clone()))
                    .collect(),
            )
        })?;
        let kernel = rho.sub(&unit_tensor)?.kernel();
        if kernel.dim() != dv * dh.pow(n as u32) {
            dims_match = false;
        }
    }
    Ok(PathSpaceReport {
        module: module_data,
        theta_is_cyclic_map: primal.theta_is_cyclic_map,
        coinvariant_dims_match: dims_match,
    })
}

/// Dimension of the coinvariant space `M_H = M / span{hm - ε(h)m}`.
pub fn coinvariant_dimension(hopf: &HopfAlgebra, module: &HModule, delta: &SparseMatrix) -> usize {
    let dm = module.dim();
    let field = hopf.field;
    let mut relations = Vec::new();
    for h in 0..hopf.dim() {
        for m in 0..dm {
            let mut out: Vec<(usize, ExactScalar)> =
                module.act(h, m).iter().cloned().collect();
            out.push((m, delta.get(0, h).neg()));
            let rel = SparseVec::from_entries(out);
            if !rel.is_zero() {
                relations.push(rel);
            }
        }
    }
    Quotient::new(dm, field, relations).dim()
}

/// Invariant cyclic homology of a semisimple self-triple through the
/// contraction route: the normalized-integral homotopy kills `H_{≥1}`, so
/// `HC_{2n} = dim M_H` and `HC_{2n+1} = 0`.
pub fn semisimple_invariant_hc(
    hopf: &HopfAlgebra,
    module: &HModule,
    sigma: &SparseVec,
    n_max: usize,
    budget: usize,
) -> Result<Vec<usize>> {
    let t = crate::hopf::normalized_integral(hopf)?
        .ok_or_else(|| Error::precondition("no normalized integral: H is not semisimple"))?;
    let reduced = reduced_model(hopf, module, sigma, n_max, budget)?;
    let dh = hopf.dim();
    let dm = module.dim();
    let field = hopf.field;
    // homotopy h(m⊗h_1⊗...⊗h_n) = m⊗t⊗h_1⊗...⊗h_n
    let homotopy: Vec<SparseMatrix> = (0..n_max)
        .map(|n| {
            let mut dims = vec![dh; n + 1];
            dims[0] = dm;
            let mut up = vec![dh; n + 2];
            up[0] = dm;
            operator_from_tuples(&dims, total_dim(&up), field, |tu| {
                let mut out = Vec::new();
                for (ti, c) in t.iter() {
                    let mut u = tu.to_vec();
                    u.insert(1, *ti);
                    out.push((encode_index(&up, &u), c.clone()));
                }
                SparseVec::from_entries(out)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if !crate::homology::contraction_check(&reduced, &homotopy)? {
        return Err(Error::structure(
            "normalized-integral homotopy failed hb + bh = id",
        ));
    }
    let m_h = coinvariant_dimension(hopf, module, &hopf.counit.clone());
    Ok((0..n_max)
        .map(|n| if n % 2 == 0 { m_h } else { 0 })
        .collect())
}

/// A dense, brute-force homology oracle: dimensions of `ker d_n / im d_{n+1}`
/// computed by plain Gaussian elimination on dense matrices. Used to
/// cross-validate the sparse path.
pub fn dense_homology_dims(dims: &[usize], diffs: &[SparseMatrix]) -> Vec<usize> {
    let dense_rank = |m: &SparseMatrix| -> usize {
        let mut a: Vec<Vec<ExactScalar>> = (0..m.rows)
            .map(|r| (0..m.cols).map(|c| m.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let Some(p) = (row..m.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].inv().expect("pivot");
            for c in col..m.cols {
                a[row][c] = a[row][c].mul(&inv);
            }
            for r in 0..m.rows {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..m.cols {
                        let t = a[row][c].mul(&f);
                        a[r][c] = a[r][c].sub(&t);
                    }
                }
            }
            row += 1;
            rank += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    };
    let n_max = dims.len() - 1;
    (0..n_max)
        .map(|n| {
            let r_out = if n == 0 { 0 } else { dense_rank(&diffs[n - 1]) };
            let r_in = dense_rank(&diffs[n]);
            dims[n] - r_out - r_in
        })
        .collect()
}
