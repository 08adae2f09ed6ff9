//! Smash products `A = H # B`, the cylindrical module `X_{p,q}`, its
//! diagonal and the identification with invariant chains, the
//! Eilenberg-Zilber comparison of the total and diagonal mixed complexes,
//! and the filtration spectral sequence with its semisimple collapse.

use crate::cyclic::{
    check_budget, operator_from_tuples, CyclicModuleData, DegreeData, Direction,
};
use crate::error::{Error, Result};
use crate::homology::{cyclic_homology, induced_map, MixedComplex, Quotient, Subquotient};
use crate::hopf::{Algebra, Certificate, HopfAlgebra};
use crate::matrix::{SparseMatrix, SparseVec};
use crate::module::{ComoduleAlgebra, HModule};
use crate::scalar::ExactScalar;
use crate::space::{encode_index, total_dim, IndexedSpace};
use crate::triple::{coinvariant_chain_module, HopfTriple};

/// A right `H`-module algebra: `B` with a right action `(b)h` that is
/// associative, unital, and measures the product.
#[derive(Debug, Clone)]
pub struct RightModuleAlgebra {
    pub algebra: Algebra,
    /// `B ⊗ H -> B`; column `b * dim H + h` is `(e_b) e_h`.
    pub action: SparseMatrix,
    pub hopf_dim: usize,
}

impl RightModuleAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn act(&self, b: usize, h: usize) -> &SparseVec {
        self.action.column(b * self.hopf_dim + h)
    }

    pub fn act_vec(&self, b: &SparseVec, h: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, x) in b.iter() {
            for (j, y) in h.iter() {
                let c = x.mul(y);
                for (k, z) in self.act(*i, *j).iter() {
                    out.push((*k, c.mul(z)));
                }
            }
        }
        SparseVec::from_entries(out)
    }

    pub fn certify(&self, hopf: &HopfAlgebra) -> Certificate {
        let mut cert = self.algebra.certify();
        let db = self.dim();
        let field = self.algebra.field;
        // (b)(gh) = ((b)g)h
        'outer: for b in 0..db {
            for g in 0..hopf.dim() {
                for h in 0..hopf.dim() {
                    let lhs = self.act_vec(&SparseVec::unit(b, field), hopf.product(g, h));
                    let rhs = self.act_vec(self.act(b, g), &SparseVec::unit(h, field));
                    if lhs != rhs {
                        cert.check("right action associativity", false);
                        break 'outer;
                    }
                }
            }
        }
        let unital = (0..db).all(|b| {
            self.act_vec(&SparseVec::unit(b, field), &hopf.unit) == SparseVec::unit(b, field)
        });
        cert.check("right action unital", unital);
        // (ab)h = (a)h^{(1)} (b)h^{(2)}
        let mut measures = true;
        'targets: for a in 0..db {
            for b in 0..db {
                for h in 0..hopf.dim() {
                    let lhs =
                        self.act_vec(self.algebra.product(a, b), &SparseVec::unit(h, field));
                    let mut rhs_terms = Vec::new();
                    for ((h1, h2), c) in hopf.comult_of(h) {
                        let left = self.act(a, h1);
                        let right = self.act(b, h2);
                        let prod = self.algebra.mul_vec(left, right);
                        for (k, v) in prod.iter() {
                            rhs_terms.push((*k, c.mul(v)));
                        }
                    }
                    if lhs != SparseVec::from_entries(rhs_terms) {
                        measures = false;
                        break 'targets;
                    }
                }
            }
        }
        cert.check("module algebra: (ab)h = (a)h¹(b)h²", measures);
        let unit_line = (0..hopf.dim()).all(|h| {
            let lhs = self.act_vec(&self.algebra.unit, &SparseVec::unit(h, field));
            let rhs = self.algebra.unit.scale(&hopf.counit_of(h));
            lhs == SparseVec::from_entries(rhs.0)
        });
        cert.check("module algebra: (1)h = ε(h)1", unit_line);
        cert
    }
}

/// The smash product `A = H # B` as a comodule algebra.
#[derive(Debug, Clone)]
pub struct SmashProduct {
    pub hopf: HopfAlgebra,
    pub base: RightModuleAlgebra,
    pub comodule_algebra: ComoduleAlgebra,
}

/// Build `H # B` with product `(h⊗a)(g⊗b) = hg^{(1)} ⊗ (a)g^{(2)} b` and
/// coaction `ρ(h⊗a) = h^{(1)} ⊗ (h^{(2)}⊗a)`; all axioms verified exactly.
pub fn build_smash(hopf: &HopfAlgebra, base: RightModuleAlgebra) -> Result<SmashProduct> {
    let action_cert = base.certify(hopf);
    if !action_cert.ok() {
        return Err(Error::structure(format!(
            "right module algebra axioms fail: {:?}",
            action_cert.violations
        )));
    }
    let dh = hopf.dim();
    let db = base.dim();
    let field = hopf.field;
    let dim = dh * db;
    let space = IndexedSpace::numbered(format!("{}#{}", hopf.name, base.algebra.space.name), dim);
    let enc = |h: usize, b: usize| h * db + b;
    let mult = SparseMatrix::from_fn(dim, dim * dim, field, |idx| {
        let (x, y) = (idx / dim, idx % dim);
        let (h, a) = (x / db, x % db);
        let (g, b) = (y / db, y % db);
        let mut out = Vec::new();
        for ((g1, g2), c) in hopf.comult_of(g) {
            for (hh, ch) in hopf.product(h, g1).iter() {
                let acted = base.act(a, g2);
                for (aa, ca) in acted.iter() {
                    for (bb, cb) in base.algebra.product(*aa, b).iter() {
                        out.push((enc(*hh, *bb), c.mul(ch).mul(ca).mul(cb)));
                    }
                }
            }
        }
        SparseVec::from_entries(out)
    })?;
    let mut unit_terms = Vec::new();
    for (h, ch) in hopf.unit.iter() {
        for (b, cb) in base.algebra.unit.iter() {
            unit_terms.push((enc(*h, *b), ch.mul(cb)));
        }
    }
    let coaction = SparseMatrix::from_fn(dh * dim, dim, field, |x| {
        let (h, a) = (x / db, x % db);
        SparseVec::from_entries(
            hopf.comult_of(h)
                .into_iter()
                .map(|((h1, h2), c)| (h1 * dim + enc(h2, a), c))
                .collect(),
        )
    })?;
    let comodule_algebra = ComoduleAlgebra {
        algebra: Algebra {
            space,
            mult,
            unit: SparseVec::from_entries(unit_terms),
            field,
        },
        coaction,
        graded: None,
        field,
    };
    let cert = comodule_algebra.certify(hopf);
    if !cert.ok() {
        return Err(Error::structure(format!(
            "smash product axioms fail: {:?}",
            cert.violations
        )));
    }
    Ok(SmashProduct {
        hopf: hopf.clone(),
        base,
        comodule_algebra,
    })
}

/// The cylindrical module `X_{p,q} = M ⊗ H^{⊗p} ⊗ B^{⊗(q+1)}`.
pub struct CylindricalModule {
    pub field: crate::scalar::Field,
    pub p_max: usize,
    pub q_max: usize,
    pub dims: Vec<Vec<usize>>,
    /// Vertical structure (B-direction, index q).
    pub v_faces: Vec<Vec<Vec<SparseMatrix>>>,
    pub v_degens: Vec<Vec<Vec<SparseMatrix>>>,
    pub v_cyclic: Vec<Vec<SparseMatrix>>,
    /// Horizontal structure (H-direction, index p).
    pub h_faces: Vec<Vec<Vec<SparseMatrix>>>,
    pub h_degens: Vec<Vec<Vec<SparseMatrix>>>,
    pub h_cyclic: Vec<Vec<SparseMatrix>>,
}

struct CellContext<'a> {
    s: &'a SmashProduct,
    sigma: &'a SparseVec,
    dm: usize,
    dh: usize,
    db: usize,
}

impl<'a> CellContext<'a> {
    fn dims(&self, p: usize, q: usize) -> Vec<usize> {
        let mut d = vec![self.dm];
        d.extend(std::iter::repeat(self.dh).take(p));
        d.extend(std::iter::repeat(self.db).take(q + 1));
        d
    }

    /// All splittings of the g-legs into (first, second, third) with the
    /// twisting element `w = σ S(g_1^{(1)}...g_p^{(1)}) g_1^{(3)}...g_p^{(3)}`
    /// accumulated; yields `(w as H-vector, second legs, coefficient)`.
    fn vertical_twists(&self, g: &[usize]) -> Vec<(SparseVec, Vec<usize>, ExactScalar)> {
        let hopf = &self.s.hopf;
        let field = hopf.field;
        let mut acc: Vec<(SparseVec, SparseVec, Vec<usize>, ExactScalar)> = vec![(
            hopf.unit.clone(), // product of first legs
            hopf.unit.clone(), // product of third legs
            Vec::new(),        // second legs
            field.one(),
        )];
        for &gj in g {
            let mut next = Vec::new();
            for (legs, c) in hopf.iterated_comult(gj, 3) {
                for (first, third, seconds, coeff) in &acc {
                    let f = hopf.mul_vec(first, &SparseVec::unit(legs[0], field));
                    let t = hopf.mul_vec(third, &SparseVec::unit(legs[2], field));
                    let mut sc = seconds.clone();
                    sc.push(legs[1]);
                    next.push((f, t, sc, coeff.mul(&c)));
                }
            }
            acc = next;
        }
        acc.into_iter()
            .map(|(first, third, seconds, coeff)| {
                let w = hopf.mul_vec(
                    &hopf.mul_vec(self.sigma, &hopf.antipode.apply(&first)),
                    &third,
                );
                (w, seconds, coeff)
            })
            .collect()
    }
}

/// Build the cylindrical module of a smash product with coefficients
/// `(M, σ)`, with all ten operator families.
pub fn build_cylindrical(
    s: &SmashProduct,
    module: &HModule,
    sigma: &SparseVec,
    p_max: usize,
    q_max: usize,
    budget: usize,
) -> Result<CylindricalModule> {
    let ctx = CellContext {
        s,
        sigma,
        dm: module.dim(),
        dh: s.hopf.dim(),
        db: s.base.dim(),
    };
    let field = s.hopf.field;
    let hopf = &s.hopf;
    let base = &s.base;
    let mut dims = vec![vec![0; q_max + 1]; p_max + 1];
    for (p, row) in dims.iter_mut().enumerate() {
        for (q, d) in row.iter_mut().enumerate() {
            *d = total_dim(&ctx.dims(p, q));
            check_budget(*d, budget)?;
        }
    }
    let mut v_faces = vec![vec![Vec::new(); q_max + 1]; p_max + 1];
    let mut v_degens = vec![vec![Vec::new(); q_max + 1]; p_max + 1];
    let mut v_cyclic: Vec<Vec<SparseMatrix>> = Vec::new();
    let mut h_faces = vec![vec![Vec::new(); q_max + 1]; p_max + 1];
    let mut h_degens = vec![vec![Vec::new(); q_max + 1]; p_max + 1];
    let mut h_cyclic: Vec<Vec<SparseMatrix>> = Vec::new();

    for p in 0..=p_max {
        let mut v_cyc_row = Vec::new();
        let mut h_cyc_row = Vec::new();
        for q in 0..=q_max {
            let cell = ctx.dims(p, q);
            // vertical faces: merge B-legs; the last one wraps with the twist
            if q >= 1 {
                let target = ctx.dims(p, q - 1);
                for i in 0..=q {
                    let m = operator_from_tuples(&cell, total_dim(&target), field, |tu| {
                        let g = &tu[1..1 + p];
                        let a = &tu[1 + p..];
                        if i < q {
                            let mut out = Vec::new();
                            for (bb, c) in base.algebra.product(a[i], a[i + 1]).iter() {
                                let mut u = tu.to_vec();
                                u.remove(1 + p + i + 1);
                                u[1 + p + i] = *bb;
                                out.push((encode_index(&target, &u), c.clone()));
                            }
                            SparseVec::from_entries(out)
                        } else {
                            // m ⊗ g^{(2)}s ⊗ [(a_q)w]a_0 ⊗ a_1 ... a_{q-1}
                            let mut out = Vec::new();
                            for (w, seconds, coeff) in ctx.vertical_twists(g) {
                                let twisted = base.act_vec(&SparseVec::unit(a[q], field), &w);
                                let merged = base
                                    .algebra
                                    .mul_vec(&twisted, &SparseVec::unit(a[0], field));
                                for (bb, cb) in merged.iter() {
                                    let mut u = Vec::with_capacity(target.len());
                                    u.push(tu[0]);
                                    u.extend_from_slice(&seconds);
                                    u.push(*bb);
                                    u.extend_from_slice(&a[1..q]);
                                    out.push((encode_index(&target, &u), coeff.mul(cb)));
                                }
                            }
                            SparseVec::from_entries(out)
                        }
                    })?;
                    v_faces[p][q].push(m);
                }
            }
            // vertical degeneracies: insert 1_B after a_i
            if q < q_max {
                let target = ctx.dims(p, q + 1);
                for i in 0..=q {
                    let m = operator_from_tuples(&cell, total_dim(&target), field, |tu| {
                        let mut out = Vec::new();
                        for (one, c) in base.algebra.unit.iter() {
                            let mut u = tu.to_vec();
                            u.insert(1 + p + i + 1, *one);
                            out.push((encode_index(&target, &u), c.clone()));
                        }
                        SparseVec::from_entries(out)
                    })?;
                    v_degens[p][q].push(m);
                }
            }
            // vertical cyclic
            let vc = operator_from_tuples(&cell, total_dim(&cell), field, |tu| {
                let g = &tu[1..1 + p];
                let a = &tu[1 + p..];
                let mut out = Vec::new();
                for (w, seconds, coeff) in ctx.vertical_twists(g) {
                    let twisted = base.act_vec(&SparseVec::unit(a[q], field), &w);
                    for (bb, cb) in twisted.iter() {
                        let mut u = Vec::with_capacity(cell.len());
                        u.push(tu[0]);
                        u.extend_from_slice(&seconds);
                        u.push(*bb);
                        u.extend_from_slice(&a[..q]);
                        out.push((encode_index(&cell, &u), coeff.mul(cb)));
                    }
                }
                SparseVec::from_entries(out)
            })?;
            v_cyc_row.push(vc);
            // horizontal faces
            if p >= 1 {
                let target = ctx.dims(p - 1, q);
                for i in 0..=p {
                    let m = operator_from_tuples(&cell, total_dim(&target), field, |tu| {
                        let g = &tu[1..1 + p];
                        let a = &tu[1 + p..];
                        if i == 0 {
                            let e = hopf.counit_of(g[0]);
                            if e.is_zero() {
                                return SparseVec::zero();
                            }
                            let mut u = tu.to_vec();
                            u.remove(1);
                            SparseVec::from_entries(vec![(encode_index(&target, &u), e)])
                        } else if i < p {
                            let mut out = Vec::new();
                            for (gg, c) in hopf.product(g[i - 1], g[i]).iter() {
                                let mut u = tu.to_vec();
                                u.remove(1 + i);
                                u[i] = *gg;
                                out.push((encode_index(&target, &u), c.clone()));
                            }
                            SparseVec::from_entries(out)
                        } else {
                            // g_p^{(1)}m ⊗ g_1..g_{p-1} ⊗ (a_j)S^{-1}(g_p^{(q+2-j)})
                            let mut out = Vec::new();
                            for (legs, c) in hopf.iterated_comult(g[p - 1], q + 2) {
                                let acted_m = module.act(legs[0], tu[0]);
                                // apply to each a_j
                                let mut parts: Vec<(Vec<usize>, ExactScalar)> = Vec::new();
                                for (mi, cm) in acted_m.iter() {
                                    let mut u = Vec::with_capacity(target.len());
                                    u.push(*mi);
                                    u.extend_from_slice(&g[..p - 1]);
                                    parts.push((u, c.mul(cm)));
                                }
                                for (j, &aj) in a.iter().enumerate() {
                                    let sleg = hopf.antipode_inv.column(legs[q + 1 - j]);
                                    let acted =
                                        base.act_vec(&SparseVec::unit(aj, field), sleg);
                                    let mut next = Vec::new();
                                    for (prefix, pc) in &parts {
                                        for (bb, cb) in acted.iter() {
                                            let mut u = prefix.clone();
                                            u.push(*bb);
                                            next.push((u, pc.mul(cb)));
                                        }
                                    }
                                    parts = next;
                                }
                                for (u, pc) in parts {
                                    out.push((encode_index(&target, &u), pc));
                                }
                            }
                            SparseVec::from_entries(out)
                        }
                    })?;
                    h_faces[p][q].push(m);
                }
            }
            // horizontal degeneracies: insert 1_H before g_1 or after g_i
            if p < p_max {
                let target = ctx.dims(p + 1, q);
                for i in 0..=p {
                    let m = operator_from_tuples(&cell, total_dim(&target), field, |tu| {
                        let mut out = Vec::new();
                        for (one, c) in hopf.unit.iter() {
                            let mut u = tu.to_vec();
                            u.insert(1 + i, *one);
                            out.push((encode_index(&target, &u), c.clone()));
                        }
                        SparseVec::from_entries(out)
                    })?;
                    h_degens[p][q].push(m);
                }
            }
            // horizontal cyclic: identity at p = 0
            let hc = if p == 0 {
                SparseMatrix::identity(total_dim(&cell), field)
            } else {
                operator_from_tuples(&cell, total_dim(&cell), field, |tu| {
                    let g = &tu[1..1 + p];
                    let a = &tu[1 + p..];
                    // t = g_p^{(2)}m ⊗ σS(g_1^{(1)}..g_p^{(1)}) ⊗ g_1^{(2)}..g_{p-1}^{(2)}
                    //     ⊗ (a_j)S^{-1}(g_p^{(q+3-j)})
                    let mut out = Vec::new();
                    // split g_1..g_{p-1} into two legs, g_p into q+3 legs
                    let mut stack: Vec<(usize, SparseVec, Vec<usize>, ExactScalar)> = vec![(
                        0,
                        hopf.unit.clone(), // product of first legs
                        Vec::new(),        // second legs of g_1..g_{p-1}
                        field.one(),
                    )];
                    let mut prefixes: Vec<(SparseVec, Vec<usize>, ExactScalar)> = Vec::new();
                    while let Some((k, first, seconds, coeff)) = stack.pop() {
                        if k == p - 1 {
                            prefixes.push((first, seconds, coeff));
                            continue;
                        }
                        for ((l1, l2), c) in hopf.comult_of(g[k]) {
                            let f = hopf.mul_vec(&first, &SparseVec::unit(l1, field));
                            let mut sc = seconds.clone();
                            sc.push(l2);
                            stack.push((k + 1, f, sc, coeff.mul(&c)));
                        }
                    }
                    for (glast_legs, cl) in hopf.iterated_comult(g[p - 1], q + 3) {
                        for (first, seconds, coeff) in &prefixes {
                            let full_first =
                                hopf.mul_vec(first, &SparseVec::unit(glast_legs[0], field));
                            let s_slot = hopf.mul_vec(sigma, &hopf.antipode.apply(&full_first));
                            let acted_m = module.act(glast_legs[1], tu[0]);
                            let mut parts: Vec<(Vec<usize>, ExactScalar)> = Vec::new();
                            for (mi, cm) in acted_m.iter() {
                                for (si, cs) in s_slot.iter() {
                                    let mut u = Vec::with_capacity(cell.len());
                                    u.push(*mi);
                                    u.push(*si);
                                    u.extend_from_slice(seconds);
                                    parts.push((u, coeff.mul(&cl).mul(cm).mul(cs)));
                                }
                            }
                            for (j, &aj) in a.iter().enumerate() {
                                let sleg = hopf.antipode_inv.column(glast_legs[q + 2 - j]);
                                let acted = base.act_vec(&SparseVec::unit(aj, field), sleg);
                                let mut next = Vec::new();
                                for (prefix, pc) in &parts {
                                    for (bb, cb) in acted.iter() {
                                        let mut u = prefix.clone();
                                        u.push(*bb);
                                        next.push((u, pc.mul(cb)));
                                    }
                                }
                                parts = next;
                            }
                            for (u, pc) in parts {
                                out.push((encode_index(&cell, &u), pc));
                            }
                        }
                    }
                    SparseVec::from_entries(out)
                })?
            };
            h_cyc_row.push(hc);
        }
        v_cyclic.push(v_cyc_row);
        h_cyclic.push(h_cyc_row);
    }
    Ok(CylindricalModule {
        field,
        p_max,
        q_max,
        dims,
        v_faces,
        v_degens,
        v_cyclic,
        h_faces,
        h_degens,
        h_cyclic,
    })
}

impl CylindricalModule {
    /// The q-direction cyclic module data at fixed horizontal degree `p`.
    pub fn column(&self, p: usize) -> CyclicModuleData {
        let degrees = (0..=self.q_max)
            .map(|q| DegreeData {
                space: IndexedSpace::numbered(format!("X{p},{q}"), self.dims[p][q]),
                faces: self.v_faces[p][q].clone(),
                degeneracies: self.v_degens[p][q].clone(),
                cyclic: self.v_cyclic[p][q].clone(),
            })
            .collect();
        CyclicModuleData {
            name: format!("column[p={p}]"),
            field: self.field,
            direction: Direction::Homological,
            degrees,
            status: None,
        }
    }

    /// The p-direction cyclic module data at fixed vertical degree `q`.
    pub fn row(&self, q: usize) -> CyclicModuleData {
        let degrees = (0..=self.p_max)
            .map(|p| DegreeData {
                space: IndexedSpace::numbered(format!("X{p},{q}"), self.dims[p][q]),
                faces: self.h_faces[p][q].clone(),
                degeneracies: self.h_degens[p][q].clone(),
                cyclic: self.h_cyclic[p][q].clone(),
            })
            .collect();
        CyclicModuleData {
            name: format!("row[q={q}]"),
            field: self.field,
            direction: Direction::Homological,
            degrees,
            status: None,
        }
    }

    /// The diagonal cyclic module `d(X)_n = X_{n,n}` with operators
    /// `d_i δ_i`, `s_i σ_i`, `t τ`.
    pub fn diagonal(&self) -> Result<CyclicModuleData> {
        let n_max = self.p_max.min(self.q_max);
        let mut degrees = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        // d_i : X_{n,n} -> X_{n-1,n}, then δ_i : -> X_{n-1,n-1}
                        self.v_faces[n - 1][n][i].mul(&self.h_faces[n][n][i])
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let degeneracies = if n == n_max {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| self.v_degens[n + 1][n][i].mul(&self.h_degens[n][n][i]))
                    .collect::<Result<Vec<_>>>()?
            };
            let cyclic = self.v_cyclic[n][n].mul(&self.h_cyclic[n][n])?;
            degrees.push(DegreeData {
                space: IndexedSpace::numbered(format!("d(X){n}"), self.dims[n][n]),
                faces,
                degeneracies,
                cyclic,
            });
        }
        Ok(CyclicModuleData {
            name: "diagonal".to_string(),
            field: self.field,
            direction: Direction::Homological,
            degrees,
            status: None,
        })
    }
}

/// Certification report for the cylindrical axioms.
#[derive(Debug)]
pub struct CylindricalReport {
    pub column_failures: Vec<String>,
    pub row_failures: Vec<String>,
    pub commutation_failures: Vec<String>,
    /// `t^{p+1} τ^{q+1} = id` on every cell.
    pub twist_identity: bool,
}

impl CylindricalReport {
    pub fn ok(&self) -> bool {
        self.column_failures.is_empty()
            && self.row_failures.is_empty()
            && self.commutation_failures.is_empty()
            && self.twist_identity
    }
}

pub fn certify_cylindrical(x: &CylindricalModule) -> Result<CylindricalReport> {
    let mut column_failures = Vec::new();
    let mut row_failures = Vec::new();
    for p in 0..=x.p_max {
        let mut col = x.column(p);
        let rep = col.certify()?;
        for f in rep
            .simplicial_failures
            .iter()
            .chain(rep.paracyclic_failures.iter())
        {
            column_failures.push(format!("column p={p}: {f}"));
        }
    }
    for q in 0..=x.q_max {
        let mut row = x.row(q);
        let rep = row.certify()?;
        for f in rep
            .simplicial_failures
            .iter()
            .chain(rep.paracyclic_failures.iter())
        {
            row_failures.push(format!("row q={q}: {f}"));
        }
    }
    // commutation of every horizontal operator with every vertical operator
    let mut commutation_failures = Vec::new();
    for p in 0..=x.p_max {
        for q in 0..=x.q_max {
            // horizontal ops out of (p,q): faces (p>=1), degens (p<p_max), cyclic
            // vertical ops out of the corresponding targets
            if p >= 1 && q >= 1 {
                for (i, hf) in x.h_faces[p][q].iter().enumerate() {
                    for (j, vf) in x.v_faces[p][q].iter().enumerate() {
                        let a = x.v_faces[p - 1][q][j].mul(hf)?;
                        let b = x.h_faces[p][q - 1][i].mul(vf)?;
                        if a != b {
                            commutation_failures.push(format!("[d{i},δ{j}] at ({p},{q})"));
                        }
                    }
                }
            }
            if p >= 1 {
                for (i, hf) in x.h_faces[p][q].iter().enumerate() {
                    let a = x.v_cyclic[p - 1][q].mul(hf)?;
                    let b = hf.mul(&x.v_cyclic[p][q])?;
                    if a != b {
                        commutation_failures.push(format!("[d{i},τ] at ({p},{q})"));
                    }
                    if q < x.q_max {
                        for (j, vs) in x.v_degens[p][q].iter().enumerate() {
                            let a = x.v_degens[p - 1][q][j].mul(hf)?;
                            let b = x.h_faces[p][q + 1][i].mul(vs)?;
                            if a != b {
                                commutation_failures.push(format!("[d{i},σ{j}] at ({p},{q})"));
                            }
                        }
                    }
                }
            }
            if p < x.p_max {
                for (i, hs) in x.h_degens[p][q].iter().enumerate() {
                    let a = x.v_cyclic[p + 1][q].mul(hs)?;
                    let b = hs.mul(&x.v_cyclic[p][q])?;
                    if a != b {
                        commutation_failures.push(format!("[s{i},τ] at ({p},{q})"));
                    }
                    if q >= 1 {
                        for (j, vf) in x.v_faces[p][q].iter().enumerate() {
                            let a = x.v_faces[p + 1][q][j].mul(hs)?;
                            let b = x.h_degens[p][q - 1][i].mul(vf)?;
                            if a != b {
                                commutation_failures.push(format!("[s{i},δ{j}] at ({p},{q})"));
                            }
                        }
                    }
                    if q < x.q_max {
                        for (j, vs) in x.v_degens[p][q].iter().enumerate() {
                            let a = x.v_degens[p + 1][q][j].mul(hs)?;
                            let b = x.h_degens[p][q + 1][i].mul(vs)?;
                            if a != b {
                                commutation_failures.push(format!("[s{i},σ{j}] at ({p},{q})"));
                            }
                        }
                    }
                }
            }
            // t with vertical operators
            let t = &x.h_cyclic[p][q];
            if q >= 1 {
                for (j, vf) in x.v_faces[p][q].iter().enumerate() {
                    let a = x.h_cyclic[p][q - 1].mul(vf)?;
                    let b = vf.mul(t)?;
                    if a != b {
                        commutation_failures.push(format!("[t,δ{j}] at ({p},{q})"));
                    }
                }
            }
            if q < x.q_max {
                for (j, vs) in x.v_degens[p][q].iter().enumerate() {
                    let a = x.h_cyclic[p][q + 1].mul(vs)?;
                    let b = vs.mul(t)?;
                    if a != b {
                        commutation_failures.push(format!("[t,σ{j}] at ({p},{q})"));
                    }
                }
            }
            let a = x.v_cyclic[p][q].mul(t)?;
            let b = t.mul(&x.v_cyclic[p][q])?;
            if a != b {
                commutation_failures.push(format!("[t,τ] at ({p},{q})"));
            }
        }
    }
    // the cylindrical twist identity t^{p+1} τ^{q+1} = id
    let mut twist = true;
    for p in 0..=x.p_max {
        for q in 0..=x.q_max {
            let tp = x.h_cyclic[p][q].pow(p + 1)?;
            let tq = x.v_cyclic[p][q].pow(q + 1)?;
            if !tp.mul(&tq)?.is_identity() {
                twist = false;
            }
        }
    }
    Ok(CylindricalReport {
        column_failures,
        row_failures,
        commutation_failures,
        twist_identity: twist,
    })
}

/// The normalized total mixed complex of a cylindrical module:
/// `b = b_h + (-1)^p b_v` and `B = B_h + (-1)^p t^{p+1} B_v` on
/// `Tot_n = ⊕_{p+q=n} X_{p,q}` (degenerate parts in both directions
/// quotiented). The mixed complex identities are certified exactly.
pub fn tot_mixed_complex(x: &CylindricalModule) -> Result<MixedComplex> {
    let field = x.field;
    let n_max = x.p_max.min(x.q_max);
    // normalized quotients per cell
    let mut quotients: Vec<Vec<Quotient>> = Vec::new();
    for p in 0..=x.p_max {
        let mut row = Vec::new();
        for q in 0..=x.q_max {
            let mut relations = Vec::new();
            if q >= 1 {
                for s in &x.v_degens[p][q - 1] {
                    for j in 0..s.cols {
                        let col = s.column(j);
                        if !col.is_zero() {
                            relations.push(col.clone());
                        }
                    }
                }
            }
            if p >= 1 {
                for s in &x.h_degens[p - 1][q] {
                    for j in 0..s.cols {
                        let col = s.column(j);
                        if !col.is_zero() {
                            relations.push(col.clone());
                        }
                    }
                }
            }
            row.push(Quotient::new(x.dims[p][q], field, relations));
        }
        quotients.push(row);
    }
    let alternating = |mats: &[SparseMatrix], rows: usize, cols: usize| -> Result<SparseMatrix> {
        let mut out = SparseMatrix::zero(rows, cols, field);
        for (i, m) in mats.iter().enumerate() {
            let signed = if i % 2 == 0 {
                m.clone()
            } else {
                m.scale(&field.integer(-1))
            };
            out = out.add(&signed)?;
        }
        Ok(out)
    };
    // per-cell normalized operators
    let cell_b_h = |p: usize, q: usize| -> Result<SparseMatrix> {
        let b = alternating(&x.h_faces[p][q], x.dims[p - 1][q], x.dims[p][q])?;
        Ok(quotients[p][q].descend(&b, &quotients[p - 1][q]))
    };
    let cell_b_v = |p: usize, q: usize| -> Result<SparseMatrix> {
        let b = alternating(&x.v_faces[p][q], x.dims[p][q - 1], x.dims[p][q])?;
        Ok(quotients[p][q].descend(&b, &quotients[p][q - 1]))
    };
    let connes = |tau: &SparseMatrix,
                  tau_up: &SparseMatrix,
                  top_degen: &SparseMatrix,
                  degree: usize|
     -> Result<SparseMatrix> {
        let lambda = if degree % 2 == 0 {
            tau.clone()
        } else {
            tau.scale(&field.integer(-1))
        };
        let mut norm = SparseMatrix::identity(tau.rows, field);
        let mut power = SparseMatrix::identity(tau.rows, field);
        for _ in 0..degree {
            power = power.mul(&lambda)?;
            norm = norm.add(&power)?;
        }
        let extra = tau_up.mul(top_degen)?;
        let lambda_up = if (degree + 1) % 2 == 0 {
            tau_up.clone()
        } else {
            tau_up.scale(&field.integer(-1))
        };
        let one_minus = SparseMatrix::identity(tau_up.rows, field).sub(&lambda_up)?;
        one_minus.mul(&extra)?.mul(&norm)
    };
    let cell_bb_h = |p: usize, q: usize| -> Result<SparseMatrix> {
        let b = connes(
            &x.h_cyclic[p][q],
            &x.h_cyclic[p + 1][q],
            &x.h_degens[p][q][p],
            p,
        )?;
        Ok(quotients[p][q].descend(&b, &quotients[p + 1][q]))
    };
    let cell_bb_v = |p: usize, q: usize| -> Result<SparseMatrix> {
        let b = connes(
            &x.v_cyclic[p][q],
            &x.v_cyclic[p][q + 1],
            &x.v_degens[p][q][q],
            q,
        )?;
        let twist = x.h_cyclic[p][q + 1].pow(p + 1)?;
        let twisted = twist.mul(&b)?;
        Ok(quotients[p][q].descend(&twisted, &quotients[p][q + 1]))
    };
    // assemble Tot
    let tot_dims: Vec<usize> = (0..=n_max)
        .map(|n| (0..=n).map(|p| quotients[p][n - p].dim()).sum())
        .collect();
    let offset = |n: usize, p: usize| -> usize {
        (0..p).map(|pp| quotients[pp][n - pp].dim()).sum()
    };
    let mut b_ops = Vec::new();
    let mut bb_ops = Vec::new();
    for n in 0..n_max {
        // b : Tot_{n+1} -> Tot_n
        let mut entries = Vec::new();
        for p in 0..=n + 1 {
            let q = n + 1 - p;
            let src = offset(n + 1, p);
            if p >= 1 {
                let m = cell_b_h(p, q)?;
                let dst = offset(n, p - 1);
                for (r, c, v) in m.entries() {
                    entries.push((dst + r, src + c, v.clone()));
                }
            }
            if q >= 1 {
                let m = cell_b_v(p, q)?;
                let signed = if p % 2 == 0 {
                    m
                } else {
                    m.scale(&field.integer(-1))
                };
                let dst = offset(n, p);
                for (r, c, v) in signed.entries() {
                    entries.push((dst + r, src + c, v.clone()));
                }
            }
        }
        b_ops.push(SparseMatrix::from_entries(
            tot_dims[n],
            tot_dims[n + 1],
            field,
            entries,
        )?);
        // B : Tot_n -> Tot_{n+1}
        let mut entries = Vec::new();
        for p in 0..=n {
            let q = n - p;
            let src = offset(n, p);
            {
                let m = cell_bb_h(p, q)?;
                let dst = offset(n + 1, p + 1);
                for (r, c, v) in m.entries() {
                    entries.push((dst + r, src + c, v.clone()));
                }
            }
            {
                let m = cell_bb_v(p, q)?;
                let signed = if p % 2 == 0 {
                    m
                } else {
                    m.scale(&field.integer(-1))
                };
                let dst = offset(n + 1, p);
                for (r, c, v) in signed.entries() {
                    entries.push((dst + r, src + c, v.clone()));
                }
            }
        }
        bb_ops.push(SparseMatrix::from_entries(
            tot_dims[n + 1],
            tot_dims[n],
            field,
            entries,
        )?);
    }
    let mixed = MixedComplex {
        field,
        dims: tot_dims,
        b: b_ops,
        bb: bb_ops,
    };
    let failures = mixed.certify()?;
    if !failures.is_empty() {
        return Err(Error::structure(format!(
            "total mixed complex identities fail: {failures:?}"
        )));
    }
    Ok(mixed)
}

/// The Eilenberg-Zilber comparison: cyclic homology dimensions of the total
/// and the diagonal mixed complexes.
#[derive(Debug)]
pub struct EzReport {
    pub tot_hc: Vec<usize>,
    pub diagonal_hc: Vec<usize>,
    pub equal: bool,
}

pub fn ez_compare(x: &CylindricalModule) -> Result<EzReport> {
    let tot = tot_mixed_complex(x)?;
    let tot_hc = tot.cyclic()?;
    let mut diag = x.diagonal()?;
    let report = diag.certify()?;
    if !report.is_cyclic() {
        return Err(Error::structure(format!(
            "diagonal failed cyclic certification: {report:?}"
        )));
    }
    let diagonal_hc = cyclic_homology(&diag)?;
    let bound = tot_hc.len().min(diagonal_hc.len());
    let tot_hc = tot_hc[..bound].to_vec();
    let diagonal_hc = diagonal_hc[..bound].to_vec();
    let equal = tot_hc == diagonal_hc;
    Ok(EzReport {
        tot_hc,
        diagonal_hc,
        equal,
    })
}

/// The identification maps between the diagonal and the invariant chains:
/// φ and ψ from the proof of the identification proposition, extended by
/// the coinvariant inclusion, verified mutually inverse and equivariant.
#[derive(Debug)]
pub struct DiagonalComparison {
    pub phi_psi_identity: bool,
    pub psi_phi_identity: bool,
    pub operators_intertwine: Vec<String>,
    pub coinvariant_dims: Vec<usize>,
    pub diagonal_dims: Vec<usize>,
}

impl DiagonalComparison {
    pub fn ok(&self) -> bool {
        self.phi_psi_identity
            && self.psi_phi_identity
            && self.operators_intertwine.is_empty()
            && self.coinvariant_dims == self.diagonal_dims
    }
}

pub fn diagonal_vs_invariant(
    s: &SmashProduct,
    module: &HModule,
    sigma: &SparseVec,
    n_max: usize,
    budget: usize,
) -> Result<DiagonalComparison> {
    let hopf = &s.hopf;
    let base = &s.base;
    let field = hopf.field;
    let dm = module.dim();
    let dh = hopf.dim();
    let db = base.dim();
    let da = dh * db;
    let triple = HopfTriple::new(
        s.comodule_algebra.clone(),
        hopf.clone(),
        module.clone(),
        sigma.clone(),
    )?;
    let ambient = crate::triple::build_chain_paracyclic(&triple, n_max, budget)?;
    let coinv = coinvariant_chain_module(&triple, n_max, budget, true)?;
    let coinv_module = coinv.module.as_ref().expect("compatible pair");
    let x = build_cylindrical(s, module, sigma, n_max, n_max, budget)?;
    let mut diag = x.diagonal()?;
    diag.certify()?;

    // Φ_n : coinvariant coords -> X_{n,n}: first drop the leading H-leg of
    // a_0 by ε (the Lemma identification), then apply φ
    let mut intertwine = Vec::new();
    let mut phi_psi = true;
    let mut psi_phi = true;
    let mut phis: Vec<SparseMatrix> = Vec::new();
    for n in 0..=n_max {
        // chain dims: (m, (g,b)_0, ..., (g,b)_n) with A = H ⊗ B
        let mut chain_dims = vec![da; n + 1];
        chain_dims.insert(0, dm);
        // intermediate: m ⊗ b_0 ⊗ (g,b)_1..(g,b)_n
        let mut mid_dims = vec![da; n];
        mid_dims.insert(0, db);
        mid_dims.insert(0, dm);
        // theta: ε on the H-part of a_0
        let theta = operator_from_tuples(&chain_dims, total_dim(&mid_dims), field, |tu| {
            let a0 = tu[1];
            let (g0, b0) = (a0 / db, a0 % db);
            let e = hopf.counit_of(g0);
            if e.is_zero() {
                return SparseVec::zero();
            }
            let mut u = Vec::with_capacity(mid_dims.len());
            u.push(tu[0]);
            u.push(b0);
            u.extend_from_slice(&tu[2..]);
            SparseVec::from_entries(vec![(encode_index(&mid_dims, &u), e)])
        })?;
        // eta: m⊗b_0⊗(g_1,b_1).. -> m⊗(σS(g_1^{(1)}..g_n^{(1)}), b_0)⊗(g_1^{(2)},b_1)..
        let eta = operator_from_tuples(&mid_dims, total_dim(&chain_dims), field, |tu| {
            let m = tu[0];
            let b0 = tu[1];
            let gb: Vec<(usize, usize)> = tu[2..].iter().map(|&x| (x / db, x % db)).collect();
            let mut out = Vec::new();
            let mut stack: Vec<(usize, SparseVec, Vec<usize>, ExactScalar)> =
                vec![(0, hopf.unit.clone(), Vec::new(), field.one())];
            while let Some((k, first, seconds, coeff)) = stack.pop() {
                if k == n {
                    let s_leg = hopf.mul_vec(sigma, &hopf.antipode.apply(&first));
                    for (si, cs) in s_leg.iter() {
                        let mut u = Vec::with_capacity(chain_dims.len());
                        u.push(m);
                        u.push(si * db + b0);
                        for (j, (_, bj)) in gb.iter().enumerate() {
                            u.push(seconds[j] * db + bj);
                        }
                        out.push((encode_index(&chain_dims, &u), coeff.mul(cs)));
                    }
                    continue;
                }
                for ((l1, l2), c) in hopf.comult_of(gb[k].0) {
                    let f = hopf.mul_vec(&first, &SparseVec::unit(l1, field));
                    let mut sc = seconds.clone();
                    sc.push(l2);
                    stack.push((k + 1, f, sc, coeff.mul(&c)));
                }
            }
            SparseVec::from_entries(out)
        })?;
        // φ: m⊗b_0(a_0)⊗(g_1,b_1)... -> m ⊗ g_1^{(1)}..g_n^{(1)} ⊗
        //    (b_0)g_1^{(2)}..g_n^{(2)} ⊗ (b_1)g_2^{(3)}..g_n^{(3)} ⊗ ... ⊗ b_n
        let cell_dims = {
            let mut d = vec![dm];
            d.extend(std::iter::repeat(dh).take(n));
            d.extend(std::iter::repeat(db).take(n + 1));
            d
        };
        let phi = operator_from_tuples(&mid_dims, total_dim(&cell_dims), field, |tu| {
            let m = tu[0];
            let b0 = tu[1];
            let gb: Vec<(usize, usize)> = tu[2..].iter().map(|&x| (x / db, x % db)).collect();
            // g_i needs i+1 legs: leg 1 -> slot i, leg j+2 acts on b_j
            let mut out = Vec::new();
            let mut stack: Vec<(usize, Vec<usize>, Vec<SparseVec>, ExactScalar)> = vec![(
                0,
                Vec::new(),
                {
                    let mut bs: Vec<SparseVec> = Vec::with_capacity(n + 1);
                    bs.push(SparseVec::unit(b0, field));
                    for (_, bj) in &gb {
                        bs.push(SparseVec::unit(*bj, field));
                    }
                    bs
                },
                field.one(),
            )];
            while let Some((i, slots, bs, coeff)) = stack.pop() {
                if i == n {
                    // assemble
                    let mut parts: Vec<(Vec<usize>, ExactScalar)> =
                        vec![(vec![m], coeff.clone())];
                    for s in &slots {
                        for p in parts.iter_mut() {
                            p.0.push(*s);
                        }
                    }
                    for b in &bs {
                        let mut next = Vec::new();
                        for (prefix, pc) in &parts {
                            for (bi, cb) in b.iter() {
                                let mut u = prefix.clone();
                                u.push(*bi);
                                next.push((u, pc.mul(cb)));
                            }
                        }
                        parts = next;
                    }
                    for (u, pc) in parts {
                        out.push((encode_index(&cell_dims, &u), pc));
                    }
                    continue;
                }
                let gi = gb[i].0;
                for (legs, c) in hopf.iterated_comult(gi, i + 2) {
                    let mut slots2 = slots.clone();
                    slots2.push(legs[0]);
                    let mut bs2 = bs.clone();
                    for (j, b) in bs2.iter_mut().enumerate().take(i + 1) {
                        *b = base.act_vec(b, &SparseVec::unit(legs[j + 1], field));
                    }
                    stack.push((i + 1, slots2, bs2, coeff.mul(&c)));
                }
            }
            SparseVec::from_entries(out)
        })?;
        // ψ: m⊗g_1..g_n⊗b_0..b_n -> m ⊗ (b_0)S^{-1}(...) ⊗ g_1^{(1)} ⊗ ...;
        // the g's are processed in descending order so that each b receives
        // the S^{-1} factors of a product in the right-action order.
        let psi = operator_from_tuples(&cell_dims, total_dim(&mid_dims), field, |tu| {
            let m = tu[0];
            let g: Vec<usize> = tu[1..1 + n].to_vec();
            let b: Vec<usize> = tu[1 + n..].to_vec();
            // g_i (0-based) splits into i+2 legs: leg 0 -> output slot i,
            // leg k (1-based) -> S^{-1} acting on b_{i-k+1}
            let mut states: Vec<(Vec<usize>, Vec<SparseVec>, ExactScalar)> = vec![(
                vec![0; n],
                b.iter().map(|&bj| SparseVec::unit(bj, field)).collect(),
                field.one(),
            )];
            for i in (0..n).rev() {
                let mut next_states = Vec::new();
                for (slots, bs, coeff) in &states {
                    for (legs, c) in hopf.iterated_comult(g[i], i + 2) {
                        let mut slots2 = slots.clone();
                        slots2[i] = legs[0];
                        let mut bs2 = bs.clone();
                        for (k, leg) in legs.iter().enumerate().skip(1) {
                            let target = i + 1 - k;
                            let sleg = hopf.antipode_inv.column(*leg);
                            bs2[target] = base.act_vec(&bs2[target], sleg);
                        }
                        next_states.push((slots2, bs2, coeff.mul(&c)));
                    }
                }
                states = next_states;
            }
            let mut out = Vec::new();
            for (slots, bs, coeff) in states {
                let mut parts: Vec<(Vec<usize>, ExactScalar)> = vec![(vec![m], coeff.clone())];
                let mut next = Vec::new();
                for (prefix, pc) in &parts {
                    for (bi, cb) in bs[0].iter() {
                        let mut u = prefix.clone();
                        u.push(*bi);
                        next.push((u, pc.mul(cb)));
                    }
                }
                parts = next;
                for j in 1..=n {
                    let mut next = Vec::new();
                    for (prefix, pc) in &parts {
                        for (bi, cb) in bs[j].iter() {
                            let mut u = prefix.clone();
                            u.push(slots[j - 1] * db + bi);
                            next.push((u, pc.mul(cb)));
                        }
                    }
                    parts = next;
                }
                for (u, pc) in parts {
                    out.push((encode_index(&mid_dims, &u), pc));
                }
            }
            SparseVec::from_entries(out)
        })?;
        // Φ = φ∘θ restricted to coinvariants, Ψ = η∘ψ landing in them
        let phi_total = phi.mul(&theta)?;
        let psi_total = eta.mul(&psi)?;
        // mutual inverses on the coinvariant subspace and on the diagonal
        let round = phi_total.mul(&psi_total)?;
        if !round.is_identity() {
            phi_psi = false;
        }
        let back = psi_total.mul(&phi_total)?;
        for j in 0..coinv.subspaces[n].dim() {
            let v = coinv.subspaces[n].basis_vector(j);
            if &back.apply(v) != v {
                psi_phi = false;
                break;
            }
        }
        phis.push(phi_total);
    }
    // operator equivariance: Φ ∘ (coinv op) = (diag op) ∘ Φ, expressed on
    // the ambient coinvariant subspaces
    for n in 0..=n_max {
        let sub = &coinv.subspaces[n];
        let phi_n = &phis[n];
        for (i, f) in diag.degrees[n].faces.iter().enumerate() {
            let amb = &ambient.degrees[n].faces[i];
            for j in 0..sub.dim() {
                let v = sub.basis_vector(j);
                let lhs = f.apply(&phi_n.apply(v));
                let rhs = phis[n - 1].apply(&amb.apply(v));
                if lhs != rhs {
                    intertwine.push(format!("face d{i} at degree {n}"));
                    break;
                }
            }
        }
        for (i, sdeg) in diag.degrees[n].degeneracies.iter().enumerate() {
            let amb = &ambient.degrees[n].degeneracies[i];
            for j in 0..sub.dim() {
                let v = sub.basis_vector(j);
                let lhs = sdeg.apply(&phi_n.apply(v));
                let rhs = phis[n + 1].apply(&amb.apply(v));
                if lhs != rhs {
                    intertwine.push(format!("degeneracy s{i} at degree {n}"));
                    break;
                }
            }
        }
        let amb = &ambient.degrees[n].cyclic;
        for j in 0..sub.dim() {
            let v = sub.basis_vector(j);
            let lhs = diag.degrees[n].cyclic.apply(&phi_n.apply(v));
            let rhs = phi_n.apply(&amb.apply(v));
            if lhs != rhs {
                intertwine.push(format!("cyclic operator at degree {n}"));
                break;
            }
        }
    }
    let _ = coinv_module;
    Ok(DiagonalComparison {
        phi_psi_identity: phi_psi,
        psi_phi_identity: psi_phi,
        operators_intertwine: intertwine,
        coinvariant_dims: coinv.dims(),
        diagonal_dims: (0..=n_max).map(|n| x.dims[n][n]).collect(),
    })
}

/// The filtration spectral sequence data.
#[derive(Debug)]
pub struct SpectralSequence {
    /// `E¹_{p,q}` dimensions, `e1[p][q]`.
    pub e1: Vec<Vec<usize>>,
    /// The same dimensions from the independent bar-complex oracle.
    pub e1_oracle: Vec<Vec<usize>>,
    /// Row cyclic modules on homology (index p), certified.
    pub rows: Vec<CyclicModuleData>,
    /// `E²_{p,q} = HC_q` of row `p`; `e2[p][q]` for `q <= q_max - 1`.
    pub e2: Vec<Vec<usize>>,
}

/// Compute the E¹ and E² terms of the filtration spectral sequence of a
/// cylindrical module: E¹ as horizontal homology with the induced vertical
/// structure (cross-checked against the bar oracle with the twisted action),
/// E² as the cyclic homology of the row cyclic modules.
pub fn spectral_sequence(
    s: &SmashProduct,
    module: &HModule,
    sigma: &SparseVec,
    p_max: usize,
    q_max: usize,
    budget: usize,
) -> Result<SpectralSequence> {
    let x = build_cylindrical(s, module, sigma, p_max, q_max, budget)?;
    let field = x.field;
    let hopf = &s.hopf;
    let base = &s.base;
    let dm = module.dim();
    let db = base.dim();
    // horizontal homology subquotients per q
    let mut subquotients: Vec<Vec<Subquotient>> = Vec::new(); // [q][p], p <= p_max-1
    for q in 0..=q_max {
        let dims: Vec<usize> = (0..=p_max).map(|p| x.dims[p][q]).collect();
        let diffs: Vec<SparseMatrix> = (1..=p_max)
            .map(|p| {
                let mut b = SparseMatrix::zero(x.dims[p - 1][q], x.dims[p][q], field);
                for (i, f) in x.h_faces[p][q].iter().enumerate() {
                    let signed = if i % 2 == 0 {
                        f.clone()
                    } else {
                        f.scale(&field.integer(-1))
                    };
                    b = b.add(&signed)?;
                }
                Ok(b)
            })
            .collect::<Result<Vec<_>>>()?;
        subquotients.push(crate::homology::homology_subquotients(&dims, &diffs, field)?);
    }
    let e1: Vec<Vec<usize>> = (0..p_max)
        .map(|p| (0..=q_max).map(|q| subquotients[q][p].dim()).collect())
        .collect();
    // oracle: bar complex of M ⊗ B^{⊗(q+1)} with the twisted action
    let mut e1_oracle = vec![vec![0; q_max + 1]; p_max];
    for q in 0..=q_max {
        let mut dims = vec![db; q + 1];
        dims.insert(0, dm);
        let space_dim = total_dim(&dims);
        let action = SparseMatrix::from_fn(hopf.dim() * space_dim, hopf.dim() * space_dim, field, |_| {
            SparseVec::zero()
        })?;
        let _ = action;
        let action = operator_from_tuples(
            &{
                let mut d = vec![hopf.dim()];
                d.extend_from_slice(&dims);
                d
            },
            space_dim,
            field,
            |tu| {
                let h = tu[0];
                let m = tu[1];
                let b = &tu[2..];
                // h(m⊗b_0⊗...⊗b_q) = h^{(1)}m ⊗ (b_0)S^{-1}(h^{(q+2)}) ⊗ ... ⊗ (b_q)S^{-1}(h^{(2)})
                let mut out = Vec::new();
                for (legs, c) in hopf.iterated_comult(h, q + 2) {
                    let mut parts: Vec<(Vec<usize>, ExactScalar)> = Vec::new();
                    for (mi, cm) in module.act(legs[0], m).iter() {
                        parts.push((vec![*mi], c.mul(cm)));
                    }
                    for (j, &bj) in b.iter().enumerate() {
                        let sleg = hopf.antipode_inv.column(legs[q + 1 - j]);
                        let acted = base.act_vec(&SparseVec::unit(bj, field), sleg);
                        let mut next = Vec::new();
                        for (prefix, pc) in &parts {
                            for (bi, cb) in acted.iter() {
                                let mut u = prefix.clone();
                                u.push(*bi);
                                next.push((u, pc.mul(cb)));
                            }
                        }
                        parts = next;
                    }
                    for (u, pc) in parts {
                        out.push((encode_index(&dims, &u), pc));
                    }
                }
                SparseVec::from_entries(out)
            },
        )?;
        let twisted = HModule {
            space: IndexedSpace::numbered(format!("M⊗B^{}", q + 1), space_dim),
            action,
            field,
        };
        let cert = twisted.certify(hopf);
        if !cert.ok() {
            return Err(Error::structure(format!(
                "twisted E¹ coefficients fail module axioms: {:?}",
                cert.violations
            )));
        }
        let dims_h = crate::oracle::hopf_homology(hopf, &twisted, p_max, budget)?;
        for (p, d) in dims_h.iter().enumerate() {
            e1_oracle[p][q] = *d;
        }
    }
    // induced vertical structure on horizontal homology: row cyclic modules
    let mut rows = Vec::new();
    let mut e2 = Vec::new();
    for p in 0..p_max {
        let mut degrees = Vec::with_capacity(q_max + 1);
        for q in 0..=q_max {
            let sq = &subquotients[q][p];
            let faces = if q == 0 {
                Vec::new()
            } else {
                x.v_faces[p][q]
                    .iter()
                    .map(|f| induced_map(sq, &subquotients[q - 1][p], |v| f.apply(v), field))
                    .collect::<Result<Vec<_>>>()?
            };
            let degeneracies = if q == q_max {
                Vec::new()
            } else {
                x.v_degens[p][q]
                    .iter()
                    .map(|s| induced_map(sq, &subquotients[q + 1][p], |v| s.apply(v), field))
                    .collect::<Result<Vec<_>>>()?
            };
            let cyclic = induced_map(sq, sq, |v| x.v_cyclic[p][q].apply(v), field)?;
            degrees.push(DegreeData {
                space: IndexedSpace::numbered(format!("E1[{p},{q}]"), sq.dim()),
                faces,
                degeneracies,
                cyclic,
            });
        }
        let mut row = CyclicModuleData {
            name: format!("E1 row p={p}"),
            field,
            direction: Direction::Homological,
            degrees,
            status: None,
        };
        let rep = row.certify()?;
        if !rep.is_cyclic() {
            return Err(Error::structure(format!(
                "E¹ row p={p} failed cyclic certification: {rep:?}"
            )));
        }
        let hc = cyclic_homology(&row)?;
        rows.push(row);
        e2.push(hc);
    }
    Ok(SpectralSequence {
        e1,
        e1_oracle,
        rows,
        e2,
    })
}

/// Invariant cyclic homology of the smash product via the generic triple
/// machinery (coinvariant kernel path).
pub fn smash_invariant_hc(
    s: &SmashProduct,
    module: &HModule,
    sigma: &SparseVec,
    n_max: usize,
    budget: usize,
) -> Result<Vec<usize>> {
    let triple = HopfTriple::new(
        s.comodule_algebra.clone(),
        s.hopf.clone(),
        module.clone(),
        sigma.clone(),
    )?;
    let coinv = coinvariant_chain_module(&triple, n_max, budget, true)?;
    let module_data = coinv
        .module
        .ok_or_else(|| Error::structure("coinvariant module missing for compatible pair"))?;
    cyclic_homology(&module_data)
}

/// The sign action of `k[Z/2]` on the dual numbers `k[x]/(x²)`.
pub fn sign_action_on_dual_numbers(
    hopf: &HopfAlgebra,
    base: &Algebra,
) -> Result<RightModuleAlgebra> {
    let field = hopf.field;
    if hopf.dim() != 2 || base.dim() != 2 {
        return Err(Error::shape("sign action needs k[Z/2] and k[x]/(x²)"));
    }
    // (1)g = 1, (x)g = -x
    let action = SparseMatrix::from_fn(2, 4, field, |idx| {
        let (b, h) = (idx / 2, idx % 2);
        if h == 0 {
            SparseVec::unit(b, field)
        } else if b == 0 {
            SparseVec::unit(0, field)
        } else {
            SparseVec(vec![(1, field.integer(-1))])
        }
    })?;
    Ok(RightModuleAlgebra {
        algebra: base.clone(),
        action,
        hopf_dim: 2,
    })
}

/// The canonical right action of the Sweedler algebra on the dual numbers:
/// `(X)g = -X`, `(X)x = 1`, extended by the measuring rule.
pub fn sweedler_action_on_dual_numbers(
    hopf: &HopfAlgebra,
    base: &Algebra,
) -> Result<RightModuleAlgebra> {
    let field = hopf.field;
    if hopf.dim() != 4 || base.dim() != 2 {
        return Err(Error::shape(
            "canonical action needs the Sweedler algebra and k[x]/(x²)",
        ));
    }
    // basis of H: 1, g, x, gx; basis of B: 1, X
    let action = SparseMatrix::from_fn(2, 8, field, |idx| {
        let (b, h) = (idx / 4, idx % 4);
        match (b, h) {
            (_, 0) => SparseVec::unit(b, field),                    // (b)1 = b
            (0, 1) => SparseVec::unit(0, field),                    // (1)g = 1
            (1, 1) => SparseVec(vec![(1, field.integer(-1))]),      // (X)g = -X
            (1, 2) => SparseVec::unit(0, field),                    // (X)x = 1
            (1, 3) => SparseVec(vec![(0, field.integer(-1))]),      // (X)gx = -(X)xg... verified
            _ => SparseVec::zero(),                                 // (1)x = (1)gx = 0
        }
    })?;
    Ok(RightModuleAlgebra {
        algebra: base.clone(),
        action,
        hopf_dim: 4,
    })
}

/// The trivial right action `(b)h = ε(h) b`.
pub fn trivial_action(hopf: &HopfAlgebra, base: &Algebra) -> RightModuleAlgebra {
    let field = hopf.field;
    let db = base.dim();
    let action = SparseMatrix::from_fn(db, db * hopf.dim(), field, |idx| {
        let (b, h) = (idx / hopf.dim(), idx % hopf.dim());
        let e = hopf.counit_of(h);
        if e.is_zero() {
            SparseVec::zero()
        } else {
            SparseVec(vec![(b, e)])
        }
    })
    .expect("trivial action");
    RightModuleAlgebra {
        algebra: base.clone(),
        action,
        hopf_dim: hopf.dim(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::DEFAULT_DIMENSION_BUDGET;
    use crate::hopf::{group_algebra, GroupTable};
    use crate::module::{trivial_module, truncated_polynomial_algebra};
    use crate::scalar::Field;

    const B: usize = DEFAULT_DIMENSION_BUDGET;

    fn sign_smash(field: Field) -> SmashProduct {
        let h = group_algebra(&GroupTable::cyclic(2), field).unwrap();
        let b = truncated_polynomial_algebra(field, 2).unwrap();
        let action = sign_action_on_dual_numbers(&h, &b).unwrap();
        build_smash(&h, action).unwrap()
    }

    #[test]
    fn smash_product_certifies() {
        let s = sign_smash(Field::Rational);
        assert_eq!(s.comodule_algebra.dim(), 4);
        // trivial action gives the tensor-product algebra
        let h = group_algebra(&GroupTable::cyclic(2), Field::Rational).unwrap();
        let b = truncated_polynomial_algebra(Field::Rational, 2).unwrap();
        let s2 = build_smash(&h, trivial_action(&h, &b)).unwrap();
        // (h⊗a)(g⊗b) = hg ⊗ ab for the trivial action
        let dim = 4;
        for i in 0..dim {
            for j in 0..dim {
                let (h1, a1) = (i / 2, i % 2);
                let (h2, a2) = (j / 2, j % 2);
                let prod = s2.comodule_algebra.algebra.product(i, j);
                let hh = h.product(h1, h2);
                let aa = b.product(a1, a2);
                let mut expected = Vec::new();
                for (x, cx) in hh.iter() {
                    for (y, cy) in aa.iter() {
                        expected.push((x * 2 + y, cx.mul(cy)));
                    }
                }
                assert_eq!(prod, &SparseVec::from_entries(expected));
            }
        }
    }

    #[test]
    fn broken_action_rejected() {
        let field = Field::Rational;
        let h = group_algebra(&GroupTable::cyclic(2), field).unwrap();
        let b = truncated_polynomial_algebra(field, 2).unwrap();
        // (x)g = x + 1 is not an algebra action
        let action = SparseMatrix::from_fn(2, 4, field, |idx| {
            let (bb, hh) = (idx / 2, idx % 2);
            if hh == 0 {
                SparseVec::unit(bb, field)
            } else if bb == 0 {
                SparseVec::unit(0, field)
            } else {
                SparseVec::from_entries(vec![(0, field.one()), (1, field.one())])
            }
        })
        .unwrap();
        let rma = RightModuleAlgebra {
            algebra: b,
            action,
            hopf_dim: 2,
        };
        assert!(build_smash(&h, rma).is_err());
    }

    #[test]
    fn cylindrical_axioms_for_sign_smash() {
        let s = sign_smash(Field::Rational);
        let m = trivial_module(&s.hopf).unwrap();
        let x = build_cylindrical(&s, &m, &s.hopf.unit.clone(), 2, 2, B).unwrap();
        let rep = certify_cylindrical(&x).unwrap();
        assert!(rep.column_failures.is_empty(), "{:?}", rep.column_failures);
        assert!(rep.row_failures.is_empty(), "{:?}", rep.row_failures);
        assert!(
            rep.commutation_failures.is_empty(),
            "{:?}",
            rep.commutation_failures
        );
        assert!(rep.twist_identity);
        assert!(rep.ok());
    }

    #[test]
    fn diagonal_is_cyclic() {
        let s = sign_smash(Field::Rational);
        let m = trivial_module(&s.hopf).unwrap();
        let x = build_cylindrical(&s, &m, &s.hopf.unit.clone(), 3, 3, B).unwrap();
        let mut d = x.diagonal().unwrap();
        let rep = d.certify().unwrap();
        assert!(rep.is_cyclic(), "{rep:?}");
    }

    #[test]
    fn tot_mixed_complex_certifies() {
        let s = sign_smash(Field::Rational);
        let m = trivial_module(&s.hopf).unwrap();
        let x = build_cylindrical(&s, &m, &s.hopf.unit.clone(), 3, 3, B).unwrap();
        let tot = tot_mixed_complex(&x).unwrap();
        assert!(tot.certify().unwrap().is_empty());
    }

    #[test]
    fn ez_comparison_for_sign_smash() {
        let s = sign_smash(Field::Rational);
        let m = trivial_module(&s.hopf).unwrap();
        let x = build_cylindrical(&s, &m, &s.hopf.unit.clone(), 3, 3, B).unwrap();
        let rep = ez_compare(&x).unwrap();
        assert!(rep.equal, "{rep:?}");
    }

    #[test]
    fn phi_psi_for_sign_smash() {
        let s = sign_smash(Field::Rational);
        let m = trivial_module(&s.hopf).unwrap();
        let rep = diagonal_vs_invariant(&s, &m, &s.hopf.unit.clone(), 2, B).unwrap();
        assert!(rep.phi_psi_identity, "φψ != id");
        assert!(rep.psi_phi_identity, "ψφ != id");
        assert!(rep.operators_intertwine.is_empty(), "{:?}", rep.operators_intertwine);
        assert_eq!(rep.coinvariant_dims, rep.diagonal_dims);
        assert!(rep.ok());
    }

    #[test]
    fn spectral_sequence_collapses_over_q() {
        let s = sign_smash(Field::Rational);
        let m = trivial_module(&s.hopf).unwrap();
        let ss = spectral_sequence(&s, &m, &s.hopf.unit.clone(), 3, 3, B).unwrap();
        assert_eq!(ss.e1, ss.e1_oracle);
        // semisimple H: E¹ vanishes for p >= 1
        for p in 1..ss.e1.len() {
            assert!(ss.e1[p].iter().all(|&d| d == 0), "E¹_{p},q nonzero");
        }
        // collapse: HC of row 0 equals HC^H(A, M)
        let hc_smash = smash_invariant_hc(&s, &m, &s.hopf.unit.clone(), 3, B).unwrap();
        let bound = hc_smash.len().min(ss.e2[0].len());
        assert_eq!(&hc_smash[..bound], &ss.e2[0][..bound]);
    }

    #[test]
    fn sweedler_canonical_action_smash() {
        // the Sweedler algebra acting on the dual numbers through its
        // canonical action: all axioms verified, cylindrical certification
        // and the EZ comparison pass with coefficients (k_delta, 1)
        let f = Field::Rational;
        let h = crate::hopf::sweedler_algebra(f).unwrap();
        let b = truncated_polynomial_algebra(f, 2).unwrap();
        let s = build_smash(&h, sweedler_action_on_dual_numbers(&h, &b).unwrap()).unwrap();
        assert_eq!(s.comodule_algebra.dim(), 8);
        let delta =
            SparseMatrix::from_entries(1, 4, f, vec![(0, 0, f.one()), (0, 1, f.integer(-1))])
                .unwrap();
        let m = crate::module::character_module(&h, &delta, "k_delta").unwrap();
        let sigma = h.unit.clone();
        assert!(crate::triple::check_matched_pair(&h, &m, &sigma)
            .unwrap()
            .compatible());
        let x = build_cylindrical(&s, &m, &sigma, 2, 2, B).unwrap();
        let rep = certify_cylindrical(&x).unwrap();
        assert!(rep.ok(), "{rep:?}");
        let x33 = build_cylindrical(&s, &m, &sigma, 3, 3, B).unwrap();
        let ez = ez_compare(&x33).unwrap();
        assert!(ez.equal, "{ez:?}");
    }

    #[test]
    fn zero_module_is_vacuous() {
        let f = Field::Rational;
        let h = group_algebra(&GroupTable::cyclic(2), f).unwrap();
        let zero = crate::module::HModule {
            space: crate::space::IndexedSpace::new("0", vec![]).unwrap(),
            action: SparseMatrix::zero(0, 0, f),
            field: f,
        };
        assert_eq!(
            crate::oracle::hopf_homology(&h, &zero, 3, B).unwrap(),
            vec![0, 0, 0]
        );
        let s = sign_smash(f);
        let x = build_cylindrical(&s, &zero, &s.hopf.unit.clone(), 2, 2, B).unwrap();
        assert!(x.dims.iter().all(|row| row.iter().all(|&d| d == 0)));
    }

    #[test]
    fn nonzero_higher_column_over_f2() {
        let f = Field::prime(2).unwrap();
        let s = sign_smash(f);
        let m = trivial_module(&s.hopf).unwrap();
        let ss = spectral_sequence(&s, &m, &s.hopf.unit.clone(), 2, 2, B).unwrap();
        assert_eq!(ss.e1, ss.e1_oracle);
        assert!(
            ss.e1[1].iter().any(|&d| d > 0),
            "expected a nonzero E¹_1,q over F2: {:?}",
            ss.e1
        );
    }
}
