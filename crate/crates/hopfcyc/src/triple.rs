//! Hopf triples `(A, H, M)` with a grouplike `σ`: the paracyclic chain
//! module, the chain coaction, coinvariant subspaces, matched pairs in
//! involution, the induced invariant cyclic module, the reduced model on
//! `M ⊗ H^{⊗n}`, the trace/averaging splitting, and Morita invariance.
//!
//! Only left triples are implemented. The right-handed theory is the mirror
//! image: apply the left constructions to the opposite algebra `A^op` with
//! the co-opposite Hopf algebra `H^cop` (swap both tensor legs of `mult`
//! and `comult`, exchange `antipode` and `antipode_inv`) and read the chain
//! legs in reverse order.

use crate::cyclic::{
    check_budget, operator_from_tuples, tensor_power_space, CyclicModuleData, DegreeData,
    Direction,
};
use crate::error::{Error, Result};
use crate::homology::cyclic_homology;
use crate::hopf::{is_grouplike, HopfAlgebra};
use crate::matrix::{SparseMatrix, SparseVec, Subspace};
use crate::module::{matrix_comodule_algebra, ComoduleAlgebra, GradedBackend, HModule, WeightGroup};
use crate::scalar::ExactScalar;
use crate::space::{decode_index, encode_index, total_dim, IndexedSpace};

/// A left Hopf triple with a chosen grouplike element.
#[derive(Debug, Clone)]
pub struct HopfTriple {
    pub algebra: ComoduleAlgebra,
    pub hopf: HopfAlgebra,
    pub module: HModule,
    pub sigma: SparseVec,
}

impl HopfTriple {
    pub fn new(
        algebra: ComoduleAlgebra,
        hopf: HopfAlgebra,
        module: HModule,
        sigma: SparseVec,
    ) -> Result<HopfTriple> {
        if !is_grouplike(&hopf, &sigma) {
            return Err(Error::structure("σ is not grouplike"));
        }
        Ok(HopfTriple {
            algebra,
            hopf,
            module,
            sigma,
        })
    }

    /// Certify all component structures.
    pub fn certify_components(&self) -> crate::hopf::Certificate {
        let mut cert = self.hopf.check_hopf();
        cert.merge(self.algebra.certify(&self.hopf));
        cert.merge(self.module.certify(&self.hopf));
        cert
    }
}

/// The `(M,σ)`-twisted antipode on `M ⊗ H`:
/// `Ŝ(m⊗h) = h^{(2)}m ⊗ σS(h^{(1)})`, with inverse
/// `Ŝ⁻¹(m⊗h) = h^{(1)}m ⊗ S⁻¹(h^{(2)})σ`; the compositions are verified.
pub fn hat_antipode(
    hopf: &HopfAlgebra,
    module: &HModule,
    sigma: &SparseVec,
) -> Result<(SparseMatrix, SparseMatrix)> {
    if !is_grouplike(hopf, sigma) {
        return Err(Error::structure("σ is not grouplike"));
    }
    let dm = module.dim();
    let dh = hopf.dim();
    let field = hopf.field;
    let dims = [dm, dh];
    let hat = operator_from_tuples(&dims, dm * dh, field, |t| {
        let (m, h) = (t[0], t[1]);
        let mut out = Vec::new();
        for ((h1, h2), c) in hopf.comult_of(h) {
            let acted = module.act(h2, m);
            let s_leg = hopf.mul_vec(sigma, hopf.antipode.column(h1));
            for (mi, cm) in acted.iter() {
                for (hi, ch) in s_leg.iter() {
                    out.push((mi * dh + hi, c.mul(cm).mul(ch)));
                }
            }
        }
        SparseVec::from_entries(out)
    })?;
    let hat_inv = operator_from_tuples(&dims, dm * dh, field, |t| {
        let (m, h) = (t[0], t[1]);
        let mut out = Vec::new();
        for ((h1, h2), c) in hopf.comult_of(h) {
            let acted = module.act(h1, m);
            let s_leg = hopf.mul_vec(hopf.antipode_inv.column(h2), sigma);
            for (mi, cm) in acted.iter() {
                for (hi, ch) in s_leg.iter() {
                    out.push((mi * dh + hi, c.mul(cm).mul(ch)));
                }
            }
        }
        SparseVec::from_entries(out)
    })?;
    if !hat.mul(&hat_inv)?.is_identity() || !hat_inv.mul(&hat)?.is_identity() {
        return Err(Error::structure(
            "twisted antipode inverse check failed (is (M,σ) a matched pair?)",
        ));
    }
    Ok((hat, hat_inv))
}

/// Matched-pair-in-involution certificate.
#[derive(Debug, Clone)]
pub struct MatchedPairCertificate {
    pub sigma_fixes_module: bool,
    pub involution: bool,
    pub witnesses: Vec<String>,
}

impl MatchedPairCertificate {
    pub fn compatible(&self) -> bool {
        self.sigma_fixes_module && self.involution
    }
}

/// Check `σm = m` and `Ŝ² = id` exactly on the full basis.
pub fn check_matched_pair(
    hopf: &HopfAlgebra,
    module: &HModule,
    sigma: &SparseVec,
) -> Result<MatchedPairCertificate> {
    if !is_grouplike(hopf, sigma) {
        return Err(Error::structure("σ is not grouplike"));
    }
    let dm = module.dim();
    let field = hopf.field;
    let mut witnesses = Vec::new();
    let mut sigma_fixes = true;
    for m in 0..dm {
        let acted = module.act_vec(sigma, &SparseVec::unit(m, field));
        if acted != SparseVec::unit(m, field) {
            sigma_fixes = false;
            witnesses.push(format!("σ·{} ≠ {}", module.space.label(m), module.space.label(m)));
        }
    }
    // Ŝ without the invertibility guard (the pair may be incompatible)
    let dh = hopf.dim();
    let dims = [dm, dh];
    let hat = operator_from_tuples(&dims, dm * dh, field, |t| {
        let (m, h) = (t[0], t[1]);
        let mut out = Vec::new();
        for ((h1, h2), c) in hopf.comult_of(h) {
            let acted = module.act(h2, m);
            let s_leg = hopf.mul_vec(sigma, hopf.antipode.column(h1));
            for (mi, cm) in acted.iter() {
                for (hi, ch) in s_leg.iter() {
                    out.push((mi * dh + hi, c.mul(cm).mul(ch)));
                }
            }
        }
        SparseVec::from_entries(out)
    })?;
    let square = hat.mul(&hat)?;
    let involution = square.is_identity();
    if !involution {
        for j in 0..dm * dh {
            if square.column(j) != &SparseVec::unit(j, field) {
                witnesses.push(format!(
                    "Ŝ² moves basis vector {}⊗{}",
                    module.space.label(j / dh),
                    hopf.space.label(j % dh)
                ));
                break;
            }
        }
    }
    Ok(MatchedPairCertificate {
        sigma_fixes_module: sigma_fixes,
        involution,
        witnesses,
    })
}

/// The Lemma identity of σ-compatible triples, checked on all basis pairs:
/// `a^{(-1)} σ S(a^{(-3)}) ⊗ a^{(-2)} m ⊗ a^{(0)} = σ ⊗ a^{(-1)} m ⊗ a^{(0)}`.
pub fn sigma_compatibility_identity(t: &HopfTriple) -> Result<bool> {
    let h = &t.hopf;
    let dm = t.module.dim();
    let da = t.algebra.dim();
    let field = h.field;
    let enc = |hh: usize, m: usize, a: usize| (hh * dm + m) * da + a;
    for a in 0..da {
        for m in 0..dm {
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for ((hpart, a0), c) in t.algebra.coact(a) {
                // lhs: split hpart into three legs (1)=a^{(-3)}, (2)=a^{(-2)}, (3)=a^{(-1)}
                for (legs, c2) in h.iterated_comult(hpart, 3) {
                    let (l1, l2, l3) = (legs[0], legs[1], legs[2]);
                    let hleg = h.mul_vec(
                        &h.mul_vec(&SparseVec::unit(l3, field), &t.sigma),
                        h.antipode.column(l1),
                    );
                    let mleg = t.module.act(l2, m);
                    for (hi, ch) in hleg.iter() {
                        for (mi, cm) in mleg.iter() {
                            lhs.push((enc(*hi, *mi, a0), c.mul(&c2).mul(ch).mul(cm)));
                        }
                    }
                }
                // rhs: σ ⊗ hpart·m ⊗ a0
                for (si, cs) in t.sigma.iter() {
                    for (mi, cm) in t.module.act(hpart, m).iter() {
                        rhs.push((enc(*si, *mi, a0), c.mul(cs).mul(cm)));
                    }
                }
            }
            if SparseVec::from_entries(lhs) != SparseVec::from_entries(rhs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct ChainOps {
    space: IndexedSpace,
    faces: Vec<SparseMatrix>,
    degeneracies: Vec<SparseMatrix>,
    cyclic: SparseMatrix,
}

/// Operators (faces, degeneracies, cyclic) of the paracyclic chain module
/// `C_n(A,M) = M ⊗ A^{⊗(n+1)}` at one degree.
fn chain_ops(t: &HopfTriple, n: usize, top: bool) -> Result<ChainOps> {
    let dm = t.module.dim();
    let da = t.algebra.dim();
    let field = t.hopf.field;
    let mut dims = vec![da; n + 2];
    dims[0] = dm;
    let mut target = vec![da; n + 1];
    target[0] = dm;
    let mut up = vec![da; n + 3];
    up[0] = dm;
    let alg = &t.algebra.algebra;
    let space = IndexedSpace::numbered(format!("C{n}"), total_dim(&dims));
    let faces = if n == 0 {
        Vec::new()
    } else {
        (0..=n)
            .map(|i| {
                operator_from_tuples(&dims, total_dim(&target), field, |tu| {
                    let m = tu[0];
                    let a = &tu[1..];
                    if i < n {
                        let mut out = Vec::new();
                        for (p, c) in alg.product(a[i], a[i + 1]).iter() {
                            let mut u = tu.to_vec();
                            u.remove(i + 2);
                            u[i + 1] = *p;
                            out.push((encode_index(&target, &u), c.clone()));
                        }
                        SparseVec::from_entries(out)
                    } else {
                        // a_n^{(-1)} m ⊗ a_n^{(0)} a_0 ⊗ a_1 ... a_{n-1}
                        let mut out = Vec::new();
                        for ((h, a0n), c) in t.algebra.coact(a[n]) {
                            for (mi, cm) in t.module.act(h, m).iter() {
                                for (p, cp) in alg.product(a0n, a[0]).iter() {
                                    let mut u = Vec::with_capacity(n + 1);
                                    u.push(*mi);
                                    u.push(*p);
                                    u.extend_from_slice(&a[1..n]);
                                    out.push((
                                        encode_index(&target, &u),
                                        c.mul(cm).mul(cp),
                                    ));
                                }
                            }
                        }
                        SparseVec::from_entries(out)
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?
    };
    let degeneracies = if top {
        Vec::new()
    } else {
        (0..=n)
            .map(|i| {
                operator_from_tuples(&dims, total_dim(&up), field, |tu| {
                    let mut out = Vec::new();
                    for (one, c) in alg.unit.iter() {
                        let mut u = tu.to_vec();
                        u.insert(i + 2, *one);
                        out.push((encode_index(&up, &u), c.clone()));
                    }
                    SparseVec::from_entries(out)
                })
            })
            .collect::<Result<Vec<_>>>()?
    };
    let cyclic = operator_from_tuples(&dims, total_dim(&dims), field, |tu| {
        let m = tu[0];
        let a = &tu[1..];
        let mut out = Vec::new();
        for ((h, a0n), c) in t.algebra.coact(a[n]) {
            for (mi, cm) in t.module.act(h, m).iter() {
                let mut u = Vec::with_capacity(n + 2);
                u.push(*mi);
                u.push(a0n);
                u.extend_from_slice(&a[..n]);
                out.push((encode_index(&dims, &u), c.mul(cm)));
            }
        }
        SparseVec::from_entries(out)
    })?;
    Ok(ChainOps {
        space,
        faces,
        degeneracies,
        cyclic,
    })
}

/// The paracyclic chain module `{C_n(A,M) = M ⊗ A^{⊗(n+1)}}`: faces
/// multiply adjacent legs (the last one through the coaction twist),
/// degeneracies insert the unit, the cyclic operator rotates with the twist.
pub fn build_chain_paracyclic(
    t: &HopfTriple,
    n_max: usize,
    budget: usize,
) -> Result<CyclicModuleData> {
    let dm = t.module.dim();
    let da = t.algebra.dim();
    let mut degrees = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        check_budget(dm * da.pow(n as u32 + 1), budget)?;
        let ops = chain_ops(t, n, n == n_max)?;
        degrees.push(DegreeData {
            space: ops.space,
            faces: ops.faces,
            degeneracies: ops.degeneracies,
            cyclic: ops.cyclic,
        });
    }
    Ok(CyclicModuleData {
        name: format!("C({},{})", t.algebra.algebra.space.name, t.module.space.name),
        field: t.hopf.field,
        direction: Direction::Homological,
        degrees,
        status: None,
    })
}

/// The chain coaction `ρ(m⊗a_0⊗...⊗a_n) = a_0^{(-1)}...a_n^{(-1)} ⊗ m⊗a_0^{(0)}⊗...`.
pub fn chain_coaction(t: &HopfTriple, n: usize) -> Result<SparseMatrix> {
    let dm = t.module.dim();
    let da = t.algebra.dim();
    let dh = t.hopf.dim();
    let field = t.hopf.field;
    let mut dims = vec![da; n + 2];
    dims[0] = dm;
    let chain_dim = total_dim(&dims);
    operator_from_tuples(&dims, dh * chain_dim, field, |tu| {
        let a = &tu[1..];
        // expand leg by leg, multiplying H-parts
        let mut acc: Vec<(SparseVec, Vec<usize>, ExactScalar)> =
            vec![(t.hopf.unit.clone(), Vec::new(), field.one())];
        for &ai in a {
            let coact = t.algebra.coact(ai);
            let mut next = Vec::new();
            for (hvec, legs, c) in &acc {
                for ((h, a0), c2) in &coact {
                    let hv = t.hopf.mul_vec(hvec, &SparseVec::unit(*h, field));
                    let mut l = legs.clone();
                    l.push(*a0);
                    next.push((hv, l, c.mul(c2)));
                }
            }
            acc = next;
        }
        let mut out = Vec::new();
        for (hvec, legs, c) in acc {
            let mut u = Vec::with_capacity(n + 2);
            u.push(tu[0]);
            u.extend_from_slice(&legs);
            let chain_idx = encode_index(&dims, &u);
            for (hi, ch) in hvec.iter() {
                out.push((hi * chain_dim + chain_idx, c.mul(ch)));
            }
        }
        SparseVec::from_entries(out)
    })
}

/// Result of restricting the chain module to coinvariants.
#[derive(Debug)]
pub struct CoinvariantChain {
    /// Kernel of `ρ - σ⊗(-)` per degree.
    pub subspaces: Vec<Subspace>,
    /// The restricted module when every operator preserves coinvariants.
    pub module: Option<CyclicModuleData>,
    pub restriction_failures: Vec<String>,
}

impl CoinvariantChain {
    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(|s| s.dim()).collect()
    }
}

/// Compute the coinvariant subspaces `ker(ρ - σ⊗(-))` per degree and restrict
/// all operators of the paracyclic chain module to them.
///
/// For compatible pairs every operator must restrict (the induced module is
/// cyclic); a failure there is reported as an error. For incompatible pairs
/// the failures are recorded and the module is omitted.
pub fn coinvariant_chain_module(
    t: &HopfTriple,
    n_max: usize,
    budget: usize,
    expect_compatible: bool,
) -> Result<CoinvariantChain> {
    let ambient = build_chain_paracyclic(t, n_max, budget)?;
    let dh = t.hopf.dim();
    let field = t.hopf.field;
    let mut subspaces = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let rho = chain_coaction(t, n)?;
        let chain_dim = ambient.dim(n);
        // σ ⊗ x as a matrix C_n -> H ⊗ C_n
        let sigma_tensor = SparseMatrix::from_fn(dh * chain_dim, chain_dim, field, |x| {
            SparseVec::from_entries(
                t.sigma
                    .iter()
                    .map(|(s, c)| (s * chain_dim + x, c.clone()))
                    .collect(),
            )
        })?;
        let difference = rho.sub(&sigma_tensor)?;
        subspaces.push(difference.kernel());
    }
    restrict_to_subspaces(&ambient, &subspaces, expect_compatible, "coinvariant")
}

/// Conjugate all operators of `ambient` into the given subspaces.
pub fn restrict_to_subspaces(
    ambient: &CyclicModuleData,
    subspaces: &[Subspace],
    expect_all_restrict: bool,
    what: &str,
) -> Result<CoinvariantChain> {
    let n_max = ambient.n_max();
    let field = ambient.field;
    let mut failures = Vec::new();
    let mut degrees = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let sub = &subspaces[n];
        let restrict = |op: &SparseMatrix,
                            target: &Subspace,
                            name: String,
                            failures: &mut Vec<String>|
         -> SparseMatrix {
            let mut cols = Vec::with_capacity(sub.dim());
            for j in 0..sub.dim() {
                let image = op.apply(sub.basis_vector(j));
                match target.coordinates(&image) {
                    Some(c) => cols.push(c),
                    None => {
                        failures.push(name.clone());
                        cols.push(SparseVec::zero());
                    }
                }
            }
            SparseMatrix::from_columns(target.dim(), field, cols).expect("restricted operator")
        };
        let faces = ambient.degrees[n]
            .faces
            .iter()
            .enumerate()
            .map(|(i, f)| {
                restrict(
                    f,
                    &subspaces[n - 1],
                    format!("face d{i} at degree {n} does not preserve {what}s"),
                    &mut failures,
                )
            })
            .collect();
        let degeneracies = ambient.degrees[n]
            .degeneracies
            .iter()
            .enumerate()
            .map(|(i, s)| {
                restrict(
                    s,
                    &subspaces[n + 1],
                    format!("degeneracy s{i} at degree {n} does not preserve {what}s"),
                    &mut failures,
                )
            })
            .collect();
        let cyclic = restrict(
            &ambient.degrees[n].cyclic,
            sub,
            format!("cyclic operator at degree {n} does not preserve {what}s"),
            &mut failures,
        );
        degrees.push(DegreeData {
            space: IndexedSpace::numbered(format!("{}^inv{n}", ambient.name), sub.dim()),
            faces,
            degeneracies,
            cyclic,
        });
    }
    failures.sort();
    failures.dedup();
    if !failures.is_empty() {
        if expect_all_restrict {
            return Err(Error::structure(format!(
                "operator failed to restrict for a compatible pair: {}",
                failures.join("; ")
            )));
        }
        return Ok(CoinvariantChain {
            subspaces: subspaces.to_vec(),
            module: None,
            restriction_failures: failures,
        });
    }
    let mut module = CyclicModuleData {
        name: format!("{}^{what}", ambient.name),
        field,
        direction: ambient.direction,
        degrees,
        status: None,
    };
    module.certify()?;
    Ok(CoinvariantChain {
        subspaces: subspaces.to_vec(),
        module: Some(module),
        restriction_failures: Vec::new(),
    })
}

// ---------------------------------------------------------------------------
// reduced model on M ⊗ H^{⊗n}
// ---------------------------------------------------------------------------

/// The reduced invariant model: operators on `M ⊗ H^{⊗n}`.
pub fn reduced_model(
    hopf: &HopfAlgebra,
    module: &HModule,
    sigma: &SparseVec,
    n_max: usize,
    budget: usize,
) -> Result<CyclicModuleData> {
    if !is_grouplike(hopf, sigma) {
        return Err(Error::structure("σ is not grouplike"));
    }
    let dm = module.dim();
    let dh = hopf.dim();
    let field = hopf.field;
    let mut degrees = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut dims = vec![dh; n + 1];
        dims[0] = dm;
        check_budget(total_dim(&dims), budget)?;
        let space = {
            let base = tensor_power_space(&hopf.space, 1);
            let mut s = module.space.clone();
            for _ in 0..n {
                s = s.tensor(&base);
            }
            s
        };
        let faces = if n == 0 {
            Vec::new()
        } else {
            let tdims: Vec<usize> = if n == 1 {
                vec![dm]
            } else {
                let mut v = vec![dh; n];
                v[0] = dm;
                v
            };
            (0..=n)
                .map(|i| {
                    operator_from_tuples(&dims, total_dim(&tdims), field, |tu| {
                        let m = tu[0];
                        let h = &tu[1..];
                        if i == 0 {
                            // ε(h_1) m ⊗ h_2 ⊗ ... ⊗ h_n
                            let e = hopf.counit_of(h[0]);
                            if e.is_zero() {
                                return SparseVec::zero();
                            }
                            let mut u = Vec::with_capacity(n);
                            u.push(m);
                            u.extend_from_slice(&h[1..]);
                            SparseVec::from_entries(vec![(encode_index(&tdims, &u), e)])
                        } else if i < n {
                            // merge h_i h_{i+1}
                            let mut out = Vec::new();
                            for (p, c) in hopf.product(h[i - 1], h[i]).iter() {
                                let mut u = tu.to_vec();
                                u.remove(i + 1);
                                u[i] = *p;
                                out.push((encode_index(&tdims, &u), c.clone()));
                            }
                            SparseVec::from_entries(out)
                        } else {
                            // h_n m ⊗ h_1 ⊗ ... ⊗ h_{n-1}
                            let mut out = Vec::new();
                            for (mi, cm) in module.act(h[n - 1], m).iter() {
                                let mut u = Vec::with_capacity(n);
                                u.push(*mi);
                                u.extend_from_slice(&h[..n - 1]);
                                out.push((encode_index(&tdims, &u), cm.clone()));
                            }
                            SparseVec::from_entries(out)
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        let degeneracies = if n == n_max {
            Vec::new()
        } else {
            let mut udims = vec![dh; n + 2];
            udims[0] = dm;
            (0..=n)
                .map(|i| {
                    operator_from_tuples(&dims, total_dim(&udims), field, |tu| {
                        // σ_0 inserts 1 before h_1; σ_i inserts after h_i
                        let mut out = Vec::new();
                        for (one, c) in hopf.unit.iter() {
                            let mut u = tu.to_vec();
                            u.insert(i + 1, *one);
                            out.push((encode_index(&udims, &u), c.clone()));
                        }
                        SparseVec::from_entries(out)
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        let cyclic = operator_from_tuples(&dims, total_dim(&dims), field, |tu| {
            if n == 0 {
                return SparseVec::unit(tu[0], field);
            }
            let m = tu[0];
            let h = &tu[1..];
            // τ(m⊗h_1⊗...⊗h_n) = h_n^{(2)} m ⊗ σS(h_1^{(1)}...h_n^{(1)}) ⊗ h_1^{(2)} ⊗ ... ⊗ h_{n-1}^{(2)}
            let mut splits: Vec<Vec<((usize, usize), ExactScalar)>> = Vec::with_capacity(n);
            for &hi in h {
                splits.push(hopf.comult_of(hi));
            }
            let mut out = Vec::new();
            let mut stack: Vec<(usize, SparseVec, Vec<usize>, ExactScalar)> = vec![(
                0,
                hopf.unit.clone(), // product of first legs
                Vec::new(),        // second legs
                field.one(),
            )];
            while let Some((k, first_prod, seconds, coeff)) = stack.pop() {
                if k == n {
                    // assemble: act h_n^{(2)} (= seconds[n-1]) on m, S-leg, legs
                    let s_leg = hopf.mul_vec(sigma, &hopf.antipode.apply(&first_prod));
                    let acted = module.act(seconds[n - 1], m);
                    for (mi, cm) in acted.iter() {
                        for (si, cs) in s_leg.iter() {
                            let mut u = Vec::with_capacity(n + 1);
                            u.push(*mi);
                            u.push(*si);
                            u.extend_from_slice(&seconds[..n - 1]);
                            out.push((
                                encode_index(&dims, &u),
                                coeff.mul(cm).mul(cs),
                            ));
                        }
                    }
                    continue;
                }
                for ((l1, l2), c) in &splits[k] {
                    let fp = hopf.mul_vec(&first_prod, &SparseVec::unit(*l1, field));
                    let mut sc = seconds.clone();
                    sc.push(*l2);
                    stack.push((k + 1, fp, sc, coeff.mul(c)));
                }
            }
            SparseVec::from_entries(out)
        })?;
        degrees.push(DegreeData {
            space,
            faces,
            degeneracies,
            cyclic,
        });
    }
    Ok(CyclicModuleData {
        name: format!("reduced({},{})", hopf.name, module.space.name),
        field,
        direction: Direction::Homological,
        degrees,
        status: None,
    })
}

/// The identification maps between the reduced model and the coinvariant
/// subspace of `C_n(H,M)`:
/// `η(m⊗h_1⊗...⊗h_n) = m ⊗ σS(h_1^{(1)}...h_n^{(1)}) ⊗ h_1^{(2)} ⊗ ... ⊗ h_n^{(2)}`
/// and `θ(m⊗a_0⊗...⊗a_n) = ε(a_0) m⊗a_1⊗...⊗a_n`.
pub fn reduced_identification(
    hopf: &HopfAlgebra,
    module: &HModule,
    sigma: &SparseVec,
    n: usize,
) -> Result<(SparseMatrix, SparseMatrix)> {
    let dm = module.dim();
    let dh = hopf.dim();
    let field = hopf.field;
    let mut red_dims = vec![dh; n + 1];
    red_dims[0] = dm;
    let mut amb_dims = vec![dh; n + 2];
    amb_dims[0] = dm;
    let eta = operator_from_tuples(&red_dims, total_dim(&amb_dims), field, |tu| {
        let m = tu[0];
        let h = &tu[1..];
        let mut out = Vec::new();
        let mut stack: Vec<(usize, SparseVec, Vec<usize>, ExactScalar)> =
            vec![(0, hopf.unit.clone(), Vec::new(), field.one())];
        while let Some((k, first_prod, seconds, coeff)) = stack.pop() {
            if k == n {
                let s_leg = hopf.mul_vec(sigma, &hopf.antipode.apply(&first_prod));
                for (si, cs) in s_leg.iter() {
                    let mut u = Vec::with_capacity(n + 2);
                    u.push(m);
                    u.push(*si);
                    u.extend_from_slice(&seconds);
                    out.push((encode_index(&amb_dims, &u), coeff.mul(cs)));
                }
                continue;
            }
            for ((l1, l2), c) in hopf.comult_of(h[k]) {
                let fp = hopf.mul_vec(&first_prod, &SparseVec::unit(l1, field));
                let mut sc = seconds.clone();
                sc.push(l2);
                stack.push((k + 1, fp, sc, coeff.mul(&c)));
            }
        }
        SparseVec::from_entries(out)
    })?;
    let theta = operator_from_tuples(&amb_dims, total_dim(&red_dims), field, |tu| {
        let e = hopf.counit_of(tu[1]);
        if e.is_zero() {
            return SparseVec::zero();
        }
        let mut u = Vec::with_capacity(n + 1);
        u.push(tu[0]);
        u.extend_from_slice(&tu[2..]);
        SparseVec::from_entries(vec![(encode_index(&red_dims, &u), e)])
    })?;
    Ok((eta, theta))
}

/// Report of the reduced-model comparison (Prop. "are isomorphic").
#[derive(Debug)]
pub struct ReducedComparison {
    pub theta_eta_identity: bool,
    pub eta_lands_in_coinvariants: bool,
    pub eta_theta_identity_on_coinvariants: bool,
    pub operators_intertwine: Vec<String>,
    pub coinvariant_dims: Vec<usize>,
    pub reduced_dims: Vec<usize>,
}

impl ReducedComparison {
    pub fn ok(&self) -> bool {
        self.theta_eta_identity
            && self.eta_lands_in_coinvariants
            && self.eta_theta_identity_on_coinvariants
            && self.operators_intertwine.is_empty()
            && self.coinvariant_dims == self.reduced_dims
    }
}

/// Verify that `η/θ` identify the reduced model with the coinvariant
/// subspace construction degreewise, intertwining every operator.
pub fn compare_reduced_with_coinvariants(
    hopf: &HopfAlgebra,
    module: &HModule,
    sigma: &SparseVec,
    n_max: usize,
    budget: usize,
) -> Result<ReducedComparison> {
    let t = HopfTriple::new(
        crate::module::self_comodule_algebra(hopf),
        hopf.clone(),
        module.clone(),
        sigma.clone(),
    )?;
    let ambient = build_chain_paracyclic(&t, n_max, budget)?;
    let coinv = coinvariant_chain_module(&t, n_max, budget, true)?;
    let reduced = reduced_model(hopf, module, sigma, n_max, budget)?;
    let field = hopf.field;
    let dh = hopf.dim();

    let mut theta_eta = true;
    let mut eta_in_coinv = true;
    let mut eta_theta = true;
    let mut intertwine = Vec::new();

    let mut etas = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let (eta, theta) = reduced_identification(hopf, module, sigma, n)?;
        if !theta.mul(&eta)?.is_identity() {
            theta_eta = false;
        }
        // η image is coinvariant
        let rho = chain_coaction(&t, n)?;
        let chain_dim = ambient.dim(n);
        let sigma_tensor = SparseMatrix::from_fn(dh * chain_dim, chain_dim, field, |x| {
            SparseVec::from_entries(
                sigma
                    .iter()
                    .map(|(s, c)| (s * chain_dim + x, c.clone()))
                    .collect(),
            )
        })?;
        if !rho.sub(&sigma_tensor)?.mul(&eta)?.is_zero() {
            eta_in_coinv = false;
        }
        // ηθ = id on the coinvariant subspace
        let etheta = eta.mul(&theta)?;
        for j in 0..coinv.subspaces[n].dim() {
            let v = coinv.subspaces[n].basis_vector(j);
            if &etheta.apply(v) != v {
                eta_theta = false;
                break;
            }
        }
        etas.push(eta);
    }
    // operator equivariance: op_ambient ∘ η = η ∘ op_reduced
    for n in 0..=n_max {
        for (i, f) in ambient.degrees[n].faces.iter().enumerate() {
            let lhs = f.mul(&etas[n])?;
            let rhs = etas[n - 1].mul(&reduced.degrees[n].faces[i])?;
            if lhs != rhs {
                intertwine.push(format!("face d{i} at degree {n}"));
            }
        }
        for (i, s) in ambient.degrees[n].degeneracies.iter().enumerate() {
            let lhs = s.mul(&etas[n])?;
            let rhs = etas[n + 1].mul(&reduced.degrees[n].degeneracies[i])?;
            if lhs != rhs {
                intertwine.push(format!("degeneracy s{i} at degree {n}"));
            }
        }
        let lhs = ambient.degrees[n].cyclic.mul(&etas[n])?;
        let rhs = etas[n].mul(&reduced.degrees[n].cyclic)?;
        if lhs != rhs {
            intertwine.push(format!("cyclic operator at degree {n}"));
        }
    }
    Ok(ReducedComparison {
        theta_eta_identity: theta_eta,
        eta_lands_in_coinvariants: eta_in_coinv,
        eta_theta_identity_on_coinvariants: eta_theta,
        operators_intertwine: intertwine,
        coinvariant_dims: coinv.dims(),
        reduced_dims: (0..=n_max).map(|n| reduced.dim(n)).collect(),
    })
}

// ---------------------------------------------------------------------------
// averaging splitting
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct AveragingReport {
    pub trace_sigma: ExactScalar,
    pub gamma_lands_in_coinvariants: bool,
    pub gamma_is_cyclic_map: bool,
    pub gamma_i_is_scalar: bool,
    pub direct_summand: bool,
}

/// The averaging operator of a σ-invariant trace on the triple `(A, H, k_ε)`:
/// `γ(m⊗a_0⊗...⊗a_n) = Tr(a_0^{(-1)}...a_n^{(-1)}) m⊗a_0^{(0)}⊗...⊗a_n^{(0)}`,
/// with `γ∘i = Tr(σ)·id` on coinvariants.
pub fn averaging_splitting(
    t: &HopfTriple,
    trace: &SparseMatrix,
    n_max: usize,
    budget: usize,
) -> Result<AveragingReport> {
    if t.module.dim() != 1 {
        return Err(Error::precondition(
            "averaging splitting needs the one-dimensional module k_ε",
        ));
    }
    // the trace must be σ-invariant
    let traces = crate::hopf::sigma_invariant_traces(&t.hopf, &t.sigma)?;
    let trace_vec = SparseVec::from_entries(
        (0..t.hopf.dim())
            .map(|i| (i, trace.get(0, i)))
            .collect(),
    );
    if !traces.contains(&trace_vec) {
        return Err(Error::structure("trace is not σ-invariant"));
    }
    let ambient = build_chain_paracyclic(t, n_max, budget)?;
    let coinv = coinvariant_chain_module(t, n_max, budget, true)?;
    let field = t.hopf.field;
    let dh = t.hopf.dim();
    let da = t.algebra.dim();
    // γ per degree
    let mut gammas = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut dims = vec![da; n + 2];
        dims[0] = 1;
        let gamma = operator_from_tuples(&dims, total_dim(&dims), field, |tu| {
            let a = &tu[1..];
            let mut acc: Vec<(SparseVec, Vec<usize>, ExactScalar)> =
                vec![(t.hopf.unit.clone(), Vec::new(), field.one())];
            for &ai in a {
                let coact = t.algebra.coact(ai);
                let mut next = Vec::new();
                for (hvec, legs, c) in &acc {
                    for ((h, a0), c2) in &coact {
                        let hv = t.hopf.mul_vec(hvec, &SparseVec::unit(*h, field));
                        let mut l = legs.clone();
                        l.push(*a0);
                        next.push((hv, l, c.mul(c2)));
                    }
                }
                acc = next;
            }
            let mut out = Vec::new();
            for (hvec, legs, c) in acc {
                let mut tr = field.zero();
                for (hi, ch) in hvec.iter() {
                    tr = tr.add(&trace.get(0, *hi).mul(ch));
                }
                if tr.is_zero() {
                    continue;
                }
                let mut u = Vec::with_capacity(n + 2);
                u.push(tu[0]);
                u.extend_from_slice(&legs);
                out.push((encode_index(&dims, &u), c.mul(&tr)));
            }
            SparseVec::from_entries(out)
        })?;
        gammas.push(gamma);
    }
    // γ lands in coinvariants
    let mut lands = true;
    for n in 0..=n_max {
        let rho = chain_coaction(t, n)?;
        let chain_dim = ambient.dim(n);
        let sigma_tensor = SparseMatrix::from_fn(dh * chain_dim, chain_dim, field, |x| {
            SparseVec::from_entries(
                t.sigma
                    .iter()
                    .map(|(s, c)| (s * chain_dim + x, c.clone()))
                    .collect(),
            )
        })?;
        if !rho.sub(&sigma_tensor)?.mul(&gammas[n])?.is_zero() {
            lands = false;
        }
    }
    // γ commutes with the cyclic operators
    let mut cyclic_map = true;
    for n in 0..=n_max {
        for (i, f) in ambient.degrees[n].faces.iter().enumerate() {
            if f.mul(&gammas[n])? != gammas[n - 1].mul(f)? {
                cyclic_map = false;
                let _ = i;
            }
        }
        for s in &ambient.degrees[n].degeneracies {
            if s.mul(&gammas[n])? != gammas[n + 1].mul(s)? {
                cyclic_map = false;
            }
        }
        if ambient.degrees[n].cyclic.mul(&gammas[n])?
            != gammas[n].mul(&ambient.degrees[n].cyclic)?
        {
            cyclic_map = false;
        }
    }
    // γ ∘ i = Tr(σ) id on coinvariants
    let mut tr_sigma = field.zero();
    for (i, c) in t.sigma.iter() {
        tr_sigma = tr_sigma.add(&trace.get(0, *i).mul(c));
    }
    let mut gamma_i_scalar = true;
    for n in 0..=n_max {
        for j in 0..coinv.subspaces[n].dim() {
            let v = coinv.subspaces[n].basis_vector(j);
            if gammas[n].apply(v) != SparseVec::from_entries(v.scale(&tr_sigma).0) {
                gamma_i_scalar = false;
            }
        }
    }
    Ok(AveragingReport {
        trace_sigma: tr_sigma.clone(),
        gamma_lands_in_coinvariants: lands,
        gamma_is_cyclic_map: cyclic_map,
        gamma_i_is_scalar: gamma_i_scalar,
        direct_summand: gamma_i_scalar && lands && cyclic_map && !tr_sigma.is_zero(),
    })
}

// ---------------------------------------------------------------------------
// Morita invariance
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct MoritaReport {
    pub hc_base: Vec<usize>,
    pub hc_matrix: Vec<usize>,
    pub equal: bool,
}

/// Compare the invariant cyclic homology of `(H, H, M)` with that of
/// `(M_k(H), H, M)`, computed independently: the base side through the
/// reduced model, the matrix side through the generic coinvariant kernel.
pub fn morita_compare(
    hopf: &HopfAlgebra,
    module: &HModule,
    sigma: &SparseVec,
    k: usize,
    n_max: usize,
    budget: usize,
) -> Result<MoritaReport> {
    let pair = check_matched_pair(hopf, module, sigma)?;
    if !pair.compatible() {
        return Err(Error::precondition(
            "Morita comparison needs a matched pair in involution",
        ));
    }
    let mut base = reduced_model(hopf, module, sigma, n_max, budget)?;
    base.certify()?;
    let hc_base = cyclic_homology(&base)?;
    let mk = matrix_comodule_algebra(hopf, k)?;
    let t = HopfTriple::new(mk, hopf.clone(), module.clone(), sigma.clone())?;
    let coinv = coinvariant_chain_module(&t, n_max, budget, true)?;
    let module_mk = coinv
        .module
        .expect("compatible pair restricts");
    let hc_matrix = cyclic_homology(&module_mk)?;
    let equal = hc_base == hc_matrix;
    Ok(MoritaReport {
        hc_base,
        hc_matrix,
        equal,
    })
}

// ---------------------------------------------------------------------------
// graded backend (Example: G-graded algebras as kG-comodule algebras)
// ---------------------------------------------------------------------------

/// A module over the grading group, given by the action of the generator
/// (for the integers) or of every element (finite groups).
#[derive(Debug, Clone)]
pub struct GradedGroupModule {
    pub space: IndexedSpace,
    /// Action of the generator `1` for the integers; of element `g` the
    /// matrix is the `g`-th entry for finite groups.
    pub actions: Vec<SparseMatrix>,
    pub group: WeightGroup,
}

impl GradedGroupModule {
    pub fn trivial(field: crate::scalar::Field, group: WeightGroup) -> GradedGroupModule {
        let space = IndexedSpace::new("k", vec!["m".to_string()]).expect("1-dim space");
        let actions = match &group {
            WeightGroup::Integers => vec![SparseMatrix::identity(1, field)],
            WeightGroup::Finite(t) => vec![SparseMatrix::identity(1, field); t.order()],
        };
        GradedGroupModule {
            space,
            actions,
            group,
        }
    }

    pub fn act_weight(&self, w: i64) -> Result<SparseMatrix> {
        match &self.group {
            WeightGroup::Integers => {
                let gen = &self.actions[0];
                if w >= 0 {
                    gen.pow(w as usize)
                } else {
                    let inv = gen
                        .solve_inverse()
                        .ok_or_else(|| Error::structure("generator action not invertible"))?;
                    inv.pow((-w) as usize)
                }
            }
            WeightGroup::Finite(_) => Ok(self.actions[w as usize].clone()),
        }
    }
}

/// A Hopf triple over a grading group, with the comodule algebra given by
/// weights (Example: a G-graded algebra is a kG-comodule algebra).
#[derive(Debug, Clone)]
pub struct GradedTriple {
    pub algebra: ComoduleAlgebra,
    pub module: GradedGroupModule,
    pub sigma_weight: i64,
}

impl GradedTriple {
    fn backend(&self) -> Result<&GradedBackend> {
        self.algebra
            .graded
            .as_ref()
            .ok_or_else(|| Error::precondition("graded triple needs a graded backend"))
    }
}

/// The ambient paracyclic chain module of a graded triple; the coaction
/// twist acts through the weight of the wrapped leg.
pub fn build_graded_chain_paracyclic(
    t: &GradedTriple,
    n_max: usize,
    budget: usize,
) -> Result<CyclicModuleData> {
    let backend = t.backend()?;
    let weights = backend.weights.clone();
    let alg = &t.algebra.algebra;
    let field = t.algebra.field;
    let dm = t.module.space.dim();
    let da = alg.dim();
    let mut degrees = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut dims = vec![da; n + 2];
        dims[0] = dm;
        check_budget(total_dim(&dims), budget)?;
        let mut target = vec![da; n + 1];
        target[0] = dm;
        let mut up = vec![da; n + 3];
        up[0] = dm;
        let space = IndexedSpace::numbered(format!("gradedC{n}"), total_dim(&dims));
        let faces = if n == 0 {
            Vec::new()
        } else {
            (0..=n)
                .map(|i| -> Result<SparseMatrix> {
                    operator_from_tuples(&dims, total_dim(&target), field, |tu| {
                        let m = tu[0];
                        let a = &tu[1..];
                        if i < n {
                            let mut out = Vec::new();
                            for (p, c) in alg.product(a[i], a[i + 1]).iter() {
                                let mut u = tu.to_vec();
                                u.remove(i + 2);
                                u[i + 1] = *p;
                                out.push((encode_index(&target, &u), c.clone()));
                            }
                            SparseVec::from_entries(out)
                        } else {
                            let act = t
                                .module
                                .act_weight(weights[a[n]])
                                .expect("weight action");
                            let mut out = Vec::new();
                            for (mi, cm) in act.column(m).iter() {
                                for (p, cp) in alg.product(a[n], a[0]).iter() {
                                    let mut u = Vec::with_capacity(n + 1);
                                    u.push(*mi);
                                    u.push(*p);
                                    u.extend_from_slice(&a[1..n]);
                                    out.push((encode_index(&target, &u), cm.mul(cp)));
                                }
                            }
                            SparseVec::from_entries(out)
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        let degeneracies = if n == n_max {
            Vec::new()
        } else {
            (0..=n)
                .map(|i| {
                    operator_from_tuples(&dims, total_dim(&up), field, |tu| {
                        let mut out = Vec::new();
                        for (one, c) in alg.unit.iter() {
                            let mut u = tu.to_vec();
                            u.insert(i + 2, *one);
                            out.push((encode_index(&up, &u), c.clone()));
                        }
                        SparseVec::from_entries(out)
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        let cyclic = operator_from_tuples(&dims, total_dim(&dims), field, |tu| {
            let m = tu[0];
            let a = &tu[1..];
            let act = t.module.act_weight(weights[a[n]]).expect("weight action");
            let mut out = Vec::new();
            for (mi, cm) in act.column(m).iter() {
                let mut u = Vec::with_capacity(n + 2);
                u.push(*mi);
                u.push(a[n]);
                u.extend_from_slice(&a[..n]);
                out.push((encode_index(&dims, &u), cm.clone()));
            }
            SparseVec::from_entries(out)
        })?;
        degrees.push(DegreeData {
            space,
            faces,
            degeneracies,
            cyclic,
        });
    }
    Ok(CyclicModuleData {
        name: format!("gradedC({})", alg.space.name),
        field,
        direction: Direction::Homological,
        degrees,
        status: None,
    })
}

/// Coinvariant chains of a graded triple: spanned by the basis tensors whose
/// total weight equals the weight of σ, enumerated combinatorially without
/// materializing the coaction.
pub fn graded_coinvariant_chain_module(
    t: &GradedTriple,
    n_max: usize,
    budget: usize,
) -> Result<CoinvariantChain> {
    let backend = t.backend()?;
    let weights = backend.weights.clone();
    let group = &backend.group;
    let field = t.algebra.field;
    let dm = t.module.space.dim();
    let da = t.algebra.dim();
    let ambient = build_graded_chain_paracyclic(t, n_max, budget)?;
    let mut subspaces = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut dims = vec![da; n + 2];
        dims[0] = dm;
        let mut basis = Vec::new();
        // enumerate all tuples with total weight = sigma
        let total = total_dim(&dims);
        check_budget(total, budget)?;
        for idx in 0..total {
            let tu = decode_index(&dims, idx);
            let mut w = group.identity();
            for &ai in &tu[1..] {
                w = group.mul(w, weights[ai]);
            }
            if w == t.sigma_weight {
                basis.push(SparseVec::unit(idx, field));
            }
        }
        subspaces.push(Subspace::from_vectors(total, field, basis));
    }
    restrict_to_subspaces(&ambient, &subspaces, true, "weight-σ chain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{build_twisted_algebra_module, CyclicStatus, DEFAULT_DIMENSION_BUDGET};
    use crate::hopf::{group_algebra, group_character, sweedler_algebra, GroupTable};
    use crate::module::{
        character_module, graded_comodule_algebra, self_comodule_algebra, trivial_module,
        truncated_polynomial_algebra,
    };
    use crate::scalar::Field;

    const B: usize = DEFAULT_DIMENSION_BUDGET;

    fn kz2() -> HopfAlgebra {
        group_algebra(&GroupTable::cyclic(2), Field::Rational).unwrap()
    }

    fn sweedler_delta(h: &HopfAlgebra) -> SparseMatrix {
        let f = h.field;
        SparseMatrix::from_entries(1, 4, f, vec![(0, 0, f.one()), (0, 1, f.integer(-1))]).unwrap()
    }

    #[test]
    fn hat_antipode_on_group_algebra() {
        // Ŝ(1⊗g) = 1⊗g^{-1} for kG with trivial module and σ = 1
        let h = group_algebra(&GroupTable::cyclic(3), Field::Rational).unwrap();
        let m = trivial_module(&h).unwrap();
        let (hat, _) = hat_antipode(&h, &m, &h.unit).unwrap();
        for g in 0..3 {
            let ginv = GroupTable::cyclic(3).inverse(g);
            assert_eq!(hat.column(g), &SparseVec::unit(ginv, Field::Rational));
        }
        assert!(hat.mul(&hat).unwrap().is_identity());
    }

    #[test]
    fn sweedler_matched_pairs() {
        let h = sweedler_algebra(Field::Rational).unwrap();
        let delta = sweedler_delta(&h);
        let k_delta = character_module(&h, &delta, "k_delta").unwrap();
        let k_eps = trivial_module(&h).unwrap();
        let sigma_one = h.unit.clone();
        let sigma_g = SparseVec::unit(1, Field::Rational);
        // (k_δ, 1) compatible
        let c = check_matched_pair(&h, &k_delta, &sigma_one).unwrap();
        assert!(c.compatible(), "{:?}", c.witnesses);
        // (k_ε, g) compatible
        let c = check_matched_pair(&h, &k_eps, &sigma_g).unwrap();
        assert!(c.compatible(), "{:?}", c.witnesses);
        // (k_δ, g) incompatible: σ does not fix the module
        let c = check_matched_pair(&h, &k_delta, &sigma_g).unwrap();
        assert!(!c.compatible());
        assert!(!c.sigma_fixes_module);
        // (k_ε, 1) incompatible: Ŝ² = S² ≠ id on the Sweedler algebra
        let c = check_matched_pair(&h, &k_eps, &sigma_one).unwrap();
        assert!(!c.compatible());
        assert!(c.sigma_fixes_module);
        assert!(!c.involution);
    }

    #[test]
    fn trivial_triple_matches_algebra_cyclic_module() {
        // (A, k, k): the chain module coincides with the cyclic module of A
        let field = Field::Rational;
        let ground = group_algebra(&GroupTable::cyclic(1), field).unwrap();
        let a = truncated_polynomial_algebra(field, 2).unwrap();
        let ca = ComoduleAlgebra {
            coaction: SparseMatrix::from_fn(2, 2, field, |j| SparseVec::unit(j, field)).unwrap(),
            algebra: a.clone(),
            graded: None,
            field,
        };
        let t = HopfTriple::new(ca, ground.clone(), trivial_module(&ground).unwrap(), ground.unit.clone())
            .unwrap();
        let mut chains = build_chain_paracyclic(&t, 3, B).unwrap();
        let rep = chains.certify().unwrap();
        assert!(rep.is_cyclic());
        let id = SparseMatrix::identity(2, field);
        let mut reference = build_twisted_algebra_module(&a, &id, 3, B).unwrap();
        reference.certify().unwrap();
        // same operator matrices (M = k is one-dimensional)
        for n in 0..=3 {
            assert_eq!(chains.degrees[n].cyclic, reference.degrees[n].cyclic);
            for (x, y) in chains.degrees[n]
                .faces
                .iter()
                .zip(&reference.degrees[n].faces)
            {
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn self_triple_coinvariants_have_reduced_dimensions() {
        // dim C_n^H = dim M · (dim H)^n for the self-coaction triple
        let h = kz2();
        let m = trivial_module(&h).unwrap();
        let t = HopfTriple::new(self_comodule_algebra(&h), h.clone(), m, h.unit.clone()).unwrap();
        let coinv = coinvariant_chain_module(&t, 3, B, true).unwrap();
        assert_eq!(coinv.dims(), vec![1, 2, 4, 8]);
        let module = coinv.module.unwrap();
        assert_eq!(module.status, Some(CyclicStatus::Cyclic));
    }

    #[test]
    fn ambient_tau_power_nontrivial_for_character_module() {
        // (kZ/2, kZ/2, k_χ): ambient τ² ≠ id, coinvariant τ² = id
        let h = kz2();
        let chi = group_character(&GroupTable::cyclic(2), Field::Rational, |g| {
            Field::Rational.integer(if g == 0 { 1 } else { -1 })
        });
        let m = character_module(&h, &chi, "k_chi").unwrap();
        let pair = check_matched_pair(&h, &m, &h.unit).unwrap();
        assert!(pair.compatible());
        let t = HopfTriple::new(self_comodule_algebra(&h), h.clone(), m, h.unit.clone()).unwrap();
        let mut ambient = build_chain_paracyclic(&t, 2, B).unwrap();
        let rep = ambient.certify().unwrap();
        assert!(rep.paracyclic_ok());
        assert_eq!(rep.status, CyclicStatus::Paracyclic);
        assert!(rep.tau_power_failures.contains(&1));
        let coinv = coinvariant_chain_module(&t, 2, B, true).unwrap();
        let module = coinv.module.unwrap();
        assert_eq!(module.status, Some(CyclicStatus::Cyclic));
    }

    #[test]
    fn sigma_compatibility_identity_on_builtins() {
        let h = kz2();
        let m = trivial_module(&h).unwrap();
        let t = HopfTriple::new(self_comodule_algebra(&h), h.clone(), m, h.unit.clone()).unwrap();
        assert!(sigma_compatibility_identity(&t).unwrap());
        let s = sweedler_algebra(Field::Rational).unwrap();
        let delta = sweedler_delta(&s);
        let m = character_module(&s, &delta, "k_delta").unwrap();
        let t = HopfTriple::new(self_comodule_algebra(&s), s.clone(), m, s.unit.clone()).unwrap();
        assert!(sigma_compatibility_identity(&t).unwrap());
    }

    #[test]
    fn reduced_model_matches_coinvariants_for_sweedler() {
        let h = sweedler_algebra(Field::Rational).unwrap();
        let delta = sweedler_delta(&h);
        let m = character_module(&h, &delta, "k_delta").unwrap();
        let cmp = compare_reduced_with_coinvariants(&h, &m, &h.unit.clone(), 3, B).unwrap();
        assert!(cmp.theta_eta_identity);
        assert!(cmp.eta_lands_in_coinvariants, "η must land in coinvariants");
        assert!(cmp.eta_theta_identity_on_coinvariants);
        assert!(cmp.operators_intertwine.is_empty(), "{:?}", cmp.operators_intertwine);
        assert_eq!(cmp.coinvariant_dims, vec![1, 4, 16, 64]);
        assert!(cmp.ok());
    }

    #[test]
    fn reduced_model_tau_at_degree_zero_is_identity() {
        let h = kz2();
        let m = trivial_module(&h).unwrap();
        let red = reduced_model(&h, &m, &h.unit.clone(), 2, B).unwrap();
        assert!(red.degrees[0].cyclic.is_identity());
    }

    #[test]
    fn averaging_splitting_for_group_algebra() {
        // Tr = [g = 1] is σ-invariant for σ = 1; γi = id
        let h = kz2();
        let f = Field::Rational;
        let t = HopfTriple::new(
            self_comodule_algebra(&h),
            h.clone(),
            trivial_module(&h).unwrap(),
            h.unit.clone(),
        )
        .unwrap();
        let tr = SparseMatrix::from_entries(1, 2, f, vec![(0, 0, f.one())]).unwrap();
        let rep = averaging_splitting(&t, &tr, 2, B).unwrap();
        assert!(rep.gamma_lands_in_coinvariants);
        assert!(rep.gamma_is_cyclic_map);
        assert!(rep.gamma_i_is_scalar);
        assert!(rep.trace_sigma.is_one());
        assert!(rep.direct_summand);
        // zero trace: γi = 0, no summand
        let zero = SparseMatrix::zero(1, 2, f);
        let rep = averaging_splitting(&t, &zero, 2, B).unwrap();
        assert!(rep.trace_sigma.is_zero());
        assert!(!rep.direct_summand);
    }

    #[test]
    fn graded_triple_recovers_twisted_module() {
        // Z-graded A with M = (k, z acts by -1) reproduces the sign-twisted module
        let f = Field::Rational;
        let alg = truncated_polynomial_algebra(f, 2).unwrap();
        let graded = graded_comodule_algebra(alg.clone(), WeightGroup::Integers, vec![0, 1]).unwrap();
        let minus = SparseMatrix::from_entries(1, 1, f, vec![(0, 0, f.integer(-1))]).unwrap();
        let module = GradedGroupModule {
            space: IndexedSpace::new("k", vec!["m".to_string()]).unwrap(),
            actions: vec![minus.clone()],
            group: WeightGroup::Integers,
        };
        let t = GradedTriple {
            algebra: graded,
            module,
            sigma_weight: 0,
        };
        let chains = build_graded_chain_paracyclic(&t, 2, B).unwrap();
        let g = SparseMatrix::from_entries(2, 2, f, vec![(0, 0, f.one()), (1, 1, f.integer(-1))])
            .unwrap();
        let twisted = build_twisted_algebra_module(&alg, &g, 2, B).unwrap();
        for n in 0..=2 {
            assert_eq!(chains.degrees[n].cyclic, twisted.degrees[n].cyclic);
            for (x, y) in chains.degrees[n].faces.iter().zip(&twisted.degrees[n].faces) {
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn graded_coinvariants_of_dual_numbers() {
        // A = Q[x]/(x²) graded by deg x = 1, σ = 0: degree-1 coinvariant
        // chains are spanned by 1⊗1
        let f = Field::Rational;
        let alg = truncated_polynomial_algebra(f, 2).unwrap();
        let graded = graded_comodule_algebra(alg, WeightGroup::Integers, vec![0, 1]).unwrap();
        let t = GradedTriple {
            algebra: graded,
            module: GradedGroupModule::trivial(f, WeightGroup::Integers),
            sigma_weight: 0,
        };
        let coinv = graded_coinvariant_chain_module(&t, 2, B).unwrap();
        assert_eq!(coinv.dims(), vec![1, 1, 1]);
        let module = coinv.module.unwrap();
        assert_eq!(module.status, Some(CyclicStatus::Cyclic));
    }
}
