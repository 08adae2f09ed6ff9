//! Homology of cyclic modules: the normalized mixed complex, Hochschild and
//! cyclic homology from the (b,B)-bicomplex total complex, the stabilized
//! S-tower for periodic homology, SBI exactness, and contraction checks.

use crate::cyclic::{CyclicModuleData, CyclicStatus, Direction};
use crate::error::{Error, Result};
use crate::matrix::{SparseMatrix, SparseVec, Subspace};
use crate::scalar::Field;

/// A quotient of `k^n` by a relation subspace, with a chosen complement
/// basis (the coordinates away from the relation pivots).
#[derive(Debug, Clone)]
pub struct Quotient {
    pub ambient_dim: usize,
    pub field: Field,
    relations: Subspace,
    kept: Vec<usize>,
}

impl Quotient {
    pub fn new(ambient_dim: usize, field: Field, relation_span: Vec<SparseVec>) -> Quotient {
        let relations = Subspace::from_vectors(ambient_dim, field, relation_span);
        let pivots: std::collections::BTreeSet<usize> =
            relations.basis().iter().map(|b| b.0[0].0).collect();
        let kept = (0..ambient_dim).filter(|i| !pivots.contains(i)).collect();
        Quotient {
            ambient_dim,
            field,
            relations,
            kept,
        }
    }

    pub fn dim(&self) -> usize {
        self.kept.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Class of an ambient vector in the complement-basis coordinates.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let (_, rem) = self.relations.reduce(v);
        SparseVec(
            rem.0
                .into_iter()
                .map(|(i, c)| {
                    let j = self
                        .kept
                        .binary_search(&i)
                        .expect("reduced vector is supported on kept coordinates");
                    (j, c)
                })
                .collect(),
        )
    }

    /// The chosen ambient representative of the `j`-th quotient basis vector.
    pub fn lift(&self, j: usize) -> SparseVec {
        SparseVec::unit(self.kept[j], self.field)
    }

    /// Push an ambient operator `X -> Y` down to the quotients. The caller
    /// is responsible for the operator mapping relations into relations;
    /// `descends` checks exactly that.
    pub fn descend(&self, op: &SparseMatrix, target: &Quotient) -> SparseMatrix {
        SparseMatrix::from_fn(target.dim(), self.dim(), self.field, |j| {
            target.project(&op.apply(&self.lift(j)))
        })
        .expect("quotient dimensions")
    }

    pub fn descends(&self, op: &SparseMatrix, target: &Quotient) -> bool {
        self.relations
            .basis()
            .iter()
            .all(|r| target.project(&op.apply(r)).is_zero())
    }
}

/// A subquotient `Z/B` with explicit lifts, for homology with basis.
#[derive(Debug, Clone)]
pub struct Subquotient {
    pub ambient_dim: usize,
    pub field: Field,
    cycles: Subspace,
    boundary_quotient: Quotient,
}

impl Subquotient {
    /// `cycles ⊇ boundaries` as vectors in the ambient space.
    pub fn new(cycles: Subspace, boundaries: &[SparseVec], field: Field) -> Result<Subquotient> {
        let mut in_cycle_coords = Vec::with_capacity(boundaries.len());
        for b in boundaries {
            let coords = cycles.coordinates(b).ok_or_else(|| {
                Error::structure("boundary vector is not a cycle (d² != 0?)")
            })?;
            in_cycle_coords.push(coords);
        }
        let boundary_quotient = Quotient::new(cycles.dim(), field, in_cycle_coords);
        Ok(Subquotient {
            ambient_dim: cycles.ambient_dim,
            field,
            cycles,
            boundary_quotient,
        })
    }

    pub fn dim(&self) -> usize {
        self.boundary_quotient.dim()
    }

    /// Homology-class coordinates of an ambient cycle; `None` if the vector
    /// is not a cycle.
    pub fn project(&self, v: &SparseVec) -> Option<SparseVec> {
        let coords = self.cycles.coordinates(v)?;
        Some(self.boundary_quotient.project(&coords))
    }

    /// Ambient representative of the `j`-th homology basis class.
    pub fn lift(&self, j: usize) -> SparseVec {
        let in_cycles = self.boundary_quotient.lift(j);
        let mut out = SparseVec::zero();
        for (i, c) in in_cycles.iter() {
            out = out.add_scaled(self.cycles.basis_vector(*i), c);
        }
        out
    }
}

/// Homology of a chain complex `d_n : X_n -> X_{n-1}` with explicit bases;
/// entry `n` covers degrees where both `d_n` and `d_{n+1}` are stored.
pub fn homology_subquotients(
    dims: &[usize],
    differentials: &[SparseMatrix], // differentials[n] = d_{n+1} : X_{n+1} -> X_n
    field: Field,
) -> Result<Vec<Subquotient>> {
    let n_max = dims.len() - 1;
    let mut out = Vec::new();
    for n in 0..n_max {
        let cycles = if n == 0 {
            Subspace::from_vectors(
                dims[0],
                field,
                (0..dims[0]).map(|i| SparseVec::unit(i, field)).collect(),
            )
        } else {
            differentials[n - 1].kernel()
        };
        let boundaries: Vec<SparseVec> = (0..dims[n + 1])
            .map(|j| differentials[n].column(j).clone())
            .filter(|v| !v.is_zero())
            .collect();
        out.push(Subquotient::new(cycles, &boundaries, field)?);
    }
    Ok(out)
}

/// The induced map on homology of a chain map, given source and target
/// subquotients.
pub fn induced_map(
    source: &Subquotient,
    target: &Subquotient,
    chain_map: impl Fn(&SparseVec) -> SparseVec,
    field: Field,
) -> Result<SparseMatrix> {
    SparseMatrix::from_fn(target.dim(), source.dim(), field, |j| {
        target
            .project(&chain_map(&source.lift(j)))
            .expect("chain map sends cycles to cycles")
    })
}

/// A mixed complex: `b` of degree -1 and `B` of degree +1 with
/// `b² = B² = bB + Bb = 0`.
#[derive(Debug, Clone)]
pub struct MixedComplex {
    pub field: Field,
    pub dims: Vec<usize>,
    /// `b[n] : M_{n+1} -> M_n` for `0 <= n < n_max`.
    pub b: Vec<SparseMatrix>,
    /// `bb[n] : M_n -> M_{n+1}` for `0 <= n < n_max`.
    pub bb: Vec<SparseMatrix>,
}

impl MixedComplex {
    pub fn n_max(&self) -> usize {
        self.dims.len() - 1
    }

    /// Exact verification of the mixed complex identities.
    pub fn certify(&self) -> Result<Vec<String>> {
        let mut failures = Vec::new();
        let n_max = self.n_max();
        for n in 0..n_max.saturating_sub(1) {
            if !self.b[n].mul(&self.b[n + 1])?.is_zero() {
                failures.push(format!("b² != 0 entering degree {n}"));
            }
            if !self.bb[n + 1].mul(&self.bb[n])?.is_zero() {
                failures.push(format!("B² != 0 leaving degree {n}"));
            }
        }
        for n in 1..n_max {
            let anti = self.b[n]
                .mul(&self.bb[n])?
                .add(&self.bb[n - 1].mul(&self.b[n - 1])?)?;
            if !anti.is_zero() {
                failures.push(format!("bB + Bb != 0 at degree {n}"));
            }
        }
        if n_max >= 1 {
            // degree 0: only bB lands back in degree 0
            if !self.b[0].mul(&self.bb[0])?.is_zero() {
                failures.push("bB != 0 at degree 0".to_string());
            }
        }
        Ok(failures)
    }

    /// Hochschild homology dimensions (degrees `0..n_max-1`).
    pub fn hochschild(&self) -> Vec<usize> {
        let n_max = self.n_max();
        let ranks: Vec<usize> = self.b.iter().map(|m| m.rank()).collect();
        (0..n_max)
            .map(|n| {
                let r_out = if n == 0 { 0 } else { ranks[n - 1] };
                self.dims[n] - r_out - ranks[n]
            })
            .collect()
    }

    /// Total space of the (b,B)-bicomplex in total degree `n`:
    /// `M_n ⊕ M_{n-2} ⊕ ...`, component offsets returned alongside.
    fn tot_layout(&self, n: usize) -> (usize, Vec<(usize, usize)>) {
        // (total dim, per-component (degree, offset))
        let mut layout = Vec::new();
        let mut offset = 0;
        let mut d = n as isize;
        while d >= 0 {
            layout.push((d as usize, offset));
            offset += self.dims[d as usize];
            d -= 2;
        }
        (offset, layout)
    }

    /// The total differential `Tot_n -> Tot_{n-1}`.
    pub fn tot_differential(&self, n: usize) -> Result<SparseMatrix> {
        assert!(n >= 1 && n <= self.n_max());
        let (rows, target_layout) = self.tot_layout(n - 1);
        let (cols, source_layout) = self.tot_layout(n);
        let mut entries = Vec::new();
        for (j, (deg, off)) in source_layout.iter().enumerate() {
            // b : M_deg -> M_{deg-1}, same tower component j
            if *deg >= 1 {
                let (tdeg, toff) = target_layout[j];
                debug_assert_eq!(tdeg, deg - 1);
                for (r, c, v) in self.b[deg - 1].entries() {
                    entries.push((toff + r, off + c, v.clone()));
                }
            }
            // B : M_deg -> M_{deg+1}, tower component j-1
            if j >= 1 {
                let (tdeg, toff) = target_layout[j - 1];
                debug_assert_eq!(tdeg, deg + 1);
                for (r, c, v) in self.bb[*deg].entries() {
                    entries.push((toff + r, off + c, v.clone()));
                }
            }
        }
        SparseMatrix::from_entries(rows, cols, self.field, entries)
    }

    /// Cyclic homology dimensions (degrees `0..n_max-1`).
    pub fn cyclic(&self) -> Result<Vec<usize>> {
        let n_max = self.n_max();
        let mut out = Vec::new();
        let mut rank_in = 0usize; // rank of D_{n} computed in the previous step
        for n in 0..n_max {
            let (dim_n, _) = self.tot_layout(n);
            let d_next = self.tot_differential(n + 1)?;
            let rank_next = d_next.rank();
            out.push(dim_n - rank_in - rank_next);
            rank_in = rank_next;
        }
        Ok(out)
    }

    /// Homology subquotients of the total complex for degrees `0..n_max-1`.
    pub fn tot_subquotients(&self) -> Result<Vec<Subquotient>> {
        let n_max = self.n_max();
        let dims: Vec<usize> = (0..=n_max).map(|n| self.tot_layout(n).0).collect();
        let diffs: Vec<SparseMatrix> = (1..=n_max)
            .map(|n| self.tot_differential(n))
            .collect::<Result<Vec<_>>>()?;
        homology_subquotients(&dims, &diffs, self.field)
    }

    /// The S-map `HC_n -> HC_{n-2}` induced by dropping the top tower
    /// component, as a matrix on the given homology bases.
    pub fn s_map(
        &self,
        hc: &[Subquotient],
        n: usize,
    ) -> Result<SparseMatrix> {
        assert!(n >= 2);
        let (_, source_layout) = self.tot_layout(n);
        let top_dim = self.dims[n];
        let _ = source_layout;
        induced_map(
            &hc[n],
            &hc[n - 2],
            |v| {
                // drop the top component, shift the rest down
                SparseVec(
                    v.iter()
                        .filter(|(i, _)| *i >= top_dim)
                        .map(|(i, c)| (i - top_dim, c.clone()))
                        .collect(),
                )
            },
            self.field,
        )
    }
}

/// Build the normalized mixed complex of a certified cyclic module
/// (degeneracy images quotiented out), together with the per-degree
/// quotients used to express classes.
pub fn normalized_mixed_complex(c: &CyclicModuleData) -> Result<(MixedComplex, Vec<Quotient>)> {
    let m = match c.direction {
        Direction::Homological => c.clone(),
        Direction::Cohomological => c.dualize(),
    };
    let n_max = m.n_max();
    let field = m.field;
    let mut quotients = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut relations = Vec::new();
        if n >= 1 {
            for s in &m.degrees[n - 1].degeneracies {
                for j in 0..s.cols {
                    let col = s.column(j);
                    if !col.is_zero() {
                        relations.push(col.clone());
                    }
                }
            }
        }
        quotients.push(Quotient::new(m.dim(n), field, relations));
    }
    let mut b_ops = Vec::new();
    let mut bb_ops = Vec::new();
    for n in 0..n_max {
        // b_{n+1} : X_{n+1} -> X_n
        let mut b = SparseMatrix::zero(m.dim(n), m.dim(n + 1), field);
        for (i, face) in m.degrees[n + 1].faces.iter().enumerate() {
            let signed = if i % 2 == 0 {
                face.clone()
            } else {
                face.scale(&field.integer(-1))
            };
            b = b.add(&signed)?;
        }
        if !quotients[n + 1].descends(&b, &quotients[n]) {
            return Err(Error::structure(
                "Hochschild boundary does not descend to the normalized complex",
            ));
        }
        b_ops.push(quotients[n + 1].descend(&b, &quotients[n]));
        // B_n = (1 - λ_{n+1}) s N_n : X_n -> X_{n+1}
        let tau = &m.degrees[n].cyclic;
        let lambda = if n % 2 == 0 {
            tau.clone()
        } else {
            tau.scale(&field.integer(-1))
        };
        let mut norm = SparseMatrix::identity(m.dim(n), field);
        let mut power = SparseMatrix::identity(m.dim(n), field);
        for _ in 0..n {
            power = power.mul(&lambda)?;
            norm = norm.add(&power)?;
        }
        let extra = m.degrees[n + 1]
            .cyclic
            .mul(&m.degrees[n].degeneracies[n])?;
        let tau_up = &m.degrees[n + 1].cyclic;
        let lambda_up = if (n + 1) % 2 == 0 {
            tau_up.clone()
        } else {
            tau_up.scale(&field.integer(-1))
        };
        let one_minus = SparseMatrix::identity(m.dim(n + 1), field).sub(&lambda_up)?;
        let bb = one_minus.mul(&extra)?.mul(&norm)?;
        if !quotients[n].descends(&bb, &quotients[n + 1]) {
            return Err(Error::structure(
                "Connes operator does not descend to the normalized complex",
            ));
        }
        bb_ops.push(quotients[n].descend(&bb, &quotients[n + 1]));
    }
    Ok((
        MixedComplex {
            field,
            dims: quotients.iter().map(|q| q.dim()).collect(),
            b: b_ops,
            bb: bb_ops,
        },
        quotients,
    ))
}

fn require_cyclic(c: &CyclicModuleData, what: &str) -> Result<()> {
    match c.status {
        Some(CyclicStatus::Cyclic) => Ok(()),
        Some(CyclicStatus::Paracyclic) => Err(Error::precondition(format!(
            "{what} needs a cyclic module, got a paracyclic one"
        ))),
        None => Err(Error::precondition(format!(
            "{what} needs a certified module; run certify() first"
        ))),
    }
}

/// Hochschild homology dimensions for degrees `0..n_max-1`. Allowed on
/// paracyclic input as long as `b² = 0` holds exactly.
pub fn hochschild_homology(c: &CyclicModuleData) -> Result<Vec<usize>> {
    if c.status.is_none() {
        return Err(Error::precondition(
            "hochschild homology needs a certified module; run certify() first",
        ));
    }
    let (mixed, _) = normalized_mixed_complex(c)?;
    // b² = 0 can fail on paracyclic input
    for n in 0..mixed.n_max().saturating_sub(1) {
        if !mixed.b[n].mul(&mixed.b[n + 1])?.is_zero() {
            return Err(Error::precondition(format!(
                "b² != 0 entering degree {n}: paracyclic module has no Hochschild complex"
            )));
        }
    }
    Ok(mixed.hochschild())
}

/// Cyclic homology dimensions for degrees `0..n_max-1` from the
/// (b,B)-bicomplex of the normalized mixed complex.
pub fn cyclic_homology(c: &CyclicModuleData) -> Result<Vec<usize>> {
    require_cyclic(c, "cyclic homology")?;
    let (mixed, _) = normalized_mixed_complex(c)?;
    mixed.cyclic()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicEntry {
    pub dim: usize,
    pub stable: bool,
}

/// Periodic cyclic homology estimated from the stabilized S-tower: entry `n`
/// reports the top computable `HC` dimension of the parity of `n`, flagged
/// stable when the last `window` S-maps in that parity are isomorphisms.
pub fn periodic_homology(c: &CyclicModuleData, window: usize) -> Result<Vec<PeriodicEntry>> {
    require_cyclic(c, "periodic homology")?;
    if window == 0 {
        return Err(Error::precondition("stabilization window must be positive"));
    }
    let (mixed, _) = normalized_mixed_complex(c)?;
    let hc = mixed.tot_subquotients()?;
    let top = hc.len(); // degrees 0..top-1 available
    if top < window + 2 {
        return Err(Error::precondition(format!(
            "truncation too small to stabilize: {} degrees available, window {window}",
            top
        )));
    }
    let mut iso = Vec::new(); // iso[n] = S: HC_n -> HC_{n-2} is an isomorphism
    for n in 0..top {
        if n < 2 {
            iso.push(false);
            continue;
        }
        let s = mixed.s_map(&hc, n)?;
        iso.push(hc[n].dim() == hc[n - 2].dim() && s.rank() == hc[n].dim());
    }
    let mut out = Vec::new();
    for n in 0..top {
        // the top degree of the same parity
        let mut m = n;
        while m + 2 < top {
            m += 2;
        }
        let mut stable = true;
        let mut checked = 0;
        let mut k = m;
        while checked < window {
            if k < 2 || k < n + 2 {
                // ran out of S-maps within the tower above n
                if checked == 0 {
                    stable = false;
                }
                break;
            }
            if !iso[k] {
                stable = false;
                break;
            }
            checked += 1;
            k -= 2;
        }
        stable = stable && checked > 0;
        out.push(PeriodicEntry {
            dim: hc[m].dim(),
            stable,
        });
    }
    Ok(out)
}

/// Exactness of the SBI sequence
/// `... -> HH_n -I-> HC_n -S-> HC_{n-2} -∂-> HH_{n-1} -> ...`
/// verified via the induced maps on homology; returns the failures.
pub fn sbi_exactness(c: &CyclicModuleData) -> Result<Vec<String>> {
    require_cyclic(c, "SBI check")?;
    let (mixed, _) = normalized_mixed_complex(c)?;
    let field = mixed.field;
    let n_max = mixed.n_max();
    let hc = mixed.tot_subquotients()?;
    // Hochschild homology with bases
    let hh = homology_subquotients(&mixed.dims, &mixed.b, field)?;
    let top = n_max; // degrees 0..top-1
    let mut failures = Vec::new();

    let include = |n: usize, v: &SparseVec| -> SparseVec {
        // N̄_n -> Tot_n as the top component
        let _ = n;
        v.clone()
    };
    let drop_top = |n: usize, v: &SparseVec| -> SparseVec {
        let top_dim = mixed.dims[n];
        SparseVec(
            v.iter()
                .filter(|(i, _)| *i >= top_dim)
                .map(|(i, c)| (i - top_dim, c.clone()))
                .collect(),
        )
    };

    for n in 2..top {
        let i_n = induced_map(&hh[n], &hc[n], |v| include(n, v), field)?;
        let s_n = mixed.s_map(&hc, n)?;
        // ∂ : HC_{n-2} -> HH_{n-1}, B̄ of the top component
        let boundary = induced_map(
            &hc[n - 2],
            &hh[n - 1],
            |v| {
                let top_dim = mixed.dims[n - 2];
                let top_part = SparseVec(
                    v.iter()
                        .filter(|(i, _)| *i < top_dim)
                        .map(|(i, c)| (*i, c.clone()))
                        .collect(),
                );
                mixed.bb[n - 2].apply(&top_part)
            },
            field,
        )?;
        let i_prev = induced_map(&hh[n - 1], &hc[n - 1], |v| include(n - 1, v), field)?;

        // exactness at HC_n: im I = ker S
        if !s_n.mul(&i_n)?.is_zero() {
            failures.push(format!("S∘I != 0 at degree {n}"));
        }
        if i_n.rank() + s_n.rank() != hc[n].dim() {
            failures.push(format!("rank I + rank S != dim HC at degree {n}"));
        }
        // exactness at HC_{n-2}: im S = ker ∂
        if !boundary.mul(&s_n)?.is_zero() {
            failures.push(format!("∂∘S != 0 at degree {n}"));
        }
        if s_n.rank() + boundary.rank() != hc[n - 2].dim() {
            failures.push(format!("rank S + rank ∂ != dim HC at degree {}", n - 2));
        }
        // exactness at HH_{n-1}: im ∂ = ker I
        if !i_prev.mul(&boundary)?.is_zero() {
            failures.push(format!("I∘∂ != 0 into degree {}", n - 1));
        }
        if boundary.rank() + i_prev.rank() != hh[n - 1].dim() {
            failures.push(format!("rank ∂ + rank I != dim HH at degree {}", n - 1));
        }
        let _ = drop_top;
    }
    Ok(failures)
}

/// Check `h b + b h = id` degreewise, where `b` is the unnormalized
/// Hochschild boundary of the module and `h[n] : X_n -> X_{n+1}`. The
/// identity is checked in every degree where both composites exist
/// (`1 <= n <= n_max - 1`); in degree zero there is no incoming boundary.
pub fn contraction_check(c: &CyclicModuleData, h: &[SparseMatrix]) -> Result<bool> {
    let m = match c.direction {
        Direction::Homological => c.clone(),
        Direction::Cohomological => c.dualize(),
    };
    let n_max = m.n_max();
    if h.len() < n_max {
        return Err(Error::shape(format!(
            "homotopy family needs {} operators, got {}",
            n_max,
            h.len()
        )));
    }
    let field = m.field;
    let b = |n: usize| -> Result<SparseMatrix> {
        let mut out = SparseMatrix::zero(m.dim(n - 1), m.dim(n), field);
        for (i, face) in m.degrees[n].faces.iter().enumerate() {
            let signed = if i % 2 == 0 {
                face.clone()
            } else {
                face.scale(&field.integer(-1))
            };
            out = out.add(&signed)?;
        }
        Ok(out)
    };
    for n in 1..n_max {
        let hb = h[n - 1].mul(&b(n)?)?;
        let bh = b(n + 1)?.mul(&h[n])?;
        if hb.rows != m.dim(n) || h[n].rows != m.dim(n + 1) {
            return Err(Error::shape(format!("homotopy operator shape at degree {n}")));
        }
        if !hb.add(&bh)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{build_twisted_algebra_module, DEFAULT_DIMENSION_BUDGET};
    use crate::hopf::{group_algebra, GroupTable};
    use crate::module::truncated_polynomial_algebra;
    use crate::scalar::Field;

    fn ground_field_module(n_max: usize) -> CyclicModuleData {
        let alg = truncated_polynomial_algebra(Field::Rational, 1).unwrap();
        let id = SparseMatrix::identity(1, Field::Rational);
        let mut m =
            build_twisted_algebra_module(&alg, &id, n_max, DEFAULT_DIMENSION_BUDGET).unwrap();
        m.certify().unwrap();
        m
    }

    #[test]
    fn ground_field_cyclic_homology() {
        // HC of k: k in even degrees, 0 in odd degrees
        let m = ground_field_module(6);
        let hh = hochschild_homology(&m).unwrap();
        assert_eq!(hh, vec![1, 0, 0, 0, 0, 0]);
        let hc = cyclic_homology(&m).unwrap();
        assert_eq!(hc, vec![1, 0, 1, 0, 1, 0]);
        let hp = periodic_homology(&m, 2).unwrap();
        assert!(hp[0].stable && hp[0].dim == 1);
        assert_eq!(hp[1].dim, 0);
    }

    #[test]
    fn mixed_complex_identities_for_group_algebra() {
        let h = group_algebra(&GroupTable::cyclic(2), Field::Rational).unwrap();
        let id = SparseMatrix::identity(2, Field::Rational);
        let mut m =
            build_twisted_algebra_module(&h.algebra(), &id, 4, DEFAULT_DIMENSION_BUDGET).unwrap();
        m.certify().unwrap();
        let (mixed, _) = normalized_mixed_complex(&m).unwrap();
        assert!(mixed.certify().unwrap().is_empty());
    }

    #[test]
    fn cyclic_homology_of_kz2_over_q() {
        // HC_n(k[Z/2]) over Q: dimension 2 in even degrees, 0 in odd
        let h = group_algebra(&GroupTable::cyclic(2), Field::Rational).unwrap();
        let id = SparseMatrix::identity(2, Field::Rational);
        let mut m =
            build_twisted_algebra_module(&h.algebra(), &id, 5, DEFAULT_DIMENSION_BUDGET).unwrap();
        m.certify().unwrap();
        let hh = hochschild_homology(&m).unwrap();
        assert_eq!(hh, vec![2, 0, 0, 0, 0]);
        let hc = cyclic_homology(&m).unwrap();
        assert_eq!(hc, vec![2, 0, 2, 0, 2]);
    }

    #[test]
    fn sbi_exact_on_dual_numbers() {
        let alg = truncated_polynomial_algebra(Field::Rational, 2).unwrap();
        let id = SparseMatrix::identity(2, Field::Rational);
        let mut m = build_twisted_algebra_module(&alg, &id, 5, DEFAULT_DIMENSION_BUDGET).unwrap();
        m.certify().unwrap();
        let failures = sbi_exactness(&m).unwrap();
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn hochschild_of_dual_numbers() {
        // HH_n(k[x]/x²) over Q has dimension 1 in every degree
        let alg = truncated_polynomial_algebra(Field::Rational, 2).unwrap();
        let id = SparseMatrix::identity(2, Field::Rational);
        let mut m = build_twisted_algebra_module(&alg, &id, 5, DEFAULT_DIMENSION_BUDGET).unwrap();
        m.certify().unwrap();
        let hh = hochschild_homology(&m).unwrap();
        assert_eq!(hh, vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn paracyclic_rejected_for_cyclic_homology() {
        let alg = truncated_polynomial_algebra(Field::Rational, 2).unwrap();
        let f = Field::Rational;
        let g =
            SparseMatrix::from_entries(2, 2, f, vec![(0, 0, f.one()), (1, 1, f.integer(-1))])
                .unwrap();
        let mut m = build_twisted_algebra_module(&alg, &g, 3, DEFAULT_DIMENSION_BUDGET).unwrap();
        m.certify().unwrap();
        assert!(cyclic_homology(&m).is_err());
        // but Hochschild homology is fine (b² = 0 still holds)
        assert!(hochschild_homology(&m).is_ok());
    }

    #[test]
    fn norm_and_one_minus_lambda_compose_to_zero() {
        // (1 - λ)N = N(1 - λ) = 0 degreewise on certified cyclic modules
        for mut m in [
            {
                let h = group_algebra(&GroupTable::cyclic(3), Field::Rational).unwrap();
                let id = SparseMatrix::identity(3, Field::Rational);
                build_twisted_algebra_module(&h.algebra(), &id, 3, DEFAULT_DIMENSION_BUDGET)
                    .unwrap()
            },
            {
                let alg = truncated_polynomial_algebra(Field::prime(2).unwrap(), 2).unwrap();
                let id = SparseMatrix::identity(2, Field::prime(2).unwrap());
                build_twisted_algebra_module(&alg, &id, 3, DEFAULT_DIMENSION_BUDGET).unwrap()
            },
        ] {
            assert!(m.certify().unwrap().is_cyclic());
            let field = m.field;
            for n in 0..=m.n_max() {
                let tau = &m.degrees[n].cyclic;
                let lambda = if n % 2 == 0 {
                    tau.clone()
                } else {
                    tau.scale(&field.integer(-1))
                };
                let id = SparseMatrix::identity(m.dim(n), field);
                let mut norm = id.clone();
                let mut power = id.clone();
                for _ in 0..n {
                    power = power.mul(&lambda).unwrap();
                    norm = norm.add(&power).unwrap();
                }
                let one_minus = id.sub(&lambda).unwrap();
                assert!(one_minus.mul(&norm).unwrap().is_zero(), "(1-λ)N at {n}");
                assert!(norm.mul(&one_minus).unwrap().is_zero(), "N(1-λ) at {n}");
            }
        }
    }

    #[test]
    fn periodic_stability_survives_truncation_growth() {
        // once flagged stable, the HP estimate is unchanged by n_max + 2
        let h = group_algebra(&GroupTable::cyclic(2), Field::Rational).unwrap();
        let id = SparseMatrix::identity(2, Field::Rational);
        let build = |n_max: usize| {
            let mut m =
                build_twisted_algebra_module(&h.algebra(), &id, n_max, DEFAULT_DIMENSION_BUDGET)
                    .unwrap();
            m.certify().unwrap();
            m
        };
        let small = periodic_homology(&build(5), 1).unwrap();
        let large = periodic_homology(&build(7), 1).unwrap();
        for (n, entry) in small.iter().enumerate() {
            if entry.stable {
                assert_eq!(entry.dim, large[n].dim, "degree {n}");
                assert!(large[n].stable);
            }
        }
        assert!(small.iter().any(|e| e.stable));
    }

    #[test]
    fn zero_homotopy_fails_contraction() {
        let m = ground_field_module(3);
        let zeros: Vec<SparseMatrix> = (0..3)
            .map(|n| SparseMatrix::zero(m.dim(n + 1), m.dim(n), Field::Rational))
            .collect();
        assert!(!contraction_check(&m, &zeros).unwrap());
    }
}
