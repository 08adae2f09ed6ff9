//! Generic (para)(co)cyclic module containers and their certification, plus
//! the twisted modules of an algebra automorphism and of a coalgebra
//! automorphism.
//!
//! Operator matrices are stored per degree rather than as symbolic formulas,
//! so certification and homology are uniform matrix algebra regardless of
//! which construction produced the module.

use crate::error::{Error, Result};
use crate::hopf::{Algebra, Coalgebra};
use crate::matrix::{SparseMatrix, SparseVec};
use crate::scalar::Field;
use crate::space::{decode_index, encode_index, total_dim, IndexedSpace};

pub const DEFAULT_DIMENSION_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Faces lower the degree (cyclic modules).
    Homological,
    /// Cofaces raise the degree (cocyclic modules).
    Cohomological,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CyclicStatus {
    Paracyclic,
    Cyclic,
}

/// One graded piece with its structure operators.
///
/// Homological direction, degree `n`: `faces[i]: X_n -> X_{n-1}` for
/// `0 <= i <= n` (absent at degree 0), `degeneracies[i]: X_n -> X_{n+1}` for
/// `0 <= i <= n` (absent at the top stored degree), `cyclic: X_n -> X_n`.
///
/// Cohomological direction, degree `n`: `faces[i]: X^n -> X^{n+1}` for
/// `0 <= i <= n+1` (absent at the top stored degree), `degeneracies[i]:
/// X^n -> X^{n-1}` for `0 <= i <= n-1` (absent at degree 0).
#[derive(Debug, Clone)]
pub struct DegreeData {
    pub space: IndexedSpace,
    pub faces: Vec<SparseMatrix>,
    pub degeneracies: Vec<SparseMatrix>,
    pub cyclic: SparseMatrix,
}

#[derive(Debug, Clone)]
pub struct CyclicModuleData {
    pub name: String,
    pub field: Field,
    pub direction: Direction,
    pub degrees: Vec<DegreeData>,
    pub status: Option<CyclicStatus>,
}

/// Per-identity certification report.
#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub simplicial_failures: Vec<String>,
    pub paracyclic_failures: Vec<String>,
    /// Degrees where `τ^{n+1} != id`.
    pub tau_power_failures: Vec<usize>,
    pub status: CyclicStatus,
}

impl CertifyReport {
    pub fn paracyclic_ok(&self) -> bool {
        self.simplicial_failures.is_empty() && self.paracyclic_failures.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.paracyclic_ok() && self.status == CyclicStatus::Cyclic
    }
}

impl CyclicModuleData {
    pub fn n_max(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees[n].space.dim()
    }

    /// Transpose all operators, swapping the homological and cohomological
    /// conventions. The term-wise dual of a paracocyclic module is a
    /// paracyclic module with the same index conventions.
    pub fn dualize(&self) -> CyclicModuleData {
        let n_max = self.n_max();
        let mut degrees = Vec::with_capacity(n_max + 1);
        match self.direction {
            Direction::Cohomological => {
                for m in 0..=n_max {
                    let faces = if m >= 1 {
                        self.degrees[m - 1]
                            .faces
                            .iter()
                            .map(|f| f.transpose())
                            .collect()
                    } else {
                        Vec::new()
                    };
                    let degeneracies = if m < n_max {
                        self.degrees[m + 1]
                            .degeneracies
                            .iter()
                            .map(|s| s.transpose())
                            .collect()
                    } else {
                        Vec::new()
                    };
                    degrees.push(DegreeData {
                        space: self.degrees[m].space.clone(),
                        faces,
                        degeneracies,
                        cyclic: self.degrees[m].cyclic.transpose(),
                    });
                }
            }
            Direction::Homological => {
                for m in 0..=n_max {
                    let faces = if m < n_max {
                        self.degrees[m + 1]
                            .faces
                            .iter()
                            .map(|f| f.transpose())
                            .collect()
                    } else {
                        Vec::new()
                    };
                    let degeneracies = if m >= 1 {
                        self.degrees[m - 1]
                            .degeneracies
                            .iter()
                            .map(|s| s.transpose())
                            .collect()
                    } else {
                        Vec::new()
                    };
                    degrees.push(DegreeData {
                        space: self.degrees[m].space.clone(),
                        faces,
                        degeneracies,
                        cyclic: self.degrees[m].cyclic.transpose(),
                    });
                }
            }
        }
        CyclicModuleData {
            name: format!("dual({})", self.name),
            field: self.field,
            direction: match self.direction {
                Direction::Homological => Direction::Cohomological,
                Direction::Cohomological => Direction::Homological,
            },
            degrees,
            status: self.status,
        }
    }

    /// Check every simplicial and paracyclic identity that is expressible
    /// within the stored range, set and return the cyclic status.
    pub fn certify(&mut self) -> Result<CertifyReport> {
        let report = match self.direction {
            Direction::Homological => certify_homological(self)?,
            Direction::Cohomological => {
                let dual = self.dualize();
                let mut rep = certify_homological(&dual)?;
                for f in rep
                    .simplicial_failures
                    .iter_mut()
                    .chain(rep.paracyclic_failures.iter_mut())
                {
                    *f = format!("(dual) {f}");
                }
                rep
            }
        };
        self.status = Some(report.status);
        Ok(report)
    }
}

fn certify_homological(c: &CyclicModuleData) -> Result<CertifyReport> {
    let n_max = c.n_max();
    let mut simplicial = Vec::new();
    let mut paracyclic = Vec::new();
    let mut tau_failures = Vec::new();

    let deg = |n: usize| &c.degrees[n];
    for n in 0..=n_max {
        let d = deg(n);
        if n >= 1 && d.faces.len() != n + 1 {
            return Err(Error::shape(format!(
                "degree {n}: expected {} faces, found {}",
                n + 1,
                d.faces.len()
            )));
        }
        if n < n_max && d.degeneracies.len() != n + 1 {
            return Err(Error::shape(format!(
                "degree {n}: expected {} degeneracies, found {}",
                n + 1,
                d.degeneracies.len()
            )));
        }
        if d.cyclic.rows != d.space.dim() || d.cyclic.cols != d.space.dim() {
            return Err(Error::shape(format!("degree {n}: cyclic operator shape")));
        }
    }

    // d_i d_j = d_{j-1} d_i for i < j
    for n in 2..=n_max {
        for j in 1..=n {
            for i in 0..j {
                let lhs = deg(n - 1).faces[i].mul(&deg(n).faces[j])?;
                let rhs = deg(n - 1).faces[j - 1].mul(&deg(n).faces[i])?;
                if lhs != rhs {
                    simplicial.push(format!("d{i} d{j} = d{} d{i} at degree {n}", j - 1));
                }
            }
        }
    }
    // s_i s_j = s_{j+1} s_i for i <= j
    for n in 0..n_max.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                let lhs = deg(n + 1).degeneracies[i].mul(&deg(n).degeneracies[j])?;
                let rhs = deg(n + 1).degeneracies[j + 1].mul(&deg(n).degeneracies[i])?;
                if lhs != rhs {
                    simplicial.push(format!("s{i} s{j} = s{} s{i} at degree {n}", j + 1));
                }
            }
        }
    }
    // d_i s_j relations
    for n in 0..n_max {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = deg(n + 1).faces[i].mul(&deg(n).degeneracies[j])?;
                if i == j || i == j + 1 {
                    if !lhs.is_identity() {
                        simplicial.push(format!("d{i} s{j} = id at degree {n}"));
                    }
                } else if i < j {
                    let rhs = deg(n - 1).degeneracies[j - 1].mul(&deg(n).faces[i])?;
                    if lhs != rhs {
                        simplicial.push(format!("d{i} s{j} = s{} d{i} at degree {n}", j - 1));
                    }
                } else {
                    let rhs = deg(n - 1).degeneracies[j].mul(&deg(n).faces[i - 1])?;
                    if lhs != rhs {
                        simplicial.push(format!("d{i} s{j} = s{j} d{} at degree {n}", i - 1));
                    }
                }
            }
        }
    }
    // paracyclic exchange identities
    for n in 1..=n_max {
        let tau = &deg(n).cyclic;
        for i in 1..=n {
            let lhs = deg(n).faces[i].mul(tau)?;
            let rhs = deg(n - 1).cyclic.mul(&deg(n).faces[i - 1])?;
            if lhs != rhs {
                paracyclic.push(format!("d{i} τ = τ d{} at degree {n}", i - 1));
            }
        }
        let lhs = deg(n).faces[0].mul(tau)?;
        if lhs != deg(n).faces[n] {
            paracyclic.push(format!("d0 τ = d{n} at degree {n}"));
        }
    }
    for n in 0..n_max {
        let tau = &deg(n).cyclic;
        let tau_up = &deg(n + 1).cyclic;
        for i in 1..=n {
            let lhs = deg(n).degeneracies[i].mul(tau)?;
            let rhs = tau_up.mul(&deg(n).degeneracies[i - 1])?;
            if lhs != rhs {
                paracyclic.push(format!("s{i} τ = τ s{} at degree {n}", i - 1));
            }
        }
        let lhs = deg(n).degeneracies[0].mul(tau)?;
        let rhs = tau_up.mul(tau_up)?.mul(&deg(n).degeneracies[n])?;
        if lhs != rhs {
            paracyclic.push(format!("s0 τ = τ² s{n} at degree {n}"));
        }
    }
    // τ^{n+1} = id
    for n in 0..=n_max {
        if !deg(n).cyclic.pow(n + 1)?.is_identity() {
            tau_failures.push(n);
        }
    }

    let status = if tau_failures.is_empty() {
        CyclicStatus::Cyclic
    } else {
        CyclicStatus::Paracyclic
    };
    Ok(CertifyReport {
        simplicial_failures: simplicial,
        paracyclic_failures: paracyclic,
        tau_power_failures: tau_failures,
        status,
    })
}

/// Build an operator on tensor-power spaces from its action on basis tuples.
pub fn operator_from_tuples(
    source_dims: &[usize],
    target_rows: usize,
    field: Field,
    mut f: impl FnMut(&[usize]) -> SparseVec,
) -> Result<SparseMatrix> {
    let cols = total_dim(source_dims);
    SparseMatrix::from_fn(target_rows, cols, field, |j| {
        f(&decode_index(source_dims, j))
    })
}

pub fn check_budget(dim: usize, budget: usize) -> Result<()> {
    if dim > budget {
        return Err(Error::Budget {
            needed: dim,
            budget,
        });
    }
    Ok(())
}

/// The paracyclic module `A_g` of an algebra automorphism `g`: in degree `n`
/// the space is `A^{⊗(n+1)}`, the last face and the cyclic operator twist by
/// `g`.
pub fn build_twisted_algebra_module(
    alg: &Algebra,
    g: &SparseMatrix,
    n_max: usize,
    budget: usize,
) -> Result<CyclicModuleData> {
    if !alg.is_automorphism(g) {
        return Err(Error::structure(
            "twisting map is not an algebra automorphism",
        ));
    }
    let field = alg.field;
    let da = alg.dim();
    let mut degrees = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let dims = vec![da; n + 1];
        check_budget(total_dim(&dims), budget)?;
        let space = tensor_power_space(&alg.space, n + 1);
        let target = vec![da; n];
        let faces = if n == 0 {
            Vec::new()
        } else {
            (0..=n)
                .map(|i| {
                    operator_from_tuples(&dims, total_dim(&target), field, |t| {
                        if i < n {
                            // merge a_i a_{i+1}
                            let prod = alg.product(t[i], t[i + 1]);
                            let mut out = Vec::new();
                            for (p, c) in prod.iter() {
                                let mut u = t.to_vec();
                                u.remove(i + 1);
                                u[i] = *p;
                                out.push((encode_index(&target, &u), c.clone()));
                            }
                            SparseVec::from_entries(out)
                        } else {
                            // g(a_n) a_0 ⊗ a_1 ... a_{n-1}
                            let mut out = Vec::new();
                            for (gn, cg) in g.column(t[n]).iter() {
                                for (p, c) in alg.product(*gn, t[0]).iter() {
                                    let mut u = Vec::with_capacity(n);
                                    u.push(*p);
                                    u.extend_from_slice(&t[1..n]);
                                    out.push((encode_index(&target, &u), cg.mul(c)));
                                }
                            }
                            SparseVec::from_entries(out)
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        let up = vec![da; n + 2];
        let degeneracies = if n == n_max {
            Vec::new()
        } else {
            (0..=n)
                .map(|i| {
                    operator_from_tuples(&dims, total_dim(&up), field, |t| {
                        // insert 1 after position i
                        let mut out = Vec::new();
                        for (u_idx, c) in alg.unit.iter() {
                            let mut u = t.to_vec();
                            u.insert(i + 1, *u_idx);
                            out.push((encode_index(&up, &u), c.clone()));
                        }
                        SparseVec::from_entries(out)
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        let cyclic = operator_from_tuples(&dims, total_dim(&dims), field, |t| {
            let mut out = Vec::new();
            for (gn, cg) in g.column(t[n]).iter() {
                let mut u = Vec::with_capacity(n + 1);
                u.push(*gn);
                u.extend_from_slice(&t[..n]);
                out.push((encode_index(&dims, &u), cg.clone()));
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
        name: format!("{}_twisted", alg.space.name),
        field,
        direction: Direction::Homological,
        degrees,
        status: None,
    })
}

/// The paracocyclic module of a coalgebra automorphism `θ`: in degree `n`
/// the space is `C^{⊗(n+1)}`, the last coface and the cocyclic operator
/// twist by `θ`.
pub fn build_twisted_coalgebra_module(
    coa: &Coalgebra,
    theta: &SparseMatrix,
    n_max: usize,
    budget: usize,
) -> Result<CyclicModuleData> {
    if !coa.is_automorphism(theta) {
        return Err(Error::structure(
            "twisting map is not a coalgebra automorphism",
        ));
    }
    let field = coa.field;
    let dc = coa.dim();
    let mut degrees = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let dims = vec![dc; n + 1];
        check_budget(total_dim(&dims), budget)?;
        let space = tensor_power_space(&coa.space, n + 1);
        let up = vec![dc; n + 2];
        let faces = if n == n_max {
            Vec::new()
        } else {
            (0..=n + 1)
                .map(|i| {
                    operator_from_tuples(&dims, total_dim(&up), field, |t| {
                        let mut out = Vec::new();
                        if i <= n {
                            // split c_i in place
                            for ((a, b), c) in coa.comult_of(t[i]) {
                                let mut u = t.to_vec();
                                u[i] = a;
                                u.insert(i + 1, b);
                                out.push((encode_index(&up, &u), c));
                            }
                        } else {
                            // c_0^{(2)} ⊗ c_1 ⊗ ... ⊗ c_n ⊗ θ(c_0^{(1)})
                            for ((a, b), c) in coa.comult_of(t[0]) {
                                for (ta, cth) in theta.column(a).iter() {
                                    let mut u = Vec::with_capacity(n + 2);
                                    u.push(b);
                                    u.extend_from_slice(&t[1..]);
                                    u.push(*ta);
                                    out.push((encode_index(&up, &u), c.mul(cth)));
                                }
                            }
                        }
                        SparseVec::from_entries(out)
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        let down = vec![dc; n];
        let degeneracies = if n == 0 {
            Vec::new()
        } else {
            (0..n)
                .map(|i| {
                    operator_from_tuples(&dims, total_dim(&down), field, |t| {
                        // apply ε to c_{i+1} and drop it
                        let e = coa.counit_of(t[i + 1]);
                        if e.is_zero() {
                            return SparseVec::zero();
                        }
                        let mut u = t.to_vec();
                        u.remove(i + 1);
                        SparseVec::from_entries(vec![(encode_index(&down, &u), e)])
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        let cyclic = operator_from_tuples(&dims, total_dim(&dims), field, |t| {
            // c_1 ⊗ ... ⊗ c_n ⊗ θ(c_0)
            let mut out = Vec::new();
            for (ta, c) in theta.column(t[0]).iter() {
                let mut u = Vec::with_capacity(n + 1);
                u.extend_from_slice(&t[1..]);
                u.push(*ta);
                out.push((encode_index(&dims, &u), c.clone()));
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
        name: format!("{}_cotwisted", coa.space.name),
        field,
        direction: Direction::Cohomological,
        degrees,
        status: None,
    })
}

pub fn tensor_power_space(base: &IndexedSpace, power: usize) -> IndexedSpace {
    let mut s = base.clone();
    for _ in 1..power {
        s = s.tensor(base);
    }
    if power == 0 {
        IndexedSpace::new("k", vec!["1".to_string()]).expect("ground space")
    } else {
        s
    }
}
