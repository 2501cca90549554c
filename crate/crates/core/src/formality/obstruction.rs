//! Linear systems for the undetermined coefficients of the codifferential on
//! the three-letter monomials `<v, f1, f2>` and `<v1, f>.v2`.
//!
//! The most general values are `alpha f1 v(f2) + beta f2 v(f1)` and
//! `mu v2(v1(f)) + nu v1(v2(f))`. Corestricting `M^2 = 0` on
//! `<v, f1, f2, f3>` and on `<v1, f>.v2.v3` gives linear equations in the
//! unknowns; this module assembles them on sample data and solves.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{rank_kernel, rat, Rat, SparseMat};
use crate::polyalg::{Mono, Poly, Polyvector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ansatz {
    Vff,
    Vfv,
}

impl Ansatz {
    pub fn unknowns(self) -> [&'static str; 2] {
        match self {
            Ansatz::Vff => ["alpha", "beta"],
            Ansatz::Vfv => ["mu", "nu"],
        }
    }
}

/// Functions and derivations plugged into one identity: three functions for
/// `vff`, one function and three derivations for `vfv`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub funcs: Vec<Poly>,
    pub ders: Vec<Polyvector>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ObstructionReport {
    pub ansatz: Ansatz,
    pub unknowns: Vec<String>,
    pub instances: usize,
    pub equations: usize,
    pub rank: usize,
    pub unique: bool,
    /// Basis of the solution space, one vector per free direction.
    pub solutions: Vec<Vec<String>>,
}

/// Value of the ansatz as one polynomial per unknown.
type Value = [Poly; 2];

fn act(v: &Polyvector, f: &Poly) -> Poly {
    v.apply_derivation(f).expect("degree-one polyvector")
}

fn times(f: &Poly, v: &Polyvector) -> Polyvector {
    Polyvector::from_poly(f.clone()).wedge(v)
}

fn combine(parts: &[(i64, Value)]) -> Value {
    let n = parts[0].1[0].nvars();
    let mut out = [Poly::zero(n), Poly::zero(n)];
    for (c, v) in parts {
        for k in 0..2 {
            out[k].add_scaled(&v[k], &rat(*c));
        }
    }
    out
}

fn m_vff(v: &Polyvector, f1: &Poly, f2: &Poly) -> Value {
    [f1 * &act(v, f2), f2 * &act(v, f1)]
}

fn m_vfv(v1: &Polyvector, f: &Poly, v2: &Polyvector) -> Value {
    [act(v2, &act(v1, f)), act(v1, &act(v2, f))]
}

/// Left side of the corestricted `M^2 = 0` identity, one polynomial per unknown.
pub fn residual(which: Ansatz, inst: &Instance) -> [Poly; 2] {
    match which {
        Ansatz::Vff => {
            let (v, f1, f2, f3) = (&inst.ders[0], &inst.funcs[0], &inst.funcs[1], &inst.funcs[2]);
            let lead = m_vff(v, f1, f2);
            combine(&[
                (1, [f3 * &lead[0], f3 * &lead[1]]),
                (-1, m_vff(&times(f1, v), f2, f3)),
                (1, m_vff(v, &(f1 * f2), f3)),
                (-1, m_vff(v, f1, &(f2 * f3))),
            ])
        }
        Ansatz::Vfv => {
            let (f, v1) = (&inst.funcs[0], &inst.ders[0]);
            let half = |a: &Polyvector, b: &Polyvector| -> Value {
                let inner = m_vfv(v1, f, b);
                combine(&[
                    (1, [act(a, &inner[0]), act(a, &inner[1])]),
                    (1, m_vfv(&v1.schouten(a), f, b)),
                    (1, m_vfv(v1, &act(b, f), a)),
                ])
            };
            let (v2, v3) = (&inst.ders[1], &inst.ders[2]);
            combine(&[(1, half(v2, v3)), (-1, half(v3, v2))])
        }
    }
}

/// Assembles the equations over all instances (one per monomial coefficient)
/// and returns the solution space of the homogeneous system.
pub fn obstruction_solve(which: Ansatz, instances: &[Instance]) -> Result<ObstructionReport> {
    let need = match which {
        Ansatz::Vff => (3, 1),
        Ansatz::Vfv => (1, 3),
    };
    let mut rows: Vec<[Rat; 2]> = Vec::new();
    for inst in instances {
        if inst.funcs.len() < need.0 || inst.ders.len() < need.1 {
            return Err(Error::Config(format!("{which:?} needs {} functions and {} derivations", need.0, need.1)));
        }
        let r = residual(which, inst);
        let mut monos: Vec<&Mono> = r[0].terms().map(|(m, _)| m).chain(r[1].terms().map(|(m, _)| m)).collect();
        monos.sort();
        monos.dedup();
        for m in monos {
            rows.push([r[0].coeff(m), r[1].coeff(m)]);
        }
    }
    let mut mat = SparseMat::zeros(rows.len(), 2);
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            mat.add(i, j, x.clone());
        }
    }
    let (rank, kernel) = rank_kernel(&mat);
    let solutions = kernel
        .basis()
        .map(|v| (0..2).map(|j| v.get(&j).cloned().unwrap_or_default().to_string()).collect())
        .collect();
    Ok(ObstructionReport {
        ansatz: which,
        unknowns: which.unknowns().iter().map(|s| s.to_string()).collect(),
        instances: instances.len(),
        equations: rows.len(),
        rank,
        unique: rank == 2,
        solutions,
    })
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, deg: u32) -> Poly {
    let mut p = Poly::zero(nvars);
    for m in Mono::all_up_to_degree(nvars, deg) {
        p.add_term(m, rat(rng.gen_range(-3..=3)));
    }
    p
}

/// Seeded sample data: functions of degree at most 2 and derivations with
/// coefficients of degree at most 1.
pub fn generic_instances(which: Ansatz, nvars: usize, seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (which as u64).wrapping_mul(0x9e37_79b9));
    let (nf, nd) = match which {
        Ansatz::Vff => (3, 1),
        Ansatz::Vfv => (1, 3),
    };
    (0..count)
        .map(|_| Instance {
            funcs: (0..nf).map(|_| random_poly(&mut rng, nvars, 2)).collect(),
            ders: (0..nd)
                .map(|_| {
                    let cs: Vec<Poly> = (0..nvars).map(|_| random_poly(&mut rng, nvars, 1)).collect();
                    Polyvector::vector_field(&cs)
                })
                .collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_data_forces_zero() {
        for which in [Ansatz::Vff, Ansatz::Vfv] {
            let rep = obstruction_solve(which, &generic_instances(which, 3, 7, 6)).unwrap();
            assert!(rep.unique);
            assert!(rep.solutions.is_empty());
        }
    }

    #[test]
    fn commuting_derivations_leave_vfv_free() {
        let x = Poly::var(1, 0);
        let v = Polyvector::vector_field(&[x.clone()]);
        let inst = Instance { funcs: vec![&x * &x], ders: vec![v.clone(), v.clone(), v] };
        let rep = obstruction_solve(Ansatz::Vfv, &[inst]).unwrap();
        assert_eq!(rep.rank, 0);
        assert!(!rep.unique);
        assert_eq!(rep.solutions.len(), 2);
    }
}
