//! The embedding of `Xi(A)` into the bar construction of Hochschild cochains:
//! values of the codifferential on Xi monomials, and the check that they agree
//! with the polyvector side.

use crate::cooperadic::{Letter, LetterAlgebra, Word};
use crate::error::{Error, Result};
use crate::hochschild::{hkr, hkr_inverse, Cochain};
use crate::lincomb::{sign, LinComb};
use crate::polyalg::Polyvector;

use super::xi::{fmt_xi, letters, xi_basis, Xi, XiBudget, XiMono};

pub fn letter_cochain(l: &Letter) -> Cochain {
    hkr(&l.to_polyvector())
}

fn arity(l: &Letter) -> usize {
    usize::from(l.is_der())
}

/// Value of the codifferential's corestriction on a monomial: the Hochschild
/// differential of a single letter, `(-1)^{|P1|} P1 cup P2` on `<P1,P2>`,
/// `(-1)^{|P1|} [P1,P2]` on `<P1>.<P2>`, and zero on anything larger.
pub fn sigma_m_value(m: &XiMono, nvars: usize) -> Cochain {
    let lone = |w: &Word<Letter>| match w.as_slice() {
        [a] => Some(a.clone()),
        _ => None,
    };
    match m.as_slice() {
        [w] if w.len() == 1 => letter_cochain(&w[0]).hochschild_d(),
        [w] if w.len() == 2 => {
            letter_cochain(&w[0]).cup(&letter_cochain(&w[1])).scale(&sign(arity(&w[0]) == 1))
        }
        [u, v] => match (lone(u), lone(v)) {
            (Some(a), Some(b)) => {
                letter_cochain(&a).gerst_bracket(&letter_cochain(&b)).scale(&sign(arity(&a) == 1))
            }
            _ => Cochain::zero(nvars, 0),
        },
        _ => Cochain::zero(nvars, 0),
    }
}

/// Equality that ignores the nominal arity of zero cochains.
pub fn cochain_eq(a: &Cochain, b: &Cochain) -> bool {
    if a.arity() != b.arity() {
        return a.is_zero() && b.is_zero();
    }
    a == b
}

/// Letters with operations read off from cup product and Gerstenhaber
/// bracket of their HKR images.
#[derive(Debug, Clone, Copy)]
pub struct CAlgebra {
    pub nvars: usize,
}

impl LetterAlgebra for CAlgebra {
    fn nvars(&self) -> usize {
        self.nvars
    }

    fn product(&self, a: &Letter, b: &Letter) -> Result<LinComb<Letter>> {
        if a.is_der() && b.is_der() {
            return Err(Error::OutsideXi(format!("product of derivation letters {a} and {b}")));
        }
        Letter::from_polyvector(&hkr_inverse(&letter_cochain(a).cup(&letter_cochain(b)))?)
    }

    fn bracket(&self, a: &Letter, b: &Letter) -> LinComb<Letter> {
        let c = letter_cochain(a).gerst_bracket(&letter_cochain(b));
        hkr_inverse(&c)
            .and_then(|u| Letter::from_polyvector(&u))
            .expect("bracket of letters lies in the HKR image")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct SigmaReport {
    pub letter_pairs: usize,
    pub monomials: usize,
    pub mismatches: Vec<String>,
}

fn single_letter_part(x: &LinComb<XiMono>, nvars: usize) -> Polyvector {
    let mut out = Polyvector::zero(nvars);
    for (m, c) in x.iter() {
        if let [w] = m.as_slice() {
            if let [a] = w.as_slice() {
                out.add_scaled(&a.to_polyvector(), c);
            }
        }
    }
    out
}

fn hkr_any(u: &Polyvector, nvars: usize) -> Cochain {
    if u.is_zero() {
        Cochain::zero(nvars, 0)
    } else {
        hkr(u)
    }
}

/// Compares both sides letter pair by letter pair, then `sigma_m_value`
/// against the corestricted codifferential and the two codifferentials on
/// every basis monomial.
pub fn verify_sigma_chain_map(nvars: usize, budget: XiBudget) -> Result<SigmaReport> {
    let mut rep = SigmaReport::default();
    let ls = letters(nvars, budget.max_coef_deg);
    for a in &ls {
        for b in &ls {
            rep.letter_pairs += 1;
            let (ca, cb) = (letter_cochain(a), letter_cochain(b));
            let (va, vb) = (a.to_polyvector(), b.to_polyvector());
            if !cochain_eq(&ca.gerst_bracket(&cb), &hkr_any(&va.schouten(&vb), nvars)) {
                rep.mismatches.push(format!("bracket {a}, {b}"));
            }
            if !(a.is_der() && b.is_der()) && !cochain_eq(&ca.cup(&cb), &hkr_any(&va.wedge(&vb), nvars)) {
                rep.mismatches.push(format!("cup {a}, {b}"));
            }
        }
    }
    let vx = Xi::new(nvars);
    let cx = Xi::with_algebra(CAlgebra { nvars });
    for m in xi_basis(nvars, budget) {
        rep.monomials += 1;
        let dv = vx.d_mono(&m)?;
        let want = hkr_any(&single_letter_part(&dv, nvars), nvars);
        if !cochain_eq(&sigma_m_value(&m, nvars), &want) {
            rep.mismatches.push(format!("value {}", fmt_xi(&m)));
        }
        if cx.d_mono(&m)? != dv {
            rep.mismatches.push(format!("codifferential {}", fmt_xi(&m)));
        }
    }
    Ok(rep)
}
