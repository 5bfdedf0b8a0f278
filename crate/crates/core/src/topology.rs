//! Bookkeeping of the global topological effect of blowing up a point:
//! connected-sum summand, Euler characteristics, and the signed Chern-class
//! generators of the relevant line bundles. The Chern entries are symbolic
//! (±generator); nothing here computes cohomology.

use alloc::string::String;

use crate::linalg::Field;
use crate::{Error, Result};

/// Euler characteristic after blowing up one point of a manifold with
/// `χ(M) = chi`. Real case: `M # RP^n`; complex case (n = complex
/// dimension): `M # conj-CP^n`. Connected-sum formula
/// `χ(M) + χ(P) − χ(S^d)` with `d` the real dimension.
pub fn euler_blowup(chi: i64, n: usize, field: Field) -> Result<i64> {
    if n < 2 {
        return Err(Error::DimensionOutOfRange(n));
    }
    let (chi_p, chi_sphere) = match field {
        Field::Real => {
            let chi_rp = if n % 2 == 0 { 1 } else { 0 };
            let chi_s = 1 + if n % 2 == 0 { 1 } else { -1 };
            (chi_rp, chi_s)
        }
        Field::Complex => (n as i64 + 1, 2),
    };
    Ok(chi + chi_p - chi_sphere)
}

/// Sign of a Chern class entry, in units of the canonical generator `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSign {
    Plus,
    Minus,
}

#[derive(Debug, Clone)]
pub struct ChernEntry {
    pub label: &'static str,
    pub bundle: &'static str,
    pub sign: GeneratorSign,
}

/// The four line-bundle identifications in the complex model: the normal
/// bundle of Σ in X is the universal bundle with first Chern class −c, while
/// the hyperplane section in CP^{n+1} carries +c and its conjugate −c.
pub fn chern_constants(n: usize) -> [ChernEntry; 4] {
    let _ = n; // the signs are dimension-independent
    [
        ChernEntry {
            label: "a",
            bundle: "nu_X(Sigma) = universal line bundle L over CP^{n-1}",
            sign: GeneratorSign::Minus,
        },
        ChernEntry {
            label: "b",
            bundle: "c_1(nu_X(Sigma))",
            sign: GeneratorSign::Minus,
        },
        ChernEntry {
            label: "c",
            bundle: "normal bundle of the hyperplane section in CP^{n+1}",
            sign: GeneratorSign::Plus,
        },
        ChernEntry {
            label: "d",
            bundle: "normal bundle of the hyperplane section in conj-CP^{n+1}",
            sign: GeneratorSign::Minus,
        },
    ]
}

/// Fixed description of the real surface case (n = 2).
#[derive(Debug, Clone)]
pub struct SurfaceBlowupSummary {
    pub sigma: String,
    pub model_bundle: String,
    pub orientable_model: bool,
    pub global_effect: String,
    pub summand: String,
    pub sigma_dim: usize,
}

pub fn surface_blowup_summary() -> SurfaceBlowupSummary {
    SurfaceBlowupSummary {
        sigma: String::from("RP^1 = S^1"),
        model_bundle: String::from("nonorientable line bundle over S^1 (Mobius band)"),
        orientable_model: false,
        global_effect: String::from("sewing in a crosscap"),
        summand: String::from("RP^2"),
        sigma_dim: 1,
    }
}

/// Connected-sum summand label for the blowup of a point.
pub fn summand_label(field: Field, n: usize) -> String {
    match field {
        Field::Real => alloc::format!("RP^{n}"),
        Field::Complex => alloc::format!("conj-CP^{n}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_examples() {
        // real surface: S^2 blown up is RP^2-summed, chi 2 + 1 - 2 = 1
        assert_eq!(euler_blowup(2, 2, Field::Real).unwrap(), 1);
        // complex surface: CP^2 (chi 3) gains n - 1 = 1
        assert_eq!(euler_blowup(3, 2, Field::Complex).unwrap(), 4);
        // odd real dimension never changes chi
        for chi in [-2, 0, 5] {
            assert_eq!(euler_blowup(chi, 3, Field::Real).unwrap(), chi);
            assert_eq!(euler_blowup(chi, 5, Field::Real).unwrap(), chi);
        }
        assert!(matches!(euler_blowup(2, 1, Field::Real), Err(Error::DimensionOutOfRange(1))));
    }

    #[test]
    fn complex_blowup_adds_n_minus_one() {
        for n in 2..=6usize {
            for chi in [0i64, 2, 7] {
                assert_eq!(
                    euler_blowup(chi, n, Field::Complex).unwrap(),
                    chi + n as i64 - 1
                );
            }
        }
    }

    #[test]
    fn two_blowups_compose() {
        // additivity sanity: blowing up twice = formula applied to updated chi
        let once = euler_blowup(2, 2, Field::Real).unwrap();
        let twice = euler_blowup(once, 2, Field::Real).unwrap();
        assert_eq!(twice, 2 + 2 * (1 - 2));
    }

    #[test]
    fn chern_signs() {
        let t = chern_constants(2);
        assert_eq!(t[1].sign, GeneratorSign::Minus); // (b)
        assert_eq!(t[2].sign, GeneratorSign::Plus); // (c)
        assert_eq!(t[3].sign, GeneratorSign::Minus); // (d)
    }

    #[test]
    fn surface_summary() {
        let s = surface_blowup_summary();
        assert_eq!(s.summand, "RP^2");
        assert!(!s.orientable_model);
        assert_eq!(s.sigma_dim, 1);
        assert_eq!(summand_label(Field::Real, 2), "RP^2");
    }
}
