use crate::circuit::Circuit;
use crate::cnf::{circuit_to_3cnf, cnf_to_pa};
use crate::segment::encode_pa;
use num_bigint::BigInt;
use shortgf_core::calculus::{oracle_project_limited, ProjectMode};
use shortgf_core::gf::expand;
use shortgf_core::presburger::{qf_to_gf, Formula};
use shortgf_core::{Error, ExponentVector, LatticeBox, Result, ShortGf};
use std::collections::BTreeSet;

/// Quantifier prefix over `(y, z)`: `Sigma` is `∃y ∀z`, `Pi` is `∀y ∃z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prefix {
    Sigma,
    Pi,
}

impl std::str::FromStr for Prefix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "EA" => Ok(Prefix::Sigma),
            "AE" => Ok(Prefix::Pi),
            _ => Err(Error::Invalid(format!("prefix must be EA or AE, got {s}"))),
        }
    }
}

/// A GF `f` over `(x, y, z…)` on `domain`, read through one projection/anti-projection pair:
/// `Sigma` gives `proj_x(antiproj_{x,y}(f))`, `Pi` gives `antiproj_x(antiproj_{x,y}(f))`.
#[derive(Clone, Debug)]
pub struct AltPipeline {
    pub f: ShortGf,
    pub domain: LatticeBox,
    pub prefix: Prefix,
}

impl AltPipeline {
    /// For `{x : ∃y ∀z Φ}` the GF is of `¬Φ`; for `{x : ∀y ∃z Φ}` it is of `Φ`.
    pub fn from_formula(phi: &Formula, vars: &[String], domain: LatticeBox, prefix: Prefix) -> Result<Self> {
        if vars.len() < 3 {
            return Err(Error::Invalid("need variables x, y and at least one z".into()));
        }
        let body = match prefix {
            Prefix::Sigma => Formula::Not(Box::new(phi.clone())),
            Prefix::Pi => phi.clone(),
        };
        let f = qf_to_gf(&body, vars, &domain)?;
        Ok(AltPipeline { f, domain, prefix })
    }

    /// The language on `[0, domain_x)`.
    pub fn language(&self, limit: u64) -> Result<BTreeSet<ExponentVector>> {
        let xy = self.domain.select(&[0, 1]);
        let x_box = self.domain.select(&[0]);
        let anti = oracle_project_limited(&self.f, &[0, 1], &self.domain, ProjectMode::Anti, Some(limit))?;
        let mode = match self.prefix {
            Prefix::Sigma => ProjectMode::Project,
            Prefix::Pi => ProjectMode::Anti,
        };
        let h: ShortGf = oracle_project_limited(&anti, &[0], &xy, mode, Some(limit))?;
        Ok(expand(&h, &x_box)?.support())
    }

    pub fn member(&self, x: &BigInt, limit: u64) -> Result<bool> {
        Ok(self.language(limit)?.contains(&ExponentVector(vec![x.clone()])))
    }
}

/// Alternating encoding of a circuit with certificate inputs: `Sigma` is `{x : ∃c C(x, c)}` and
/// `Pi` is `{x : ∀c C(x, c)}`, the latter as the box complement of `∃c ¬C(x, c)`.
/// The witness `y` packs the certificate bits and the gate values.
pub fn encode_alternating(c: &Circuit, prefix: Prefix, limit: u64) -> Result<AltPipeline> {
    let circ = match prefix {
        Prefix::Sigma => c.clone(),
        Prefix::Pi => c.negated(),
    };
    let enc = encode_pa(&cnf_to_pa(&circuit_to_3cnf(&circ)), limit)?;
    let domain = enc.domain();
    Ok(AltPipeline { f: enc.f, domain, prefix })
}
