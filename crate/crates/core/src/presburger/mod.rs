//! Presburger formulas over linear integer inequalities: parsing, direct evaluation,
//! disjointification into polyhedra and conversion to short GFs.

mod disjoint;
mod parse;

pub use disjoint::{disjointify, qf_to_gf, truth_set};
pub use parse::parse_pa;

use crate::error::{Error, Result};
use crate::num::Int;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// `Σ coeffs[v]·v ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAtom {
    pub coeffs: BTreeMap<String, Int>,
    pub rhs: Int,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Atom(LinearAtom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    /// Quantifier block over `vars`, each ranging over `[lo, hi)`.
    Quant { q: Quantifier, vars: Vec<String>, lo: Int, hi: Int, body: Box<Formula> },
}

impl LinearAtom {
    /// Builds `lhs ≤ rhs` from `Σ c_v v + k ≤ 0`, dropping zero coefficients.
    pub fn new(coeffs: BTreeMap<String, Int>, rhs: Int) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LinearAtom { coeffs, rhs }
    }

    /// The integer negation `Σ −c_v v ≤ −rhs − 1`.
    pub fn negate(&self) -> LinearAtom {
        LinearAtom {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), -c)).collect(),
            rhs: -&self.rhs - 1,
        }
    }

    pub fn eval(&self, env: &BTreeMap<String, Int>) -> Result<bool> {
        let mut s = Int::zero();
        for (v, c) in &self.coeffs {
            let x = env.get(v).ok_or_else(|| Error::Invalid(format!("unbound variable {v}")))?;
            s += c * x;
        }
        Ok(s <= self.rhs)
    }

    fn length(&self) -> u64 {
        let sym = |c: &Int| 1 + c.bits().max(1);
        self.coeffs.values().map(sym).sum::<u64>() + sym(&self.rhs) + 1
    }
}

impl Formula {
    pub fn and(parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            Formula::And(parts)
        }
    }

    pub fn or(parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            Formula::Or(parts)
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(|f| f.is_quantifier_free()),
            Formula::Quant { .. } => false,
        }
    }

    /// Free variables in order of first appearance.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula::Atom(a) => {
                for v in a.coeffs.keys() {
                    if !bound.contains(v) && !out.contains(v) {
                        out.push(v.clone());
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Quant { vars, body, .. } => {
                let k = bound.len();
                bound.extend(vars.iter().cloned());
                body.collect_free(bound, out);
                bound.truncate(k);
            }
        }
    }

    /// Total length: symbols plus binary lengths of all constants.
    pub fn length(&self) -> u64 {
        match self {
            Formula::Atom(a) => a.length(),
            Formula::Not(f) => 1 + f.length(),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.len().saturating_sub(1) as u64 + fs.iter().map(|f| f.length()).sum::<u64>()
            }
            Formula::Quant { vars, lo, hi, body, .. } => {
                1 + vars.len() as u64 + lo.bits().max(1) + hi.bits().max(1) + body.length()
            }
        }
    }

    pub fn atom_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(f) => f.atom_count(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(|f| f.atom_count()).sum(),
            Formula::Quant { body, .. } => body.atom_count(),
        }
    }

    /// Direct recursive evaluation; quantifier blocks enumerate their whole range.
    pub fn eval(&self, env: &BTreeMap<String, Int>) -> Result<bool> {
        match self {
            Formula::Atom(a) => a.eval(env),
            Formula::Not(f) => Ok(!f.eval(env)?),
            Formula::And(fs) => {
                for f in fs {
                    if !f.eval(env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Or(fs) => {
                for f in fs {
                    if f.eval(env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Quant { q, vars, lo, hi, body } => {
                let mut env = env.clone();
                eval_block(*q, vars, lo, hi, body, &mut env)
            }
        }
    }
}

fn eval_block(
    q: Quantifier,
    vars: &[String],
    lo: &Int,
    hi: &Int,
    body: &Formula,
    env: &mut BTreeMap<String, Int>,
) -> Result<bool> {
    let Some((v, rest)) = vars.split_first() else {
        return body.eval(env);
    };
    let want = q == Quantifier::Exists;
    let mut x = lo.clone();
    while x < *hi {
        env.insert(v.clone(), x.clone());
        if eval_block(q, rest, lo, hi, body, env)? == want {
            return Ok(want);
        }
        x += 1;
    }
    Ok(!want)
}

/// Evaluates `f` at the assignment `vars[i] = point[i]`.
pub fn eval_formula(f: &Formula, vars: &[String], point: &[Int]) -> Result<bool> {
    if vars.len() != point.len() {
        return Err(Error::Dimension { expected: vars.len(), got: point.len() });
    }
    let env = vars.iter().cloned().zip(point.iter().cloned()).collect();
    f.eval(&env)
}

impl fmt::Display for LinearAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (v, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{mag}*{v}")?;
            }
        }
        write!(f, " <= {}", self.rhs)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, fs: &[Formula], op: &str| -> fmt::Result {
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "({g})")?;
            }
            Ok(())
        };
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(g) => write!(f, "!({g})"),
            Formula::And(fs) if fs.is_empty() => write!(f, "0 <= 0"),
            Formula::Or(fs) if fs.is_empty() => write!(f, "0 <= -1"),
            Formula::And(fs) => join(f, fs, "&"),
            Formula::Or(fs) => join(f, fs, "|"),
            Formula::Quant { q, vars, lo, hi, body } => {
                let k = if *q == Quantifier::Exists { 'E' } else { 'A' };
                write!(f, "{k} {} [{lo},{hi}) : {body}", vars.join(","))
            }
        }
    }
}
