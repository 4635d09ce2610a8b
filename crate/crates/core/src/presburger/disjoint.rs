use super::{Formula, LinearAtom};
use crate::barvinok::{polytope_gf, Polyhedron};
use crate::error::{Error, Result};
use crate::gf::{ExponentVector, LatticeBox, ShortGf};
use crate::lp::{is_feasible, maximize, LpResult};
use crate::num::{rat_int, Int, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// A quantifier-free formula with atoms replaced by indices into a shared atom table.
enum Qf {
    Atom(usize),
    Not(Box<Qf>),
    /// Conjunctions carry an id so a cell can mark them infeasible.
    And(usize, Vec<Qf>),
    Or(Vec<Qf>),
}

struct Compiled {
    tree: Qf,
    conjunctions: usize,
    /// `(row, rhs)` with `row · x ≤ rhs`, rows indexed by variable position.
    atoms: Vec<(Vec<Int>, Int)>,
}

fn compile(f: &Formula, vars: &[String]) -> Result<Compiled> {
    fn go(f: &Formula, vars: &[String], atoms: &mut Vec<(Vec<Int>, Int)>, ids: &mut usize) -> Result<Qf> {
        Ok(match f {
            Formula::Atom(a) => Qf::Atom(intern(a, vars, atoms)?),
            Formula::Not(g) => Qf::Not(Box::new(go(g, vars, atoms, ids)?)),
            Formula::And(gs) => {
                let kids = gs.iter().map(|g| go(g, vars, atoms, ids)).collect::<Result<_>>()?;
                *ids += 1;
                Qf::And(*ids - 1, kids)
            }
            Formula::Or(gs) => Qf::Or(gs.iter().map(|g| go(g, vars, atoms, ids)).collect::<Result<_>>()?),
            Formula::Quant { .. } => return Err(Error::Invalid("formula is not quantifier-free".into())),
        })
    }
    let mut atoms = Vec::new();
    let mut conjunctions = 0;
    let tree = go(f, vars, &mut atoms, &mut conjunctions)?;
    Ok(Compiled { tree, conjunctions, atoms })
}

fn intern(a: &LinearAtom, vars: &[String], atoms: &mut Vec<(Vec<Int>, Int)>) -> Result<usize> {
    let mut row = vec![Int::zero(); vars.len()];
    for (v, c) in &a.coeffs {
        let i = vars
            .iter()
            .position(|w| w == v)
            .ok_or_else(|| Error::Invalid(format!("variable {v} is not among the boxed variables")))?;
        row[i] = c.clone();
    }
    let key = (row, a.rhs.clone());
    if let Some(i) = atoms.iter().position(|k| *k == key) {
        return Ok(i);
    }
    atoms.push(key);
    Ok(atoms.len() - 1)
}

/// Partial assignment: atom truth values and conjunctions known to be infeasible in the cell.
#[derive(Clone)]
struct State {
    val: Vec<Option<bool>>,
    dead: Vec<bool>,
}

/// Three-valued evaluation under a partial assignment.
fn eval3(q: &Qf, st: &State) -> Option<bool> {
    match q {
        Qf::Atom(i) => st.val[*i],
        Qf::Not(g) => eval3(g, st).map(|b| !b),
        Qf::And(id, _) if st.dead[*id] => Some(false),
        Qf::And(_, gs) => {
            let mut all = Some(true);
            for g in gs {
                match eval3(g, st) {
                    Some(false) => return Some(false),
                    None => all = None,
                    _ => {}
                }
            }
            all
        }
        Qf::Or(gs) => {
            let mut any = Some(false);
            for g in gs {
                match eval3(g, st) {
                    Some(true) => return Some(true),
                    None => any = None,
                    _ => {}
                }
            }
            any
        }
    }
}

/// First undecided atom that can still influence the value.
fn undecided(q: &Qf, st: &State) -> Option<usize> {
    match q {
        Qf::Atom(i) => st.val[*i].is_none().then_some(*i),
        Qf::Not(g) => undecided(g, st),
        Qf::And(_, gs) | Qf::Or(gs) => gs.iter().filter(|g| eval3(g, st).is_none()).find_map(|g| undecided(g, st)),
    }
}

/// `(atom, polarity)` if `q` is an atom or a negated atom.
fn literal(q: &Qf) -> Option<(usize, bool)> {
    match q {
        Qf::Atom(i) => Some((*i, true)),
        Qf::Not(g) => literal(g).map(|(i, p)| (i, !p)),
        _ => None,
    }
}

/// Marks undetermined conjunctions of literals whose constraints are LP-infeasible within the cell.
fn prune_conjunctions(q: &Qf, comp: &Compiled, cell: &Cell, st: &mut State) {
    if eval3(q, st).is_some() {
        return;
    }
    match q {
        Qf::Atom(_) => {}
        Qf::Not(g) => prune_conjunctions(g, comp, cell, st),
        Qf::Or(gs) => gs.iter().for_each(|g| prune_conjunctions(g, comp, cell, st)),
        Qf::And(id, gs) => {
            let lits: Option<Vec<(usize, bool)>> = gs.iter().map(literal).collect();
            let Some(lits) = lits else {
                gs.iter().for_each(|g| prune_conjunctions(g, comp, cell, st));
                return;
            };
            let mut a = cell.a.clone();
            let mut b = cell.b.clone();
            for (i, pos) in lits.into_iter().filter(|(i, _)| st.val[*i].is_none()) {
                let (row, rhs) = &comp.atoms[i];
                if pos {
                    a.push(to_rat_row(row));
                    b.push(rat_int(rhs));
                } else {
                    a.push(row.iter().map(|x| -rat_int(x)).collect());
                    b.push(-rat_int(rhs) - Rat::one());
                }
            }
            if !is_feasible(&a, &b, cell.n) {
                st.dead[*id] = true;
            }
        }
    }
}

#[derive(Clone)]
struct Cell {
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    n: usize,
}

fn to_rat_row(row: &[Int]) -> Vec<Rat> {
    row.iter().map(rat_int).collect()
}

/// `max c·x` over the cell, `None` if infeasible.
fn lp_max(cell: &Cell, c: &[Rat]) -> Option<Rat> {
    match maximize(&cell.a, &cell.b, c) {
        LpResult::Optimal { value, .. } => Some(value),
        LpResult::Infeasible => None,
        LpResult::Unbounded => unreachable!("cells are boxed"),
    }
}

/// Splits `{x ∈ box : F(x)}` into pairwise integer-disjoint polyhedra by a decision tree over the
/// atoms of `F`. At each node the next undecided atom is fixed without branching when the cell's
/// LP range of its left-hand side already determines it; otherwise both sides are explored.
pub fn disjointify(f: &Formula, vars: &[String], bx: &LatticeBox) -> Result<Vec<Polyhedron>> {
    let n = vars.len();
    if bx.dim() != n {
        return Err(Error::Dimension { expected: n, got: bx.dim() });
    }
    let comp = compile(f, vars)?;
    if bx.is_empty() {
        return Ok(Vec::new());
    }
    let root = Polyhedron::cuboid(&bx.lo, &bx.hi.iter().map(|h| h - 1).collect::<Vec<_>>());
    let mut out = Vec::new();
    let st0 = State { val: vec![None; comp.atoms.len()], dead: vec![false; comp.conjunctions] };
    let mut stack = vec![(Cell { a: root.a, b: root.b, n }, st0)];
    while let Some((mut cell, mut st)) = stack.pop() {
        loop {
            prune_conjunctions(&comp.tree, &comp, &cell, &mut st);
            match eval3(&comp.tree, &st) {
                Some(true) => {
                    out.push(Polyhedron::new(cell.a, cell.b, n)?);
                    break;
                }
                Some(false) => break,
                None => {}
            }
            let i = undecided(&comp.tree, &st).expect("undetermined formula has an undecided atom");
            let (row, rhs) = &comp.atoms[i];
            let c = to_rat_row(row);
            let neg: Vec<Rat> = c.iter().map(|x| -x).collect();
            let (Some(hi), Some(lo)) = (lp_max(&cell, &c), lp_max(&cell, &neg).map(|v| -v)) else {
                break;
            };
            let rhs_r = rat_int(rhs);
            // integer points satisfy row·x ∈ Z, so row·x ≥ rhs + 1 is impossible when hi < rhs + 1
            let true_ok = lo <= rhs_r;
            let false_ok = hi >= &rhs_r + Rat::one();
            match (true_ok, false_ok) {
                (true, false) => st.val[i] = Some(true),
                (false, true) => st.val[i] = Some(false),
                (false, false) => break,
                (true, true) => {
                    let mut other = cell.clone();
                    other.a.push(neg.clone());
                    other.b.push(-&rhs_r - Rat::one());
                    let mut ost = st.clone();
                    ost.val[i] = Some(false);
                    stack.push((other, ost));
                    cell.a.push(c);
                    cell.b.push(rhs_r);
                    st.val[i] = Some(true);
                }
            }
        }
    }
    Ok(out)
}

/// Sum of the Barvinok GFs of the disjoint cells; its support is the truth set of `F` in the box.
pub fn qf_to_gf(f: &Formula, vars: &[String], bx: &LatticeBox) -> Result<ShortGf> {
    let n = vars.len();
    let mut out = ShortGf::zero(n).bounded(n);
    for cell in disjointify(f, vars, bx)? {
        let g = polytope_gf(&cell)?;
        out.terms.extend(g.terms);
    }
    Ok(out)
}

/// Brute-force truth set of `F` on the box.
pub fn truth_set(f: &Formula, vars: &[String], bx: &LatticeBox) -> Result<BTreeSet<ExponentVector>> {
    let mut out = BTreeSet::new();
    for p in bx.points() {
        if super::eval_formula(f, vars, &p.0)? {
            out.insert(p);
        }
    }
    Ok(out)
}
