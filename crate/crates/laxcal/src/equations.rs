//! The equational theory of each flavor as an executable catalog.
//!
//! Every rule is a schema over typed metavariables. [`instantiate`] turns a
//! rule plus concrete bindings into a pair of well-typed terms, validating
//! the premises as it goes; [`rewrite_step`] applies the beta, associativity
//! and commutation rules left to right at any position. Eta rules are never
//! oriented (expansion does not terminate); they participate only as schema
//! instances, which normalization must already equate.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ope::{rename, weaken, Ope};
use crate::syntax::{Ctx, Flavor, Term, Type};
use crate::typing::{infer, substitute};

/// Identifiers for the rules of the four equational theories, six shared
/// simply-typed rules plus thirteen modal ones.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    UnitEta,
    ProdEta,
    ProdBeta1,
    ProdBeta2,
    FunEta,
    FunBeta,
    MlDiaBeta,
    MlDiaEta,
    MlDiaAss,
    SlDiaEta,
    SlDiaBeta,
    RlDiaEta,
    RlDiaBeta1,
    RlDiaBeta2,
    JlDiaEta,
    JlDiaBeta1,
    JlDiaBeta2,
    JlDiaCom,
    JlDiaAss,
}

/// Catalog entry: canonical name, flavors the rule belongs to, metavariable
/// names in binding order, and whether the rule is an eta rule (excluded
/// from oriented rewriting).
#[derive(Debug, Copy, Clone)]
pub struct RuleInfo {
    pub id: RuleId,
    pub name: &'static str,
    pub flavors: &'static [Flavor],
    pub metavars: &'static [&'static str],
    pub is_eta: bool,
}

const ALL_FLAVORS: &[Flavor] = &[Flavor::Slc, Flavor::Rlc, Flavor::Jlc, Flavor::Mlc];
const SLC: &[Flavor] = &[Flavor::Slc];
const RLC: &[Flavor] = &[Flavor::Rlc];
const JLC: &[Flavor] = &[Flavor::Jlc];
const MLC: &[Flavor] = &[Flavor::Mlc];

/// The full rule catalog, in a fixed order.
pub const CATALOG: [RuleInfo; 19] = [
    RuleInfo { id: RuleId::UnitEta, name: "1-eta", flavors: ALL_FLAVORS, metavars: &["t"], is_eta: true },
    RuleInfo { id: RuleId::ProdEta, name: "*-eta", flavors: ALL_FLAVORS, metavars: &["t"], is_eta: true },
    RuleInfo { id: RuleId::ProdBeta1, name: "*-beta1", flavors: ALL_FLAVORS, metavars: &["t", "u"], is_eta: false },
    RuleInfo { id: RuleId::ProdBeta2, name: "*-beta2", flavors: ALL_FLAVORS, metavars: &["t", "u"], is_eta: false },
    RuleInfo { id: RuleId::FunEta, name: "->-eta", flavors: ALL_FLAVORS, metavars: &["t"], is_eta: true },
    RuleInfo { id: RuleId::FunBeta, name: "->-beta", flavors: ALL_FLAVORS, metavars: &["t", "u"], is_eta: false },
    RuleInfo { id: RuleId::MlDiaBeta, name: "ML/<>-beta", flavors: MLC, metavars: &["t", "u"], is_eta: false },
    RuleInfo { id: RuleId::MlDiaEta, name: "ML/<>-eta", flavors: MLC, metavars: &["t"], is_eta: true },
    RuleInfo { id: RuleId::MlDiaAss, name: "ML/<>-ass", flavors: MLC, metavars: &["t", "u", "u2"], is_eta: false },
    RuleInfo { id: RuleId::SlDiaEta, name: "SL/<>-eta", flavors: SLC, metavars: &["t"], is_eta: true },
    RuleInfo { id: RuleId::SlDiaBeta, name: "SL/<>-beta", flavors: SLC, metavars: &["t", "u", "u2"], is_eta: false },
    RuleInfo { id: RuleId::RlDiaEta, name: "RL/<>-eta", flavors: RLC, metavars: &["t"], is_eta: true },
    RuleInfo { id: RuleId::RlDiaBeta1, name: "RL/<>-beta1", flavors: RLC, metavars: &["t", "u", "u2"], is_eta: false },
    RuleInfo { id: RuleId::RlDiaBeta2, name: "RL/<>-beta2", flavors: RLC, metavars: &["t", "u"], is_eta: false },
    RuleInfo { id: RuleId::JlDiaEta, name: "JL/<>-eta", flavors: JLC, metavars: &["t"], is_eta: true },
    RuleInfo { id: RuleId::JlDiaBeta1, name: "JL/<>-beta1", flavors: JLC, metavars: &["t", "u", "u2"], is_eta: false },
    RuleInfo { id: RuleId::JlDiaBeta2, name: "JL/<>-beta2", flavors: JLC, metavars: &["t", "u", "u2"], is_eta: false },
    RuleInfo { id: RuleId::JlDiaCom, name: "JL/<>-com", flavors: JLC, metavars: &["t", "u", "u2"], is_eta: false },
    RuleInfo { id: RuleId::JlDiaAss, name: "JL/<>-ass", flavors: JLC, metavars: &["t", "u", "u2"], is_eta: false },
];

pub fn rule_info(id: RuleId) -> &'static RuleInfo {
    CATALOG.iter().find(|r| r.id == id).expect("every rule is cataloged")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstantiateError {
    WrongArity { rule: RuleId, expected: usize, got: usize },
    /// The rule does not belong to the requested flavor's theory.
    FlavorMismatch { rule: RuleId, flavor: Flavor },
    BindingTypeMismatch { metavar: &'static str, detail: String },
}

impl fmt::Display for InstantiateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstantiateError::WrongArity { rule, expected, got } => {
                write!(f, "{rule:?} takes {expected} bindings, got {got}")
            }
            InstantiateError::FlavorMismatch { rule, flavor } => {
                write!(f, "{rule:?} is not part of the {flavor} theory")
            }
            InstantiateError::BindingTypeMismatch { metavar, detail } => {
                write!(f, "binding `{metavar}` is unsuitable: {detail}")
            }
        }
    }
}

fn mismatch(metavar: &'static str, detail: String) -> InstantiateError {
    InstantiateError::BindingTypeMismatch { metavar, detail }
}

fn typed(
    flavor: Flavor,
    ctx: &Ctx,
    metavar: &'static str,
    t: &Term,
) -> Result<Type, InstantiateError> {
    infer(flavor, ctx, t).map_err(|e| mismatch(metavar, alloc::format!("{e}")))
}

fn dia_typed(
    flavor: Flavor,
    ctx: &Ctx,
    metavar: &'static str,
    t: &Term,
) -> Result<Type, InstantiateError> {
    match typed(flavor, ctx, metavar, t)? {
        Type::Dia(a) => Ok(*a),
        other => Err(mismatch(metavar, alloc::format!("expected a `<>` type, got {other}"))),
    }
}

// Weaken `u2 : Γ, y:B |- C` to `Γ, x:A, y:B |- C` by inserting `A` under the
// topmost binder.
fn weaken_under_top(ctx: &Ctx, inserted: &Type, top: &Type, u2: &Term) -> Term {
    let i = Ope::keep(top.clone(), Ope::drop(inserted.clone(), Ope::id(ctx)));
    weaken(&i, u2)
}

/// Instantiate a rule schema at concrete bindings, in catalog order of the
/// rule's metavariables, producing the `(lhs, rhs)` pair of terms. Both
/// sides are well-typed at the same type under `ctx` whenever the bindings
/// satisfy the rule's premises.
pub fn instantiate(
    id: RuleId,
    flavor: Flavor,
    ctx: &Ctx,
    bindings: &[Term],
) -> Result<(Term, Term), InstantiateError> {
    let info = rule_info(id);
    if !info.flavors.contains(&flavor) {
        return Err(InstantiateError::FlavorMismatch { rule: id, flavor });
    }
    if bindings.len() != info.metavars.len() {
        return Err(InstantiateError::WrongArity {
            rule: id,
            expected: info.metavars.len(),
            got: bindings.len(),
        });
    }
    match id {
        RuleId::UnitEta => {
            let t = &bindings[0];
            match typed(flavor, ctx, "t", t)? {
                Type::Unit => Ok((t.clone(), Term::Unit)),
                other => Err(mismatch("t", alloc::format!("expected type 1, got {other}"))),
            }
        }
        RuleId::ProdEta => {
            let t = &bindings[0];
            match typed(flavor, ctx, "t", t)? {
                Type::Prod(..) => Ok((
                    t.clone(),
                    Term::pair(Term::fst(t.clone()), Term::snd(t.clone())),
                )),
                other => Err(mismatch("t", alloc::format!("expected a product, got {other}"))),
            }
        }
        RuleId::ProdBeta1 | RuleId::ProdBeta2 => {
            let (t, u) = (&bindings[0], &bindings[1]);
            typed(flavor, ctx, "t", t)?;
            typed(flavor, ctx, "u", u)?;
            let pair = Term::pair(t.clone(), u.clone());
            if id == RuleId::ProdBeta1 {
                Ok((Term::fst(pair), t.clone()))
            } else {
                Ok((Term::snd(pair), u.clone()))
            }
        }
        RuleId::FunEta => {
            let t = &bindings[0];
            match typed(flavor, ctx, "t", t)? {
                Type::Fun(dom, _) => {
                    let wk = weaken(&Ope::drop((*dom).clone(), Ope::id(ctx)), t);
                    let rhs = Term::lam((*dom).clone(), Term::app(wk, Term::Var(0)));
                    Ok((t.clone(), rhs))
                }
                other => Err(mismatch("t", alloc::format!("expected a function, got {other}"))),
            }
        }
        RuleId::FunBeta => {
            // t lives under the binder; its domain is read off u.
            let (t, u) = (&bindings[0], &bindings[1]);
            let dom = typed(flavor, ctx, "u", u)?;
            typed(flavor, &ctx.extend(dom.clone()), "t", t)?;
            let lhs = Term::app(Term::lam(dom, t.clone()), u.clone());
            Ok((lhs, substitute(t, u)))
        }
        RuleId::MlDiaBeta => {
            // let x = return t in u  ==  u[t/x]
            let (t, u) = (&bindings[0], &bindings[1]);
            let a = typed(flavor, ctx, "t", t)?;
            dia_typed(flavor, &ctx.extend(a), "u", u)?;
            let lhs = Term::let_in(Term::ret(t.clone()), u.clone());
            Ok((lhs, substitute(u, t)))
        }
        RuleId::MlDiaEta => {
            // t  ==  let x = t in return x
            let t = &bindings[0];
            dia_typed(flavor, ctx, "t", t)?;
            Ok((t.clone(), Term::let_in(t.clone(), Term::ret(Term::Var(0)))))
        }
        RuleId::MlDiaAss => {
            // let y = (let x = t in u) in u2  ==  let x = t in (let y = u in wk u2)
            let (t, u, u2) = (&bindings[0], &bindings[1], &bindings[2]);
            let a = typed_dia(flavor, ctx, t)?;
            let b = dia_typed(flavor, &ctx.extend(a.clone()), "u", u)?;
            dia_typed(flavor, &ctx.extend(b.clone()), "u2", u2)?;
            let lhs = Term::let_in(Term::let_in(t.clone(), u.clone()), u2.clone());
            let wk_u2 = weaken_under_top(ctx, &a, &b, u2);
            let rhs = Term::let_in(t.clone(), Term::let_in(u.clone(), wk_u2));
            Ok((lhs, rhs))
        }
        RuleId::SlDiaEta | RuleId::RlDiaEta | RuleId::JlDiaEta => {
            // t  ==  letmap x = t in x
            let t = &bindings[0];
            dia_typed(flavor, ctx, "t", t)?;
            Ok((t.clone(), Term::letmap(t.clone(), Term::Var(0))))
        }
        RuleId::SlDiaBeta | RuleId::RlDiaBeta1 | RuleId::JlDiaBeta1 => {
            // letmap y = (letmap x = t in u) in u2
            //   ==  letmap x = t in (wk u2)[u/y]
            let (t, u, u2) = (&bindings[0], &bindings[1], &bindings[2]);
            let a = typed_dia(flavor, ctx, t)?;
            let b = typed(flavor, &ctx.extend(a.clone()), "u", u)?;
            typed(flavor, &ctx.extend(b.clone()), "u2", u2)?;
            let lhs = Term::letmap(Term::letmap(t.clone(), u.clone()), u2.clone());
            let wk_u2 = weaken_under_top(ctx, &a, &b, u2);
            let rhs = Term::letmap(t.clone(), substitute(&wk_u2, u));
            Ok((lhs, rhs))
        }
        RuleId::RlDiaBeta2 => {
            // letmap x = return t in u  ==  return (u[t/x])
            let (t, u) = (&bindings[0], &bindings[1]);
            let a = typed(flavor, ctx, "t", t)?;
            typed(flavor, &ctx.extend(a), "u", u)?;
            let lhs = Term::letmap(Term::ret(t.clone()), u.clone());
            Ok((lhs, Term::ret(substitute(u, t))))
        }
        RuleId::JlDiaBeta2 => {
            // letjoin y = (letmap x = t in u) in u2
            //   ==  letjoin x = t in (wk u2)[u/y]
            let (t, u, u2) = (&bindings[0], &bindings[1], &bindings[2]);
            let a = typed_dia(flavor, ctx, t)?;
            let b = typed(flavor, &ctx.extend(a.clone()), "u", u)?;
            dia_typed(flavor, &ctx.extend(b.clone()), "u2", u2)?;
            let lhs = Term::letjoin(Term::letmap(t.clone(), u.clone()), u2.clone());
            let wk_u2 = weaken_under_top(ctx, &a, &b, u2);
            let rhs = Term::letjoin(t.clone(), substitute(&wk_u2, u));
            Ok((lhs, rhs))
        }
        RuleId::JlDiaCom => {
            // letmap y = (letjoin x = t in u) in u2
            //   ==  letjoin x = t in (letmap y = u in wk u2)
            let (t, u, u2) = (&bindings[0], &bindings[1], &bindings[2]);
            let a = typed_dia(flavor, ctx, t)?;
            let b = dia_typed(flavor, &ctx.extend(a.clone()), "u", u)?;
            typed(flavor, &ctx.extend(b.clone()), "u2", u2)?;
            let lhs = Term::letmap(Term::letjoin(t.clone(), u.clone()), u2.clone());
            let wk_u2 = weaken_under_top(ctx, &a, &b, u2);
            let rhs = Term::letjoin(t.clone(), Term::letmap(u.clone(), wk_u2));
            Ok((lhs, rhs))
        }
        RuleId::JlDiaAss => {
            // letjoin y = (letjoin x = t in u) in u2
            //   ==  letjoin x = t in (letjoin y = u in wk u2)
            let (t, u, u2) = (&bindings[0], &bindings[1], &bindings[2]);
            let a = typed_dia(flavor, ctx, t)?;
            let b = dia_typed(flavor, &ctx.extend(a.clone()), "u", u)?;
            dia_typed(flavor, &ctx.extend(b.clone()), "u2", u2)?;
            let lhs = Term::letjoin(Term::letjoin(t.clone(), u.clone()), u2.clone());
            let wk_u2 = weaken_under_top(ctx, &a, &b, u2);
            let rhs = Term::letjoin(t.clone(), Term::letjoin(u.clone(), wk_u2));
            Ok((lhs, rhs))
        }
    }
}

fn typed_dia(flavor: Flavor, ctx: &Ctx, t: &Term) -> Result<Type, InstantiateError> {
    dia_typed(flavor, ctx, "t", t)
}

// Weaken `u2 : Γ, y:B |- _` structurally to `Γ, x:A, y:B |- _`; the types
// are irrelevant for the renaming, so this works in untyped rewriting too.
fn lift_under_top(u2: &Term) -> Term {
    rename(u2, &|k| if k == 0 { 0 } else { k + 1 })
}

/// All terms reachable from `t` by one left-to-right application of a beta,
/// associativity or commutation rule of the flavor, at any position.
pub fn rewrite_step(flavor: Flavor, t: &Term) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    collect_steps(flavor, t, &mut out);
    out
}

fn collect_steps(flavor: Flavor, t: &Term, out: &mut BTreeSet<Term>) {
    root_steps(flavor, t, out);
    match t {
        Term::Var(_) | Term::Unit => {}
        Term::Pair(a, b) => {
            for_each_step(flavor, a, out, |a2| Term::pair(a2, (**b).clone()));
            for_each_step(flavor, b, out, |b2| Term::pair((**a).clone(), b2));
        }
        Term::Fst(a) => for_each_step(flavor, a, out, Term::fst),
        Term::Snd(a) => for_each_step(flavor, a, out, Term::snd),
        Term::Return(a) => for_each_step(flavor, a, out, Term::ret),
        Term::Lam(ann, a) => {
            let ann = ann.clone();
            for_each_step(flavor, a, out, move |a2| {
                Term::Lam(ann.clone(), alloc::boxed::Box::new(a2))
            });
        }
        Term::App(a, b) => {
            for_each_step(flavor, a, out, |a2| Term::app(a2, (**b).clone()));
            for_each_step(flavor, b, out, |b2| Term::app((**a).clone(), b2));
        }
        Term::LetMap(a, b) => {
            for_each_step(flavor, a, out, |a2| Term::letmap(a2, (**b).clone()));
            for_each_step(flavor, b, out, |b2| Term::letmap((**a).clone(), b2));
        }
        Term::LetJoin(a, b) => {
            for_each_step(flavor, a, out, |a2| Term::letjoin(a2, (**b).clone()));
            for_each_step(flavor, b, out, |b2| Term::letjoin((**a).clone(), b2));
        }
        Term::Let(a, b) => {
            for_each_step(flavor, a, out, |a2| Term::let_in(a2, (**b).clone()));
            for_each_step(flavor, b, out, |b2| Term::let_in((**a).clone(), b2));
        }
    }
}

fn for_each_step<F: Fn(Term) -> Term>(
    flavor: Flavor,
    child: &Term,
    out: &mut BTreeSet<Term>,
    rebuild: F,
) {
    for stepped in rewrite_step(flavor, child) {
        out.insert(rebuild(stepped));
    }
}

fn root_steps(flavor: Flavor, t: &Term, out: &mut BTreeSet<Term>) {
    match t {
        Term::App(f, arg) => {
            if let Term::Lam(_, body) = &**f {
                out.insert(substitute(body, arg));
            }
        }
        Term::Fst(p) => {
            if let Term::Pair(a, _) = &**p {
                out.insert((**a).clone());
            }
        }
        Term::Snd(p) => {
            if let Term::Pair(_, b) = &**p {
                out.insert((**b).clone());
            }
        }
        Term::LetMap(subject, u2) => match &**subject {
            // SL/<>-beta, RL/<>-beta1, JL/<>-beta1
            Term::LetMap(t0, u) => {
                out.insert(Term::letmap((**t0).clone(), substitute(&lift_under_top(u2), u)));
            }
            // RL/<>-beta2
            Term::Return(t0) if flavor.has_return() => {
                out.insert(Term::ret(substitute(u2, t0)));
            }
            // JL/<>-com
            Term::LetJoin(t0, u) => {
                out.insert(Term::letjoin(
                    (**t0).clone(),
                    Term::letmap((**u).clone(), lift_under_top(u2)),
                ));
            }
            _ => {}
        },
        Term::LetJoin(subject, u2) => match &**subject {
            // JL/<>-beta2
            Term::LetMap(t0, u) => {
                out.insert(Term::letjoin((**t0).clone(), substitute(&lift_under_top(u2), u)));
            }
            // JL/<>-ass
            Term::LetJoin(t0, u) => {
                out.insert(Term::letjoin(
                    (**t0).clone(),
                    Term::letjoin((**u).clone(), lift_under_top(u2)),
                ));
            }
            _ => {}
        },
        Term::Let(subject, u2) => match &**subject {
            // ML/<>-beta
            Term::Return(t0) => {
                out.insert(substitute(u2, t0));
            }
            // ML/<>-ass
            Term::Let(t0, u) => {
                out.insert(Term::let_in(
                    (**t0).clone(),
                    Term::let_in((**u).clone(), lift_under_top(u2)),
                ));
            }
            _ => {}
        },
        _ => {}
    }
}

/// All terms reachable from `t` by at most `bound` rewrite steps,
/// including `t` itself.
pub fn rewrite_closure(flavor: Flavor, t: &Term, bound: usize, cap: usize) -> Vec<Term> {
    let mut seen: BTreeSet<Term> = BTreeSet::new();
    seen.insert(t.clone());
    let mut frontier: Vec<Term> = alloc::vec![t.clone()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for term in &frontier {
            for stepped in rewrite_step(flavor, term) {
                if seen.len() >= cap {
                    return seen.into_iter().collect();
                }
                if seen.insert(stepped.clone()) {
                    next.push(stepped);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nbe::decide_equal;

    fn base() -> Type {
        Type::Base
    }

    #[test]
    fn catalog_counts_match_the_theories() {
        assert_eq!(CATALOG.len(), 19);
        let stlc = CATALOG.iter().filter(|r| r.flavors.len() == 4).count();
        assert_eq!(stlc, 6);
        for flavor in Flavor::ALL {
            let modal = CATALOG
                .iter()
                .filter(|r| r.flavors.len() == 1 && r.flavors.contains(&flavor))
                .count();
            let expected = match flavor {
                Flavor::Slc => 2,
                Flavor::Rlc => 3,
                Flavor::Mlc => 3,
                Flavor::Jlc => 5,
            };
            assert_eq!(modal, expected, "{flavor}");
        }
    }

    #[test]
    fn fun_beta_on_identity() {
        let ctx = Ctx::empty();
        let (lhs, rhs) =
            instantiate(RuleId::FunBeta, Flavor::Slc, &ctx, &[Term::Var(0), Term::Unit]).unwrap();
        assert_eq!(lhs, Term::app(Term::lam(Type::Unit, Term::Var(0)), Term::Unit));
        assert_eq!(rhs, Term::Unit);
        assert_eq!(rewrite_step(Flavor::Slc, &lhs), BTreeSet::from([rhs]));
    }

    #[test]
    fn ml_dia_beta_instance() {
        // t = x (x:i), u = return y: lhs `let y = return x in return y`,
        // rhs `return x`.
        let ctx = Ctx::from_types(alloc::vec![base()]);
        let (lhs, rhs) = instantiate(
            RuleId::MlDiaBeta,
            Flavor::Mlc,
            &ctx,
            &[Term::Var(0), Term::ret(Term::Var(0))],
        )
        .unwrap();
        assert_eq!(lhs, Term::let_in(Term::ret(Term::Var(0)), Term::ret(Term::Var(0))));
        assert_eq!(rhs, Term::ret(Term::Var(0)));
        assert!(rewrite_step(Flavor::Mlc, &lhs).contains(&rhs));
        assert_eq!(decide_equal(Flavor::Mlc, &ctx, &lhs, &rhs), Ok(true));
    }

    #[test]
    fn sl_dia_beta_instance_matches_the_stated_substitution() {
        // t = z (z:<>i), u = y, u2 = (y, y):
        // lhs `letmap y = (letmap x = z in x) in (y, y)`,
        // rhs `letmap x = z in (x, x)`.
        let ctx = Ctx::from_types(alloc::vec![Type::dia(base())]);
        let (lhs, rhs) = instantiate(
            RuleId::SlDiaBeta,
            Flavor::Slc,
            &ctx,
            &[Term::Var(0), Term::Var(0), Term::pair(Term::Var(0), Term::Var(0))],
        )
        .unwrap();
        assert_eq!(
            lhs,
            Term::letmap(
                Term::letmap(Term::Var(0), Term::Var(0)),
                Term::pair(Term::Var(0), Term::Var(0)),
            )
        );
        assert_eq!(rhs, Term::letmap(Term::Var(0), Term::pair(Term::Var(0), Term::Var(0))));
        assert!(rewrite_step(Flavor::Slc, &lhs).contains(&rhs));
    }

    #[test]
    fn instantiated_sides_share_a_type() {
        let ctx = Ctx::from_types(alloc::vec![Type::dia(base()), base()]);
        let cases: &[(RuleId, Flavor, Vec<Term>)] = &[
            (RuleId::ProdEta, Flavor::Slc, alloc::vec![Term::pair(Term::Var(1), Term::Var(1))]),
            (RuleId::MlDiaEta, Flavor::Mlc, alloc::vec![Term::Var(1)]),
            (RuleId::SlDiaEta, Flavor::Slc, alloc::vec![Term::Var(1)]),
            (
                RuleId::MlDiaAss,
                Flavor::Mlc,
                alloc::vec![
                    Term::Var(1),
                    Term::ret(Term::Var(0)),
                    Term::ret(Term::pair(Term::Var(0), Term::Var(0)))
                ],
            ),
            (
                RuleId::JlDiaCom,
                Flavor::Jlc,
                alloc::vec![
                    Term::Var(1),
                    Term::letmap(Term::Var(2), Term::Var(0)),
                    Term::pair(Term::Var(0), Term::Var(0))
                ],
            ),
        ];
        for (rule, flavor, bindings) in cases {
            let (lhs, rhs) = instantiate(*rule, *flavor, &ctx, bindings).unwrap();
            let lt = infer(*flavor, &ctx, &lhs).unwrap();
            let rt = infer(*flavor, &ctx, &rhs).unwrap();
            assert_eq!(lt, rt, "{rule:?}");
        }
    }

    #[test]
    fn binding_mismatch_is_reported() {
        let ctx = Ctx::empty();
        let err = instantiate(RuleId::UnitEta, Flavor::Slc, &ctx, &[Term::pair(Term::Unit, Term::Unit)]);
        assert!(matches!(err, Err(InstantiateError::BindingTypeMismatch { .. })));
        let err = instantiate(RuleId::MlDiaEta, Flavor::Slc, &ctx, &[Term::Unit]);
        assert!(matches!(err, Err(InstantiateError::FlavorMismatch { .. })));
    }

    #[test]
    fn rewrite_handles_projections_and_congruence() {
        let t = Term::fst(Term::pair(Term::Unit, Term::Unit));
        assert_eq!(rewrite_step(Flavor::Slc, &t), BTreeSet::from([Term::Unit]));

        // A redex under a binder is found.
        let t = Term::lam(base(), Term::snd(Term::pair(Term::Var(0), Term::Unit)));
        assert_eq!(
            rewrite_step(Flavor::Slc, &t),
            BTreeSet::from([Term::lam(base(), Term::Unit)])
        );
    }

    #[test]
    fn rewrite_is_flavor_gated() {
        // `letmap x = return t in u` only steps where return exists.
        let t = Term::letmap(Term::ret(Term::Unit), Term::Var(0));
        assert!(rewrite_step(Flavor::Slc, &t).is_empty());
        assert_eq!(
            rewrite_step(Flavor::Rlc, &t),
            BTreeSet::from([Term::ret(Term::Unit)])
        );
    }

    #[test]
    fn rewrite_steps_preserve_types() {
        let ctx = Ctx::from_types(alloc::vec![Type::dia(base())]);
        let t = Term::letjoin(
            Term::letmap(Term::Var(0), Term::pair(Term::Var(0), Term::Var(0))),
            Term::letmap(Term::Var(1), Term::fst(Term::Var(1))),
        );
        let ty = infer(Flavor::Jlc, &ctx, &t).unwrap();
        let steps = rewrite_step(Flavor::Jlc, &t);
        assert!(!steps.is_empty());
        for s in steps {
            assert_eq!(infer(Flavor::Jlc, &ctx, &s), Ok(ty.clone()), "step {s:?}");
        }
    }
}
