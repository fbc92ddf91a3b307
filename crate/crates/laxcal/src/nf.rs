//! Eta-long beta-normal forms: grammar, embedding, bounded enumeration, and
//! the inadmissibility checker.
//!
//! A [`Neutral`] is an elimination spine headed by a variable; its type is
//! always a subformula of a context entry. A [`NormalForm`] is
//! introduction-directed, with `Up` injecting neutrals at base type only
//! (the eta-long discipline). The modal constructors mirror the binding
//! structure of each flavor's grammar, which is what makes bounded
//! enumeration a genuine derivability check.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::ope::Ope;
use crate::syntax::{Ctx, Flavor, Term, Type};

/// Elimination-only term headed by a variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Neutral {
    Var(usize),
    Fst(Box<Neutral>),
    Snd(Box<Neutral>),
    App(Box<Neutral>, Box<NormalForm>),
}

/// Eta-long beta-normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormalForm {
    /// A neutral at base type.
    Up(Neutral),
    Unit,
    Pair(Box<NormalForm>, Box<NormalForm>),
    Lam(Type, Box<NormalForm>),
    /// `letmap x = n in m` with `m` normal (slc, rlc, jlc).
    LetMap(Neutral, Box<NormalForm>),
    /// `return m` (rlc, mlc).
    Return(Box<NormalForm>),
    /// `letjoin x = n in m` with `m` a modal normal form (jlc).
    LetJoin(Neutral, Box<NormalForm>),
    /// `let x = n in m` with `m` a modal normal form (mlc).
    Let(Neutral, Box<NormalForm>),
}

impl Neutral {
    pub fn fst(n: Neutral) -> Neutral {
        Neutral::Fst(Box::new(n))
    }

    pub fn snd(n: Neutral) -> Neutral {
        Neutral::Snd(Box::new(n))
    }

    pub fn app(n: Neutral, m: NormalForm) -> Neutral {
        Neutral::App(Box::new(n), Box::new(m))
    }

    /// Derivation height, counting `Var` as a leaf.
    pub fn height(&self) -> usize {
        match self {
            Neutral::Var(_) => 1,
            Neutral::Fst(n) | Neutral::Snd(n) => 1 + n.height(),
            Neutral::App(n, m) => 1 + n.height().max(m.height()),
        }
    }
}

impl NormalForm {
    pub fn pair(a: NormalForm, b: NormalForm) -> NormalForm {
        NormalForm::Pair(Box::new(a), Box::new(b))
    }

    pub fn lam(dom: Type, body: NormalForm) -> NormalForm {
        NormalForm::Lam(dom, Box::new(body))
    }

    pub fn letmap(n: Neutral, m: NormalForm) -> NormalForm {
        NormalForm::LetMap(n, Box::new(m))
    }

    pub fn ret(m: NormalForm) -> NormalForm {
        NormalForm::Return(Box::new(m))
    }

    pub fn letjoin(n: Neutral, m: NormalForm) -> NormalForm {
        NormalForm::LetJoin(n, Box::new(m))
    }

    pub fn let_in(n: Neutral, m: NormalForm) -> NormalForm {
        NormalForm::Let(n, Box::new(m))
    }

    /// Derivation height of the normal-form judgment.
    pub fn height(&self) -> usize {
        match self {
            NormalForm::Unit => 1,
            NormalForm::Up(n) => 1 + n.height(),
            NormalForm::Pair(a, b) => 1 + a.height().max(b.height()),
            NormalForm::Lam(_, m) | NormalForm::Return(m) => 1 + m.height(),
            NormalForm::LetMap(n, m) | NormalForm::LetJoin(n, m) | NormalForm::Let(n, m) => {
                1 + n.height().max(m.height())
            }
        }
    }

    /// Do all modal constructors in here belong to `flavor`?
    pub fn valid_for(&self, flavor: Flavor) -> bool {
        match self {
            NormalForm::Up(n) => neutral_valid_for(n, flavor),
            NormalForm::Unit => true,
            NormalForm::Pair(a, b) => a.valid_for(flavor) && b.valid_for(flavor),
            NormalForm::Lam(_, m) => m.valid_for(flavor),
            NormalForm::LetMap(n, m) => {
                flavor.has_letmap() && neutral_valid_for(n, flavor) && m.valid_for(flavor)
            }
            NormalForm::Return(m) => flavor.has_return() && m.valid_for(flavor),
            NormalForm::LetJoin(n, m) => {
                flavor.has_letjoin() && neutral_valid_for(n, flavor) && m.valid_for(flavor)
            }
            NormalForm::Let(n, m) => {
                flavor.has_let() && neutral_valid_for(n, flavor) && m.valid_for(flavor)
            }
        }
    }
}

fn neutral_valid_for(n: &Neutral, flavor: Flavor) -> bool {
    match n {
        Neutral::Var(_) => true,
        Neutral::Fst(n) | Neutral::Snd(n) => neutral_valid_for(n, flavor),
        Neutral::App(n, m) => neutral_valid_for(n, flavor) && m.valid_for(flavor),
    }
}

/// Forget the normal/neutral structure, producing an ordinary term.
pub fn embed(nf: &NormalForm) -> Term {
    match nf {
        NormalForm::Up(n) => embed_neutral(n),
        NormalForm::Unit => Term::Unit,
        NormalForm::Pair(a, b) => Term::pair(embed(a), embed(b)),
        NormalForm::Lam(dom, m) => Term::lam(dom.clone(), embed(m)),
        NormalForm::LetMap(n, m) => Term::letmap(embed_neutral(n), embed(m)),
        NormalForm::Return(m) => Term::ret(embed(m)),
        NormalForm::LetJoin(n, m) => Term::letjoin(embed_neutral(n), embed(m)),
        NormalForm::Let(n, m) => Term::let_in(embed_neutral(n), embed(m)),
    }
}

pub fn embed_neutral(n: &Neutral) -> Term {
    match n {
        Neutral::Var(k) => Term::Var(*k),
        Neutral::Fst(n) => Term::fst(embed_neutral(n)),
        Neutral::Snd(n) => Term::snd(embed_neutral(n)),
        Neutral::App(n, m) => Term::app(embed_neutral(n), embed(m)),
    }
}

/// Weaken a neutral along an embedding.
pub fn weaken_neutral(i: &Ope, n: &Neutral) -> Neutral {
    rename_neutral(n, 0, &|k| i.var(k))
}

/// Weaken a normal form along an embedding.
pub fn weaken_nf(i: &Ope, m: &NormalForm) -> NormalForm {
    rename_nf(m, 0, &|k| i.var(k))
}

fn rename_neutral<F: Fn(usize) -> usize>(n: &Neutral, depth: usize, f: &F) -> Neutral {
    match n {
        Neutral::Var(k) => {
            if *k < depth {
                Neutral::Var(*k)
            } else {
                Neutral::Var(depth + f(*k - depth))
            }
        }
        Neutral::Fst(n) => Neutral::fst(rename_neutral(n, depth, f)),
        Neutral::Snd(n) => Neutral::snd(rename_neutral(n, depth, f)),
        Neutral::App(n, m) => Neutral::app(rename_neutral(n, depth, f), rename_nf(m, depth, f)),
    }
}

fn rename_nf<F: Fn(usize) -> usize>(m: &NormalForm, depth: usize, f: &F) -> NormalForm {
    match m {
        NormalForm::Up(n) => NormalForm::Up(rename_neutral(n, depth, f)),
        NormalForm::Unit => NormalForm::Unit,
        NormalForm::Pair(a, b) => NormalForm::pair(rename_nf(a, depth, f), rename_nf(b, depth, f)),
        NormalForm::Lam(dom, b) => NormalForm::lam(dom.clone(), rename_nf(b, depth + 1, f)),
        NormalForm::LetMap(n, b) => {
            NormalForm::letmap(rename_neutral(n, depth, f), rename_nf(b, depth + 1, f))
        }
        NormalForm::Return(b) => NormalForm::ret(rename_nf(b, depth, f)),
        NormalForm::LetJoin(n, b) => {
            NormalForm::letjoin(rename_neutral(n, depth, f), rename_nf(b, depth + 1, f))
        }
        NormalForm::Let(n, b) => {
            NormalForm::let_in(rename_neutral(n, depth, f), rename_nf(b, depth + 1, f))
        }
    }
}

/// Synthesize the type of a neutral, if it is derivable in `ctx`.
pub fn neutral_type(flavor: Flavor, ctx: &Ctx, n: &Neutral) -> Option<Type> {
    match n {
        Neutral::Var(k) => ctx.lookup(*k).cloned(),
        Neutral::Fst(n) => match neutral_type(flavor, ctx, n)? {
            Type::Prod(a, _) => Some(*a),
            _ => None,
        },
        Neutral::Snd(n) => match neutral_type(flavor, ctx, n)? {
            Type::Prod(_, b) => Some(*b),
            _ => None,
        },
        Neutral::App(n, m) => match neutral_type(flavor, ctx, n)? {
            Type::Fun(a, b) if nf_checks(flavor, ctx, m, &a) => Some(*b),
            _ => None,
        },
    }
}

/// Does `m` derive the normal-form judgment at type `ty` under `ctx`?
pub fn nf_checks(flavor: Flavor, ctx: &Ctx, m: &NormalForm, ty: &Type) -> bool {
    match (m, ty) {
        (NormalForm::Up(n), Type::Base) => {
            neutral_type(flavor, ctx, n) == Some(Type::Base)
        }
        (NormalForm::Unit, Type::Unit) => true,
        (NormalForm::Pair(a, b), Type::Prod(ta, tb)) => {
            nf_checks(flavor, ctx, a, ta) && nf_checks(flavor, ctx, b, tb)
        }
        (NormalForm::Lam(dom, body), Type::Fun(ta, tb)) => {
            dom == ta.as_ref() && nf_checks(flavor, &ctx.extend(dom.clone()), body, tb)
        }
        (NormalForm::LetMap(n, body), Type::Dia(tb)) => {
            flavor.has_letmap()
                && match neutral_type(flavor, ctx, n) {
                    Some(Type::Dia(c)) => nf_checks(flavor, &ctx.extend(*c), body, tb),
                    _ => false,
                }
        }
        (NormalForm::Return(body), Type::Dia(tb)) => {
            flavor.has_return() && nf_checks(flavor, ctx, body, tb)
        }
        (NormalForm::LetJoin(n, body), Type::Dia(_)) => {
            flavor.has_letjoin()
                && match neutral_type(flavor, ctx, n) {
                    Some(Type::Dia(c)) => nf_checks(flavor, &ctx.extend(*c), body, ty),
                    _ => false,
                }
        }
        (NormalForm::Let(n, body), Type::Dia(_)) => {
            flavor.has_let()
                && match neutral_type(flavor, ctx, n) {
                    Some(Type::Dia(c)) => nf_checks(flavor, &ctx.extend(*c), body, ty),
                    _ => false,
                }
        }
        _ => false,
    }
}

/// Enumerator with memoized subproblems, reusable across queries.
///
/// A node budget can be armed before a query; once spent, enumeration stops
/// early and the truncated results are not memoized, so later uncapped
/// queries stay exact.
pub struct Enumerator {
    flavor: Flavor,
    nf_memo: BTreeMap<(Ctx, Type, usize), Vec<NormalForm>>,
    ne_memo: BTreeMap<(Ctx, usize), Vec<(Neutral, Type)>>,
    remaining: isize,
    truncated: bool,
}

impl Enumerator {
    pub fn new(flavor: Flavor) -> Enumerator {
        Enumerator {
            flavor,
            nf_memo: BTreeMap::new(),
            ne_memo: BTreeMap::new(),
            remaining: isize::MAX,
            truncated: false,
        }
    }

    /// Arm a node budget for the next query.
    pub fn reset_budget(&mut self, nodes: usize) {
        self.remaining = nodes.min(isize::MAX as usize) as isize;
        self.truncated = false;
    }

    /// Did the last query stop early because the budget ran out?
    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    fn charge(&mut self) -> bool {
        if self.remaining <= 0 {
            self.truncated = true;
            return false;
        }
        self.remaining -= 1;
        true
    }

    /// All neutrals derivable in `ctx` with height at most `depth`, paired
    /// with their types. Deterministic order, duplicate-free.
    pub fn neutrals(&mut self, ctx: &Ctx, depth: usize) -> Vec<(Neutral, Type)> {
        if depth == 0 {
            return Vec::new();
        }
        let key = (ctx.clone(), depth);
        if let Some(hit) = self.ne_memo.get(&key) {
            return hit.clone();
        }
        let mut out: Vec<(Neutral, Type)> = Vec::new();
        'build: {
            for k in 0..ctx.len() {
                if !self.charge() {
                    break 'build;
                }
                out.push((Neutral::Var(k), ctx.lookup(k).unwrap().clone()));
            }
            if depth > 1 {
                let smaller = self.neutrals(ctx, depth - 1);
                for (n, ty) in &smaller {
                    match ty {
                        Type::Prod(a, b) => {
                            if !self.charge() {
                                break 'build;
                            }
                            out.push((Neutral::fst(n.clone()), (**a).clone()));
                            if !self.charge() {
                                break 'build;
                            }
                            out.push((Neutral::snd(n.clone()), (**b).clone()));
                        }
                        Type::Fun(a, b) => {
                            for arg in self.normal_forms(ctx, a, depth - 1) {
                                if !self.charge() {
                                    break 'build;
                                }
                                out.push((Neutral::app(n.clone(), arg), (**b).clone()));
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
        if !self.truncated {
            self.ne_memo.insert(key, out.clone());
        }
        out
    }

    /// All normal forms of type `ty` in `ctx` with derivation height at most
    /// `depth`. Deterministic order, duplicate-free.
    pub fn normal_forms(&mut self, ctx: &Ctx, ty: &Type, depth: usize) -> Vec<NormalForm> {
        if depth == 0 {
            return Vec::new();
        }
        let key = (ctx.clone(), ty.clone(), depth);
        if let Some(hit) = self.nf_memo.get(&key) {
            return hit.clone();
        }
        let mut out: Vec<NormalForm> = Vec::new();
        'build: {
            match ty {
                Type::Base => {
                    for (n, t) in self.neutrals(ctx, depth - 1) {
                        if t == Type::Base {
                            if !self.charge() {
                                break 'build;
                            }
                            out.push(NormalForm::Up(n));
                        }
                    }
                }
                Type::Unit => {
                    if self.charge() {
                        out.push(NormalForm::Unit);
                    }
                }
                Type::Prod(a, b) => {
                    let lefts = self.normal_forms(ctx, a, depth - 1);
                    let rights = self.normal_forms(ctx, b, depth - 1);
                    for left in &lefts {
                        for right in &rights {
                            if !self.charge() {
                                break 'build;
                            }
                            out.push(NormalForm::pair(left.clone(), right.clone()));
                        }
                    }
                }
                Type::Fun(a, b) => {
                    let inner = ctx.extend((**a).clone());
                    for body in self.normal_forms(&inner, b, depth - 1) {
                        if !self.charge() {
                            break 'build;
                        }
                        out.push(NormalForm::lam((**a).clone(), body));
                    }
                }
                Type::Dia(b) => {
                    let dia_neutrals: Vec<(Neutral, Type)> = self
                        .neutrals(ctx, depth - 1)
                        .into_iter()
                        .filter(|(_, t)| matches!(t, Type::Dia(_)))
                        .collect();
                    if self.flavor.has_return() {
                        for body in self.normal_forms(ctx, b, depth - 1) {
                            if !self.charge() {
                                break 'build;
                            }
                            out.push(NormalForm::ret(body));
                        }
                    }
                    if self.flavor.has_letmap() {
                        for (n, t) in &dia_neutrals {
                            let c = match t {
                                Type::Dia(c) => (**c).clone(),
                                _ => unreachable!(),
                            };
                            let inner = ctx.extend(c);
                            for body in self.normal_forms(&inner, b, depth - 1) {
                                if !self.charge() {
                                    break 'build;
                                }
                                out.push(NormalForm::letmap(n.clone(), body));
                            }
                        }
                    }
                    if self.flavor.has_letjoin() || self.flavor.has_let() {
                        for (n, t) in &dia_neutrals {
                            let c = match t {
                                Type::Dia(c) => (**c).clone(),
                                _ => unreachable!(),
                            };
                            let inner = ctx.extend(c);
                            for body in self.normal_forms(&inner, ty, depth - 1) {
                                if !self.charge() {
                                    break 'build;
                                }
                                if self.flavor.has_letjoin() {
                                    out.push(NormalForm::letjoin(n.clone(), body));
                                } else {
                                    out.push(NormalForm::let_in(n.clone(), body));
                                }
                            }
                        }
                    }
                }
            }
        }
        if !self.truncated {
            self.nf_memo.insert(key, out.clone());
        }
        out
    }
}

/// Enumerate all normal forms of type `ty` in `ctx` whose derivation height
/// is at most `depth`, in a deterministic order.
pub fn enumerate_nf(flavor: Flavor, ctx: &Ctx, ty: &Type, depth: usize) -> Vec<NormalForm> {
    Enumerator::new(flavor).normal_forms(ctx, ty, depth)
}

/// Outcome of an inhabitation search at a depth bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A normal form of the queried type exists; here is the first one found.
    Inhabited(NormalForm),
    /// No normal form exists at any depth: the subproblem system is finite
    /// and its inhabitation fixed point is empty. `states` is the number of
    /// subproblems in the closed system.
    EmptySaturated { states: usize },
    /// Nothing found up to the bound, but the search was not exhaustive.
    EmptyUpTo { depth: usize },
}

/// Decide whether the closed type `ty` is inhabited by a normal form in
/// `flavor`, searching up to `depth`.
///
/// When the bounded enumeration is empty, a separate saturation argument is
/// attempted: inhabitation of normal forms depends only on the *set* of
/// types in the context, and all types that can ever enter a context are
/// subformulas of the query, so the subproblem space is finite and emptiness
/// of its least fixed point certifies emptiness at every depth.
pub fn check_inadmissible(flavor: Flavor, ty: &Type, depth: usize) -> Verdict {
    check_inadmissible_in(flavor, &Ctx::empty(), ty, depth)
}

/// As [`check_inadmissible`], for an open type under a context.
pub fn check_inadmissible_in(flavor: Flavor, ctx: &Ctx, ty: &Type, depth: usize) -> Verdict {
    let mut enumerator = Enumerator::new(flavor);
    for d in 1..=depth {
        if let Some(first) = enumerator.normal_forms(ctx, ty, d).into_iter().next() {
            return Verdict::Inhabited(first);
        }
    }
    let mut fixpoint = InhabFixpoint::new(flavor, ctx, ty);
    if fixpoint.inhabited(ctx_type_set(ctx), ty) {
        Verdict::EmptyUpTo { depth }
    } else {
        Verdict::EmptySaturated { states: fixpoint.states() }
    }
}

/// Does any normal form of `ty` exist under `ctx`, at any depth?
///
/// Decided exactly: normal-form inhabitation depends only on the set of
/// types in the context, and every type that can enter a context is a
/// subformula of the query, so the least fixed point over that finite
/// space settles the question.
pub fn inhabited(flavor: Flavor, ctx: &Ctx, ty: &Type) -> bool {
    let mut fixpoint = InhabFixpoint::new(flavor, ctx, ty);
    fixpoint.inhabited(ctx_type_set(ctx), ty)
}

fn ctx_type_set(ctx: &Ctx) -> BTreeSet<Type> {
    ctx.types().iter().cloned().collect()
}

/// Subproblem of the inhabitation fixed point: does a normal form / neutral
/// of this type exist when the context holds exactly this set of types?
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Query {
    Nf(BTreeSet<Type>, Type),
    Ne(BTreeSet<Type>, Type),
}

struct InhabFixpoint {
    flavor: Flavor,
    /// Subformula closure of the query; every context set stays inside it.
    universe: Vec<Type>,
    truth: BTreeMap<Query, bool>,
}

impl InhabFixpoint {
    fn new(flavor: Flavor, ctx: &Ctx, ty: &Type) -> InhabFixpoint {
        let mut universe: BTreeSet<Type> = ty.subformulas().into_iter().collect();
        for entry in ctx.types() {
            universe.extend(entry.subformulas());
        }
        InhabFixpoint {
            flavor,
            universe: universe.into_iter().collect(),
            truth: BTreeMap::new(),
        }
    }

    fn states(&self) -> usize {
        self.truth.len()
    }

    /// Least fixed point by rounds: evaluate every discovered query against
    /// the current table until nothing changes. Evaluation registers new
    /// queries at `false`, and the state space is finite, so this
    /// terminates.
    fn inhabited(&mut self, set: BTreeSet<Type>, root: &Type) -> bool {
        let root_query = Query::Nf(set, root.clone());
        self.truth.insert(root_query.clone(), false);
        loop {
            let known = self.truth.len();
            let mut changed = false;
            let queries: Vec<Query> = self.truth.keys().cloned().collect();
            for q in queries {
                if self.truth[&q] {
                    continue; // monotone: true stays true
                }
                if self.eval(&q) {
                    self.truth.insert(q, true);
                    changed = true;
                }
            }
            // Discovering a subproblem is progress too: it gets evaluated
            // in the next round.
            if !changed && self.truth.len() == known {
                return self.truth[&root_query];
            }
        }
    }

    fn get(&mut self, q: Query) -> bool {
        *self.truth.entry(q).or_insert(false)
    }

    fn eval(&mut self, q: &Query) -> bool {
        match q.clone() {
            Query::Nf(set, ty) => match ty {
                Type::Base => self.get(Query::Ne(set, Type::Base)),
                Type::Unit => true,
                Type::Prod(a, b) => {
                    self.get(Query::Nf(set.clone(), *a)) && self.get(Query::Nf(set, *b))
                }
                Type::Fun(a, b) => {
                    let mut inner = set.clone();
                    inner.insert(*a);
                    self.get(Query::Nf(inner, *b))
                }
                Type::Dia(b) => {
                    if self.flavor.has_return() && self.get(Query::Nf(set.clone(), (*b).clone())) {
                        return true;
                    }
                    let payloads: Vec<Type> = self
                        .universe
                        .iter()
                        .filter_map(|t| match t {
                            Type::Dia(c) => Some((**c).clone()),
                            _ => None,
                        })
                        .collect();
                    for c in payloads {
                        let dia_c = Type::dia(c.clone());
                        if !self.get(Query::Ne(set.clone(), dia_c)) {
                            continue;
                        }
                        let mut inner = set.clone();
                        inner.insert(c);
                        if self.flavor.has_letmap()
                            && self.get(Query::Nf(inner.clone(), (*b).clone()))
                        {
                            return true;
                        }
                        if (self.flavor.has_letjoin() || self.flavor.has_let())
                            && self.get(Query::Nf(inner, Type::dia((*b).clone())))
                        {
                            return true;
                        }
                    }
                    false
                }
            },
            Query::Ne(set, ty) => {
                if set.contains(&ty) {
                    return true;
                }
                let parents: Vec<Type> = self.universe.clone();
                for p in parents {
                    match &p {
                        Type::Prod(a, b) if **a == ty || **b == ty => {
                            if self.get(Query::Ne(set.clone(), p.clone())) {
                                return true;
                            }
                        }
                        Type::Fun(a, b) if **b == ty => {
                            let head = self.get(Query::Ne(set.clone(), p.clone()));
                            if head && self.get(Query::Nf(set.clone(), (**a).clone())) {
                                return true;
                            }
                        }
                        _ => {}
                    }
                }
                false
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typing::infer;

    fn base() -> Type {
        Type::Base
    }

    fn dia(t: Type) -> Type {
        Type::dia(t)
    }

    #[test]
    fn embed_erases_markers() {
        let nf = NormalForm::Up(Neutral::Var(0));
        assert_eq!(embed(&nf), Term::Var(0));
        let nf = NormalForm::letmap(Neutral::Var(0), NormalForm::Up(Neutral::Var(0)));
        assert_eq!(embed(&nf), Term::letmap(Term::Var(0), Term::Var(0)));
    }

    #[test]
    fn embedded_normal_forms_typecheck() {
        // letmap x = z in x at <>i under z : <>i.
        let ctx = Ctx::from_types(alloc::vec![dia(base())]);
        let nf = NormalForm::letmap(Neutral::Var(0), NormalForm::Up(Neutral::Var(0)));
        assert!(nf_checks(Flavor::Slc, &ctx, &nf, &dia(base())));
        assert_eq!(infer(Flavor::Slc, &ctx, &embed(&nf)), Ok(dia(base())));
    }

    #[test]
    fn up_only_at_base() {
        let ctx = Ctx::from_types(alloc::vec![dia(base())]);
        let nf = NormalForm::Up(Neutral::Var(0));
        assert!(!nf_checks(Flavor::Slc, &ctx, &nf, &dia(base())));
    }

    #[test]
    fn unit_enumeration_is_singleton() {
        for flavor in Flavor::ALL {
            let nfs = enumerate_nf(flavor, &Ctx::empty(), &Type::Unit, 3);
            assert_eq!(nfs, alloc::vec![NormalForm::Unit]);
        }
    }

    #[test]
    fn return_axiom_enumeration() {
        let r_type = Type::fun(base(), dia(base()));
        assert!(enumerate_nf(Flavor::Slc, &Ctx::empty(), &r_type, 8).is_empty());
        assert!(enumerate_nf(Flavor::Jlc, &Ctx::empty(), &r_type, 8).is_empty());
        let rlc = enumerate_nf(Flavor::Rlc, &Ctx::empty(), &r_type, 4);
        let witness = NormalForm::lam(base(), NormalForm::ret(NormalForm::Up(Neutral::Var(0))));
        assert!(rlc.contains(&witness));
        assert_eq!(witness.height(), 4);
    }

    #[test]
    fn join_axiom_enumeration() {
        let j_type = Type::fun(dia(dia(base())), dia(base()));
        assert!(enumerate_nf(Flavor::Slc, &Ctx::empty(), &j_type, 8).is_empty());
        assert!(enumerate_nf(Flavor::Rlc, &Ctx::empty(), &j_type, 8).is_empty());
        let jlc = enumerate_nf(Flavor::Jlc, &Ctx::empty(), &j_type, 6);
        assert!(!jlc.is_empty());
        for nf in &jlc {
            assert!(nf_checks(Flavor::Jlc, &Ctx::empty(), nf, &j_type));
        }
    }

    #[test]
    fn inadmissibility_verdicts_for_the_modal_axioms() {
        let r_type = Type::fun(base(), dia(base()));
        let j_type = Type::fun(dia(dia(base())), dia(base()));

        assert!(matches!(
            check_inadmissible(Flavor::Slc, &r_type, 8),
            Verdict::EmptySaturated { .. }
        ));
        assert!(matches!(
            check_inadmissible(Flavor::Jlc, &r_type, 8),
            Verdict::EmptySaturated { .. }
        ));
        assert!(matches!(
            check_inadmissible(Flavor::Slc, &j_type, 8),
            Verdict::EmptySaturated { .. }
        ));
        assert!(matches!(
            check_inadmissible(Flavor::Rlc, &j_type, 8),
            Verdict::EmptySaturated { .. }
        ));

        match check_inadmissible(Flavor::Mlc, &r_type, 4) {
            Verdict::Inhabited(nf) => {
                assert_eq!(
                    nf,
                    NormalForm::lam(base(), NormalForm::ret(NormalForm::Up(Neutral::Var(0))))
                );
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        assert!(matches!(check_inadmissible(Flavor::Rlc, &r_type, 4), Verdict::Inhabited(_)));
        assert!(matches!(check_inadmissible(Flavor::Jlc, &j_type, 6), Verdict::Inhabited(_)));
        assert!(matches!(check_inadmissible(Flavor::Mlc, &j_type, 6), Verdict::Inhabited(_)));
    }

    #[test]
    fn shallow_bounds_are_reported_honestly() {
        // The return witness has height 4; a depth-2 search must say
        // "empty up to the bound", not claim saturation.
        let r_type = Type::fun(base(), dia(base()));
        assert_eq!(
            check_inadmissible(Flavor::Mlc, &r_type, 2),
            Verdict::EmptyUpTo { depth: 2 }
        );
    }

    #[test]
    fn enumerated_neutrals_satisfy_the_subformula_property() {
        let ctx = Ctx::from_types(alloc::vec![
            Type::prod(base(), dia(base())),
            Type::fun(base(), base()),
        ]);
        let mut closure: BTreeSet<Type> = BTreeSet::new();
        for t in ctx.types() {
            closure.extend(t.subformulas());
        }
        let mut e = Enumerator::new(Flavor::Slc);
        for (n, ty) in e.neutrals(&ctx, 4) {
            assert!(closure.contains(&ty), "type of {n:?} escapes the context subformulas");
        }
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let ctx = Ctx::from_types(alloc::vec![dia(base()), base()]);
        for flavor in Flavor::ALL {
            let nfs = enumerate_nf(flavor, &ctx, &dia(base()), 5);
            let distinct: BTreeSet<_> = nfs.iter().cloned().collect();
            assert_eq!(distinct.len(), nfs.len(), "{flavor}: duplicates in enumeration");
            for nf in &nfs {
                assert!(nf.valid_for(flavor));
                assert!(nf_checks(flavor, &ctx, nf, &dia(base())));
                assert!(nf.height() <= 5);
            }
        }
    }
}
