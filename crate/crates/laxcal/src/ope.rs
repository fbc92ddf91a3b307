//! Order-preserving embeddings between contexts, and weakening along them.
//!
//! An [`Ope`] is the proof-relevant witness that one context is an ordered
//! sub-list of another. OPEs double as the intuitionistic reachability
//! relation of the normalization model, so their identity and composition
//! witnesses are compared structurally by the frame coherence tests.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::{Ctx, Term, Type};

/// Witness that a source context embeds into a target context preserving
/// order. The outermost constructor describes the rightmost (most recently
/// bound) entry of the target.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ope {
    /// Empty into empty.
    Base,
    /// Extend the target only: the new entry is skipped.
    Drop(Type, Box<Ope>),
    /// Extend source and target with the same entry.
    Keep(Type, Box<Ope>),
}

/// Composition was attempted between embeddings whose contexts do not chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeMismatch;

impl fmt::Display for ComposeMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("embeddings do not chain: codomain of the first differs from domain of the second")
    }
}

impl Ope {
    pub fn drop(ty: Type, i: Ope) -> Ope {
        Ope::Drop(ty, Box::new(i))
    }

    pub fn keep(ty: Type, i: Ope) -> Ope {
        Ope::Keep(ty, Box::new(i))
    }

    /// The identity embedding of a context into itself.
    pub fn id(ctx: &Ctx) -> Ope {
        let mut ope = Ope::Base;
        for ty in ctx.types() {
            ope = Ope::keep(ty.clone(), ope);
        }
        ope
    }

    /// The source context, recomputed from the kept entries.
    pub fn src(&self) -> Ctx {
        let mut tys = Vec::new();
        self.collect(&mut tys, &mut Vec::new());
        Ctx::from_types(tys)
    }

    /// The target context, recomputed from all entries.
    pub fn tgt(&self) -> Ctx {
        let mut tys = Vec::new();
        self.collect(&mut Vec::new(), &mut tys);
        Ctx::from_types(tys)
    }

    fn collect(&self, src: &mut Vec<Type>, tgt: &mut Vec<Type>) {
        // Outermost constructor is the rightmost entry, so recurse first.
        match self {
            Ope::Base => {}
            Ope::Drop(ty, i) => {
                i.collect(src, tgt);
                tgt.push(ty.clone());
            }
            Ope::Keep(ty, i) => {
                i.collect(src, tgt);
                src.push(ty.clone());
                tgt.push(ty.clone());
            }
        }
    }

    /// Where a source de Bruijn index lands in the target context.
    ///
    /// Panics if `k` is not in scope of the source; callers guarantee
    /// well-scopedness.
    pub fn var(&self, k: usize) -> usize {
        match self {
            Ope::Base => panic!("ope::var: index {k} out of scope"),
            Ope::Drop(_, i) => 1 + i.var(k),
            Ope::Keep(_, i) => {
                if k == 0 {
                    0
                } else {
                    1 + i.var(k - 1)
                }
            }
        }
    }

    /// Is this embedding an identity (all `Keep`)?
    pub fn is_id(&self) -> bool {
        match self {
            Ope::Base => true,
            Ope::Drop(..) => false,
            Ope::Keep(_, i) => i.is_id(),
        }
    }
}

/// Every embedding whose target is `tgt`: one per subset of kept entries.
/// Sources are recoverable via [`Ope::src`].
pub fn all_opes_into(tgt: &Ctx) -> Vec<Ope> {
    let mut out = alloc::vec![Ope::Base];
    for ty in tgt.types() {
        let mut next = Vec::with_capacity(out.len() * 2);
        for ope in out {
            next.push(Ope::keep(ty.clone(), ope.clone()));
            next.push(Ope::drop(ty.clone(), ope));
        }
        out = next;
    }
    out
}

/// Compose two embeddings: `first` from `Γ` to `Γ'`, `second` from `Γ'` to
/// `Γ''`, yielding `Γ` to `Γ''`.
pub fn ope_compose(first: &Ope, second: &Ope) -> Result<Ope, ComposeMismatch> {
    match (first, second) {
        (Ope::Base, Ope::Base) => Ok(Ope::Base),
        (_, Ope::Drop(a, j)) => Ok(Ope::drop(a.clone(), ope_compose(first, j)?)),
        (Ope::Drop(a, i), Ope::Keep(b, j)) if a == b => {
            Ok(Ope::drop(a.clone(), ope_compose(i, j)?))
        }
        (Ope::Keep(a, i), Ope::Keep(b, j)) if a == b => {
            Ok(Ope::keep(a.clone(), ope_compose(i, j)?))
        }
        _ => Err(ComposeMismatch),
    }
}

/// Rebuild a term, sending free variable `k` to `f(k)`. Indices bound inside
/// the term are untouched.
pub(crate) fn rename<F: Fn(usize) -> usize>(t: &Term, f: &F) -> Term {
    fn go<F: Fn(usize) -> usize>(t: &Term, depth: usize, f: &F) -> Term {
        match t {
            Term::Var(k) => {
                if *k < depth {
                    Term::Var(*k)
                } else {
                    Term::Var(depth + f(*k - depth))
                }
            }
            Term::Unit => Term::Unit,
            Term::Pair(a, b) => Term::pair(go(a, depth, f), go(b, depth, f)),
            Term::Fst(a) => Term::fst(go(a, depth, f)),
            Term::Snd(a) => Term::snd(go(a, depth, f)),
            Term::Lam(ann, a) => Term::Lam(ann.clone(), Box::new(go(a, depth + 1, f))),
            Term::App(a, b) => Term::app(go(a, depth, f), go(b, depth, f)),
            Term::Return(a) => Term::ret(go(a, depth, f)),
            Term::LetMap(a, b) => Term::letmap(go(a, depth, f), go(b, depth + 1, f)),
            Term::LetJoin(a, b) => Term::letjoin(go(a, depth, f), go(b, depth + 1, f)),
            Term::Let(a, b) => Term::let_in(go(a, depth, f), go(b, depth + 1, f)),
        }
    }
    go(t, 0, f)
}

/// Weaken a term along an embedding: re-index every free variable through
/// `i`, leaving the structure untouched.
pub fn weaken(i: &Ope, t: &Term) -> Term {
    if i.is_id() {
        return t.clone();
    }
    rename(t, &|k| i.var(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alpha_eq;

    fn ctx(tys: &[Type]) -> Ctx {
        Ctx::from_types(tys.to_vec())
    }

    #[test]
    fn identity_embedding_shapes() {
        assert_eq!(Ope::id(&Ctx::empty()), Ope::Base);
        assert_eq!(
            Ope::id(&ctx(&[Type::Base])),
            Ope::keep(Type::Base, Ope::Base)
        );
    }

    #[test]
    fn compose_clauses() {
        let a = Type::Base;
        let i = Ope::keep(a.clone(), Ope::Base);
        // Unit laws.
        let id_src = Ope::id(&i.src());
        let id_tgt = Ope::id(&i.tgt());
        assert_eq!(ope_compose(&id_src, &i).unwrap(), i);
        assert_eq!(ope_compose(&i, &id_tgt).unwrap(), i);

        // drop-then-keep composes to a drop.
        let drop_i = Ope::drop(a.clone(), Ope::id(&ctx(&[Type::Unit])));
        let keep_j = Ope::keep(a.clone(), Ope::drop(Type::Base, Ope::id(&ctx(&[Type::Unit]))));
        let composed = ope_compose(&drop_i, &keep_j).unwrap();
        assert_eq!(
            composed,
            Ope::drop(
                a.clone(),
                Ope::drop(Type::Base, Ope::id(&ctx(&[Type::Unit])))
            )
        );
        assert_eq!(composed.src(), drop_i.src());
        assert_eq!(composed.tgt(), keep_j.tgt());
    }

    #[test]
    fn compose_detects_mismatch() {
        let i = Ope::keep(Type::Base, Ope::Base);
        let j = Ope::keep(Type::Unit, Ope::Base);
        assert_eq!(ope_compose(&i, &j), Err(ComposeMismatch));
        assert_eq!(ope_compose(&Ope::Base, &j), Err(ComposeMismatch));
    }

    #[test]
    fn weaken_shifts_under_drop() {
        // x under [x] weakened by dropping a new rightmost entry: index 0 -> 1.
        let i = Ope::drop(Type::Base, Ope::id(&ctx(&[Type::Base])));
        assert_eq!(weaken(&i, &Term::Var(0)), Term::Var(1));

        // Bound variables are untouched; frees shift through the binder.
        let t = Term::lam(Type::Base, Term::pair(Term::Var(0), Term::Var(1)));
        let w = weaken(&i, &t);
        assert_eq!(w, Term::lam(Type::Base, Term::pair(Term::Var(0), Term::Var(2))));
    }

    #[test]
    fn weaken_by_identity_is_identity() {
        let t = Term::letmap(Term::Var(0), Term::pair(Term::Var(0), Term::Var(1)));
        let i = Ope::id(&ctx(&[Type::dia(Type::Base)]));
        assert!(alpha_eq(&weaken(&i, &t), &t));
    }

    #[test]
    fn weaken_composes_functorially() {
        let g0 = ctx(&[Type::Base]);
        let i = Ope::drop(Type::Unit, Ope::id(&g0));
        let g1 = i.tgt();
        let j = Ope::keep(Type::Unit, Ope::drop(Type::Base, Ope::id(&ctx(&[Type::Base]))));
        assert_eq!(j.src(), g1);
        let t = Term::pair(Term::Var(0), Term::Var(0));
        let via_compose = weaken(&ope_compose(&i, &j).unwrap(), &t);
        let sequential = weaken(&j, &weaken(&i, &t));
        assert_eq!(via_compose, sequential);
    }
}
