//! Syntax-directed typechecking for all four flavors, and single
//! substitution.
//!
//! Inference is deterministic: lambdas are annotated, every other construct
//! synthesizes. Errors carry a path of child indices from the root so a
//! front end can point at the offending subterm.

use alloc::vec::Vec;
use core::fmt;

use crate::ope::rename;
use crate::syntax::{Ctx, Flavor, Term, Type};

/// Child-index path from the root of a term to a subterm.
pub type Path = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeError {
    UnboundVar { index: usize, ctx_len: usize, path: Path },
    /// The construct exists in the shared grammar but not in this flavor.
    FlavorViolation { construct: &'static str, flavor: Flavor, path: Path },
    UnannotatedLambda { path: Path },
    NotAProduct { found: Type, path: Path },
    NotAFunction { found: Type, path: Path },
    NotModal { construct: &'static str, found: Type, path: Path },
    ArgMismatch { expected: Type, found: Type, path: Path },
    /// The body of `letjoin`/`let` must itself be modal.
    BodyNotModal { construct: &'static str, found: Type, path: Path },
}

impl TypeError {
    pub fn path(&self) -> &Path {
        match self {
            TypeError::UnboundVar { path, .. }
            | TypeError::FlavorViolation { path, .. }
            | TypeError::UnannotatedLambda { path }
            | TypeError::NotAProduct { path, .. }
            | TypeError::NotAFunction { path, .. }
            | TypeError::NotModal { path, .. }
            | TypeError::ArgMismatch { path, .. }
            | TypeError::BodyNotModal { path, .. } => path,
        }
    }

    fn at(mut self, step: usize) -> TypeError {
        let path = match &mut self {
            TypeError::UnboundVar { path, .. }
            | TypeError::FlavorViolation { path, .. }
            | TypeError::UnannotatedLambda { path }
            | TypeError::NotAProduct { path, .. }
            | TypeError::NotAFunction { path, .. }
            | TypeError::NotModal { path, .. }
            | TypeError::ArgMismatch { path, .. }
            | TypeError::BodyNotModal { path, .. } => path,
        };
        path.insert(0, step);
        self
    }
}

fn fmt_path(path: &Path, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if path.is_empty() {
        return f.write_str(" at the root");
    }
    f.write_str(" at subterm")?;
    for step in path {
        write!(f, ".{step}")?;
    }
    Ok(())
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeError::UnboundVar { index, ctx_len, path } => {
                write!(f, "unbound variable #{index} in context of length {ctx_len}")?;
                fmt_path(path, f)
            }
            TypeError::FlavorViolation { construct, flavor, path } => {
                write!(f, "`{construct}` is not a construct of {flavor}")?;
                fmt_path(path, f)
            }
            TypeError::UnannotatedLambda { path } => {
                f.write_str("lambda needs a domain annotation (write `\\x:T. ...`)")?;
                fmt_path(path, f)
            }
            TypeError::NotAProduct { found, path } => {
                write!(f, "projection from a non-product of type {found}")?;
                fmt_path(path, f)
            }
            TypeError::NotAFunction { found, path } => {
                write!(f, "application of a non-function of type {found}")?;
                fmt_path(path, f)
            }
            TypeError::NotModal { construct, found, path } => {
                write!(f, "`{construct}` expects a `<>`-typed subject, got {found}")?;
                fmt_path(path, f)
            }
            TypeError::ArgMismatch { expected, found, path } => {
                write!(f, "argument type {found} does not match domain {expected}")?;
                fmt_path(path, f)
            }
            TypeError::BodyNotModal { construct, found, path } => {
                write!(f, "body of `{construct}` must have a `<>` type, got {found}")?;
                fmt_path(path, f)
            }
        }
    }
}

/// Infer the unique type of `t` under `ctx` in the given flavor.
pub fn infer(flavor: Flavor, ctx: &Ctx, t: &Term) -> Result<Type, TypeError> {
    match t {
        Term::Var(k) => ctx.lookup(*k).cloned().ok_or(TypeError::UnboundVar {
            index: *k,
            ctx_len: ctx.len(),
            path: Vec::new(),
        }),
        Term::Unit => Ok(Type::Unit),
        Term::Pair(a, b) => {
            let ta = infer(flavor, ctx, a).map_err(|e| e.at(0))?;
            let tb = infer(flavor, ctx, b).map_err(|e| e.at(1))?;
            Ok(Type::prod(ta, tb))
        }
        Term::Fst(a) => match infer(flavor, ctx, a).map_err(|e| e.at(0))? {
            Type::Prod(l, _) => Ok(*l),
            found => Err(TypeError::NotAProduct { found, path: Vec::new() }),
        },
        Term::Snd(a) => match infer(flavor, ctx, a).map_err(|e| e.at(0))? {
            Type::Prod(_, r) => Ok(*r),
            found => Err(TypeError::NotAProduct { found, path: Vec::new() }),
        },
        Term::Lam(ann, body) => {
            let dom = ann.clone().ok_or(TypeError::UnannotatedLambda { path: Vec::new() })?;
            let cod = infer(flavor, &ctx.extend(dom.clone()), body).map_err(|e| e.at(0))?;
            Ok(Type::fun(dom, cod))
        }
        Term::App(a, b) => {
            let tf = infer(flavor, ctx, a).map_err(|e| e.at(0))?;
            let (dom, cod) = match tf {
                Type::Fun(d, c) => (*d, *c),
                found => return Err(TypeError::NotAFunction { found, path: Vec::new() }),
            };
            let ta = infer(flavor, ctx, b).map_err(|e| e.at(1))?;
            if ta != dom {
                return Err(TypeError::ArgMismatch { expected: dom, found: ta, path: Vec::new() });
            }
            Ok(cod)
        }
        Term::Return(a) => {
            if !flavor.has_return() {
                return Err(flavor_violation("return", flavor));
            }
            let ta = infer(flavor, ctx, a).map_err(|e| e.at(0))?;
            Ok(Type::dia(ta))
        }
        Term::LetMap(subject, body) => {
            if !flavor.has_letmap() {
                return Err(flavor_violation("letmap", flavor));
            }
            let payload = modal_subject(flavor, ctx, subject, "letmap")?;
            let tb = infer(flavor, &ctx.extend(payload), body).map_err(|e| e.at(1))?;
            Ok(Type::dia(tb))
        }
        Term::LetJoin(subject, body) => {
            if !flavor.has_letjoin() {
                return Err(flavor_violation("letjoin", flavor));
            }
            modal_bind(flavor, ctx, subject, body, "letjoin")
        }
        Term::Let(subject, body) => {
            if !flavor.has_let() {
                return Err(flavor_violation("let", flavor));
            }
            modal_bind(flavor, ctx, subject, body, "let")
        }
    }
}

fn flavor_violation(construct: &'static str, flavor: Flavor) -> TypeError {
    TypeError::FlavorViolation { construct, flavor, path: Vec::new() }
}

fn modal_subject(
    flavor: Flavor,
    ctx: &Ctx,
    subject: &Term,
    construct: &'static str,
) -> Result<Type, TypeError> {
    match infer(flavor, ctx, subject).map_err(|e| e.at(0))? {
        Type::Dia(a) => Ok(*a),
        found => Err(TypeError::NotModal { construct, found, path: Vec::new() }),
    }
}

// `letjoin`/`let`: subject `<>A`, body under the binder must be `<>B`.
fn modal_bind(
    flavor: Flavor,
    ctx: &Ctx,
    subject: &Term,
    body: &Term,
    construct: &'static str,
) -> Result<Type, TypeError> {
    let payload = modal_subject(flavor, ctx, subject, construct)?;
    match infer(flavor, &ctx.extend(payload), body).map_err(|e| e.at(1))? {
        Type::Dia(b) => Ok(Type::dia(*b)),
        found => Err(TypeError::BodyNotModal { construct, found, path: Vec::new() }),
    }
}

/// Substitute `u` for the most recently bound variable of `t`.
///
/// `t` lives under `Γ, x:A` and `u` under `Γ`; the result lives under `Γ`.
/// Indices above the substituted one shift down; `u` is lifted over any
/// binders it is pushed under, so capture cannot occur.
pub fn substitute(t: &Term, u: &Term) -> Term {
    subst_at(t, u, 0)
}

fn subst_at(t: &Term, u: &Term, cut: usize) -> Term {
    match t {
        Term::Var(k) => {
            if *k == cut {
                // Lift `u` over the `cut` binders crossed on the way here.
                rename(u, &|j| j + cut)
            } else if *k > cut {
                Term::Var(*k - 1)
            } else {
                Term::Var(*k)
            }
        }
        Term::Unit => Term::Unit,
        Term::Pair(a, b) => Term::pair(subst_at(a, u, cut), subst_at(b, u, cut)),
        Term::Fst(a) => Term::fst(subst_at(a, u, cut)),
        Term::Snd(a) => Term::snd(subst_at(a, u, cut)),
        Term::Lam(ann, a) => {
            Term::Lam(ann.clone(), alloc::boxed::Box::new(subst_at(a, u, cut + 1)))
        }
        Term::App(a, b) => Term::app(subst_at(a, u, cut), subst_at(b, u, cut)),
        Term::Return(a) => Term::ret(subst_at(a, u, cut)),
        Term::LetMap(a, b) => Term::letmap(subst_at(a, u, cut), subst_at(b, u, cut + 1)),
        Term::LetJoin(a, b) => Term::letjoin(subst_at(a, u, cut), subst_at(b, u, cut + 1)),
        Term::Let(a, b) => Term::let_in(subst_at(a, u, cut), subst_at(b, u, cut + 1)),
    }
}
