//! Object-language types, contexts, and flavor-indexed terms.
//!
//! Terms are nameless: variables are de Bruijn indices counting binders from
//! the inside out, and a [`Ctx`] lists the types of the free variables with
//! the most recently bound entry on the right. Surface names exist only in
//! the printer, which takes a name for each context entry and invents fresh
//! ones for binders.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Which of the four calculi is in force.
///
/// The flavor decides which modal term constructs are in the language, which
/// equations hold, and what shape the modal accessibility witnesses of the
/// normalization model take.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// Strong functor: `letmap` only.
    Slc,
    /// Strong pointed functor: `letmap` and `return`.
    Rlc,
    /// Strong semimonad: `letmap` and `letjoin`.
    Jlc,
    /// Strong monad: `return` and `let`.
    Mlc,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::Slc, Flavor::Rlc, Flavor::Jlc, Flavor::Mlc];

    pub fn has_letmap(self) -> bool {
        matches!(self, Flavor::Slc | Flavor::Rlc | Flavor::Jlc)
    }

    pub fn has_return(self) -> bool {
        matches!(self, Flavor::Rlc | Flavor::Mlc)
    }

    pub fn has_letjoin(self) -> bool {
        self == Flavor::Jlc
    }

    pub fn has_let(self) -> bool {
        self == Flavor::Mlc
    }

    /// The modal accessibility relation of this flavor admits an empty
    /// (reflexive) witness.
    pub fn has_refl(self) -> bool {
        self.has_return()
    }

    /// The modal accessibility relation of this flavor admits chaining
    /// (transitive) witnesses.
    pub fn has_trans(self) -> bool {
        self.has_letjoin() || self.has_let()
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Slc => "slc",
            Flavor::Rlc => "rlc",
            Flavor::Jlc => "jlc",
            Flavor::Mlc => "mlc",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Object-language types: `i | 1 | A * B | A -> B | <>A`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    /// The uninterpreted base type `i`.
    Base,
    /// The unit type `1`.
    Unit,
    Prod(Box<Type>, Box<Type>),
    Fun(Box<Type>, Box<Type>),
    Dia(Box<Type>),
}

impl Type {
    pub fn prod(a: Type, b: Type) -> Type {
        Type::Prod(Box::new(a), Box::new(b))
    }

    pub fn fun(a: Type, b: Type) -> Type {
        Type::Fun(Box::new(a), Box::new(b))
    }

    pub fn dia(a: Type) -> Type {
        Type::Dia(Box::new(a))
    }

    /// All subtrees of this type, including the type itself.
    pub fn subformulas(&self) -> Vec<Type> {
        let mut out = Vec::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut Vec<Type>) {
        out.push(self.clone());
        match self {
            Type::Base | Type::Unit => {}
            Type::Prod(a, b) | Type::Fun(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
            Type::Dia(a) => a.collect_subformulas(out),
        }
    }
}

// `<>` binds tightest, then `*`, then `->`; `*` and `->` associate right.
// Levels: Fun 0, Prod 1, Dia 2, atoms 3.
fn fmt_type(ty: &Type, min_level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let level = match ty {
        Type::Fun(..) => 0,
        Type::Prod(..) => 1,
        Type::Dia(..) => 2,
        Type::Base | Type::Unit => 3,
    };
    let paren = level < min_level;
    if paren {
        f.write_str("(")?;
    }
    match ty {
        Type::Base => f.write_str("i")?,
        Type::Unit => f.write_str("1")?,
        Type::Prod(a, b) => {
            fmt_type(a, 2, f)?;
            f.write_str(" * ")?;
            fmt_type(b, 1, f)?;
        }
        Type::Fun(a, b) => {
            fmt_type(a, 1, f)?;
            f.write_str(" -> ")?;
            fmt_type(b, 0, f)?;
        }
        Type::Dia(a) => {
            f.write_str("<>")?;
            fmt_type(a, 2, f)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_type(self, 0, f)
    }
}

/// A typing context: the types of the free variables, most recent on the
/// right. De Bruijn index `k` refers to the `k`-th entry from the right.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ctx(Vec<Type>);

impl Ctx {
    pub fn empty() -> Ctx {
        Ctx(Vec::new())
    }

    pub fn from_types(types: Vec<Type>) -> Ctx {
        Ctx(types)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The type of de Bruijn index `k`, if in scope.
    pub fn lookup(&self, k: usize) -> Option<&Type> {
        let n = self.0.len();
        if k < n {
            Some(&self.0[n - 1 - k])
        } else {
            None
        }
    }

    /// This context extended on the right by one binding.
    pub fn extend(&self, ty: Type) -> Ctx {
        let mut v = self.0.clone();
        v.push(ty);
        Ctx(v)
    }

    /// Entries left to right (oldest first).
    pub fn types(&self) -> &[Type] {
        &self.0
    }
}

/// Flavor-indexed term syntax, shared across all four calculi.
///
/// Which modal constructs are legal is a property of the flavor, enforced by
/// [`crate::typing::infer`]: e.g. a `Return` inside an `slc` term is reported
/// as a flavor violation, never silently accepted.
///
/// `Lam` carries an optional domain annotation; inference requires it, and
/// the plain printer omits it, so a parsed-back term is compared with
/// [`alpha_eq`], which ignores annotations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(usize),
    Unit,
    Pair(Box<Term>, Box<Term>),
    Fst(Box<Term>),
    Snd(Box<Term>),
    Lam(Option<Type>, Box<Term>),
    App(Box<Term>, Box<Term>),
    /// `return t` (rlc, mlc).
    Return(Box<Term>),
    /// `letmap x = t in u`, with `u` under the binder (slc, rlc, jlc).
    LetMap(Box<Term>, Box<Term>),
    /// `letjoin x = t in u`, with `u` under the binder (jlc).
    LetJoin(Box<Term>, Box<Term>),
    /// `let x = t in u`, with `u` under the binder (mlc).
    Let(Box<Term>, Box<Term>),
}

impl Term {
    pub fn pair(t: Term, u: Term) -> Term {
        Term::Pair(Box::new(t), Box::new(u))
    }

    pub fn fst(t: Term) -> Term {
        Term::Fst(Box::new(t))
    }

    pub fn snd(t: Term) -> Term {
        Term::Snd(Box::new(t))
    }

    pub fn lam(dom: Type, body: Term) -> Term {
        Term::Lam(Some(dom), Box::new(body))
    }

    pub fn lam_unannotated(body: Term) -> Term {
        Term::Lam(None, Box::new(body))
    }

    pub fn app(t: Term, u: Term) -> Term {
        Term::App(Box::new(t), Box::new(u))
    }

    pub fn ret(t: Term) -> Term {
        Term::Return(Box::new(t))
    }

    pub fn letmap(t: Term, u: Term) -> Term {
        Term::LetMap(Box::new(t), Box::new(u))
    }

    pub fn letjoin(t: Term, u: Term) -> Term {
        Term::LetJoin(Box::new(t), Box::new(u))
    }

    pub fn let_in(t: Term, u: Term) -> Term {
        Term::Let(Box::new(t), Box::new(u))
    }

    /// Is every variable index below `depth` plus the binders above it?
    pub fn well_scoped(&self, depth: usize) -> bool {
        match self {
            Term::Var(k) => *k < depth,
            Term::Unit => true,
            Term::Pair(t, u) | Term::App(t, u) => t.well_scoped(depth) && u.well_scoped(depth),
            Term::Fst(t) | Term::Snd(t) | Term::Return(t) => t.well_scoped(depth),
            Term::Lam(_, t) => t.well_scoped(depth + 1),
            Term::LetMap(t, u) | Term::LetJoin(t, u) | Term::Let(t, u) => {
                t.well_scoped(depth) && u.well_scoped(depth + 1)
            }
        }
    }

    /// Nesting depth of the term tree.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Unit => 1,
            Term::Fst(t) | Term::Snd(t) | Term::Return(t) | Term::Lam(_, t) => 1 + t.depth(),
            Term::Pair(t, u)
            | Term::App(t, u)
            | Term::LetMap(t, u)
            | Term::LetJoin(t, u)
            | Term::Let(t, u) => 1 + t.depth().max(u.depth()),
        }
    }
}

/// Alpha-equivalence of terms well-scoped in the same context.
///
/// On nameless syntax this is structural identity, except that lambda
/// annotations are not compared: the printed form drops them, and on
/// well-typed terms of equal type they carry no extra information.
pub fn alpha_eq(t: &Term, u: &Term) -> bool {
    match (t, u) {
        (Term::Var(i), Term::Var(j)) => i == j,
        (Term::Unit, Term::Unit) => true,
        (Term::Pair(a, b), Term::Pair(c, d)) | (Term::App(a, b), Term::App(c, d)) => {
            alpha_eq(a, c) && alpha_eq(b, d)
        }
        (Term::Fst(a), Term::Fst(b))
        | (Term::Snd(a), Term::Snd(b))
        | (Term::Return(a), Term::Return(b)) => alpha_eq(a, b),
        (Term::Lam(_, a), Term::Lam(_, b)) => alpha_eq(a, b),
        (Term::LetMap(a, b), Term::LetMap(c, d))
        | (Term::LetJoin(a, b), Term::LetJoin(c, d))
        | (Term::Let(a, b), Term::Let(c, d)) => alpha_eq(a, c) && alpha_eq(b, d),
        _ => false,
    }
}

/// Pretty-printer state: names for the variables in scope, innermost last.
struct Printer {
    scope: Vec<String>,
    annotate: bool,
}

const NAME_POOL: [&str; 6] = ["x", "y", "z", "w", "v", "u"];

impl Printer {
    fn fresh(&self) -> String {
        for cand in NAME_POOL {
            if !self.scope.iter().any(|n| n == cand) {
                return String::from(cand);
            }
        }
        let mut k = 1usize;
        loop {
            let cand = alloc::format!("x{k}");
            if !self.scope.contains(&cand) {
                return cand;
            }
            k += 1;
        }
    }

    // Levels: binders (lambda, let family) 0, application 1, atoms 3.
    // `fst`/`snd`/`return` print at application level with an atomic argument.
    fn term(&mut self, t: &Term, min_level: u8, out: &mut String) {
        let level = match t {
            Term::Lam(..) | Term::LetMap(..) | Term::LetJoin(..) | Term::Let(..) => 0,
            Term::App(..) | Term::Fst(..) | Term::Snd(..) | Term::Return(..) => 1,
            Term::Var(_) | Term::Unit | Term::Pair(..) => 3,
        };
        let paren = level < min_level;
        if paren {
            out.push('(');
        }
        match t {
            Term::Var(k) => {
                let n = self.scope.len();
                if *k < n {
                    out.push_str(&self.scope[n - 1 - k]);
                } else {
                    // Out-of-scope index; render it visibly rather than panic.
                    out.push_str(&alloc::format!("#{k}"));
                }
            }
            Term::Unit => out.push_str("()"),
            Term::Pair(a, b) => {
                out.push('(');
                self.term(a, 0, out);
                out.push_str(", ");
                self.term(b, 0, out);
                out.push(')');
            }
            Term::Fst(a) => {
                out.push_str("fst ");
                self.term(a, 3, out);
            }
            Term::Snd(a) => {
                out.push_str("snd ");
                self.term(a, 3, out);
            }
            Term::Return(a) => {
                out.push_str("return ");
                self.term(a, 3, out);
            }
            Term::Lam(ann, body) => {
                let name = self.fresh();
                out.push('\\');
                out.push_str(&name);
                if self.annotate {
                    if let Some(ty) = ann {
                        out.push(':');
                        out.push_str(&alloc::format!("{ty}"));
                    }
                }
                out.push_str(". ");
                self.scope.push(name);
                self.term(body, 0, out);
                self.scope.pop();
            }
            Term::App(a, b) => {
                self.term(a, 1, out);
                out.push(' ');
                self.term(b, 3, out);
            }
            Term::LetMap(t, u) => self.binder("letmap", t, u, out),
            Term::LetJoin(t, u) => self.binder("letjoin", t, u, out),
            Term::Let(t, u) => self.binder("let", t, u, out),
        }
        if paren {
            out.push(')');
        }
    }

    fn binder(&mut self, kw: &str, t: &Term, u: &Term, out: &mut String) {
        let name = self.fresh();
        out.push_str(kw);
        out.push(' ');
        out.push_str(&name);
        out.push_str(" = ");
        self.term(t, 1, out);
        out.push_str(" in ");
        self.scope.push(name);
        self.term(u, 0, out);
        self.scope.pop();
    }
}

/// Render a term with the given names for its free variables (oldest first).
///
/// Binder names are invented fresh; lambda annotations are omitted, the
/// way terms are usually displayed. `parse(print(t))` is [`alpha_eq`] to
/// `t`.
pub fn print(t: &Term, names: &[&str]) -> String {
    print_with(t, names, false)
}

/// Like [`print`], but keeps `\x:T.` annotations so the output re-parses to
/// a term identical up to binder names, annotations included.
pub fn print_annotated(t: &Term, names: &[&str]) -> String {
    print_with(t, names, true)
}

fn print_with(t: &Term, names: &[&str], annotate: bool) -> String {
    let mut p = Printer {
        scope: names.iter().map(|s| String::from(*s)).collect(),
        annotate,
    };
    let mut out = String::new();
    p.term(t, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> Type {
        Type::Base
    }

    #[test]
    fn type_printing_follows_precedence() {
        // <> binds tightest, then *, then ->; * and -> right-associative.
        let s = Type::fun(
            Type::prod(base(), Type::dia(base())),
            Type::dia(Type::prod(base(), base())),
        );
        assert_eq!(alloc::format!("{s}"), "i * <>i -> <>(i * i)");

        let t = Type::fun(Type::dia(base()), Type::prod(Type::dia(base()), base()));
        assert_eq!(alloc::format!("{t}"), "<>i -> <>i * i");

        let nested = Type::dia(Type::dia(base()));
        assert_eq!(alloc::format!("{nested}"), "<><>i");

        let right = Type::fun(base(), Type::fun(base(), base()));
        assert_eq!(alloc::format!("{right}"), "i -> i -> i");
        let left = Type::fun(Type::fun(base(), base()), base());
        assert_eq!(alloc::format!("{left}"), "(i -> i) -> i");
    }

    #[test]
    fn term_printing_matches_display_forms() {
        let pair = Term::pair(Term::Var(0), Term::Unit);
        assert_eq!(print(&pair, &["x"]), "(x, ())");

        // Strength witness via letmap.
        let s = Term::lam(
            Type::prod(base(), Type::dia(base())),
            Term::letmap(
                Term::snd(Term::Var(0)),
                Term::pair(Term::fst(Term::Var(1)), Term::Var(0)),
            ),
        );
        assert_eq!(print(&s, &[]), "\\x. letmap y = snd x in (fst x, y)");
        assert_eq!(
            print_annotated(&s, &[]),
            "\\x:i * <>i. letmap y = snd x in (fst x, y)"
        );

        // Join witness via let.
        let j = Term::lam(
            Type::dia(Type::dia(base())),
            Term::let_in(Term::Var(0), Term::Var(0)),
        );
        assert_eq!(print(&j, &[]), "\\x. let y = x in y");
    }

    #[test]
    fn printer_avoids_shadowing_context_names() {
        let t = Term::lam(base(), Term::pair(Term::Var(0), Term::Var(1)));
        assert_eq!(print(&t, &["x"]), "\\y. (y, x)");
    }

    #[test]
    fn application_printing_is_left_associative() {
        let t = Term::app(Term::app(Term::Var(2), Term::Var(1)), Term::Var(0));
        assert_eq!(print(&t, &["f", "x", "y"]), "f x y");
        let u = Term::app(Term::Var(1), Term::app(Term::Var(1), Term::Var(0)));
        assert_eq!(print(&u, &["f", "x"]), "f (f x)");
        let redex = Term::app(Term::lam(base(), Term::Var(0)), Term::Unit);
        assert_eq!(print(&redex, &[]), "(\\x. x) ()");
    }

    #[test]
    fn alpha_eq_ignores_annotations_only() {
        let id1 = Term::lam(base(), Term::Var(0));
        let id2 = Term::lam_unannotated(Term::Var(0));
        assert!(alpha_eq(&id1, &id2));

        let k1 = Term::lam(base(), Term::lam(base(), Term::Var(1)));
        let k2 = Term::lam(base(), Term::lam(base(), Term::Var(0)));
        assert!(!alpha_eq(&k1, &k2));

        let lm1 = Term::letmap(Term::Var(0), Term::Var(0));
        let lm2 = Term::letmap(Term::Var(0), Term::Var(0));
        assert!(alpha_eq(&lm1, &lm2));
        assert!(!alpha_eq(&lm1, &Term::let_in(Term::Var(0), Term::Var(0))));
    }

    #[test]
    fn ctx_lookup_counts_from_the_right() {
        let ctx = Ctx::empty().extend(Type::Base).extend(Type::Unit);
        assert_eq!(ctx.lookup(0), Some(&Type::Unit));
        assert_eq!(ctx.lookup(1), Some(&Type::Base));
        assert_eq!(ctx.lookup(2), None);
    }
}
