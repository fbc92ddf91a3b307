//! Normalization by evaluation over a possible-world model whose worlds are
//! contexts.
//!
//! Intuitionistic reachability between worlds is the order-preserving
//! embedding [`Ope`]; modal reachability is a [`Macc`]: a chain of
//! `<>`-typed neutrals, each binding its payload into the context. The
//! flavor decides which chain shapes exist — only a single step for `slc`,
//! optionally empty for `rlc`, non-empty for `jlc`, free for `mlc` — which
//! is exactly what makes the respective frame reflexive and/or transitive.
//!
//! Semantic values are Kripke-style: functions take an embedding to any
//! future world together with an argument there, and every value can be
//! transported along an embedding. Normalization evaluates a term in the
//! environment that reflects each variable, then reads the value back as an
//! eta-long normal form.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::nf::{weaken_neutral, Neutral, NormalForm};
use crate::ope::{ope_compose, Ope};
use crate::syntax::{Ctx, Flavor, Term, Type};
use crate::typing::{infer, TypeError};

/// One step of modal reachability: a neutral of type `<>payload` in the
/// source context, binding `payload` into the context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaccEntry {
    pub neutral: Neutral,
    pub payload: Type,
}

/// Modal accessibility witness from a source context to the context
/// extended by every entry's payload in order.
///
/// The empty chain is the reflexivity witness and exists only in flavors
/// with `return`; chains are concatenated by [`macc_trans`], which exists
/// only in flavors with `letjoin`/`let`. Evaluation and reflection only
/// build shapes legal for their flavor, checked by [`Macc::valid_for`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Macc {
    entries: Vec<MaccEntry>,
}

impl Macc {
    pub fn empty() -> Macc {
        Macc { entries: Vec::new() }
    }

    pub fn single(neutral: Neutral, payload: Type) -> Macc {
        Macc { entries: alloc::vec![MaccEntry { neutral, payload }] }
    }

    pub fn from_entries(entries: Vec<MaccEntry>) -> Macc {
        Macc { entries }
    }

    pub fn entries(&self) -> &[MaccEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The context this witness reaches, starting from `src`.
    pub fn target(&self, src: &Ctx) -> Ctx {
        let mut ctx = src.clone();
        for e in &self.entries {
            ctx = ctx.extend(e.payload.clone());
        }
        ctx
    }

    /// Chain shapes representable in each flavor's accessibility relation.
    pub fn valid_for(&self, flavor: Flavor) -> bool {
        match flavor {
            Flavor::Slc => self.entries.len() == 1,
            Flavor::Rlc => self.entries.len() <= 1,
            Flavor::Jlc => !self.entries.is_empty(),
            Flavor::Mlc => true,
        }
    }
}

/// An operation was requested that the flavor's frame does not support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlavorViolation {
    pub operation: &'static str,
    pub flavor: Flavor,
}

impl fmt::Display for FlavorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is not available in {}", self.operation, self.flavor)
    }
}

/// The inclusion condition: every modal step is an intuitionistic step.
/// One `Drop` per chain entry; the empty chain includes as the identity.
pub fn macc_include(m: &Macc, src: &Ctx) -> Ope {
    let mut ope = Ope::id(src);
    for e in &m.entries {
        ope = Ope::drop(e.payload.clone(), ope);
    }
    ope
}

/// Forward confluence: transport a modal witness from `Γ` over an
/// embedding `i : Γ ≤ Γ'`, producing the transported witness together with
/// the embedding between the two targets.
pub fn macc_factor(i: &Ope, m: &Macc) -> (Macc, Ope) {
    let mut cur = i.clone();
    let mut entries = Vec::with_capacity(m.entries.len());
    for e in &m.entries {
        entries.push(MaccEntry {
            neutral: weaken_neutral(&cur, &e.neutral),
            payload: e.payload.clone(),
        });
        cur = Ope::keep(e.payload.clone(), cur);
    }
    (Macc { entries }, cur)
}

/// The reflexivity witness, for flavors whose frame is reflexive.
pub fn macc_refl(flavor: Flavor, _ctx: &Ctx) -> Result<Macc, FlavorViolation> {
    if flavor.has_refl() {
        Ok(Macc::empty())
    } else {
        Err(FlavorViolation { operation: "reflexive modal witness", flavor })
    }
}

/// Chain two modal witnesses, for flavors whose frame is transitive.
/// The second witness must start where the first ends.
pub fn macc_trans(flavor: Flavor, m1: &Macc, m2: &Macc) -> Result<Macc, FlavorViolation> {
    if !flavor.has_trans() {
        return Err(FlavorViolation { operation: "transitive modal witness", flavor });
    }
    let mut entries = m1.entries.clone();
    entries.extend(m2.entries.iter().cloned());
    Ok(Macc { entries })
}

type SemFunInner = Arc<dyn Fn(&Ope, SemVal) -> SemVal + Send + Sync>;

/// Kripke function value: takes an embedding into any future world and an
/// argument there, and produces a result there.
#[derive(Clone)]
pub struct SemFun(SemFunInner);

impl SemFun {
    pub fn new<F: Fn(&Ope, SemVal) -> SemVal + Send + Sync + 'static>(f: F) -> SemFun {
        SemFun(Arc::new(f))
    }

    pub fn apply(&self, i: &Ope, arg: SemVal) -> SemVal {
        (self.0)(i, arg)
    }
}

/// Semantic value at a world (the world is carried by the caller).
#[derive(Clone)]
pub enum SemVal {
    /// At base type: a neutral.
    Base(Neutral),
    Unit,
    Pair(Box<SemVal>, Box<SemVal>),
    Fun(SemFun),
    /// At `<>A`: a modal witness into some world together with a value
    /// of `A` there.
    Dia(Macc, Box<SemVal>),
}

impl fmt::Debug for SemVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemVal::Base(n) => f.debug_tuple("Base").field(n).finish(),
            SemVal::Unit => f.write_str("Unit"),
            SemVal::Pair(a, b) => f.debug_tuple("Pair").field(a).field(b).finish(),
            SemVal::Fun(_) => f.write_str("Fun(..)"),
            SemVal::Dia(m, v) => f.debug_tuple("Dia").field(m).field(v).finish(),
        }
    }
}

impl SemVal {
    pub fn pair(a: SemVal, b: SemVal) -> SemVal {
        SemVal::Pair(Box::new(a), Box::new(b))
    }

    pub fn dia(m: Macc, v: SemVal) -> SemVal {
        SemVal::Dia(m, Box::new(v))
    }

    fn into_pair(self) -> (SemVal, SemVal) {
        match self {
            SemVal::Pair(a, b) => (*a, *b),
            other => panic!("internal: projection from a non-pair value {other:?}"),
        }
    }

    fn into_fun(self) -> SemFun {
        match self {
            SemVal::Fun(f) => f,
            other => panic!("internal: application of a non-function value {other:?}"),
        }
    }

    fn into_dia(self) -> (Macc, SemVal) {
        match self {
            SemVal::Dia(m, v) => (m, *v),
            other => panic!("internal: modal elimination of a non-modal value {other:?}"),
        }
    }
}

/// Transport a semantic value along an embedding (the presheaf action).
pub fn transport(i: &Ope, v: &SemVal) -> SemVal {
    match v {
        SemVal::Base(n) => SemVal::Base(weaken_neutral(i, n)),
        SemVal::Unit => SemVal::Unit,
        SemVal::Pair(a, b) => SemVal::pair(transport(i, a), transport(i, b)),
        SemVal::Fun(f) => {
            let f = f.clone();
            let i = i.clone();
            SemVal::Fun(SemFun::new(move |j, arg| {
                let ij = ope_compose(&i, j).expect("transport: embeddings chain");
                f.apply(&ij, arg)
            }))
        }
        SemVal::Dia(m, p) => {
            let (m2, i2) = macc_factor(i, m);
            SemVal::Dia(m2, Box::new(transport(&i2, p)))
        }
    }
}

/// Evaluation environment: one value per context entry, all living at
/// `world`.
#[derive(Debug, Clone)]
pub struct SemEnv {
    world: Ctx,
    vals: Vec<SemVal>,
}

impl SemEnv {
    pub fn new(world: Ctx, vals: Vec<SemVal>) -> SemEnv {
        SemEnv { world, vals }
    }

    /// The environment interpreting each variable of `ctx` as itself.
    pub fn identity(flavor: Flavor, ctx: &Ctx) -> SemEnv {
        let n = ctx.len();
        let vals = ctx
            .types()
            .iter()
            .enumerate()
            .map(|(j, ty)| reflect(flavor, ty, Neutral::Var(n - 1 - j), ctx))
            .collect();
        SemEnv { world: ctx.clone(), vals }
    }

    pub fn world(&self) -> &Ctx {
        &self.world
    }

    pub fn lookup(&self, k: usize) -> &SemVal {
        let n = self.vals.len();
        assert!(k < n, "internal: environment lookup out of range");
        &self.vals[n - 1 - k]
    }

    /// Transport every value along `i`; the world becomes `i`'s target.
    pub fn transport(&self, i: &Ope) -> SemEnv {
        SemEnv {
            world: i.tgt(),
            vals: self.vals.iter().map(|v| transport(i, v)).collect(),
        }
    }

    /// Push a value living at the same world.
    pub fn extend(&self, v: SemVal) -> SemEnv {
        let mut vals = self.vals.clone();
        vals.push(v);
        SemEnv { world: self.world.clone(), vals }
    }
}

/// Evaluate a well-typed term in an environment.
///
/// Panics on ill-typed input (a projection or application of a value of the
/// wrong shape); run [`infer`] first.
pub fn eval(flavor: Flavor, t: &Term, env: &SemEnv) -> SemVal {
    match t {
        Term::Var(k) => env.lookup(*k).clone(),
        Term::Unit => SemVal::Unit,
        Term::Pair(a, b) => SemVal::pair(eval(flavor, a, env), eval(flavor, b, env)),
        Term::Fst(a) => eval(flavor, a, env).into_pair().0,
        Term::Snd(a) => eval(flavor, a, env).into_pair().1,
        Term::Lam(_, body) => {
            let env = env.clone();
            let body = (**body).clone();
            SemVal::Fun(SemFun::new(move |i, arg| {
                eval(flavor, &body, &env.transport(i).extend(arg))
            }))
        }
        Term::App(a, b) => {
            let f = eval(flavor, a, env).into_fun();
            let arg = eval(flavor, b, env);
            f.apply(&Ope::id(env.world()), arg)
        }
        Term::Return(a) => SemVal::dia(Macc::empty(), eval(flavor, a, env)),
        Term::LetMap(subject, body) => {
            let (m, payload) = eval(flavor, subject, env).into_dia();
            let inner = env.transport(&macc_include(&m, env.world())).extend(payload);
            let result = eval(flavor, body, &inner);
            SemVal::dia(m, result)
        }
        Term::LetJoin(subject, body) | Term::Let(subject, body) => {
            let (m, payload) = eval(flavor, subject, env).into_dia();
            let inner = env.transport(&macc_include(&m, env.world())).extend(payload);
            let (m2, result) = eval(flavor, body, &inner).into_dia();
            let chained = macc_trans(flavor, &m, &m2)
                .expect("internal: typing admitted letjoin/let in a non-transitive flavor");
            SemVal::dia(chained, result)
        }
    }
}

/// Lift a neutral of type `ty` into a semantic value.
pub fn reflect(flavor: Flavor, ty: &Type, n: Neutral, ctx: &Ctx) -> SemVal {
    match ty {
        Type::Base => SemVal::Base(n),
        Type::Unit => SemVal::Unit,
        Type::Prod(a, b) => SemVal::pair(
            reflect(flavor, a, Neutral::fst(n.clone()), ctx),
            reflect(flavor, b, Neutral::snd(n), ctx),
        ),
        Type::Fun(a, b) => {
            let a = (**a).clone();
            let b = (**b).clone();
            SemVal::Fun(SemFun::new(move |i, arg| {
                let world = i.tgt();
                let spine = Neutral::app(weaken_neutral(i, &n), reify(flavor, &a, &arg, &world));
                reflect(flavor, &b, spine, &world)
            }))
        }
        Type::Dia(a) => {
            // One fresh modal step: bind the payload and reflect the new
            // top variable at it.
            let inner = ctx.extend((**a).clone());
            let payload = reflect(flavor, a, Neutral::Var(0), &inner);
            SemVal::dia(Macc::single(n, (**a).clone()), payload)
        }
    }
}

/// Read a semantic value of type `ty` back as an eta-long normal form.
pub fn reify(flavor: Flavor, ty: &Type, v: &SemVal, ctx: &Ctx) -> NormalForm {
    match ty {
        Type::Base => match v {
            SemVal::Base(n) => NormalForm::Up(n.clone()),
            other => panic!("internal: base-type value is not neutral: {other:?}"),
        },
        Type::Unit => NormalForm::Unit,
        Type::Prod(a, b) => match v {
            SemVal::Pair(l, r) => {
                NormalForm::pair(reify(flavor, a, l, ctx), reify(flavor, b, r, ctx))
            }
            other => panic!("internal: product-type value is not a pair: {other:?}"),
        },
        Type::Fun(a, b) => {
            let inner = ctx.extend((**a).clone());
            let fresh = reflect(flavor, a, Neutral::Var(0), &inner);
            let f = v.clone().into_fun();
            let body = f.apply(&Ope::drop((**a).clone(), Ope::id(ctx)), fresh);
            NormalForm::lam((**a).clone(), reify(flavor, b, &body, &inner))
        }
        Type::Dia(a) => {
            let (m, payload) = v.clone().into_dia();
            debug_assert!(m.valid_for(flavor), "modal witness shape escaped its flavor");
            let target = m.target(ctx);
            let body = reify(flavor, a, &payload, &target);
            rebuild_chain(flavor, m.entries(), body)
        }
    }
}

// The chain mirrors the binding structure of the flavor's modal normal
// forms: the empty chain is a `return`, an mlc chain is `let`s around a
// final `return`, a jlc chain is `letjoin`s around a final `letmap`, and a
// single slc/rlc step is a `letmap`.
fn rebuild_chain(flavor: Flavor, entries: &[MaccEntry], body: NormalForm) -> NormalForm {
    match (flavor, entries) {
        (Flavor::Rlc | Flavor::Mlc, []) => NormalForm::ret(body),
        (Flavor::Mlc, _) => {
            let mut nf = NormalForm::ret(body);
            for e in entries.iter().rev() {
                nf = NormalForm::let_in(e.neutral.clone(), nf);
            }
            nf
        }
        (Flavor::Jlc, [prefix @ .., last]) => {
            let mut nf = NormalForm::letmap(last.neutral.clone(), body);
            for e in prefix.iter().rev() {
                nf = NormalForm::letjoin(e.neutral.clone(), nf);
            }
            nf
        }
        (Flavor::Slc | Flavor::Rlc, [only]) => NormalForm::letmap(only.neutral.clone(), body),
        _ => panic!("internal: modal witness shape escaped its flavor"),
    }
}

/// Read back a semantic function of the context as a normal form, by
/// applying it to the environment that reflects each variable.
pub fn quote<F>(flavor: Flavor, ctx: &Ctx, ty: &Type, f: F) -> NormalForm
where
    F: FnOnce(&SemEnv) -> SemVal,
{
    let env = SemEnv::identity(flavor, ctx);
    reify(flavor, ty, &f(&env), ctx)
}

/// Normalize a well-typed term.
pub fn norm(flavor: Flavor, ctx: &Ctx, t: &Term) -> Result<NormalForm, TypeError> {
    let ty = infer(flavor, ctx, t)?;
    Ok(quote(flavor, ctx, &ty, |env| eval(flavor, t, env)))
}

/// Why an equality query could not be answered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqError {
    Left(TypeError),
    Right(TypeError),
    TypeMismatch { left: Type, right: Type },
}

impl fmt::Display for EqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqError::Left(e) => write!(f, "left term: {e}"),
            EqError::Right(e) => write!(f, "right term: {e}"),
            EqError::TypeMismatch { left, right } => {
                write!(f, "terms have different types: {left} vs {right}")
            }
        }
    }
}

/// Decide judgmental equality of two well-typed terms of the same type, by
/// comparing normal forms.
pub fn decide_equal(flavor: Flavor, ctx: &Ctx, t: &Term, u: &Term) -> Result<bool, EqError> {
    let ty_t = infer(flavor, ctx, t).map_err(EqError::Left)?;
    let ty_u = infer(flavor, ctx, u).map_err(EqError::Right)?;
    if ty_t != ty_u {
        return Err(EqError::TypeMismatch { left: ty_t, right: ty_u });
    }
    let nf_t = quote(flavor, ctx, &ty_t, |env| eval(flavor, t, env));
    let nf_u = quote(flavor, ctx, &ty_t, |env| eval(flavor, u, env));
    Ok(nf_t == nf_u)
}
