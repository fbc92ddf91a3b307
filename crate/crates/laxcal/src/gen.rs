//! Seeded generation of well-typed terms, used by the randomized test
//! suites and reproducible from the seed alone.
//!
//! Generation is type-directed: a production is only chosen when a bounded
//! enumeration shows its subgoals inhabited, so the generator never loops
//! hunting for terms of empty types (in `slc`, for instance, `<>A` is
//! uninhabited in a diamond-free context). At exhausted depth the smallest
//! normal form of the goal type is emitted.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use alloc::collections::BTreeSet;

use crate::equations::{rule_info, RuleId};
use crate::nf::{embed, inhabited, Enumerator, NormalForm};
use crate::syntax::{Ctx, Flavor, Term, Type};

/// SplitMix64: a small deterministic generator, good enough for test-case
/// shuffling and fully reproducible across platforms.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..n` (`n` must be nonzero).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Index drawn proportionally to the weights.
    pub fn pick_weighted(&mut self, weights: &[u32]) -> usize {
        let total: u64 = weights.iter().map(|w| *w as u64).sum();
        debug_assert!(total > 0);
        let mut roll = self.next_u64() % total;
        for (idx, w) in weights.iter().enumerate() {
            if roll < *w as u64 {
                return idx;
            }
            roll -= *w as u64;
        }
        weights.len() - 1
    }
}

/// How deep the witness search looks before declaring a goal infeasible.
const WITNESS_DEPTH: usize = 7;

/// Node budget per witness enumeration; goals that enumerate past this are
/// abandoned rather than materialized.
const WITNESS_BUDGET: usize = 4000;

/// Seeded generator of well-typed terms for one flavor.
pub struct TermGen {
    flavor: Flavor,
    rng: Rng,
    enumerator: Enumerator,
    witnesses: BTreeMap<(Ctx, Type), Option<NormalForm>>,
    // Inhabitation depends only on the set of context types, so the
    // feasibility oracle caches per set.
    feasibility: BTreeMap<(BTreeSet<Type>, Type), bool>,
}

impl TermGen {
    pub fn new(flavor: Flavor, seed: u64) -> TermGen {
        TermGen {
            flavor,
            rng: Rng::new(seed),
            enumerator: Enumerator::new(flavor),
            witnesses: BTreeMap::new(),
            feasibility: BTreeMap::new(),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn rng(&mut self) -> &mut Rng {
        &mut self.rng
    }

    fn inhabited_here(&mut self, ctx: &Ctx, ty: &Type) -> bool {
        let key = (ctx.types().iter().cloned().collect::<BTreeSet<Type>>(), ty.clone());
        if let Some(hit) = self.feasibility.get(&key) {
            return *hit;
        }
        let answer = inhabited(self.flavor, ctx, ty);
        self.feasibility.insert(key, answer);
        answer
    }

    /// The smallest normal form of `ty` in `ctx`, if one exists within the
    /// search depth. Inhabitation is settled by a fixed point first, so
    /// empty goals never trigger a deep enumeration.
    pub fn witness(&mut self, ctx: &Ctx, ty: &Type) -> Option<NormalForm> {
        let key = (ctx.clone(), ty.clone());
        if let Some(hit) = self.witnesses.get(&key) {
            return hit.clone();
        }
        let mut found = None;
        if self.inhabited_here(ctx, ty) {
            for depth in 1..=WITNESS_DEPTH {
                self.enumerator.reset_budget(WITNESS_BUDGET);
                let candidates = self.enumerator.normal_forms(ctx, ty, depth);
                if let Some(first) = candidates.into_iter().next() {
                    found = Some(first);
                    break;
                }
                if self.enumerator.was_truncated() {
                    // Deeper searches only cost more; give up on this goal.
                    break;
                }
            }
            self.enumerator.reset_budget(isize::MAX as usize);
        }
        self.witnesses.insert(key, found.clone());
        found
    }

    fn feasible(&mut self, ctx: &Ctx, ty: &Type) -> bool {
        self.witness(ctx, ty).is_some()
    }

    /// A random type, biased toward base/unit leaves with a healthy share
    /// of diamonds.
    pub fn gen_type(&mut self, depth: usize) -> Type {
        if depth == 0 {
            return if self.rng.below(2) == 0 { Type::Base } else { Type::Unit };
        }
        match self.rng.pick_weighted(&[3, 2, 2, 2, 3]) {
            0 => Type::Base,
            1 => Type::Unit,
            2 => {
                let a = self.gen_type(depth - 1);
                let b = self.gen_type(depth - 1);
                Type::prod(a, b)
            }
            3 => {
                let a = self.gen_type(depth - 1);
                let b = self.gen_type(depth - 1);
                Type::fun(a, b)
            }
            _ => Type::dia(self.gen_type(depth - 1)),
        }
    }

    /// A random context of up to `max_len` entries.
    pub fn gen_ctx(&mut self, max_len: usize, ty_depth: usize) -> Ctx {
        let len = self.rng.below(max_len + 1);
        let mut ctx = Ctx::empty();
        for _ in 0..len {
            let ty = self.gen_type(ty_depth);
            ctx = ctx.extend(ty);
        }
        ctx
    }

    /// Candidate types for argument/payload positions: small closed types
    /// plus everything already in sight.
    fn type_pool(&mut self, ctx: &Ctx, ty: &Type) -> Vec<Type> {
        let mut pool: Vec<Type> = Vec::new();
        let push = |t: Type, pool: &mut Vec<Type>| {
            if !pool.contains(&t) {
                pool.push(t);
            }
        };
        push(Type::Base, &mut pool);
        push(Type::Unit, &mut pool);
        for t in ctx.types() {
            push(t.clone(), &mut pool);
            for s in t.subformulas().into_iter().take(4) {
                push(s, &mut pool);
            }
        }
        for s in ty.subformulas().into_iter().take(4) {
            push(s, &mut pool);
        }
        pool.truncate(10);
        pool
    }

    /// A random well-typed term of type `ty` under `ctx`, or `None` when the
    /// type has no inhabitant there.
    pub fn gen_term(&mut self, ctx: &Ctx, ty: &Type, depth: usize) -> Option<Term> {
        let fallback = self.witness(ctx, ty)?;
        if depth == 0 {
            return Some(embed(&fallback));
        }

        #[derive(Clone)]
        enum Prod {
            Var(usize),
            Intro,
            Ret,
            LetMap(Type),
            Bind(Type),
            App(Type),
            Fst(Type),
            Snd(Type),
        }

        let mut options: Vec<(Prod, u32)> = Vec::new();
        for k in 0..ctx.len() {
            if ctx.lookup(k) == Some(ty) {
                options.push((Prod::Var(k), 3));
            }
        }
        match ty {
            Type::Unit | Type::Base => {}
            Type::Prod(..) | Type::Fun(..) => options.push((Prod::Intro, 5)),
            Type::Dia(b) => {
                if self.flavor.has_return() && self.feasible(ctx, b) {
                    options.push((Prod::Ret, 4));
                }
            }
        }
        let pool = self.type_pool(ctx, ty);
        // Sample a few candidate auxiliary types rather than trying them all.
        for _ in 0..3 {
            let c = pool[self.rng.below(pool.len())].clone();
            if let Type::Dia(b) = ty {
                let inner = ctx.extend(c.clone());
                if self.feasible(ctx, &Type::dia(c.clone())) {
                    if self.flavor.has_letmap() && self.feasible(&inner, b) {
                        options.push((Prod::LetMap(c.clone()), 4));
                    }
                    if (self.flavor.has_letjoin() || self.flavor.has_let())
                        && self.feasible(&inner, ty)
                    {
                        options.push((Prod::Bind(c.clone()), 3));
                    }
                }
            }
            if self.feasible(ctx, &c) {
                if self.feasible(ctx, &Type::fun(c.clone(), ty.clone())) {
                    options.push((Prod::App(c.clone()), 2));
                }
                options.push((Prod::Fst(c.clone()), 1));
                options.push((Prod::Snd(c.clone()), 1));
            }
        }

        if options.is_empty() {
            return Some(embed(&fallback));
        }
        let weights: Vec<u32> = options.iter().map(|(_, w)| *w).collect();
        let (choice, _) = options[self.rng.pick_weighted(&weights)].clone();
        let term = match choice {
            Prod::Var(k) => Term::Var(k),
            Prod::Intro => match ty {
                Type::Prod(a, b) => {
                    let left = self.gen_term(ctx, a, depth - 1)?;
                    let right = self.gen_term(ctx, b, depth - 1)?;
                    Term::pair(left, right)
                }
                Type::Fun(a, b) => {
                    let body = self.gen_term(&ctx.extend((**a).clone()), b, depth - 1)?;
                    Term::lam((**a).clone(), body)
                }
                _ => unreachable!("intro only offered for products and functions"),
            },
            Prod::Ret => match ty {
                Type::Dia(b) => Term::ret(self.gen_term(ctx, b, depth - 1)?),
                _ => unreachable!(),
            },
            Prod::LetMap(c) => match ty {
                Type::Dia(b) => {
                    let subject = self.gen_term(ctx, &Type::dia(c.clone()), depth - 1)?;
                    let body = self.gen_term(&ctx.extend(c), b, depth - 1)?;
                    Term::letmap(subject, body)
                }
                _ => unreachable!(),
            },
            Prod::Bind(c) => {
                let subject = self.gen_term(ctx, &Type::dia(c.clone()), depth - 1)?;
                let body = self.gen_term(&ctx.extend(c), ty, depth - 1)?;
                if self.flavor.has_letjoin() {
                    Term::letjoin(subject, body)
                } else {
                    Term::let_in(subject, body)
                }
            }
            Prod::App(c) => {
                let f = self.gen_term(ctx, &Type::fun(c.clone(), ty.clone()), depth - 1)?;
                let arg = self.gen_term(ctx, &c, depth - 1)?;
                Term::app(f, arg)
            }
            Prod::Fst(c) => {
                let p = self.gen_term(ctx, &Type::prod(ty.clone(), c), depth - 1)?;
                Term::fst(p)
            }
            Prod::Snd(c) => {
                let p = self.gen_term(ctx, &Type::prod(c, ty.clone()), depth - 1)?;
                Term::snd(p)
            }
        };
        Some(term)
    }

    /// A random context, inhabited type, and well-typed term of that type.
    pub fn random_judgment(
        &mut self,
        max_ctx: usize,
        ty_depth: usize,
        term_depth: usize,
    ) -> (Ctx, Type, Term) {
        for _ in 0..20 {
            let ctx = self.gen_ctx(max_ctx, ty_depth);
            let ty = self.gen_type(ty_depth);
            if let Some(term) = self.gen_term(&ctx, &ty, term_depth) {
                return (ctx, ty, term);
            }
        }
        (Ctx::empty(), Type::Unit, Term::Unit)
    }

    /// A context guaranteed to offer modal material: always ends with a
    /// diamond-typed entry and a base-typed entry.
    pub fn gen_modal_ctx(&mut self, ty_depth: usize) -> Ctx {
        let mut ctx = self.gen_ctx(1, ty_depth);
        let payload = if self.rng.below(2) == 0 { Type::Base } else { self.gen_type(1) };
        ctx = ctx.extend(Type::dia(payload));
        ctx = ctx.extend(Type::Base);
        ctx
    }

    fn any_inhabited(&mut self, ctx: &Ctx) -> Option<Type> {
        let pool = self.type_pool(ctx, &Type::Unit);
        for _ in 0..6 {
            let c = pool[self.rng.below(pool.len())].clone();
            if self.feasible(ctx, &c) {
                return Some(c);
            }
        }
        Some(Type::Unit)
    }

    fn any_dia_payload(&mut self, ctx: &Ctx) -> Option<Type> {
        let pool = self.type_pool(ctx, &Type::Unit);
        let mut feasible: Vec<Type> = Vec::new();
        for c in pool {
            if self.feasible(ctx, &Type::dia(c.clone())) {
                feasible.push(c);
            }
        }
        if feasible.is_empty() {
            return None;
        }
        let idx = self.rng.below(feasible.len());
        Some(feasible.swap_remove(idx))
    }

    /// Random bindings satisfying the premises of a rule schema, together
    /// with the context they live in. `None` when this draw failed; callers
    /// retry, which keeps the generator total.
    pub fn rule_bindings(&mut self, rule: RuleId, depth: usize) -> Option<(Ctx, Vec<Term>)> {
        let info = rule_info(rule);
        if !info.flavors.contains(&self.flavor) {
            return None;
        }
        let ctx = self.gen_modal_ctx(1);
        let bindings = match rule {
            RuleId::UnitEta => {
                alloc::vec![self.gen_term(&ctx, &Type::Unit, depth)?]
            }
            RuleId::ProdEta => {
                let a = self.any_inhabited(&ctx)?;
                let b = self.any_inhabited(&ctx)?;
                alloc::vec![self.gen_term(&ctx, &Type::prod(a, b), depth)?]
            }
            RuleId::ProdBeta1 | RuleId::ProdBeta2 => {
                let a = self.any_inhabited(&ctx)?;
                let b = self.any_inhabited(&ctx)?;
                alloc::vec![
                    self.gen_term(&ctx, &a, depth)?,
                    self.gen_term(&ctx, &b, depth)?
                ]
            }
            RuleId::FunEta => {
                let a = self.gen_type(1);
                let inner = ctx.extend(a.clone());
                let b = self.any_inhabited(&inner)?;
                alloc::vec![self.gen_term(&ctx, &Type::fun(a, b), depth)?]
            }
            RuleId::FunBeta => {
                let a = self.any_inhabited(&ctx)?;
                let inner = ctx.extend(a.clone());
                let b = self.any_inhabited(&inner)?;
                alloc::vec![
                    self.gen_term(&inner, &b, depth)?,
                    self.gen_term(&ctx, &a, depth)?
                ]
            }
            RuleId::MlDiaBeta => {
                let a = self.any_inhabited(&ctx)?;
                let inner = ctx.extend(a.clone());
                let b = self.any_dia_payload(&inner)?;
                alloc::vec![
                    self.gen_term(&ctx, &a, depth)?,
                    self.gen_term(&inner, &Type::dia(b), depth)?
                ]
            }
            RuleId::MlDiaEta | RuleId::SlDiaEta | RuleId::RlDiaEta | RuleId::JlDiaEta => {
                let a = self.any_dia_payload(&ctx)?;
                alloc::vec![self.gen_term(&ctx, &Type::dia(a), depth)?]
            }
            RuleId::MlDiaAss | RuleId::JlDiaAss => {
                let a = self.any_dia_payload(&ctx)?;
                let ctx_a = ctx.extend(a.clone());
                let b = self.any_dia_payload(&ctx_a)?;
                let ctx_b = ctx.extend(b.clone());
                let c = self.any_dia_payload(&ctx_b)?;
                let t = self.gen_term(&ctx, &Type::dia(a), depth)?;
                let u = self.gen_term(&ctx_a, &Type::dia(b), depth)?;
                let u2 = self.gen_term(&ctx_b, &Type::dia(c), depth)?;
                alloc::vec![t, u, u2]
            }
            RuleId::SlDiaBeta | RuleId::RlDiaBeta1 | RuleId::JlDiaBeta1 => {
                let a = self.any_dia_payload(&ctx)?;
                let ctx_a = ctx.extend(a.clone());
                let b = self.any_inhabited(&ctx_a)?;
                let ctx_b = ctx.extend(b.clone());
                let c = self.any_inhabited(&ctx_b)?;
                let t = self.gen_term(&ctx, &Type::dia(a), depth)?;
                let u = self.gen_term(&ctx_a, &b, depth)?;
                let u2 = self.gen_term(&ctx_b, &c, depth)?;
                alloc::vec![t, u, u2]
            }
            RuleId::RlDiaBeta2 => {
                let a = self.any_inhabited(&ctx)?;
                let inner = ctx.extend(a.clone());
                let b = self.any_inhabited(&inner)?;
                alloc::vec![
                    self.gen_term(&ctx, &a, depth)?,
                    self.gen_term(&inner, &b, depth)?
                ]
            }
            RuleId::JlDiaBeta2 => {
                let a = self.any_dia_payload(&ctx)?;
                let ctx_a = ctx.extend(a.clone());
                let b = self.any_inhabited(&ctx_a)?;
                let ctx_b = ctx.extend(b.clone());
                let c = self.any_dia_payload(&ctx_b)?;
                let t = self.gen_term(&ctx, &Type::dia(a), depth)?;
                let u = self.gen_term(&ctx_a, &b, depth)?;
                let u2 = self.gen_term(&ctx_b, &Type::dia(c), depth)?;
                alloc::vec![t, u, u2]
            }
            RuleId::JlDiaCom => {
                let a = self.any_dia_payload(&ctx)?;
                let ctx_a = ctx.extend(a.clone());
                let b = self.any_dia_payload(&ctx_a)?;
                let ctx_b = ctx.extend(b.clone());
                let c = self.any_inhabited(&ctx_b)?;
                let t = self.gen_term(&ctx, &Type::dia(a), depth)?;
                let u = self.gen_term(&ctx_a, &Type::dia(b), depth)?;
                let u2 = self.gen_term(&ctx_b, &c, depth)?;
                alloc::vec![t, u, u2]
            }
        };
        Some((ctx, bindings))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typing::infer;

    #[test]
    fn rng_is_deterministic() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn generated_terms_typecheck() {
        for flavor in Flavor::ALL {
            let mut g = TermGen::new(flavor, 7);
            for _ in 0..60 {
                let (ctx, ty, term) = g.random_judgment(3, 2, 4);
                assert_eq!(
                    infer(flavor, &ctx, &term).as_ref(),
                    Ok(&ty),
                    "{flavor}: generated term has wrong type: {term:?}"
                );
            }
        }
    }

    #[test]
    fn generation_is_reproducible_from_the_seed() {
        let mut a = TermGen::new(Flavor::Mlc, 99);
        let mut b = TermGen::new(Flavor::Mlc, 99);
        for _ in 0..20 {
            assert_eq!(a.random_judgment(3, 2, 4), b.random_judgment(3, 2, 4));
        }
    }

    #[test]
    fn modal_constructs_do_appear() {
        fn uses_modal(t: &Term) -> bool {
            match t {
                Term::Return(_) | Term::LetMap(..) | Term::LetJoin(..) | Term::Let(..) => true,
                Term::Var(_) | Term::Unit => false,
                Term::Fst(a) | Term::Snd(a) | Term::Lam(_, a) => uses_modal(a),
                Term::Pair(a, b) | Term::App(a, b) => uses_modal(a) || uses_modal(b),
            }
        }
        for flavor in Flavor::ALL {
            let mut g = TermGen::new(flavor, 3);
            let mut hits = 0;
            for _ in 0..80 {
                let (_, _, term) = g.random_judgment(3, 2, 4);
                if uses_modal(&term) {
                    hits += 1;
                }
            }
            assert!(hits > 5, "{flavor}: only {hits} modal terms in 80 draws");
        }
    }
}
