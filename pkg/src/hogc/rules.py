"""Derived inference rules on top of the kernel primitives.

Everything here bottoms out in kernel rules, so every theorem produced
carries a full primitive-step provenance and can be exported as a trace.
The layer covers the standard propositional toolkit for the equality-based
connectives, a small conversion framework (context substitution, full
beta/projection normalization, bottom-up rewriting), the derived rules for
the if-then-else constants C and their laws, and a case-split tautology
prover for the quantifier-free boolean fragment.

Rule schemas (the C laws, the boolean simplification lemmas) are derived
once per theory and type and cached on the theory; requests at concrete
arguments are answered by instantiating the cached schema.
"""

from __future__ import annotations

from . import kernel
from .kernel import (Abs, App, BOOL, FunType, Pair, Proj, RuleError, Var,
                     abstraction, assume, axiom, beta_conversion, congruence,
                     deduct_antisym, dest_cond, dest_conj, dest_disj, dest_eq,
                     dest_forall, dest_imp, dest_not, false_c, fresh_name,
                     instantiate, is_false, is_true, mk_conj, mk_cond,
                     mk_disj, mk_eq, mk_forall, mk_imp, mk_not,
                     modus_ponens_eq, pair_beta, reflexivity, substitute,
                     symmetry, transitivity, true_c, type_to_str)


def lhs(thm):
    e = dest_eq(thm.concl)
    if e is None:
        raise RuleError('expected an equation: %r' % thm)
    return e[0]


def rhs(thm):
    e = dest_eq(thm.concl)
    if e is None:
        raise RuleError('expected an equation: %r' % thm)
    return e[1]


def ap_term(f, thm):
    """From A |- a = b derive A |- f a = f b."""
    return congruence(reflexivity(thm.theory, f), thm)


def ap_thm(thm, a):
    """From A |- f = g derive A |- f a = g a."""
    return congruence(thm, reflexivity(thm.theory, a))


def _avoid_from(*sources):
    avoid = set()
    for s in sources:
        if isinstance(s, kernel.Theorem):
            for h in s.hyps:
                avoid |= {n for (n, _t) in h.free_vars}
            avoid |= {n for (n, _t) in s.concl.free_vars}
        else:
            avoid |= {n for (n, _t) in s.free_vars}
    return avoid


def _cached(th, key, build):
    cache = th._derived_cache
    if key not in cache:
        cache[key] = build()
    return cache[key]


# ---------------------------------------------------------------------------
# Unfolding defined constants

def unfold_head(th, t):
    """|- t = t' where the defined head constant of t is unfolded and the
    resulting outer beta redexes are contracted."""
    head = t
    args = []
    while isinstance(head, App):
        args.append(head.arg)
        head = head.fn
    args.reverse()
    if not (isinstance(head, kernel.Const) and head.name in kernel._DEFINED_ORDER):
        raise RuleError('no defined head constant in %r' % t)
    e = kernel.def_axiom(th, head.name, head.targs)
    for a in args:
        e = ap_thm(e, a)
    for i in range(len(args)):
        r = rhs(e)
        # contract the innermost application of the remaining spine
        spine = []
        while isinstance(r, App) and len(spine) < len(args) - i:
            spine.append(r.arg)
            r = r.fn
        spine.reverse()
        redex = App(r, spine[0])
        b = beta_conversion(th, redex)
        for a in spine[1:]:
            b = ap_thm(b, a)
        e = transitivity(e, b)
    return e


# ---------------------------------------------------------------------------
# Truth and the equality/implication interface

def truth(th):
    """|- true"""
    def build():
        p = Var('p', BOOL)
        r = reflexivity(th, Abs(p, p))
        return modus_ponens_eq(symmetry(kernel.def_axiom(th, 'true')), r)
    return _cached(th, 'truth', build)


def eqt_intro(thm):
    """From A |- p derive A |- p = true."""
    return deduct_antisym(thm, truth(thm.theory))


def eqt_elim(thm):
    """From A |- p = true derive A |- p."""
    return modus_ponens_eq(symmetry(thm), truth(thm.theory))


def conj(thm1, thm2):
    """From A |- p and B |- q derive A u B |- p /\\ q."""
    th = thm1.theory
    p, q = thm1.concl, thm2.concl
    goal = mk_conj(p, q)
    u = unfold_head(th, goal)
    f = Var(fresh_name('f', _avoid_from(thm1, thm2)), FunType(BOOL, FunType(BOOL, BOOL)))
    body = congruence(congruence(reflexivity(th, f), eqt_intro(thm1)), eqt_intro(thm2))
    return modus_ponens_eq(symmetry(u), abstraction(f, body))


def _conjunct(thm, first):
    th = thm.theory
    d = dest_conj(thm.concl)
    if d is None:
        raise RuleError('not a conjunction: %r' % thm)
    p, q = d
    u = modus_ponens_eq(unfold_head(th, thm.concl), thm)
    avoid = _avoid_from(thm)
    ua = Var(fresh_name('u', avoid), BOOL)
    vb = Var(fresh_name('v', avoid | {ua.name}), BOOL)
    sel = Abs(ua, Abs(vb, ua if first else vb))
    ap = ap_thm(u, sel)

    def reduce_side(x, y):
        # |- (\f. f x y) sel = x  (or y when sel picks the second)
        f = Var(fresh_name('f', _avoid_from(x, y)), sel.ty)
        t0 = App(Abs(f, App(App(f, x), y)), sel)
        e0 = beta_conversion(th, t0)
        e1 = ap_thm(beta_conversion(th, App(sel, x)), y)
        e2 = beta_conversion(th, rhs(e1))
        return transitivity(e0, transitivity(e1, e2))

    el = reduce_side(p, q)
    er = reduce_side(true_c(), true_c())
    chain = transitivity(symmetry(el), transitivity(ap, er))
    return eqt_elim(chain)


def conjunct1(thm):
    """From A |- p /\\ q derive A |- p."""
    return _conjunct(thm, True)


def conjunct2(thm):
    """From A |- p /\\ q derive A |- q."""
    return _conjunct(thm, False)


def disch(p, thm):
    """From A |- q derive A - {p} |- p => q."""
    th = thm.theory
    q = thm.concl
    u = unfold_head(th, mk_imp(p, q))
    t1 = conj(assume(th, p), thm)
    t2 = conjunct1(assume(th, mk_conj(p, q)))
    d = deduct_antisym(t1, t2)
    return modus_ponens_eq(symmetry(u), d)


def mp(thm_imp, thm):
    """From A |- p => q and B |- p derive A u B |- q."""
    th = thm_imp.theory
    d = dest_imp(thm_imp.concl)
    if d is None:
        raise RuleError('not an implication: %r' % thm_imp)
    p, q = d
    if p != thm.concl:
        raise RuleError('modus ponens mismatch')
    e = modus_ponens_eq(unfold_head(th, thm_imp.concl), thm_imp)
    pq = modus_ponens_eq(symmetry(e), thm)
    return conjunct2(pq)


def undisch(thm):
    """From A |- p => q derive A u {p} |- q."""
    d = dest_imp(thm.concl)
    if d is None:
        raise RuleError('not an implication: %r' % thm)
    return mp(thm, assume(thm.theory, d[0]))


def gen(v, thm):
    """From A |- p derive A |- !v. p, v not free in A."""
    th = thm.theory
    a = abstraction(v, eqt_intro(thm))
    u = unfold_head(th, mk_forall(v, thm.concl))
    return modus_ponens_eq(symmetry(u), a)


def spec(a, thm):
    """From A |- !x. p derive A |- p[a/x]."""
    th = thm.theory
    if dest_forall(thm.concl) is None:
        raise RuleError('not a universal: %r' % thm)
    u = modus_ponens_eq(unfold_head(th, thm.concl), thm)
    ap = ap_thm(u, a)
    bl = beta_conversion(th, lhs(ap))
    br = beta_conversion(th, rhs(ap))
    return eqt_elim(transitivity(symmetry(bl), transitivity(ap, br)))


def spec_all(thm):
    """Strip all outer universal quantifiers, specializing to their own variables."""
    while True:
        d = dest_forall(thm.concl)
        if d is None:
            return thm
        thm = spec(d[0], thm)


def disj1(thm, q):
    """From A |- p derive A |- p \\/ q."""
    th = thm.theory
    p = thm.concl
    u = unfold_head(th, mk_disj(p, q))
    r = Var(fresh_name('r', _avoid_from(thm, q)), BOOL)
    m = mp(assume(th, mk_imp(p, r)), thm)
    d = disch(mk_imp(p, r), disch(mk_imp(q, r), m))
    return modus_ponens_eq(symmetry(u), gen(r, d))


def disj2(p, thm):
    """From A |- q derive A |- p \\/ q."""
    th = thm.theory
    q = thm.concl
    u = unfold_head(th, mk_disj(p, q))
    r = Var(fresh_name('r', _avoid_from(thm, p)), BOOL)
    m = mp(assume(th, mk_imp(q, r)), thm)
    d = disch(mk_imp(p, r), disch(mk_imp(q, r), m))
    return modus_ponens_eq(symmetry(u), gen(r, d))


def disj_cases(thm_disj, thm1, thm2):
    """From A |- p \\/ q, B |- s, C |- s derive A u (B-{p}) u (C-{q}) |- s."""
    th = thm_disj.theory
    d = dest_disj(thm_disj.concl)
    if d is None:
        raise RuleError('not a disjunction: %r' % thm_disj)
    p, q = d
    if thm1.concl != thm2.concl:
        raise RuleError('branch conclusions differ')
    s = thm1.concl
    u = modus_ponens_eq(unfold_head(th, thm_disj.concl), thm_disj)
    sp = spec(s, u)
    return mp(mp(sp, disch(p, thm1)), disch(q, thm2))


def contr(p, thm):
    """From A |- false derive A |- p."""
    th = thm.theory
    if not is_false(thm.concl):
        raise RuleError('contr needs |- false')
    u = modus_ponens_eq(kernel.def_axiom(th, 'false'), thm)
    return spec(p, u)


def not_elim(thm):
    """From A |- ~p derive A |- p => false."""
    th = thm.theory
    p = dest_not(thm.concl)
    if p is None:
        raise RuleError('not a negation: %r' % thm)
    return modus_ponens_eq(unfold_head(th, thm.concl), thm)


def not_intro(thm):
    """From A |- p => false derive A |- ~p."""
    th = thm.theory
    d = dest_imp(thm.concl)
    if d is None or not is_false(d[1]):
        raise RuleError('not_intro needs |- p => false')
    u = unfold_head(th, mk_not(d[0]))
    return modus_ponens_eq(symmetry(u), thm)


# ---------------------------------------------------------------------------
# Boolean simplification lemmas (schemas over p, q)

def _bool_lemma(th, name):
    def build():
        p = Var('p', BOOL)
        t, f = true_c(), false_c()
        if name == 'and_true_l':      # true /\ p = p
            t1 = conjunct2(assume(th, mk_conj(t, p)))
            t2 = conj(truth(th), assume(th, p))
            return deduct_antisym(t2, t1)
        if name == 'and_false_l':     # false /\ p = false
            t1 = conjunct1(assume(th, mk_conj(f, p)))
            fa = assume(th, f)
            t2 = conj(fa, contr(p, fa))
            return deduct_antisym(t2, t1)
        if name == 'or_true_l':       # true \/ p = true
            return deduct_antisym(disj1(truth(th), p), truth(th))
        if name == 'or_false_l':      # false \/ p = p
            a = assume(th, mk_disj(f, p))
            t1 = disj_cases(a, contr(p, assume(th, f)), assume(th, p))
            t2 = disj2(f, assume(th, p))
            return deduct_antisym(t2, t1)
        if name == 'or_false_r':      # p \/ false = p
            a = assume(th, mk_disj(p, f))
            t1 = disj_cases(a, assume(th, p), contr(p, assume(th, f)))
            t2 = disj1(assume(th, p), f)
            return deduct_antisym(t2, t1)
        if name == 'not_true':        # ~true = false
            n = assume(th, mk_not(t))
            t1 = mp(not_elim(n), truth(th))
            t2 = contr(mk_not(t), assume(th, f))
            return deduct_antisym(t2, t1)
        if name == 'not_false':       # ~false = true
            d = disch(f, assume(th, f))
            return eqt_intro(not_intro(d))
        if name == 'eq_tt':           # (true = true) = true
            return eqt_intro(reflexivity(th, t))
        if name == 'eq_ff':           # (false = false) = true
            return eqt_intro(reflexivity(th, f))
        if name == 'eq_tf':           # (true = false) = false
            t1 = contr(mk_eq(t, f), assume(th, f))
            t2 = modus_ponens_eq(assume(th, mk_eq(t, f)), truth(th))
            return deduct_antisym(t1, t2)
        if name == 'eq_ft':           # (false = true) = false
            t1 = eqt_intro(assume(th, f))
            t2 = modus_ponens_eq(symmetry(assume(th, mk_eq(f, t))), truth(th))
            return deduct_antisym(t1, t2)
        raise RuleError('unknown lemma %s' % name)
    return _cached(th, ('lemma', name), build)


def _inst1(schema, value):
    p = Var('p', BOOL)
    return instantiate(schema, {p: value})


# ---------------------------------------------------------------------------
# Conversions

def subst_context(th, tmpl, v, eqthm):
    """From A |- a = b derive A |- tmpl[a/v] = tmpl[b/v]."""
    a, b = dest_eq(eqthm.concl)
    if v.ty != a.ty:
        raise RuleError('context variable type mismatch')
    lam = Abs(v, tmpl)
    b1 = beta_conversion(th, App(lam, a))
    b2 = beta_conversion(th, App(lam, b))
    c = congruence(reflexivity(th, lam), eqthm)
    return transitivity(symmetry(b1), transitivity(c, b2))


def _hole(ty, *sources):
    return Var(fresh_name('hole', _avoid_from(*sources)), ty)


def rewrite_all_occurrences(th, t, eqthm):
    """A |- t = t' replacing every free occurrence of the lhs of eqthm; None
    when the lhs does not occur in t."""
    a, _b = dest_eq(eqthm.concl)
    hole = _hole(a.ty, t, eqthm)

    def repl(u, bound):
        if not (u.free_vars & bound) and u == a:
            return hole
        if isinstance(u, App):
            return App(repl(u.fn, bound), repl(u.arg, bound))
        if isinstance(u, Abs):
            return Abs(u.var, repl(u.body, bound | {(u.var.name, u.var.ty)}))
        if isinstance(u, Pair):
            return Pair(repl(u.left, bound), repl(u.right, bound))
        if isinstance(u, Proj):
            return Proj(u.index, repl(u.arg, bound))
        return u

    tmpl = repl(t, frozenset())
    if tmpl == t:
        return None
    return subst_context(th, tmpl, hole, eqthm)


def depth_rewrite(th, t, node_fn):
    """|- t = t' by applying node_fn bottom-up until no rule applies.

    node_fn(th, u) returns an equation theorem for a single node or None;
    its results must have no hypotheses.  Rewritten results are descended
    into again, so node_fn must be terminating (e.g. size-decreasing or
    normalizing).
    """
    e = _children_rewrite(th, t, node_fn)
    t1 = rhs(e)
    r = node_fn(th, t1)
    if r is None:
        return e
    if r.hyps:
        raise RuleError('rewrite rules must be hypothesis-free')
    e2 = depth_rewrite(th, rhs(r), node_fn)
    return transitivity(e, transitivity(r, e2))


def _children_rewrite(th, t, node_fn):
    if isinstance(t, App):
        ef = depth_rewrite(th, t.fn, node_fn)
        ea = depth_rewrite(th, t.arg, node_fn)
        return congruence(ef, ea)
    if isinstance(t, Abs):
        eb = depth_rewrite(th, t.body, node_fn)
        return abstraction(t.var, eb)
    if isinstance(t, Pair):
        el = depth_rewrite(th, t.left, node_fn)
        er = depth_rewrite(th, t.right, node_fn)
        e = reflexivity(th, t)
        if rhs(el) != t.left:
            hole = _hole(t.left.ty, t, el)
            e = transitivity(e, subst_context(th, Pair(hole, t.right), hole, el))
        cur = rhs(e)
        if rhs(er) != t.right:
            hole = _hole(t.right.ty, cur, er)
            e = transitivity(e, subst_context(th, Pair(cur.left, hole), hole, er))
        return e
    if isinstance(t, Proj):
        ea = depth_rewrite(th, t.arg, node_fn)
        if rhs(ea) != t.arg:
            hole = _hole(t.arg.ty, t, ea)
            return subst_context(th, Proj(t.index, hole), hole, ea)
        return reflexivity(th, t)
    return reflexivity(th, t)


def _bp_step(th, t):
    if isinstance(t, App) and isinstance(t.fn, Abs):
        return beta_conversion(th, t)
    if isinstance(t, Proj) and isinstance(t.arg, Pair):
        return pair_beta(th, t)
    return None


def bp_norm(th, t):
    """|- t = nf(t), full beta/projection normalization inside the logic."""
    return depth_rewrite(th, t, _bp_step)


def rewrite_sides(thm, node_fn):
    """From A |- a = b derive A |- a' = b' with both sides rewritten."""
    th = thm.theory
    a, b = dest_eq(thm.concl)
    ea = depth_rewrite(th, a, node_fn)
    eb = depth_rewrite(th, b, node_fn)
    return transitivity(symmetry(ea), transitivity(thm, eb))


# ---------------------------------------------------------------------------
# The if-then-else constant family

def _cond_true_schema(th, ty):
    def build():
        x, y = Var('x', ty), Var('y', ty)
        goal = mk_cond(x, y, true_c())
        u = unfold_head(th, goal)
        n = bp_norm(th, rhs(u))
        s = depth_rewrite(th, rhs(n), _ground_simp)
        desc = spec(x, axiom(th, 'description[%s]' % type_to_str(ty)))
        return transitivity(u, transitivity(n, transitivity(s, desc)))
    return _cached(th, ('cond_true', ty), build)


def _cond_false_schema(th, ty):
    def build():
        x, y = Var('x', ty), Var('y', ty)
        goal = mk_cond(x, y, false_c())
        u = unfold_head(th, goal)
        n = bp_norm(th, rhs(u))
        s = depth_rewrite(th, rhs(n), _ground_simp)
        desc = spec(y, axiom(th, 'description[%s]' % type_to_str(ty)))
        return transitivity(u, transitivity(n, transitivity(s, desc)))
    return _cached(th, ('cond_false', ty), build)


def cond_true(th, x, y):
    """|- C(x, y, true) = x"""
    sx, sy = Var('x', x.ty), Var('y', x.ty)
    return instantiate(_cond_true_schema(th, x.ty), {sx: x, sy: y})


def cond_false(th, x, y):
    """|- C(x, y, false) = y"""
    sx, sy = Var('x', x.ty), Var('y', x.ty)
    return instantiate(_cond_false_schema(th, x.ty), {sx: x, sy: y})


def bool_cases_split(th, z, hole, tmpl, thm_true, thm_false):
    """Case analysis on a boolean: from A |- tmpl[true/hole] and
    B |- tmpl[false/hole] derive A u B |- tmpl[z/hole]."""
    if z.ty != BOOL:
        raise RuleError('case split needs a Bool term')
    bc = spec(z, axiom(th, 'bool-cases'))
    et = assume(th, mk_eq(z, true_c()))
    ef = assume(th, mk_eq(z, false_c()))
    ct = subst_context(th, tmpl, hole, et)
    cf = subst_context(th, tmpl, hole, ef)
    bt = modus_ponens_eq(symmetry(ct), thm_true)
    bf = modus_ponens_eq(symmetry(cf), thm_false)
    return disj_cases(bc, bt, bf)


def _cond_idem_schema(th, ty):
    def build():
        x, z = Var('x', ty), Var('z', BOOL)
        h = Var('h', BOOL)
        tmpl = mk_eq(mk_cond(x, x, h), x)
        return bool_cases_split(th, z, h, tmpl,
                                cond_true(th, x, x), cond_false(th, x, x))
    return _cached(th, ('cond_idem', ty), build)


def cond_idem(th, x, z):
    """|- C(x, x, z) = x"""
    sx, sz = Var('x', x.ty), Var('z', BOOL)
    return instantiate(_cond_idem_schema(th, x.ty), {sx: x, sz: z})


def _cond_distrib_schema(th, tya, tyb):
    def build():
        f = Var('f', FunType(tya, tyb))
        x, y, z = Var('x', tya), Var('y', tya), Var('z', BOOL)
        h = Var('h', BOOL)
        fx, fy = App(f, x), App(f, y)
        tmpl = mk_eq(App(f, mk_cond(x, y, h)), mk_cond(fx, fy, h))
        tt = transitivity(ap_term(f, cond_true(th, x, y)),
                          symmetry(cond_true(th, fx, fy)))
        tf = transitivity(ap_term(f, cond_false(th, x, y)),
                          symmetry(cond_false(th, fx, fy)))
        return bool_cases_split(th, z, h, tmpl, tt, tf)
    return _cached(th, ('cond_distrib', tya, tyb), build)


def cond_distrib(th, f, x, y, z):
    """|- f(C(x, y, z)) = C(f x, f y, z)"""
    if not isinstance(f.ty, FunType):
        raise RuleError('cond_distrib needs a function')
    tya, tyb = f.ty.dom, f.ty.cod
    sf = Var('f', f.ty)
    sx, sy, sz = Var('x', tya), Var('y', tya), Var('z', BOOL)
    return instantiate(_cond_distrib_schema(th, tya, tyb),
                       {sf: f, sx: x, sy: y, sz: z})


def _or_as_cond_schema(th):
    def build():
        x, y = Var('x', BOOL), Var('y', BOOL)
        h = Var('h', BOOL)
        tmpl = mk_eq(mk_disj(h, y), mk_cond(h, y, h))
        t, f = true_c(), false_c()
        tt = transitivity(_inst1(_bool_lemma(th, 'or_true_l'), y),
                          symmetry(cond_true(th, t, y)))
        tf = transitivity(_inst1(_bool_lemma(th, 'or_false_l'), y),
                          symmetry(cond_false(th, f, y)))
        return bool_cases_split(th, x, h, tmpl, tt, tf)
    return _cached(th, 'or_as_cond', build)


def or_as_cond(th, x, y):
    """|- x \\/ y = C(x, y, x)"""
    sx, sy = Var('x', BOOL), Var('y', BOOL)
    return instantiate(_or_as_cond_schema(th), {sx: x, sy: y})


# ---------------------------------------------------------------------------
# Ground boolean evaluation and the tautology rule

def _ground_simp(th, t):
    d = dest_conj(t)
    if d is not None:
        if is_true(d[0]):
            return _inst1(_bool_lemma(th, 'and_true_l'), d[1])
        if is_false(d[0]):
            return _inst1(_bool_lemma(th, 'and_false_l'), d[1])
        return None
    d = dest_disj(t)
    if d is not None:
        if is_true(d[0]):
            return _inst1(_bool_lemma(th, 'or_true_l'), d[1])
        if is_false(d[0]):
            return _inst1(_bool_lemma(th, 'or_false_l'), d[1])
        if is_false(d[1]):
            return _inst1(_bool_lemma(th, 'or_false_r'), d[0])
        return None
    a = dest_not(t)
    if a is not None:
        if is_true(a):
            return _bool_lemma(th, 'not_true')
        if is_false(a):
            return _bool_lemma(th, 'not_false')
        return None
    e = dest_eq(t)
    if e is not None and e[0].ty == BOOL:
        a, b = e
        if is_true(a) and is_true(b):
            return _bool_lemma(th, 'eq_tt')
        if is_false(a) and is_false(b):
            return _bool_lemma(th, 'eq_ff')
        if is_true(a) and is_false(b):
            return _bool_lemma(th, 'eq_tf')
        if is_false(a) and is_true(b):
            return _bool_lemma(th, 'eq_ft')
        return None
    c = dest_cond(t)
    if c is not None:
        x, y, z = c
        if is_true(z):
            return cond_true(th, x, y)
        if is_false(z):
            return cond_false(th, x, y)
    return None


def ground_eval(th, t):
    """|- t = true or |- t = false for a variable-free fragment term."""
    e = depth_rewrite(th, t, _ground_simp)
    v = rhs(e)
    if not (is_true(v) or is_false(v)):
        raise RuleError('could not evaluate %r (got %r)' % (t, v))
    return e


_TAUT_CONNECTIVES = frozenset(('true', 'false', 'not', 'and', 'or', 'eq', 'cond'))


def _check_taut_fragment(t):
    if isinstance(t, Var):
        if t.ty != BOOL:
            raise RuleError('non-boolean variable %s in taut' % t.name)
        return
    if isinstance(t, kernel.Const):
        if t.name not in _TAUT_CONNECTIVES:
            raise RuleError('constant %s outside the taut fragment' % t.name)
        if t.targs and t.targs != (BOOL,):
            raise RuleError('%s instance outside the taut fragment' % t.display_name)
        return
    if isinstance(t, App):
        _check_taut_fragment(t.fn)
        _check_taut_fragment(t.arg)
        return
    if isinstance(t, Pair):
        _check_taut_fragment(t.left)
        _check_taut_fragment(t.right)
        return
    raise RuleError('term shape outside the taut fragment: %r' % (t,))


def taut(th, t):
    """|- t for a valid quantifier-free boolean term, by case splitting.

    The fragment is boolean variables with true, false, ~, /\\, \\/, = and
    C at Bool.  Raises RuleError when t is not valid.
    """
    if t.ty != BOOL:
        raise RuleError('taut needs a Bool term')
    _check_taut_fragment(t)
    return _taut(th, t)


def _taut(th, t):
    fvs = sorted(t.free_vars, key=lambda nt: nt[0])
    if not fvs:
        e = ground_eval(th, t)
        if not is_true(rhs(e)):
            raise RuleError('not a tautology: %r' % (t,))
        return eqt_elim(e)
    v = Var(fvs[0][0], fvs[0][1])
    tt = _taut(th, substitute(t, v, true_c()))
    tf = _taut(th, substitute(t, v, false_c()))
    return bool_cases_split(th, v, v, t, tt, tf)
