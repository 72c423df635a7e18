"""Term parsing and printing: round trips, precedence, resolution errors."""

import pytest
from hypothesis import given, settings

from hogc import kernel, syntax
from hogc.kernel import (
    Abs, App, BOOL, FunType, IND, Pair, Proj, Var,
    false_c, mk_conj, mk_cond, mk_disj, mk_eq, mk_exists, mk_forall,
    mk_imp, mk_not, true_c,
)
from hogc.syntax import TermEnv, canonical_term, parse_term, pretty_term

from test_kernel import FRAG


@pytest.fixture(scope='module')
def th():
    return kernel.core_theory()


@pytest.fixture(scope='module')
def env(th):
    return TermEnv(theory=th,
                   var_types={'p': BOOL, 'q': BOOL, 'x': IND, 'y': IND,
                              'f': FunType(IND, BOOL)})


def test_parse_connectives(env):
    p, q = Var('p', BOOL), Var('q', BOOL)
    assert parse_term('p /\\ q', env) == mk_conj(p, q)
    assert parse_term('p \\/ q', env) == mk_disj(p, q)
    assert parse_term('p => q', env) == mk_imp(p, q)
    assert parse_term('~p', env) == mk_not(p)
    assert parse_term('true \\/ false', env) == mk_disj(true_c(), false_c())


def test_precedence(env):
    p, q = Var('p', BOOL), Var('q', BOOL)
    assert parse_term('~p /\\ q', env) == mk_conj(mk_not(p), q)
    assert parse_term('p \\/ q /\\ p', env) == mk_disj(p, mk_conj(q, p))
    assert parse_term('p /\\ q \\/ p', env) == mk_disj(mk_conj(p, q), p)
    # equality binds tighter than the connectives
    assert parse_term('p = q /\\ p', env) == mk_conj(mk_eq(p, q), p)


def test_parse_application_and_lambda(env):
    f, x = Var('f', FunType(IND, BOOL)), Var('x', IND)
    assert parse_term('f(x)', env) == App(f, x)
    assert parse_term('\\x:Ind. f(x)', env) == Abs(x, App(f, x))
    assert parse_term('(\\x:Ind. x)(y)', env) == App(Abs(x, x), Var('y', IND))


def test_parse_binders(env):
    x = Var('x', IND)
    f = Var('f', FunType(IND, BOOL))
    assert parse_term('!x:Ind. f(x)', env) == mk_forall(x, App(f, x))
    assert parse_term('?x:Ind. f(x)', env) == mk_exists(x, App(f, x))


def test_parse_pair_proj_cond(env):
    x, p = Var('x', IND), Var('p', BOOL)
    assert parse_term('<x, p>', env) == Pair(x, p)
    assert parse_term('fst <x, p>', env) == Proj(1, Pair(x, p))
    assert parse_term('snd <x, p>', env) == Proj(2, Pair(x, p))
    assert parse_term('cond[Ind](x, y, p)', env) == mk_cond(x, Var('y', IND), p)


def test_default_var_type():
    env = TermEnv(default_var_type=BOOL)
    assert parse_term('a /\\ b', env) == mk_conj(Var('a', BOOL), Var('b', BOOL))


def test_unannotated_unknown_identifier_rejected(th):
    with pytest.raises(syntax.ParseError):
        parse_term('mystery', TermEnv(theory=th))


def test_trailing_input_rejected(env):
    with pytest.raises(syntax.ParseError):
        parse_term('p q', env)


def test_word_literal_needs_resolver(th):
    with pytest.raises(syntax.ParseError):
        parse_term('/a b/', TermEnv(theory=th))


def test_type_ascription(env):
    assert parse_term('z:Bool', env) == Var('z', BOOL)
    assert parse_term('(z:Ind) = x', env) == mk_eq(Var('z', IND), Var('x', IND))


def test_canonical_is_alpha_invariant():
    x, y = Var('x', IND), Var('y', IND)
    assert canonical_term(Abs(x, x)) == canonical_term(Abs(y, y))
    f = Var('f', FunType(IND, IND))
    assert canonical_term(Abs(x, App(f, x))) == canonical_term(Abs(y, App(f, y)))


def test_canonical_roundtrip_samples(th):
    x, p = Var('x', IND), Var('p', BOOL)
    f = Var('f', FunType(IND, BOOL))
    samples = [
        mk_conj(p, mk_not(p)),
        Abs(x, App(f, x)),
        mk_forall(x, mk_eq(App(f, x), p)),
        Pair(x, Proj(1, Pair(x, p))),
        mk_cond(x, x, p),
        App(Abs(x, mk_eq(x, x)), x),
    ]
    env = TermEnv(theory=th)
    for t in samples:
        assert parse_term(canonical_term(t), env) == t


def test_pretty_roundtrip_samples(th, env):
    x, p = Var('x', IND), Var('p', BOOL)
    f = Var('f', FunType(IND, BOOL))
    samples = [
        mk_disj(p, mk_conj(p, mk_not(p))),
        mk_eq(mk_conj(p, p), p),
        Abs(x, mk_eq(App(f, x), p)),
        mk_cond(p, mk_not(p), p),
        mk_forall(x, mk_exists(Var('y', IND), mk_eq(x, Var('y', IND)))),
        App(Abs(x, mk_eq(x, x)), x),
    ]
    for t in samples:
        assert parse_term(pretty_term(t), env) == t


def test_pretty_theorem(th):
    p = Var('p', BOOL)
    assert syntax.pretty_theorem(kernel.reflexivity(th, p)) == '|- p = p'
    assert syntax.pretty_theorem(kernel.assume(th, p)) == 'p |- p'


def test_phon_resolver(th):
    g = kernel.Theory('ph')
    g.add_constant('//', kernel.PHON)
    g.add_constant('/a/', kernel.PHON)
    g.add_constant('/b/', kernel.PHON)
    g.add_constant('conc', FunType(kernel.ProdType(kernel.PHON, kernel.PHON),
                                   kernel.PHON))
    g.freeze()
    resolve = syntax.theory_phon_resolver(g)
    assert resolve(()) == g.const('//')
    assert resolve(('a',)) == g.const('/a/')
    # right-nested concatenation of a pair of operands
    t = resolve(('a', 'b', 'a'))
    assert t.arg.left == g.const('/a/')
    assert t.arg.right == resolve(('b', 'a'))
    env = TermEnv(theory=g, phon_resolver=resolve)
    assert parse_term('/a b a/', env) == t
    assert parse_term('/a/ ++ /b/', env) == resolve(('a', 'b'))


@given(FRAG)
@settings(max_examples=80, deadline=None)
def test_canonical_roundtrip_fragment(t):
    env = TermEnv(theory=_TH)
    assert parse_term(canonical_term(t), env) == t


@given(FRAG)
@settings(max_examples=80, deadline=None)
def test_pretty_roundtrip_fragment(t):
    env = TermEnv(theory=_TH, default_var_type=BOOL)
    assert parse_term(pretty_term(t), env) == t


_TH = kernel.core_theory()
