"""Chart parsing with kernel-checked proofs.

``parse`` runs a CYK-style chart over word spans (including empty spans, so
empty-phonology entries participate) up to an explicit derivation-depth
bound: lexical signs have depth 1 and a rule application is one deeper than
its deepest child.  Every result carries two theorems derived from the
grammar's axioms: the phonology equation ``phon_sigma(sign) = /w/`` and the
meaning equation ``sem_sigma(sign) = meaning`` with the meaning in beta
normal form.

``enumerate_signs`` is an independent oracle: it generates every derivable
sign up to the depth bound by plain recursion, without touching the proof
machinery, computing words and meanings directly.  ``check_membership``
answers whether a word means a given term, merging non-identical but
provably equal boolean meanings through a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import grammar as gmod
from . import kernel, rules, syntax
from .grammar import GrammarError, Word, word_to_phon
from .kernel import App, BOOL, Term, Theorem, beta_normalize


@dataclass
class ParseResult:
    word: Word
    sign: Term
    sign_type: str
    meaning: Term
    phon_proof: Theorem
    sem_proof: Theorem
    depth: int

    def __repr__(self):
        return ('ParseResult(%r, sign=%s, type=%s, meaning=%s, depth=%d)'
                % (self.word, syntax.pretty_term(self.sign), self.sign_type,
                   syntax.pretty_term(self.meaning), self.depth))


def _splits(m, i, j):
    """All ways to cut span (i, j) into m adjacent (possibly empty) spans."""
    if m == 1:
        yield ((i, j),)
        return
    for k in range(i, j + 1):
        for rest in _splits(m - 1, k, j):
            yield ((i, k),) + rest


class _Chart:
    def __init__(self, g, word, depth_bound):
        self.g = g
        self.word = word
        self.bound = depth_bound
        n = len(word)
        self.spans = {}
        for i in range(n + 1):
            for j in range(i, n + 1):
                self.spans[(i, j)] = {}
        self.deriv = {}
        self._fill()

    def _add(self, span, sign, sty, depth, deriv):
        cell = self.spans[span]
        if sign in cell:
            return False
        cell[sign] = (sty, depth)
        self.deriv[sign] = deriv
        return True

    def _fill(self):
        g, word = self.g, self.word
        n = len(word)
        if self.bound < 1:
            return
        for lx in g.lexicon:
            k = len(lx.word)
            if k == 0:
                for i in range(n + 1):
                    self._add((i, i), lx.const, lx.sign_type, 1, ('lex', lx))
            else:
                for i in range(n - k + 1):
                    if word.tokens[i:i + k] == lx.word.tokens:
                        self._add((i, i + k), lx.const, lx.sign_type, 1, ('lex', lx))
        for d in range(2, self.bound + 1):
            pending = []
            for rule in g.rules:
                m = len(rule.operands)
                for span in self.spans:
                    i, j = span
                    for cuts in _splits(m, i, j):
                        for combo in self._combos(rule, cuts):
                            depths = [self.spans[c_span][c_sign][1]
                                      for c_span, c_sign in zip(cuts, combo)]
                            if 1 + max(depths) != d:
                                continue
                            children = self._operand_order(rule, combo)
                            sign = rule.const
                            for c in children:
                                sign = App(sign, c)
                            pending.append((span, sign, rule.result, d,
                                            (rule, tuple(children))))
            for span, sign, sty, depth, deriv in pending:
                self._add(span, sign, sty, depth, deriv)

    def _combos(self, rule, cuts):
        """Children per surface slot, drawn from the chart."""
        slots = []
        for s, span in enumerate(cuts):
            want = rule.operands[rule.pattern[s] - 1]
            cell = self.spans[span]
            cands = [sign for sign, (sty, _d) in cell.items() if sty == want]
            if not cands:
                return
            slots.append(cands)
        def go(s):
            if s == len(slots):
                yield ()
                return
            for c in slots[s]:
                for rest in go(s + 1):
                    yield (c,) + rest
        yield from go(0)

    def _operand_order(self, rule, combo):
        children = [None] * len(rule.operands)
        for s, c in enumerate(combo):
            children[rule.pattern[s] - 1] = c
        return children


class _ProofBuilder:
    def __init__(self, g):
        self.g = g
        self.memo = {}

    def build(self, sign, deriv_map):
        """(phon_proof, sem_proof, word, meaning) for a chart sign."""
        if sign in self.memo:
            return self.memo[sign]
        g = self.g
        th = g.theory
        deriv = deriv_map[sign]
        if deriv[0] == 'lex':
            lx = deriv[1]
            ax = kernel.axiom(th, 'lex.%s' % lx.name)
            phon = rules.conjunct1(ax)
            sem = rules.conjunct2(ax)
            meaning = beta_normalize(lx.sem)
            if rules.rhs(sem) != meaning:
                sem = kernel.transitivity(sem, rules.bp_norm(th, rules.rhs(sem)))
            out = (phon, sem, lx.word, meaning)
        else:
            rule, children = deriv
            parts = [self.build(c, deriv_map) for c in children]
            ax = kernel.axiom(th, 'rule.%s' % rule.name)
            for c in children:
                ax = rules.spec(c, ax)
            phon = rules.conjunct1(ax)
            sem = rules.conjunct2(ax)
            for cp, _cs, _w, _m in parts:
                e = rules.rewrite_all_occurrences(th, rules.rhs(phon), cp)
                if e is not None:
                    phon = kernel.transitivity(phon, e)
            norm = gmod.phon_norm(g, rules.rhs(phon))
            phon = kernel.transitivity(phon, norm)
            word = Word(())
            for s in range(len(children)):
                word = word + parts[rule.pattern[s] - 1][2]
            if rules.rhs(phon) != word_to_phon(g, word):
                raise GrammarError('phonology proof does not match the word')
            for cp, cs, _w, _m in parts:
                for child_eq in (cs, cp):
                    e = rules.rewrite_all_occurrences(th, rules.rhs(sem), child_eq)
                    if e is not None:
                        sem = kernel.transitivity(sem, e)
            n = rules.bp_norm(th, rules.rhs(sem))
            sem = kernel.transitivity(sem, n)
            out = (phon, sem, word, rules.rhs(sem))
        self.memo[sign] = out
        return out


def parse(g, word, depth_bound):
    """All parses of a word up to the derivation depth bound."""
    if isinstance(word, (str, tuple, list)):
        word = Word(word)
    for tok in word.tokens:
        if tok not in g.alphabet:
            raise GrammarError('token %r not in the alphabet' % tok)
    chart = _Chart(g, word, depth_bound)
    builder = _ProofBuilder(g)
    results = []
    n = len(word)
    for sign, (sty, depth) in chart.spans[(0, n)].items():
        phon, sem, w, meaning = builder.build(sign, chart.deriv)
        assert w == word
        results.append(ParseResult(word, sign, sty, meaning, phon, sem, depth))
    results.sort(key=lambda r: (r.depth, syntax.canonical_term(r.sign)))
    return results


# ---------------------------------------------------------------------------
# Independent enumeration oracle

def _plain_replace(t, target, repl):
    """Replace free occurrences of a closed term, no proofs involved."""
    if t == target:
        return repl
    if isinstance(t, App):
        return App(_plain_replace(t.fn, target, repl),
                   _plain_replace(t.arg, target, repl))
    if isinstance(t, kernel.Abs):
        return kernel.Abs(t.var, _plain_replace(t.body, target, repl))
    if isinstance(t, kernel.Pair):
        return kernel.Pair(_plain_replace(t.left, target, repl),
                           _plain_replace(t.right, target, repl))
    if isinstance(t, kernel.Proj):
        return kernel.Proj(t.index, _plain_replace(t.arg, target, repl))
    return t


def _compose_meaning(g, rule, children, child_words, child_meanings):
    t = rule.sem_template
    t = kernel.subst_parallel(t, dict(zip(rule.operand_vars, children)))
    for i, c in enumerate(children):
        sty = rule.operands[i]
        sem_c = App(g.theory.const('sem_%s' % sty), c)
        phon_c = App(g.theory.const('phon_%s' % sty), c)
        t = _plain_replace(t, sem_c, child_meanings[i])
        t = _plain_replace(t, phon_c, word_to_phon(g, child_words[i]))
    return beta_normalize(t)


def enumerate_signs(g, depth_bound):
    """Every derivable (sign, word, meaning) up to the depth bound.

    Computed by plain recursive generation, independent of the chart and of
    the proof machinery.
    """
    levels = {1: [(lx.const, lx.sign_type, lx.word, beta_normalize(lx.sem))
                  for lx in g.lexicon]}
    for d in range(2, depth_bound + 1):
        level = []
        pool = [(c, sty, w, m, dd) for dd in range(1, d) for (c, sty, w, m) in levels[dd]]
        for rule in g.rules:
            m = len(rule.operands)
            def go(i, acc):
                if i == m:
                    if max(e[4] for e in acc) != d - 1:
                        return
                    children = [e[0] for e in acc]
                    words = [e[2] for e in acc]
                    meanings = [e[3] for e in acc]
                    sign = rule.const
                    for c in children:
                        sign = App(sign, c)
                    word = Word(())
                    for s in range(m):
                        word = word + words[rule.pattern[s] - 1]
                    meaning = _compose_meaning(g, rule, children, words, meanings)
                    level.append((sign, rule.result, word, meaning))
                    return
                for e in pool:
                    if e[1] == rule.operands[i]:
                        go(i + 1, acc + [e])
            go(0, [])
        levels[d] = level
    out = []
    for d in range(1, depth_bound + 1):
        for sign, sty, w, meaning in levels.get(d, ()):
            out.append((sign, w, meaning))
    return out


# ---------------------------------------------------------------------------
# Membership

def check_membership(g, word, meaning, depth_bound):
    """A parse of the word with the given meaning, or None.

    The meaning is compared after beta normalization.  When no parse
    matches syntactically but a parse's meaning is provably equal to the
    requested one in the boolean fragment, the parse is merged with itself
    through an equality certificate, so the result's meaning equation is a
    theorem about the requested meaning.
    """
    from . import closure
    th = g.theory
    kernel.type_of(meaning, th)
    nf = beta_normalize(meaning)
    results = parse(g, word, depth_bound)
    for r in results:
        if r.meaning == nf:
            return r
    if nf.ty == BOOL and closure.in_fragment(nf):
        for r in results:
            if not closure.in_fragment(r.meaning):
                continue
            if not closure.bool_valid(kernel.mk_eq(nf, r.meaning)):
                continue
            eq = rules.taut(th, kernel.mk_eq(nf, r.meaning))
            cert = closure.ClosureCertificate(
                target=nf, left=r.meaning, right=r.meaning,
                proof=rules.disj1(eq, kernel.mk_eq(nf, r.meaning)))
            return closure.merge_parses(g, r, r, cert)
    return None
